#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "molhd/rng.hpp"

namespace molhd {

enum class Task { classification, regression };

// Per-molecule feature rows with aligned labels. Labels are bandgap
// values (regression) or 0/1 with 1 = non-zero bandgap (classification).
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;

  std::size_t size() const { return rows.size(); }
  std::size_t cols() const { return rows.empty() ? 0 : rows.front().size(); }
};

// Seeded shuffle then prefix split; train size = round(fraction * n).
// Throws when either side would be empty.
std::pair<FeatureMatrix, FeatureMatrix> split(const FeatureMatrix& data, double train_fraction,
                                              Rng& rng);

// Per-column mean/stddev transform fitted on the training split only.
// Columns with (near-)zero variance pass through unscaled.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  void fit(const FeatureMatrix& train);
  void apply(FeatureMatrix& data) const;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  // Classification decision boundary on the raw output: 0 for margin
  // models (SGD hinge), 0.5 when a regressor is thresholded on 0/1
  // labels.
  double threshold = 0.0;

  double predict(const std::vector<double>& x) const;
};

// Ridge regression, bias unpenalized, solved through the normal equations
// (dual form when the feature count exceeds the sample count). Throws on
// non-finite features.
LinearModel train_linear_regressor(const FeatureMatrix& train, double ridge = 1e-6);

struct SgdConfig {
  std::size_t epochs = 200;
  double learning_rate = 1e-3;
  double l2 = 1e-4;
};

// Hinge-loss linear classifier, per-sample SGD with a seeded reshuffle
// each epoch. Labels must contain both classes. predict > 0 means class 1.
LinearModel train_sgd_classifier(const FeatureMatrix& train, const SgdConfig& cfg, Rng& rng);

struct MlpConfig {
  std::vector<std::size_t> hidden{10};
  std::size_t epochs = 2000;
  double learning_rate = 1e-3;
  std::size_t batch_size = 0;  // 0 = full batch
  std::uint64_t seed = 0;
};

struct MlpLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // row-major, out x in
  std::vector<double> bias;
};

// Rectifier MLP with one linear output, trained on mean squared error.
struct MlpModel {
  std::vector<MlpLayer> layers;

  double predict(const std::vector<double>& x) const;
};

MlpModel init_mlp(std::size_t input_dim, const MlpConfig& cfg);

// Half mean squared error over the batch.
double mlp_loss(const MlpModel& model, const FeatureMatrix& data);

// Backprop gradients, same shapes as the model layers.
std::vector<MlpLayer> mlp_gradients(const MlpModel& model, const FeatureMatrix& data);

// Gradient descent on the squared error; full batch unless
// cfg.batch_size > 0. Throws (naming the epoch) if the loss turns
// non-finite.
MlpModel train_mlp(const FeatureMatrix& train, const MlpConfig& cfg);

struct Metrics {
  std::string name;   // "mae" or "accuracy"
  double value = 0.0;
};

// Regression: mean absolute error. Classification: fraction correct,
// deciding class 1 when the raw output exceeds the model threshold. An
// MLP asked for classification is a task/model mismatch and throws.
Metrics evaluate(const LinearModel& model, const FeatureMatrix& test, Task task);
Metrics evaluate(const MlpModel& model, const FeatureMatrix& test, Task task);

// MAE of always predicting the training-label mean.
double baseline_mae(const std::vector<double>& train_labels, const std::vector<double>& test_labels);

}  // namespace molhd
