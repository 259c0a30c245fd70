#include "molhd/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace molhd {

namespace {

// Dense solve by Gaussian elimination with partial pivoting. A is n x n
// row-major and clobbered, as is b.
std::vector<double> gaussian_solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a[r * n + col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) throw std::runtime_error("linear solve: singular system");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] * inv;
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
    x[r] = s / a[r * n + r];
  }
  return x;
}

void require_rows(const FeatureMatrix& data, std::size_t min_rows, const char* op) {
  if (data.size() < min_rows) {
    throw std::invalid_argument(std::string(op) + ": needs at least " +
                                std::to_string(min_rows) + " rows");
  }
  if (data.labels.size() != data.rows.size()) {
    throw std::invalid_argument(std::string(op) + ": labels misaligned with rows");
  }
}

}  // namespace

std::pair<FeatureMatrix, FeatureMatrix> split(const FeatureMatrix& data, double train_fraction,
                                              Rng& rng) {
  require_rows(data, 2, "split");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split: train_fraction must be in (0, 1)");
  }
  const std::size_t n = data.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + rng.uniform_int(n - i);
    std::swap(order[i], order[j]);
  }
  const std::size_t train_size =
      static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  if (train_size == 0 || train_size >= n) {
    throw std::invalid_argument("split: degenerate split sizes");
  }
  FeatureMatrix train, test;
  for (std::size_t k = 0; k < n; ++k) {
    FeatureMatrix& side = k < train_size ? train : test;
    side.rows.push_back(data.rows[order[k]]);
    side.labels.push_back(data.labels[order[k]]);
  }
  return {std::move(train), std::move(test)};
}

void Standardizer::fit(const FeatureMatrix& train) {
  require_rows(train, 1, "standardizer");
  const std::size_t cols = train.cols();
  const double n = static_cast<double>(train.size());
  mean.assign(cols, 0.0);
  scale.assign(cols, 1.0);
  for (const auto& row : train.rows) {
    for (std::size_t c = 0; c < cols; ++c) mean[c] += row[c];
  }
  for (double& m : mean) m /= n;
  std::vector<double> var(cols, 0.0);
  for (const auto& row : train.rows) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double d = row[c] - mean[c];
      var[c] += d * d;
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    const double sd = std::sqrt(var[c] / n);
    scale[c] = sd > 1e-12 ? 1.0 / sd : 1.0;
  }
}

void Standardizer::apply(FeatureMatrix& data) const {
  for (auto& row : data.rows) {
    if (row.size() != mean.size()) throw std::invalid_argument("standardizer: column mismatch");
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] - mean[c]) * scale[c];
  }
}

double LinearModel::predict(const std::vector<double>& x) const {
  if (x.size() != weights.size()) throw std::invalid_argument("predict: feature size mismatch");
  double s = bias;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * x[i];
  return s;
}

LinearModel train_linear_regressor(const FeatureMatrix& train, double ridge) {
  require_rows(train, 1, "train_linear_regressor");
  if (ridge < 0.0) throw std::invalid_argument("train_linear_regressor: ridge must be >= 0");
  const std::size_t n = train.size();
  const std::size_t d = train.cols();
  for (const auto& row : train.rows) {
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("train_linear_regressor: non-finite feature");
    }
  }

  LinearModel model;
  if (d + 1 <= n) {
    // Primal normal equations over [features, 1], ridge applied to the
    // feature block only.
    const std::size_t m = d + 1;
    std::vector<double> ata(m * m, 0.0);
    std::vector<double> aty(m, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const auto& row = train.rows[r];
      const double y = train.labels[r];
      for (std::size_t i = 0; i < m; ++i) {
        const double xi = i < d ? row[i] : 1.0;
        aty[i] += xi * y;
        for (std::size_t j = i; j < m; ++j) {
          const double xj = j < d ? row[j] : 1.0;
          ata[i * m + j] += xi * xj;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < i; ++j) ata[i * m + j] = ata[j * m + i];
    }
    for (std::size_t i = 0; i < d; ++i) ata[i * m + i] += ridge;
    const std::vector<double> beta = gaussian_solve(std::move(ata), aty, m);
    model.weights.assign(beta.begin(), beta.begin() + static_cast<std::ptrdiff_t>(d));
    model.bias = beta[d];
  } else {
    // Dual form on centered data: w = Xc' * (Xc Xc' + ridge I)^-1 * yc,
    // identical to the primal with an unpenalized bias.
    std::vector<double> col_mean(d, 0.0);
    for (const auto& row : train.rows) {
      for (std::size_t c = 0; c < d; ++c) col_mean[c] += row[c];
    }
    for (double& m_c : col_mean) m_c /= static_cast<double>(n);
    double y_mean = 0.0;
    for (double y : train.labels) y_mean += y;
    y_mean /= static_cast<double>(n);

    std::vector<double> gram(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t s = r; s < n; ++s) {
        double dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          dot += (train.rows[r][c] - col_mean[c]) * (train.rows[s][c] - col_mean[c]);
        }
        gram[r * n + s] = dot;
        gram[s * n + r] = dot;
      }
      gram[r * n + r] += ridge > 0.0 ? ridge : 1e-12;
    }
    std::vector<double> yc(n);
    for (std::size_t r = 0; r < n; ++r) yc[r] = train.labels[r] - y_mean;
    const std::vector<double> alpha = gaussian_solve(std::move(gram), std::move(yc), n);
    model.weights.assign(d, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        model.weights[c] += alpha[r] * (train.rows[r][c] - col_mean[c]);
      }
    }
    model.bias = y_mean;
    for (std::size_t c = 0; c < d; ++c) model.bias -= model.weights[c] * col_mean[c];
  }
  return model;
}

LinearModel train_sgd_classifier(const FeatureMatrix& train, const SgdConfig& cfg, Rng& rng) {
  require_rows(train, 1, "train_sgd_classifier");
  bool has_zero = false, has_one = false;
  for (double y : train.labels) {
    if (y > 0.5) has_one = true;
    else has_zero = true;
  }
  if (!has_zero || !has_one) {
    throw std::invalid_argument("train_sgd_classifier: training set has a single class");
  }

  const std::size_t n = train.size();
  const std::size_t d = train.cols();
  LinearModel model;
  model.weights.assign(d, 0.0);
  model.threshold = 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t j = i + rng.uniform_int(n - i);
      std::swap(order[i], order[j]);
    }
    for (std::size_t k : order) {
      const auto& x = train.rows[k];
      const double y = train.labels[k] > 0.5 ? 1.0 : -1.0;
      const double margin = y * model.predict(x);
      // L2 shrink on the weights (bias unregularized), hinge push when
      // the margin is violated.
      const double keep = 1.0 - cfg.learning_rate * cfg.l2;
      for (double& w : model.weights) w *= keep;
      if (margin < 1.0) {
        for (std::size_t c = 0; c < d; ++c) model.weights[c] += cfg.learning_rate * y * x[c];
        model.bias += cfg.learning_rate * y;
      }
    }
  }
  return model;
}

MlpModel init_mlp(std::size_t input_dim, const MlpConfig& cfg) {
  if (cfg.learning_rate <= 0.0) throw std::invalid_argument("init_mlp: learning_rate must be > 0");
  for (std::size_t h : cfg.hidden) {
    if (h < 1) throw std::invalid_argument("init_mlp: hidden widths must be >= 1");
  }
  Rng rng(cfg.seed);
  MlpModel model;
  std::size_t in = input_dim;
  std::vector<std::size_t> widths = cfg.hidden;
  widths.push_back(1);
  for (std::size_t w : widths) {
    MlpLayer layer;
    layer.in = in;
    layer.out = w;
    layer.weights.resize(in * w);
    layer.bias.assign(w, 0.0);
    const double sd = std::sqrt(2.0 / static_cast<double>(in));
    for (double& wt : layer.weights) wt = rng.normal() * sd;
    model.layers.push_back(std::move(layer));
    in = w;
  }
  return model;
}

namespace {

// Forward pass keeping post-activation values per layer.
std::vector<std::vector<double>> mlp_forward(const MlpModel& model, const std::vector<double>& x) {
  std::vector<std::vector<double>> acts;
  acts.reserve(model.layers.size() + 1);
  acts.push_back(x);
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const MlpLayer& layer = model.layers[l];
    const std::vector<double>& prev = acts.back();
    std::vector<double> out(layer.out);
    for (std::size_t o = 0; o < layer.out; ++o) {
      double s = layer.bias[o];
      const double* wrow = layer.weights.data() + o * layer.in;
      for (std::size_t i = 0; i < layer.in; ++i) s += wrow[i] * prev[i];
      const bool is_output = l + 1 == model.layers.size();
      out[o] = is_output ? s : (s > 0.0 ? s : 0.0);
    }
    acts.push_back(std::move(out));
  }
  return acts;
}

}  // namespace

double MlpModel::predict(const std::vector<double>& x) const {
  return mlp_forward(*this, x).back()[0];
}

double mlp_loss(const MlpModel& model, const FeatureMatrix& data) {
  require_rows(data, 1, "mlp_loss");
  double loss = 0.0;
  for (std::size_t r = 0; r < data.size(); ++r) {
    const double err = model.predict(data.rows[r]) - data.labels[r];
    loss += 0.5 * err * err;
  }
  return loss / static_cast<double>(data.size());
}

std::vector<MlpLayer> mlp_gradients(const MlpModel& model, const FeatureMatrix& data) {
  require_rows(data, 1, "mlp_gradients");
  std::vector<MlpLayer> grads;
  grads.reserve(model.layers.size());
  for (const MlpLayer& layer : model.layers) {
    MlpLayer g;
    g.in = layer.in;
    g.out = layer.out;
    g.weights.assign(layer.weights.size(), 0.0);
    g.bias.assign(layer.bias.size(), 0.0);
    grads.push_back(std::move(g));
  }
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto acts = mlp_forward(model, data.rows[r]);
    std::vector<double> delta{(acts.back()[0] - data.labels[r]) * inv_n};
    for (std::size_t l = model.layers.size(); l-- > 0;) {
      const MlpLayer& layer = model.layers[l];
      MlpLayer& grad = grads[l];
      const std::vector<double>& prev = acts[l];
      std::vector<double> next_delta(layer.in, 0.0);
      for (std::size_t o = 0; o < layer.out; ++o) {
        grad.bias[o] += delta[o];
        double* grow = grad.weights.data() + o * layer.in;
        const double* wrow = layer.weights.data() + o * layer.in;
        for (std::size_t i = 0; i < layer.in; ++i) {
          grow[i] += delta[o] * prev[i];
          next_delta[i] += delta[o] * wrow[i];
        }
      }
      if (l > 0) {
        // Rectifier derivative on the previous layer's activations.
        for (std::size_t i = 0; i < layer.in; ++i) {
          if (acts[l][i] <= 0.0) next_delta[i] = 0.0;
        }
        delta = std::move(next_delta);
      }
    }
  }
  return grads;
}

MlpModel train_mlp(const FeatureMatrix& train, const MlpConfig& cfg) {
  require_rows(train, 1, "train_mlp");
  MlpModel model = init_mlp(train.cols(), cfg);
  Rng shuffle_rng(derive_seed(cfg.seed, 1));

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.batch_size == 0) {
      const auto grads = mlp_gradients(model, train);
      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        MlpLayer& layer = model.layers[l];
        for (std::size_t k = 0; k < layer.weights.size(); ++k) {
          layer.weights[k] -= cfg.learning_rate * grads[l].weights[k];
        }
        for (std::size_t k = 0; k < layer.bias.size(); ++k) {
          layer.bias[k] -= cfg.learning_rate * grads[l].bias[k];
        }
      }
    } else {
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t j = i + shuffle_rng.uniform_int(order.size() - i);
        std::swap(order[i], order[j]);
      }
      for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
        FeatureMatrix batch;
        for (std::size_t k = start; k < std::min(order.size(), start + cfg.batch_size); ++k) {
          batch.rows.push_back(train.rows[order[k]]);
          batch.labels.push_back(train.labels[order[k]]);
        }
        const auto grads = mlp_gradients(model, batch);
        for (std::size_t l = 0; l < model.layers.size(); ++l) {
          MlpLayer& layer = model.layers[l];
          for (std::size_t k = 0; k < layer.weights.size(); ++k) {
            layer.weights[k] -= cfg.learning_rate * grads[l].weights[k];
          }
          for (std::size_t k = 0; k < layer.bias.size(); ++k) {
            layer.bias[k] -= cfg.learning_rate * grads[l].bias[k];
          }
        }
      }
    }
    const double loss = mlp_loss(model, train);
    if (!std::isfinite(loss)) {
      throw std::runtime_error("train_mlp: diverged at epoch " + std::to_string(epoch));
    }
  }
  return model;
}

namespace {

Metrics metrics_from_predictions(const std::vector<double>& preds, const FeatureMatrix& test,
                                 Task task, double threshold) {
  Metrics m;
  if (task == Task::regression) {
    m.name = "mae";
    double s = 0.0;
    for (std::size_t r = 0; r < preds.size(); ++r) s += std::abs(preds[r] - test.labels[r]);
    m.value = s / static_cast<double>(preds.size());
  } else {
    m.name = "accuracy";
    std::size_t correct = 0;
    for (std::size_t r = 0; r < preds.size(); ++r) {
      const bool predicted = preds[r] > threshold;
      const bool actual = test.labels[r] > 0.5;
      if (predicted == actual) ++correct;
    }
    m.value = static_cast<double>(correct) / static_cast<double>(preds.size());
  }
  return m;
}

}  // namespace

Metrics evaluate(const LinearModel& model, const FeatureMatrix& test, Task task) {
  require_rows(test, 1, "evaluate");
  std::vector<double> preds;
  preds.reserve(test.size());
  for (const auto& row : test.rows) preds.push_back(model.predict(row));
  return metrics_from_predictions(preds, test, task, model.threshold);
}

Metrics evaluate(const MlpModel& model, const FeatureMatrix& test, Task task) {
  require_rows(test, 1, "evaluate");
  if (task == Task::classification) {
    throw std::invalid_argument("evaluate: the MLP readout is regression-only");
  }
  std::vector<double> preds;
  preds.reserve(test.size());
  for (const auto& row : test.rows) preds.push_back(model.predict(row));
  return metrics_from_predictions(preds, test, task, 0.0);
}

double baseline_mae(const std::vector<double>& train_labels,
                    const std::vector<double>& test_labels) {
  if (train_labels.empty() || test_labels.empty()) {
    throw std::invalid_argument("baseline_mae: empty label set");
  }
  double mean = 0.0;
  for (double y : train_labels) mean += y;
  mean /= static_cast<double>(train_labels.size());
  double s = 0.0;
  for (double y : test_labels) s += std::abs(y - mean);
  return s / static_cast<double>(test_labels.size());
}

}  // namespace molhd
