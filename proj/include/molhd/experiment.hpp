#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "molhd/readout.hpp"
#include "molhd/structures.hpp"

namespace molhd {

enum class Method { graphhd, sspgraphd, reservoir };
enum class ReadoutKind { linear, sgd, mlp };

Method method_from_string(const std::string& s);
Task task_from_string(const std::string& s);
ReadoutKind readout_from_string(const std::string& s);
std::string to_string(Method m);
std::string to_string(Task t);
std::string to_string(ReadoutKind r);

// Seed streams drawn per run through derive_seed(run_seed, stream).
enum SeedStream : std::uint64_t {
  kSeedCodebook = 0,
  kSeedBasis = 1,
  kSeedSplit = 2,
  kSeedReadout = 3,
  kSeedReservoir = 4,
};

struct ExperimentConfig {
  Method method = Method::sspgraphd;
  Task task = Task::regression;
  ReadoutKind readout = ReadoutKind::linear;
  std::size_t dim = 10000;              // hypervector dimension
  std::size_t reservoir_size = 400;
  std::size_t runs = 0;                 // 0 = default: 25 for reservoir, 1 otherwise
  std::uint64_t base_seed = 1;
  std::uint64_t seed_stride = 1;        // run r uses base_seed + r * seed_stride
  double train_fraction = 0.7;
  double length_scale = 1.0;            // SSP position resolution, angstroms
  double ridge = 1e-6;
  SgdConfig sgd;
  std::vector<std::size_t> mlp_hidden;  // empty = per-method default
  std::size_t mlp_epochs = 2000;
  double mlp_learning_rate = 1e-3;
};

struct RunResult {
  double metric = 0.0;        // MAE or accuracy for this run
  double baseline_mae = 0.0;  // predict-train-mean MAE on the same split
};

struct ResultsRow {
  std::string method;
  std::string task;
  std::string readout;
  std::size_t dim_or_size = 0;
  std::size_t runs = 0;
  std::uint64_t base_seed = 0;
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;
  std::string timestamp;  // ISO 8601 UTC
};

std::size_t effective_runs(const ExperimentConfig& cfg);

// Features for every graph under the chosen method, all sampling derived
// from run_seed. Reservoir features for an edgeless graph are all-zero
// rates.
std::vector<std::vector<double>> encode_features(const ExperimentConfig& cfg,
                                                 const std::vector<MoleculeGraph>& dataset,
                                                 std::uint64_t run_seed);

// One run: encode, split, standardize, train the readout, evaluate.
RunResult execute_run(const ExperimentConfig& cfg, const std::vector<MoleculeGraph>& dataset,
                      std::uint64_t run_seed);

// Full protocol: effective_runs() runs with seeds base + r * stride,
// aggregated to mean and sample standard deviation (0 for a single run).
ResultsRow run_experiment(const ExperimentConfig& cfg, const std::vector<MoleculeGraph>& dataset);

// CSV with header
// method,task,readout,dim_or_size,runs,base_seed,metric,mean,std,timestamp
void emit_results(const std::vector<ResultsRow>& rows, const std::string& path);
void append_result(const ResultsRow& row, const std::string& path);
std::vector<ResultsRow> read_results(const std::string& path);

// One CSV line without trailing newline (header excluded).
std::string format_row(const ResultsRow& row);

// Plain-text method x metric table over the given rows.
std::string render_table(const std::vector<ResultsRow>& rows);

}  // namespace molhd
