#include "molhd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "molhd/graphhd.hpp"
#include "molhd/reservoir.hpp"
#include "molhd/spike.hpp"
#include "molhd/sspgraphd.hpp"

namespace molhd {

Method method_from_string(const std::string& s) {
  if (s == "graphhd") return Method::graphhd;
  if (s == "ssp-graphhd") return Method::sspgraphd;
  if (s == "reservoir") return Method::reservoir;
  throw std::invalid_argument("unknown method: " + s);
}

Task task_from_string(const std::string& s) {
  if (s == "classification") return Task::classification;
  if (s == "regression") return Task::regression;
  throw std::invalid_argument("unknown task: " + s);
}

ReadoutKind readout_from_string(const std::string& s) {
  if (s == "linear") return ReadoutKind::linear;
  if (s == "sgd") return ReadoutKind::sgd;
  if (s == "mlp") return ReadoutKind::mlp;
  throw std::invalid_argument("unknown readout: " + s);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::graphhd: return "graphhd";
    case Method::sspgraphd: return "ssp-graphhd";
    case Method::reservoir: return "reservoir";
  }
  return "?";
}

std::string to_string(Task t) {
  return t == Task::classification ? "classification" : "regression";
}

std::string to_string(ReadoutKind r) {
  switch (r) {
    case ReadoutKind::linear: return "linear";
    case ReadoutKind::sgd: return "sgd";
    case ReadoutKind::mlp: return "mlp";
  }
  return "?";
}

std::size_t effective_runs(const ExperimentConfig& cfg) {
  if (cfg.runs > 0) return cfg.runs;
  return cfg.method == Method::reservoir ? 25 : 1;
}

namespace {

void check_config(const ExperimentConfig& cfg) {
  if (cfg.readout == ReadoutKind::mlp && cfg.task != Task::regression) {
    throw std::invalid_argument("the mlp readout supports regression only");
  }
  if (cfg.readout == ReadoutKind::sgd && cfg.task != Task::classification) {
    throw std::invalid_argument("the sgd readout supports classification only");
  }
  if (cfg.dim < 4) throw std::invalid_argument("dim must be >= 4");
}

double label_for(const MoleculeGraph& g, Task task) {
  if (!g.bandgap) {
    throw std::runtime_error("record '" + g.id + "': missing bandgap label");
  }
  if (task == Task::regression) return *g.bandgap;
  return *g.bandgap > 0.0 ? 1.0 : 0.0;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::vector<std::vector<double>> encode_features(const ExperimentConfig& cfg,
                                                 const std::vector<MoleculeGraph>& dataset,
                                                 std::uint64_t run_seed) {
  std::vector<std::vector<double>> features;
  features.reserve(dataset.size());
  switch (cfg.method) {
    case Method::graphhd: {
      const ElementCodebook cb = make_element_codebook(derive_seed(run_seed, kSeedCodebook), cfg.dim);
      for (const MoleculeGraph& g : dataset) features.push_back(encode_graphhd(g, cb).values);
      break;
    }
    case Method::sspgraphd: {
      const SspElementCodebook cb = make_ssp_codebook(derive_seed(run_seed, kSeedCodebook), cfg.dim);
      const AxisBasis basis =
          make_axis_basis(derive_seed(run_seed, kSeedBasis), cfg.dim, cfg.length_scale);
      for (const MoleculeGraph& g : dataset) {
        features.push_back(encode_sspgraphd(g, cb, basis).values);
      }
      break;
    }
    case Method::reservoir: {
      ReservoirConfig rc;
      rc.size = cfg.reservoir_size;
      rc.seed = derive_seed(run_seed, kSeedReservoir);
      const Reservoir res = build_reservoir(rc);
      for (const MoleculeGraph& g : dataset) {
        const std::vector<SpikeFrame> frames = encode_graph(g);
        if (frames.empty()) {
          features.emplace_back(rc.size, 0.0);
        } else {
          features.push_back(run(res, frames).rates);
        }
      }
      break;
    }
  }
  return features;
}

RunResult execute_run(const ExperimentConfig& cfg, const std::vector<MoleculeGraph>& dataset,
                      std::uint64_t run_seed) {
  check_config(cfg);
  if (dataset.size() < 2) throw std::invalid_argument("dataset needs at least 2 records");

  FeatureMatrix fm;
  fm.rows = encode_features(cfg, dataset, run_seed);
  fm.labels.reserve(dataset.size());
  for (const MoleculeGraph& g : dataset) fm.labels.push_back(label_for(g, cfg.task));

  Rng split_rng(derive_seed(run_seed, kSeedSplit));
  auto [train, test] = split(fm, cfg.train_fraction, split_rng);

  Standardizer st;
  st.fit(train);
  st.apply(train);
  st.apply(test);

  RunResult result;
  result.baseline_mae = baseline_mae(train.labels, test.labels);

  switch (cfg.readout) {
    case ReadoutKind::linear: {
      LinearModel model = train_linear_regressor(train, cfg.ridge);
      if (cfg.task == Task::classification) model.threshold = 0.5;
      result.metric = evaluate(model, test, cfg.task).value;
      break;
    }
    case ReadoutKind::sgd: {
      Rng rng(derive_seed(run_seed, kSeedReadout));
      const LinearModel model = train_sgd_classifier(train, cfg.sgd, rng);
      result.metric = evaluate(model, test, cfg.task).value;
      break;
    }
    case ReadoutKind::mlp: {
      MlpConfig mc;
      mc.hidden = cfg.mlp_hidden;
      if (mc.hidden.empty()) {
        mc.hidden = cfg.method == Method::graphhd ? std::vector<std::size_t>{64, 32}
                                                  : std::vector<std::size_t>{10};
      }
      mc.epochs = cfg.mlp_epochs;
      mc.learning_rate = cfg.mlp_learning_rate;
      mc.seed = derive_seed(run_seed, kSeedReadout);
      const MlpModel model = train_mlp(train, mc);
      result.metric = evaluate(model, test, cfg.task).value;
      break;
    }
  }
  return result;
}

ResultsRow run_experiment(const ExperimentConfig& cfg, const std::vector<MoleculeGraph>& dataset) {
  check_config(cfg);
  const std::size_t runs = effective_runs(cfg);
  std::vector<double> metrics;
  metrics.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t run_seed = cfg.base_seed + r * cfg.seed_stride;
    metrics.push_back(execute_run(cfg, dataset, run_seed).metric);
  }

  double mean = 0.0;
  for (double m : metrics) mean += m;
  mean /= static_cast<double>(runs);
  double stddev = 0.0;
  if (runs > 1) {
    double ss = 0.0;
    for (double m : metrics) ss += (m - mean) * (m - mean);
    stddev = std::sqrt(ss / static_cast<double>(runs - 1));
  }

  ResultsRow row;
  row.method = to_string(cfg.method);
  row.task = to_string(cfg.task);
  row.readout = to_string(cfg.readout);
  row.dim_or_size = cfg.method == Method::reservoir ? cfg.reservoir_size : cfg.dim;
  row.runs = runs;
  row.base_seed = cfg.base_seed;
  row.metric = cfg.task == Task::regression ? "mae" : "accuracy";
  row.mean = mean;
  row.stddev = stddev;
  row.timestamp = utc_timestamp();
  return row;
}

static const char* kCsvHeader = "method,task,readout,dim_or_size,runs,base_seed,metric,mean,std,timestamp";

std::string format_row(const ResultsRow& row) {
  std::ostringstream os;
  os << row.method << ',' << row.task << ',' << row.readout << ',' << row.dim_or_size << ','
     << row.runs << ',' << row.base_seed << ',' << row.metric << ',' << format_double(row.mean)
     << ',' << format_double(row.stddev) << ',' << row.timestamp;
  return os.str();
}

void emit_results(const std::vector<ResultsRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_results: no rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write results file: " + path);
  out << kCsvHeader << '\n';
  for (const ResultsRow& row : rows) out << format_row(row) << '\n';
}

void append_result(const ResultsRow& row, const std::string& path) {
  const bool fresh = !std::ifstream(path).good();
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write results file: " + path);
  if (fresh) out << kCsvHeader << '\n';
  out << format_row(row) << '\n';
}

std::vector<ResultsRow> read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file: " + path);
  std::string line;
  std::vector<ResultsRow> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == kCsvHeader) continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
      throw std::runtime_error("malformed results line: " + line);
    }
    ResultsRow row;
    row.method = fields[0];
    row.task = fields[1];
    row.readout = fields[2];
    row.dim_or_size = std::stoul(fields[3]);
    row.runs = std::stoul(fields[4]);
    row.base_seed = std::stoull(fields[5]);
    row.metric = fields[6];
    row.mean = std::stod(fields[7]);
    row.stddev = std::stod(fields[8]);
    row.timestamp = fields[9];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_table(const std::vector<ResultsRow>& rows) {
  // One table row per (method, size); MAE and accuracy fill in from
  // whichever result rows are present.
  struct Cell {
    std::string mae = "--";
    std::string acc = "--";
  };
  auto display_name = [](const ResultsRow& r) {
    return r.method == "reservoir" ? r.method + "-" + std::to_string(r.dim_or_size) : r.method;
  };
  std::vector<std::string> order;
  std::map<std::string, Cell> cells;
  char buf[64];
  for (const ResultsRow& r : rows) {
    const std::string name = display_name(r);
    if (!cells.count(name)) order.push_back(name);
    Cell& cell = cells[name];
    if (r.runs > 1) {
      std::snprintf(buf, sizeof(buf), "%.4f +/- %.4f", r.mean, r.stddev);
    } else {
      std::snprintf(buf, sizeof(buf), "%.4f", r.mean);
    }
    (r.metric == "mae" ? cell.mae : cell.acc) = buf;
  }

  std::ostringstream os;
  os << "Method                MAE                  Class. Acc.\n";
  os << "----------------------------------------------------------\n";
  for (const std::string& name : order) {
    const Cell& cell = cells[name];
    char line[160];
    std::snprintf(line, sizeof(line), "%-20s  %-19s  %s\n", name.c_str(), cell.mae.c_str(),
                  cell.acc.c_str());
    os << line;
  }
  return os.str();
}

}  // namespace molhd
