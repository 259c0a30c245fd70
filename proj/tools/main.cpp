// Benchmark CLI: synthetic dataset generation, graph encoding, the
// train/evaluate protocol and results reporting.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "molhd/experiment.hpp"
#include "molhd/graphhd.hpp"
#include "molhd/reservoir.hpp"
#include "molhd/spike.hpp"
#include "molhd/sspgraphd.hpp"
#include "molhd/structures.hpp"

namespace {

struct DatasetArgs {
  std::string path;
  std::size_t synthetic_n = 54;
  std::size_t synthetic_max_atoms = 12;
  std::uint64_t synthetic_seed = 1;
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args) {
  cmd->add_option("--dataset", args.path, "Dataset JSON file; omit to use a synthetic dataset");
  cmd->add_option("--synthetic-n", args.synthetic_n, "Synthetic dataset size");
  cmd->add_option("--synthetic-max-atoms", args.synthetic_max_atoms, "Synthetic atoms per graph cap");
  cmd->add_option("--synthetic-seed", args.synthetic_seed, "Synthetic dataset seed");
}

std::vector<molhd::MoleculeGraph> resolve_dataset(const DatasetArgs& args) {
  if (!args.path.empty()) return molhd::load_dataset(args.path);
  molhd::Rng rng(args.synthetic_seed);
  return molhd::gen_synthetic(rng, args.synthetic_n, args.synthetic_max_atoms);
}

// JSON config mirrors the flag names without the leading dashes. Flags
// given on the command line win.
void apply_config_file(const std::string& path, molhd::ExperimentConfig& cfg, DatasetArgs& data) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (doc.contains("method")) cfg.method = molhd::method_from_string(doc["method"]);
  if (doc.contains("task")) cfg.task = molhd::task_from_string(doc["task"]);
  if (doc.contains("readout")) cfg.readout = molhd::readout_from_string(doc["readout"]);
  if (doc.contains("dim")) cfg.dim = doc["dim"].get<std::size_t>();
  if (doc.contains("reservoir_size")) cfg.reservoir_size = doc["reservoir_size"].get<std::size_t>();
  if (doc.contains("runs")) cfg.runs = doc["runs"].get<std::size_t>();
  if (doc.contains("base_seed")) cfg.base_seed = doc["base_seed"].get<std::uint64_t>();
  if (doc.contains("train_fraction")) cfg.train_fraction = doc["train_fraction"].get<double>();
  if (doc.contains("length_scale")) cfg.length_scale = doc["length_scale"].get<double>();
  if (doc.contains("ridge")) cfg.ridge = doc["ridge"].get<double>();
  if (doc.contains("mlp_hidden")) cfg.mlp_hidden = doc["mlp_hidden"].get<std::vector<std::size_t>>();
  if (doc.contains("mlp_epochs")) cfg.mlp_epochs = doc["mlp_epochs"].get<std::size_t>();
  if (doc.contains("mlp_learning_rate")) cfg.mlp_learning_rate = doc["mlp_learning_rate"].get<double>();
  if (doc.contains("dataset_path")) data.path = doc["dataset_path"].get<std::string>();
  if (doc.contains("synthetic_n")) data.synthetic_n = doc["synthetic_n"].get<std::size_t>();
  if (doc.contains("synthetic_max_atoms")) data.synthetic_max_atoms = doc["synthetic_max_atoms"].get<std::size_t>();
  if (doc.contains("synthetic_seed")) data.synthetic_seed = doc["synthetic_seed"].get<std::uint64_t>();
}

int cmd_gen_synthetic(std::size_t n, std::size_t max_atoms, std::uint64_t seed,
                      const std::string& out_path) {
  molhd::Rng rng(seed);
  const auto graphs = molhd::gen_synthetic(rng, n, max_atoms);
  molhd::save_dataset(graphs, out_path);
  std::size_t zeros = 0;
  for (const auto& g : graphs) {
    if (g.bandgap && *g.bandgap == 0.0) ++zeros;
  }
  std::cout << "wrote " << graphs.size() << " graphs (" << zeros << " zero-bandgap) to "
            << out_path << "\n";
  return 0;
}

int cmd_encode(const DatasetArgs& data, const std::string& method_name, std::size_t dim,
               std::size_t reservoir_size, std::uint64_t seed, double length_scale,
               const std::string& out_path, bool dump_frames) {
  const auto dataset = resolve_dataset(data);
  if (dump_frames) {
    for (const auto& g : dataset) {
      std::cout << g.id << "\n";
      for (const auto& frame : molhd::encode_graph(g)) {
        std::cout << "  " << molhd::to_string(frame) << "\n";
      }
    }
  }

  molhd::ExperimentConfig cfg;
  cfg.method = molhd::method_from_string(method_name);
  cfg.dim = dim;
  cfg.reservoir_size = reservoir_size;
  cfg.length_scale = length_scale;
  const auto features = molhd::encode_features(cfg, dataset, seed);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    out = &file;
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    *out << dataset[i].id << ',';
    if (dataset[i].bandgap) *out << *dataset[i].bandgap;
    for (double v : features[i]) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), ",%.9g", v);
      *out << buf;
    }
    *out << '\n';
  }
  if (!out_path.empty()) {
    std::cout << "wrote " << dataset.size() << " feature rows to " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypervector and spiking-reservoir encoders for molecular graphs"};
  app.require_subcommand(1);

  // gen-synthetic
  auto* gen = app.add_subcommand("gen-synthetic", "Generate a synthetic labeled dataset");
  std::size_t gen_n = 54, gen_max_atoms = 12;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "synthetic.json";
  gen->add_option("--n", gen_n, "Number of graphs");
  gen->add_option("--max-atoms", gen_max_atoms, "Maximum atoms per graph");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output JSON path");

  // encode
  auto* enc = app.add_subcommand("encode", "Encode a dataset into feature vectors");
  DatasetArgs enc_data;
  add_dataset_options(enc, enc_data);
  std::string enc_method = "ssp-graphhd";
  std::size_t enc_dim = 10000, enc_res_size = 400;
  std::uint64_t enc_seed = 1;
  double enc_length_scale = 1.0;
  std::string enc_out;
  bool enc_dump_frames = false;
  enc->add_option("--method", enc_method, "graphhd | ssp-graphhd | reservoir");
  enc->add_option("--dim", enc_dim, "Hypervector dimension");
  enc->add_option("--reservoir-size", enc_res_size, "Reservoir neuron count");
  enc->add_option("--seed", enc_seed, "Encoding seed");
  enc->add_option("--length-scale", enc_length_scale, "SSP length scale (angstroms)");
  enc->add_option("--out", enc_out, "Feature CSV path (stdout when omitted)");
  enc->add_flag("--dump-frames", enc_dump_frames, "Print each edge spike frame as a 0/1 string");

  // run
  auto* runc = app.add_subcommand("run", "Run the train/evaluate protocol");
  DatasetArgs run_data;
  add_dataset_options(runc, run_data);
  molhd::ExperimentConfig cfg;
  std::string run_method = "ssp-graphhd", run_task = "regression", run_readout = "linear";
  std::string run_config_path, run_out;
  runc->add_option("--config", run_config_path, "JSON config file (flags override)");
  runc->add_option("--method", run_method, "graphhd | ssp-graphhd | reservoir");
  runc->add_option("--task", run_task, "classification | regression");
  runc->add_option("--readout", run_readout, "linear | sgd | mlp");
  auto* dim_opt = runc->add_option("--dim", cfg.dim, "Hypervector dimension");
  auto* size_opt = runc->add_option("--reservoir-size", cfg.reservoir_size, "Reservoir neuron count");
  auto* runs_opt = runc->add_option("--runs", cfg.runs, "Independent runs (default 25 reservoir, 1 otherwise)");
  auto* seed_opt = runc->add_option("--base-seed", cfg.base_seed, "Base seed; run r uses base + r");
  auto* frac_opt = runc->add_option("--train-fraction", cfg.train_fraction, "Training fraction");
  auto* scale_opt = runc->add_option("--length-scale", cfg.length_scale, "SSP length scale");
  auto* ridge_opt = runc->add_option("--ridge", cfg.ridge, "Ridge penalty for the linear readout");
  auto* hidden_opt = runc->add_option("--mlp-hidden", cfg.mlp_hidden, "MLP hidden widths");
  auto* epochs_opt = runc->add_option("--mlp-epochs", cfg.mlp_epochs, "MLP training epochs");
  auto* lr_opt = runc->add_option("--mlp-lr", cfg.mlp_learning_rate, "MLP learning rate");
  runc->add_option("--out", run_out, "Results CSV to append to");

  // report
  auto* rep = app.add_subcommand("report", "Render a results CSV as a table");
  std::string rep_path;
  rep->add_option("--results", rep_path, "Results CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen_synthetic(gen_n, gen_max_atoms, gen_seed, gen_out);
    }
    if (enc->parsed()) {
      return cmd_encode(enc_data, enc_method, enc_dim, enc_res_size, enc_seed, enc_length_scale,
                        enc_out, enc_dump_frames);
    }
    if (runc->parsed()) {
      molhd::ExperimentConfig file_cfg;
      DatasetArgs file_data = run_data;
      if (!run_config_path.empty()) {
        apply_config_file(run_config_path, file_cfg, file_data);
        // Start from the config file, then let explicit flags override.
        if (dim_opt->count() == 0) cfg.dim = file_cfg.dim;
        if (size_opt->count() == 0) cfg.reservoir_size = file_cfg.reservoir_size;
        if (runs_opt->count() == 0) cfg.runs = file_cfg.runs;
        if (seed_opt->count() == 0) cfg.base_seed = file_cfg.base_seed;
        if (frac_opt->count() == 0) cfg.train_fraction = file_cfg.train_fraction;
        if (scale_opt->count() == 0) cfg.length_scale = file_cfg.length_scale;
        if (ridge_opt->count() == 0) cfg.ridge = file_cfg.ridge;
        if (hidden_opt->count() == 0) cfg.mlp_hidden = file_cfg.mlp_hidden;
        if (epochs_opt->count() == 0) cfg.mlp_epochs = file_cfg.mlp_epochs;
        if (lr_opt->count() == 0) cfg.mlp_learning_rate = file_cfg.mlp_learning_rate;
        cfg.method = file_cfg.method;
        cfg.task = file_cfg.task;
        cfg.readout = file_cfg.readout;
        if (run_data.path.empty()) run_data = file_data;
      }
      if (runc->get_option("--method")->count() > 0 || run_config_path.empty()) {
        cfg.method = molhd::method_from_string(run_method);
      }
      if (runc->get_option("--task")->count() > 0 || run_config_path.empty()) {
        cfg.task = molhd::task_from_string(run_task);
      }
      if (runc->get_option("--readout")->count() > 0 || run_config_path.empty()) {
        cfg.readout = molhd::readout_from_string(run_readout);
      }

      const auto dataset = resolve_dataset(run_data);
      const molhd::ResultsRow row = molhd::run_experiment(cfg, dataset);
      if (!run_out.empty()) molhd::append_result(row, run_out);
      std::cout << molhd::render_table({row});
      return 0;
    }
    if (rep->parsed()) {
      std::cout << molhd::render_table(molhd::read_results(rep_path));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
