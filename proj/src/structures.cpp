#include "molhd/structures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace molhd {

namespace {

using nlohmann::json;

double euclidean(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

[[noreturn]] void record_error(const std::string& id, const std::string& what) {
  throw std::runtime_error("record '" + id + "': " + what);
}

}  // namespace

std::vector<Edge> build_edges(const std::vector<Atom>& atoms, double cutoff) {
  if (cutoff <= 0.0) throw std::invalid_argument("build_edges: cutoff must be > 0");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double d = euclidean(atoms[i].position, atoms[j].position);
      if (d > 0.0 && d <= cutoff) {
        edges.push_back(Edge{static_cast<int>(i), static_cast<int>(j), d});
      }
    }
  }
  return edges;
}

std::vector<double> normalize_weights(const MoleculeGraph& g) {
  if (g.edges.empty()) throw std::invalid_argument("normalize_weights: graph has no edges");
  std::vector<double> weights;
  weights.reserve(g.edges.size());
  for (const Edge& e : g.edges) weights.push_back(normalized_weight(e.distance));
  return weights;
}

void validate(const MoleculeGraph& g) {
  if (g.atoms.empty()) record_error(g.id, "no atoms");
  if (g.atoms.size() > kMaxAtoms) {
    record_error(g.id, "atom count " + std::to_string(g.atoms.size()) + " exceeds the " +
                           std::to_string(kMaxAtoms) + "-slot node budget");
  }
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    const Atom& a = g.atoms[i];
    if (a.element < 1 || a.element > 118) {
      record_error(g.id, "atom " + std::to_string(i) + " has element " +
                             std::to_string(a.element) + " outside 1..118");
    }
    for (double c : a.position) {
      if (!std::isfinite(c)) record_error(g.id, "atom " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
  std::set<std::pair<int, int>> seen;
  const int n = static_cast<int>(g.atoms.size());
  for (const Edge& e : g.edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) record_error(g.id, "edge index out of range");
    if (e.i == e.j) record_error(g.id, "self-loop edge");
    if (!(e.distance > 0.0)) record_error(g.id, "edge with non-positive distance");
    const double actual = euclidean(g.atoms[e.i].position, g.atoms[e.j].position);
    if (std::abs(actual - e.distance) > 1e-6) {
      record_error(g.id, "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                             ") distance " + std::to_string(e.distance) +
                             " disagrees with atom positions (" + std::to_string(actual) + ")");
    }
    const auto key = std::minmax(e.i, e.j);
    if (!seen.insert(key).second) record_error(g.id, "duplicate edge pair");
  }
}

std::vector<MoleculeGraph> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("dataset parse error in " + path + ": " + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("dataset root must be a JSON array: " + path);

  std::vector<MoleculeGraph> graphs;
  graphs.reserve(doc.size());
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const json& rec = doc[r];
    MoleculeGraph g;
    g.id = rec.value("id", "record-" + std::to_string(r));
    try {
      if (!rec.contains("atoms") || !rec["atoms"].is_array()) {
        record_error(g.id, "missing 'atoms' array");
      }
      for (const json& ja : rec["atoms"]) {
        Atom a;
        a.element = ja.at("element").get<int>();
        const json& pos = ja.at("pos");
        if (!pos.is_array() || pos.size() != 3) record_error(g.id, "'pos' must be [x,y,z]");
        for (int c = 0; c < 3; ++c) a.position[c] = pos[c].get<double>();
        g.atoms.push_back(a);
      }
      if (rec.contains("edges")) {
        for (const json& je : rec["edges"]) {
          if (!je.is_array() || je.size() != 3) record_error(g.id, "edge entries must be [i,j,dist]");
          g.edges.push_back(Edge{je[0].get<int>(), je[1].get<int>(), je[2].get<double>()});
        }
      } else {
        g.edges = build_edges(g.atoms);
      }
      if (rec.contains("bandgap")) g.bandgap = rec["bandgap"].get<double>();
    } catch (const json::exception& e) {
      record_error(g.id, std::string("malformed field: ") + e.what());
    }
    validate(g);
    graphs.push_back(std::move(g));
  }
  return graphs;
}

void save_dataset(const std::vector<MoleculeGraph>& graphs, const std::string& path) {
  json doc = json::array();
  for (const MoleculeGraph& g : graphs) {
    json rec;
    rec["id"] = g.id;
    rec["atoms"] = json::array();
    for (const Atom& a : g.atoms) {
      rec["atoms"].push_back({{"element", a.element}, {"pos", {a.position[0], a.position[1], a.position[2]}}});
    }
    rec["edges"] = json::array();
    for (const Edge& e : g.edges) rec["edges"].push_back({e.i, e.j, e.distance});
    if (g.bandgap) rec["bandgap"] = *g.bandgap;
    doc.push_back(std::move(rec));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  out << doc.dump(1) << "\n";
}

namespace {

struct PaletteEntry {
  int element;
  double gap_coeff;  // eV, pseudo-electronegativity scale
};

// Common elements only, so different molecules share codebook entries.
constexpr PaletteEntry kPalette[] = {
    {1, 3.8},  {3, 2.2},  {6, 4.6},  {8, 5.2},  {13, 1.2}, {14, 3.0},
    {16, 3.4}, {26, 0.6}, {29, 0.4}, {31, 2.6}, {33, 2.9}, {82, 1.0},
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

}  // namespace

std::vector<MoleculeGraph> gen_synthetic(Rng& rng, std::size_t n, std::size_t max_atoms) {
  if (n < 1) throw std::invalid_argument("gen_synthetic: n must be >= 1");
  if (max_atoms < 2 || max_atoms > kMaxAtoms) {
    throw std::invalid_argument("gen_synthetic: max_atoms must be in [2, 140]");
  }

  std::vector<MoleculeGraph> graphs;
  graphs.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    MoleculeGraph g;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "syn-%04zu", r);
    g.id = buf;

    // Retry placement until the cloud has at least one edge within the
    // cutoff; two-atom draws can otherwise land farther than 6 A apart.
    for (int attempt = 0; attempt < 64; ++attempt) {
      g.atoms.clear();
      const std::size_t count = 2 + rng.uniform_int(max_atoms - 1);
      for (std::size_t a = 0; a < count; ++a) {
        Atom atom;
        atom.element = kPalette[rng.uniform_int(kPaletteSize)].element;
        // Keep atoms at least 0.9 A apart when a spot can be found.
        for (int place = 0; place < 40; ++place) {
          for (int c = 0; c < 3; ++c) atom.position[c] = rng.uniform() * kDistanceScale;
          bool clear = true;
          for (const Atom& other : g.atoms) {
            if (euclidean(atom.position, other.position) < 0.9) {
              clear = false;
              break;
            }
          }
          if (clear) break;
        }
        g.atoms.push_back(atom);
      }
      g.edges = build_edges(g.atoms);
      if (!g.edges.empty()) break;
    }

    // Half the records are metals (bandgap exactly 0). The rest get a
    // smooth function of composition and mean bond length:
    //   gap = mean_a coeff(element_a) * (0.7 + 0.6 * exp(-mean_dist / 2.5))
    if (rng.uniform() < 0.5) {
      g.bandgap = 0.0;
    } else {
      double coeff_sum = 0.0;
      for (const Atom& a : g.atoms) {
        for (const PaletteEntry& p : kPalette) {
          if (p.element == a.element) {
            coeff_sum += p.gap_coeff;
            break;
          }
        }
      }
      const double composition = coeff_sum / static_cast<double>(g.atoms.size());
      double mean_dist = 3.0;
      if (!g.edges.empty()) {
        double s = 0.0;
        for (const Edge& e : g.edges) s += e.distance;
        mean_dist = s / static_cast<double>(g.edges.size());
      }
      g.bandgap = composition * (0.7 + 0.6 * std::exp(-mean_dist / 2.5));
    }
    validate(g);
    graphs.push_back(std::move(g));
  }
  return graphs;
}

}  // namespace molhd
