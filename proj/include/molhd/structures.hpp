#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "molhd/rng.hpp"

namespace molhd {

// Node slots available to the spike encoder; graphs larger than this are
// rejected everywhere.
constexpr std::size_t kMaxAtoms = 140;

// Global scale for edge-weight normalization and the spike distance bins,
// in angstroms.
constexpr double kDistanceScale = 6.0;

struct Atom {
  int element = 0;                       // atomic number, 1..118
  std::array<double, 3> position{};      // angstroms
};

struct Edge {
  int i = 0;
  int j = 0;
  double distance = 0.0;                 // angstroms
};

struct MoleculeGraph {
  std::string id;
  std::vector<Atom> atoms;
  std::vector<Edge> edges;
  std::optional<double> bandgap;         // eV
};

// Weight on the fixed global scale: distance / 6 A, clamped to [0, 1].
inline double normalized_weight(double distance) {
  const double w = distance / kDistanceScale;
  return w < 0.0 ? 0.0 : (w > 1.0 ? 1.0 : w);
}

// All unordered pairs within the cutoff, each once, ordered (i < j) by
// ascending (i, j). Coincident atoms (distance 0) produce no edge.
std::vector<Edge> build_edges(const std::vector<Atom>& atoms, double cutoff = kDistanceScale);

// Per-edge normalized weights, aligned with g.edges. Throws when the graph
// has no edges.
std::vector<double> normalize_weights(const MoleculeGraph& g);

// Checks every invariant (element range, atom budget, edge indices,
// distance consistency with positions, duplicate pairs). Throws
// std::runtime_error naming the offending record.
void validate(const MoleculeGraph& g);

// Dataset file format: JSON array of records
//   {"id": str, "atoms": [{"element": int, "pos": [x,y,z]}],
//    "edges": [[i,j,dist],...] (optional), "bandgap": num (optional)}
// Edges are recomputed from positions (6 A cutoff) when the key is absent.
std::vector<MoleculeGraph> load_dataset(const std::string& path);
void save_dataset(const std::vector<MoleculeGraph>& graphs, const std::string& path);

// Random atom clouds in a 6 A box over a small element palette, with a
// smooth synthetic bandgap (see gen_synthetic in structures.cpp for the
// exact formula). About half the labels are exactly 0.
std::vector<MoleculeGraph> gen_synthetic(Rng& rng, std::size_t n, std::size_t max_atoms);

}  // namespace molhd
