#pragma once

#include <cstdint>
#include <vector>

#include "molhd/structures.hpp"
#include "molhd/vsa.hpp"

namespace molhd {

// MAP codebook for the periodic table: one hypervector per element
// (1..118) plus the shared edge vector V. Reproducible from
// (seed, dim, levels); duplicate draws are resampled so all 119 vectors
// stay pairwise distinct even at small test dimensions.
struct ElementCodebook {
  std::vector<MapHypervector> element;  // index = atomic number - 1
  MapHypervector edge;                  // V
  std::uint64_t seed = 0;
  int levels = 25;                      // weight quantization levels L

  std::size_t dim() const { return edge.dim(); }
  const MapHypervector& for_element(int atomic_number) const;
};

ElementCodebook make_element_codebook(std::uint64_t seed, std::size_t dim, int levels = 25);

// Permutation shift for a normalized weight w in [0, 1]:
// round(w * (levels - 1)), half away from zero.
std::int64_t weight_shift(double w, int levels);

// Neighborhood memory of atom i: the sum over neighbors j of
// permute(V, weight_shift(w_ij)) * H[element_j]. Isolated atoms give the
// zero vector.
MapHypervector node_memory(const MoleculeGraph& g, std::size_t atom_index,
                           const ElementCodebook& cb);

// Whole-graph encoding: half the bundle over atoms of
// H[element_i] * node_memory(i). Accumulation is exact integer
// arithmetic; the 1/2 scale is applied once at the end.
GraphHypervector encode_graphhd(const MoleculeGraph& g, const ElementCodebook& cb);

}  // namespace molhd
