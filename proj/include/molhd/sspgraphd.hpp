#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "molhd/structures.hpp"
#include "molhd/vsa.hpp"

namespace molhd {

// Unitary axis vectors for the three spatial dimensions. Coordinates are
// divided by length_scale (angstroms) before fractional binding.
struct AxisBasis {
  UnitaryHypervector x_axis;
  UnitaryHypervector y_axis;
  UnitaryHypervector z_axis;
  double length_scale = 1.0;
  std::uint64_t seed = 0;

  std::size_t dim() const { return x_axis.dim(); }
};

AxisBasis make_axis_basis(std::uint64_t seed, std::size_t dim, double length_scale = 1.0);

// Unitary codebook for the periodic table, one vector per element.
struct SspElementCodebook {
  std::vector<UnitaryHypervector> element;  // index = atomic number - 1
  std::uint64_t seed = 0;

  std::size_t dim() const { return element.empty() ? 0 : element.front().dim(); }
  const UnitaryHypervector& for_element(int atomic_number) const;
};

SspElementCodebook make_ssp_codebook(std::uint64_t seed, std::size_t dim);

// Point encoding X^(x/l) (x) Y^(y/l) (x) Z^(z/l). The origin maps to the
// unit impulse. Throws on non-finite coordinates.
UnitaryHypervector encode_position(const std::array<double, 3>& position, const AxisBasis& basis);

// Superposed object-location memory: sum_i objects[i].first bound to the
// encoding of objects[i].second. The result is a superposition, not unit
// magnitude. Throws on an empty list.
UnitaryHypervector encode_spatial_memory(
    const std::vector<std::pair<UnitaryHypervector, std::array<double, 3>>>& objects,
    const AxisBasis& basis);

// Object vector of atom i: its element vector bound to the unit-normalized
// sum of neighbor element vectors. Isolated atoms use the element vector
// alone. Neighbor sums run in a canonical order (element, then position)
// so relabeled graphs give bit-identical results.
UnitaryHypervector object_vector(const MoleculeGraph& g, std::size_t atom_index,
                                 const SspElementCodebook& cb);

// Whole-graph encoding: half the sum over atoms of
// object_vector(i) (x) encode_position(p_i). Atoms are summed in the same
// canonical order as above. With center set, positions are taken relative
// to the atom centroid.
GraphHypervector encode_sspgraphd(const MoleculeGraph& g, const SspElementCodebook& cb,
                                  const AxisBasis& basis, bool center = false);

}  // namespace molhd
