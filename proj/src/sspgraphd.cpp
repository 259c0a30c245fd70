#include "molhd/sspgraphd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace molhd {

namespace {

// Sort key that depends only on atom content, not on its index.
auto atom_key(const MoleculeGraph& g, std::size_t i) {
  const Atom& a = g.atoms[i];
  return std::make_tuple(a.element, a.position[0], a.position[1], a.position[2]);
}

std::vector<std::size_t> neighbors_canonical(const MoleculeGraph& g, std::size_t atom_index) {
  std::vector<std::size_t> out;
  const int i = static_cast<int>(atom_index);
  for (const Edge& e : g.edges) {
    if (e.i == i) out.push_back(static_cast<std::size_t>(e.j));
    else if (e.j == i) out.push_back(static_cast<std::size_t>(e.i));
  }
  std::sort(out.begin(), out.end(),
            [&](std::size_t a, std::size_t b) { return atom_key(g, a) < atom_key(g, b); });
  return out;
}

}  // namespace

AxisBasis make_axis_basis(std::uint64_t seed, std::size_t dim, double length_scale) {
  if (length_scale <= 0.0) throw std::invalid_argument("make_axis_basis: length_scale must be > 0");
  Rng rng(seed);
  AxisBasis basis;
  basis.seed = seed;
  basis.length_scale = length_scale;
  basis.x_axis = sample_unitary(rng, dim);
  basis.y_axis = sample_unitary(rng, dim);
  basis.z_axis = sample_unitary(rng, dim);
  return basis;
}

const UnitaryHypervector& SspElementCodebook::for_element(int atomic_number) const {
  if (atomic_number < 1 || atomic_number > static_cast<int>(element.size())) {
    throw std::invalid_argument("ssp codebook: element " + std::to_string(atomic_number) +
                                " outside 1..118");
  }
  return element[static_cast<std::size_t>(atomic_number - 1)];
}

SspElementCodebook make_ssp_codebook(std::uint64_t seed, std::size_t dim) {
  Rng rng(seed);
  SspElementCodebook cb;
  cb.seed = seed;
  cb.element.reserve(118);
  for (int z = 1; z <= 118; ++z) cb.element.push_back(sample_unitary(rng, dim));
  return cb;
}

UnitaryHypervector encode_position(const std::array<double, 3>& position, const AxisBasis& basis) {
  for (double c : position) {
    if (!std::isfinite(c)) throw std::invalid_argument("encode_position: non-finite coordinate");
  }
  const double inv_l = 1.0 / basis.length_scale;
  UnitaryHypervector s = frac_power(basis.x_axis, position[0] * inv_l);
  s = circ_conv(s, frac_power(basis.y_axis, position[1] * inv_l));
  s = circ_conv(s, frac_power(basis.z_axis, position[2] * inv_l));
  return s;
}

UnitaryHypervector encode_spatial_memory(
    const std::vector<std::pair<UnitaryHypervector, std::array<double, 3>>>& objects,
    const AxisBasis& basis) {
  if (objects.empty()) throw std::invalid_argument("encode_spatial_memory: empty object list");
  UnitaryHypervector memory;
  memory.values.assign(basis.dim(), 0.0);
  for (const auto& [obj, position] : objects) {
    const UnitaryHypervector bound = circ_conv(obj, encode_position(position, basis));
    for (std::size_t d = 0; d < memory.values.size(); ++d) memory.values[d] += bound.values[d];
  }
  return memory;
}

UnitaryHypervector object_vector(const MoleculeGraph& g, std::size_t atom_index,
                                 const SspElementCodebook& cb) {
  if (atom_index >= g.atoms.size()) {
    throw std::invalid_argument("object_vector: atom index out of range");
  }
  const UnitaryHypervector& own = cb.for_element(g.atoms[atom_index].element);
  const std::vector<std::size_t> neighbors = neighbors_canonical(g, atom_index);
  if (neighbors.empty()) return own;

  // Unweighted neighborhood memory, renormalized so high-degree atoms do
  // not dominate the graph bundle.
  std::vector<double> memory(cb.dim(), 0.0);
  for (std::size_t j : neighbors) {
    const UnitaryHypervector& h = cb.for_element(g.atoms[j].element);
    for (std::size_t d = 0; d < memory.size(); ++d) memory[d] += h.values[d];
  }
  double norm_sq = 0.0;
  for (double v : memory) norm_sq += v * v;
  if (norm_sq > 0.0) {
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (double& v : memory) v *= inv_norm;
  }
  return circ_conv(own, UnitaryHypervector{std::move(memory)});
}

GraphHypervector encode_sspgraphd(const MoleculeGraph& g, const SspElementCodebook& cb,
                                  const AxisBasis& basis, bool center) {
  if (g.atoms.empty()) throw std::invalid_argument("encode_sspgraphd: empty graph");
  if (cb.dim() != basis.dim()) {
    throw std::invalid_argument("encode_sspgraphd: codebook and basis dimensions differ");
  }

  std::array<double, 3> offset{0.0, 0.0, 0.0};
  if (center) {
    for (const Atom& a : g.atoms) {
      for (int c = 0; c < 3; ++c) offset[c] += a.position[c];
    }
    for (int c = 0; c < 3; ++c) offset[c] /= static_cast<double>(g.atoms.size());
  }

  // Canonical summation order makes atom relabeling bit-exact.
  std::vector<std::size_t> order(g.atoms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return atom_key(g, a) < atom_key(g, b); });

  GraphHypervector out;
  out.values.assign(cb.dim(), 0.0);
  for (std::size_t i : order) {
    const std::array<double, 3> p{g.atoms[i].position[0] - offset[0],
                                  g.atoms[i].position[1] - offset[1],
                                  g.atoms[i].position[2] - offset[2]};
    const UnitaryHypervector bound = circ_conv(object_vector(g, i, cb), encode_position(p, basis));
    for (std::size_t d = 0; d < out.values.size(); ++d) out.values[d] += bound.values[d];
  }
  for (double& v : out.values) v *= 0.5;
  return out;
}

}  // namespace molhd
