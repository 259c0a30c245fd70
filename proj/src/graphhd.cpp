#include "molhd/graphhd.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace molhd {

namespace {

// 64-bit content hash, enough to detect codebook collisions cheaply.
std::uint64_t hash_values(const std::vector<std::int32_t>& values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::int32_t v : values) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::pair<int, double>> neighbors_of(const MoleculeGraph& g, std::size_t atom_index) {
  std::vector<std::pair<int, double>> out;
  const int i = static_cast<int>(atom_index);
  for (const Edge& e : g.edges) {
    if (e.i == i) out.emplace_back(e.j, e.distance);
    else if (e.j == i) out.emplace_back(e.i, e.distance);
  }
  return out;
}

}  // namespace

const MapHypervector& ElementCodebook::for_element(int atomic_number) const {
  if (atomic_number < 1 || atomic_number > static_cast<int>(element.size())) {
    throw std::invalid_argument("codebook: element " + std::to_string(atomic_number) +
                                " outside 1..118");
  }
  return element[static_cast<std::size_t>(atomic_number - 1)];
}

ElementCodebook make_element_codebook(std::uint64_t seed, std::size_t dim, int levels) {
  if (levels < 2) throw std::invalid_argument("make_element_codebook: levels must be >= 2");
  ElementCodebook cb;
  cb.seed = seed;
  cb.levels = levels;
  Rng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  auto sample_distinct = [&]() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      MapHypervector v = sample_map(rng, dim);
      if (seen.insert(hash_values(v.values)).second) return v;
    }
    throw std::runtime_error("make_element_codebook: dimension too small for 119 distinct vectors");
  };
  cb.element.reserve(118);
  for (int z = 1; z <= 118; ++z) cb.element.push_back(sample_distinct());
  cb.edge = sample_distinct();
  return cb;
}

std::int64_t weight_shift(double w, int levels) {
  return std::llround(w * static_cast<double>(levels - 1));
}

MapHypervector node_memory(const MoleculeGraph& g, std::size_t atom_index,
                           const ElementCodebook& cb) {
  if (atom_index >= g.atoms.size()) {
    throw std::invalid_argument("node_memory: atom index out of range");
  }
  MapHypervector acc;
  acc.values.assign(cb.dim(), 0);
  for (const auto& [j, distance] : neighbors_of(g, atom_index)) {
    const std::int64_t shift = weight_shift(normalized_weight(distance), cb.levels);
    const MapHypervector bound =
        bind_map(permute(cb.edge, shift), cb.for_element(g.atoms[static_cast<std::size_t>(j)].element));
    for (std::size_t d = 0; d < acc.values.size(); ++d) acc.values[d] += bound.values[d];
  }
  return acc;
}

GraphHypervector encode_graphhd(const MoleculeGraph& g, const ElementCodebook& cb) {
  if (g.atoms.empty()) throw std::invalid_argument("encode_graphhd: empty graph");
  std::vector<std::int64_t> acc(cb.dim(), 0);
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    const MapHypervector nm = node_memory(g, i, cb);
    const MapHypervector& h = cb.for_element(g.atoms[i].element);
    for (std::size_t d = 0; d < acc.size(); ++d) {
      acc[d] += static_cast<std::int64_t>(h.values[d]) * nm.values[d];
    }
  }
  GraphHypervector out;
  out.values.resize(acc.size());
  for (std::size_t d = 0; d < acc.size(); ++d) out.values[d] = 0.5 * static_cast<double>(acc[d]);
  return out;
}

}  // namespace molhd
