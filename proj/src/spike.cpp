#include "molhd/spike.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace molhd {

std::size_t distance_bin(double distance) {
  const long long k = std::llround(distance / kBinWidth);
  const long long clamped = std::min<long long>(k, static_cast<long long>(kDistanceBins) - 1);
  return kNodeSlots + static_cast<std::size_t>(std::max<long long>(clamped, 0));
}

SpikeFrame encode_edge(const Edge& e) {
  if (e.i < 0 || e.j < 0 || static_cast<std::size_t>(e.i) >= kNodeSlots ||
      static_cast<std::size_t>(e.j) >= kNodeSlots) {
    throw std::invalid_argument("encode_edge: node index outside the 140-slot budget");
  }
  if (e.i == e.j) throw std::invalid_argument("encode_edge: self-loop edge");
  if (e.distance < 0.0) throw std::invalid_argument("encode_edge: negative distance");
  SpikeFrame f;
  f.bits.set(static_cast<std::size_t>(e.i));
  f.bits.set(static_cast<std::size_t>(e.j));
  f.bits.set(distance_bin(e.distance));
  return f;
}

std::vector<SpikeFrame> encode_graph(const MoleculeGraph& g) {
  std::vector<Edge> ordered;
  ordered.reserve(g.edges.size());
  for (Edge e : g.edges) {
    if (e.i > e.j) std::swap(e.i, e.j);
    ordered.push_back(e);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  std::vector<SpikeFrame> frames;
  frames.reserve(ordered.size());
  for (const Edge& e : ordered) frames.push_back(encode_edge(e));
  return frames;
}

std::string to_string(const SpikeFrame& f) {
  std::string s(kFrameLength, '0');
  for (std::size_t i = 0; i < kFrameLength; ++i) {
    if (f.bits.test(i)) s[i] = '1';
  }
  return s;
}

}  // namespace molhd
