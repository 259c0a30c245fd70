#pragma once

#include <bitset>
#include <string>
#include <vector>

#include "molhd/structures.hpp"

namespace molhd {

constexpr std::size_t kNodeSlots = 140;
constexpr std::size_t kDistanceBins = 25;
constexpr std::size_t kFrameLength = kNodeSlots + kDistanceBins;  // 165
constexpr double kBinWidth = 0.25;  // angstroms per distance bin

// One graph edge as a binary frame: the two node slots plus one distance
// bin are set, nothing else.
struct SpikeFrame {
  std::bitset<kFrameLength> bits;

  bool operator==(const SpikeFrame&) const = default;
};

// Distance bin index in [140, 164]: 140 + round(distance / 0.25), half
// rounded away from zero, clamped to the top bin above 6 A.
std::size_t distance_bin(double distance);

// Sets bits for both endpoints and the distance bin. Throws when a node
// index is outside the 140-slot budget or the distance is negative.
SpikeFrame encode_edge(const Edge& e);

// One frame per edge in canonical order: endpoints normalized to
// (min, max), frames sorted ascending by that pair.
std::vector<SpikeFrame> encode_graph(const MoleculeGraph& g);

// "0"/"1" string, slot 0 first.
std::string to_string(const SpikeFrame& f);

}  // namespace molhd
