#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "molhd/spike.hpp"

namespace molhd {

struct LifParams {
  double tau_m = 20.0;       // membrane time constant, ms
  double v_thresh = 1.0;
  double v_reset = 0.0;
  double refractory = 2.0;   // ms
  double dt = 1.0;           // ms
};

struct ReservoirConfig {
  std::size_t size = 400;
  double exc_fraction = 0.8;     // excitatory:inhibitory = 4:1
  double conn_scale = 0.3;       // C in p = C * exp(-d^2 / lambda^2)
  double conn_lambda = 2.0;      // lambda, lattice units
  double weight_std = 1.0;
  LifParams lif;
  std::size_t frame_dwell = 5;   // timesteps each frame drives the input
  std::size_t settle = 20;       // trailing zero-input timesteps
  std::uint64_t seed = 0;
};

struct Synapse {
  std::uint32_t target = 0;
  double weight = 0.0;
};

// Random spiking recurrent network. Neurons sit on the smallest integer
// cubic lattice with at least `size` sites (excess sites unused); the
// first ceil(exc_fraction * size) neurons are excitatory, the rest
// inhibitory. A directed synapse i->j (i != j) exists with probability
// C * exp(-d(i,j)^2 / lambda^2) over lattice distance; its magnitude is
// |N(0, weight_std)| with the sign of the source population. Each of the
// 165 input slots projects to a random 10% of neurons with |N(0,1)|
// weights. Draw order (fixed for reproducibility): recurrent pairs row by
// row, then input slots in index order.
struct Reservoir {
  ReservoirConfig cfg;
  std::size_t exc_count = 0;
  std::vector<std::array<int, 3>> positions;       // lattice coordinates
  std::vector<std::vector<Synapse>> outgoing;      // per source neuron
  std::vector<std::vector<Synapse>> input;         // per spike-frame slot (165)
};

// Per-neuron spike count divided by total simulated timesteps; all
// entries in [0, 1].
struct ReservoirState {
  std::vector<double> rates;
};

Reservoir build_reservoir(const ReservoirConfig& cfg);

// Drives the network with each frame for frame_dwell steps (canonical
// frame order), then settle steps of zero input. Per step, with I(t) the
// input-slot current plus recurrent current from spikes of the previous
// step:
//   v <- v * (1 - dt / tau_m) + dt * I(t)
// A neuron spikes when v >= v_thresh, resets to v_reset and holds there
// for round(refractory / dt) further steps. Throws on an empty frame
// list.
ReservoirState run(const Reservoir& res, const std::vector<SpikeFrame>& frames);

}  // namespace molhd
