#include "molhd/reservoir.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "molhd/rng.hpp"

namespace molhd {

namespace {

std::size_t lattice_side(std::size_t size) {
  std::size_t side = 1;
  while (side * side * side < size) ++side;
  return side;
}

void check_config(const ReservoirConfig& cfg) {
  if (cfg.size < 10) throw std::invalid_argument("build_reservoir: size must be >= 10");
  if (!(cfg.exc_fraction > 0.0 && cfg.exc_fraction < 1.0)) {
    throw std::invalid_argument("build_reservoir: exc_fraction must be in (0, 1)");
  }
  if (cfg.lif.tau_m <= 0.0 || cfg.lif.dt <= 0.0 || cfg.lif.refractory <= 0.0) {
    throw std::invalid_argument("build_reservoir: time constants must be > 0");
  }
  if (cfg.lif.dt > cfg.lif.refractory) {
    throw std::invalid_argument("build_reservoir: dt must not exceed the refractory period");
  }
  if (cfg.conn_lambda <= 0.0) throw std::invalid_argument("build_reservoir: conn_lambda must be > 0");
}

}  // namespace

Reservoir build_reservoir(const ReservoirConfig& cfg) {
  check_config(cfg);
  Reservoir res;
  res.cfg = cfg;
  const std::size_t n = cfg.size;
  // ceil(exc_fraction * n); the epsilon keeps exact products such as
  // 0.8 * 400 from rounding up one count.
  res.exc_count = static_cast<std::size_t>(
      std::ceil(cfg.exc_fraction * static_cast<double>(n) - 1e-9));

  const std::size_t side = lattice_side(n);
  res.positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    res.positions[i] = {static_cast<int>(i % side), static_cast<int>((i / side) % side),
                        static_cast<int>(i / (side * side))};
  }

  // Connection probability by squared lattice distance, tabulated once.
  const int max_span = static_cast<int>(side) - 1;
  const std::size_t max_d2 = static_cast<std::size_t>(3 * max_span * max_span);
  std::vector<double> prob(max_d2 + 1);
  for (std::size_t d2 = 0; d2 <= max_d2; ++d2) {
    double p = cfg.conn_scale * std::exp(-static_cast<double>(d2) / (cfg.conn_lambda * cfg.conn_lambda));
    prob[d2] = p > 1.0 ? 1.0 : p;
  }

  Rng rng(cfg.seed);
  res.outgoing.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pi = res.positions[i];
    const double sign = i < res.exc_count ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& pj = res.positions[j];
      const int dx = pi[0] - pj[0];
      const int dy = pi[1] - pj[1];
      const int dz = pi[2] - pj[2];
      const std::size_t d2 = static_cast<std::size_t>(dx * dx + dy * dy + dz * dz);
      if (rng.uniform() < prob[d2]) {
        const double w = std::abs(rng.normal()) * cfg.weight_std;
        res.outgoing[i].push_back(Synapse{static_cast<std::uint32_t>(j), sign * w});
      }
    }
  }

  // Input fan-out: each slot reaches a random 10% of neurons (partial
  // Fisher-Yates, without replacement).
  const std::size_t fan_out = std::max<std::size_t>(1, static_cast<std::size_t>(
      std::llround(0.1 * static_cast<double>(n))));
  res.input.assign(kFrameLength, {});
  std::vector<std::uint32_t> pool(n);
  for (std::size_t slot = 0; slot < kFrameLength; ++slot) {
    std::iota(pool.begin(), pool.end(), 0u);
    auto& targets = res.input[slot];
    targets.reserve(fan_out);
    for (std::size_t t = 0; t < fan_out; ++t) {
      const std::size_t pick = t + rng.uniform_int(n - t);
      std::swap(pool[t], pool[pick]);
      targets.push_back(Synapse{pool[t], std::abs(rng.normal())});
    }
  }
  return res;
}

ReservoirState run(const Reservoir& res, const std::vector<SpikeFrame>& frames) {
  if (frames.empty()) throw std::invalid_argument("run: empty frame list");
  const std::size_t n = res.cfg.size;
  const LifParams& lif = res.cfg.lif;
  const double decay = 1.0 - lif.dt / lif.tau_m;
  const long long refractory_steps = std::llround(lif.refractory / lif.dt);
  const std::size_t total_steps = frames.size() * res.cfg.frame_dwell + res.cfg.settle;

  std::vector<double> v(n, 0.0);
  std::vector<long long> refractory(n, 0);
  std::vector<std::size_t> spike_count(n, 0);
  std::vector<double> input_drive(n, 0.0);
  std::vector<double> recurrent(n, 0.0);
  std::vector<std::uint32_t> spiked;
  spiked.reserve(n);

  std::size_t frame_index = 0;
  std::size_t steps_into_frame = 0;
  // Current drive for the first frame.
  auto load_frame = [&](const SpikeFrame& f) {
    std::fill(input_drive.begin(), input_drive.end(), 0.0);
    for (std::size_t slot = 0; slot < kFrameLength; ++slot) {
      if (!f.bits.test(slot)) continue;
      for (const Synapse& s : res.input[slot]) input_drive[s.target] += s.weight;
    }
  };
  load_frame(frames[0]);

  for (std::size_t step = 0; step < total_steps; ++step) {
    const bool in_input_phase = frame_index < frames.size();
    // Recurrent current from last step's spikes.
    std::fill(recurrent.begin(), recurrent.end(), 0.0);
    for (std::uint32_t s : spiked) {
      for (const Synapse& syn : res.outgoing[s]) recurrent[syn.target] += syn.weight;
    }
    spiked.clear();

    for (std::size_t i = 0; i < n; ++i) {
      if (refractory[i] > 0) {
        --refractory[i];
        v[i] = lif.v_reset;
        continue;
      }
      const double current = recurrent[i] + (in_input_phase ? input_drive[i] : 0.0);
      v[i] = v[i] * decay + lif.dt * current;
      if (v[i] >= lif.v_thresh) {
        ++spike_count[i];
        v[i] = lif.v_reset;
        refractory[i] = refractory_steps;
        spiked.push_back(static_cast<std::uint32_t>(i));
      }
    }

    if (in_input_phase && ++steps_into_frame == res.cfg.frame_dwell) {
      steps_into_frame = 0;
      ++frame_index;
      if (frame_index < frames.size()) load_frame(frames[frame_index]);
    }
  }

  ReservoirState state;
  state.rates.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    state.rates[i] = static_cast<double>(spike_count[i]) / static_cast<double>(total_steps);
  }
  return state;
}

}  // namespace molhd
