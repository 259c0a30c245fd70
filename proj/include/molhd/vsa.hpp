#pragma once

#include <cstdint>
#include <vector>

#include "molhd/rng.hpp"

namespace molhd {

// Multiply-Add-Permute hypervector. Freshly sampled vectors hold only
// -1/+1; bundles hold small integers. All MAP operations are exact integer
// arithmetic.
struct MapHypervector {
  std::vector<std::int32_t> values;

  std::size_t dim() const { return values.size(); }
  bool operator==(const MapHypervector&) const = default;
};

// Real vector whose DFT coefficients all have magnitude 1. DC and Nyquist
// are fixed to +1 at construction so fractional powers stay real-valued.
// Closed (within roundoff) under circ_conv, frac_power and invert.
struct UnitaryHypervector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

// Graph-level encoding produced by the encoders: half-integer valued for
// the MAP pipeline, a superposition of unitary vectors for the SSP one.
struct GraphHypervector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

// --- MAP algebra ------------------------------------------------------

// Each component is -1 or +1 with probability 1/2. Throws on dim < 2.
MapHypervector sample_map(Rng& rng, std::size_t dim);

// Component-wise product. Commutative, associative, self-inverse.
MapHypervector bind_map(const MapHypervector& a, const MapHypervector& b);

// Component-wise integer sum. No thresholding; callers apply any scale.
MapHypervector bundle(const std::vector<MapHypervector>& vs);

// Cyclic right shift by k (mod dim): out[i] = in[(i - k) mod dim].
// Negative k shifts left; permute(permute(a, k), -k) == a.
MapHypervector permute(const MapHypervector& a, std::int64_t k);

// --- Unitary / circular-convolution algebra ---------------------------

// Built in the frequency domain: independent uniform phases on the
// dim/2 - 1 free coefficients, conjugate symmetry, DC and Nyquist set to
// +1, then inverse DFT. Throws unless dim is even and >= 4.
UnitaryHypervector sample_unitary(Rng& rng, std::size_t dim);

// Convolution identity: [1, 0, 0, ...].
UnitaryHypervector unit_impulse(std::size_t dim);

// True when every DFT coefficient magnitude is within tol of 1.
bool is_unitary(const UnitaryHypervector& a, double tol = 1e-6);

// Circular convolution out[n] = sum_k a[k] * b[(n-k) mod dim], computed
// through the DFT. Accepts arbitrary real vectors of equal dimension.
UnitaryHypervector circ_conv(const UnitaryHypervector& a, const UnitaryHypervector& b);
GraphHypervector circ_conv(const GraphHypervector& a, const UnitaryHypervector& b);

// Fractional power: every spectral phase is multiplied by e (principal
// branch). Throws if the input spectrum deviates from unit magnitude by
// more than 1e-6.
UnitaryHypervector frac_power(const UnitaryHypervector& a, double exponent);

// Spectral conjugate, realized as index reversal in the time domain.
// circ_conv(a, invert(a)) is the unit impulse for unitary a. Throws on
// non-unitary input.
UnitaryHypervector invert(const UnitaryHypervector& a);

// --- Similarity -------------------------------------------------------

// Cosine similarity in [-1, 1]. Throws on zero-norm input.
double similarity(const MapHypervector& a, const MapHypervector& b);
double similarity(const UnitaryHypervector& a, const UnitaryHypervector& b);
double similarity(const GraphHypervector& a, const GraphHypervector& b);

}  // namespace molhd
