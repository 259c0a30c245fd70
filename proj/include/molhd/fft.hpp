#pragma once

#include <complex>
#include <vector>

namespace molhd::fft {

// In-place complex DFT for any length >= 1. Mixed-radix Cooley-Tukey with
// a direct O(p^2) kernel for prime factors; twiddle tables are cached per
// length. Forward convention: X[k] = sum_n x[n] exp(-2*pi*i*k*n/N).
// Inverse applies the conjugate transform and scales by 1/N.
void transform(std::vector<std::complex<double>>& data, bool inverse);

// Full-length, conjugate-symmetric spectrum of a real vector.
std::vector<std::complex<double>> forward_real(const std::vector<double>& x);

// Inverse transform of a conjugate-symmetric spectrum; returns the real
// parts, discarding the (roundoff-level) imaginary residue.
std::vector<double> inverse_real(const std::vector<std::complex<double>>& spectrum);

}  // namespace molhd::fft
