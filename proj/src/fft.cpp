#include "molhd/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <span>

namespace molhd::fft {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using cd = std::complex<double>;

std::size_t smallest_factor(std::size_t n) {
  if (n % 2 == 0) return 2;
  for (std::size_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return f;
  }
  return n;
}

// Twiddle tables are built once per length and shared. std::map nodes are
// stable, so returned references survive later insertions.
const std::vector<cd>& twiddle_table(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<cd>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<cd> table(n);
    for (std::size_t j = 0; j < n; ++j) {
      table[j] = std::polar(1.0, -kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    }
    it = cache.emplace(n, std::move(table)).first;
  }
  return it->second;
}

// Computes the DFT of `a` in place. `scratch` has the same size and is
// clobbered. tw is the table for the top-level length; a sub-transform of
// length n indexes it with stride tw.size()/n.
void dft_rec(std::span<cd> a, std::span<cd> scratch, const std::vector<cd>& tw, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  const std::size_t scale = tw.size() / n;
  const std::size_t p = smallest_factor(n);

  if (p == n) {
    // Prime length: direct evaluation.
    for (std::size_t k = 0; k < n; ++k) {
      cd acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        cd w = tw[((j * k) % n) * scale];
        if (inverse) w = std::conj(w);
        acc += a[j] * w;
      }
      scratch[k] = acc;
    }
    std::copy(scratch.begin(), scratch.end(), a.begin());
    return;
  }

  const std::size_t m = n / p;
  // Decimate in time: residue class r goes to scratch[r*m .. r*m+m).
  for (std::size_t r = 0; r < p; ++r) {
    for (std::size_t t = 0; t < m; ++t) {
      scratch[r * m + t] = a[t * p + r];
    }
  }
  // Each child transform uses the region of `a` it will no longer need as
  // its own scratch; `a` is fully rewritten by the recombine below.
  for (std::size_t r = 0; r < p; ++r) {
    dft_rec(scratch.subspan(r * m, m), a.subspan(r * m, m), tw, inverse);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t q = k % m;
    cd acc = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
      cd w = tw[((r * k) % n) * scale];
      if (inverse) w = std::conj(w);
      acc += scratch[r * m + q] * w;
    }
    a[k] = acc;
  }
}

}  // namespace

void transform(std::vector<cd>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  const std::vector<cd>& tw = twiddle_table(n);
  std::vector<cd> scratch(n);
  dft_rec(std::span<cd>(data), std::span<cd>(scratch), tw, inverse);
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (cd& x : data) x *= inv_n;
  }
}

std::vector<cd> forward_real(const std::vector<double>& x) {
  std::vector<cd> data(x.begin(), x.end());
  transform(data, false);
  return data;
}

std::vector<double> inverse_real(const std::vector<cd>& spectrum) {
  std::vector<cd> data = spectrum;
  transform(data, true);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return out;
}

}  // namespace molhd::fft
