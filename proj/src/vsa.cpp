#include "molhd/vsa.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "molhd/fft.hpp"

namespace molhd {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

double cosine(const double* a, const double* b, std::size_t n) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("similarity: zero-norm input");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

MapHypervector sample_map(Rng& rng, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("sample_map: dimension must be >= 2");
  MapHypervector v;
  v.values.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) v.values[i] = rng.sign();
  return v;
}

MapHypervector bind_map(const MapHypervector& a, const MapHypervector& b) {
  require_same_dim(a.dim(), b.dim(), "bind_map");
  MapHypervector out;
  out.values.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.values[i] = a.values[i] * b.values[i];
  return out;
}

MapHypervector bundle(const std::vector<MapHypervector>& vs) {
  if (vs.empty()) throw std::invalid_argument("bundle: empty list");
  const std::size_t dim = vs.front().dim();
  MapHypervector out;
  out.values.assign(dim, 0);
  for (const MapHypervector& v : vs) {
    require_same_dim(dim, v.dim(), "bundle");
    for (std::size_t i = 0; i < dim; ++i) out.values[i] += v.values[i];
  }
  return out;
}

MapHypervector permute(const MapHypervector& a, std::int64_t k) {
  const std::int64_t n = static_cast<std::int64_t>(a.dim());
  MapHypervector out;
  out.values.resize(a.dim());
  if (n == 0) return out;
  const std::int64_t shift = ((k % n) + n) % n;
  for (std::int64_t i = 0; i < n; ++i) {
    out.values[i] = a.values[(i - shift + n) % n];
  }
  return out;
}

UnitaryHypervector sample_unitary(Rng& rng, std::size_t dim) {
  if (dim < 4 || dim % 2 != 0) {
    throw std::invalid_argument("sample_unitary: dimension must be even and >= 4");
  }
  std::vector<std::complex<double>> spectrum(dim);
  spectrum[0] = 1.0;
  spectrum[dim / 2] = 1.0;
  for (std::size_t k = 1; k < dim / 2; ++k) {
    const double phase = (2.0 * rng.uniform() - 1.0) * kPi;
    spectrum[k] = std::polar(1.0, phase);
    spectrum[dim - k] = std::conj(spectrum[k]);
  }
  return UnitaryHypervector{fft::inverse_real(spectrum)};
}

UnitaryHypervector unit_impulse(std::size_t dim) {
  UnitaryHypervector v;
  v.values.assign(dim, 0.0);
  if (dim > 0) v.values[0] = 1.0;
  return v;
}

bool is_unitary(const UnitaryHypervector& a, double tol) {
  if (a.dim() == 0) return false;
  const auto spectrum = fft::forward_real(a.values);
  for (const auto& c : spectrum) {
    if (std::abs(std::abs(c) - 1.0) > tol) return false;
  }
  return true;
}

UnitaryHypervector circ_conv(const UnitaryHypervector& a, const UnitaryHypervector& b) {
  require_same_dim(a.dim(), b.dim(), "circ_conv");
  auto fa = fft::forward_real(a.values);
  const auto fb = fft::forward_real(b.values);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  return UnitaryHypervector{fft::inverse_real(fa)};
}

GraphHypervector circ_conv(const GraphHypervector& a, const UnitaryHypervector& b) {
  require_same_dim(a.dim(), b.dim(), "circ_conv");
  auto fa = fft::forward_real(a.values);
  const auto fb = fft::forward_real(b.values);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  return GraphHypervector{fft::inverse_real(fa)};
}

UnitaryHypervector frac_power(const UnitaryHypervector& a, double exponent) {
  const std::size_t n = a.dim();
  if (n == 0) throw std::invalid_argument("frac_power: empty vector");
  const auto spectrum = fft::forward_real(a.values);
  for (const auto& c : spectrum) {
    if (std::abs(std::abs(c) - 1.0) > 1e-6) {
      throw std::invalid_argument("frac_power: input is not unitary");
    }
  }
  // Scale phases on the lower half and mirror; magnitudes are reset to
  // exactly 1, which also cleans accumulated roundoff.
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const std::complex<double> w = std::polar(1.0, exponent * std::arg(spectrum[k]));
    out[k] = w;
    if (k > 0 && k < n - k) out[n - k] = std::conj(w);
  }
  return UnitaryHypervector{fft::inverse_real(out)};
}

UnitaryHypervector invert(const UnitaryHypervector& a) {
  if (!is_unitary(a)) throw std::invalid_argument("invert: input is not unitary");
  const std::size_t n = a.dim();
  UnitaryHypervector out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a.values[(n - i) % n];
  return out;
}

double similarity(const MapHypervector& a, const MapHypervector& b) {
  require_same_dim(a.dim(), b.dim(), "similarity");
  std::int64_t dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += static_cast<std::int64_t>(a.values[i]) * b.values[i];
    na += static_cast<std::int64_t>(a.values[i]) * a.values[i];
    nb += static_cast<std::int64_t>(b.values[i]) * b.values[i];
  }
  if (na == 0 || nb == 0) throw std::invalid_argument("similarity: zero-norm input");
  return static_cast<double>(dot) /
         (std::sqrt(static_cast<double>(na)) * std::sqrt(static_cast<double>(nb)));
}

double similarity(const UnitaryHypervector& a, const UnitaryHypervector& b) {
  require_same_dim(a.dim(), b.dim(), "similarity");
  return cosine(a.values.data(), b.values.data(), a.dim());
}

double similarity(const GraphHypervector& a, const GraphHypervector& b) {
  require_same_dim(a.dim(), b.dim(), "similarity");
  return cosine(a.values.data(), b.values.data(), a.dim());
}

}  // namespace molhd
