// Reference computations for the tests. Nothing here calls into the library's
// transform or norm code: transforms are naive O(N^2) sums and norms are the
// classical closed forms.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline double wavenumber(std::size_t k, std::size_t N) {
  return k < N / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(N);
}

/// (2 pi)^{-1/2} h sum_j f(x_j) e^{-i xi_k x_j}, x_j = -L + j h, 1D.
inline std::vector<cd> naive_fourier(const std::vector<cd>& f, double L) {
  const std::size_t N = f.size();
  const double h = 2.0 * L / N;
  std::vector<cd> out(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double xi = std::numbers::pi * wavenumber(k, N) / L;
    cd acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) acc += f[j] * std::polar(1.0, -xi * (-L + j * h));
    out[k] = acc * h / std::sqrt(2.0 * std::numbers::pi);
  }
  return out;
}

/// Inverse of naive_fourier, 1D.
inline std::vector<cd> naive_inverse(const std::vector<cd>& fhat, double L) {
  const std::size_t N = fhat.size();
  const double h = 2.0 * L / N;
  std::vector<cd> out(N);
  for (std::size_t j = 0; j < N; ++j) {
    cd acc = 0.0;
    for (std::size_t k = 0; k < N; ++k)
      acc += fhat[k] * std::polar(1.0, std::numbers::pi * wavenumber(k, N) / L * (-L + j * h));
    out[j] = acc * std::sqrt(2.0 * std::numbers::pi) / (2.0 * L);
  }
  return out;
}

/// F^{-1}[m(|xi|) fhat] by naive sums.
inline std::vector<cd> naive_multiplier(const std::vector<cd>& fhat, double L,
                                        const std::function<double(double)>& m) {
  std::vector<cd> g(fhat.size());
  for (std::size_t k = 0; k < fhat.size(); ++k)
    g[k] = fhat[k] * m(std::numbers::pi * std::abs(wavenumber(k, fhat.size())) / L);
  return naive_inverse(g, L);
}

/// (h sum |g|^p)^{1/p}.
inline double lp(const std::vector<cd>& g, double h, double p) {
  double s = 0.0;
  for (auto v : g) s += std::pow(std::abs(v), p);
  return std::pow(h * s, 1.0 / p);
}

/// ||(c_v g_v)||_{l^p(L^p)} = (sum_v c_v^p ||g_v||_p^p)^{1/p}.
inline double lp_lp(const std::vector<std::vector<cd>>& blocks, const std::vector<double>& c, double h,
                    double p) {
  double s = 0.0;
  for (std::size_t v = 0; v < blocks.size(); ++v) s += std::pow(c[v] * lp(blocks[v], h, p), p);
  return std::pow(s, 1.0 / p);
}

/// Luxemburg norm of a constant c on [-L, 0) with p = p1 and [0, L) with p = p2:
/// the root of L (c/l)^p1 + L (c/l)^p2 = 1, found by bisection on l.
inline double piecewise_constant_norm(double c, double L, double p1, double p2) {
  auto rho = [&](double l) { return L * std::pow(c / l, p1) + L * std::pow(c / l, p2); };
  double lo = 1e-12, hi = 1e12;
  for (int i = 0; i < 400; ++i) {
    const double mid = std::sqrt(lo * hi);
    (rho(mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

/// Hardy ratio for eps_t = t^sigma with the lower limit truncated at tm:
/// (int eta dt/t + int delta dt/t) / int eps dt/t over [tm, 1], in closed form.
inline double hardy_power(double s, double sigma, double tm) {
  const double eps = (1.0 - std::pow(tm, sigma)) / sigma;
  const double eta = ((1.0 - std::pow(tm, sigma)) / sigma - (1.0 - std::pow(tm, s)) / s) / (s - sigma);
  // delta_t = t^{-s} int_tm^t tau^{s+sigma} dtau/tau
  //         = (t^sigma - tm^{s+sigma} t^{-s}) / (s + sigma)
  const double delta =
      ((1.0 - std::pow(tm, sigma)) / sigma - std::pow(tm, s + sigma) * (std::pow(tm, -s) - 1.0) / s) /
      (s + sigma);
  return (eta + delta) / eps;
}

}  // namespace oracle
