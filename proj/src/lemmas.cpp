#include "varbesov/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "varbesov/error.hpp"
#include "varbesov/modular_norms.hpp"

namespace varbesov {

namespace {

std::vector<double> real_parts(const GridFunction& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

std::vector<double> powered(std::vector<double> v, double r) {
  for (auto& x : v) x = std::pow(x, r);
  return v;
}

GridFunction filtered(const GridFunction& fhat, const std::function<double(double)>& m) {
  return apply_radial(fhat, m, 1.0);
}

// Trapezoid weights for int dtau/tau over the grid points with tau in [lo, hi].
std::vector<double> window_weights(const ScaleGrid& s, double lo, double hi) {
  std::vector<double> w(s.size(), 0.0);
  const double step = std::numbers::ln2 / s.per_octave();
  std::size_t first = s.size(), last = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double t = s.scale(j);
    if (t >= lo * (1.0 - 1e-12) && t <= hi * (1.0 + 1e-12)) {
      w[j] = step;
      first = std::min(first, j);
      last = std::max(last, j);
    }
  }
  if (first <= last) {
    w[first] *= 0.5;
    w[last] *= 0.5;
  }
  return w;
}

double clog_reciprocal(const ExponentField& q) {
  return estimate_clog(q.map([](double v) { return 1.0 / v; }, ExponentRole::integrability));
}

void require_eta_hypothesis(const ExponentField& q, double m) {
  const double need = q.spec().dim + clog_reciprocal(q);
  if (!(m > need))
    throw HypothesisError("eta convolution bounds need m > n + clog(1/q) = " + std::to_string(need));
}

LemmaConstant ratio_of(double num, double den) {
  LemmaConstant c;
  if (den == 0.0) {
    c.vacuous = true;
    return c;
  }
  c.value = num / den;
  return c;
}

double max_ratio(std::span<const double> num, std::span<const double> den) {
  double best = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (num[i] == 0.0) continue;
    best = std::max(best, den[i] > 0.0 ? num[i] / den[i] : std::numeric_limits<double>::infinity());
  }
  return best;
}

}  // namespace

std::vector<double> eta_convolve(const GridSpec& spec, std::span<const double> g, double t, double m) {
  if (g.size() != spec.size()) throw std::invalid_argument("size mismatch");
  std::vector<Complex> values(g.begin(), g.end());
  const GridFunction out = convolve_kernel(GridFunction(spec, std::move(values)), eta_hat(t, m, spec));
  std::vector<double> r = real_parts(out);
  for (auto& v : r) v = std::max(v, 0.0);
  return r;
}

LemmaConstant check_transfer(const ExponentField& alpha, double t, double m, double R) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("scale must lie in (0, 1]");
  if (!(m > 0.0)) throw std::invalid_argument("m must be positive");
  if (R < 0.0) throw std::invalid_argument("R must be nonnegative");
  const GridSpec& spec = alpha.spec();
  LemmaConstant c;
  c.hypothesis_met = R >= estimate_clog(alpha);
  const double lt = std::log(t);
  auto term = [&](std::size_t x, std::size_t y) {
    const double d = spec.periodic_distance(x, y);
    return (alpha[y] - alpha[x]) * lt - R * std::log1p(d / t);
  };
  double best = 0.0;  // log of the ratio; x = y gives 0
  const std::size_t size = alpha.size();
  if (size <= 8192) {
    for (std::size_t x = 0; x < size; ++x)
      for (std::size_t y = 0; y < size; ++y) best = std::max(best, term(x, y));
  } else {
    std::mt19937_64 rng(0x7a11);
    std::uniform_int_distribution<std::size_t> pick(0, size - 1);
    for (int k = 0; k < 1000000; ++k) best = std::max(best, term(pick(rng), pick(rng)));
  }
  c.value = std::exp(best);
  return c;
}

DzwResult check_dzw(const GridFunction& f, const ExponentField& p, const ExponentField& q) {
  DzwResult res;
  const auto mag = f.magnitudes();
  std::vector<double> logs(mag.size());
  std::vector<double> r(mag.size());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    logs[i] = mag[i] > 0.0 ? q[i] * std::log(mag[i]) : -std::numeric_limits<double>::infinity();
    r[i] = p[i] / q[i];
  }
  const double lr = log_luxemburg(logs, r, std::log(p.spec().cell_volume()));
  res.rhs = std::isinf(lr) ? 0.0 : std::exp(lr);
  res.lhs = std::pow(luxemburg_norm(mag, p), q.range_min());
  res.hypothesis_met = res.rhs >= 1.0;
  res.passed = !res.hypothesis_met || res.lhs <= res.rhs * (1.0 + 1e-8);
  return res;
}

LemmaConstant check_hardy(std::span<const double> eps, double s, const ScaleGrid& grid) {
  if (!(s > 0.0)) throw std::invalid_argument("Hardy exponent s must be positive");
  if (eps.size() != grid.size()) throw std::invalid_argument("one value per scale required");
  for (double e : eps)
    if (e < 0.0) throw std::invalid_argument("eps must be nonnegative");
  const std::size_t n = grid.size();
  const double step = std::numbers::ln2 / grid.per_octave();
  // Cumulative trapezoid sums from t = 1 downwards.
  std::vector<double> eta(n, 0.0), delta(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = grid.scale(j);
    double upper = 0.0;  // int_t^1
    for (std::size_t i = 0; i <= j; ++i) {
      const double w = (i == 0 || i == j) ? 0.5 * step : step;
      upper += w * std::pow(grid.scale(i), -s) * eps[i];
    }
    eta[j] = j == 0 ? 0.0 : std::pow(t, s) * upper;
    double lower = 0.0;  // int_{t_min}^t
    for (std::size_t i = j; i < n; ++i) {
      const double w = (i == j || i == n - 1) ? 0.5 * step : step;
      lower += w * std::pow(grid.scale(i), s) * eps[i];
    }
    delta[j] = j == n - 1 ? 0.0 : std::pow(t, -s) * lower;
  }
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    num += grid.weight(j) * (eta[j] + delta[j]);
    den += grid.weight(j) * eps[j];
  }
  return ratio_of(num, den);
}

LemmaConstant check_rtrick(const GridFunction& g, double N_dil, double r, double m) {
  if (!(N_dil > 0.0) || !(r > 0.0)) throw std::invalid_argument("N and r must be positive");
  const GridSpec& spec = g.spec();
  if (!(m > spec.dim)) throw HypothesisError("r-trick needs m > n");
  if (g.is_zero()) return {0.0, true, true};
  const DyadicFamily unit = build_dyadic(spec, 0);
  auto omega = [&](double rad) { return unit.psi_hat(0, 1.5 * rad / N_dil); };
  auto theta = [&](double rad) {
    const double x = rad / N_dil;
    return std::exp(-x * x);
  };
  const GridFunction ghat = fourier(g);
  const auto inner = filtered(ghat, omega).magnitudes();
  const auto lhs = filtered(ghat, [&](double rad) { return theta(rad) * omega(rad); }).magnitudes();
  auto rhs = eta_convolve(spec, powered(inner, r), 1.0 / N_dil, m);
  for (auto& v : rhs) v = std::pow(v, 1.0 / r);
  LemmaConstant c;
  c.value = max_ratio(lhs, rhs);
  return c;
}

namespace {

LemmaConstant eta_family_ratio(std::span<const GridFunction> fam, std::span<const double> scales,
                               std::span<const double> weights, const ExponentField& p,
                               const ExponentField& q, double m) {
  require_eta_hypothesis(q, m);
  std::vector<std::vector<double>> before, after;
  for (std::size_t j = 0; j < fam.size(); ++j) {
    before.push_back(fam[j].magnitudes());
    after.push_back(eta_convolve(fam[j].spec(), before.back(), scales[j], m));
  }
  return ratio_of(mixed_norm(after, weights, p, q), mixed_norm(before, weights, p, q));
}

}  // namespace

LemmaConstant check_eta_conv_discrete(std::span<const GridFunction> fv, const ExponentField& p,
                                      const ExponentField& q, double m) {
  std::vector<double> scales(fv.size()), weights(fv.size(), 1.0);
  for (std::size_t v = 0; v < fv.size(); ++v) scales[v] = std::ldexp(1.0, -static_cast<int>(v));
  return eta_family_ratio(fv, scales, weights, p, q, m);
}

LemmaConstant check_eta_conv_continuous(std::span<const GridFunction> ft, const ExponentField& p,
                                        const ExponentField& q, double m, const ScaleGrid& s) {
  if (ft.size() != s.size()) throw std::invalid_argument("one family member per scale required");
  return eta_family_ratio(ft, s.scales(), s.weights(), p, q, m);
}

std::vector<std::vector<double>> averaged_family(std::span<const GridFunction> ft, double m,
                                                 const ScaleGrid& s, double a, double b) {
  if (!(a > 0.0 && a < b)) throw std::invalid_argument("need 0 < a < b");
  if (ft.size() != s.size()) throw std::invalid_argument("one family member per scale required");
  const GridSpec& spec = ft.front().spec();
  std::vector<std::vector<double>> conv(ft.size());
  for (std::size_t i = 0; i < ft.size(); ++i) {
    if (ft[i].is_zero()) {
      conv[i].assign(spec.size(), 0.0);
      continue;
    }
    conv[i] = eta_convolve(spec, ft[i].magnitudes(), s.scale(i), m);
  }
  std::vector<std::vector<double>> out(ft.size(), std::vector<double>(spec.size(), 0.0));
  for (std::size_t j = 0; j < ft.size(); ++j) {
    const auto w = window_weights(s, a * s.scale(j), b * s.scale(j));
    for (std::size_t i = 0; i < ft.size(); ++i) {
      if (w[i] == 0.0) continue;
      for (std::size_t x = 0; x < spec.size(); ++x) out[j][x] += w[i] * conv[i][x];
    }
  }
  return out;
}

LemmaConstant check_averaged(std::span<const GridFunction> ft, const ExponentField& p,
                             const ExponentField& q, double m, const ScaleGrid& s, double a,
                             double b) {
  require_eta_hypothesis(q, m);
  auto g = averaged_family(ft, m, s, a, b);
  std::vector<std::vector<double>> f;
  for (const auto& x : ft) f.push_back(x.magnitudes());
  return ratio_of(mixed_norm(g, s.weights(), p, q), mixed_norm(f, s.weights(), p, q));
}

ReproducingConstants check_reproducing_bounds(const GridFunction& f, const KernelPair& pair, double r,
                                              double m) {
  const GridSpec& spec = f.spec();
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  if (!(m > std::max<double>(spec.dim, spec.dim / r)))
    throw HypothesisError("reproducing bounds need m > max(n, n/r)");
  ReproducingConstants out;
  if (f.is_zero()) {
    out.low.vacuous = out.band.vacuous = true;
    return out;
  }
  const ScaleGrid& s = pair.scales;
  const DyadicFamily unit = build_dyadic(spec, 1);
  const GridFunction fhat = fourier(f);
  const double mr = m * r;
  const auto low = powered(filtered(fhat, pair.phi0_hat).magnitudes(), r);
  const auto low_eta = eta_convolve(spec, low, 1.0, mr);
  std::vector<std::vector<double>> band(s.size());
  for (std::size_t j = 0; j < s.size(); ++j)
    band[j] = powered(apply_radial(fhat, pair.phi_hat, s.scale(j)).magnitudes(), r);

  // (i)
  {
    auto lhs = powered(
        filtered(fhat, [&](double rad) { return unit.psi_hat(0, 0.75 * rad); }).magnitudes(), r);
    const auto w = window_weights(s, 0.25, 1.0);
    std::vector<double> inner(spec.size(), 0.0);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (w[j] > 0.0)
        for (std::size_t x = 0; x < inner.size(); ++x) inner[x] += w[j] * band[j][x];
    auto rhs = eta_convolve(spec, inner, 1.0, mr);
    for (std::size_t x = 0; x < rhs.size(); ++x) rhs[x] += low_eta[x];
    out.low.value = max_ratio(lhs, rhs);
  }
  // (ii)
  {
    auto omega = [&](double rad) { return unit.psi_hat(1, 2.0 * rad); };
    std::vector<std::vector<double>> band_eta(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) band_eta[j] = eta_convolve(spec, band[j], s.scale(j), mr);
    double best = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double t = s.scale(k);
      auto lhs = powered(apply_radial(fhat, omega, t).magnitudes(), r);
      const auto w = window_weights(s, t / 4.0, std::min(1.0, 4.0 * t));
      std::vector<double> rhs = low_eta;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (w[j] > 0.0)
          for (std::size_t x = 0; x < rhs.size(); ++x) rhs[x] += w[j] * band_eta[j][x];
      best = std::max(best, max_ratio(lhs, rhs));
    }
    out.band.value = best;
  }
  return out;
}

RadialProfile moment_kernel(int M) {
  if (M < -1) throw std::invalid_argument("moment order must be >= -1");
  return [M](double r) { return std::pow(r, M + 1) * std::exp(-0.5 * r * r); };
}

RychkovFit check_rychkov_decay(const RadialProfile& mu_hat, const GridFunction& rho, int M,
                               double N_w, const ScaleGrid& s) {
  if (M < -1) throw std::invalid_argument("moment order must be >= -1");
  if (!(N_w > 0.0)) throw std::invalid_argument("decay weight exponent must be positive");
  RychkovFit fit;
  if (rho.is_zero()) {
    fit.vacuous = true;
    return fit;
  }
  const GridSpec& spec = rho.spec();
  const GridFunction rhat = fourier(rho);
  std::vector<double> weight(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i)
    weight[i] = std::pow(1.0 + spec.periodic_norm(spec.coordinate(i)), N_w);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double t : s.scales()) {
    const auto mag = apply_radial(rhat, mu_hat, t).magnitudes();
    double d = 0.0;
    for (std::size_t i = 0; i < mag.size(); ++i) d = std::max(d, mag[i] * weight[i]);
    fit.scales.push_back(t);
    fit.decay.push_back(d);
    if (d > 0.0) {
      const double x = std::log(t), y = std::log(d);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++n;
    }
  }
  if (n < 2) {
    fit.vacuous = true;
    return fit;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

bool is_stable(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return true;
  return std::abs(a - b) / scale < tol;
}

}  // namespace varbesov
