#include "varbesov/calderon.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "varbesov/error.hpp"

namespace varbesov {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double exp_inverse(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double exp_inverse_square(double x) { return x > 0.0 ? std::exp(-1.0 / (x * x)) : 0.0; }

template <double (*E)(double)>
double step_from(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = E(x), b = E(1.0 - x);
  return a / (a + b);
}

}  // namespace

double smooth_step(double x) { return step_from<exp_inverse>(x); }
double smooth_step_square(double x) { return step_from<exp_inverse_square>(x); }

RadialTable tabulate(const RadialProfile& m, double r_max, std::size_t points) {
  if (points < 2) throw std::invalid_argument("table needs at least two points");
  RadialTable out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = {r, m(r)};
  }
  return out;
}

double reproducing_residual(const KernelPair& pair, const GridSpec& spec, double radius) {
  double worst = 0.0;
  const auto scales = pair.scales.scales();
  const auto weights = pair.scales.weights();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double r = spec.frequency_radius(i);
    if (r > radius) continue;
    double sum = pair.phi0_hat(r);
    for (std::size_t j = 0; j < scales.size(); ++j) sum += weights[j] * pair.phi_hat(scales[j] * r);
    worst = std::max(worst, std::abs(1.0 - sum));
  }
  return worst;
}

KernelPair build_continuous_pair(const GridSpec& spec, const ScaleGrid& s, PairProfile profile) {
  s.require_resolvable(spec);
  const double k = s.per_octave();
  double (*step)(double) =
      profile == PairProfile::exp_inverse ? &smooth_step : &smooth_step_square;
  const double width = 2.0 - 1.0 / k;
  auto G = [step, width](double u) { return step((u + 1.0) / width); };
  auto phi = [G, k](double r) {
    if (r <= 0.5 || r >= 2.0) return 0.0;
    const double u = std::log2(r);
    return (k / kLn2) * (G(u) - G(u - 1.0 / k));
  };
  auto phi0 = [G, k](double r) {
    if (r <= 0.5) return 1.0;
    if (r >= 2.0) return 0.0;
    const double u = std::log2(r);
    return 1.0 - 0.5 * (G(u) + G(u - 1.0 / k));
  };
  KernelPair pair{profile == PairProfile::exp_inverse ? "telescoping-exp" : "telescoping-exp2",
                  phi0, phi, s};
  pair.residual = reproducing_residual(pair, spec, s.resolvable_radius());
  if (pair.residual > 1e-6)
    throw std::runtime_error("reproducing residual " + std::to_string(pair.residual) +
                             " exceeds 1e-6");
  return pair;
}

KernelPair build_factored_pair(const GridSpec& spec, const ScaleGrid& s) {
  s.require_resolvable(spec);
  auto mu = [](double r) { return r * r * std::exp(1.0 - r * r); };
  auto bump = [](double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; };
  const double c = kLn2 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                              [&](double u) { return mu(std::exp2(u)) * bump(u); }, -1.0, 1.0,
                              15, 1e-15);
  auto phi = [mu, bump, c](double r) {
    if (r <= 0.5 || r >= 2.0) return 0.0;
    return mu(r) * bump(std::log2(r)) / c;
  };
  const int k = s.per_octave();
  // Phi_hat(r) = (ln2/K) [phi(r)/2 + sum_{j>=1} phi(2^{j/K} r)]; Phi_hat(0) = 1 by continuity
  // of the underlying integral.
  auto phi0 = [phi, k](double r) {
    if (r >= 2.0) return 0.0;
    if (r <= 0.0) return 1.0;
    double sum = 0.5 * phi(r);
    const int first = std::max(1, static_cast<int>(std::floor(k * std::log2(0.5 / r))));
    const int last = static_cast<int>(std::ceil(k * std::log2(2.0 / r)));
    for (int j = first; j <= last; ++j) sum += phi(std::exp2(static_cast<double>(j) / k) * r);
    return kLn2 / k * sum;
  };
  KernelPair pair{"factored", phi0, phi, s};
  pair.residual = reproducing_residual(pair, spec, s.resolvable_radius());
  if (pair.residual > 1e-6)
    throw std::runtime_error("factored pair: reproducing residual " +
                             std::to_string(pair.residual) +
                             " exceeds 1e-6, increase scales per octave");
  return pair;
}

namespace {

double big_psi(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 1.5) return 0.0;
  return 1.0 - smooth_step((r - 1.0) / 0.5);
}

}  // namespace

double DyadicFamily::psi_hat(int v, double r) const {
  if (v < 0) throw std::invalid_argument("dyadic level must be nonnegative");
  if (v == 0) return big_psi(r);
  return big_psi(std::ldexp(r, -v)) - big_psi(std::ldexp(r, 1 - v));
}

RadialProfile DyadicFamily::profile(int v) const {
  DyadicFamily self = *this;
  return [self, v](double r) { return self.psi_hat(v, r); };
}

double DyadicFamily::resolvable_radius() const { return std::ldexp(1.0, v_max); }

int max_dyadic_level(const GridSpec& spec) {
  int v = 0;
  while (std::ldexp(1.0, v + 2) <= spec.nyquist_radius()) ++v;
  return v;
}

double dyadic_residual(const DyadicFamily& fam, const GridSpec& spec) {
  double worst = 0.0;
  const double radius = fam.resolvable_radius();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double r = spec.frequency_radius(i);
    if (r > radius) continue;
    double sum = 0.0;
    for (int v = 0; v <= fam.v_max; ++v) sum += fam.psi_hat(v, r);
    worst = std::max(worst, std::abs(1.0 - sum));
  }
  return worst;
}

DyadicFamily build_dyadic(const GridSpec& spec, int v_max) {
  if (v_max < 0) throw std::invalid_argument("v_max must be nonnegative");
  if (std::ldexp(1.0, v_max + 1) > spec.nyquist_radius())
    throw std::invalid_argument("v_max = " + std::to_string(v_max) +
                                " too large for grid (need 2^(v_max+1) <= pi N / 2L)");
  DyadicFamily fam;
  fam.v_max = v_max;
  fam.psi0_hat = big_psi;
  fam.residual = dyadic_residual(fam, spec);
  return fam;
}

void LocalMeansKernels::require_moments(double alpha_max) const {
  if (!(alpha_max < S + 1))
    throw HypothesisError("local means need alpha+ < S + 1 (alpha+ = " +
                          std::to_string(alpha_max) + ", S = " + std::to_string(S) + ")");
}

LocalMeansKernels build_local_means(int S, double epsilon, const GridSpec& spec) {
  if (S < -1) throw std::invalid_argument("moment order S must be >= -1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("Tauberian radius must be positive");
  if (2.0 * epsilon > spec.nyquist_radius())
    throw std::invalid_argument("Tauberian annulus not resolvable on this grid");
  LocalMeansKernels k;
  k.S = S;
  k.epsilon = epsilon;
  k.k_hat = [S, epsilon](double r) {
    const double x = r / epsilon;
    return std::pow(x, S + 1) * std::exp(1.0 - x * x);
  };
  k.k0_hat = [epsilon](double r) {
    const double x = r / (2.0 * epsilon);
    return std::exp(-x * x);
  };
  return k;
}

double fitted_exponent(const RadialProfile& m, double r_lo, double r_hi, int samples) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo) || samples < 2)
    throw std::invalid_argument("bad fitting range");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = std::log(r_lo) + (std::log(r_hi) - std::log(r_lo)) * i / (samples - 1);
    const double v = std::abs(m(std::exp(x)));
    if (v <= 0.0) continue;
    const double y = std::log(v);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) throw std::runtime_error("profile vanishes on fitting range");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace varbesov
