#include "varbesov/modular_norms.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "varbesov/error.hpp"

namespace varbesov {

namespace {

constexpr double kNegInf = -kInfinity;
constexpr double kStepTolerance = 1e-13;  // on log lambda
constexpr double kOutwardNudge = 1e-11;

// Upper end of a bracket [lo, hi] around the root of a nonincreasing g with
// g(lo) >= 0 >= g(hi). The guess bracket is widened by ln 2 steps until valid.
double upper_root(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int k = 0; glo < 0.0; ++k) {
    if (k > 2000) throw std::runtime_error("root bracket search failed");
    hi = lo;
    lo -= std::numbers::ln2 * (1 << std::min(k, 20));
    glo = g(lo);
  }
  double ghi = g(hi);
  for (int k = 0; ghi > 0.0; ++k) {
    if (k > 2000) throw std::runtime_error("root bracket search failed");
    lo = hi;
    glo = ghi;
    hi += std::numbers::ln2 * (1 << std::min(k, 20));
    ghi = g(hi);
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= kStepTolerance; };
  auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, iters);
  return std::max(a, b);
}

// Pads a guess bracket that may have collapsed to a point.
std::pair<double, double> padded(double x, double y) {
  const double lo = std::min(x, y), hi = std::max(x, y);
  const double pad = 1e-9 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  return {lo - pad, hi + pad};
}

std::vector<double> log_magnitudes(std::span<const double> mag) {
  std::vector<double> out(mag.size());
  std::transform(mag.begin(), mag.end(), out.begin(),
                 [](double m) { return m > 0.0 ? std::log(m) : kNegInf; });
  return out;
}

void require_match(const GridSpec& spec, std::size_t size, const ExponentField& p) {
  if (!(spec == p.spec()) || size != p.size())
    throw std::invalid_argument("exponent field lives on a different grid");
}

}  // namespace

ModularValue modular_lp(std::span<const double> magnitude, const ExponentField& p) {
  if (magnitude.size() != p.size()) throw std::invalid_argument("size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    const double w = omega(p[i], magnitude[i]);
    if (std::isinf(w)) return kInfinity;
    sum += w;
  }
  return sum * p.spec().cell_volume();
}

ModularValue modular_lp(const GridFunction& f, const ExponentField& p) {
  require_match(f.spec(), f.size(), p);
  return modular_lp(f.magnitudes(), p);
}

double log_luxemburg(std::span<const double> log_values, std::span<const double> r,
                     double log_cell) {
  if (log_values.size() != r.size()) throw std::invalid_argument("size mismatch");
  double amax = kNegInf, ainf = kNegInf;
  double rmin = kInfinity, rmax = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double a = log_values[i];
    if (a == kNegInf) continue;
    if (std::isinf(r[i])) {
      ainf = std::max(ainf, a);
      continue;
    }
    amax = std::max(amax, a);
    rmin = std::min(rmin, r[i]);
    rmax = std::max(rmax, r[i]);
  }
  if (amax == kNegInf) return ainf;

  // log of the modular at lambda = exp(amax + d), by log-sum-exp.
  auto log_modular = [&](double d) {
    const double s = amax + d;
    double top = kNegInf;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (log_values[i] != kNegInf && !std::isinf(r[i]))
        top = std::max(top, r[i] * (log_values[i] - s));
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (log_values[i] != kNegInf && !std::isinf(r[i]))
        sum += std::exp(r[i] * (log_values[i] - s) - top);
    return top + std::log(sum) + log_cell;
  };

  // Every term scales by exp(-r d) with r in [rmin, rmax], which brackets the root.
  const double lnb = log_modular(0.0);
  auto [lo, hi] = padded(lnb / rmax, lnb / rmin);
  const double d = upper_root(log_modular, lo, hi);
  return std::max(amax + d + kOutwardNudge, ainf);
}

double luxemburg_norm(std::span<const double> magnitude, const ExponentField& p) {
  if (magnitude.size() != p.size()) throw std::invalid_argument("size mismatch");
  const double lg = log_luxemburg(log_magnitudes(magnitude), p.samples(),
                                  std::log(p.spec().cell_volume()));
  return lg == kNegInf ? 0.0 : std::exp(lg);
}

double luxemburg_norm(const GridFunction& f, const ExponentField& p) {
  require_match(f.spec(), f.size(), p);
  return luxemburg_norm(f.magnitudes(), p);
}

namespace {

struct MixedProblem {
  std::vector<std::vector<double>> logs;  // log |g_v|
  std::vector<double> weights;
  std::vector<double> r;                  // p / q
  std::span<const double> q;
  double log_cell = 0.0;

  // log of sum_v w_v || exp(q (log g_v - u)) ||_r
  double log_modular(double u) const {
    std::vector<double> scratch(r.size());
    std::vector<double> terms;
    terms.reserve(logs.size());
    for (std::size_t v = 0; v < logs.size(); ++v) {
      if (weights[v] == 0.0) continue;
      for (std::size_t i = 0; i < r.size(); ++i)
        scratch[i] = logs[v][i] == kNegInf ? kNegInf : q[i] * (logs[v][i] - u);
      const double lv = log_luxemburg(scratch, r, log_cell);
      if (lv != kNegInf) terms.push_back(std::log(weights[v]) + lv);
    }
    if (terms.empty()) return kNegInf;
    const double top = *std::max_element(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    return top + std::log(sum);
  }
};

MixedProblem make_problem(std::span<const std::vector<double>> magnitudes,
                          std::span<const double> weights, const ExponentField& p,
                          const ExponentField& q) {
  if (magnitudes.size() != weights.size())
    throw std::invalid_argument("one weight per sequence member required");
  if (!(p.spec() == q.spec())) throw std::invalid_argument("p and q live on different grids");
  if (std::isinf(q.range_max()))
    throw HypothesisError("mixed modular requires q+ < infinity (use the sup-over-scales form)");
  MixedProblem prob;
  prob.q = q.samples();
  prob.log_cell = std::log(p.spec().cell_volume());
  prob.r.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) prob.r[i] = p[i] / q[i];
  for (std::size_t v = 0; v < magnitudes.size(); ++v) {
    if (magnitudes[v].size() != p.size()) throw std::invalid_argument("size mismatch");
    if (weights[v] < 0.0) throw std::invalid_argument("weights must be nonnegative");
    prob.logs.push_back(log_magnitudes(magnitudes[v]));
    prob.weights.push_back(weights[v]);
  }
  return prob;
}

}  // namespace

ModularValue mixed_modular(std::span<const std::vector<double>> magnitudes,
                           std::span<const double> weights, const ExponentField& p,
                           const ExponentField& q, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  MixedProblem prob = make_problem(magnitudes, weights, p, q);
  const double lm = prob.log_modular(std::log(mu));
  return lm == kNegInf ? 0.0 : std::exp(lm);
}

double mixed_norm(std::span<const std::vector<double>> magnitudes, std::span<const double> weights,
                  const ExponentField& p, const ExponentField& q) {
  if (magnitudes.empty()) return 0.0;
  MixedProblem prob = make_problem(magnitudes, weights, p, q);
  double u0 = kNegInf;
  for (std::size_t v = 0; v < prob.logs.size(); ++v)
    if (prob.weights[v] > 0.0)
      for (double a : prob.logs[v]) u0 = std::max(u0, a);
  if (u0 == kNegInf) return 0.0;
  auto g = [&](double d) { return prob.log_modular(u0 + d); };
  // Each inner norm scales by between exp(-q+ d) and exp(-q- d).
  const double lnb = g(0.0);
  if (lnb == kNegInf) return 0.0;
  auto [lo, hi] = padded(lnb / q.range_max(), lnb / q.range_min());
  const double d = upper_root(g, lo, hi);
  return std::exp(u0 + d + kOutwardNudge);
}

double mixed_norm_discrete(std::span<const GridFunction> fv, const ExponentField& p,
                           const ExponentField& q) {
  std::vector<std::vector<double>> mags;
  mags.reserve(fv.size());
  for (const auto& f : fv) {
    require_match(f.spec(), f.size(), p);
    mags.push_back(f.magnitudes());
  }
  std::vector<double> w(fv.size(), 1.0);
  return mixed_norm(mags, w, p, q);
}

double mixed_norm_continuous(std::span<const GridFunction> ft, const ExponentField& p,
                             const ExponentField& q, const ScaleGrid& s) {
  if (ft.size() != s.size()) throw std::invalid_argument("one family member per scale required");
  std::vector<std::vector<double>> mags;
  mags.reserve(ft.size());
  for (const auto& f : ft) {
    require_match(f.spec(), f.size(), p);
    mags.push_back(f.magnitudes());
  }
  return mixed_norm(mags, s.weights(), p, q);
}

}  // namespace varbesov
