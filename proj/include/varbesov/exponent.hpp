#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "varbesov/grid.hpp"

namespace varbesov {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// omega_p(t): t^p for finite p > 0; for p = inf, 0 when t <= 1 and inf otherwise.
/// Throws std::invalid_argument for p <= 0 or t < 0.
double omega(double p, double t);

/// smoothness exponents (alpha) may take any finite real value; integrability
/// exponents (p, q) must be positive and may be +inf.
enum class ExponentRole { smoothness, integrability };

/// A variable exponent sampled on a grid. Immutable.
class ExponentField {
 public:
  ExponentField(GridSpec spec, std::vector<double> samples,
                ExponentRole role = ExponentRole::integrability);

  static ExponentField constant(const GridSpec& spec, double value,
                                ExponentRole role = ExponentRole::integrability);
  static ExponentField sample(const GridSpec& spec, const std::function<double(const Point&)>& fn,
                              ExponentRole role = ExponentRole::integrability);

  const GridSpec& spec() const { return spec_; }
  ExponentRole role() const { return role_; }
  std::span<const double> samples() const { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }

  double range_min() const { return min_; }
  double range_max() const { return max_; }
  bool is_constant() const { return min_ == max_; }
  /// Lower estimate of c_log(g) (see estimate_clog), computed at construction.
  double clog_local() const { return clog_local_; }
  /// On the torus the decay condition is vacuous; kept for API symmetry.
  double clog_decay() const { return 0.0; }
  double limit() const { return limit_; }

  /// Pointwise image g -> fn(g), e.g. 1/q or p/q.
  ExponentField map(const std::function<double(double)>& fn, ExponentRole role) const;
  /// Re-evaluate on another grid. Only fields built by `constant` or `sample`
  /// remember their generator; others throw std::logic_error.
  ExponentField resample(const GridSpec& finer) const;

 private:
  GridSpec spec_;
  ExponentRole role_;
  std::vector<double> samples_;
  double min_ = 0.0;
  double max_ = 0.0;
  double clog_local_ = 0.0;
  double limit_ = 0.0;
  std::function<double(const Point&)> generator_;
};

/// max over grid pairs of |g(x) - g(y)| log(e + 1/d(x, y)) with periodic
/// distance d. Exhaustive for up to 512 points per axis; above that 1e5 seeded
/// random pairs plus every nearest-neighbour pair.
double estimate_clog(const ExponentField& g, std::uint64_t seed = 0x5eed);

/// Named exponent family from the harness config, e.g. "constant(2)",
/// "sine(1.5,0.5,1)", "bump(0.5,0.3,4)", "step(1,2)".
///   constant(v)                 v
///   sine(base, amplitude, freq) base + amplitude sin(freq pi x / L)
///                               (2D: times cos(freq pi y / L))
///   bump(base, amplitude, w)    base + amplitude exp(1 - 1/(1 - |x|^2/w^2)) on |x| < w
///   step(left, right)           left for x < 0, right otherwise
struct ExponentFamily {
  std::string kind = "constant";
  std::vector<double> params{1.0};

  static ExponentFamily parse(const std::string& text);
  static ExponentFamily constant(double v) { return {"constant", {v}}; }
  static ExponentFamily sine(double base, double amplitude, double frequency) {
    return {"sine", {base, amplitude, frequency}};
  }

  std::string describe() const;
  double evaluate(const GridSpec& spec, const Point& x) const;
  ExponentField build(const GridSpec& spec, ExponentRole role) const;
  /// Exact supremum and infimum of the family (not just over grid samples).
  double upper_bound() const;
  double lower_bound() const;
};

}  // namespace varbesov
