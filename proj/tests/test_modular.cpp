#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "varbesov/error.hpp"
#include "varbesov/modular_norms.hpp"

using namespace varbesov;

namespace {
std::vector<double> random_magnitudes(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> d(0.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}
}  // namespace

TEST_CASE("constant exponent reduces to the Lp norm") {
  const auto spec = GridSpec::make(1, 256, 4.0);
  const auto mag = random_magnitudes(spec.size(), 1);
  std::vector<oracle::cd> c(mag.begin(), mag.end());
  for (double p : {0.5, 1.0, 2.0, 3.7}) {
    const auto P = ExponentField::constant(spec, p);
    CHECK(luxemburg_norm(mag, P) == doctest::Approx(oracle::lp(c, spec.cell_volume(), p)).epsilon(1e-10));
    CHECK(modular_lp(mag, P) == doctest::Approx(std::pow(oracle::lp(c, spec.cell_volume(), p), p)).epsilon(1e-12));
  }
  double mx = 0.0;
  for (double m : mag) mx = std::max(mx, m);
  CHECK(luxemburg_norm(mag, ExponentField::constant(spec, kInfinity)) == doctest::Approx(mx).epsilon(1e-10));
}

TEST_CASE("piecewise exponent against the closed-form equation") {
  const double L = 4.0;
  const auto spec = GridSpec::make(1, 256, L);
  const auto p = ExponentFamily::parse("step(1.5,3)").build(spec, ExponentRole::integrability);
  for (double c : {0.01, 0.3, 1.0, 17.0}) {
    std::vector<double> mag(spec.size(), c);
    CHECK(luxemburg_norm(mag, p) == doctest::Approx(oracle::piecewise_constant_norm(c, L, 1.5, 3.0)).epsilon(1e-10));
  }
}

TEST_CASE("unit ball property and homogeneity") {
  const auto spec = GridSpec::make(1, 512, 8.0);
  const auto p = ExponentFamily::parse("sine(2,1.5,3)").build(spec, ExponentRole::integrability);
  for (unsigned seed = 0; seed < 20; ++seed) {
    auto mag = random_magnitudes(spec.size(), seed);
    const double n = luxemburg_norm(mag, p);
    for (auto& m : mag) m /= n;
    const double rho = modular_lp(mag, p);
    CHECK(rho <= 1.0);
    CHECK(rho >= 1.0 - 1e-6);
    for (auto& m : mag) m *= 7.0;
    CHECK(luxemburg_norm(mag, p) == doctest::Approx(7.0).epsilon(1e-9));
  }
}

TEST_CASE("extreme magnitudes and infinite exponents") {
  const auto spec = GridSpec::make(1, 64, 4.0);
  std::vector<double> mag(spec.size(), 0.0);
  CHECK(luxemburg_norm(mag, ExponentField::constant(spec, 2.0)) == 0.0);
  mag[3] = 1e200;
  mag[4] = 1e-200;
  const auto p = ExponentFamily::parse("sine(2,1,1)").build(spec, ExponentRole::integrability);
  const double n = luxemburg_norm(mag, p);
  CHECK(std::isfinite(n));
  CHECK(n > 1e199);
  // p = inf on half the torus: norm is at least the sup there.
  auto pinf = std::vector<double>(spec.size(), 2.0);
  for (std::size_t i = 32; i < 64; ++i) pinf[i] = kInfinity;
  std::vector<double> m2(spec.size(), 0.0);
  m2[40] = 5.0;
  CHECK(luxemburg_norm(m2, ExponentField(spec, pinf)) == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("mixed norm against classical lq(Lp)") {
  const auto spec = GridSpec::make(1, 128, 4.0);
  const double h = spec.cell_volume();
  std::vector<std::vector<double>> g;
  for (unsigned v = 0; v < 5; ++v) g.push_back(random_magnitudes(spec.size(), 10 + v));
  std::vector<double> w(5, 1.0);
  for (auto [p, q] : {std::pair{2.0, 2.0}, {1.0, 3.0}, {3.0, 1.5}}) {
    double s = 0.0;
    for (const auto& gv : g) {
      std::vector<oracle::cd> c(gv.begin(), gv.end());
      s += std::pow(oracle::lp(c, h, p), q);
    }
    const double ref = std::pow(s, 1.0 / q);
    const auto P = ExponentField::constant(spec, p), Q = ExponentField::constant(spec, q);
    CHECK(mixed_norm(g, w, P, Q) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(mixed_modular(g, w, P, Q, ref) == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Weighted form is the quadrature of the continuous norm.
  const auto two = ExponentField::constant(spec, 2.0);
  std::vector<double> w2{0.5, 1.0, 1.0, 1.0, 0.5};
  double s = 0.0;
  for (std::size_t v = 0; v < 5; ++v) {
    std::vector<oracle::cd> c(g[v].begin(), g[v].end());
    s += w2[v] * std::pow(oracle::lp(c, h, 2.0), 2.0);
  }
  CHECK(mixed_norm(g, w2, two, two) == doctest::Approx(std::sqrt(s)).epsilon(1e-10));
  CHECK_THROWS_AS(mixed_norm(g, w, two, ExponentField::constant(spec, kInfinity)), HypothesisError);
  std::vector<std::vector<double>> none;
  CHECK(mixed_norm(none, {}, two, two) == 0.0);
}

TEST_CASE("variable mixed norm is monotone and homogeneous") {
  const auto spec = GridSpec::make(1, 128, 4.0);
  const auto p = ExponentFamily::parse("sine(2,0.75,1)").build(spec, ExponentRole::integrability);
  const auto q = ExponentFamily::parse("sine(1.5,0.3,2)").build(spec, ExponentRole::integrability);
  std::vector<std::vector<double>> g;
  for (unsigned v = 0; v < 4; ++v) g.push_back(random_magnitudes(spec.size(), 40 + v));
  std::vector<double> w(4, 1.0);
  const double n = mixed_norm(g, w, p, q);
  CHECK(mixed_modular(g, w, p, q, n) <= 1.0);
  CHECK(mixed_modular(g, w, p, q, n) >= 1.0 - 1e-6);
  auto g2 = g;
  for (auto& gv : g2)
    for (auto& x : gv) x *= 3.0;
  CHECK(mixed_norm(g2, w, p, q) == doctest::Approx(3.0 * n).epsilon(1e-9));
  g2 = g;
  g2[0][5] *= 10.0;
  CHECK(mixed_norm(g2, w, p, q) > n);
}

TEST_CASE("discrete and continuous wrappers") {
  const auto spec = GridSpec::make(1, 64, 4.0);
  const auto two = ExponentField::constant(spec, 2.0);
  std::vector<GridFunction> fv;
  for (int v = 0; v < 3; ++v)
    fv.push_back(GridFunction::sample(spec, [&](const Point& x) { return Complex(std::exp(-x[0] * x[0] * (v + 1)), 0); }));
  double s = 0.0;
  for (const auto& f : fv)
    for (auto z : f.values()) s += std::norm(z) * spec.cell_volume();
  CHECK(mixed_norm_discrete(fv, two, two) == doctest::Approx(std::sqrt(s)).epsilon(1e-10));
  const auto sg = ScaleGrid::make(1, 2);
  CHECK(mixed_norm_continuous(fv, two, two, sg) > 0.0);
  CHECK_THROWS(mixed_norm_continuous(std::span(fv).first(2), two, two, sg));
}
