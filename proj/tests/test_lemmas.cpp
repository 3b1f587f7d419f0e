#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "varbesov/calderon.hpp"
#include "varbesov/corpus.hpp"
#include "varbesov/error.hpp"
#include "varbesov/lemmas.hpp"
#include "varbesov/modular_norms.hpp"

using namespace varbesov;

namespace {
const GridSpec kSpec = GridSpec::make(1, 512, 16.0);
GridFunction gauss(const GridSpec& spec) {
  return GridFunction::sample(spec, [](const Point& x) { return Complex(std::exp(-x[0] * x[0] / 2), 0); });
}
}  // namespace

TEST_CASE("eta convolution against direct summation") {
  const auto spec = GridSpec::make(1, 64, 4.0);
  std::vector<double> g(spec.size(), 0.0);
  g[10] = 1.0;
  g[40] = 2.0;
  const auto out = eta_convolve(spec, g, 0.5, 3.0);
  const auto kernel = eta_spatial(0.5, 3.0, spec);
  for (std::size_t x = 0; x < spec.size(); ++x) {
    double ref = 0.0;
    for (std::size_t y = 0; y < spec.size(); ++y) {
      const std::size_t d = (x + spec.size() - y) % spec.size();
      // eta_spatial is indexed by coordinate; the origin sits at N/2.
      ref += g[y] * kernel[(d + spec.size() / 2) % spec.size()].real() * spec.cell_volume();
    }
    CHECK(out[x] == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("transfer") {
  const auto a = ExponentField::constant(kSpec, 1.0, ExponentRole::smoothness);
  CHECK(check_transfer(a, 0.25, 2.0, 0.0).value == doctest::Approx(1.0));
  const auto s = ExponentFamily::sine(0.5, 0.5, 1).build(kSpec, ExponentRole::smoothness);
  const double R = estimate_clog(s);
  const double c1 = check_transfer(s, 1.0, 2.0, R).value, c16 = check_transfer(s, 1.0 / 16, 2.0, R).value;
  CHECK(std::max(c1, c16) <= 2 * std::min(c1, c16));
  CHECK_FALSE(check_transfer(s, 0.5, 2.0, 0.5 * R).hypothesis_met);
  CHECK(check_transfer(s, 1.0 / 16, 2.0, 0.0).value >= 3 * check_transfer(s, 1.0, 2.0, 0.0).value);
}

TEST_CASE("dzw") {
  const auto two = ExponentField::constant(kSpec, 2.0);
  auto f = gauss(kSpec);
  // p = q: both sides are ||f||_p^p-consistent, equality.
  f *= 3.0;
  const auto eq = check_dzw(f, two, two);
  CHECK(eq.hypothesis_met);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-9));
  const auto p = ExponentFamily::sine(2, 0.5, 1).build(kSpec, ExponentRole::integrability);
  const auto q = ExponentFamily::sine(1.5, 0.3, 2).build(kSpec, ExponentRole::integrability);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_wavepackets(kSpec, seed);
    const double rhs = check_dzw(g, p, q).rhs;
    g *= std::pow(1.0 / rhs, 1.0 / (rhs < 1 ? q.range_min() : q.range_max()));
    const auto r = check_dzw(g, p, q);
    CHECK(r.hypothesis_met);
    CHECK(r.passed);
    CHECK(r.lhs <= r.rhs * (1 + 1e-8));
  }
  auto tiny = gauss(kSpec);
  tiny *= 1e-3;
  CHECK_FALSE(check_dzw(tiny, p, q).hypothesis_met);
}

TEST_CASE("hardy matches the closed form for power families") {
  for (auto [s, sigma] : {std::pair{1.0, 0.5}, {2.0, 0.25}, {0.75, 0.5}}) {
    const auto sg = ScaleGrid::make(16, 5);
    std::vector<double> e;
    for (double t : sg.scales()) e.push_back(std::pow(t, sigma));
    const double ref = oracle::hardy_power(s, sigma, sg.min_scale());
    CHECK(check_hardy(e, s, sg).value == doctest::Approx(ref).epsilon(0.02));
  }
  const auto sg = ScaleGrid::make(8, 5);
  std::vector<double> zero(sg.size(), 0.0);
  const auto z = check_hardy(zero, 1.0, sg);
  CHECK(z.value == 0.0);
  CHECK(z.vacuous);
  std::vector<double> spike(sg.size(), 0.0);
  spike[12] = 1.0;
  CHECK(std::isfinite(check_hardy(spike, 1.0, sg).value));
  CHECK_THROWS(check_hardy(zero, 0.0, sg));
}

TEST_CASE("rtrick") {
  const auto g = gauss(kSpec);
  for (double r : {1.0, 0.5}) {
    const auto c = check_rtrick(g, 2.0, r, 3.0);
    CHECK(std::isfinite(c.value));
    CHECK(c.value > 0.0);
    // Degree-0 homogeneity.
    auto g5 = g;
    g5 *= 5.0;
    CHECK(check_rtrick(g5, 2.0, r, 3.0).value == doctest::Approx(c.value).epsilon(1e-10));
  }
  CHECK(check_rtrick(GridFunction(kSpec), 1.0, 1.0, 3.0).vacuous);
}

TEST_CASE("eta-convolution lemmas") {
  const auto two = ExponentField::constant(kSpec, 2.0);
  const double m = 3.0;
  // Single nonzero term with constant exponents: bounded by ||eta||_1 (Young).
  std::vector<GridFunction> fv(4, GridFunction(kSpec));
  fv[2] = gauss(kSpec);
  const auto c = check_eta_conv_discrete(fv, two, two, m);
  CHECK(c.value <= eta_mass(m, 1) * (1 + 1e-9));
  CHECK(c.value > 0.0);
  std::vector<GridFunction> zeros(4, GridFunction(kSpec));
  CHECK(check_eta_conv_discrete(zeros, two, two, m).vacuous);
  CHECK_THROWS_AS(check_eta_conv_discrete(fv, two, two, 0.9), HypothesisError);

  const auto sg = ScaleGrid::make(4, 2);
  std::vector<GridFunction> ft(sg.size(), GridFunction(kSpec));
  ft[3] = gauss(kSpec);
  CHECK(check_eta_conv_continuous(ft, two, two, m, sg).value <= eta_mass(m, 1) * (1 + 1e-9));

  // Support bookkeeping: g_t != 0 exactly when tau_3 lies in [a t, b t].
  const double a = 0.25, b = 4.0;
  const auto g = averaged_family(ft, m, sg, a, b);
  const double tau = sg.scale(3);
  for (std::size_t j = 0; j < sg.size(); ++j) {
    double mx = 0.0;
    for (double v : g[j]) mx = std::max(mx, v);
    const double t = sg.scale(j);
    const bool inside = tau >= a * t * (1 - 1e-12) && tau <= b * t * (1 + 1e-12);
    CHECK((mx > 0.0) == inside);
  }
  const auto avg = check_averaged(ft, two, two, m, sg, a, b);
  CHECK(std::isfinite(avg.value));
  CHECK_THROWS(check_averaged(ft, two, two, m, sg, 2.0, 1.0));
}

TEST_CASE("reproducing bounds") {
  const auto sg = ScaleGrid::make(8, 4);
  const auto pair = build_continuous_pair(kSpec, sg);
  // Low-frequency f: the Phi term alone carries part (i).
  const auto low = GridFunction::sample(kSpec, [](const Point& x) { return Complex(std::exp(-x[0] * x[0] / 128), 0); });
  const auto k = check_reproducing_bounds(low, pair, 0.5, 4.0);
  CHECK(std::isfinite(k.low.value));
  CHECK(std::isfinite(k.band.value));
  CHECK(check_reproducing_bounds(GridFunction(kSpec), pair, 0.5, 4.0).low.vacuous);
  CHECK_THROWS(check_reproducing_bounds(low, pair, 0.5, 1.5));
}

TEST_CASE("rychkov decay slopes") {
  const auto spec = GridSpec::make(1, 2048, 32.0);
  const auto sg = ScaleGrid::make(8, 5);
  const auto rho = GridFunction::sample(spec, [](const Point& x) { return Complex(std::exp(-x[0] * x[0] / 32), 0); });
  for (int M : {-1, 1, 3}) {
    const auto fit = check_rychkov_decay(moment_kernel(M), rho, M, 2.0, sg);
    CHECK(fit.slope >= M + 1 - 0.1);
    CHECK(fit.decay.size() == sg.size());
  }
  CHECK(check_rychkov_decay(moment_kernel(1), GridFunction(spec), 1, 2.0, sg).vacuous);
  CHECK(is_stable(1.0, 1.04));
  CHECK_FALSE(is_stable(1.0, 1.06));
  CHECK(is_stable(0.0, 0.0));
}
