#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "varbesov/calderon.hpp"
#include "varbesov/error.hpp"

using namespace varbesov;

TEST_CASE("smooth steps") {
  for (auto S : {smooth_step, smooth_step_square}) {
    CHECK(S(0.0) == 0.0);
    CHECK(S(-1.0) == 0.0);
    CHECK(S(1.0) == 1.0);
    CHECK(S(0.5) == doctest::Approx(0.5));
    CHECK(S(0.3) + S(0.7) == doctest::Approx(1.0));
    for (double x = 0.0; x < 1.0; x += 0.01) CHECK(S(x + 0.01) >= S(x));
  }
}

TEST_CASE("continuous pairs: supports, residual, continuous identity") {
  const auto spec = GridSpec::make(1, 1024, 16.0);
  const auto s = ScaleGrid::make(8, 5);
  for (auto profile : {PairProfile::exp_inverse, PairProfile::exp_inverse_square}) {
    const auto pair = build_continuous_pair(spec, s, profile);
    CHECK(pair.residual < 1e-6);
    CHECK(reproducing_residual(pair, spec, s.resolvable_radius()) < 1e-6);
    CHECK(pair.phi_hat(0.49) == 0.0);
    CHECK(pair.phi_hat(2.01) == 0.0);
    CHECK(pair.phi0_hat(2.01) == 0.0);
    CHECK(pair.phi0_hat(0.0) == doctest::Approx(1.0));
    // int_0^inf phi_hat(t xi) dt/t = int phi_hat(u) du/u, by independent quadrature.
    const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double u) { return pair.phi_hat(u) / u; }, 0.5, 2.0, 15, 1e-13);
    CHECK(I == doctest::Approx(1.0).epsilon(1e-8));
  }
  const auto a = build_continuous_pair(spec, s, PairProfile::exp_inverse);
  const auto b = build_continuous_pair(spec, s, PairProfile::exp_inverse_square);
  CHECK(a.name != b.name);
  CHECK(std::abs(a.phi_hat(0.8) - b.phi_hat(0.8)) > 1e-3);
  CHECK_THROWS_AS(build_continuous_pair(GridSpec::make(1, 256, 16.0), s), std::invalid_argument);
}

TEST_CASE("factored pair needs fine scales") {
  const auto spec = GridSpec::make(1, 1024, 16.0);
  CHECK_THROWS(build_factored_pair(spec, ScaleGrid::make(4, 5)));
  const auto pair = build_factored_pair(spec, ScaleGrid::make(64, 5));
  CHECK(pair.residual < 1e-6);
  CHECK(pair.phi_hat(0.4) == 0.0);
}

TEST_CASE("dyadic family") {
  const auto spec = GridSpec::make(1, 1024, 16.0);
  CHECK(max_dyadic_level(spec) == 5);
  const auto fam = build_dyadic(spec, 5);
  CHECK(fam.residual < 1e-10);
  CHECK(dyadic_residual(fam, spec) < 1e-10);
  CHECK(fam.psi_hat(0, 1.0) == 1.0);
  CHECK(fam.psi_hat(0, 1.5) == 0.0);
  CHECK(fam.psi_hat(3, 3.9) == 0.0);
  CHECK(fam.psi_hat(3, 12.1) == 0.0);
  CHECK(fam.psi_hat(3, 6.0) == 1.0);
  double sum = 0.0;
  for (int v = 0; v <= 5; ++v) sum += fam.psi_hat(v, 21.3);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(build_dyadic(spec, 6));
}

TEST_CASE("local means kernels") {
  const auto spec = GridSpec::make(1, 1024, 16.0);
  const auto lm = build_local_means(3, 1.0, spec);
  CHECK(lm.k_hat(1.0) == doctest::Approx(1.0));
  CHECK(lm.k0_hat(0.0) == 1.0);
  // k_hat ~ |xi|^{S+1} near the origin: S+1 vanishing moments.
  CHECK(fitted_exponent(lm.k_hat, 1e-4, 1e-3) == doctest::Approx(4.0).epsilon(1e-4));
  CHECK_NOTHROW(lm.require_moments(1.5));
  CHECK_THROWS_AS(lm.require_moments(4.0), HypothesisError);
  CHECK_THROWS(build_local_means(-2, 1.0, spec));
  CHECK_THROWS(build_local_means(3, 0.0, spec));
  const auto table = tabulate(lm.k_hat, 4.0, 5);
  CHECK(table.size() == 5);
  CHECK(table[1].first == 1.0);
  CHECK(table[1].second == doctest::Approx(1.0));
}
