#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "varbesov/besov.hpp"
#include "varbesov/corpus.hpp"
#include "varbesov/error.hpp"

using namespace varbesov;

namespace {
const GridSpec kSpec = GridSpec::make(1, 256, 16.0);

GridFunction sample_fn(const GridSpec& spec, double freq) {
  return GridFunction::sample(spec, [&](const Point& x) {
    return std::exp(-x[0] * x[0] / 2) * std::polar(1.0, freq * x[0]) + 0.3 * std::exp(-(x[0] - 2) * (x[0] - 2));
  });
}

BesovParams constant_params(double s, double p, double q, Kernels k, const ScaleGrid& sg, double a = 0.0) {
  return {ExponentField::constant(kSpec, s, ExponentRole::smoothness), ExponentField::constant(kSpec, p),
          ExponentField::constant(kSpec, q), a, sg, std::move(k)};
}
}  // namespace

TEST_CASE("discrete norm matches the direct dyadic-block reference") {
  const auto fam = build_dyadic(kSpec, max_dyadic_level(kSpec));
  const auto sg = ScaleGrid::make(4, 3);
  const auto f = sample_fn(kSpec, 5.0);
  std::vector<oracle::cd> raw(f.values().begin(), f.values().end());
  const auto fhat = oracle::naive_fourier(raw, kSpec.half_period);
  std::vector<std::vector<oracle::cd>> blocks;
  for (int v = 0; v <= fam.v_max; ++v)
    blocks.push_back(oracle::naive_multiplier(fhat, kSpec.half_period, [&](double r) { return fam.psi_hat(v, r); }));
  for (double s : {-1.0, 0.0, 1.5})
    for (double p : {1.0, 3.0}) {
      std::vector<double> c;
      for (int v = 0; v <= fam.v_max; ++v) c.push_back(std::pow(2.0, v * s));
      const double ref = oracle::lp_lp(blocks, c, kSpec.cell_volume(), p);
      CHECK(besov_discrete(f, constant_params(s, p, p, fam, sg)) == doctest::Approx(ref).epsilon(1e-8));
    }
  // q = inf: sup over blocks.
  double sup = 0.0;
  for (int v = 0; v <= fam.v_max; ++v) sup = std::max(sup, std::pow(2.0, v) * oracle::lp(blocks[v], kSpec.cell_volume(), 2.0));
  CHECK(besov_discrete(f, constant_params(1.0, 2.0, kInfinity, fam, sg)) == doctest::Approx(sup).epsilon(1e-8));
}

TEST_CASE("continuous norm with p = q = 2 matches the Fourier-side reference") {
  const auto sg = ScaleGrid::make(8, 3);
  const auto pair = build_continuous_pair(kSpec, sg);
  const auto f = sample_fn(kSpec, 3.0);
  std::vector<oracle::cd> raw(f.values().begin(), f.values().end());
  const auto fhat = oracle::naive_fourier(raw, kSpec.half_period);
  const double dxi = std::numbers::pi / kSpec.half_period;
  for (double s : {0.0, 0.75}) {
    double low = 0.0, band = 0.0;
    for (std::size_t k = 0; k < fhat.size(); ++k) {
      const double r = dxi * std::abs(oracle::wavenumber(k, fhat.size()));
      low += dxi * std::norm(pair.phi0_hat(r) * fhat[k]);
      for (std::size_t j = 0; j < sg.size(); ++j)
        band += sg.weight(j) * std::pow(sg.scale(j), -2 * s) * dxi * std::norm(pair.phi_hat(sg.scale(j) * r) * fhat[k]);
    }
    const double ref = std::sqrt(low) + std::sqrt(band);
    CHECK(besov_continuous(f, constant_params(s, 2.0, 2.0, pair, sg)) == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("Bessel potential norm of a gaussian") {
  const auto spec = GridSpec::make(1, 1024, 16.0);
  const auto g = GridFunction::sample(spec, [](const Point& x) { return Complex(std::exp(-x[0] * x[0] / 2), 0); });
  boost::math::quadrature::tanh_sinh<double> q;
  for (double s : {-1.0, 0.0, 1.5}) {
    const double ref = std::sqrt(q.integrate([&](double xi) { return std::exp(s * std::log1p(xi * xi) - xi * xi); },
                                             -std::numeric_limits<double>::infinity(),
                                             std::numeric_limits<double>::infinity()));
    CHECK(bessel_potential_norm(g, s) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("Peetre sweep equals brute force; pruning is exact") {
  const auto spec = GridSpec::make(1, 128, 4.0);
  std::vector<double> G(spec.size());
  for (std::size_t i = 0; i < G.size(); ++i) G[i] = std::abs(std::sin(0.37 * i)) * std::exp(-0.01 * i);
  for (double t : {1.0, 0.125})
    for (double a : {1.5, 4.0}) {
      const auto fast = peetre_sweep(spec, G, t, a);
      const auto exact = peetre_sweep(spec, G, t, a, {.exact = true});
      for (std::size_t x = 0; x < G.size(); ++x) {
        double ref = 0.0;
        for (std::size_t y = 0; y < G.size(); ++y)
          ref = std::max(ref, G[y] * std::pow(1 + spec.periodic_distance(x, y) / t, -a));
        CHECK(fast[x] == ref);
        CHECK(exact[x] == ref);
      }
    }
  const auto spec2 = GridSpec::make(2, 16, 4.0);
  std::vector<double> H(spec2.size());
  for (std::size_t i = 0; i < H.size(); ++i) H[i] = std::abs(std::cos(0.11 * i * i));
  const auto fast = peetre_sweep(spec2, H, 0.5, 3.0);
  for (std::size_t x = 0; x < H.size(); x += 7) {
    double ref = 0.0;
    for (std::size_t y = 0; y < H.size(); ++y)
      ref = std::max(ref, H[y] * std::pow(1 + spec2.periodic_distance(x, y) / 0.5, -3.0));
    CHECK(fast[x] == ref);
  }
}

TEST_CASE("Peetre dominates and hypotheses are enforced") {
  const auto sg = ScaleGrid::make(4, 3);
  const auto pair = build_continuous_pair(kSpec, sg);
  const auto alpha = ExponentFamily::sine(0.5, 0.5, 1).build(kSpec, ExponentRole::smoothness);
  const auto p = ExponentFamily::sine(2, 0.75, 1).build(kSpec, ExponentRole::integrability);
  const auto q = ExponentField::constant(kSpec, 2.0);
  BesovParams P{alpha, p, q, 1.0 / p.range_min() + 1.0, sg, pair};
  const auto f = sample_fn(kSpec, 4.0);
  CHECK(besov_peetre(f, P) >= besov_continuous(f, P));
  CHECK(besov_peetre(f, P) == besov_peetre(f, P, {.exact = true}));
  P.a = 0.5 / p.range_min();
  CHECK_THROWS_AS(besov_peetre(f, P), HypothesisError);

  const auto lm = build_local_means(0, 1.0, kSpec);
  BesovParams L{alpha, p, q, 1.0 / p.range_min() + 1.0, sg, lm};
  CHECK_THROWS_AS(besov_local_means(f, L), HypothesisError);
  L.kernels = build_local_means(3, 1.0, kSpec);
  CHECK(besov_local_means(f, L) > 0.0);

  std::vector<double> qs(kSpec.size(), 2.0);
  qs[0] = kInfinity;
  BesovParams bad{alpha, p, ExponentField(kSpec, qs), 0.0, sg, pair};
  CHECK_THROWS(validate(bad));
  BesovParams wrong_grid{alpha, ExponentField::constant(GridSpec::make(1, 128, 16.0), 2.0), q, 0.0, sg, pair};
  CHECK_THROWS(validate(wrong_grid));
}

TEST_CASE("zero input, homogeneity, variable exponents") {
  const auto sg = ScaleGrid::make(4, 3);
  const auto pair = build_continuous_pair(kSpec, sg);
  const auto fam = build_dyadic(kSpec, max_dyadic_level(kSpec));
  const auto alpha = ExponentFamily::sine(0.5, 0.5, 1).build(kSpec, ExponentRole::smoothness);
  const auto p = ExponentFamily::sine(2, 0.75, 1).build(kSpec, ExponentRole::integrability);
  const auto q = ExponentFamily::sine(1.5, 0.25, 2).build(kSpec, ExponentRole::integrability);
  BesovParams P{alpha, p, q, 1.0 / p.range_min() + 1.0, sg, pair};
  BesovParams D = P;
  D.kernels = fam;
  const GridFunction zero(kSpec);
  CHECK(besov_continuous(zero, P) == 0.0);
  CHECK(besov_discrete(zero, D) == 0.0);
  CHECK(besov_peetre(zero, P) == 0.0);
  const auto f = sample_fn(kSpec, 2.0);
  const auto f7 = Complex(7.0, 0.0) * f;
  CHECK(besov_continuous(f7, P) == doctest::Approx(7 * besov_continuous(f, P)).epsilon(1e-9));
  CHECK(besov_discrete(f7, D) == doctest::Approx(7 * besov_discrete(f, D)).epsilon(1e-9));
  CHECK(besov_peetre(f7, P) == doctest::Approx(7 * besov_peetre(f, P)).epsilon(1e-9));
  // Raising the smoothness raises the norm of a high-frequency function.
  BesovParams H = D;
  H.alpha = ExponentField::constant(kSpec, 2.0, ExponentRole::smoothness);
  CHECK(besov_discrete(sample_fn(kSpec, 8.0), H) > besov_discrete(sample_fn(kSpec, 8.0), D));
}
