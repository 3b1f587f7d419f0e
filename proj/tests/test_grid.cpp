#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "varbesov/grid.hpp"
#include "varbesov/grid_io.hpp"

using namespace varbesov;

namespace {
GridFunction gaussian(const GridSpec& spec, double w = 1.0) {
  return GridFunction::sample(spec, [&](const Point& x) {
    const double r2 = x[0] * x[0] + (spec.dim == 2 ? x[1] * x[1] : 0.0);
    return Complex(std::exp(-r2 / (2 * w * w)), 0.0);
  });
}
}  // namespace

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(GridSpec::make(3, 64, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::make(1, 100, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::make(1, 64, 0.0), std::invalid_argument);
  const auto s = GridSpec::make(2, 64, 4.0);
  CHECK(s.size() == 64 * 64);
  CHECK(s.spacing() == doctest::Approx(0.125));
  CHECK(s.nyquist_radius() == doctest::Approx(std::numbers::pi * 8));
}

TEST_CASE("fourier of a gaussian matches the closed form") {
  // (2 pi)^{-n/2} int e^{-|x|^2/2} e^{-i x xi} dx = e^{-|xi|^2/2}
  for (int dim : {1, 2}) {
    const auto spec = GridSpec::make(dim, dim == 1 ? 512 : 128, 16.0);
    const auto fhat = fourier(gaussian(spec));
    double err = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const double r = spec.frequency_radius(i);
      err = std::max(err, std::abs(fhat[i] - Complex(std::exp(-r * r / 2), 0.0)));
    }
    CHECK(err < 1e-12);
  }
}

TEST_CASE("fourier agrees with a naive DFT and inverts exactly") {
  const auto spec = GridSpec::make(1, 128, 8.0);
  const auto f = GridFunction::sample(spec, [](const Point& x) {
    return Complex(std::exp(-x[0] * x[0]) * std::cos(3 * x[0]), std::sin(x[0]) * std::exp(-x[0] * x[0] / 3));
  });
  std::vector<oracle::cd> raw(f.values().begin(), f.values().end());
  const auto ref = oracle::naive_fourier(raw, spec.half_period);
  const auto fhat = fourier(f);
  for (std::size_t k = 0; k < spec.size(); ++k) CHECK(std::abs(fhat[k] - ref[k]) < 1e-12);
  const auto back = inverse_fourier(fhat);
  for (std::size_t k = 0; k < spec.size(); ++k) CHECK(std::abs(back[k] - f[k]) < 1e-14);
  CHECK(fhat.side() == Side::frequency);
}

TEST_CASE("radial multiplier equals naive multiplier") {
  const auto spec = GridSpec::make(1, 128, 8.0);
  const auto f = gaussian(spec, 0.7);
  auto m = [](double r) { return std::exp(-r) * r; };
  const auto got = apply_radial(fourier(f), m, 1.0);
  std::vector<oracle::cd> raw(f.values().begin(), f.values().end());
  const auto ref = oracle::naive_multiplier(oracle::naive_fourier(raw, 8.0), 8.0, m);
  for (std::size_t k = 0; k < spec.size(); ++k) CHECK(std::abs(got[k] - ref[k]) < 1e-12);
}

TEST_CASE("integrate and convolution with a gaussian kernel") {
  const auto spec = GridSpec::make(1, 512, 16.0);
  CHECK(integrate(gaussian(spec)).real() == doctest::Approx(std::sqrt(2 * std::numbers::pi)).epsilon(1e-12));
  // g * g for g = e^{-x^2/2} is sqrt(pi) e^{-x^2/4}.
  const auto g = gaussian(spec);
  const auto conv = convolve_kernel(g, fourier(g));
  double err = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double x = spec.coordinate(i)[0];
    err = std::max(err, std::abs(conv[i].real() - std::sqrt(std::numbers::pi) * std::exp(-x * x / 4)));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("eta kernel mass and shape") {
  CHECK(eta(1.0, 2.0, 1, 0.0) == 1.0);
  CHECK(eta(0.5, 3.0, 1, 1.0) == doctest::Approx(2.0 / 27.0));
  // int_R (1+|x|)^{-m} dx = 2/(m-1); int_R^2 = 2 pi / ((m-1)(m-2)).
  CHECK(eta_mass(3.0, 1) == doctest::Approx(1.0));
  CHECK(eta_mass(4.0, 2) == doctest::Approx(std::numbers::pi / 3));
  for (int dim : {1, 2}) {
    const auto spec = GridSpec::make(dim, dim == 1 ? 1024 : 128, 16.0);
    for (double t : {1.0, 0.25}) {
      const double m = dim + 2.5;
      const auto e = eta_spatial(t, m, spec);
      CHECK(integrate(e).real() == doctest::Approx(eta_mass(m, dim)).epsilon(dim == 1 ? 1e-6 : 2e-3));
    }
  }
  CHECK_THROWS(eta_spatial(1.0, 1.0, GridSpec::make(1, 64, 4.0)));
}

TEST_CASE("boundary mass and upsampling") {
  const auto spec = GridSpec::make(1, 256, 16.0);
  CHECK(boundary_mass(gaussian(spec)) < 1e-10);
  const auto wide = GridFunction::sample(spec, [](const Point&) { return Complex(1.0, 0.0); });
  CHECK(boundary_mass(wide) == doctest::Approx(1.0));
  const auto up = upsample(gaussian(spec), 2);
  CHECK(up.spec().points == 512);
  for (std::size_t i = 0; i < up.size(); ++i) {
    const double x = up.spec().coordinate(i)[0];
    CHECK(std::abs(up[i] - Complex(std::exp(-x * x / 2), 0.0)) < 1e-12);
  }
}

TEST_CASE("scale grid") {
  const auto s = ScaleGrid::make(8, 5);
  CHECK(s.size() == 41);
  CHECK(s.scale(0) == 1.0);
  CHECK(s.min_scale() == doctest::Approx(1.0 / 32));
  CHECK(s.weight_sum() == doctest::Approx(5 * std::numbers::ln2));
  CHECK(s.resolvable_radius() == doctest::Approx(16.0));
  CHECK_NOTHROW(s.require_resolvable(GridSpec::make(1, 1024, 16.0)));
  CHECK_THROWS_AS(s.require_resolvable(GridSpec::make(1, 256, 16.0)), std::invalid_argument);
  CHECK_THROWS(ScaleGrid::make(0, 3));
}

TEST_CASE("csv and binary round trips") {
  const auto spec = GridSpec::make(2, 16, 3.0);
  const auto f = GridFunction::sample(spec, [](const Point& x) { return Complex(x[0] + 0.1, x[1] * x[1]); });
  std::stringstream csv;
  write_csv(csv, f);
  const auto g = read_csv(csv, 2, 3.0);
  CHECK(g.spec() == spec);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(g[i] == f[i]);

  std::stringstream bin;
  write_binary(bin, f);
  const auto b = read_binary(bin);
  CHECK(b.spec() == spec);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(b[i] - f[i]) <= 1e-6 * (1 + std::abs(f[i])));

  std::stringstream bad("garbage");
  CHECK_THROWS(read_binary(bad));
}
