#include "varbesov/corpus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace varbesov {

namespace {

double norm2(const Point& x, int dim) { return x[0] * x[0] + (dim == 2 ? x[1] * x[1] : 0.0); }

GridFunction gaussian(const GridSpec& spec, double dilation) {
  return GridFunction::sample(spec, [&](const Point& x) {
    return Complex(std::exp(-0.5 * dilation * dilation * norm2(x, spec.dim)), 0.0);
  });
}

}  // namespace

GridFunction modulated_gaussian(const GridSpec& spec, double frequency) {
  return GridFunction::sample(spec, [&](const Point& x) {
    return std::exp(Complex(-0.5 * norm2(x, spec.dim), frequency * x[0]));
  });
}

GridFunction random_wavepackets(const GridSpec& spec, std::uint64_t seed, int packets) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-6.0, 6.0), freq(-8.0, 8.0), amp(-1.0, 1.0);
  struct Packet {
    Point x0, xi;
    Complex c;
  };
  std::vector<Packet> ps;
  for (int k = 0; k < packets; ++k) {
    Packet p{};
    for (int d = 0; d < spec.dim; ++d) p.x0[d] = centre(rng);
    for (int d = 0; d < spec.dim; ++d) p.xi[d] = freq(rng);
    const double re = amp(rng), im = amp(rng);
    p.c = Complex(re, im);
    ps.push_back(p);
  }
  return GridFunction::sample(spec, [&](const Point& x) {
    Complex sum{};
    for (const auto& p : ps) {
      const Point y{x[0] - p.x0[0], x[1] - p.x0[1]};
      const double phase = p.xi[0] * x[0] + (spec.dim == 2 ? p.xi[1] * x[1] : 0.0);
      sum += p.c * std::exp(Complex(-0.5 * norm2(y, spec.dim), phase));
    }
    return sum;
  });
}

std::vector<CorpusEntry> build_corpus(const GridSpec& spec, std::uint64_t seed, double amplitude) {
  std::vector<CorpusEntry> out;
  out.push_back({"gauss", gaussian(spec, 1.0)});
  out.push_back({"gauss-dilated-2", gaussian(spec, 2.0)});
  out.push_back({"gauss-dilated-half", gaussian(spec, 0.5)});
  for (int j : {1, 2, 3})
    out.push_back({"modulated-" + std::to_string(1 << j), modulated_gaussian(spec, 1 << j)});
  constexpr double radius = 6.0;
  out.push_back({"bump", GridFunction::sample(spec, [&](const Point& x) {
                   const double r2 = norm2(x, spec.dim) / (radius * radius);
                   return Complex(r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0, 0.0);
                 })});
  out.push_back({"annulus", GridFunction::sample(spec, [&](const Point& x) {
                   return Complex(std::cos(5.0 * x[0]) * std::exp(-norm2(x, spec.dim) / 8.0), 0.0);
                 })});
  out.push_back({"random-0", random_wavepackets(spec, seed)});
  out.push_back({"random-1", random_wavepackets(spec, seed + 1)});
  for (auto& e : out) {
    if (amplitude != 1.0) e.f *= amplitude;
    const double bm = boundary_mass(e.f);
    if (!(bm < 1e-10))
      throw std::runtime_error("corpus entry '" + e.name + "' has boundary mass " +
                               std::to_string(bm) + " (grid half-period too small)");
  }
  return out;
}

}  // namespace varbesov
