#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "varbesov/grid.hpp"

namespace varbesov {

struct CorpusEntry {
  std::string name;
  GridFunction f;
};

/// Ten Schwartz-class test functions sampled on `spec` (all analytic, so the
/// same corpus can be re-sampled at any resolution):
///   gauss, gauss-dilated-2, gauss-dilated-half, modulated-2, modulated-4,
///   modulated-8, bump, annulus, random-0, random-1.
/// Random entries are sums of Gaussian wave packets drawn from `seed`.
/// Throws std::runtime_error if an entry has boundary mass >= 1e-10.
std::vector<CorpusEntry> build_corpus(const GridSpec& spec, std::uint64_t seed,
                                      double amplitude = 1.0);

/// e^{i 2^j x_1} e^{-|x|^2 / 2}.
GridFunction modulated_gaussian(const GridSpec& spec, double frequency);

/// Sum of `packets` Gaussian wave packets with centres in [-6, 6]^n,
/// frequencies in [-8, 8]^n and complex amplitudes, drawn from `seed`.
GridFunction random_wavepackets(const GridSpec& spec, std::uint64_t seed, int packets = 5);

}  // namespace varbesov
