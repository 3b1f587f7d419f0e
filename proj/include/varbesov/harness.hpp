#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "varbesov/corpus.hpp"
#include "varbesov/exponent.hpp"
#include "varbesov/report.hpp"

namespace varbesov {

/// Flat "section.key" -> value view of an INI file, layered over built-in
/// defaults. Unknown sections are kept (experiments read their own section).
///
///   [grid]        dim, points, half_period
///   [scales]      per_octave, octaves
///   [run]         seed, threads, amplitude
///   [triple.NAME] alpha, p, q          exponent families, e.g. sine(0.5,0.5,1)
///   [EXPERIMENT]  threshold, triples (comma list), plus experiment keys:
///                 peetre-vs-continuous: a_offset
///                 local-means-vs-discrete: S, epsilon, a_offset
///                 bessel-vs-discrete: smoothness (comma list)
///                 modulation: smoothness, octaves, points, half_period, fit_from, fit_to
class HarnessConfig {
 public:
  /// Built-in defaults (n = 1, N = 1024, L = 16, K = 8, J = 5, seed 12345).
  HarnessConfig();
  /// Defaults overridden by an INI file. Throws ConfigError on parse errors.
  static HarnessConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  std::vector<std::string> list(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  GridSpec grid() const;
  ScaleGrid scales() const;
  std::uint64_t seed() const;
  int threads() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Exponent triple (alpha, p, q) as declared in [triple.NAME].
struct ExponentTriple {
  std::string name;
  ExponentFamily alpha;
  ExponentFamily p;
  ExponentFamily q;
};
ExponentTriple triple_from(const HarnessConfig& cfg, const std::string& name);

/// Names of the runnable experiments (lemma experiments as "lemma:ID").
std::vector<std::string> experiment_names();
std::vector<std::string> lemma_ids();

/// Runs one experiment over the configured corpus. Throws ConfigError for an
/// unknown experiment or an empty corpus and HypothesisError when a theorem
/// hypothesis fails for the configured parameters.
RatioReport run_experiment(const std::string& experiment, const HarnessConfig& cfg);

/// Same, on a caller-supplied corpus (sampled on cfg.grid()).
RatioReport run_experiment(const std::string& experiment, const HarnessConfig& cfg,
                           const std::vector<CorpusEntry>& corpus);

/// Deterministic parallel map: out[i] = fn(i), with `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// 0 when the report passed, 1 otherwise.
int exit_code(const RatioReport& report);

}  // namespace varbesov
