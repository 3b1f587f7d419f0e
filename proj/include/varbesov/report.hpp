#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace varbesov {

/// One corpus entry under one exponent triple: two quasi-norms and their ratio.
struct RatioRow {
  std::string group;
  std::string entry;
  double norm_a = 0.0;
  double norm_b = 0.0;
  double ratio = 0.0;
  /// Both norms vanish; excluded from the summary.
  bool vacuous = false;
  double boundary_mass = 0.0;
  bool operator==(const RatioRow&) const = default;
};

/// One lemma oracle run at resolution N and 2N.
struct LemmaRow {
  std::string id;
  std::string digest;
  double constant = 0.0;
  double refined = 0.0;
  bool finite = true;
  bool stable = true;
  bool hypothesis_met = true;
  bool passed = true;
  std::string note;
  bool operator==(const LemmaRow&) const = default;
};

struct GroupSummary {
  std::string group;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 1.0;
  std::size_t count = 0;
};

struct RatioReport {
  std::string experiment;
  double threshold = 50.0;
  /// Hypothesis metadata (a, m, S, clog estimates, grid, seed, ...), stored as text.
  std::map<std::string, std::string> metadata;
  std::vector<RatioRow> rows;
  std::vector<LemmaRow> lemmas;
  /// Extra pass/fail checks beyond the spread threshold (e.g. domination).
  std::map<std::string, bool> checks;

  std::vector<GroupSummary> summaries() const;
  /// Corpus-wide summary over every non-vacuous row.
  GroupSummary overall() const;
  /// Every group spread <= threshold, every lemma row passed, every check true.
  bool passed() const;

  std::string to_json() const;
  static RatioReport from_json(const std::string& text);
  void write_csv(std::ostream& out) const;

  bool operator==(const RatioReport&) const = default;
};

/// Writes report.json and report.csv into `dir` (created if needed); with
/// `plots`, also plots/ratios.csv and plots/plot_ratios.py.
/// Throws std::runtime_error when the directory is not writable.
void emit_report(const RatioReport& report, const std::string& dir, bool plots = false);

/// 64-bit FNV-1a, rendered as 16 hex digits.
class Digest {
 public:
  Digest& add(std::span<const unsigned char> bytes);
  Digest& add(double v);
  Digest& add(std::span<const double> v);
  Digest& add(const std::string& s);
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace varbesov
