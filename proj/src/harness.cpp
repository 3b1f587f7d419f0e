#include "varbesov/harness.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "varbesov/besov.hpp"
#include "varbesov/calderon.hpp"
#include "varbesov/error.hpp"
#include "varbesov/lemmas.hpp"
#include "varbesov/modular_norms.hpp"

namespace varbesov {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d{
      {"grid.dim", "1"},
      {"grid.points", "1024"},
      {"grid.half_period", "16"},
      {"scales.per_octave", "8"},
      {"scales.octaves", "5"},
      {"run.seed", "12345"},
      {"run.threads", "1"},
      {"run.amplitude", "1"},
      {"run.triples", "constant,sine-alpha,sine-p"},
      {"triple.constant.alpha", "constant(1)"},
      {"triple.constant.p", "constant(2)"},
      {"triple.constant.q", "constant(2)"},
      {"triple.sine-alpha.alpha", "sine(0.5,0.5,1)"},
      {"triple.sine-alpha.p", "constant(2)"},
      {"triple.sine-alpha.q", "constant(2)"},
      {"triple.sine-p.alpha", "constant(1)"},
      {"triple.sine-p.p", "sine(2,0.75,1)"},
      {"triple.sine-p.q", "sine(1.5,0.25,2)"},
      {"independence.threshold", "20"},
      {"discrete-vs-continuous.threshold", "20"},
      {"peetre-vs-continuous.threshold", "30"},
      {"peetre-vs-continuous.a_offset", "1"},
      {"local-means-vs-discrete.threshold", "30"},
      {"local-means-vs-discrete.S", "3"},
      {"local-means-vs-discrete.epsilon", "1"},
      {"local-means-vs-discrete.a_offset", "1"},
      {"bessel-vs-discrete.threshold", "10"},
      {"bessel-vs-discrete.smoothness", "-1,0,1.5"},
      {"modulation.smoothness", "0.5,1,2"},
      {"modulation.points", "4096"},
      {"modulation.half_period", "8"},
      {"modulation.octaves", "8"},
      {"modulation.fit_from", "3"},
      {"modulation.fit_to", "6"},
      {"modulation.tolerance", "0.1"},
      {"lemma.alpha", "sine(0.5,0.5,1)"},
      {"lemma.p", "sine(2,0.5,1)"},
      {"lemma.q", "sine(1.5,0.3,2)"},
      {"lemma.draws", "100"},
      {"lemma.rychkov_points", "2048"},
      {"lemma.rychkov_half_period", "32"},
  };
  return d;
}

}  // namespace

HarnessConfig::HarnessConfig() : values_(defaults()) {}

HarnessConfig HarnessConfig::load(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("cannot read config: " + std::string(e.what()));
  }
  HarnessConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      cfg.set(section, body.data());
      continue;
    }
    for (const auto& [key, value] : body) cfg.set(section + "." + key, value.data());
  }
  return cfg;
}

void HarnessConfig::set(const std::string& key, const std::string& value) { values_[key] = trim(value); }

bool HarnessConfig::has(const std::string& key) const { return values_.count(key) != 0; }

std::string HarnessConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
  return it->second;
}

std::string HarnessConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double HarnessConfig::number(const std::string& key) const {
  const std::string v = get(key);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not a number: '" + v + "'");
  }
}

double HarnessConfig::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long HarnessConfig::integer(const std::string& key) const {
  const double d = number(key);
  if (d != std::floor(d)) throw ConfigError("config key '" + key + "' must be an integer");
  return static_cast<long>(d);
}

long HarnessConfig::integer(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::vector<std::string> HarnessConfig::list(const std::string& key) const {
  std::vector<std::string> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

GridSpec HarnessConfig::grid() const {
  try {
    return GridSpec::make(static_cast<int>(integer("grid.dim")),
                          static_cast<std::size_t>(integer("grid.points")), number("grid.half_period"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ScaleGrid HarnessConfig::scales() const {
  try {
    return ScaleGrid::make(static_cast<int>(integer("scales.per_octave")),
                           static_cast<int>(integer("scales.octaves")));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::uint64_t HarnessConfig::seed() const { return static_cast<std::uint64_t>(integer("run.seed")); }

int HarnessConfig::threads() const { return std::max(1, static_cast<int>(integer("run.threads"))); }

ExponentTriple triple_from(const HarnessConfig& cfg, const std::string& name) {
  const std::string base = "triple." + name + ".";
  if (!cfg.has(base + "alpha")) throw ConfigError("unknown exponent triple '" + name + "'");
  return {name, ExponentFamily::parse(cfg.get(base + "alpha")), ExponentFamily::parse(cfg.get(base + "p")),
          ExponentFamily::parse(cfg.get(base + "q"))};
}

std::vector<std::string> lemma_ids() {
  return {"transfer", "transfer-r0", "dzw",      "hardy",       "rtrick",
          "eta-conv-discrete", "eta-conv-continuous", "averaged", "reproducing", "rychkov"};
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out{"independence",          "peetre-vs-continuous", "discrete-vs-continuous",
                               "local-means-vs-discrete", "bessel-vs-discrete",   "modulation"};
  for (const auto& id : lemma_ids()) out.push_back("lemma:" + id);
  out.push_back("lemma:all");
  return out;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<std::size_t>(threads, count));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

int exit_code(const RatioReport& report) { return report.passed() ? 0 : 1; }

namespace {

struct Fields {
  ExponentField alpha, p, q;
};

Fields build_fields(const ExponentTriple& t, const GridSpec& spec) {
  return {t.alpha.build(spec, ExponentRole::smoothness), t.p.build(spec, ExponentRole::integrability),
          t.q.build(spec, ExponentRole::integrability)};
}

void describe_triple(RatioReport& r, const ExponentTriple& t, const Fields& f) {
  const std::string k = "triple." + t.name + ".";
  r.metadata[k + "alpha"] = t.alpha.describe();
  r.metadata[k + "p"] = t.p.describe();
  r.metadata[k + "q"] = t.q.describe();
  r.metadata[k + "clog_alpha"] = fmt(f.alpha.clog_local());
  r.metadata[k + "clog_p"] = fmt(f.p.clog_local());
  r.metadata[k + "clog_q"] = fmt(f.q.clog_local());
}

void describe_run(RatioReport& r, const HarnessConfig& cfg, const GridSpec& spec, const ScaleGrid& s) {
  r.metadata["grid"] = "n=" + std::to_string(spec.dim) + ",N=" + std::to_string(spec.points) +
                       ",L=" + fmt(spec.half_period);
  r.metadata["scales"] = "K=" + std::to_string(s.per_octave()) + ",J=" + std::to_string(s.octaves());
  r.metadata["seed"] = std::to_string(cfg.seed());
  r.metadata["threads"] = std::to_string(cfg.threads());
}

using NormPair = std::function<std::pair<double, double>(const GridFunction&, const BesovParams&)>;

struct Variant {
  Kernels kernels;
  double a = 0.0;
};

// Runs `norms` over every (triple, entry) and fills the rows.
void sweep(RatioReport& report, const HarnessConfig& cfg, const std::vector<CorpusEntry>& corpus,
           const std::vector<std::string>& triples, const GridSpec& spec, const ScaleGrid& scales,
           const std::function<BesovParams(const ExponentTriple&, const Fields&)>& make,
           const NormPair& norms) {
  for (const auto& name : triples) {
    const ExponentTriple t = triple_from(cfg, name);
    const Fields f = build_fields(t, spec);
    describe_triple(report, t, f);
    const BesovParams P = make(t, f);
    validate(P);
    std::vector<RatioRow> rows(corpus.size());
    parallel_for(corpus.size(), cfg.threads(), [&](std::size_t i) {
      auto [a, b] = norms(corpus[i].f, P);
      RatioRow row;
      row.group = name;
      row.entry = corpus[i].name;
      row.norm_a = a;
      row.norm_b = b;
      row.vacuous = a == 0.0 && b == 0.0;
      row.ratio = row.vacuous ? 0.0 : a / b;
      row.boundary_mass = boundary_mass(corpus[i].f);
      rows[i] = row;
    });
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  (void)scales;
}

double peetre_a(const HarnessConfig& cfg, const std::string& section, const Fields& f) {
  return f.p.spec().dim / f.p.range_min() + cfg.number(section + ".a_offset", 1.0);
}

RatioReport norm_experiment(const std::string& name, const HarnessConfig& cfg,
                            const std::vector<CorpusEntry>& corpus) {
  const GridSpec spec = cfg.grid();
  const ScaleGrid scales = cfg.scales();
  RatioReport report;
  report.experiment = name;
  report.threshold = cfg.number(name + ".threshold", 50.0);
  describe_run(report, cfg, spec, scales);
  const auto triples = cfg.list(cfg.has(name + ".triples") ? name + ".triples" : "run.triples");

  KernelPair pair = build_continuous_pair(spec, scales, PairProfile::exp_inverse);
  report.metadata["pair"] = pair.name;
  report.metadata["pair.residual"] = fmt(pair.residual);
  auto base = [&](const Fields& f, Kernels k, double a) {
    return BesovParams{f.alpha, f.p, f.q, a, scales, std::move(k)};
  };

  if (name == "independence") {
    KernelPair other = build_continuous_pair(spec, scales, PairProfile::exp_inverse_square);
    report.metadata["pair_b"] = other.name;
    report.metadata["pair_b.residual"] = fmt(other.residual);
    sweep(report, cfg, corpus, triples, spec, scales,
          [&](const ExponentTriple&, const Fields& f) { return base(f, pair, 0.0); },
          [&](const GridFunction& g, const BesovParams& P) {
            BesovParams Q = P;
            Q.kernels = other;
            return std::pair{besov_continuous(g, P), besov_continuous(g, Q)};
          });
  } else if (name == "discrete-vs-continuous") {
    const DyadicFamily fam = build_dyadic(spec, max_dyadic_level(spec));
    report.metadata["v_max"] = std::to_string(fam.v_max);
    sweep(report, cfg, corpus, triples, spec, scales,
          [&](const ExponentTriple&, const Fields& f) { return base(f, pair, 0.0); },
          [&](const GridFunction& g, const BesovParams& P) {
            BesovParams Q = P;
            Q.kernels = fam;
            return std::pair{besov_continuous(g, P), besov_discrete(g, Q)};
          });
  } else if (name == "peetre-vs-continuous") {
    sweep(report, cfg, corpus, triples, spec, scales,
          [&](const ExponentTriple& t, const Fields& f) {
            const double a = peetre_a(cfg, name, f);
            report.metadata["triple." + t.name + ".a"] = fmt(a);
            return base(f, pair, a);
          },
          [&](const GridFunction& g, const BesovParams& P) {
            return std::pair{besov_peetre(g, P), besov_continuous(g, P)};
          });
    bool dominated = true;
    for (const auto& r : report.rows) dominated = dominated && r.norm_a >= r.norm_b;
    report.checks["domination"] = dominated;
  } else if (name == "local-means-vs-discrete") {
    const int S = static_cast<int>(cfg.integer(name + ".S"));
    const LocalMeansKernels lm = build_local_means(S, cfg.number(name + ".epsilon"), spec);
    const DyadicFamily fam = build_dyadic(spec, max_dyadic_level(spec));
    report.metadata["S"] = std::to_string(S);
    report.metadata["epsilon"] = fmt(lm.epsilon);
    // Hypotheses are checked for every triple before any work is done.
    for (const auto& t : triples) lm.require_moments(triple_from(cfg, t).alpha.upper_bound());
    sweep(report, cfg, corpus, triples, spec, scales,
          [&](const ExponentTriple& t, const Fields& f) {
            const double a = peetre_a(cfg, name, f);
            report.metadata["triple." + t.name + ".a"] = fmt(a);
            return base(f, lm, a);
          },
          [&](const GridFunction& g, const BesovParams& P) {
            BesovParams Q = P;
            Q.kernels = fam;
            return std::pair{besov_local_means(g, P), besov_discrete(g, Q)};
          });
  } else {
    throw ConfigError("unknown experiment '" + name + "'");
  }
  return report;
}

RatioReport bessel_experiment(const HarnessConfig& cfg, const std::vector<CorpusEntry>& corpus) {
  const std::string name = "bessel-vs-discrete";
  const GridSpec spec = cfg.grid();
  const ScaleGrid scales = cfg.scales();
  RatioReport report;
  report.experiment = name;
  report.threshold = cfg.number(name + ".threshold", 50.0);
  describe_run(report, cfg, spec, scales);
  const DyadicFamily fam = build_dyadic(spec, max_dyadic_level(spec));
  report.metadata["v_max"] = std::to_string(fam.v_max);
  for (const auto& sv : cfg.list(name + ".smoothness")) {
    const double s = std::stod(sv);
    const std::string group = "s=" + sv;
    const ExponentField alpha = ExponentField::constant(spec, s, ExponentRole::smoothness);
    const ExponentField two = ExponentField::constant(spec, 2.0);
    const BesovParams P{alpha, two, two, 0.0, scales, fam};
    std::vector<RatioRow> rows(corpus.size());
    parallel_for(corpus.size(), cfg.threads(), [&](std::size_t i) {
      RatioRow row{group, corpus[i].name, besov_discrete(corpus[i].f, P),
                   bessel_potential_norm(corpus[i].f, s)};
      row.vacuous = row.norm_a == 0.0 && row.norm_b == 0.0;
      row.ratio = row.vacuous ? 0.0 : row.norm_a / row.norm_b;
      row.boundary_mass = boundary_mass(corpus[i].f);
      rows[i] = row;
    });
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RatioReport modulation_experiment(const HarnessConfig& cfg) {
  const std::string name = "modulation";
  const GridSpec spec = GridSpec::make(static_cast<int>(cfg.integer("grid.dim")),
                                       static_cast<std::size_t>(cfg.integer(name + ".points")),
                                       cfg.number(name + ".half_period"));
  const ScaleGrid scales = ScaleGrid::make(static_cast<int>(cfg.integer("scales.per_octave")),
                                           static_cast<int>(cfg.integer(name + ".octaves")));
  RatioReport report;
  report.experiment = name;
  report.threshold = cfg.number(name + ".threshold", 50.0);
  describe_run(report, cfg, spec, scales);
  const KernelPair pair = build_continuous_pair(spec, scales);
  const DyadicFamily fam = build_dyadic(spec, max_dyadic_level(spec));
  const int from = static_cast<int>(cfg.integer(name + ".fit_from"));
  const int to = static_cast<int>(cfg.integer(name + ".fit_to"));
  const double tol = cfg.number(name + ".tolerance");
  if (from < 0 || to <= from) throw ConfigError("modulation fit range must satisfy 0 <= fit_from < fit_to");
  for (const auto& sv : cfg.list(name + ".smoothness")) {
    const double s = std::stod(sv);
    const ExponentField alpha = ExponentField::constant(spec, s, ExponentRole::smoothness);
    const ExponentField two = ExponentField::constant(spec, 2.0);
    const BesovParams Pc{alpha, two, two, 0.0, scales, pair};
    const BesovParams Pd{alpha, two, two, 0.0, scales, fam};
    const std::size_t count = static_cast<std::size_t>(to - from + 1);
    std::vector<RatioRow> rows(count);
    parallel_for(count, cfg.threads(), [&](std::size_t i) {
      const int j = from + static_cast<int>(i);
      const GridFunction f = modulated_gaussian(spec, std::ldexp(1.0, j));
      RatioRow row{"s=" + sv, "modulated-" + std::to_string(1 << j), besov_continuous(f, Pc),
                   besov_discrete(f, Pd)};
      row.ratio = row.norm_a / row.norm_b;
      row.boundary_mass = boundary_mass(f);
      rows[i] = row;
    });
    std::vector<double> js, lc, ld;
    for (std::size_t i = 0; i < count; ++i) {
      js.push_back(from + static_cast<double>(i));
      lc.push_back(std::log2(rows[i].norm_a));
      ld.push_back(std::log2(rows[i].norm_b));
    }
    const double sc = slope_of(js, lc), sd = slope_of(js, ld);
    report.metadata["s=" + sv + ".slope_continuous"] = fmt(sc);
    report.metadata["s=" + sv + ".slope_discrete"] = fmt(sd);
    report.checks["s=" + sv + ".continuous"] = std::abs(sc - s) <= tol;
    report.checks["s=" + sv + ".discrete"] = std::abs(sd - s) <= tol;
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

// ---- lemma sweeps: every oracle runs at N and 2N ----

struct LemmaContext {
  const HarnessConfig& cfg;
  GridSpec coarse;
  GridSpec fine;
  ScaleGrid scales;
};

GridSpec refined(const GridSpec& s) { return GridSpec::make(s.dim, 2 * s.points, s.half_period); }

LemmaRow make_row(const std::string& id, const std::string& digest, double coarse, double fine,
                  bool hypothesis_met = true) {
  LemmaRow row;
  row.id = id;
  row.digest = digest;
  row.constant = coarse;
  row.refined = fine;
  row.finite = std::isfinite(coarse) && std::isfinite(fine);
  row.stable = is_stable(coarse, fine);
  row.hypothesis_met = hypothesis_met;
  row.passed = row.finite && row.stable;
  return row;
}

std::vector<GridFunction> dyadic_blocks(const GridFunction& f) {
  const DyadicFamily fam = build_dyadic(f.spec(), max_dyadic_level(f.spec()));
  const GridFunction fhat = fourier(f);
  std::vector<GridFunction> out;
  for (int v = 0; v <= fam.v_max; ++v) out.push_back(apply_radial(fhat, fam.profile(v), 1.0));
  return out;
}

std::vector<GridFunction> scale_blocks(const GridFunction& f, const ScaleGrid& s) {
  const KernelPair pair = build_continuous_pair(f.spec(), s);
  const GridFunction fhat = fourier(f);
  std::vector<GridFunction> out;
  for (double t : s.scales()) out.push_back(apply_radial(fhat, pair.phi_hat, t));
  return out;
}

GridFunction corpus_entry(const GridSpec& spec, std::uint64_t seed, const std::string& name) {
  for (auto& e : build_corpus(spec, seed))
    if (e.name == name) return e.f;
  throw ConfigError("no corpus entry '" + name + "'");
}

void lemma_transfer(RatioReport& r, const LemmaContext& c, bool violate) {
  const auto fam = ExponentFamily::parse(c.cfg.get("lemma.alpha"));
  const ExponentField a0 = fam.build(c.coarse, ExponentRole::smoothness);
  const ExponentField a1 = fam.build(c.fine, ExponentRole::smoothness);
  const double m = 2.0;
  const double R = violate ? 0.0 : std::max(estimate_clog(a0), estimate_clog(a1));
  const std::string id = violate ? "transfer-r0" : "transfer";
  r.metadata[id + ".R"] = fmt(R);
  r.metadata[id + ".m"] = fmt(m);
  std::vector<double> values;
  for (double t : {1.0, 0.25, 0.0625}) {
    const auto x = check_transfer(a0, t, m, R);
    const auto y = check_transfer(a1, t, m, R);
    Digest d;
    d.add(id).add(a0.samples()).add(t).add(m).add(R);
    LemmaRow row = make_row(id + " t=" + fmt(t), d.hex(), x.value, y.value, x.hypothesis_met);
    values.push_back(x.value);
    r.lemmas.push_back(row);
  }
  const double growth = values.back() / values.front();
  LemmaRow summary = make_row(id + " growth", Digest().add(id).hex(), growth, growth, !violate);
  if (violate) {
    summary.passed = growth >= 3.0;
    summary.note = "hypothesis violated; constant must grow >= 3x across the t-sweep";
  } else {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    summary.passed = *hi <= 2.0 * *lo;
    summary.note = "constants within 2x across t";
  }
  r.lemmas.push_back(summary);
}

void lemma_dzw(RatioReport& r, const LemmaContext& c) {
  const int draws = static_cast<int>(c.cfg.integer("lemma.draws"));
  const auto pf = ExponentFamily::parse(c.cfg.get("lemma.p"));
  const auto qf = ExponentFamily::parse(c.cfg.get("lemma.q"));
  double worst[2] = {0.0, 0.0};
  bool all_pass = true;
  int meaningful = 0;
  Digest d;
  d.add("dzw");
  for (int level = 0; level < 2; ++level) {
    const GridSpec& spec = level == 0 ? c.coarse : c.fine;
    const ExponentField p = pf.build(spec, ExponentRole::integrability);
    const ExponentField q = qf.build(spec, ExponentRole::integrability);
    for (int k = 0; k < draws; ++k) {
      GridFunction f = random_wavepackets(spec, c.cfg.seed() + 1000 + static_cast<std::uint64_t>(k));
      // |c f|^q >= c^{q-} |f|^q for c >= 1 and >= c^{q+} |f|^q for c < 1, so
      // this scaling lands on || |f|^q ||_{p/q} >= 1.
      const double rhs = check_dzw(f, p, q).rhs;
      const double qq = rhs < 1.0 ? q.range_min() : q.range_max();
      f *= std::pow(1.0 / rhs, 1.0 / qq) * (1.0 + 0.05 * (k % 20));
      const DzwResult res = check_dzw(f, p, q);
      if (level == 0) {
        d.add(res.lhs);
        meaningful += res.hypothesis_met ? 1 : 0;
      }
      all_pass = all_pass && res.passed && res.hypothesis_met;
      if (res.hypothesis_met) worst[level] = std::max(worst[level], res.lhs / res.rhs);
    }
  }
  LemmaRow row = make_row("dzw", d.hex(), worst[0], worst[1]);
  row.passed = row.passed && all_pass && worst[0] <= 1.0 + 1e-8 && worst[1] <= 1.0 + 1e-8;
  row.note = std::to_string(meaningful) + " of " + std::to_string(draws) + " draws meet the hypothesis";
  r.lemmas.push_back(row);
}

void lemma_hardy(RatioReport& r, const LemmaContext& c) {
  const double s = 1.0, sigma = 0.5;
  const ScaleGrid g1 = c.scales;
  const ScaleGrid g2 = ScaleGrid::make(2 * g1.per_octave(), g1.octaves());
  auto power = [&](const ScaleGrid& g) {
    std::vector<double> e;
    for (double t : g.scales()) e.push_back(std::pow(t, sigma));
    return check_hardy(e, s, g).value;
  };
  auto bump = [&](const ScaleGrid& g) {
    std::vector<double> e;
    for (double t : g.scales()) e.push_back(std::exp(-8.0 * std::pow(std::log2(t) + 2.0, 2)));
    return check_hardy(e, s, g).value;
  };
  r.lemmas.push_back(make_row("hardy power", Digest().add("hardy-power").add(s).add(sigma).hex(), power(g1), power(g2)));
  r.lemmas.back().note = "refinement is K -> 2K";
  r.lemmas.push_back(make_row("hardy concentrated", Digest().add("hardy-bump").add(s).hex(), bump(g1), bump(g2)));
  r.lemmas.back().note = "refinement is K -> 2K";
}

void lemma_rtrick(RatioReport& r, const LemmaContext& c) {
  const double m = c.coarse.dim + 2.0;
  for (double rr : {1.0, 0.5}) {
    std::vector<double> values;
    for (double Nd : {1.0, 2.0, 4.0}) {
      const auto g0 = corpus_entry(c.coarse, c.cfg.seed(), "gauss");
      const auto g1 = corpus_entry(c.fine, c.cfg.seed(), "gauss");
      const double x = check_rtrick(g0, Nd, rr, m).value;
      const double y = check_rtrick(g1, Nd, rr, m).value;
      values.push_back(x);
      r.lemmas.push_back(make_row("rtrick r=" + fmt(rr) + " N=" + fmt(Nd),
                                  Digest().add("rtrick").add(g0.magnitudes()).add(rr).add(Nd).add(m).hex(), x, y));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    LemmaRow u = make_row("rtrick r=" + fmt(rr) + " N-uniformity", Digest().add("rtrick-u").add(rr).hex(),
                          *hi / *lo, *hi / *lo);
    u.passed = *hi / *lo <= 4.0;
    u.note = "max/min constant over N in {1,2,4}";
    r.lemmas.push_back(u);
  }
}

void lemma_eta(RatioReport& r, const LemmaContext& c, const std::string& which) {
  const auto pf = ExponentFamily::parse(c.cfg.get("lemma.p"));
  const auto qf = ExponentFamily::parse(c.cfg.get("lemma.q"));
  double values[2] = {0.0, 0.0};
  double m = 0.0;
  Digest d;
  d.add(which);
  for (int level = 0; level < 2; ++level) {
    const GridSpec& spec = level == 0 ? c.coarse : c.fine;
    const ExponentField p = pf.build(spec, ExponentRole::integrability);
    const ExponentField q = qf.build(spec, ExponentRole::integrability);
    if (level == 0) {
      m = spec.dim + estimate_clog(q.map([](double v) { return 1.0 / v; }, ExponentRole::integrability)) + 1.0;
      r.metadata[which + ".m"] = fmt(m);
    }
    const GridFunction f = corpus_entry(spec, c.cfg.seed(), "random-0");
    if (level == 0) d.add(f.magnitudes()).add(m);
    if (which == "eta-conv-discrete") {
      values[level] = check_eta_conv_discrete(dyadic_blocks(f), p, q, m).value;
    } else if (which == "eta-conv-continuous") {
      values[level] = check_eta_conv_continuous(scale_blocks(f, c.scales), p, q, m, c.scales).value;
    } else {
      values[level] = check_averaged(scale_blocks(f, c.scales), p, q, m, c.scales, 0.25, 4.0).value;
    }
  }
  r.lemmas.push_back(make_row(which, d.hex(), values[0], values[1]));
}

void lemma_reproducing(RatioReport& r, const LemmaContext& c) {
  const double rr = 0.5;
  const double m = std::max<double>(c.coarse.dim, c.coarse.dim / rr) + 1.0;
  r.metadata["reproducing.r"] = fmt(rr);
  r.metadata["reproducing.m"] = fmt(m);
  for (const std::string name : {"gauss", "modulated-4", "random-0"}) {
    ReproducingConstants k[2];
    for (int level = 0; level < 2; ++level) {
      const GridSpec& spec = level == 0 ? c.coarse : c.fine;
      const KernelPair pair = build_continuous_pair(spec, c.scales);
      k[level] = check_reproducing_bounds(corpus_entry(spec, c.cfg.seed(), name), pair, rr, m);
    }
    const std::string dg = Digest().add("reproducing").add(name).add(rr).add(m).hex();
    r.lemmas.push_back(make_row("reproducing (i) " + name, dg, k[0].low.value, k[1].low.value));
    r.lemmas.push_back(make_row("reproducing (ii) " + name, dg, k[0].band.value, k[1].band.value));
  }
}

void lemma_rychkov(RatioReport& r, const LemmaContext& c) {
  const GridSpec s0 = GridSpec::make(c.coarse.dim, static_cast<std::size_t>(c.cfg.integer("lemma.rychkov_points")),
                                     c.cfg.number("lemma.rychkov_half_period"));
  const GridSpec s1 = refined(s0);
  const double Nw = 2.0;
  auto rho = [](const GridSpec& spec) {
    return GridFunction::sample(spec, [&](const Point& x) {
      return Complex(std::exp(-(x[0] * x[0] + (spec.dim == 2 ? x[1] * x[1] : 0.0)) / 32.0), 0.0);
    });
  };
  for (int M : {-1, 1, 3}) {
    const auto f0 = check_rychkov_decay(moment_kernel(M), rho(s0), M, Nw, c.scales);
    const auto f1 = check_rychkov_decay(moment_kernel(M), rho(s1), M, Nw, c.scales);
    LemmaRow row = make_row("rychkov M=" + std::to_string(M), Digest().add("rychkov").add(double(M)).add(Nw).hex(),
                            f0.slope, f1.slope);
    row.stable = std::abs(f0.slope - f1.slope) <= 0.05 * std::max(1.0, std::abs(f0.slope));
    row.passed = row.finite && row.stable && f0.slope >= M + 1 - 0.1 && f1.slope >= M + 1 - 0.1;
    row.note = "fitted slope of log D(t) against log t; need >= M+1-0.1";
    r.lemmas.push_back(row);
  }
}

RatioReport lemma_experiment(const std::string& id, const HarnessConfig& cfg) {
  const GridSpec spec = cfg.grid();
  const ScaleGrid scales = cfg.scales();
  RatioReport report;
  report.experiment = "lemma:" + id;
  report.threshold = cfg.number("lemma.threshold", 50.0);
  describe_run(report, cfg, spec, scales);
  const LemmaContext c{cfg, spec, refined(spec), scales};
  const std::vector<std::string> ids = id == "all" ? lemma_ids() : std::vector<std::string>{id};
  for (const auto& one : ids) {
    if (one == "transfer") lemma_transfer(report, c, false);
    else if (one == "transfer-r0") lemma_transfer(report, c, true);
    else if (one == "dzw") lemma_dzw(report, c);
    else if (one == "hardy") lemma_hardy(report, c);
    else if (one == "rtrick") lemma_rtrick(report, c);
    else if (one == "eta-conv-discrete" || one == "eta-conv-continuous" || one == "averaged") lemma_eta(report, c, one);
    else if (one == "reproducing") lemma_reproducing(report, c);
    else if (one == "rychkov") lemma_rychkov(report, c);
    else throw ConfigError("unknown lemma '" + one + "'");
  }
  return report;
}

}  // namespace

RatioReport run_experiment(const std::string& experiment, const HarnessConfig& cfg,
                           const std::vector<CorpusEntry>& corpus) {
  if (experiment.rfind("lemma:", 0) == 0) return lemma_experiment(experiment.substr(6), cfg);
  if (experiment == "modulation") return modulation_experiment(cfg);
  if (corpus.empty()) throw ConfigError("empty corpus");
  for (const auto& e : corpus)
    if (!(e.f.spec() == cfg.grid())) throw ConfigError("corpus entry '" + e.name + "' is on a different grid");
  if (experiment == "bessel-vs-discrete") return bessel_experiment(cfg, corpus);
  return norm_experiment(experiment, cfg, corpus);
}

RatioReport run_experiment(const std::string& experiment, const HarnessConfig& cfg) {
  const auto known = experiment_names();
  if (std::find(known.begin(), known.end(), experiment) == known.end())
    throw ConfigError("unknown experiment '" + experiment + "'");
  if (experiment.rfind("lemma:", 0) == 0 || experiment == "modulation")
    return run_experiment(experiment, cfg, {});
  return run_experiment(experiment, cfg, build_corpus(cfg.grid(), cfg.seed(), cfg.number("run.amplitude")));
}

}  // namespace varbesov
