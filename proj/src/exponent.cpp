#include "varbesov/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "varbesov/error.hpp"

namespace varbesov {

double omega(double p, double t) {
  if (!(p > 0.0)) throw std::invalid_argument("omega: exponent must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("omega: argument must be nonnegative");
  if (std::isinf(p)) return t <= 1.0 ? 0.0 : kInfinity;
  return std::pow(t, p);
}

ExponentField::ExponentField(GridSpec spec, std::vector<double> samples, ExponentRole role)
    : spec_(spec), role_(role), samples_(std::move(samples)) {
  if (samples_.size() != spec_.size())
    throw std::invalid_argument("exponent sample count does not match grid size");
  for (double v : samples_) {
    if (std::isnan(v)) throw std::invalid_argument("exponent samples must not be NaN");
    if (role_ == ExponentRole::smoothness && !std::isfinite(v))
      throw HypothesisError("smoothness exponent must be bounded");
    if (role_ == ExponentRole::integrability && !(v > 0.0))
      throw HypothesisError("integrability exponent must be positive (p- > 0)");
  }
  auto [lo, hi] = std::minmax_element(samples_.begin(), samples_.end());
  min_ = *lo;
  max_ = *hi;
  limit_ = samples_.front();
  clog_local_ = estimate_clog(*this);
}

ExponentField ExponentField::constant(const GridSpec& spec, double value, ExponentRole role) {
  return sample(spec, [value](const Point&) { return value; }, role);
}

ExponentField ExponentField::sample(const GridSpec& spec,
                                    const std::function<double(const Point&)>& fn,
                                    ExponentRole role) {
  std::vector<double> v(spec.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(spec.coordinate(i));
  ExponentField out(spec, std::move(v), role);
  out.generator_ = fn;
  return out;
}

ExponentField ExponentField::map(const std::function<double(double)>& fn,
                                 ExponentRole role) const {
  std::vector<double> v(samples_.size());
  std::transform(samples_.begin(), samples_.end(), v.begin(), fn);
  ExponentField out(spec_, std::move(v), role);
  if (generator_) {
    auto gen = generator_;
    out.generator_ = [gen, fn](const Point& x) { return fn(gen(x)); };
  }
  return out;
}

ExponentField ExponentField::resample(const GridSpec& other) const {
  if (!generator_) throw std::logic_error("exponent field has no generator to resample");
  return sample(other, generator_, role_);
}

namespace {

double clog_term(const ExponentField& g, std::size_t a, std::size_t b) {
  if (g[a] == g[b]) return 0.0;
  const double d = g.spec().periodic_distance(a, b);
  const double diff = std::abs(g[a] - g[b]);
  return diff * std::log(std::numbers::e + 1.0 / d);
}

}  // namespace

double estimate_clog(const ExponentField& g, std::uint64_t seed) {
  if (g.is_constant()) return 0.0;
  const GridSpec& spec = g.spec();
  const std::size_t size = g.size();
  double best = 0.0;
  if (spec.points <= 512 && size <= 4096) {
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = a + 1; b < size; ++b) best = std::max(best, clog_term(g, a, b));
    return best;
  }
  const std::size_t n = spec.points;
  for (std::size_t a = 0; a < size; ++a) {
    if (spec.dim == 1) {
      best = std::max(best, clog_term(g, a, (a + 1) % n));
    } else {
      const std::size_t r = a / n, c = a % n;
      best = std::max(best, clog_term(g, a, r * n + (c + 1) % n));
      best = std::max(best, clog_term(g, a, ((r + 1) % n) * n + c));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, size - 1);
  for (int k = 0; k < 100000; ++k) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a != b) best = std::max(best, clog_term(g, a, b));
  }
  return best;
}

ExponentFamily ExponentFamily::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto open = s.find('(');
  const auto close = s.rfind(')');
  if (open == std::string::npos || close != s.size() - 1 || open == 0)
    throw ConfigError("malformed exponent family: '" + text + "'");
  ExponentFamily fam;
  fam.kind = s.substr(0, open);
  fam.params.clear();
  std::stringstream body(s.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(body, item, ',')) {
    try {
      std::size_t used = 0;
      double v = item == "inf" ? kInfinity : std::stod(item, &used);
      if (item != "inf" && used != item.size()) throw std::invalid_argument(item);
      fam.params.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in exponent family '" + text + "'");
    }
  }
  std::size_t want = 0;
  if (fam.kind == "constant")
    want = 1;
  else if (fam.kind == "sine" || fam.kind == "bump")
    want = 3;
  else if (fam.kind == "step")
    want = 2;
  else
    throw ConfigError("unknown exponent family '" + fam.kind + "'");
  if (fam.params.size() != want)
    throw ConfigError("exponent family '" + fam.kind + "' takes " + std::to_string(want) +
                      " parameters");
  return fam;
}

std::string ExponentFamily::describe() const {
  std::ostringstream out;
  out << kind << '(';
  for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : "") << params[i];
  out << ')';
  return out.str();
}

double ExponentFamily::evaluate(const GridSpec& spec, const Point& x) const {
  const double L = spec.half_period;
  if (kind == "constant") return params[0];
  if (kind == "sine") {
    double v = std::sin(params[2] * std::numbers::pi * x[0] / L);
    if (spec.dim == 2) v *= std::cos(params[2] * std::numbers::pi * x[1] / L);
    return params[0] + params[1] * v;
  }
  if (kind == "bump") {
    const double r2 = (x[0] * x[0] + (spec.dim == 2 ? x[1] * x[1] : 0.0)) / (params[2] * params[2]);
    return params[0] + (r2 < 1.0 ? params[1] * std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0);
  }
  if (kind == "step") return x[0] < 0.0 ? params[0] : params[1];
  throw ConfigError("unknown exponent family '" + kind + "'");
}

ExponentField ExponentFamily::build(const GridSpec& spec, ExponentRole role) const {
  ExponentFamily self = *this;
  return ExponentField::sample(
      spec, [self, spec](const Point& x) { return self.evaluate(spec, x); }, role);
}

double ExponentFamily::upper_bound() const {
  if (kind == "constant") return params[0];
  if (kind == "sine") return params[0] + std::abs(params[1]);
  if (kind == "bump") return params[0] + std::max(0.0, params[1]);
  return std::max(params[0], params[1]);
}

double ExponentFamily::lower_bound() const {
  if (kind == "constant") return params[0];
  if (kind == "sine") return params[0] - std::abs(params[1]);
  if (kind == "bump") return params[0] + std::min(0.0, params[1]);
  return std::min(params[0], params[1]);
}

}  // namespace varbesov
