#include "varbesov/besov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "varbesov/error.hpp"
#include "varbesov/modular_norms.hpp"

namespace varbesov {

namespace {

// Grid offsets sorted by periodic distance (in units of h); one per residue class.
struct OffsetTable {
  std::vector<std::array<int, 2>> offsets;
  std::vector<double> distance;
};

const OffsetTable& offsets_for(const GridSpec& spec) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::size_t>, std::unique_ptr<OffsetTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{spec.dim, spec.points}];
  if (slot) return *slot;
  auto table = std::make_unique<OffsetTable>();
  const int n = static_cast<int>(spec.points);
  std::vector<std::pair<double, std::array<int, 2>>> all;
  if (spec.dim == 1) {
    for (int k = -n / 2 + 1; k <= n / 2; ++k) all.push_back({std::abs(k), {k, 0}});
  } else {
    for (int a = -n / 2 + 1; a <= n / 2; ++a)
      for (int b = -n / 2 + 1; b <= n / 2; ++b) all.push_back({std::hypot(a, b), {a, b}});
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [d, o] : all) {
    table->offsets.push_back(o);
    table->distance.push_back(d);
  }
  slot = std::move(table);
  return *slot;
}

bool q_is_infinite(const ExponentField& q) { return std::isinf(q.range_min()); }

double aggregate(std::span<const std::vector<double>> mags, std::span<const double> weights,
                 const ExponentField& p, const ExponentField& q) {
  if (q_is_infinite(q)) {
    double best = 0.0;
    for (std::size_t j = 0; j < mags.size(); ++j)
      if (weights[j] > 0.0) best = std::max(best, luxemburg_norm(mags[j], p));
    return best;
  }
  return mixed_norm(mags, weights, p, q);
}

void require_peetre_exponent(const BesovParams& P) {
  const double bound = P.p.spec().dim / P.p.range_min();
  if (!(P.a > bound))
    throw HypothesisError("Peetre exponent a = " + std::to_string(P.a) + " must exceed n/p- = " +
                          std::to_string(bound));
}

template <typename K>
const K& kernels_as(const BesovParams& P, const char* what) {
  const K* k = std::get_if<K>(&P.kernels);
  if (!k) throw std::invalid_argument(std::string(what) + " needs different kernels");
  return *k;
}

std::vector<double> pointwise(const GridFunction& fhat, const RadialProfile& m, double t) {
  return apply_radial(fhat, m, t).magnitudes();
}

}  // namespace

void validate(const BesovParams& P) {
  const GridSpec& spec = P.alpha.spec();
  if (!(P.p.spec() == spec) || !(P.q.spec() == spec))
    throw std::invalid_argument("alpha, p and q must share one grid");
  if (P.alpha.role() != ExponentRole::smoothness)
    throw std::invalid_argument("alpha must be a smoothness exponent");
  if (P.p.role() != ExponentRole::integrability || P.q.role() != ExponentRole::integrability)
    throw std::invalid_argument("p and q must be integrability exponents");
  if (std::isinf(P.q.range_max()) && !q_is_infinite(P.q))
    throw HypothesisError("q must be either bounded or identically infinite");
  if (std::isinf(P.p.range_max()))
    throw HypothesisError("p+ < infinity required by the Besov evaluators");
}

std::vector<std::vector<double>> scale_magnitudes(const GridFunction& fhat, const RadialProfile& m,
                                                  std::span<const double> scales,
                                                  const ExponentField& alpha) {
  std::vector<std::vector<double>> out;
  out.reserve(scales.size());
  for (double t : scales) {
    std::vector<double> mag = pointwise(fhat, m, t);
    const double lt = std::log(t);
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] *= std::exp(-alpha[i] * lt);
    out.push_back(std::move(mag));
  }
  return out;
}

double besov_continuous(const GridFunction& f, const BesovParams& P) {
  validate(P);
  const KernelPair& pair = kernels_as<KernelPair>(P, "besov_continuous");
  if (f.is_zero()) return 0.0;
  const GridFunction fhat = fourier(f);
  const double low = luxemburg_norm(pointwise(fhat, pair.phi0_hat, 1.0), P.p);
  auto mags = scale_magnitudes(fhat, pair.phi_hat, pair.scales.scales(), P.alpha);
  return low + aggregate(mags, pair.scales.weights(), P.p, P.q);
}

double besov_discrete(const GridFunction& f, const BesovParams& P) {
  validate(P);
  const DyadicFamily& fam = kernels_as<DyadicFamily>(P, "besov_discrete");
  if (f.is_zero()) return 0.0;
  const GridFunction fhat = fourier(f);
  std::vector<std::vector<double>> mags;
  for (int v = 0; v <= fam.v_max; ++v) {
    std::vector<double> mag = pointwise(fhat, fam.profile(v), 1.0);
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] *= std::exp2(v * P.alpha[i]);
    mags.push_back(std::move(mag));
  }
  std::vector<double> w(mags.size(), 1.0);
  return aggregate(mags, w, P.p, P.q);
}

std::vector<double> peetre_sweep(const GridSpec& spec, std::span<const double> G, double t, double a,
                                 PeetreOptions opts) {
  if (!(a > 0.0)) throw std::invalid_argument("Peetre exponent must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("scale must be positive");
  if (G.size() != spec.size()) throw std::invalid_argument("size mismatch");
  const OffsetTable& table = offsets_for(spec);
  const double h = spec.spacing();
  std::vector<double> weight(table.distance.size());
  for (std::size_t k = 0; k < weight.size(); ++k)
    weight[k] = std::pow(1.0 + table.distance[k] * h / t, -a);
  const double gmax = *std::max_element(G.begin(), G.end());
  const int n = static_cast<int>(spec.points);
  std::vector<double> out(G.size(), 0.0);
  if (gmax == 0.0) return out;
  for (std::size_t x = 0; x < G.size(); ++x) {
    const int r = spec.dim == 1 ? static_cast<int>(x) : static_cast<int>(x / spec.points);
    const int c = spec.dim == 1 ? 0 : static_cast<int>(x % spec.points);
    double best = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) {
      if (!opts.exact && weight[k] * gmax <= best) break;
      const auto& o = table.offsets[k];
      std::size_t y;
      if (spec.dim == 1) {
        y = static_cast<std::size_t>(((r + o[0]) % n + n) % n);
      } else {
        y = static_cast<std::size_t>(((r + o[0]) % n + n) % n) * spec.points +
            static_cast<std::size_t>(((c + o[1]) % n + n) % n);
      }
      best = std::max(best, G[y] * weight[k]);
    }
    out[x] = best;
  }
  return out;
}

GridFunction peetre_maximal(const GridFunction& f, double t, double a, const ExponentField& alpha,
                            const RadialProfile& kernel, PeetreOptions opts) {
  if (!(alpha.spec() == f.spec())) throw std::invalid_argument("alpha lives on a different grid");
  const std::array<double, 1> scale{t};
  auto G = scale_magnitudes(fourier(f), kernel, scale, alpha).front();
  auto out = peetre_sweep(f.spec(), G, t, a, opts);
  std::vector<Complex> values(out.begin(), out.end());
  return GridFunction(f.spec(), std::move(values));
}

namespace {

double maximal_norm(const GridFunction& f, const BesovParams& P, const RadialProfile& low_pass,
                    const RadialProfile& band, const ScaleGrid& scales, PeetreOptions opts) {
  const GridSpec& spec = f.spec();
  const GridFunction fhat = fourier(f);
  const auto low = peetre_sweep(spec, pointwise(fhat, low_pass, 1.0), 1.0, P.a, opts);
  const double first = luxemburg_norm(low, P.p);
  auto mags = scale_magnitudes(fhat, band, scales.scales(), P.alpha);
  for (std::size_t j = 0; j < mags.size(); ++j)
    mags[j] = peetre_sweep(spec, mags[j], scales.scale(j), P.a, opts);
  return first + aggregate(mags, scales.weights(), P.p, P.q);
}

}  // namespace

double besov_peetre(const GridFunction& f, const BesovParams& P, PeetreOptions opts) {
  validate(P);
  require_peetre_exponent(P);
  const KernelPair& pair = kernels_as<KernelPair>(P, "besov_peetre");
  if (f.is_zero()) return 0.0;
  return maximal_norm(f, P, pair.phi0_hat, pair.phi_hat, pair.scales, opts);
}

double besov_local_means(const GridFunction& f, const BesovParams& P, PeetreOptions opts) {
  validate(P);
  const LocalMeansKernels& k = kernels_as<LocalMeansKernels>(P, "besov_local_means");
  k.require_moments(P.alpha.range_max());
  require_peetre_exponent(P);
  if (f.is_zero()) return 0.0;
  return maximal_norm(f, P, k.k0_hat, k.k_hat, P.scale, opts);
}

double bessel_potential_norm(const GridFunction& f, double s) {
  const GridFunction fhat = fourier(f);
  const GridSpec& spec = f.spec();
  double sum = 0.0;
  for (std::size_t i = 0; i < fhat.size(); ++i) {
    const double r = spec.frequency_radius(i);
    sum += std::pow(1.0 + r * r, s) * std::norm(fhat[i]);
  }
  return std::sqrt(sum * std::pow(std::numbers::pi / spec.half_period, spec.dim));
}

}  // namespace varbesov
