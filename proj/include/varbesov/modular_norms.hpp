#pragma once

#include <span>
#include <vector>

#include "varbesov/exponent.hpp"
#include "varbesov/grid.hpp"

namespace varbesov {

/// Extended nonnegative value of a modular; +inf is representable.
using ModularValue = double;

/// h^n sum_x omega_{p(x)}(|f(x)|).
ModularValue modular_lp(const GridFunction& f, const ExponentField& p);
ModularValue modular_lp(std::span<const double> magnitude, const ExponentField& p);

/// inf{lambda > 0 : modular_lp(f / lambda, p) <= 1}, 0 for f = 0.
///
/// Root-finding runs on log lambda. The returned value always satisfies the
/// modular bound (it is the upper end of the final bracket, nudged outward by
/// 1e-11 relative) and is within 1e-10 relative of the infimum.
double luxemburg_norm(const GridFunction& f, const ExponentField& p);
double luxemburg_norm(std::span<const double> magnitude, const ExponentField& p);

/// log of the Luxemburg norm of exp(log_values) under exponent r, for a
/// measure with log cell volume `log_cell`. log_values may contain -inf
/// (zeros) and r may contain +inf. Returns -inf for the zero function.
double log_luxemburg(std::span<const double> log_values, std::span<const double> r,
                     double log_cell);

/// sum_v w_v || |g_v / mu|^{q(.)} ||_{p(.)/q(.)} for magnitudes g_v.
ModularValue mixed_modular(std::span<const std::vector<double>> magnitudes,
                           std::span<const double> weights, const ExponentField& p,
                           const ExponentField& q, double mu);

/// Luxemburg-type norm of the weighted mixed modular above. Requires q+ < inf
/// (HypothesisError otherwise). Empty or all-zero input gives 0.
double mixed_norm(std::span<const std::vector<double>> magnitudes, std::span<const double> weights,
                  const ExponentField& p, const ExponentField& q);

/// l^{q(.)}(L^{p(.)}) norm of a finite sequence (unit weights).
double mixed_norm_discrete(std::span<const GridFunction> fv, const ExponentField& p,
                           const ExponentField& q);

/// Continuous version: the sum over v becomes the dt/t quadrature of `s`.
/// `ft[j]` is the member at scale s.scale(j).
double mixed_norm_continuous(std::span<const GridFunction> ft, const ExponentField& p,
                             const ExponentField& q, const ScaleGrid& s);

}  // namespace varbesov
