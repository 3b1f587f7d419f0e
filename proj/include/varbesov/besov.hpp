#pragma once

#include <variant>
#include <vector>

#include "varbesov/calderon.hpp"
#include "varbesov/exponent.hpp"
#include "varbesov/grid.hpp"

namespace varbesov {

using Kernels = std::variant<KernelPair, DyadicFamily, LocalMeansKernels>;

/// alpha (smoothness), p and q (integrability) on one grid; `a` is the Peetre
/// exponent, `scale` the dt/t quadrature used by the continuous evaluators.
/// q may be identically +inf (sup over scales); a partially infinite q is rejected.
struct BesovParams {
  ExponentField alpha;
  ExponentField p;
  ExponentField q;
  double a = 0.0;
  ScaleGrid scale;
  Kernels kernels;
};

struct PeetreOptions {
  /// Disable the pruned sweep and scan every grid point.
  bool exact = false;
};

/// Throws HypothesisError / std::invalid_argument when the fields are
/// inconsistent (different grids, wrong roles, partially infinite q).
void validate(const BesovParams& P);

/// ||Phi * f||_p + || (t^{-alpha} phi_t * f)_t ||_{l^q(L^p)} over the scale grid of the pair.
double besov_continuous(const GridFunction& f, const BesovParams& P);

/// || (2^{v alpha} psi_v * f)_{v = 0..v_max} ||_{l^q(L^p)}.
double besov_discrete(const GridFunction& f, const BesovParams& P);

/// Peetre maximal function max_y w(y) |k_t * f(y)| / (1 + |x - y| / t)^a with
/// w(y) = t^{-alpha(y)}, sup over grid points y (periodic distance).
GridFunction peetre_maximal(const GridFunction& f, double t, double a, const ExponentField& alpha,
                            const RadialProfile& kernel, PeetreOptions opts = {});

/// Same sweep on precomputed values G(y) >= 0:
/// out(x) = max_y G(y) (1 + d(x, y)/t)^{-a}.
std::vector<double> peetre_sweep(const GridSpec& spec, std::span<const double> G, double t, double a,
                                 PeetreOptions opts = {});

/// ||Phi^{*,a} f||_p + || (phi_t^{*,a} t^{-alpha} f)_t ||_{l^q(L^p)}. Requires a > n / p-.
double besov_peetre(const GridFunction& f, const BesovParams& P, PeetreOptions opts = {});

/// ||k0^{*,a} f||_p + || (k_t^{*,a} t^{-alpha} f)_t ||_{l^q(L^p)} over P.scale.
/// Requires a > n / p- and alpha+ < S + 1.
double besov_local_means(const GridFunction& f, const BesovParams& P, PeetreOptions opts = {});

/// ||(1 + |xi|^2)^{s/2} f_hat||_2 by frequency quadrature.
double bessel_potential_norm(const GridFunction& f, double s);

/// t^{-alpha(x)} |F^{-1}[m(t xi) f_hat](x)| for each scale t.
std::vector<std::vector<double>> scale_magnitudes(const GridFunction& fhat, const RadialProfile& m,
                                                  std::span<const double> scales,
                                                  const ExponentField& alpha);

}  // namespace varbesov
