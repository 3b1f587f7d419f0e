#pragma once

#include <span>
#include <vector>

#include "varbesov/calderon.hpp"
#include "varbesov/exponent.hpp"
#include "varbesov/grid.hpp"

namespace varbesov {

/// Empirical constant of one inequality on the supplied inputs.
struct LemmaConstant {
  double value = 0.0;
  /// Both sides vanish identically (e.g. zero input); value is 0.
  bool vacuous = false;
  /// The lemma's hypothesis holds for the inputs (as far as the grid can tell).
  bool hypothesis_met = true;
};

/// eta_{t,m} * g on the torus, for real g (nonnegative in, nonnegative out).
std::vector<double> eta_convolve(const GridSpec& spec, std::span<const double> g, double t, double m);

/// max over grid pairs of t^{alpha(y) - alpha(x)} (1 + d(x,y)/t)^{-R}, i.e. the
/// ratio t^{-alpha(x)} eta_{t,m+R}(x-y) / (t^{-alpha(y)} eta_{t,m}(x-y)).
/// hypothesis_met is false when R < estimate_clog(alpha); the value is still computed.
LemmaConstant check_transfer(const ExponentField& alpha, double t, double m, double R);

/// ||f||_p^{q-} / || |f|^{q} ||_{p/q}; passes when <= 1 + 1e-8.
/// hypothesis_met is false when || |f|^{q} ||_{p/q} < 1 (the lemma says nothing then).
struct DzwResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool hypothesis_met = true;
  bool passed = true;
};
DzwResult check_dzw(const GridFunction& f, const ExponentField& p, const ExponentField& q);

/// eta_t = t^s int_t^1 tau^{-s} eps_tau dtau/tau and delta_t = t^{-s} int_0^t tau^s eps_tau dtau/tau
/// on the scale grid (the lower limit 0 becomes t_min);
/// returns (int eta dt/t + int delta dt/t) / int eps dt/t.
LemmaConstant check_hardy(std::span<const double> eps, double s, const ScaleGrid& grid);

/// max_x |theta_N * omega_N * g(x)| / (eta_{1/N, m} * |omega_N * g|^r (x))^{1/r} with
/// theta_hat = e^{-|xi|^2} and omega_hat = Psi(1.5 |xi|) (support in the unit ball).
LemmaConstant check_rtrick(const GridFunction& g, double N_dil, double r, double m);

/// ||(eta_{2^-v,m} * |f_v|)_v|| / ||(f_v)_v|| in l^{q}(L^{p}).
/// Throws HypothesisError unless m > n + clog(1/q).
LemmaConstant check_eta_conv_discrete(std::span<const GridFunction> fv, const ExponentField& p,
                                      const ExponentField& q, double m);
/// Continuous analogue over the scale grid (f_t[j] lives at scale s.scale(j)).
LemmaConstant check_eta_conv_continuous(std::span<const GridFunction> ft, const ExponentField& p,
                                        const ExponentField& q, double m, const ScaleGrid& s);

/// g_t = int_{a t}^{b t} eta_{tau,m} * |f_tau| dtau/tau on the scale grid (tau restricted to
/// [t_min, 1], trapezoid weights on the covered grid points).
std::vector<std::vector<double>> averaged_family(std::span<const GridFunction> ft, double m,
                                                 const ScaleGrid& s, double a, double b);
/// ||(g_t)|| / ||(f_t)|| for the family above. Requires 0 < a < b and m > n + clog(1/q).
LemmaConstant check_averaged(std::span<const GridFunction> ft, const ExponentField& p,
                             const ExponentField& q, double m, const ScaleGrid& s, double a,
                             double b);

/// Constants of the two pointwise bounds from the reproducing formula:
///  (i)  |theta * f|^r <= c eta_{1,mr} * |Phi * f|^r + c int_{1/4}^1 eta_{1,mr} * |phi_tau * f|^r dtau/tau
///       with theta_hat = Psi(0.75 |xi|) (support in |xi| <= 2);
///  (ii) |omega_t * f|^r <= c eta_{1,mr} * |Phi * f|^r + c int_{t/4}^{min(1,4t)} eta_{tau,mr} * |phi_tau * f|^r dtau/tau
///       with omega_hat = Psi(|xi|) - Psi(2|xi|) (support in 1/2 <= |xi| <= 2), max over grid t.
/// Requires m > max(n, n/r).
struct ReproducingConstants {
  LemmaConstant low;
  LemmaConstant band;
};
ReproducingConstants check_reproducing_bounds(const GridFunction& f, const KernelPair& pair, double r,
                                              double m);

/// D(t) = sup_z |F^{-1}[mu_hat(t xi) rho_hat](z)| (1 + |z|)^{N_w} on the scale grid and the
/// least-squares slope of log D against log t. `vacuous` when rho = 0.
struct RychkovFit {
  std::vector<double> scales;
  std::vector<double> decay;
  double slope = 0.0;
  bool vacuous = false;
};
RychkovFit check_rychkov_decay(const RadialProfile& mu_hat, const GridFunction& rho, int M,
                               double N_w, const ScaleGrid& s);

/// mu_hat(xi) = |xi|^{M+1} e^{-|xi|^2 / 2}: M+1 vanishing moments.
RadialProfile moment_kernel(int M);

/// |a - b| / max(|a|, |b|) < tol (two zeros count as stable).
bool is_stable(double a, double b, double tol = 0.05);

}  // namespace varbesov
