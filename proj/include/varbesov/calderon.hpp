#pragma once

#include <string>
#include <utility>
#include <vector>

#include "varbesov/grid.hpp"

namespace varbesov {

/// C-infinity step, 0 for x <= 0 and 1 for x >= 1.
double smooth_step(double x);          // built on exp(-1/x)
double smooth_step_square(double x);   // built on exp(-1/x^2)

using RadialTable = std::vector<std::pair<double, double>>;

/// Tabulate a radial profile at `points` equispaced radii in [0, r_max].
RadialTable tabulate(const RadialProfile& m, double r_max, std::size_t points = 4096);

enum class PairProfile {
  exp_inverse,         // transition built on exp(-1/x)
  exp_inverse_square,  // transition built on exp(-1/x^2)
};

/// Radial multipliers (Phi_hat, phi_hat) with supp phi_hat in [1/2, 2],
/// supp Phi_hat in [0, 2], and Phi_hat + sum_j w_j phi_hat(t_j .) = 1 on
/// |xi| <= scales.resolvable_radius().
struct KernelPair {
  std::string name;
  RadialProfile phi0_hat;
  RadialProfile phi_hat;
  ScaleGrid scales;
  double annulus_inner = 0.5;
  double annulus_outer = 2.0;
  double outer_radius = 2.0;
  /// max |1 - Phi_hat - sum_j w_j phi_hat(t_j xi)| over resolvable grid frequencies.
  double residual = 0.0;
};

/// Pair whose reproducing sum telescopes exactly on the scale grid.
/// With u = log2|xi| and G(u) = S((u + 1) / (2 - 1/K)):
///   phi_hat = (K / ln 2) (G(u) - G(u - 1/K)),  Phi_hat = 1 - (G(u) + G(u - 1/K)) / 2.
/// Also satisfies the continuous identity int_0^inf phi_hat(t xi) dt/t = 1.
/// Throws std::invalid_argument if `s` is not resolvable on `spec`.
KernelPair build_continuous_pair(const GridSpec& spec, const ScaleGrid& s,
                                 PairProfile profile = PairProfile::exp_inverse);

/// Alternate construction phi_hat = mu_hat eta_hat / c with mu_hat(r) = r^2 e^{1 - r^2}
/// and eta_hat a bump in log2|xi|. Phi_hat is the tail of the scale sum, so the
/// residual equals the Riemann-sum error of int phi_hat(t xi) dt/t. Throws
/// std::runtime_error when that residual exceeds 1e-6 (too few scales per octave).
KernelPair build_factored_pair(const GridSpec& spec, const ScaleGrid& s);

/// max residual of the reproducing identity over grid frequencies |xi| <= radius.
double reproducing_residual(const KernelPair& pair, const GridSpec& spec, double radius);

/// Psi = 1 on |xi| <= 1, 0 on |xi| >= 3/2;
/// psi_hat_0 = Psi, psi_hat_v(xi) = Psi(2^{-v} xi) - Psi(2^{1-v} xi).
struct DyadicFamily {
  int v_max = 0;
  RadialProfile psi0_hat;
  /// psi_hat_v for v >= 0 (v = 0 gives Psi itself).
  double psi_hat(int v, double r) const;
  RadialProfile profile(int v) const;
  /// Frequencies |xi| <= 2^{v_max} are reproduced exactly.
  double resolvable_radius() const;
  double residual = 0.0;
};

/// Largest v with 2^{v+1} <= Nyquist radius of `spec`.
int max_dyadic_level(const GridSpec& spec);
/// Throws std::invalid_argument if 2^{v_max+1} exceeds the Nyquist radius.
DyadicFamily build_dyadic(const GridSpec& spec, int v_max);
double dyadic_residual(const DyadicFamily& fam, const GridSpec& spec);

/// k_hat(xi) = (|xi|/eps)^{S+1} e^{1 - (|xi|/eps)^2}, k0_hat(xi) = e^{-(|xi|/(2 eps))^2}.
struct LocalMeansKernels {
  int S = 3;
  double epsilon = 1.0;
  RadialProfile k0_hat;
  RadialProfile k_hat;
  /// Throws HypothesisError unless alpha_max < S + 1.
  void require_moments(double alpha_max) const;
};

/// Throws std::invalid_argument for S < -1 or eps <= 0, and if 2 eps exceeds
/// the Nyquist radius of `spec`.
LocalMeansKernels build_local_means(int S, double epsilon, const GridSpec& spec);

/// Least-squares slope of log|m(r)| against log r over r in [r_lo, r_hi].
double fitted_exponent(const RadialProfile& m, double r_lo, double r_hi, int samples = 32);

}  // namespace varbesov
