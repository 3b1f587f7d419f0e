#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace varbesov {

using Complex = std::complex<double>;
using Point = std::array<double, 2>;

/// Uniform periodic grid on the torus [-L, L)^n, n in {1, 2}, with N points
/// per axis. Row-major ordering; in 2D the flat index is i0 * N + i1.
///
/// Frequency-side data is stored in FFT order: index k on an axis stands for
/// the wavenumber k for k < N/2 and k - N otherwise, i.e. xi = pi * k' / L
/// with k' in [-N/2, N/2).
struct GridSpec {
  int dim = 1;
  std::size_t points = 1024;
  double half_period = 16.0;

  /// Validated constructor: dim in {1,2}, points a power of two >= 16, L > 0.
  static GridSpec make(int dim, std::size_t points, double half_period);

  double spacing() const { return 2.0 * half_period / static_cast<double>(points); }
  std::size_t size() const { return dim == 1 ? points : points * points; }
  double cell_volume() const;
  double volume() const;
  /// Largest per-axis frequency magnitude on the grid, pi N / (2L).
  double nyquist_radius() const;

  Point coordinate(std::size_t index) const;
  Point frequency(std::size_t index) const;
  double frequency_radius(std::size_t index) const;
  /// Euclidean distance on the torus between two grid points.
  double periodic_distance(std::size_t a, std::size_t b) const;
  double periodic_norm(const Point& x) const;

  bool operator==(const GridSpec&) const = default;
};

enum class Side { spatial, frequency };

/// Complex samples on a GridSpec, either in space or in frequency.
class GridFunction {
 public:
  explicit GridFunction(GridSpec spec, Side side = Side::spatial);
  GridFunction(GridSpec spec, std::vector<Complex> values, Side side = Side::spatial);

  static GridFunction sample(const GridSpec& spec, const std::function<Complex(const Point&)>& fn);
  static GridFunction sample_frequency(const GridSpec& spec,
                                       const std::function<Complex(const Point&)>& fn);

  const GridSpec& spec() const { return spec_; }
  Side side() const { return side_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  std::vector<double> magnitudes() const;
  double max_abs() const;
  bool is_zero() const;

  GridFunction& operator*=(Complex c);
  GridFunction& operator+=(const GridFunction& other);

 private:
  GridSpec spec_;
  Side side_;
  std::vector<Complex> values_;
};

GridFunction operator*(Complex c, GridFunction f);
GridFunction operator+(GridFunction a, const GridFunction& b);

/// Discrete approximation of (2 pi)^{-n/2} \int e^{-i x.xi} f(x) dx at the grid
/// frequencies. `inverse_fourier` is its exact inverse.
GridFunction fourier(const GridFunction& f);
GridFunction inverse_fourier(const GridFunction& fhat);

/// Convolution with a kernel given by its transform: F^{-1}[(2 pi)^{n/2} fhat khat].
GridFunction convolve_kernel(const GridFunction& f, const GridFunction& khat);

using RadialProfile = std::function<double(double)>;

/// F^{-1}[m(scale |xi|) fhat] for a spectrum `fhat` and radial multiplier m.
GridFunction apply_radial(const GridFunction& fhat, const RadialProfile& m, double scale = 1.0);

/// h^n sum of the samples (trapezoid rule on the torus).
Complex integrate(const GridFunction& f);

/// eta_{t,m}(x) = t^{-n} (1 + |x|/t)^{-m}.
double eta(double t, double m, int dim, double r);

/// Periodised eta_{t,m}, each sample the average of eta over its grid cell so
/// the grid integral equals the continuous L1 norm. Requires m > n.
GridFunction eta_spatial(double t, double m, const GridSpec& spec);
GridFunction eta_hat(double t, double m, const GridSpec& spec);

/// Exact L1 norm of eta_{t,m} over R^n (independent of t).
double eta_mass(double m, int dim);

/// max |f| over the strip ||x||_inf >= 0.9 L, relative to max |f|.
double boundary_mass(const GridFunction& f);

/// Band-limited interpolation onto a grid with `factor` times as many points
/// per axis (zero padding in frequency).
GridFunction upsample(const GridFunction& f, std::size_t factor);

/// Geometric discretisation of t in (0, 1]: t_j = 2^{-j/K}, j = 0..JK, with
/// trapezoid weights ln2/K (halved at both ends) for \int dt/t.
class ScaleGrid {
 public:
  static ScaleGrid make(int per_octave, int octaves);

  int per_octave() const { return per_octave_; }
  int octaves() const { return octaves_; }
  std::size_t size() const { return scales_.size(); }
  double scale(std::size_t j) const { return scales_[j]; }
  double weight(std::size_t j) const { return weights_[j]; }
  std::span<const double> scales() const { return scales_; }
  std::span<const double> weights() const { return weights_; }
  double min_scale() const { return scales_.back(); }
  double weight_sum() const;
  /// Frequencies |xi| <= 2^{J-1} are fully covered by the band-pass scales.
  double resolvable_radius() const { return 0.5 / min_scale(); }
  /// Throws std::invalid_argument unless 2 / t_min <= grid Nyquist radius.
  void require_resolvable(const GridSpec& spec) const;

 private:
  ScaleGrid(int k, int j);
  int per_octave_;
  int octaves_;
  std::vector<double> scales_;
  std::vector<double> weights_;
};

}  // namespace varbesov
