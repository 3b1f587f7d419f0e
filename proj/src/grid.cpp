#include "varbesov/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace varbesov {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW planning is not thread-safe; execution with fftw_execute_dft on
// fftw_malloc'd buffers is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(dim, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::size_t total = dim == 1 ? n : n * n;
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan plan = dim == 1
                         ? fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE)
                         : fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf, buf,
                                            sign, FFTW_ESTIMATE);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

void run_fft(const GridSpec& spec, std::vector<Complex>& data, int sign) {
  fftw_plan plan = PlanCache::instance().get(spec.dim, spec.points, sign);
  fftw_complex* buf = fftw_alloc_complex(data.size());
  std::copy(data.begin(), data.end(), reinterpret_cast<Complex*>(buf));
  fftw_execute_dft(plan, buf, buf);
  std::copy(reinterpret_cast<Complex*>(buf), reinterpret_cast<Complex*>(buf) + data.size(),
            data.begin());
  fftw_free(buf);
}

// (-1)^(k0 + k1): phase from the grid starting at x = -L.
double parity(const GridSpec& spec, std::size_t index) {
  std::size_t k = spec.dim == 1 ? index : index / spec.points + index % spec.points;
  return (k % 2 == 0) ? 1.0 : -1.0;
}

long signed_wavenumber(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

void require_same_spec(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("grid spec mismatch");
}

}  // namespace

GridSpec GridSpec::make(int dim, std::size_t points, double half_period) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
  if (points < 16 || !is_power_of_two(points))
    throw std::invalid_argument("points per axis must be a power of two >= 16");
  if (!(half_period > 0.0) || !std::isfinite(half_period))
    throw std::invalid_argument("half period must be positive");
  return GridSpec{dim, points, half_period};
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

double GridSpec::volume() const { return std::pow(2.0 * half_period, dim); }

double GridSpec::nyquist_radius() const {
  return kPi * static_cast<double>(points) / (2.0 * half_period);
}

Point GridSpec::coordinate(std::size_t index) const {
  const double h = spacing();
  if (dim == 1) return {-half_period + static_cast<double>(index) * h, 0.0};
  return {-half_period + static_cast<double>(index / points) * h,
          -half_period + static_cast<double>(index % points) * h};
}

Point GridSpec::frequency(std::size_t index) const {
  const double dk = kPi / half_period;
  if (dim == 1) return {dk * static_cast<double>(signed_wavenumber(index, points)), 0.0};
  return {dk * static_cast<double>(signed_wavenumber(index / points, points)),
          dk * static_cast<double>(signed_wavenumber(index % points, points))};
}

double GridSpec::frequency_radius(std::size_t index) const {
  Point xi = frequency(index);
  return std::hypot(xi[0], xi[1]);
}

double GridSpec::periodic_norm(const Point& x) const {
  const double period = 2.0 * half_period;
  auto wrap = [&](double d) {
    d = std::fmod(std::abs(d), period);
    return std::min(d, period - d);
  };
  return dim == 1 ? wrap(x[0]) : std::hypot(wrap(x[0]), wrap(x[1]));
}

double GridSpec::periodic_distance(std::size_t a, std::size_t b) const {
  const double h = spacing();
  auto axis = [&](std::size_t i, std::size_t j) {
    std::size_t d = i > j ? i - j : j - i;
    return static_cast<double>(std::min(d, points - d)) * h;
  };
  if (dim == 1) return axis(a, b);
  return std::hypot(axis(a / points, b / points), axis(a % points, b % points));
}

GridFunction::GridFunction(GridSpec spec, Side side)
    : spec_(spec), side_(side), values_(spec.size(), Complex{}) {}

GridFunction::GridFunction(GridSpec spec, std::vector<Complex> values, Side side)
    : spec_(spec), side_(side), values_(std::move(values)) {
  if (values_.size() != spec_.size())
    throw std::invalid_argument("sample count does not match grid size");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("grid function samples must be finite");
}

GridFunction GridFunction::sample(const GridSpec& spec,
                                  const std::function<Complex(const Point&)>& fn) {
  GridFunction out(spec, Side::spatial);
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = fn(spec.coordinate(i));
  return out;
}

GridFunction GridFunction::sample_frequency(const GridSpec& spec,
                                            const std::function<Complex(const Point&)>& fn) {
  GridFunction out(spec, Side::frequency);
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = fn(spec.frequency(i));
  return out;
}

std::vector<double> GridFunction::magnitudes() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(),
                 [](const Complex& z) { return std::abs(z); });
  return out;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Complex& z) { return z == Complex{}; });
}

GridFunction& GridFunction::operator*=(Complex c) {
  for (auto& v : values_) v *= c;
  return *this;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_spec(spec_, other.spec_);
  if (side_ != other.side_) throw std::invalid_argument("cannot add spatial and frequency data");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction operator*(Complex c, GridFunction f) {
  f *= c;
  return f;
}

GridFunction operator+(GridFunction a, const GridFunction& b) {
  a += b;
  return a;
}

GridFunction fourier(const GridFunction& f) {
  const GridSpec& spec = f.spec();
  std::vector<Complex> data(f.values().begin(), f.values().end());
  run_fft(spec, data, FFTW_FORWARD);
  const double scale = spec.cell_volume() * std::pow(2.0 * kPi, -0.5 * spec.dim);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= scale * parity(spec, i);
  return GridFunction(spec, std::move(data), Side::frequency);
}

GridFunction inverse_fourier(const GridFunction& fhat) {
  const GridSpec& spec = fhat.spec();
  std::vector<Complex> data(fhat.values().begin(), fhat.values().end());
  const double scale = 1.0 / (spec.cell_volume() * std::pow(2.0 * kPi, -0.5 * spec.dim) *
                              static_cast<double>(spec.size()));
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= scale * parity(spec, i);
  run_fft(spec, data, FFTW_BACKWARD);
  return GridFunction(spec, std::move(data), Side::spatial);
}

GridFunction convolve_kernel(const GridFunction& f, const GridFunction& khat) {
  require_same_spec(f.spec(), khat.spec());
  GridFunction fhat = fourier(f);
  const double factor = std::pow(2.0 * kPi, 0.5 * f.spec().dim);
  for (std::size_t i = 0; i < fhat.size(); ++i) fhat[i] *= factor * khat[i];
  return inverse_fourier(fhat);
}

GridFunction apply_radial(const GridFunction& fhat, const RadialProfile& m, double scale) {
  GridFunction out = fhat;
  const GridSpec& spec = fhat.spec();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == Complex{}) continue;
    out[i] *= m(scale * spec.frequency_radius(i));
  }
  return inverse_fourier(out);
}

Complex integrate(const GridFunction& f) {
  Complex sum{};
  for (const auto& v : f.values()) sum += v;
  return sum * f.spec().cell_volume();
}

double eta(double t, double m, int dim, double r) {
  return std::pow(t, -dim) * std::pow(1.0 + r / t, -m);
}

double eta_mass(double m, int dim) {
  if (m <= dim) throw std::invalid_argument("eta_{t,m} is integrable only for m > n");
  if (dim == 1) return 2.0 / (m - 1.0);
  return 2.0 * kPi / ((m - 1.0) * (m - 2.0));
}

namespace {

// Antiderivative of eta_{t,m} on the line, odd, F(0) = 0.
double eta_antiderivative_1d(double t, double m, double z) {
  double v = (1.0 - std::pow(1.0 + std::abs(z) / t, 1.0 - m)) / (m - 1.0);
  return z < 0 ? -v : v;
}

// eta_{t,m} mass outside the ball of radius R in R^n.
double eta_tail_mass(double t, double m, int dim, double radius) {
  const double u = 1.0 + radius / t;
  if (dim == 1) return 2.0 * std::pow(u, 1.0 - m) / (m - 1.0);
  return 2.0 * kPi * (std::pow(u, 2.0 - m) / (m - 2.0) - std::pow(u, 1.0 - m) / (m - 1.0));
}

// 4-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussNodes{-0.8611363115940526, -0.3399810435848563,
                                            0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussWeights{0.3478548451374538, 0.6521451548625461,
                                              0.6521451548625461, 0.3478548451374538};

double cell_average_2d(double t, double m, double cx, double cy, double h) {
  // Near the cusp at the origin the cell is split into sub-cells.
  const double r_center = std::hypot(cx, cy);
  const int splits = r_center < 2.5 * h ? 8 : (r_center < 8.0 * h ? 2 : 1);
  const double sub = h / splits;
  double sum = 0.0;
  for (int a = 0; a < splits; ++a) {
    for (int b = 0; b < splits; ++b) {
      const double x0 = cx - 0.5 * h + (a + 0.5) * sub;
      const double y0 = cy - 0.5 * h + (b + 0.5) * sub;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          const double x = x0 + 0.5 * sub * kGaussNodes[i];
          const double y = y0 + 0.5 * sub * kGaussNodes[j];
          sum += kGaussWeights[i] * kGaussWeights[j] * eta(t, m, 2, std::hypot(x, y));
        }
    }
  }
  return sum / (4.0 * splits * splits);
}

}  // namespace

GridFunction eta_spatial(double t, double m, const GridSpec& spec) {
  if (!(t > 0.0)) throw std::invalid_argument("eta scale must be positive");
  if (!(m > spec.dim)) throw std::invalid_argument("eta_{t,m} requires m > n");
  const double h = spec.spacing();
  const double period = 2.0 * spec.half_period;
  GridFunction out(spec);
  if (spec.dim == 1) {
    constexpr int images = 16;
    const double tail =
        eta_tail_mass(t, m, 1, (2.0 * images + 1.0) * spec.half_period) / period;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double x = spec.coordinate(i)[0];
      double sum = 0.0;
      for (int k = -images; k <= images; ++k) {
        const double c = x + period * k;
        sum += eta_antiderivative_1d(t, m, c + 0.5 * h) - eta_antiderivative_1d(t, m, c - 0.5 * h);
      }
      out[i] = sum / h + tail;
    }
    return out;
  }
  constexpr int images = 2;
  // Square of images replaced by the disk of equal area for the far tail.
  const double equivalent_radius = (2.0 * images + 1.0) * period / std::sqrt(kPi);
  const double tail = eta_tail_mass(t, m, 2, equivalent_radius) / (period * period);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point x = spec.coordinate(i);
    double sum = 0.0;
    for (int a = -images; a <= images; ++a)
      for (int b = -images; b <= images; ++b)
        sum += cell_average_2d(t, m, x[0] + period * a, x[1] + period * b, h);
    out[i] = sum + tail;
  }
  return out;
}

GridFunction eta_hat(double t, double m, const GridSpec& spec) {
  return fourier(eta_spatial(t, m, spec));
}

double boundary_mass(const GridFunction& f) {
  const double peak = f.max_abs();
  if (peak == 0.0) return 0.0;
  const GridSpec& spec = f.spec();
  const double edge = 0.9 * spec.half_period;
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Point x = spec.coordinate(i);
    const double r = spec.dim == 1 ? std::abs(x[0]) : std::max(std::abs(x[0]), std::abs(x[1]));
    if (r >= edge) m = std::max(m, std::abs(f[i]));
  }
  return m / peak;
}

GridFunction upsample(const GridFunction& f, std::size_t factor) {
  if (factor == 0 || !is_power_of_two(factor))
    throw std::invalid_argument("upsampling factor must be a power of two");
  const GridSpec& coarse = f.spec();
  const GridSpec fine = GridSpec::make(coarse.dim, coarse.points * factor, coarse.half_period);
  const GridFunction fhat = fourier(f);
  GridFunction fine_hat(fine, Side::frequency);
  const std::size_t n = coarse.points;
  const std::size_t nf = fine.points;
  auto map_axis = [&](std::size_t k) {
    long w = signed_wavenumber(k, n);
    return static_cast<std::size_t>(w < 0 ? w + static_cast<long>(nf) : w);
  };
  for (std::size_t i = 0; i < fhat.size(); ++i) {
    std::size_t target = coarse.dim == 1 ? map_axis(i) : map_axis(i / n) * nf + map_axis(i % n);
    fine_hat[target] = fhat[i];
  }
  return inverse_fourier(fine_hat);
}

ScaleGrid::ScaleGrid(int k, int j) : per_octave_(k), octaves_(j) {
  const std::size_t count = static_cast<std::size_t>(k) * static_cast<std::size_t>(j) + 1;
  scales_.resize(count);
  weights_.assign(count, std::numbers::ln2 / k);
  for (std::size_t i = 0; i < count; ++i)
    scales_[i] = std::exp2(-static_cast<double>(i) / static_cast<double>(k));
  weights_.front() *= 0.5;
  weights_.back() *= 0.5;
}

ScaleGrid ScaleGrid::make(int per_octave, int octaves) {
  if (per_octave < 1) throw std::invalid_argument("scales per octave must be >= 1");
  if (octaves < 1) throw std::invalid_argument("octave count must be >= 1");
  return ScaleGrid(per_octave, octaves);
}

double ScaleGrid::weight_sum() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

void ScaleGrid::require_resolvable(const GridSpec& spec) const {
  if (2.0 / min_scale() > spec.nyquist_radius())
    throw std::invalid_argument("smallest scale 2^-" + std::to_string(octaves_) +
                                " is not resolvable on this grid (need 2/t_min <= pi N / 2L)");
}

}  // namespace varbesov
