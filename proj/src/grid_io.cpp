#include "varbesov/grid_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace varbesov {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary grid files are written on little-endian hosts only");

template <typename T>
void put(std::ostream& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw std::runtime_error("truncated binary grid file");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_csv(std::ostream& out, const GridFunction& f) {
  const GridSpec& spec = f.spec();
  out << (spec.dim == 1 ? "x,re,im\n" : "x,y,re,im\n");
  out << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    Point x = spec.coordinate(i);
    out << x[0] << ',';
    if (spec.dim == 2) out << x[1] << ',';
    out << f[i].real() << ',' << f[i].imag() << '\n';
  }
}

GridFunction read_csv(std::istream& in, int dim, double half_period) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cols;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    if (cols.size() != static_cast<std::size_t>(dim) + 2)
      throw std::runtime_error("bad CSV row: " + line);
    values.emplace_back(cols[dim], cols[dim + 1]);
  }
  std::size_t n = values.size();
  if (dim == 2) n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  GridSpec spec = GridSpec::make(dim, n, half_period);
  return GridFunction(spec, std::move(values));
}

void write_binary(std::ostream& out, const GridFunction& f) {
  const GridSpec& spec = f.spec();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(spec.dim));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(spec.points));
  put<double>(out, spec.half_period);
  for (const auto& v : f.values()) {
    put<float>(out, static_cast<float>(v.real()));
    put<float>(out, static_cast<float>(v.imag()));
  }
}

GridFunction read_binary(std::istream& in) {
  const auto dim = get<std::uint32_t>(in);
  const auto points = get<std::uint32_t>(in);
  const auto half_period = get<double>(in);
  GridSpec spec = GridSpec::make(static_cast<int>(dim), points, half_period);
  std::vector<Complex> values(spec.size());
  for (auto& v : values) {
    const float re = get<float>(in);
    const float im = get<float>(in);
    v = Complex(re, im);
  }
  return GridFunction(spec, std::move(values));
}

void save(const std::string& path, const GridFunction& f) {
  const bool csv = ends_with(path, ".csv");
  std::ofstream out(path, csv ? std::ios::out : std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (csv)
    write_csv(out, f);
  else
    write_binary(out, f);
}

GridFunction load(const std::string& path, int dim, double half_period) {
  const bool csv = ends_with(path, ".csv");
  std::ifstream in(path, csv ? std::ios::in : std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return csv ? read_csv(in, dim, half_period) : read_binary(in);
}

}  // namespace varbesov
