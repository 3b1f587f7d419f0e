#pragma once

#include <iosfwd>
#include <string>

#include "varbesov/grid.hpp"

namespace varbesov {

// CSV layout: one header line, then "x[,y],re,im" per sample in row-major order.
void write_csv(std::ostream& out, const GridFunction& f);
GridFunction read_csv(std::istream& in, int dim, double half_period);

// Binary layout, little endian: uint32 n, uint32 N, float64 L, then N^n
// complex64 samples (float32 re, float32 im), row-major. Single precision on
// disk, so a round trip is exact only to ~1e-7 relative.
void write_binary(std::ostream& out, const GridFunction& f);
GridFunction read_binary(std::istream& in);

void save(const std::string& path, const GridFunction& f);
GridFunction load(const std::string& path, int dim = 1, double half_period = 16.0);

}  // namespace varbesov
