#ifndef BMOLAB_IO_HPP
#define BMOLAB_IO_HPP

#include <iosfwd>
#include <string>

#include "bmolab/coefficients.hpp"
#include "bmolab/grid.hpp"

namespace bmolab {

// GridFunction file layout, bit-exact round trip guaranteed.
//
// Binary (.gfn): magic "GFN1", then little-endian
//   i64 lo_num, i64 hi_num, i32 level, i32 resolution_log2, i32 dimension,
//   f64 exponent, then cells*dimension raw f64 samples (cell-major).
//
// CSV (.csv): header line "# gridfunction lo hi level L d r" with hexfloat r,
//   then one row per cell of hexfloat samples.  Hexfloat keeps the round trip
//   bit-exact through text.

void write_gridfunction(std::ostream& os, const GridFunction& f);
GridFunction read_gridfunction(std::istream& is);
void write_gridfunction_file(const std::string& path, const GridFunction& f);
GridFunction read_gridfunction_file(const std::string& path);

void write_gridfunction_csv(std::ostream& os, const GridFunction& f);
GridFunction read_gridfunction_csv(std::istream& is);

// Coefficient arrays travel as JSON: {"d":..,"r":..,"provenance":..,
//   "entries":[{"j":..,"k":..,"v":[..]},...]}.
std::string coefficient_array_to_json(const CoefficientArray& a);
CoefficientArray coefficient_array_from_json(const std::string& text);
void write_coefficient_array_file(const std::string& path, const CoefficientArray& a);
CoefficientArray read_coefficient_array_file(const std::string& path);

}  // namespace bmolab

#endif
