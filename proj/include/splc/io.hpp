#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "splc/coarsen.hpp"
#include "splc/galerkin.hpp"
#include "splc/spline.hpp"

namespace splc {

/// Spline JSON document: {"degree": p, "knots": [...], "coefficients": [...]}.
/// Numbers round-trip exactly to binary64.
std::string spline_to_json(const Spline& s);
Spline spline_from_json(const std::string& text);

Spline read_spline_file(const std::string& path);
void write_spline_file(const Spline& s, const std::string& path);

/// Strictly increasing samples (x_i, y_i).
struct SampleSet {
  std::vector<double> x;
  std::vector<double> y;
};

/// Two-column CSV, header row optional.
SampleSet read_samples_csv(const std::string& path);

/// Continuous piecewise linear interpolant of the data expressed in the C^0
/// cubic B-spline basis with triple knots at every interior abscissa.
Spline samples_to_c0_cubic(const SampleSet& data);

void write_coarsen_csv(const CoarsenReport& report, std::ostream& out);
void write_coarsen_csv(const CoarsenReport& report, const std::string& path);
void write_heat_csv(const HeatRun& run, std::ostream& out);
void write_heat_csv(const HeatRun& run, const std::string& path);

/// Built-in test functions addressable from the CLI.
RealFunction builtin_function(const std::string& name);  // runge | root5 | heat-u0
std::pair<double, double> builtin_domain(const std::string& name);

}  // namespace splc
