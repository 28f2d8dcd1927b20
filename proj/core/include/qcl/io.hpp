#pragma once

// Text formats.
//
// Problem file (flat key-value, '#' starts a comment line):
//
//   H0   = c0 hx hy hz      Pauli coefficients, M = c0 I + h.sigma
//   V    = c0 hx hy hz
//   rho0 = c0 hx hy hz
//   A    = c0 hx hy hz
//   T    = value
//
// Control file:
//
//   breakpoints = t0 t1 ... tn
//   amplitudes  = a1 ... an
//
// Every value accepts a decimal literal or p*pi/q (e.g. pi/12, 2*pi/3, -pi).
// Writers emit 17 significant digits so files round-trip bit-exactly.

#include <iosfwd>
#include <string>
#include <string_view>

#include "qcl/control.hpp"
#include "qcl/problem.hpp"
#include "qcl/scan.hpp"

namespace qcl {

/// printf-style %.17g; parses back to the same bits.
std::string format_real(double value);

/// Decimal literal or an expression p*pi/q, p*pi, pi/q, pi with optional
/// sign. Throws InvalidInput on anything else.
double parse_real(std::string_view text);

void write_problem(std::ostream& out, const ControlProblem& p);
/// Throws InvalidInput on missing, duplicate or unknown keys and on invalid
/// problems.
ControlProblem read_problem(std::istream& in);

void write_control(std::ostream& out, const PiecewiseControl& f);
PiecewiseControl read_control(std::istream& in);

/// Header: phi,psi,J0,P,count_below,samples,label
inline constexpr std::string_view kScanCsvHeader = "phi,psi,J0,P,count_below,samples,label";

void write_scan_csv(std::ostream& out, const ScanGrid& grid);
/// Reads a CSV produced by write_scan_csv; the grid shape is recovered from
/// the distinct phi and psi values.
ScanGrid read_scan_csv(std::istream& in);

ControlProblem read_problem_file(const std::string& path);
PiecewiseControl read_control_file(const std::string& path);

}  // namespace qcl
