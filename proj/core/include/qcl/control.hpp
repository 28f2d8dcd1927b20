#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qcl {

/// Piecewise-constant control pulse: amplitude amplitudes()[i] on
/// [breakpoints()[i], breakpoints()[i+1]). Breakpoints are strictly
/// increasing, finite, and start at 0.
class PiecewiseControl {
 public:
  /// Throws InvalidInput when the invariants do not hold.
  PiecewiseControl(std::vector<double> breakpoints, std::vector<double> amplitudes);

  /// n equal intervals over [0, T].
  static PiecewiseControl uniform(double T, std::vector<double> amplitudes);
  static PiecewiseControl zero(double T, std::size_t intervals = 1);
  static PiecewiseControl constant(double T, double amplitude, std::size_t intervals = 1);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  double duration() const { return breakpoints_.back(); }
  double width(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

  /// Same breakpoints, new amplitudes.
  PiecewiseControl with_amplitudes(std::vector<double> amplitudes) const;

  bool operator==(const PiecewiseControl&) const = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> amplitudes_;
};

/// Uniform breakpoints i*T/n, i = 0..n, with the last one pinned to T.
std::vector<double> uniform_breakpoints(double T, std::size_t intervals);

}  // namespace qcl
