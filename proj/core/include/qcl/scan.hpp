#pragma once

// Monte Carlo scan of the landscape around f = 0 over the (phi, psi) plane
// of unit planar couplings v and targets a0, plus plain gradient ascent.

#include <cstdint>
#include <optional>
#include <vector>

#include "qcl/control.hpp"
#include "qcl/landscape.hpp"
#include "qcl/problem.hpp"
#include "qcl/random.hpp"

namespace qcl {

struct ScanConfig {
  double T{0.0};
  std::uint32_t grid_phi{101};
  std::uint32_t grid_psi{101};
  std::uint32_t samples{300};
  std::uint32_t intervals{100};
  double amplitude_sigma{1.0};
  std::uint64_t seed{0};
  Bloch3 r{Bloch3::ey()};
  /// Worker threads for run_scan; 0 picks hardware concurrency. Results do
  /// not depend on this value.
  unsigned threads{0};
};

struct ScanCell {
  double phi{};
  double psi{};
  double J0{};
  std::uint32_t count_below{};
  std::uint32_t samples{};
  double P{};
  DomainLabel label{DomainLabel::Boundary};
};

/// Cells stored row-major: index = i_phi * grid_psi + i_psi.
struct ScanGrid {
  std::uint32_t grid_phi{};
  std::uint32_t grid_psi{};
  std::vector<ScanCell> cells;

  const ScanCell& at(std::uint32_t i_phi, std::uint32_t i_psi) const {
    return cells[static_cast<std::size_t>(i_phi) * grid_psi + i_psi];
  }
};

/// Centre of cell j out of n over [0, 2 pi): 2 pi (j + 1/2) / n.
double cell_center(std::uint32_t index, std::uint32_t count);

/// n = cfg.intervals equal intervals with independent N(0, sigma^2)
/// amplitudes drawn from `stream` at (cell, sample, interval).
PiecewiseControl sample_control(const ScanConfig& cfg, const CounterNormalStream& stream,
                                std::uint64_t cell, std::uint32_t sample);

/// Draws cfg.samples controls for `cell` and counts strict J[f] < J[0].
/// phi and psi are taken from the cell's grid position; the label is
/// Boundary when rp has a trivial observable or leaves the plane.
ScanCell estimate_P(const ReducedProblem& rp, const ScanConfig& cfg, std::uint64_t cell);

/// Runs every cell of the grid with r = cfg.r, v = (cos phi, sin phi, 0),
/// a0 = (cos psi, sin psi, 0). Throws InvalidInput for grids below 2x2.
ScanGrid run_scan(const ScanConfig& cfg);

struct OptimizeOptions {
  int max_iter{5000};
  double tol{1e-9};
  std::optional<std::uint64_t> start_seed;
};

struct OptimizeReport {
  std::optional<std::uint64_t> start_seed;
  int iterations{};
  std::vector<double> trace;  ///< J after each accepted step, starting value first
  PiecewiseControl final_control{PiecewiseControl::zero(1.0)};
  double final_J{};
  double final_gradient_max{};
  bool converged{};
};

/// Uniform control with N(0, sigma^2) amplitudes from `seed`.
PiecewiseControl random_start(double T, std::uint32_t intervals, double sigma, std::uint64_t seed);

/// Gradient ascent on the amplitude vector with a backtracking (Armijo) line
/// search; every accepted step strictly increases J. Stops when
/// max |dJ/da_i| < tol or after max_iter steps. `start` must be a uniform
/// control with `intervals` pieces ending at rp.T.
OptimizeReport optimize(const ReducedProblem& rp, std::uint32_t intervals,
                        const PiecewiseControl& start, const OptimizeOptions& options = {});

}  // namespace qcl
