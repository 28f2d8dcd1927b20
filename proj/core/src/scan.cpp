#include "qcl/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "qcl/dynamics.hpp"
#include "qcl/error.hpp"

namespace qcl {

double cell_center(std::uint32_t index, std::uint32_t count) {
  return 2.0 * std::numbers::pi * (static_cast<double>(index) + 0.5) / static_cast<double>(count);
}

PiecewiseControl sample_control(const ScanConfig& cfg, const CounterNormalStream& stream,
                                std::uint64_t cell, std::uint32_t sample) {
  std::vector<double> amps(cfg.intervals, 0.0);
  if (cfg.amplitude_sigma != 0.0) {
    for (std::uint32_t i = 0; i < cfg.intervals; ++i) {
      amps[i] = cfg.amplitude_sigma * stream.normal(cell, sample, i);
    }
  }
  return PiecewiseControl::uniform(cfg.T, std::move(amps));
}

namespace {

DomainLabel label_or_boundary(const ReducedProblem& rp) {
  if (rp.a0.norm() == 0.0) return DomainLabel::Boundary;
  const ProblemVectors pv = vectors(rp);
  return is_planar(pv) ? classify(pv) : DomainLabel::Boundary;
}

}  // namespace

ScanCell estimate_P(const ReducedProblem& rp, const ScanConfig& cfg, std::uint64_t cell) {
  const CounterNormalStream stream(cfg.seed);
  const std::uint64_t grid_psi = std::max<std::uint32_t>(cfg.grid_psi, 1);

  ScanCell out;
  out.phi = cell_center(static_cast<std::uint32_t>(cell / grid_psi), cfg.grid_phi);
  out.psi = cell_center(static_cast<std::uint32_t>(cell % grid_psi), cfg.grid_psi);
  out.J0 = objective(rp, PiecewiseControl::zero(rp.T, cfg.intervals));
  out.samples = cfg.samples;
  out.label = label_or_boundary(rp);

  for (std::uint32_t s = 0; s < cfg.samples; ++s) {
    // Ties count as not below.
    if (objective(rp, sample_control(cfg, stream, cell, s)) < out.J0) ++out.count_below;
  }
  out.P = cfg.samples == 0 ? 0.0
                           : static_cast<double>(out.count_below) / static_cast<double>(cfg.samples);
  return out;
}

ScanGrid run_scan(const ScanConfig& cfg) {
  if (cfg.grid_phi < 2 || cfg.grid_psi < 2) throw InvalidInput("scan grid must be at least 2x2");
  if (cfg.samples == 0 || cfg.intervals == 0) throw InvalidInput("scan needs samples and intervals");
  if (!(std::isfinite(cfg.T) && cfg.T > 0.0)) throw InvalidInput("scan horizon T must be > 0");

  ScanGrid grid;
  grid.grid_phi = cfg.grid_phi;
  grid.grid_psi = cfg.grid_psi;
  const std::size_t total = static_cast<std::size_t>(cfg.grid_phi) * cfg.grid_psi;
  grid.cells.resize(total);

  auto work = [&](std::size_t cell) {
    const double phi = cell_center(static_cast<std::uint32_t>(cell / cfg.grid_psi), cfg.grid_phi);
    const double psi = cell_center(static_cast<std::uint32_t>(cell % cfg.grid_psi), cfg.grid_psi);
    const ReducedProblem rp = make_reduced({std::cos(phi), std::sin(phi), 0.0}, cfg.r,
                                           {std::cos(psi), std::sin(psi), 0.0}, cfg.T);
    grid.cells[cell] = estimate_P(rp, cfg, cell);
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(total, 256)));
  if (threads == 1) {
    for (std::size_t c = 0; c < total; ++c) work(c);
    return grid;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < total; c = next++) work(c);
    });
  }
  pool.clear();
  return grid;
}

PiecewiseControl random_start(double T, std::uint32_t intervals, double sigma, std::uint64_t seed) {
  ScanConfig cfg;
  cfg.T = T;
  cfg.intervals = intervals;
  cfg.amplitude_sigma = sigma;
  return sample_control(cfg, CounterNormalStream(seed), 0, 0);
}

OptimizeReport optimize(const ReducedProblem& rp, std::uint32_t intervals,
                        const PiecewiseControl& start, const OptimizeOptions& options) {
  if (start.size() != intervals) {
    throw InvalidInput("optimize: start control must have the requested number of intervals");
  }
  constexpr double kArmijo = 1e-4;

  OptimizeReport report;
  report.start_seed = options.start_seed;

  PiecewiseControl current = start;
  double J = objective(rp, current);
  std::vector<double> g = gradient(rp, current);
  report.trace.push_back(J);

  double step = 1.0;
  for (int it = 0; it < options.max_iter; ++it) {
    double gmax = 0.0;
    double gg = 0.0;
    for (double x : g) {
      gmax = std::max(gmax, std::abs(x));
      gg += x * x;
    }
    if (gmax < options.tol) break;

    const auto amps = current.amplitudes();
    bool accepted = false;
    while (step * std::sqrt(gg) > 1e-15) {
      std::vector<double> trial(amps.begin(), amps.end());
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += step * g[i];
      PiecewiseControl candidate = current.with_amplitudes(std::move(trial));
      const double J_new = objective(rp, candidate);
      if (J_new > J + kArmijo * step * gg) {
        current = std::move(candidate);
        J = J_new;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    g = gradient(rp, current);
    report.trace.push_back(J);
    report.iterations = it + 1;
    step *= 2.0;
  }

  double gmax = 0.0;
  for (double x : g) gmax = std::max(gmax, std::abs(x));
  report.final_control = current;
  report.final_J = J;
  report.final_gradient_max = gmax;
  report.converged = gmax < options.tol;
  return report;
}

}  // namespace qcl
