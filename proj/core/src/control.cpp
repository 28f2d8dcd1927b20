#include "qcl/control.hpp"

#include <cmath>
#include <sstream>

#include "qcl/error.hpp"

namespace qcl {

PiecewiseControl::PiecewiseControl(std::vector<double> breakpoints, std::vector<double> amplitudes)
    : breakpoints_(std::move(breakpoints)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw InvalidInput("control needs at least one interval");
  if (breakpoints_.size() != amplitudes_.size() + 1) {
    std::ostringstream msg;
    msg << "control has " << breakpoints_.size() << " breakpoints for " << amplitudes_.size()
        << " amplitudes";
    throw InvalidInput(msg.str());
  }
  if (breakpoints_.front() != 0.0) throw InvalidInput("control must start at t = 0");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i + 1]) || !(breakpoints_[i + 1] > breakpoints_[i])) {
      std::ostringstream msg;
      msg << "control breakpoints must be finite and strictly increasing (index " << i + 1 << ")";
      throw InvalidInput(msg.str());
    }
  }
  for (double a : amplitudes_) {
    if (!std::isfinite(a)) throw InvalidInput("control amplitudes must be finite");
  }
}

std::vector<double> uniform_breakpoints(double T, std::size_t intervals) {
  if (intervals == 0) throw InvalidInput("control needs at least one interval");
  std::vector<double> b(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    b[i] = T * static_cast<double>(i) / static_cast<double>(intervals);
  }
  b.back() = T;
  return b;
}

PiecewiseControl PiecewiseControl::uniform(double T, std::vector<double> amplitudes) {
  auto b = uniform_breakpoints(T, amplitudes.size());
  return PiecewiseControl(std::move(b), std::move(amplitudes));
}

PiecewiseControl PiecewiseControl::zero(double T, std::size_t intervals) {
  return uniform(T, std::vector<double>(intervals, 0.0));
}

PiecewiseControl PiecewiseControl::constant(double T, double amplitude, std::size_t intervals) {
  return uniform(T, std::vector<double>(intervals, amplitude));
}

PiecewiseControl PiecewiseControl::with_amplitudes(std::vector<double> amplitudes) const {
  return PiecewiseControl(breakpoints_, std::move(amplitudes));
}

}  // namespace qcl
