#include "qcl/dynamics.hpp"

#include <algorithm>
#include <sstream>

#include "qcl/error.hpp"

namespace qcl {

namespace {

void check_horizon(double T, const PiecewiseControl& f) {
  if (std::abs(f.duration() - T) > 1e-12 * std::max(1.0, std::abs(T))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "control ends at t = " << f.duration() << " but the horizon is T = " << T;
    throw InvalidInput(msg.str());
  }
}

double expectation(const Hermitian2& observable, const Hermitian2& rho) {
  return trace_product(rho, observable);
}

// Time integral over [0, width] of the Heisenberg-picture coupling
// e^{iHs} (v.sigma) e^{-iHs}, as a Bloch vector.
Bloch3 averaged_coupling(const Hermitian2& generator, const Bloch3& v, double width) {
  const double norm = generator.h.norm();
  if (norm < 1e-300) return v * width;
  const Bloch3 n = generator.h / norm;
  const double omega = 2.0 * norm;
  const Bloch3 parallel = n * dot(n, v);
  return parallel * width + (v - parallel) * (std::sin(omega * width) / omega) -
         cross(n, v) * ((1.0 - std::cos(omega * width)) / omega);
}

}  // namespace

Unitary2 propagate(const ReducedProblem& rp, const PiecewiseControl& f) {
  check_horizon(rp.T, f);
  Unitary2 u;
  const auto amps = f.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    u = expi(reduced_generator(rp, amps[i]), f.width(i)) * u;
  }
  return u;
}

Unitary2 propagate(const ControlProblem& p, const PiecewiseControl& f) {
  check_horizon(p.T, f);
  Unitary2 u;
  const auto amps = f.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    u = expi(p.H0 + amps[i] * p.V, f.width(i)) * u;
  }
  return u;
}

Bloch3 final_bloch(const ReducedProblem& rp, const PiecewiseControl& f) {
  check_horizon(rp.T, f);
  Bloch3 r = rp.r;
  const auto amps = f.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    r = evolve_bloch(reduced_generator(rp, amps[i]), f.width(i), r);
  }
  return r;
}

double objective(const ReducedProblem& rp, const PiecewiseControl& f) {
  return rp.a_identity + 0.5 * dot(final_bloch(rp, f), rp.a0);
}

double objective_dense(const ReducedProblem& rp, const PiecewiseControl& f) {
  const Unitary2 u = propagate(rp, f);
  return expectation(rp.observable(), u.conjugate(rp.initial_state()));
}

double objective(const ControlProblem& p, const PiecewiseControl& f) {
  const Unitary2 u = propagate(p, f);
  return expectation(p.A, u.conjugate(p.rho0));
}

double transition_probability(const ReducedProblem& rp, const PiecewiseControl& f,
                              const State2& psi_i, const State2& psi_f) {
  auto norm2 = [](const State2& s) { return std::norm(s[0]) + std::norm(s[1]); };
  if (std::abs(norm2(psi_i) - 1.0) > 1e-12 || std::abs(norm2(psi_f) - 1.0) > 1e-12) {
    throw InvalidInput("transition_probability needs normalized states");
  }
  const Mat2 u = propagate(rp, f).matrix();
  const cplx out0 = u(0, 0) * psi_i[0] + u(0, 1) * psi_i[1];
  const cplx out1 = u(1, 0) * psi_i[0] + u(1, 1) * psi_i[1];
  return std::norm(std::conj(psi_f[0]) * out0 + std::conj(psi_f[1]) * out1);
}

std::vector<double> gradient(const ReducedProblem& rp, const PiecewiseControl& f) {
  check_horizon(rp.T, f);
  const auto amps = f.amplitudes();
  const std::size_t n = amps.size();

  // Bloch vector at the start of each interval.
  std::vector<Bloch3> start(n);
  Bloch3 r = rp.r;
  for (std::size_t i = 0; i < n; ++i) {
    start[i] = r;
    r = evolve_bloch(reduced_generator(rp, amps[i]), f.width(i), r);
  }

  // dJ/da_i = (w_i x r_{i-1}) . b_{i-1}, where w_i is the interval-averaged
  // coupling and b_{i-1} the observable carried back to the interval start.
  std::vector<double> g(n);
  Bloch3 b = rp.a0;
  for (std::size_t k = n; k-- > 0;) {
    const Hermitian2 h = reduced_generator(rp, amps[k]);
    b = evolve_bloch(h, -f.width(k), b);
    const Bloch3 w = averaged_coupling(h, rp.v, f.width(k));
    g[k] = dot(cross(w, start[k]), b);
  }
  return g;
}

HessianSample hessian_kernel_at_zero(const ProblemVectors& pv, double t1, double t2) {
  if (!is_planar(pv)) {
    throw OutOfRegime("Hessian kernel at f = 0 requires r_z = a_z = v_z = 0");
  }
  const double slack = 1e-12 * std::max(1.0, pv.T);
  if (t1 < -slack || t2 < -slack || t1 > pv.T + slack || t2 > pv.T + slack) {
    throw InvalidInput("Hessian kernel times must lie in [0, T]");
  }
  const Bloch3 r1 = kernel_direction(pv.phi_v, t1);
  const Bloch3 r2 = kernel_direction(pv.phi_v, t2);
  const double v2 = dot(pv.v, pv.v);
  // r pairs with the earlier time, a with the later one.
  const double value = t1 >= t2 ? -v2 * dot(pv.r, r2) * dot(pv.aT, r1)
                                : -v2 * dot(pv.r, r1) * dot(pv.aT, r2);
  return {t1, t2, value};
}

}  // namespace qcl
