#include "qcl/problem.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qcl/error.hpp"

namespace qcl {

namespace {

constexpr double kReducibleTolerance = 1e-10;

void require_finite(const Hermitian2& m, const char* name) {
  if (!std::isfinite(m.c0) || !std::isfinite(m.h.x) || !std::isfinite(m.h.y) ||
      !std::isfinite(m.h.z)) {
    throw InvalidInput(std::string(name) + " has non-finite entries");
  }
}

}  // namespace

void validate(const ControlProblem& p) {
  require_finite(p.H0, "H0");
  require_finite(p.V, "V");
  require_finite(p.rho0, "rho0");
  require_finite(p.A, "A");
  if (!(std::isfinite(p.T) && p.T > 0.0)) throw InvalidInput("horizon T must be finite and > 0");
  if (std::abs(p.rho0.trace() - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "rho0 must have unit trace, got " << p.rho0.trace();
    throw InvalidInput(msg.str());
  }
  if (p.rho0.min_eigenvalue() < -1e-12) {
    std::ostringstream msg;
    msg << "rho0 must be positive semidefinite, smallest eigenvalue " << p.rho0.min_eigenvalue();
    throw InvalidInput(msg.str());
  }
  if (p.V.h.norm() == 0.0) throw InvalidInput("interaction V has zero Pauli part");
}

void validate(const ReducedProblem& p) {
  if (!(std::isfinite(p.T) && p.T > 0.0)) throw InvalidInput("horizon T must be finite and > 0");
  if (p.v.z != 0.0) throw InvalidInput("reduced coupling must satisfy v_z = 0");
  if (p.v.norm() == 0.0) throw InvalidInput("reduced coupling v is zero");
  if (p.r.norm() > 1.0 + 1e-12) throw InvalidInput("initial Bloch vector has |r| > 1");
}

ControlProblem to_control_problem(const ReducedProblem& p) {
  return {Hermitian2::sigma_z(), p.coupling(), p.initial_state(), p.observable(), p.T};
}

double exceptional_control(const Hermitian2& H0, const Hermitian2& V) {
  const double vv = trace_product(V, V);
  if (!(vv > 0.0)) throw InvalidInput("exceptional control is undefined for V = 0");
  // + 0.0 turns a negative zero into zero.
  return -trace_product(H0, V) / vv + 0.0;
}

double critical_time(const Hermitian2& H0, const Hermitian2& V) {
  const double f0 = exceptional_control(H0, V);
  const Hermitian2 shifted = Hermitian2{0.0, H0.h} + f0 * V;
  const double norm = spectral_norm(shifted);
  if (!(norm > 0.0)) throw InvalidInput("critical time is infinite: shifted operator vanishes");
  return std::numbers::pi / norm;
}

Reduction reduce(const ControlProblem& p) {
  validate(p);
  if (std::abs(p.V.trace()) > kReducibleTolerance) {
    std::ostringstream msg;
    msg << "not reducible: Tr(V) = " << p.V.trace();
    throw OutOfRegime(msg.str());
  }
  const double h0v = trace_product(p.H0, p.V);
  if (std::abs(h0v) > kReducibleTolerance) {
    std::ostringstream msg;
    msg << "not reducible: Tr(H0 V) = " << h0v;
    throw OutOfRegime(msg.str());
  }
  const double scale = p.H0.h.norm();
  if (!(scale > 1e-12)) throw OutOfRegime("H0 is degenerate: no preferred basis");

  Reduction out;
  out.time_scale = scale;

  // Rotate the free-term direction n onto e_z.
  const Bloch3 n = p.H0.h / scale;
  if (!(n.x == 0.0 && n.y == 0.0 && n.z > 0.0)) {
    Bloch3 axis = cross(n, Bloch3::ez());
    const double s = axis.norm();
    const double angle = std::atan2(s, n.z);
    axis = s > 0.0 ? axis / s : Bloch3::ex();
    out.basis = expi(Hermitian2{0.0, axis}, 0.5 * angle);
  }

  const Hermitian2 v = out.basis.conjugate(p.V);
  const Hermitian2 rho = out.basis.conjugate(p.rho0);
  const Hermitian2 a = out.basis.conjugate(p.A);

  ReducedProblem& rp = out.problem;
  rp.v = {v.h.x, v.h.y, 0.0};
  rp.r = rho.h * 2.0;
  rp.a0 = a.h * 2.0;
  rp.a_identity = a.c0;
  rp.T = p.T * scale;
  return out;
}

PiecewiseControl reduce_control(const Reduction& reduction, const PiecewiseControl& f) {
  const double s = reduction.time_scale;
  std::vector<double> b(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<double> a(f.amplitudes().begin(), f.amplitudes().end());
  for (double& t : b) t *= s;
  for (double& x : a) x /= s;
  return PiecewiseControl(std::move(b), std::move(a));
}

ProblemVectors vectors(const ReducedProblem& rp) {
  if (rp.a0.norm() == 0.0) throw OutOfRegime("trivial observable: a0 = 0");
  ProblemVectors pv;
  pv.r = rp.r;
  pv.a0 = rp.a0;
  pv.aT = rotate_about_z(rp.a0, target_rotation_angle(rp.T));
  pv.v = rp.v;
  pv.h0 = Bloch3::ez();
  pv.alpha = planar_angle(rp.v, rp.a0);
  pv.beta = planar_angle(rp.r, rp.a0);
  pv.phi_v = std::atan2(rp.v.y, rp.v.x);
  pv.T = rp.T;
  return pv;
}

ReducedProblem make_reduced(const Bloch3& v, const Bloch3& r, const Bloch3& a0, double T,
                            double a_identity) {
  ReducedProblem rp{v, r, a0, a_identity, T};
  validate(rp);
  return rp;
}

ReducedProblem spin_rotation(const Bloch3& v, double T) {
  return make_reduced(v, {0.0, -1.0, 0.0}, Bloch3::ex(), T);
}

ReducedProblem landau_zener(double T) {
  return make_reduced(Bloch3::ex(), Bloch3::ez(), {0.0, 0.0, -1.0}, T);
}

ReducedProblem scan_default(double phi, double psi, double T) {
  return make_reduced({std::cos(phi), std::sin(phi), 0.0}, Bloch3::ey(),
                      {std::cos(psi), std::sin(psi), 0.0}, T);
}

}  // namespace qcl
