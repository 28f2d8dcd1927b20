#pragma once

// Control problems for a qubit driven by a single real control field,
//
//   i dU/dt = (H0 + f(t) V) U,   J_A[f] = Tr(U_T rho0 U_T^dagger A),
//
// and their canonical form H = sigma_z + f(t) (v_x sigma_x + v_y sigma_y).

#include <string>

#include "qcl/control.hpp"
#include "qcl/su2.hpp"

namespace qcl {

/// Full problem data. Energies in units with hbar = 1.
struct ControlProblem {
  Hermitian2 H0{};
  Hermitian2 V{};
  Hermitian2 rho0{};
  Hermitian2 A{};
  double T{0.0};
};

/// Throws InvalidInput unless Tr(rho0) = 1, rho0 >= 0 (to 1e-12), V has a
/// nonzero Pauli part, and T is finite and positive.
void validate(const ControlProblem& p);

/// Problem in the canonical frame: the free term is exactly sigma_z, the
/// coupling is v.sigma with v_z = 0, rho0 = (I + r.sigma)/2 and
/// A = a_identity*I + (a0.sigma)/2.
struct ReducedProblem {
  Bloch3 v{};
  Bloch3 r{};
  Bloch3 a0{};
  double a_identity{0.5};
  double T{0.0};

  double trace_A() const { return 2.0 * a_identity; }
  Hermitian2 observable() const { return {a_identity, a0 * 0.5}; }
  Hermitian2 initial_state() const { return {0.5, r * 0.5}; }
  Hermitian2 coupling() const { return {0.0, v}; }
};

/// Throws InvalidInput unless v_z = 0, |v| > 0, T > 0 and |r| <= 1 + 1e-12.
void validate(const ReducedProblem& p);

/// Canonical problem written back as full Hamiltonian data (H0 = sigma_z).
ControlProblem to_control_problem(const ReducedProblem& p);

/// Outcome of reduce(): the reduced problem, the factor by which time was
/// stretched (tau = time_scale * t), and the basis change W with
/// W H0 W^dagger = c0 I + |h0| sigma_z.
struct Reduction {
  ReducedProblem problem;
  double time_scale{1.0};
  Unitary2 basis{};
};

/// f0 = -Tr(H0 V) / Tr(V^2). Throws InvalidInput when V = 0.
double exceptional_control(const Hermitian2& H0, const Hermitian2& V);

/// T0 = pi / ||H0 - Tr(H0)/2 + f0 V|| with the spectral norm. Throws
/// InvalidInput when the shifted operator vanishes.
double critical_time(const Hermitian2& H0, const Hermitian2& V);

/// Brings a problem with Tr V = 0 and Tr(H0 V) = 0 (to 1e-10) into the
/// canonical frame. The control is rescaled along with time: a control f on
/// [0, T] corresponds to g(tau) = f(tau / s) / s on [0, s T], s = |h0|.
/// Throws OutOfRegime when the trace conditions fail or H0 is degenerate.
Reduction reduce(const ControlProblem& p);

/// Maps a control of the original problem onto the reduced time axis.
PiecewiseControl reduce_control(const Reduction& reduction, const PiecewiseControl& f);

/// Bloch-frame data of a reduced problem.
struct ProblemVectors {
  Bloch3 r{};
  Bloch3 a0{};
  Bloch3 aT{};     ///< a0 carried to the final time, a0 cos 2T + (a0 x e_z) sin 2T
  Bloch3 v{};
  Bloch3 h0{};     ///< direction of the free term, always e_z
  double alpha{};  ///< signed angle from v to a0, (-pi, pi]
  double beta{};   ///< signed angle from r to a0, (-pi, pi]
  double phi_v{};  ///< atan2(v_y, v_x)
  double T{};
};

/// Angle passed to rotate_about_z to map a0 onto the Heisenberg-picture
/// target e^{i sigma_z T} A e^{-i sigma_z T}. Pinned by the conjugation test.
inline double target_rotation_angle(double T) { return 2.0 * T; }

/// Throws OutOfRegime when a0 = 0 (trivial observable).
ProblemVectors vectors(const ReducedProblem& rp);

/// Reduced problem with the canonical Hamiltonian and the given Bloch data;
/// A is taken to be the projector (I + a0.sigma)/2 when |a0| = 1.
ReducedProblem make_reduced(const Bloch3& v, const Bloch3& r, const Bloch3& a0, double T,
                            double a_identity = 0.5);

// Named presets.

/// rho0 = (1 - sigma_y)/2, A = (1 + sigma_x)/2, V = v_x sigma_x + v_y sigma_y.
ReducedProblem spin_rotation(const Bloch3& v, double T);

/// H = sigma_z + f sigma_x, transfer |up> -> |down>.
ReducedProblem landau_zener(double T);

/// r = e_y, v = (cos phi, sin phi, 0), a0 = (cos psi, sin psi, 0).
ReducedProblem scan_default(double phi, double psi, double T);

}  // namespace qcl
