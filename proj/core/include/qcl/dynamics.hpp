#pragma once

#include <array>
#include <vector>

#include "qcl/control.hpp"
#include "qcl/problem.hpp"
#include "qcl/su2.hpp"

namespace qcl {

using State2 = std::array<cplx, 2>;

/// Generator on one interval of the reduced problem: sigma_z + a (v.sigma).
inline Hermitian2 reduced_generator(const ReducedProblem& rp, double amplitude) {
  return {0.0, {amplitude * rp.v.x, amplitude * rp.v.y, 1.0}};
}

/// Ordered product of the per-interval exponentials, last interval leftmost.
/// Throws InvalidInput when the control does not end at rp.T.
Unitary2 propagate(const ReducedProblem& rp, const PiecewiseControl& f);

/// Same for full Hamiltonian data, generator H0 + a V on each interval.
Unitary2 propagate(const ControlProblem& p, const PiecewiseControl& f);

/// Bloch vector of rho_T, obtained by rotating r through every interval.
Bloch3 final_bloch(const ReducedProblem& rp, const PiecewiseControl& f);

/// J_A[f] = Tr(A)/2 + r_T.a0/2, evaluated in the Bloch frame.
double objective(const ReducedProblem& rp, const PiecewiseControl& f);

/// J_A[f] = Tr(U rho0 U^dagger A) from the dense propagator.
double objective_dense(const ReducedProblem& rp, const PiecewiseControl& f);

/// J_A[f] for full Hamiltonian data, no reduction involved.
double objective(const ControlProblem& p, const PiecewiseControl& f);

/// |<psi_f| U |psi_i>|^2. Throws InvalidInput unless both states have unit
/// norm to 1e-12.
double transition_probability(const ReducedProblem& rp, const PiecewiseControl& f,
                              const State2& psi_i, const State2& psi_f);

/// dJ/da_i for every interval amplitude, by forward propagation of r and
/// backward propagation of the observable. Exact for piecewise controls.
std::vector<double> gradient(const ReducedProblem& rp, const PiecewiseControl& f);

struct HessianSample {
  double t1{};
  double t2{};
  double value{};
};

/// Ratio between the second functional derivative of J at f = 0 and the
/// kernel returned by hessian_kernel_at_zero, with V = v.sigma and
/// rho0 = (I + r.sigma)/2. Determined against bump-pair finite differences.
inline constexpr double kHessianKernelScale = 2.0;

/// Hessian kernel at the exceptional control:
///   -|v|^2 (r.r2)(a.r1) for t1 >= t2,  -|v|^2 (r.r1)(a.r2) for t1 < t2,
/// with r_k = (sin(2 t_k - phi_v), cos(2 t_k - phi_v), 0) and a = aT.
/// Throws OutOfRegime for non-planar vectors, InvalidInput for times
/// outside [0, T].
HessianSample hessian_kernel_at_zero(const ProblemVectors& pv, double t1, double t2);

/// The unit vector r_k used by the kernel at time t.
inline Bloch3 kernel_direction(double phi_v, double t) {
  return {std::sin(2.0 * t - phi_v), std::cos(2.0 * t - phi_v), 0.0};
}

/// Tolerance on z-components below which vectors count as planar.
inline constexpr double kPlanarTolerance = 1e-10;

inline bool is_planar(const ProblemVectors& pv) {
  return std::abs(pv.r.z) <= kPlanarTolerance && std::abs(pv.aT.z) <= kPlanarTolerance &&
         std::abs(pv.v.z) <= kPlanarTolerance;
}

}  // namespace qcl
