#pragma once

// Landscape analysis around the exceptional control f = 0 of a reduced
// problem: domain classification by the cross-product invariants Phi and
// Psi, trap-free conditions, saddle certification with bump-pair controls,
// and the regularity (span rank) check.

#include <optional>
#include <string_view>

#include "qcl/control.hpp"
#include "qcl/problem.hpp"

namespace qcl {

enum class DomainLabel { DI, DII, DIII, DIV, Boundary };

/// Short code used in CSV output: D1, D2, D3, D4, B.
std::string_view short_code(DomainLabel label);
/// Long name: D_I, D_II, D_III, D_IV, Boundary.
std::string_view name(DomainLabel label);
/// Accepts either spelling. Throws InvalidInput otherwise.
DomainLabel parse_domain_label(std::string_view text);

inline bool is_saddle_domain(DomainLabel label) {
  return label == DomainLabel::DIII || label == DomainLabel::DIV;
}

/// |Phi| or |Psi| at or below this value classifies as Boundary.
inline constexpr double kBoundaryTolerance = 1e-10;

struct PhiPsi {
  double phi{};  ///< (v x r)_z (v x a)_z
  double psi{};  ///< (r x a)_z
};

/// Cross-product invariants evaluated with a = aT.
PhiPsi phi_psi(const ProblemVectors& pv);

/// Sign-quadrant classification of (Phi, Psi) with the boundary band.
DomainLabel classify(PhiPsi values);

/// Throws OutOfRegime when r, aT or v leave the x-y plane.
DomainLabel classify(const ProblemVectors& pv);

/// Second-order type of f = 0 at the finite horizon pv.T. With
/// g(t) = r.r_t and h(t) = aT.r_t the second variation has kernel
/// -2|v|^2 g(min) h(max), which is negative semidefinite iff g h > 0 on
/// [0, T] and Psi > 0, and positive semidefinite iff g h < 0 on [0, T] and
/// Psi < 0. Every other configuration is indefinite. Boundary covers
/// |Psi| within kBoundaryTolerance and zeros of g or h within
/// kBoundaryTolerance (in angle) of t = 0 or t = T.
enum class HorizonType { LocalMaximum, LocalMinimum, Saddle, Boundary };

std::string_view name(HorizonType type);

/// Throws OutOfRegime when r, aT or v leave the x-y plane.
HorizonType horizon_type(const ProblemVectors& pv);

enum class TrapFreeReason { NonPlanar, SaddleDomain, SmallTCondition, Inconclusive };

std::string_view name(TrapFreeReason reason);

struct TrapFreeVerdict {
  TrapFreeReason reason{TrapFreeReason::Inconclusive};
  double Phi{};
  double Psi{};
  double alpha{};
  double beta{};
  double T{};
  double horizon_product{};    ///< left side of the finite-T condition
  double small_T_product{};    ///< left side of the small-T condition
  double horizon_angle_form{}; ///< sin(a-b) sin(2T-a) sin(2T-b)
  double small_T_angle_form{}; ///< sin(a-b) sin(a) sin(b)
  /// Horizon below which the small-T condition guarantees the finite-T one.
  std::optional<double> T_tilde;
};

/// Returns a NonPlanar verdict if any of r_z, aT_z, v_z exceeds the planar
/// tolerance in magnitude; empty otherwise.
std::optional<TrapFreeVerdict> theorem2_guard(const ProblemVectors& pv);

/// (v x r)_z [(v x a0)_z cos 2T - (v.a0) sin 2T] [(r x a0)_z cos 2T - (r.a0) sin 2T]
double horizon_product(const ProblemVectors& pv, double T);
/// True iff horizon_product(pv, T) < 0.
bool trap_free_T(const ProblemVectors& pv, double T);

/// (v x r)_z (v x a0)_z (r x a0)_z
double small_T_product(const ProblemVectors& pv);
/// True iff small_T_product(pv) < 0.
bool trap_free_small_T(const ProblemVectors& pv);

/// Angle forms of the two conditions, alpha = angle(v -> a0) and
/// beta = angle(r -> a0).
double horizon_angle_form(double alpha, double beta, double T);
double small_T_angle_form(double alpha, double beta);
inline bool trap_free_T_angles(double alpha, double beta, double T) {
  return horizon_angle_form(alpha, beta, T) < 0.0;
}
inline bool trap_free_small_T_angles(double alpha, double beta) {
  return small_T_angle_form(alpha, beta) < 0.0;
}

/// Smallest T > 0 at which sin(2T - alpha) or sin(2T - beta) vanishes. On
/// (0, T_tilde) the finite-T angle form has the sign of the small-T one.
/// Empty when alpha or beta is a multiple of pi.
std::optional<double> small_T_horizon(double alpha, double beta);

/// Full verdict at horizon pv.T: NonPlanar, else SaddleDomain when the
/// finite-T condition holds, else SmallTCondition when the small-T condition
/// holds, else Inconclusive.
TrapFreeVerdict assess_trap_free(const ProblemVectors& pv);

/// G(l, m) = l^2 (r.r2)(a.r2) + 2 l m (r.r1)(a.r2) + m^2 (r.r1)(a.r1), a = aT.
/// Meaningful for 0 < t1 < t2 < T; l weights the bump at t2, m the one at t1.
double quadratic_form_G(const ProblemVectors& pv, double t1, double t2, double lambda, double mu);

/// (r.r1)^2 (a.r2)^2 - (r.r2)(a.r2)(r.r1)(a.r1); positive iff G is indefinite.
double g_discriminant(const ProblemVectors& pv, double t1, double t2);

/// Two rectangular bumps of width eps and height scale/eps: weight
/// `at_first` centred at t1 and `at_second` centred at t2.
PiecewiseControl bump_pair(double T, double t1, double t2, double eps, double scale,
                           double at_first, double at_second);

enum class SaddleVerdict { Saddle, NoSplitFound };

std::string_view name(SaddleVerdict verdict);

struct CoefficientPair {
  double lambda{};
  double mu{};
};

struct SaddleProbeReport {
  double t1{};
  double t2{};
  double epsilon{};
  double amplitude_scale{};
  CoefficientPair ascent_pair{};   ///< G < 0: predicted to raise J
  CoefficientPair descent_pair{};  ///< G > 0: predicted to lower J
  double G_ascent{};
  double G_descent{};
  double J0{};
  double J_up{};
  double J_down{};
  int refinements{};
  SaddleVerdict verdict{SaddleVerdict::NoSplitFound};
};

struct SaddleProbeOptions {
  int refinement_budget{20};
  int time_shrink_budget{50};
  int circle_samples{360};
};

/// Certifies that f = 0 is a saddle for a problem in D_III or D_IV by
/// evaluating J on two bump-pair controls whose quadratic-form signs differ.
/// Throws OutOfRegime outside D_III / D_IV.
SaddleProbeReport probe_saddle(const ReducedProblem& rp, const SaddleProbeOptions& options = {});

/// Numerical rank (1..3) of the Bloch vectors of U_t^dagger V U_t sampled at
/// `samples` equispaced points per interval, endpoints included. Singular
/// values below 1e-9 times the largest are dropped. Throws InvalidInput for
/// samples < 3.
int span_rank(const ReducedProblem& rp, const PiecewiseControl& f, int samples);

}  // namespace qcl
