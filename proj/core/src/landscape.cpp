#include "qcl/landscape.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcl/dynamics.hpp"
#include "qcl/error.hpp"

namespace qcl {

std::string_view short_code(DomainLabel label) {
  switch (label) {
    case DomainLabel::DI: return "D1";
    case DomainLabel::DII: return "D2";
    case DomainLabel::DIII: return "D3";
    case DomainLabel::DIV: return "D4";
    case DomainLabel::Boundary: return "B";
  }
  return "B";
}

std::string_view name(DomainLabel label) {
  switch (label) {
    case DomainLabel::DI: return "D_I";
    case DomainLabel::DII: return "D_II";
    case DomainLabel::DIII: return "D_III";
    case DomainLabel::DIV: return "D_IV";
    case DomainLabel::Boundary: return "Boundary";
  }
  return "Boundary";
}

DomainLabel parse_domain_label(std::string_view text) {
  for (auto l : {DomainLabel::DI, DomainLabel::DII, DomainLabel::DIII, DomainLabel::DIV,
                 DomainLabel::Boundary}) {
    if (text == short_code(l) || text == name(l)) return l;
  }
  throw InvalidInput("unknown domain label '" + std::string(text) + "'");
}

std::string_view name(TrapFreeReason reason) {
  switch (reason) {
    case TrapFreeReason::NonPlanar: return "NonPlanar";
    case TrapFreeReason::SaddleDomain: return "SaddleDomain";
    case TrapFreeReason::SmallTCondition: return "SmallTCondition";
    case TrapFreeReason::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view name(SaddleVerdict verdict) {
  return verdict == SaddleVerdict::Saddle ? "Saddle" : "NoSplitFound";
}

PhiPsi phi_psi(const ProblemVectors& pv) {
  return {cross_z(pv.v, pv.r) * cross_z(pv.v, pv.aT), cross_z(pv.r, pv.aT)};
}

DomainLabel classify(PhiPsi values) {
  const double tol = kBoundaryTolerance;
  if (std::abs(values.phi) <= tol || std::abs(values.psi) <= tol) return DomainLabel::Boundary;
  if (values.phi > 0.0) return values.psi > 0.0 ? DomainLabel::DI : DomainLabel::DIII;
  return values.psi < 0.0 ? DomainLabel::DII : DomainLabel::DIV;
}

DomainLabel classify(const ProblemVectors& pv) {
  if (!is_planar(pv)) throw OutOfRegime("classification needs planar r, a and v");
  return classify(phi_psi(pv));
}

std::string_view name(HorizonType type) {
  switch (type) {
    case HorizonType::LocalMaximum: return "LocalMaximum";
    case HorizonType::LocalMinimum: return "LocalMinimum";
    case HorizonType::Saddle: return "Saddle";
    case HorizonType::Boundary: return "Boundary";
  }
  return "Boundary";
}

namespace {

enum class SweepSign { Positive, Negative, Crosses, Touches };

// u.r_t = |u| sin(2t - phi_v + theta_u) for planar u; the argument sweeps an
// interval of length 2T as t runs over [0, T].
SweepSign sweep_sign(const Bloch3& u, double phi_v, double T) {
  constexpr double pi = std::numbers::pi;
  const double tol = kBoundaryTolerance;
  if (std::hypot(u.x, u.y) <= tol) return SweepSign::Touches;
  const double start = std::atan2(u.y, u.x) - phi_v;
  const double end = start + 2.0 * T;
  const double k = std::ceil((start - tol) / pi);
  const double zero = k * pi;
  if (zero <= end + tol) {
    if (std::abs(zero - start) <= tol || std::abs(zero - end) <= tol) return SweepSign::Touches;
    return SweepSign::Crosses;
  }
  return std::sin(0.5 * (start + end)) > 0.0 ? SweepSign::Positive : SweepSign::Negative;
}

}  // namespace

HorizonType horizon_type(const ProblemVectors& pv) {
  if (!is_planar(pv)) throw OutOfRegime("classification needs planar r, a and v");
  const SweepSign g = sweep_sign(pv.r, pv.phi_v, pv.T);
  const SweepSign h = sweep_sign(pv.aT, pv.phi_v, pv.T);
  if (g == SweepSign::Crosses || h == SweepSign::Crosses) return HorizonType::Saddle;
  const double psi = cross_z(pv.r, pv.aT);
  if (g == SweepSign::Touches || h == SweepSign::Touches || std::abs(psi) <= kBoundaryTolerance) {
    return HorizonType::Boundary;
  }
  const bool same = g == h;
  if (same && psi > 0.0) return HorizonType::LocalMaximum;
  if (!same && psi < 0.0) return HorizonType::LocalMinimum;
  return HorizonType::Saddle;
}

// Trap-free conditions.

double horizon_product(const ProblemVectors& pv, double T) {
  const double c = std::cos(2.0 * T);
  const double s = std::sin(2.0 * T);
  return cross_z(pv.v, pv.r) * (cross_z(pv.v, pv.a0) * c - dot(pv.v, pv.a0) * s) *
         (cross_z(pv.r, pv.a0) * c - dot(pv.r, pv.a0) * s);
}

bool trap_free_T(const ProblemVectors& pv, double T) { return horizon_product(pv, T) < 0.0; }

double small_T_product(const ProblemVectors& pv) {
  return cross_z(pv.v, pv.r) * cross_z(pv.v, pv.a0) * cross_z(pv.r, pv.a0);
}

bool trap_free_small_T(const ProblemVectors& pv) { return small_T_product(pv) < 0.0; }

double horizon_angle_form(double alpha, double beta, double T) {
  return std::sin(alpha - beta) * std::sin(2.0 * T - alpha) * std::sin(2.0 * T - beta);
}

double small_T_angle_form(double alpha, double beta) {
  return std::sin(alpha - beta) * std::sin(alpha) * std::sin(beta);
}

std::optional<double> small_T_horizon(double alpha, double beta) {
  constexpr double pi = std::numbers::pi;
  auto first_zero = [](double angle) {
    double m = std::fmod(angle, pi);
    if (m < 0.0) m += pi;
    return m;
  };
  const double ma = first_zero(alpha);
  const double mb = first_zero(beta);
  if (ma == 0.0 || mb == 0.0) return std::nullopt;
  return 0.5 * std::min(ma, mb);
}

std::optional<TrapFreeVerdict> theorem2_guard(const ProblemVectors& pv) {
  if (is_planar(pv)) return std::nullopt;
  TrapFreeVerdict v;
  v.reason = TrapFreeReason::NonPlanar;
  v.alpha = pv.alpha;
  v.beta = pv.beta;
  v.T = pv.T;
  return v;
}

TrapFreeVerdict assess_trap_free(const ProblemVectors& pv) {
  if (auto guard = theorem2_guard(pv)) return *guard;
  TrapFreeVerdict v;
  const PhiPsi pp = phi_psi(pv);
  v.Phi = pp.phi;
  v.Psi = pp.psi;
  v.alpha = pv.alpha;
  v.beta = pv.beta;
  v.T = pv.T;
  v.horizon_product = horizon_product(pv, pv.T);
  v.small_T_product = small_T_product(pv);
  v.horizon_angle_form = horizon_angle_form(pv.alpha, pv.beta, pv.T);
  v.small_T_angle_form = small_T_angle_form(pv.alpha, pv.beta);
  if (v.small_T_product < 0.0) v.T_tilde = small_T_horizon(pv.alpha, pv.beta);

  if (v.horizon_product < 0.0) {
    v.reason = TrapFreeReason::SaddleDomain;
  } else if (v.small_T_product < 0.0) {
    v.reason = TrapFreeReason::SmallTCondition;
  } else {
    v.reason = TrapFreeReason::Inconclusive;
  }
  return v;
}

// Quadratic form of the Hessian on bump pairs.

double quadratic_form_G(const ProblemVectors& pv, double t1, double t2, double lambda, double mu) {
  const Bloch3 r1 = kernel_direction(pv.phi_v, t1);
  const Bloch3 r2 = kernel_direction(pv.phi_v, t2);
  const Bloch3& a = pv.aT;
  return lambda * lambda * dot(pv.r, r2) * dot(a, r2) +
         2.0 * lambda * mu * dot(pv.r, r1) * dot(a, r2) +
         mu * mu * dot(pv.r, r1) * dot(a, r1);
}

double g_discriminant(const ProblemVectors& pv, double t1, double t2) {
  const Bloch3 r1 = kernel_direction(pv.phi_v, t1);
  const Bloch3 r2 = kernel_direction(pv.phi_v, t2);
  const double rr1 = dot(pv.r, r1);
  const double rr2 = dot(pv.r, r2);
  const double ar1 = dot(pv.aT, r1);
  const double ar2 = dot(pv.aT, r2);
  return rr1 * rr1 * ar2 * ar2 - rr2 * ar2 * rr1 * ar1;
}

PiecewiseControl bump_pair(double T, double t1, double t2, double eps, double scale,
                           double at_first, double at_second) {
  const double h = 0.5 * eps;
  if (!(t1 - h > 0.0 && t1 + h < t2 - h && t2 + h < T)) {
    throw InvalidInput("bump pair does not fit: need eps/2 < t1, eps < t2 - t1, t2 < T - eps/2");
  }
  const double height = scale / eps;
  return PiecewiseControl({0.0, t1 - h, t1 + h, t2 - h, t2 + h, T},
                          {0.0, at_first * height, 0.0, at_second * height, 0.0});
}

SaddleProbeReport probe_saddle(const ReducedProblem& rp, const SaddleProbeOptions& options) {
  const ProblemVectors pv = vectors(rp);
  const DomainLabel label = classify(pv);
  if (!is_saddle_domain(label)) {
    throw OutOfRegime("probe_saddle needs a problem in D_III or D_IV, got " +
                      std::string(name(label)));
  }
  const double T = rp.T;
  const double phi_sign = phi_psi(pv).phi > 0.0 ? 1.0 : -1.0;

  SaddleProbeReport report;

  // Near t1 = t2 = 0 the product (r.r1)(a.r2) tends to Phi / |v|^2.
  double t1 = T / 8.0;
  double t2 = T / 4.0;
  bool placed = false;
  for (int i = 0; i <= options.time_shrink_budget; ++i) {
    const double cross_term = dot(pv.r, kernel_direction(pv.phi_v, t1)) *
                              dot(pv.aT, kernel_direction(pv.phi_v, t2));
    if (cross_term * phi_sign > 0.0 && g_discriminant(pv, t1, t2) > 0.0) {
      placed = true;
      break;
    }
    t1 *= 0.5;
    t2 *= 0.5;
  }
  report.t1 = t1;
  report.t2 = t2;
  report.J0 = objective(rp, PiecewiseControl::zero(T));
  if (!placed) return report;

  // Extremes of G on the unit circle in (lambda, mu).
  double g_min = 0.0;
  double g_max = 0.0;
  for (int k = 0; k < options.circle_samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / options.circle_samples;
    const CoefficientPair p{std::cos(theta), std::sin(theta)};
    const double g = quadratic_form_G(pv, t1, t2, p.lambda, p.mu);
    if (g < g_min) {
      g_min = g;
      report.ascent_pair = p;
    }
    if (g > g_max) {
      g_max = g;
      report.descent_pair = p;
    }
  }
  report.G_ascent = g_min;
  report.G_descent = g_max;
  if (!(g_min < 0.0 && g_max > 0.0)) return report;

  // Second-order change of J on a bump pair of area s is -|v|^2 G s^2.
  const double eps0 = 0.25 * (t2 - t1);
  const double s0 = 0.1 / rp.v.norm();
  bool previous_ok = false;
  for (int k = 0; k < options.refinement_budget; ++k) {
    const double scale = std::ldexp(1.0, -k);
    const double eps = eps0 * scale;
    const double s = s0 * scale;
    // lambda sits on the bump at t2, mu on the one at t1.
    const double j_up = objective(
        rp, bump_pair(T, t1, t2, eps, s, report.ascent_pair.mu, report.ascent_pair.lambda));
    const double j_down = objective(
        rp, bump_pair(T, t1, t2, eps, s, report.descent_pair.mu, report.descent_pair.lambda));
    const bool ok = j_down < report.J0 && report.J0 < j_up;

    report.epsilon = eps;
    report.amplitude_scale = s;
    report.J_up = j_up;
    report.J_down = j_down;
    report.refinements = k + 1;
    if (ok && previous_ok) {
      report.verdict = SaddleVerdict::Saddle;
      return report;
    }
    previous_ok = ok;
  }
  return report;
}

int span_rank(const ReducedProblem& rp, const PiecewiseControl& f, int samples) {
  if (samples < 3) throw InvalidInput("span_rank needs at least 3 samples per interval");
  const auto amps = f.amplitudes();
  const Hermitian2 coupling = rp.coupling();

  Eigen::Matrix<double, 3, Eigen::Dynamic> columns(3, static_cast<Eigen::Index>(amps.size()) * samples);
  Eigen::Index col = 0;
  Unitary2 start;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const Hermitian2 h = reduced_generator(rp, amps[i]);
    for (int j = 0; j < samples; ++j) {
      const double tau = f.width(i) * j / (samples - 1);
      const Unitary2 u = expi(h, tau) * start;
      const Bloch3 w = u.adjoint().conjugate(coupling).h;
      columns.col(col++) << w.x, w.y, w.z;
    }
    start = expi(h, f.width(i)) * start;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > 1e-9 * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace qcl
