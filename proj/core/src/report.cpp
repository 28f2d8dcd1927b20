#include "qcl/report.hpp"

#include <json.hpp>

namespace qcl {

namespace {

using nlohmann::ordered_json;

ordered_json vec(const Bloch3& u) { return ordered_json::array({u.x, u.y, u.z}); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_json(const TrapFreeVerdict& v) {
  ordered_json j;
  j["reason"] = name(v.reason);
  j["Phi"] = v.Phi;
  j["Psi"] = v.Psi;
  j["alpha"] = v.alpha;
  j["beta"] = v.beta;
  j["T"] = v.T;
  j["horizon_product"] = v.horizon_product;
  j["small_T_product"] = v.small_T_product;
  j["horizon_angle_form"] = v.horizon_angle_form;
  j["small_T_angle_form"] = v.small_T_angle_form;
  j["T_tilde"] = v.T_tilde ? ordered_json(*v.T_tilde) : ordered_json(nullptr);
  return dump(j);
}

std::string to_json(const SaddleProbeReport& r) {
  ordered_json j;
  j["verdict"] = name(r.verdict);
  j["t1"] = r.t1;
  j["t2"] = r.t2;
  j["epsilon"] = r.epsilon;
  j["amplitude_scale"] = r.amplitude_scale;
  j["ascent_pair"] = {{"lambda", r.ascent_pair.lambda}, {"mu", r.ascent_pair.mu}};
  j["descent_pair"] = {{"lambda", r.descent_pair.lambda}, {"mu", r.descent_pair.mu}};
  j["G_ascent"] = r.G_ascent;
  j["G_descent"] = r.G_descent;
  j["J0"] = r.J0;
  j["J_up"] = r.J_up;
  j["J_down"] = r.J_down;
  j["refinements"] = r.refinements;
  return dump(j);
}

std::string to_json(const OptimizeReport& r) {
  ordered_json j;
  j["start_seed"] = r.start_seed ? ordered_json(*r.start_seed) : ordered_json(nullptr);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["final_J"] = r.final_J;
  j["final_gradient_max"] = r.final_gradient_max;
  j["trace"] = r.trace;
  j["final_control"] = {
      {"breakpoints", std::vector<double>(r.final_control.breakpoints().begin(),
                                          r.final_control.breakpoints().end())},
      {"amplitudes", std::vector<double>(r.final_control.amplitudes().begin(),
                                         r.final_control.amplitudes().end())}};
  return dump(j);
}

std::string to_json(const ProblemVectors& pv) {
  ordered_json j;
  j["r"] = vec(pv.r);
  j["a0"] = vec(pv.a0);
  j["aT"] = vec(pv.aT);
  j["v"] = vec(pv.v);
  j["h0"] = vec(pv.h0);
  j["alpha"] = pv.alpha;
  j["beta"] = pv.beta;
  j["phi_v"] = pv.phi_v;
  j["T"] = pv.T;
  return dump(j);
}

}  // namespace qcl
