#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <tuple>

#include "qcl/dynamics.hpp"
#include "qcl/error.hpp"
#include "qcl/io.hpp"
#include "qcl/landscape.hpp"
#include "qcl/problem.hpp"
#include "qcl/report.hpp"
#include "qcl/scan.hpp"

namespace qcl::cli {

namespace {

using nlohmann::ordered_json;

// A resolved invocation: every option the subcommand reads, as text, with
// problem and control files inlined. This is what a manifest records and
// what replay feeds back in.
struct Invocation {
  std::string command;
  ordered_json config = ordered_json::object();
};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidInput("write failed for '" + path + "'");
}

const std::string& get(const Invocation& inv, const char* key) {
  const auto it = inv.config.find(key);
  if (it == inv.config.end() || !it->is_string()) {
    throw InvalidInput(std::string("missing setting '") + key + "'");
  }
  return it->get_ref<const std::string&>();
}

bool has(const Invocation& inv, const char* key) {
  const auto it = inv.config.find(key);
  return it != inv.config.end() && it->is_string() && !it->get_ref<const std::string&>().empty();
}

template <class U>
U parse_unsigned(const std::string& text, const char* what) {
  U value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidInput(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

std::pair<std::uint32_t, std::uint32_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw InvalidInput("grid must be <n>x<m>, got '" + text + "'");
  return {parse_unsigned<std::uint32_t>(text.substr(0, x), "grid"),
          parse_unsigned<std::uint32_t>(text.substr(x + 1), "grid")};
}

std::pair<double, double> parse_pair(const std::string& text) {
  const auto c = text.find(',');
  if (c == std::string::npos) throw InvalidInput("expected <x>,<y>, got '" + text + "'");
  return {parse_real(text.substr(0, c)), parse_real(text.substr(c + 1))};
}

ControlProblem problem_of(const Invocation& inv) {
  std::istringstream in(get(inv, "problem"));
  ControlProblem p = read_problem(in);
  if (has(inv, "T")) {
    p.T = parse_real(get(inv, "T"));
    validate(p);
  }
  return p;
}

PiecewiseControl control_of(const Invocation& inv) {
  std::istringstream in(get(inv, "control"));
  return read_control(in);
}

ordered_json parsed(const std::string& json_text) { return ordered_json::parse(json_text); }

// Subcommands. Each returns the text of its single output.

std::string cmd_info(const Invocation& inv) {
  const ControlProblem p = problem_of(inv);
  ordered_json j;
  j["f0"] = exceptional_control(p.H0, p.V);
  j["T0"] = critical_time(p.H0, p.V);
  j["T"] = p.T;
  Reduction red;
  try {
    red = reduce(p);
  } catch (const OutOfRegime&) {
    j["vectors"] = nullptr;
    j["label"] = "NotReducible";
    return dump(j);
  }
  j["time_scale"] = red.time_scale;
  j["reduced_T"] = red.problem.T;
  j["trace_A"] = red.problem.trace_A();
  if (red.problem.a0.norm() == 0.0) {
    j["vectors"] = nullptr;
    j["label"] = "TrivialObservable";
    return dump(j);
  }
  const ProblemVectors pv = vectors(red.problem);
  j["vectors"] = parsed(to_json(pv));
  if (is_planar(pv)) {
    j["label"] = name(classify(pv));
    j["horizon_type"] = name(horizon_type(pv));
  } else {
    j["label"] = "NonPlanar";
    j["horizon_type"] = "NonPlanar";
  }
  return dump(j);
}

std::string cmd_evaluate(const Invocation& inv) {
  const ControlProblem p = problem_of(inv);
  const PiecewiseControl f = control_of(inv);
  ordered_json j;
  j["J"] = objective(p, f);
  j["T"] = p.T;
  j["intervals"] = f.size();
  return dump(j);
}

std::string cmd_hessian(const Invocation& inv) {
  const ReducedProblem rp = reduce(problem_of(inv)).problem;
  const ProblemVectors pv = vectors(rp);
  const auto [n1, n2] = parse_grid(get(inv, "grid"));
  if (n1 == 0 || n2 == 0) throw InvalidInput("grid sizes must be positive");
  std::ostringstream out;
  out << "t1,t2,kernel,second_derivative\n";
  for (std::uint32_t i = 0; i < n1; ++i) {
    for (std::uint32_t k = 0; k < n2; ++k) {
      const double t1 = rp.T * (i + 0.5) / n1;
      const double t2 = rp.T * (k + 0.5) / n2;
      const HessianSample s = hessian_kernel_at_zero(pv, t1, t2);
      out << format_real(t1) << ',' << format_real(t2) << ',' << format_real(s.value) << ','
          << format_real(kHessianKernelScale * s.value) << '\n';
    }
  }
  return out.str();
}

std::string cmd_classify(const Invocation& inv) {
  const ProblemVectors pv = vectors(reduce(problem_of(inv)).problem);
  const DomainLabel label = classify(pv);
  const PhiPsi pp = phi_psi(pv);
  ordered_json j;
  j["Phi"] = pp.phi;
  j["Psi"] = pp.psi;
  j["label"] = name(label);
  j["horizon_type"] = name(horizon_type(pv));
  return dump(j);
}

std::string cmd_trap_free(const Invocation& inv) {
  return to_json(assess_trap_free(vectors(reduce(problem_of(inv)).problem)));
}

std::string cmd_probe_saddle(const Invocation& inv) {
  return to_json(probe_saddle(reduce(problem_of(inv)).problem));
}

std::string cmd_span_rank(const Invocation& inv) {
  const Reduction red = reduce(problem_of(inv));
  const PiecewiseControl f = reduce_control(red, control_of(inv));
  const int samples = parse_unsigned<int>(get(inv, "samples"), "samples");
  ordered_json j;
  j["rank"] = span_rank(red.problem, f, samples);
  j["samples_per_interval"] = samples;
  return dump(j);
}

ScanConfig scan_config_of(const Invocation& inv) {
  ScanConfig cfg;
  cfg.T = parse_real(get(inv, "T"));
  std::tie(cfg.grid_phi, cfg.grid_psi) = parse_grid(get(inv, "grid"));
  cfg.samples = parse_unsigned<std::uint32_t>(get(inv, "samples"), "samples");
  cfg.intervals = parse_unsigned<std::uint32_t>(get(inv, "intervals"), "intervals");
  cfg.amplitude_sigma = parse_real(get(inv, "sigma"));
  cfg.seed = parse_unsigned<std::uint64_t>(get(inv, "seed"), "seed");
  if (!(cfg.T > 0.0)) throw InvalidInput("T must be positive");
  if (cfg.samples == 0 || cfg.intervals == 0) {
    throw InvalidInput("samples and intervals must be positive");
  }
  if (!(cfg.amplitude_sigma >= 0.0)) throw InvalidInput("sigma must be non-negative");
  return cfg;
}

std::string cmd_scan(const Invocation& inv) {
  const ScanConfig cfg = scan_config_of(inv);
  const std::string& format = get(inv, "format");
  if (format != "csv" && format != "json") {
    throw InvalidInput("format must be csv or json, got '" + format + "'");
  }
  const ScanGrid grid = run_scan(cfg);
  if (format == "csv") {
    std::ostringstream out;
    write_scan_csv(out, grid);
    return out.str();
  }
  ordered_json j;
  j["grid_phi"] = grid.grid_phi;
  j["grid_psi"] = grid.grid_psi;
  j["T"] = cfg.T;
  j["seed"] = cfg.seed;
  ordered_json cells = ordered_json::array();
  for (const ScanCell& c : grid.cells) {
    cells.push_back({{"phi", c.phi},
                     {"psi", c.psi},
                     {"J0", c.J0},
                     {"P", c.P},
                     {"count_below", c.count_below},
                     {"samples", c.samples},
                     {"label", short_code(c.label)}});
  }
  j["cells"] = std::move(cells);
  return dump(j);
}

std::string cmd_optimize(const Invocation& inv) {
  const ReducedProblem rp = reduce(problem_of(inv)).problem;
  const auto intervals = parse_unsigned<std::uint32_t>(get(inv, "intervals"), "intervals");
  const auto seed = parse_unsigned<std::uint64_t>(get(inv, "seed"), "seed");
  const double sigma = parse_real(get(inv, "sigma"));
  if (intervals == 0) throw InvalidInput("intervals must be positive");
  OptimizeOptions opts;
  opts.max_iter = parse_unsigned<int>(get(inv, "max_iter"), "max-iter");
  opts.tol = parse_real(get(inv, "tol"));
  opts.start_seed = seed;
  return to_json(optimize(rp, intervals, random_start(rp.T, intervals, sigma, seed), opts));
}

std::string cmd_preset(const Invocation& inv) {
  const std::string& which = get(inv, "name");
  const double T = parse_real(get(inv, "T"));
  ReducedProblem rp;
  if (which == "spin-rotation") {
    const auto [vx, vy] = parse_pair(get(inv, "v"));
    rp = spin_rotation({vx, vy, 0.0}, T);
  } else if (which == "landau-zener") {
    rp = landau_zener(T);
  } else if (which == "scan-default") {
    rp = scan_default(parse_real(get(inv, "phi")), parse_real(get(inv, "psi")), T);
  } else {
    throw InvalidInput("unknown preset '" + which +
                       "' (spin-rotation, landau-zener, scan-default)");
  }
  validate(rp);
  std::ostringstream out;
  out << "# preset " << which << "\n";
  write_problem(out, to_control_problem(rp));
  return out.str();
}

using Handler = std::function<std::string(const Invocation&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"info", cmd_info},           {"evaluate", cmd_evaluate},
      {"hessian", cmd_hessian},     {"classify", cmd_classify},
      {"trap-free", cmd_trap_free}, {"probe-saddle", cmd_probe_saddle},
      {"span-rank", cmd_span_rank}, {"scan", cmd_scan},
      {"optimize", cmd_optimize},   {"preset", cmd_preset},
  };
  return table;
}

std::string manifest_text(const Invocation& inv, const std::string& output) {
  ordered_json j;
  j["tool"] = "qcl";
  j["version"] = QCL_VERSION;
  j["subcommand"] = inv.command;
  j["seed"] = has(inv, "seed") ? ordered_json(get(inv, "seed")) : ordered_json(nullptr);
  j["config"] = inv.config;
  j["outputs"] = ordered_json::array({output});
  return dump(j);
}

void emit(const Invocation& inv, const std::string& out_path, std::ostream& out) {
  const auto it = handlers().find(inv.command);
  if (it == handlers().end()) throw InvalidInput("unknown subcommand '" + inv.command + "'");
  const std::string text = it->second(inv);
  if (out_path.empty()) {
    out << text;
    return;
  }
  write_text(out_path, text);
  write_text(out_path + ".manifest.json", manifest_text(inv, out_path));
}

Invocation from_manifest(const std::string& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("manifest '" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("subcommand") || !j["subcommand"].is_string() ||
      !j.contains("config") || !j["config"].is_object()) {
    throw InvalidInput("manifest '" + path + "' lacks subcommand or config");
  }
  Invocation inv;
  inv.command = j["subcommand"].get<std::string>();
  inv.config = j["config"];
  if (!handlers().contains(inv.command)) {
    throw InvalidInput("manifest '" + path + "' names unknown subcommand '" + inv.command + "'");
  }
  return inv;
}

std::string manifest_output(const std::string& path) {
  const ordered_json j = ordered_json::parse(read_text(path));
  if (!j.contains("outputs") || !j["outputs"].is_array() || j["outputs"].empty()) {
    throw InvalidInput("manifest '" + path + "' records no output path");
  }
  return j["outputs"][0].get<std::string>();
}

// Option values as parsed from the command line, before resolution.
struct Flags {
  std::string problem, control, T, seed, grid, samples, intervals, out, format, sigma, max_iter,
      tol, v, phi, psi, name;
};

struct Spec {
  const char* description;
  std::vector<std::string> keys;  // resolved settings, in manifest order
};

const std::map<std::string, Spec>& specs() {
  static const std::map<std::string, Spec> table{
      {"info", {"f0, T0, Bloch vectors, angles and domain label of a problem", {"problem", "T"}}},
      {"evaluate", {"objective J for a control", {"problem", "control"}}},
      {"hessian", {"Hessian kernel at f = 0 on a (t1, t2) grid, CSV", {"problem", "T", "grid"}}},
      {"classify", {"Phi, Psi, domain label and finite-horizon type", {"problem", "T"}}},
      {"trap-free", {"trap-free conditions and verdict", {"problem", "T"}}},
      {"probe-saddle", {"certify f = 0 as a saddle in D_III / D_IV", {"problem", "T"}}},
      {"span-rank", {"rank of the span of the evolved coupling", {"problem", "control", "samples"}}},
      {"scan",
       {"Monte Carlo scan over (phi, psi)",
        {"T", "grid", "samples", "intervals", "sigma", "seed", "format"}}},
      {"optimize",
       {"gradient ascent from a seeded random start",
        {"problem", "T", "intervals", "sigma", "seed", "max_iter", "tol"}}},
      {"preset", {"write a named problem file", {"name", "T", "v", "phi", "psi"}}},
  };
  return table;
}

std::string flag_value(const Flags& f, const std::string& key) {
  static const std::map<std::string, std::string Flags::*> members{
      {"problem", &Flags::problem}, {"control", &Flags::control},     {"T", &Flags::T},
      {"seed", &Flags::seed},       {"grid", &Flags::grid},           {"samples", &Flags::samples},
      {"intervals", &Flags::intervals}, {"format", &Flags::format},   {"sigma", &Flags::sigma},
      {"max_iter", &Flags::max_iter},   {"tol", &Flags::tol},         {"v", &Flags::v},
      {"phi", &Flags::phi},         {"psi", &Flags::psi},             {"name", &Flags::name},
  };
  return f.*members.at(key);
}

Invocation resolve(const std::string& command, const Flags& f) {
  Invocation inv;
  inv.command = command;
  for (const std::string& key : specs().at(command).keys) {
    std::string value = flag_value(f, key);
    if (key == "problem") {
      if (value.empty()) throw InvalidInput("--problem is required");
      value = read_text(value);
    } else if (key == "control") {
      if (value.empty()) throw InvalidInput("--control is required");
      value = read_text(value);
    }
    inv.config[key] = value;
  }
  return inv;
}

void add_flags(CLI::App& sub, const std::string& command, Flags& f) {
  auto has_key = [&](const char* key) {
    const auto& keys = specs().at(command).keys;
    return std::find(keys.begin(), keys.end(), key) != keys.end();
  };
  const bool scan = command == "scan";
  const bool optimize = command == "optimize";
  if (has_key("problem")) sub.add_option("--problem", f.problem, "problem file")->required();
  if (has_key("control")) sub.add_option("--control", f.control, "control file")->required();
  if (command == "preset") f.T = "pi/12";
  if (has_key("T")) {
    auto* opt = sub.add_option("--T", f.T,
                               scan ? "horizon, decimal or p*pi/q"
                                    : "horizon override, decimal or p*pi/q");
    if (scan) opt->required();
    if (command == "preset") opt->capture_default_str();
  }
  if (has_key("grid")) {
    f.grid = scan ? "101x101" : "21x21";
    sub.add_option("--grid", f.grid, "grid size <n>x<m>")->capture_default_str();
  }
  if (has_key("samples")) {
    f.samples = scan ? "300" : "5";
    sub.add_option("--samples", f.samples,
                   scan ? "controls per cell" : "sample points per interval")
        ->capture_default_str();
  }
  if (has_key("intervals")) {
    f.intervals = "100";
    sub.add_option("--intervals", f.intervals, "piecewise-constant intervals")
        ->capture_default_str();
  }
  if (has_key("sigma")) {
    f.sigma = "1";
    sub.add_option("--sigma", f.sigma, "amplitude standard deviation")->capture_default_str();
  }
  if (has_key("seed")) {
    f.seed = scan ? "0" : "1";
    sub.add_option("--seed", f.seed, "random seed (u64)")->capture_default_str();
  }
  if (has_key("format")) {
    f.format = "csv";
    sub.add_option("--format", f.format, "csv or json")->capture_default_str();
  }
  if (optimize) {
    f.max_iter = "5000";
    f.tol = "1e-9";
    sub.add_option("--max-iter", f.max_iter, "iteration cap")->capture_default_str();
    sub.add_option("--tol", f.tol, "gradient max-norm tolerance")->capture_default_str();
  }
  if (command == "preset") {
    f.v = "1,0";
    f.phi = "0";
    f.psi = "0";
    sub.add_option("name", f.name, "spin-rotation, landau-zener or scan-default")->required();
    sub.add_option("--v", f.v, "coupling <vx>,<vy> for spin-rotation")->capture_default_str();
    sub.add_option("--phi", f.phi, "coupling angle for scan-default")->capture_default_str();
    sub.add_option("--psi", f.psi, "observable angle for scan-default")->capture_default_str();
  }
  sub.add_option("--out", f.out, "output path; a manifest is written to <out>.manifest.json");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qubit control landscape analysis", "qcl"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", QCL_VERSION);

  std::map<std::string, Flags> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [command, spec] : specs()) {
    CLI::App* sub = app.add_subcommand(command, spec.description);
    add_flags(*sub, command, flags[command]);
    subs[command] = sub;
  }
  std::string replay_manifest;
  std::string replay_out;
  CLI::App* replay = app.add_subcommand("replay", "re-run the invocation recorded in a manifest");
  replay->add_option("manifest", replay_manifest, "manifest file")->required();
  replay->add_option("--out", replay_out, "output path (default: the recorded one)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForVersion" ? std::string(QCL_VERSION) + "\n"
                                               : app.help());
      return kExitOk;
    }
    err << "qcl: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (const auto& [command, sub] : subs) {
      if (sub->parsed()) failing = sub;
    }
    if (replay->parsed()) failing = replay;
    err << failing->help();
    return kExitConfig;
  }

  try {
    if (replay->parsed()) {
      const Invocation inv = from_manifest(replay_manifest);
      emit(inv, replay_out.empty() ? manifest_output(replay_manifest) : replay_out, out);
      return kExitOk;
    }
    for (const auto& [command, sub] : subs) {
      if (!sub->parsed()) continue;
      emit(resolve(command, flags[command]), flags[command].out, out);
      return kExitOk;
    }
    err << app.help();
    return kExitConfig;
  } catch (const OutOfRegime& e) {
    err << "qcl: out of regime: " << e.what() << "\n";
    return kExitRegime;
  } catch (const InvalidInput& e) {
    err << "qcl: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "qcl: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "qcl: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace qcl::cli
