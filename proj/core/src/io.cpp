#include "qcl/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "qcl/error.hpp"

namespace qcl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_decimal(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc{} && res.ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

// key = value lines; '#' comments and blank lines skipped.
std::map<std::string, std::string> read_key_values(std::istream& in, const char* what) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput(std::string(what) + " line " + std::to_string(lineno) +
                         ": expected 'key = value'");
    }
    std::string key(trim(body.substr(0, eq)));
    if (!kv.emplace(key, std::string(trim(body.substr(eq + 1)))).second) {
      throw InvalidInput(std::string(what) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (auto tok : split_ws(text)) {
    try {
      out.push_back(parse_real(tok));
    } catch (const InvalidInput& e) {
      throw InvalidInput("'" + key + "': " + e.what());
    }
  }
  return out;
}

Hermitian2 parse_pauli(const std::string& text, const std::string& key) {
  const auto v = parse_list(text, key);
  if (v.size() != 4) {
    throw InvalidInput("'" + key + "' needs 4 Pauli coefficients (c0 hx hy hz), got " +
                       std::to_string(v.size()));
  }
  return {v[0], {v[1], v[2], v[3]}};
}

std::string format_pauli(const Hermitian2& m) {
  return format_real(m.c0) + " " + format_real(m.h.x) + " " + format_real(m.h.y) + " " +
         format_real(m.h.z);
}

std::vector<std::string_view> split_csv(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view text) {
  const std::string_view s = trim(text);
  double value = 0.0;
  if (parse_decimal(s, value)) return value;

  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) {
    throw InvalidInput("cannot parse number '" + std::string(s) + "'");
  }
  std::string_view head = trim(s.substr(0, pos));
  std::string_view tail = trim(s.substr(pos + 2));

  double p = 1.0;
  if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  if (head == "-") {
    p = -1.0;
  } else if (!head.empty() && head != "+" && !parse_decimal(head, p)) {
    throw InvalidInput("cannot parse multiplier in '" + std::string(s) + "'");
  }
  double q = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/' || !parse_decimal(trim(tail.substr(1)), q) || q == 0.0) {
      throw InvalidInput("cannot parse divisor in '" + std::string(s) + "'");
    }
  }
  return p * std::numbers::pi / q;
}

void write_problem(std::ostream& out, const ControlProblem& p) {
  out << "# qcl problem: Pauli coefficients c0 hx hy hz\n";
  out << "H0 = " << format_pauli(p.H0) << '\n';
  out << "V = " << format_pauli(p.V) << '\n';
  out << "rho0 = " << format_pauli(p.rho0) << '\n';
  out << "A = " << format_pauli(p.A) << '\n';
  out << "T = " << format_real(p.T) << '\n';
}

ControlProblem read_problem(std::istream& in) {
  const auto kv = read_key_values(in, "problem file");
  const std::set<std::string> keys{"H0", "V", "rho0", "A", "T"};
  for (const auto& [k, _] : kv) {
    if (!keys.contains(k)) throw InvalidInput("problem file: unknown key '" + k + "'");
  }
  for (const auto& k : keys) {
    if (!kv.contains(k)) throw InvalidInput("problem file: missing key '" + k + "'");
  }
  ControlProblem p;
  p.H0 = parse_pauli(kv.at("H0"), "H0");
  p.V = parse_pauli(kv.at("V"), "V");
  p.rho0 = parse_pauli(kv.at("rho0"), "rho0");
  p.A = parse_pauli(kv.at("A"), "A");
  p.T = parse_real(kv.at("T"));
  validate(p);
  return p;
}

void write_control(std::ostream& out, const PiecewiseControl& f) {
  out << "# qcl control: " << f.size() << " intervals\n";
  out << "breakpoints =";
  for (double t : f.breakpoints()) out << ' ' << format_real(t);
  out << "\namplitudes =";
  for (double a : f.amplitudes()) out << ' ' << format_real(a);
  out << '\n';
}

PiecewiseControl read_control(std::istream& in) {
  const auto kv = read_key_values(in, "control file");
  for (const auto& [k, _] : kv) {
    if (k != "breakpoints" && k != "amplitudes") {
      throw InvalidInput("control file: unknown key '" + k + "'");
    }
  }
  if (!kv.contains("breakpoints") || !kv.contains("amplitudes")) {
    throw InvalidInput("control file needs 'breakpoints' and 'amplitudes'");
  }
  return PiecewiseControl(parse_list(kv.at("breakpoints"), "breakpoints"),
                          parse_list(kv.at("amplitudes"), "amplitudes"));
}

void write_scan_csv(std::ostream& out, const ScanGrid& grid) {
  out << kScanCsvHeader << '\n';
  for (const auto& c : grid.cells) {
    out << format_real(c.phi) << ',' << format_real(c.psi) << ',' << format_real(c.J0) << ','
        << format_real(c.P) << ',' << c.count_below << ',' << c.samples << ','
        << short_code(c.label) << '\n';
  }
}

ScanGrid read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kScanCsvHeader) {
    throw InvalidInput("scan CSV: header must be '" + std::string(kScanCsvHeader) + "'");
  }
  ScanGrid grid;
  std::set<double> phis;
  std::set<double> psis;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 7) {
      throw InvalidInput("scan CSV line " + std::to_string(lineno) + ": expected 7 fields");
    }
    ScanCell c;
    c.phi = parse_real(f[0]);
    c.psi = parse_real(f[1]);
    c.J0 = parse_real(f[2]);
    c.P = parse_real(f[3]);
    c.count_below = static_cast<std::uint32_t>(parse_real(f[4]));
    c.samples = static_cast<std::uint32_t>(parse_real(f[5]));
    c.label = parse_domain_label(f[6]);
    phis.insert(c.phi);
    psis.insert(c.psi);
    grid.cells.push_back(c);
  }
  grid.grid_phi = static_cast<std::uint32_t>(phis.size());
  grid.grid_psi = static_cast<std::uint32_t>(psis.size());
  if (static_cast<std::size_t>(grid.grid_phi) * grid.grid_psi != grid.cells.size()) {
    throw InvalidInput("scan CSV: cells do not form a full grid");
  }
  return grid;
}

ControlProblem read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open problem file '" + path + "'");
  return read_problem(in);
}

PiecewiseControl read_control_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open control file '" + path + "'");
  return read_control(in);
}

}  // namespace qcl
