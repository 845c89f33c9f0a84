#include "ruelle/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class LineError {
 public:
  explicit LineError(int line) : line_(line) {}
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("config line " + std::to_string(line_) + ": " + msg);
  }

 private:
  int line_;
};

double to_double(const std::string& s, const LineError& at) {
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x))
    at.fail("expected a number, got '" + s + "'");
  return x;
}

int to_int(const std::string& s, const LineError& at) {
  int x = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    at.fail("expected an integer, got '" + s + "'");
  return x;
}

// Plain numbers or multiples of pi: "1.5", "pi", "pi/2", "3*pi/4".
double to_angle(const std::string& text, const LineError& at) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.find("pi") == std::string::npos) return to_double(s, at);
  double num = 1.0, den = 1.0;
  size_t slash = s.find('/');
  std::string head = s.substr(0, slash);
  if (slash != std::string::npos) den = to_double(s.substr(slash + 1), at);
  if (head != "pi") {
    if (head.size() < 4 || head.substr(head.size() - 3) != "*pi") at.fail("cannot parse angle '" + text + "'");
    num = to_double(head.substr(0, head.size() - 3), at);
  }
  if (den == 0.0) at.fail("division by zero in angle '" + text + "'");
  return num * std::numbers::pi / den;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> to_letters(const std::string& s, const LineError& at) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) {
    int k = to_int(item, at);
    if (k < 1) at.fail("letters are numbered from 1");
    out.push_back(k - 1);
  }
  if (out.empty()) at.fail("empty letter list");
  return out;
}

std::vector<Interval> to_bounds(const std::string& s, const LineError& at) {
  std::vector<Interval> out;
  for (const auto& item : split_list(s)) {
    size_t colon = item.find(':', 1);
    if (colon == std::string::npos) at.fail("bounds are written lo:hi, got '" + item + "'");
    Interval iv{to_double(trim(item.substr(0, colon)), at), to_double(trim(item.substr(colon + 1)), at)};
    if (!(iv.lo < iv.hi)) at.fail("bounds need lo < hi");
    out.push_back(iv);
  }
  if (out.empty()) at.fail("empty bounds list");
  return out;
}

std::string join_letters(const std::vector<int>& v) {
  std::string out;
  for (int k : v) out += (out.empty() ? "" : ",") + std::to_string(k + 1);
  return out;
}

std::string join_bounds(const std::vector<Interval>& v) {
  std::string out;
  for (const Interval& iv : v) out += (out.empty() ? "" : ",") + format_double(iv.lo) + ":" + format_double(iv.hi);
  return out;
}

void positive(double x, const LineError& at) {
  if (!(x > 0.0)) at.fail("value must be positive");
}

}  // namespace

RunConfig parse_config(const std::string& text, bool from_csv_header) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::string type;
  bool have_l1 = false, have_l2 = false, have_l3 = false, have_phi = false;
  std::optional<double> l0_re, l0_im;

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    LineError at(lineno);
    std::string line = trim(raw);
    std::string key, value;
    if (from_csv_header) {
      if (line.empty()) continue;
      if (line[0] != '#') break;
      line = trim(line.substr(1));
      size_t eq = line.find('=');
      if (eq == std::string::npos) continue;
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
      if (key.rfind("info.", 0) == 0) continue;
    } else {
      size_t hash = line.find('#');
      if (hash != std::string::npos) line = trim(line.substr(0, hash));
      if (line.empty()) continue;
      size_t eq = line.find('=');
      if (eq == std::string::npos) at.fail("expected 'key = value'");
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    }
    if (key.empty()) at.fail("missing key");
    if (value.empty()) at.fail("missing value for '" + key + "'");
    if (seen.count(key)) at.fail("'" + key + "' already set on line " + std::to_string(seen[key]));
    seen[key] = lineno;

    if (key == "surface.type") {
      if (value != "three_funnel" && value != "funneled_torus")
        at.fail("surface.type must be three_funnel or funneled_torus");
      type = value;
    } else if (key == "surface.l1") {
      cfg.surface.l1 = to_double(value, at);
      positive(cfg.surface.l1, at);
      have_l1 = true;
    } else if (key == "surface.l2") {
      cfg.surface.l2 = to_double(value, at);
      positive(cfg.surface.l2, at);
      have_l2 = true;
    } else if (key == "surface.l3") {
      cfg.surface.l3 = to_double(value, at);
      positive(cfg.surface.l3, at);
      have_l3 = true;
    } else if (key == "surface.phi") {
      cfg.surface.phi = to_angle(value, at);
      if (!(cfg.surface.phi > 0.0 && cfg.surface.phi < std::numbers::pi)) at.fail("surface.phi must lie in (0, pi)");
      have_phi = true;
    } else if (key == "symmetry") {
      if (value == "trivial")
        cfg.symmetry = SymmetryMode::trivial;
      else if (value == "full")
        cfg.symmetry = SymmetryMode::full;
      else
        at.fail("symmetry must be trivial or full");
    } else if (key == "nmax") {
      cfg.nmax = to_int(value, at);
      if (cfg.nmax < 1 || cfg.nmax > 12) at.fail("nmax must be in 1..12");
    } else if (key == "sigma") {
      cfg.sigma = to_double(value, at);
      positive(cfg.sigma, at);
    } else if (key == "lambda0.re") {
      l0_re = to_double(value, at);
    } else if (key == "lambda0.im") {
      l0_im = to_double(value, at);
    } else if (key == "grid.resolution") {
      cfg.grid_resolution = to_int(value, at);
      if (cfg.grid_resolution < 2 || cfg.grid_resolution > 4096) at.fail("grid.resolution must be in 2..4096");
    } else if (key == "grid.domain") {
      if (value == "full")
        cfg.refinement.mode = RefinementMode::full;
      else if (value == "level1")
        cfg.refinement.mode = RefinementMode::level1;
      else if (value == "explicit")
        cfg.refinement.mode = RefinementMode::explicit_bounds;
      else
        at.fail("grid.domain must be full, level1 or explicit");
    } else if (key == "grid.minus_letters") {
      cfg.refinement.minus_letters = to_letters(value, at);
    } else if (key == "grid.plus_letters") {
      cfg.refinement.plus_letters = to_letters(value, at);
    } else if (key == "grid.minus_bounds") {
      cfg.refinement.minus_bounds = to_bounds(value, at);
    } else if (key == "grid.plus_bounds") {
      cfg.refinement.plus_bounds = to_bounds(value, at);
    } else if (key == "base.x_min") {
      cfg.base.x_min = to_double(value, at);
    } else if (key == "base.x_max") {
      cfg.base.x_max = to_double(value, at);
    } else if (key == "base.y_min") {
      cfg.base.y_min = to_double(value, at);
      positive(cfg.base.y_min, at);
    } else if (key == "base.y_max") {
      cfg.base.y_max = to_double(value, at);
      positive(cfg.base.y_max, at);
    } else if (key == "scan.re_min") {
      cfg.scan.re_min = to_double(value, at);
    } else if (key == "scan.re_max") {
      cfg.scan.re_max = to_double(value, at);
    } else if (key == "scan.im_min") {
      cfg.scan.im_min = to_double(value, at);
    } else if (key == "scan.im_max") {
      cfg.scan.im_max = to_double(value, at);
    } else if (key == "scan.cell") {
      cfg.scan_cell = to_double(value, at);
      positive(cfg.scan_cell, at);
    } else if (key == "weight.amplitude") {
      cfg.amplitude = to_double(value, at);
    } else if (key == "metric") {
      if (value == "cayley_angular")
        cfg.metric = BoundaryMetric::cayley_angular;
      else if (value == "euclidean")
        cfg.metric = BoundaryMetric::euclidean;
      else
        at.fail("metric must be cayley_angular or euclidean");
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "threads") {
      cfg.threads = to_int(value, at);
      if (cfg.threads < 0) at.fail("threads must be >= 0");
    } else {
      at.fail("unknown key '" + key + "'");
    }
    cfg.explicit_keys.push_back(key);
  }

  LineError end(lineno);
  if (type.empty()) end.fail("missing required key surface.type");
  if (!have_l1 || !have_l2) end.fail("missing required keys surface.l1 and surface.l2");
  if (type == "three_funnel") {
    if (!have_l3) end.fail("missing required key surface.l3 for three_funnel");
    if (have_phi) LineError(seen["surface.phi"]).fail("surface.phi does not apply to three_funnel");
    cfg.surface.family = SurfaceFamily::three_funnel;
  } else {
    if (!have_phi) end.fail("missing required key surface.phi for funneled_torus");
    if (have_l3) LineError(seen["surface.l3"]).fail("surface.l3 does not apply to funneled_torus");
    cfg.surface.family = SurfaceFamily::funneled_torus;
  }
  if (l0_re.has_value() != l0_im.has_value())
    LineError(seen.count("lambda0.re") ? seen["lambda0.re"] : seen["lambda0.im"])
        .fail("lambda0.re and lambda0.im must be given together");
  if (l0_re) cfg.lambda0 = cplx(*l0_re, *l0_im);
  if (!(cfg.base.x_min < cfg.base.x_max) || !(cfg.base.y_min < cfg.base.y_max))
    end.fail("base region needs x_min < x_max and y_min < y_max");
  if (!(cfg.scan.re_min < cfg.scan.re_max) || !(cfg.scan.im_min < cfg.scan.im_max))
    end.fail("scan window needs re_min < re_max and im_min < im_max");
  if (cfg.refinement.mode == RefinementMode::explicit_bounds &&
      (cfg.refinement.minus_bounds.empty() || cfg.refinement.plus_bounds.empty()))
    end.fail("grid.domain = explicit needs grid.minus_bounds and grid.plus_bounds");
  return cfg;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> e;
  const auto& p = cfg.surface;
  bool torus = p.family == SurfaceFamily::funneled_torus;
  e.emplace_back("surface.type", torus ? "funneled_torus" : "three_funnel");
  e.emplace_back("surface.l1", format_double(p.l1));
  e.emplace_back("surface.l2", format_double(p.l2));
  if (torus)
    e.emplace_back("surface.phi", format_double(p.phi));
  else
    e.emplace_back("surface.l3", format_double(p.l3));
  e.emplace_back("symmetry", cfg.symmetry == SymmetryMode::full ? "full" : "trivial");
  e.emplace_back("nmax", std::to_string(cfg.nmax));
  e.emplace_back("sigma", format_double(cfg.sigma));
  if (cfg.lambda0) {
    e.emplace_back("lambda0.re", format_double(cfg.lambda0->real()));
    e.emplace_back("lambda0.im", format_double(cfg.lambda0->imag()));
  }
  e.emplace_back("grid.resolution", std::to_string(cfg.grid_resolution));
  const auto& r = cfg.refinement;
  e.emplace_back("grid.domain", r.mode == RefinementMode::full     ? "full"
                                : r.mode == RefinementMode::level1 ? "level1"
                                                                   : "explicit");
  if (!r.minus_letters.empty()) e.emplace_back("grid.minus_letters", join_letters(r.minus_letters));
  if (!r.plus_letters.empty()) e.emplace_back("grid.plus_letters", join_letters(r.plus_letters));
  if (!r.minus_bounds.empty()) e.emplace_back("grid.minus_bounds", join_bounds(r.minus_bounds));
  if (!r.plus_bounds.empty()) e.emplace_back("grid.plus_bounds", join_bounds(r.plus_bounds));
  e.emplace_back("base.x_min", format_double(cfg.base.x_min));
  e.emplace_back("base.x_max", format_double(cfg.base.x_max));
  e.emplace_back("base.y_min", format_double(cfg.base.y_min));
  e.emplace_back("base.y_max", format_double(cfg.base.y_max));
  e.emplace_back("scan.re_min", format_double(cfg.scan.re_min));
  e.emplace_back("scan.re_max", format_double(cfg.scan.re_max));
  e.emplace_back("scan.im_min", format_double(cfg.scan.im_min));
  e.emplace_back("scan.im_max", format_double(cfg.scan.im_max));
  e.emplace_back("scan.cell", format_double(cfg.scan_cell));
  e.emplace_back("weight.amplitude", format_double(cfg.amplitude));
  e.emplace_back("metric", cfg.metric == BoundaryMetric::cayley_angular ? "cayley_angular" : "euclidean");
  e.emplace_back("output", cfg.output);
  e.emplace_back("threads", std::to_string(cfg.threads));
  return e;
}

SchottkySurface make_surface(const RunConfig& cfg) {
  const auto& p = cfg.surface;
  if (p.family == SurfaceFamily::three_funnel) return build_three_funnel(p.l1, p.l2, p.l3);
  return build_funneled_torus(p.l1, p.l2, p.phi);
}

SymmetryGroup make_group(const RunConfig& cfg, const SchottkySurface& s) {
  return cfg.symmetry == SymmetryMode::full ? full_symmetry(s) : trivial_group();
}

}  // namespace ruelle
