#include "ruelle/grids.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "ruelle/errors.hpp"

namespace ruelle {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
  double x = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && *begin == ' ') ++begin;
  auto res = std::from_chars(begin, end, x);
  if (res.ec != std::errc() || res.ptr != end) throw ValidationError("csv: cannot parse number '" + s + "'");
  return x;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double linspace(const Interval& iv, int i, int n) {
  if (i == n - 1) return iv.hi;
  return iv.lo + (iv.hi - iv.lo) * (static_cast<double>(i) / (n - 1));
}

struct AxisSample {
  double x = 0.0;
  int parent = -1;
};

// `count` points spread evenly along the pieces laid end to end, gaps removed.
std::vector<AxisSample> axis_samples(const std::vector<AxisPiece>& pieces, int count) {
  std::vector<double> start;
  double total = 0.0;
  for (const AxisPiece& p : pieces) {
    start.push_back(total);
    total += p.range.width();
  }
  std::vector<AxisSample> out;
  size_t k = 0;
  for (int i = 0; i < count; ++i) {
    if (i == count - 1) {
      out.push_back({pieces.back().range.hi, pieces.back().parent});
      break;
    }
    double s = total * (static_cast<double>(i) / (count - 1));
    while (k + 1 < pieces.size() && start[k + 1] <= s) ++k;
    out.push_back({std::min(pieces[k].range.lo + (s - start[k]), pieces[k].range.hi), pieces[k].parent});
  }
  return out;
}

template <class F>
void parallel_for(size_t count, int threads, F&& body) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  size_t workers = threads > 0 ? static_cast<size_t>(threads) : hw;
  workers = std::max<size_t>(1, std::min(workers, count));
  std::atomic<size_t> next{0};
  auto run = [&] {
    for (size_t i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

struct PointResult {
  cplx value{0.0};
  double rel_error = 0.0;
  bool ok = false;
};

PointResult evaluate_point(const GeodesicCache& cache, const PoleInfo& pole, const Target& target) {
  PointResult r;
  try {
    auto a = character_coefficients(cache, pole.lambda0, entry_integrals(cache, target), cache.N);
    for (int chi : pole.characters) {
      CoefficientSeries s = bell_recursion(a[static_cast<size_t>(chi)]);
      const Jet1& D = s.determinant();
      if (std::abs(D.d_lambda) < 1e-10 * std::abs(D.d_beta)) return r;
      r.value += D.d_beta / D.d_lambda;
      r.rel_error = std::max(r.rel_error, relative_error(s, cache.N, JetComponent::d_beta));
    }
    r.ok = std::isfinite(r.value.real()) && std::isfinite(r.value.imag());
    if (!r.ok) r.value = 0.0;
  } catch (const NumericalError&) {
    r = PointResult{};
  }
  return r;
}

void common_metadata(DistributionGrid& g, const GeodesicCache& cache, const PoleInfo& pole, int resolution) {
  std::string chars;
  for (int c : pole.characters) {
    if (!chars.empty()) chars += ";";
    chars += cache.group.characters()[static_cast<size_t>(c)].label;
  }
  g.metadata = {{"info.surface", describe(cache.surface.params())},
                {"info.group", cache.group.name()},
                {"info.nmax_used", std::to_string(cache.N)},
                {"info.sigma", format_double(cache.weight.sigma)},
                {"info.lambda0_re", format_double(pole.lambda0.real())},
                {"info.lambda0_im", format_double(pole.lambda0.imag())},
                {"info.pole_characters", chars},
                {"info.resolution", std::to_string(resolution)},
                {"info.metric", cache.weight.metric == BoundaryMetric::cayley_angular ? "cayley_angular" : "euclidean"}};
}

void error_metadata(DistributionGrid& g) {
  double sum = 0.0, worst = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < g.size(); ++i) {
    if (!g.ok[i]) continue;
    sum += g.rel_error[i];
    worst = std::max(worst, g.rel_error[i]);
    ++n;
  }
  g.metadata.emplace_back("info.points_ok", std::to_string(n) + "/" + std::to_string(g.size()));
  g.metadata.emplace_back("info.rel_error_mean", format_double(n ? sum / static_cast<double>(n) : 0.0));
  g.metadata.emplace_back("info.rel_error_max", format_double(worst));
}

}  // namespace

RefinedAxes refine_intervals(const SchottkySurface& s, const RefinementSpec& spec) {
  RefinedAxes axes;
  const int L = s.letters();
  auto full_axis = [&] {
    std::vector<AxisPiece> out;
    for (int i = 0; i < L; ++i) out.push_back({s.interval(i), i});
    return out;
  };
  auto level1_axis = [&](std::vector<int> letters) {
    if (letters.empty())
      for (int k = 0; k < L; ++k) letters.push_back(k);
    std::vector<AxisPiece> out;
    for (int k : letters) {
      if (k < 0 || k >= L) throw ValidationError("refine_intervals: letter out of range");
      const MoebiusMap& g = s.generator(k);
      const int target = s.inverse_letter(k);
      const Interval host = s.interval(target);
      for (int j = 0; j < L; ++j) {
        if (j == k) continue;
        Interval src = s.interval(j);
        double p = g.apply(cplx(src.lo, 0.0)).real(), q = g.apply(cplx(src.hi, 0.0)).real();
        Interval img{std::min(p, q), std::max(p, q)};
        if (!(host.contains(img.lo) && host.contains(img.hi)))
          throw NumericalError("refine_intervals: image interval escapes its host interval");
        out.push_back({img, target});
      }
    }
    std::sort(out.begin(), out.end(), [](const AxisPiece& a, const AxisPiece& b) { return a.range.lo < b.range.lo; });
    return out;
  };
  auto explicit_axis = [&](const std::vector<Interval>& bounds) {
    if (bounds.empty()) throw ValidationError("refine_intervals: explicit mode needs bounds on both axes");
    std::vector<AxisPiece> out;
    for (const Interval& b : bounds) {
      int parent = -1;
      for (int i = 0; i < L; ++i)
        if (b.lo < b.hi && s.interval(i).contains(b.lo) && s.interval(i).contains(b.hi)) parent = i;
      if (parent < 0)
        throw ValidationError("refine_intervals: bounds [" + format_double(b.lo) + ", " + format_double(b.hi) +
                              "] are not inside a fundamental interval");
      out.push_back({b, parent});
    }
    return out;
  };
  switch (spec.mode) {
    case RefinementMode::full:
      axes.minus = full_axis();
      axes.plus = full_axis();
      break;
    case RefinementMode::level1:
      axes.minus = level1_axis(spec.minus_letters);
      axes.plus = level1_axis(spec.plus_letters);
      break;
    case RefinementMode::explicit_bounds:
      axes.minus = explicit_axis(spec.minus_bounds);
      axes.plus = explicit_axis(spec.plus_bounds);
      break;
  }
  return axes;
}

bool in_fundamental_domain(const SchottkySurface& s, cplx z) {
  if (!(z.imag() > 0.0)) return false;
  for (const Disc& d : s.discs())
    if (std::abs(z - d.center) <= d.radius) return false;
  return true;
}

DistributionGrid section_grid(const GeodesicCache& cache, cplx lambda0, int resolution,
                              const RefinementSpec& refinement, const GridOptions& opts) {
  if (cache.weight.kind != WeightKind::gauss_section)
    throw ValidationError("section_grid: cache must carry a gauss_section weight");
  if (resolution < 2) throw ValidationError("section_grid: resolution must be >= 2");
  RefinedAxes axes = refine_intervals(cache.surface, refinement);
  PoleInfo pole = locate_pole(cache, lambda0);

  DistributionGrid g;
  g.mode = GridMode::section;
  auto minus = axis_samples(axes.minus, resolution);
  auto plus = axis_samples(axes.plus, resolution);
  for (const AxisSample& a : minus) {
    for (const AxisSample& b : plus) {
      if (a.parent == b.parent) continue;
      g.u.push_back(a.x);
      g.v.push_back(b.x);
    }
  }
  g.values.assign(g.u.size(), 0.0);
  g.ok.assign(g.u.size(), 0);
  g.rel_error.assign(g.u.size(), 0.0);
  parallel_for(g.u.size(), opts.threads, [&](size_t i) {
    SectionTarget t{BoundaryPoint::finite(g.u[i]), BoundaryPoint::finite(g.v[i])};
    PointResult r = evaluate_point(cache, pole, t);
    g.values[i] = r.value;
    g.ok[i] = r.ok ? 1 : 0;
    g.rel_error[i] = r.rel_error;
  });
  common_metadata(g, cache, pole, resolution);
  error_metadata(g);
  return g;
}

DistributionGrid section_grid(const SchottkySurface& s, const SymmetryGroup& G, cplx lambda0, double sigma,
                              int resolution, const RefinementSpec& refinement, int N) {
  WeightSpec w{WeightKind::gauss_section, sigma, 1.0, G.size() > 1, BoundaryMetric::cayley_angular};
  GeodesicCache cache = build_cache(s, G, N, w);
  return section_grid(cache, lambda0, resolution, refinement);
}

DistributionGrid base_grid(const GeodesicCache& cache, cplx lambda0, int resolution, const BaseRegion& region,
                           const GridOptions& opts) {
  if (cache.weight.kind != WeightKind::gauss_base)
    throw ValidationError("base_grid: cache must carry a gauss_base weight");
  if (resolution < 2) throw ValidationError("base_grid: resolution must be >= 2");
  if (!(region.x_min < region.x_max && 0.0 < region.y_min && region.y_min < region.y_max))
    throw ValidationError("base_grid: region must be a rectangle in the upper half-plane");
  PoleInfo pole = locate_pole(cache, lambda0);

  DistributionGrid g;
  g.mode = GridMode::base;
  Interval xs{region.x_min, region.x_max}, ys{region.y_min, region.y_max};
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      g.u.push_back(linspace(xs, i, resolution));
      g.v.push_back(linspace(ys, j, resolution));
    }
  }
  g.values.assign(g.u.size(), 0.0);
  g.ok.assign(g.u.size(), 0);
  g.rel_error.assign(g.u.size(), 0.0);
  parallel_for(g.u.size(), opts.threads, [&](size_t i) {
    cplx z(g.u[i], g.v[i]);
    if (!in_fundamental_domain(cache.surface, z)) return;
    PointResult r = evaluate_point(cache, pole, z);
    g.values[i] = r.value;
    g.ok[i] = r.ok ? 1 : 0;
    g.rel_error[i] = r.rel_error;
  });
  common_metadata(g, cache, pole, resolution);
  error_metadata(g);
  return g;
}

DistributionGrid base_grid(const SchottkySurface& s, const SymmetryGroup& G, cplx lambda0, double sigma,
                           int resolution, const BaseRegion& region, int N) {
  WeightSpec w{WeightKind::gauss_base, sigma, 1.0, G.size() > 1, BoundaryMetric::cayley_angular};
  GeodesicCache cache = build_cache(s, G, N, w);
  return base_grid(cache, lambda0, resolution, region);
}

void write_csv(std::ostream& os, const DistributionGrid& grid) {
  for (const auto& [k, v] : grid.metadata) os << "# " << k << "=" << v << "\n";
  if (grid.mode == GridMode::section)
    os << "x_minus,x_plus,re,im,ok\n";
  else
    os << "x,y,re,im,mask\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    os << format_double(grid.u[i]) << ',' << format_double(grid.v[i]) << ',' << format_double(grid.values[i].real())
       << ',' << format_double(grid.values[i].imag()) << ',' << grid.ok[i] << '\n';
  }
}

DistributionGrid read_csv(std::istream& is) {
  DistributionGrid g;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      g.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!have_header) {
      if (line == "x_minus,x_plus,re,im,ok")
        g.mode = GridMode::section;
      else if (line == "x,y,re,im,mask")
        g.mode = GridMode::base;
      else
        throw ValidationError("csv: unknown column header '" + line + "'");
      have_header = true;
      continue;
    }
    auto f = split(line, ',');
    if (f.size() != 5) throw ValidationError("csv: expected 5 columns");
    g.u.push_back(parse_double(f[0]));
    g.v.push_back(parse_double(f[1]));
    g.values.emplace_back(parse_double(f[2]), parse_double(f[3]));
    g.ok.push_back(f[4] == "1" ? 1 : 0);
  }
  if (!have_header) throw ValidationError("csv: missing column header");
  g.rel_error.assign(g.values.size(), 0.0);
  return g;
}

}  // namespace ruelle
