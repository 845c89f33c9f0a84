#include "ruelle/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

struct Sample {
  cplx z;
  Jet1 D;
};

struct Winding {
  double exact = 0.0;  // sum of principal arg increments
  double trap = 0.0;   // trapezoid estimate of Im of the integral of D'/D
};

constexpr double kMinSegment = 1e-7;

void integrate_segment(const DetFn& det, const Sample& a, const Sample& b, Winding& acc) {
  if (a.D.value == 0.0 || b.D.value == 0.0) throw NearBoundaryError("contour passes through a zero");
  cplx ratio = b.D.value / a.D.value;
  cplx exact = std::log(ratio);
  cplx h = b.z - a.z;
  cplx trap = 0.5 * h * (a.D.d_lambda / a.D.value + b.D.d_lambda / b.D.value);
  if (std::abs(trap - exact) <= 0.02 && std::abs(exact.imag()) <= 1.0) {
    acc.exact += exact.imag();
    acc.trap += trap.imag();
    return;
  }
  if (std::abs(h) < kMinSegment) throw NearBoundaryError("boundary too close to a zero");
  cplx mid = 0.5 * (a.z + b.z);
  Sample m{mid, det(mid)};
  integrate_segment(det, a, m, acc);
  integrate_segment(det, m, b, acc);
}

Rect shifted(const Rect& r, double s) { return {r.re_min - s, r.re_max + s, r.im_min - s, r.im_max + s}; }

}  // namespace

int count_zeros(const DetFn& det, const Rect& rect, double density) {
  if (!(rect.width() > 0 && rect.height() > 0)) throw ValidationError("count_zeros: degenerate rectangle");
  const cplx corners[4] = {{rect.re_min, rect.im_min}, {rect.re_max, rect.im_min},
                           {rect.re_max, rect.im_max}, {rect.re_min, rect.im_max}};
  Winding acc;
  for (int side = 0; side < 4; ++side) {
    cplx p = corners[side], q = corners[(side + 1) % 4];
    int M = std::max(8, static_cast<int>(std::ceil(density * std::abs(q - p))));
    Sample prev{p, det(p)};
    for (int k = 1; k <= M; ++k) {
      cplx z = k == M ? q : p + (q - p) * (static_cast<double>(k) / M);
      Sample cur{z, det(z)};
      integrate_segment(det, prev, cur, acc);
      prev = cur;
    }
  }
  double exact = acc.exact / (2.0 * std::numbers::pi);
  double raw = acc.trap / (2.0 * std::numbers::pi);
  long n = std::lround(exact);
  if (std::abs(raw - static_cast<double>(n)) > 0.1 || std::abs(exact - static_cast<double>(n)) > 1e-6)
    throw NearBoundaryError("boundary too close to a zero: winding " + std::to_string(raw));
  return static_cast<int>(n);
}

Resonance newton(const DetFn& det, cplx guess, int max_iter, double tol, int multiplicity) {
  if (multiplicity < 1) throw ValidationError("newton: multiplicity must be positive");
  cplx z = guess;
  double last_step = std::numeric_limits<double>::infinity();
  std::ostringstream trace;
  trace.precision(17);
  for (int it = 0; it <= max_iter; ++it) {
    Jet1 D = det(z);
    if (D.value == 0.0) return {z, "", multiplicity, 0.0, it};
    if (D.d_lambda == 0.0 || !std::isfinite(std::abs(D.value)))
      throw NumericalError("newton: vanishing derivative at " + std::to_string(z.real()) + "+" +
                           std::to_string(z.imag()) + "i");
    cplx step = static_cast<double>(multiplicity) * D.value / D.d_lambda;
    double scale = std::max(1.0, std::abs(z));
    if (std::abs(step) < tol * scale) return {z, "", multiplicity, std::abs(D.value), it};
    if (multiplicity > 1 && std::abs(step) < 1e-6 * scale && std::abs(step) > 0.5 * last_step)
      return {z, "", multiplicity, std::abs(D.value), it};
    last_step = std::abs(step);
    if (it == max_iter) break;
    z -= step;
    trace << " " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
  }
  throw NumericalError("newton: no convergence; iterates:" + trace.str());
}

namespace {

struct Scanner {
  const DetFn& det;
  ScanOptions opts;
  std::string label;
  std::vector<Resonance> found;

  int count(const Rect& r) { return count_zeros(det, r, opts.density); }

  // Child rectangles and their counts; split lines jittered on failure.
  std::vector<std::pair<Rect, int>> split(const Rect& r, int parent, bool force_quad) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      double shift = 0.37 * opts.cell * attempt;
      auto cut = [&](double lo, double hi) {
        double m = 0.5 * (lo + hi) + shift;
        return std::clamp(m, lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo));
      };
      std::vector<Rect> kids;
      bool wide = r.width() > 2.0 * r.height(), tall = r.height() > 2.0 * r.width();
      if (!force_quad && tall) {
        double y = cut(r.im_min, r.im_max);
        kids = {{r.re_min, r.re_max, r.im_min, y}, {r.re_min, r.re_max, y, r.im_max}};
      } else if (!force_quad && wide) {
        double x = cut(r.re_min, r.re_max);
        kids = {{r.re_min, x, r.im_min, r.im_max}, {x, r.re_max, r.im_min, r.im_max}};
      } else {
        double x = cut(r.re_min, r.re_max), y = cut(r.im_min, r.im_max);
        kids = {{r.re_min, x, r.im_min, y}, {x, r.re_max, r.im_min, y},
                {r.re_min, x, y, r.im_max}, {x, r.re_max, y, r.im_max}};
      }
      try {
        std::vector<std::pair<Rect, int>> out;
        int total = 0;
        for (const Rect& k : kids) {
          int c = count(k);
          total += c;
          out.emplace_back(k, c);
        }
        if (total == parent) return out;
      } catch (const NearBoundaryError&) {
      }
    }
    throw NumericalError("scan: could not subdivide a cell consistently");
  }

  void refine(const Rect& r, int n) {
    cplx guesses[5] = {r.center(),
                       {r.re_min + 0.25 * r.width(), r.im_min + 0.25 * r.height()},
                       {r.re_min + 0.75 * r.width(), r.im_min + 0.75 * r.height()},
                       {r.re_min + 0.25 * r.width(), r.im_min + 0.75 * r.height()},
                       {r.re_min + 0.75 * r.width(), r.im_min + 0.25 * r.height()}};
    double margin = 0.25 * std::max(r.width(), r.height());
    for (const cplx& g : guesses) {
      try {
        Resonance res = newton(det, g, 50, 1e-12, n);
        if (!r.contains(res.location, margin)) continue;
        res.character = label;
        res.order = n;
        found.push_back(res);
        return;
      } catch (const NumericalError&) {
      }
    }
    throw NumericalError("scan: Newton failed in a cell with " + std::to_string(n) + " zero(s)");
  }

  void process(const Rect& r, int n, int extra) {
    if (n == 0) return;
    bool big = std::max(r.width(), r.height()) > opts.cell;
    if (big || (n > 1 && extra < opts.max_extra_depth)) {
      for (const auto& [kid, c] : split(r, n, !big)) process(kid, c, big ? extra : extra + 1);
      return;
    }
    refine(r, n);
  }
};

}  // namespace

std::vector<Resonance> scan_rectangle(const DetFn& det, const Rect& rect, const std::string& label,
                                      const ScanOptions& opts) {
  if (!(opts.cell > 0)) throw ValidationError("scan_rectangle: cell must be positive");
  Scanner sc{det, opts, label, {}};
  for (int attempt = 0; attempt < 4; ++attempt) {
    Rect r = shifted(rect, 0.37 * opts.cell * attempt);
    int n;
    try {
      n = sc.count(r);
    } catch (const NearBoundaryError&) {
      continue;
    }
    sc.process(r, n, 0);
    std::vector<Resonance> out;
    // Newton leaves real zeros at Im ~ 1e-17 of either sign.
    const double slack = 1e-9 * std::max(1.0, std::abs(rect.center()));
    for (const auto& res : sc.found)
      if (rect.contains(res.location, slack)) out.push_back(res);
    std::sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) {
      if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
      return a.location.imag() < b.location.imag();
    });
    return out;
  }
  throw NumericalError("scan: window boundary too close to a zero");
}

DetFn character_det(const GeodesicCache& cache, int chi, int N) {
  return [&cache, chi, N](cplx l) { return determinant(cache, l, chi, std::monostate{}, N); };
}

std::vector<Resonance> scan_rectangle(const GeodesicCache& cache, const Rect& rect, double cell,
                                      const std::vector<int>& characters, int N) {
  std::vector<int> chars = characters;
  if (chars.empty())
    for (int c = 0; c < cache.character_count(); ++c) chars.push_back(c);
  ScanOptions opts;
  opts.cell = cell;
  std::vector<std::future<std::vector<Resonance>>> jobs;
  for (int chi : chars) {
    if (chi < 0 || chi >= cache.character_count()) throw ValidationError("scan: unknown character index");
    std::string label = cache.symmetry_mode() ? cache.group.characters()[static_cast<size_t>(chi)].label
                                              : std::string("unreduced");
    jobs.push_back(std::async(std::launch::async, [&cache, &rect, opts, chi, N, label] {
      return scan_rectangle(character_det(cache, chi, N), rect, label, opts);
    }));
  }
  std::vector<Resonance> all;
  for (auto& j : jobs) {
    auto part = j.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end(), [](const Resonance& a, const Resonance& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    if (a.location.imag() != b.location.imag()) return a.location.imag() < b.location.imag();
    return a.character < b.character;
  });
  return all;
}

int choose_truncation(const GeodesicCache& cache, const Rect& rect, int n_min, int n_max, double tol) {
  n_max = std::min(n_max, cache.N);
  n_min = std::clamp(n_min, 1, n_max);
  const cplx corners[4] = {{rect.re_min, rect.im_min}, {rect.re_max, rect.im_min},
                           {rect.re_max, rect.im_max}, {rect.re_min, rect.im_max}};
  std::vector<std::vector<CoefficientSeries>> series;
  for (const cplx& c : corners) series.push_back(character_series(cache, c, std::monostate{}, n_max));
  for (int n = n_min; n <= n_max; ++n) {
    bool ok = true;
    for (const auto& per_corner : series)
      for (const auto& s : per_corner) ok = ok && relative_error(s, n) <= tol;
    if (ok) return n;
  }
  return n_max;
}

}  // namespace ruelle
