#pragma once

#include <string>
#include <vector>

#include "ruelle/cycle.hpp"
#include "ruelle/errors.hpp"

namespace ruelle {

struct Rect {
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  cplx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  bool contains(cplx z, double margin = 0.0) const {
    return z.real() >= re_min - margin && z.real() <= re_max + margin && z.imag() >= im_min - margin &&
           z.imag() <= im_max + margin;
  }
};

struct Resonance {
  cplx location{0.0};
  std::string character;
  int order = 1;
  double newton_residual = 0.0;
  int iterations = 0;
};

// Thrown when a contour passes too close to a zero.
class NearBoundaryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Winding number of D around the rectangle. Sides are sampled with at least
// `density` points per unit length and refined where the phase moves fast.
int count_zeros(const DetFn& det, const Rect& rect, double density = 200.0);

// For a zero of known multiplicity m the step is m D/D'. Such a zero can only be
// resolved to about eps^(1/m); stagnation of the step below 1e-6 counts as converged.
Resonance newton(const DetFn& det, cplx guess, int max_iter = 50, double tol = 1e-12, int multiplicity = 1);

struct ScanOptions {
  double cell = 0.1;
  double density = 200.0;
  int max_extra_depth = 6;  // subdivisions below `cell` to separate clustered zeros
};

std::vector<Resonance> scan_rectangle(const DetFn& det, const Rect& rect, const std::string& label,
                                      const ScanOptions& opts = {});

// Per character of the cache's group ("unreduced" labelling for the trivial group),
// merged and sorted by (Re, Im, character).
std::vector<Resonance> scan_rectangle(const GeodesicCache& cache, const Rect& rect, double cell,
                                      const std::vector<int>& characters = {}, int N = -1);

// Smallest N in [n_min, n_max] whose relative error at the window corners is
// <= tol for every character; n_max when none qualifies.
int choose_truncation(const GeodesicCache& cache, const Rect& rect, int n_min, int n_max, double tol = 1e-9);

DetFn character_det(const GeodesicCache& cache, int chi, int N = -1);

}  // namespace ruelle
