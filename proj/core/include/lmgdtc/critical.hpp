#pragma once

// Locating pseudo-critical points from observables: susceptibility peaks,
// QFI maxima, TAIPR minima and order-parameter drop points.

#include <functional>
#include <utility>
#include <vector>

#include "lmgdtc/floquet.hpp"

namespace lmgdtc {

struct Extremum {
  double location;
  double value;
};

/// Uniform grid lo, lo + step, ..., <= hi (inclusive up to rounding).
std::vector<double> uniform_grid(double lo, double hi, double step);

/// Global maximum over the grid, then golden-section refinement inside the
/// neighbouring grid cells down to `tolerance`. Pass tolerance <= 0 to skip refinement.
Extremum locate_maximum(const std::function<double(double)>& f, double lo, double hi, double step, double tolerance = 1e-5);
Extremum locate_minimum(const std::function<double(double)>& f, double lo, double hi, double step, double tolerance = 1e-5);

/// m_z(n, eps) at a single stroboscopic step.
double magnetization_at(const FloquetPropagator& prop, double epsilon, int n_step);

/// Grid point maximizing |chi| where chi = d^2 m_z(n)/d eps^2 on the uniform grid [lo, hi].
Extremum susceptibility_peak(const FloquetPropagator& prop, int n_step, double lo, double hi, double step);

/// epsilon maximizing F_Q(n, eps) on [lo, hi].
Extremum qfi_maximum(const FloquetPropagator& prop, int n_steps, double lo, double hi, double step,
                     double stencil_step = 1e-6, double tolerance = 1e-5);

/// epsilon minimizing the TAIPR on [lo, hi].
Extremum taipr_minimum(const FloquetPropagator& prop, int n_pulses, double lo, double hi, double step,
                       double tolerance = 1e-5);

/// First epsilon at which |order parameter| falls below half its value at the
/// first grid point, linearly interpolated between grid points. Returns the
/// first grid point when the curve starts below `ordered_threshold`, and the
/// last grid point when it never drops.
double order_parameter_drop(const std::vector<std::pair<double, double>>& curve, double ordered_threshold = 0.05);

}  // namespace lmgdtc
