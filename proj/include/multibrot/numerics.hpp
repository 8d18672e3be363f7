#pragma once

#include "multibrot/angle.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace multibrot {

using Complex = std::complex<double>;

struct TraceOptions {
  double start_potential = 0.0;  // 0 picks min(8, 48/degree)
  double t_min = 1e-270;         // parabolic landings need very deep descent
  int depth = 2000;              // cap on accepted potential levels
  double newton_tol = 1e-12;
  int newton_iter_cap = 64;
  int halving_cap = 40;  // step halvings before the trace stalls
};

// A parameter ray continued from large potential toward the set. The
// landing estimate extrapolates the tail; residual is the raw diameter of
// the final accepted points.
struct TracedRay {
  Angle angle;
  int degree = 2;
  std::vector<double> potentials;  // strictly decreasing
  std::vector<Complex> points;     // one per potential
  Complex landing{0.0, 0.0};
  double residual = 0.0;
  bool stalled = false;  // step underflow before reaching t_min
};

// Radius beyond which escape is monotone for z -> z^d + c.
double default_escape_radius(int degree, Complex c);

// First index at which the critical orbit leaves the escape radius, or
// nullopt when it stays bounded through max_iter steps.
std::optional<int> escape_iterations(Complex c, int degree, int max_iter,
                                     double escape_radius);

// Newton continuation of the parameter ray at angle theta: each accepted
// point solves the ray equation at its potential, seeded from the previous
// point, with the potential step halved on non-convergence.
TracedRay trace_parameter_ray(int degree, const Angle& theta,
                              const TraceOptions& opts = {});

struct LeafValidation {
  bool ok = false;
  bool inconclusive = false;  // some trace stalled
  double max_pairwise = 0.0;  // spread of the landing estimates
  double max_residual = 0.0;
  std::vector<TracedRay> traces;
};

// Traces every ray of a landing group and accepts when all landing
// estimates agree within tol and all residuals stay below tol.
LeafValidation validate_leaf(const std::vector<Angle>& group, int degree,
                             double tol, const TraceOptions& opts = {});

}  // namespace multibrot
