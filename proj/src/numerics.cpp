#include "multibrot/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace multibrot {

namespace {

Complex int_pow(Complex z, int e) {
  Complex r{1.0, 0.0};
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

// Solves orbit_k(c) = target by Newton iteration, where orbit_0(c) = c and
// orbit_{j+1} = orbit_j^d + c. Returns false on non-convergence.
bool newton_ray_step(int degree, int iterations, Complex target, Complex& c,
                     double tol, int iter_cap) {
  for (int it = 0; it < iter_cap; ++it) {
    Complex z = c;
    Complex dz{1.0, 0.0};
    bool blew_up = false;
    for (int j = 0; j < iterations; ++j) {
      dz = static_cast<double>(degree) * int_pow(z, degree - 1) * dz + 1.0;
      z = int_pow(z, degree) + c;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        blew_up = true;
        break;
      }
    }
    if (blew_up || dz == Complex{0.0, 0.0}) return false;
    Complex step = (z - target) / dz;
    c -= step;
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(c))) return true;
  }
  return false;
}

// Rays into parabolic parameters converge like 1/log(1/t)^2, far too slowly
// to read the landing point off the last trace point. Polynomial
// extrapolation to v = 0 in the variable v = 1/log(t0 e/t), over nodes with
// geometrically spread v, recovers it; traces already converged to machine
// precision pass through unchanged.
Complex extrapolate_landing(const TracedRay& ray, double t0) {
  const auto& pts = ray.points;
  std::size_t n = pts.size();
  if (n < 8) return pts.back();

  // Tail behaviour picks the model: a collapsed tail is converged, fast
  // geometric decay (repelling landing points) suits Aitken, and the slow
  // drift of a parabolic approach needs the log-potential extrapolation.
  double scale = std::max(1.0, std::abs(pts.back()));
  double d1 = std::abs(pts[n - 1] - pts[n - 2]);
  double d2 = std::abs(pts[n - 2] - pts[n - 3]);
  double d3 = std::abs(pts[n - 3] - pts[n - 4]);
  if (std::max({d1, d2, d3}) <= 1e-12 * scale) return pts.back();
  if (d2 > 0 && d3 > 0 && std::max(d1 / d2, d2 / d3) < 0.9) {
    Complex den = (pts[n - 1] - pts[n - 2]) - (pts[n - 2] - pts[n - 3]);
    if (std::abs(den) > 1e-15 * scale) {
      Complex num = pts[n - 1] - pts[n - 2];
      return pts[n - 1] - num * num / den;
    }
    return pts.back();
  }

  auto v_of = [&](std::size_t i) {
    return 1.0 / (std::log(t0 / ray.potentials[i]) + 1.0);
  };
  double v_last = v_of(n - 1);
  std::vector<double> vs;
  std::vector<Complex> cs;
  for (int level = 3; level >= 0; --level) {
    double target = v_last * (1 << level);
    std::size_t best = 0;
    double err = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
      double e = std::abs(v_of(i) - target);
      if (e < err) {
        err = e;
        best = i;
      }
    }
    if (!vs.empty() && std::abs(vs.back() - v_of(best)) < 1e-12) continue;
    vs.push_back(v_of(best));
    cs.push_back(pts[best]);
  }
  if (cs.size() < 2) return pts.back();
  // Neville tableau evaluated at v = 0.
  std::vector<Complex> tab = cs;
  for (std::size_t k = 1; k < tab.size(); ++k)
    for (std::size_t i = tab.size() - 1; i >= k; --i)
      tab[i] = tab[i] + (tab[i] - tab[i - 1]) * (0.0 - vs[i]) / (vs[i] - vs[i - k]);
  return tab.back();
}

}  // namespace

double default_escape_radius(int degree, Complex c) {
  return std::max(std::pow(2.0, 1.0 / (degree - 1)), std::abs(c)) + 1.0;
}

std::optional<int> escape_iterations(Complex c, int degree, int max_iter,
                                     double escape_radius) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  Complex z{0.0, 0.0};
  for (int i = 1; i <= max_iter; ++i) {
    z = int_pow(z, degree) + c;
    if (std::abs(z) > escape_radius) return i;
  }
  return std::nullopt;
}

TracedRay trace_parameter_ray(int degree, const Angle& theta,
                              const TraceOptions& opts) {
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
  if (opts.t_min <= 0) throw std::invalid_argument("t_min must be positive");
  if (opts.depth < 1) throw std::invalid_argument("depth must be >= 1");
  double t0 = opts.start_potential > 0
                  ? opts.start_potential
                  : std::min(8.0, 48.0 / degree);

  TracedRay ray;
  ray.angle = theta;
  ray.degree = degree;

  // The ray equation at potential t uses enough iterations to push the
  // target magnitude back into [e^t0, e^(d t0)]; the target's angle is the
  // exact rational image of theta under that many angle multiplications.
  auto target_for = [&](double t, int* iterations) {
    int k = 0;
    double scaled = t;
    while (scaled < t0 - 1e-15) {
      scaled *= degree;
      ++k;
    }
    *iterations = k;
    Angle rotated = theta;
    for (int i = 0; i < k; ++i) rotated = map_d(rotated, degree);
    double phase = 2.0 * M_PI * rotated.to_double();
    return std::polar(std::exp(scaled), phase);
  };

  double t = t0;
  Complex c = std::polar(std::exp(t0), 2.0 * M_PI * theta.to_double());
  {
    int iters = 0;
    Complex target = target_for(t, &iters);
    newton_ray_step(degree, iters, target, c, opts.newton_tol,
                    opts.newton_iter_cap);
  }
  ray.potentials.push_back(t);
  ray.points.push_back(c);

  double factor = 0.5;
  int halvings = 0;
  while (t > opts.t_min && (int)ray.points.size() < opts.depth) {
    double t_next = std::max(t * factor, opts.t_min);
    int iters = 0;
    Complex target = target_for(t_next, &iters);
    Complex trial = c;
    if (newton_ray_step(degree, iters, target, trial, opts.newton_tol,
                        opts.newton_iter_cap)) {
      t = t_next;
      c = trial;
      ray.potentials.push_back(t);
      ray.points.push_back(c);
      continue;
    }
    if (++halvings > opts.halving_cap || t * factor >= t * 0.9999999) {
      ray.stalled = true;
      break;
    }
    factor = std::sqrt(factor);  // halve the step in log-potential
  }

  std::size_t tail = std::min<std::size_t>(8, ray.points.size());
  for (std::size_t i = ray.points.size() - tail; i < ray.points.size(); ++i)
    for (std::size_t j = i + 1; j < ray.points.size(); ++j)
      ray.residual =
          std::max(ray.residual, std::abs(ray.points[i] - ray.points[j]));
  ray.landing = extrapolate_landing(ray, t0);
  return ray;
}

LeafValidation validate_leaf(const std::vector<Angle>& group, int degree,
                             double tol, const TraceOptions& opts) {
  if (group.empty()) throw std::invalid_argument("empty landing group");
  LeafValidation v;
  for (const Angle& a : group) {
    v.traces.push_back(trace_parameter_ray(degree, a, opts));
    // A stalled trace whose tail already collapsed well below tol is a
    // converged landing, not an inconclusive one.
    if (v.traces.back().stalled && v.traces.back().residual > tol)
      v.inconclusive = true;
    v.max_residual = std::max(v.max_residual, v.traces.back().residual);
  }
  for (std::size_t i = 0; i < v.traces.size(); ++i)
    for (std::size_t j = i + 1; j < v.traces.size(); ++j)
      v.max_pairwise = std::max(
          v.max_pairwise, std::abs(v.traces[i].landing - v.traces[j].landing));
  v.ok = !v.inconclusive && v.max_pairwise <= tol && v.max_residual <= tol;
  return v;
}

}  // namespace multibrot
