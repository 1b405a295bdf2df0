#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "polygeo/curve.hpp"
#include "polygeo/metric.hpp"

namespace polygeo {

// Discrete path in the polygon space: frames on the uniform time grid
// t_0 = 0, ..., t_T = 1. All frames share n and d and are regular.
struct CurvePath {
  std::vector<double> times;
  std::vector<DiscreteCurve> frames;

  int steps() const { return static_cast<int>(frames.size()) - 1; }
  const DiscreteCurve& endpoint() const { return frames.back(); }
};

inline CurvePath make_path(std::vector<DiscreteCurve> frames) {
  if (frames.size() < 2)
    throw ValidationError("a path needs at least two frames");
  const int n = frames.front().size(), d = frames.front().dim();
  for (const DiscreteCurve& f : frames)
    if (f.size() != n || f.dim() != d)
      throw ValidationError("path frames must share vertex count and dimension");
  const int T = static_cast<int>(frames.size()) - 1;
  std::vector<double> times(T + 1);
  for (int t = 0; t <= T; ++t) times[t] = static_cast<double>(t) / T;
  return {std::move(times), std::move(frames)};
}

namespace detail {

// Midpoint-rule energy of one interval: dt * g_mid(v, v) with the forward
// difference velocity v = (b - a)/dt and the metric at the vertex-wise
// midpoint curve. Throws DegenerateCurve if the midpoint leaves the space.
template <class S>
S interval_energy(const S* a, const S* b, int n, int d, double dt,
                  const MetricSpec& spec) {
  const size_t m = static_cast<size_t>(n) * d;
  std::vector<S> mid(m), vel(m);
  const S inv_dt(1.0 / dt);
  for (size_t p = 0; p < m; ++p) {
    mid[p] = (a[p] + b[p]) * S(0.5);
    vel[p] = (b[p] - a[p]) * inv_dt;
  }
  CurveWork<S> w;
  curve_geometry(mid.data(), n, d, w);
  const S g = sobolev_inner(w, vel.data(), vel.data(), spec.order,
                            is_scale_invariant(spec));
  return g * S(dt);
}

}  // namespace detail

/// Per-interval speeds sqrt(g_mid(v_t, v_t)).
inline std::vector<double> geodesic_speed_profile(const CurvePath& path,
                                                  const MetricSpec& spec) {
  require_valid(spec);
  const int T = path.steps();
  const int n = path.frames.front().size(), d = path.frames.front().dim();
  const double dt = 1.0 / T;
  std::vector<double> speeds(T);
  for (int t = 0; t < T; ++t) {
    const double e = detail::interval_energy(
        path.frames[t].vertices().data(), path.frames[t + 1].vertices().data(),
        n, d, dt, spec);
    speeds[t] = std::sqrt(e / dt);
  }
  return speeds;
}

/// Riemannian length of the discrete path (midpoint-rule quadrature).
inline double path_length(const CurvePath& path, const MetricSpec& spec) {
  const std::vector<double> speeds = geodesic_speed_profile(path, spec);
  const double dt = 1.0 / path.steps();
  double len = 0.0;
  for (double s : speeds) len += dt * s;
  return len;
}

/// Riemannian energy of the discrete path. length^2 <= energy always.
inline double path_energy(const CurvePath& path, const MetricSpec& spec) {
  const std::vector<double> speeds = geodesic_speed_profile(path, spec);
  const double dt = 1.0 / path.steps();
  double e = 0.0;
  for (double s : speeds) e += dt * s * s;
  return e;
}

}  // namespace polygeo
