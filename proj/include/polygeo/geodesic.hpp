#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "polygeo/curve.hpp"
#include "polygeo/metric.hpp"
#include "polygeo/path.hpp"

namespace polygeo {

struct ChristoffelOptions {
  double fd_scale = 1e-5;  // finite-difference step, times mean edge length
  int max_dim = 64;        // guard for the dense (n*d)^3 tensor
};

// Levi-Civita symbols of the metric at a fixed curve, stored densely as one
// (n*d) x (n*d) symmetric matrix per upper index.
class ChristoffelTensor {
 public:
  ChristoffelTensor(DiscreteCurve base, const MetricSpec& spec,
                    std::vector<Eigen::MatrixXd> upper)
      : base_(std::move(base)), spec_(spec), upper_(std::move(upper)) {}

  const DiscreteCurve& base() const { return base_; }
  const MetricSpec& spec() const { return spec_; }
  int flat_dim() const { return static_cast<int>(upper_.size()); }
  double coeff(int k, int i, int j) const { return upper_[k](i, j); }
  const Eigen::MatrixXd& upper(int k) const { return upper_[k]; }

  /// Gamma(u, w): vector with components Gamma^k_{ij} u^i w^j.
  Eigen::VectorXd contract(const Eigen::VectorXd& u,
                           const Eigen::VectorXd& w) const {
    Eigen::VectorXd out(flat_dim());
    for (int k = 0; k < flat_dim(); ++k) out[k] = u.dot(upper_[k] * w);
    return out;
  }

 private:
  DiscreteCurve base_;
  MetricSpec spec_;
  std::vector<Eigen::MatrixXd> upper_;
};

namespace detail {

inline DiscreteCurve with_offset(const DiscreteCurve& c, int flat_index,
                                 double delta) {
  Eigen::MatrixXd m = c.vertices();
  m.data()[flat_index] += delta;
  return DiscreteCurve(std::move(m));
}

inline double inner_at_vertices(const Eigen::MatrixXd& verts,
                                const Eigen::MatrixXd& field,
                                const MetricSpec& spec) {
  CurveWork<double> w;
  curve_geometry(verts.data(), static_cast<int>(verts.cols()),
                 static_cast<int>(verts.rows()), w);
  return sobolev_inner(w, field.data(), field.data(), spec.order,
                       is_scale_invariant(spec));
}

}  // namespace detail

// Assembles the full tensor from central finite differences of the metric
// matrix in every coordinate direction. Symmetry in the lower index pair is
// exact because entries are computed once per unordered pair.
inline ChristoffelTensor christoffel(const DiscreteCurve& c,
                                     const MetricSpec& spec,
                                     const ChristoffelOptions& opt = {}) {
  require_valid(spec);
  const int nd = c.size() * c.dim();
  if (nd > opt.max_dim)
    throw TooLarge("flat dimension " + std::to_string(nd) +
                   " exceeds the dense tensor guard (" +
                   std::to_string(opt.max_dim) + ")");
  const double delta = opt.fd_scale * c.mean_edge_length();

  const MetricMatrix G(c, spec);
  std::vector<Eigen::MatrixXd> dG(nd);
  for (int l = 0; l < nd; ++l) {
    const Eigen::MatrixXd Gp =
        detail::assemble_metric_entries(detail::with_offset(c, l, delta), spec);
    const Eigen::MatrixXd Gm = detail::assemble_metric_entries(
        detail::with_offset(c, l, -delta), spec);
    dG[l] = (Gp - Gm) / (2.0 * delta);
  }

  std::vector<Eigen::MatrixXd> upper(nd, Eigen::MatrixXd(nd, nd));
  Eigen::VectorXd first(nd);
  for (int i = 0; i < nd; ++i) {
    for (int j = i; j < nd; ++j) {
      for (int l = 0; l < nd; ++l)
        first[l] = 0.5 * (dG[i](l, j) + dG[j](l, i) - dG[l](i, j));
      const Eigen::VectorXd up = G.solve(first);
      for (int k = 0; k < nd; ++k) {
        upper[k](i, j) = up[k];
        upper[k](j, i) = up[k];
      }
    }
  }
  return ChristoffelTensor(c, spec, std::move(upper));
}

// Geodesic acceleration -Gamma_c(v, v) without forming the full tensor: the
// directional derivative of the metric matrix along v replaces the contraction
// over coordinate directions, and the gradient of q(c) = g_c(v, v) supplies
// the lowered-index term.
inline Eigen::VectorXd geodesic_acceleration(const DiscreteCurve& c,
                                             const Eigen::MatrixXd& vel,
                                             const MetricSpec& spec,
                                             double fd_scale = 1e-5) {
  const int n = c.size(), d = c.dim(), nd = n * d;
  const Eigen::Map<const Eigen::VectorXd> vflat(vel.data(), nd);
  const double vnorm = vflat.norm();
  if (vnorm == 0.0) return Eigen::VectorXd::Zero(nd);
  const double delta = fd_scale * c.mean_edge_length();

  const MetricMatrix G(c, spec);

  const Eigen::MatrixXd U = vel / vnorm;
  const Eigen::MatrixXd Gp = detail::assemble_metric_entries(
      DiscreteCurve(c.vertices() + delta * U), spec);
  const Eigen::MatrixXd Gm = detail::assemble_metric_entries(
      DiscreteCurve(c.vertices() - delta * U), spec);
  const Eigen::MatrixXd DvG = (vnorm / (2.0 * delta)) * (Gp - Gm);

  Eigen::VectorXd grad_q(nd);
  for (int l = 0; l < nd; ++l) {
    Eigen::MatrixXd vp = c.vertices();
    vp.data()[l] += delta;
    Eigen::MatrixXd vm = c.vertices();
    vm.data()[l] -= delta;
    const double qp = detail::inner_at_vertices(vp, vel, spec);
    const double qm = detail::inner_at_vertices(vm, vel, spec);
    grad_q[l] = (qp - qm) / (2.0 * delta);
  }

  const Eigen::VectorXd rhs = DvG * vflat - 0.5 * grad_q;
  return -G.solve(rhs);
}

enum class Integrator { Euler, RK4 };

struct ExpOptions {
  int steps = 100;
  Integrator method = Integrator::RK4;
  double fd_scale = 1e-5;
};

// Integrates the geodesic initial value problem c'' = -Gamma_c(c', c') over
// [0, 1] and returns the full trajectory. Every internal stage is checked for
// regularity; an excursion out of the space raises LeftTheSpace.
inline CurvePath exp_map(const DiscreteCurve& c, const TangentField& v,
                         const MetricSpec& spec, const ExpOptions& opt = {}) {
  require_valid(spec);
  require_attached(c, v);
  if (opt.steps < 1) throw ValidationError("integrator needs steps >= 1");

  const int n = c.size(), d = c.dim();
  const double h = 1.0 / opt.steps;

  auto stage_curve = [&](const Eigen::MatrixXd& P) -> DiscreteCurve {
    try {
      return DiscreteCurve(P);
    } catch (const DegenerateCurve& e) {
      throw LeftTheSpace(std::string("trajectory reached the boundary: ") +
                         e.what());
    }
  };
  auto accel = [&](const Eigen::MatrixXd& P,
                   const Eigen::MatrixXd& V) -> Eigen::MatrixXd {
    const DiscreteCurve cur = stage_curve(P);
    Eigen::VectorXd a;
    try {
      a = geodesic_acceleration(cur, V, spec, opt.fd_scale);
    } catch (const DegenerateCurve& e) {
      throw LeftTheSpace(std::string("trajectory reached the boundary: ") +
                         e.what());
    }
    return Eigen::Map<const Eigen::MatrixXd>(a.data(), d, n);
  };

  Eigen::MatrixXd P = c.vertices(), V = v.components;
  std::vector<DiscreteCurve> frames;
  frames.reserve(opt.steps + 1);
  frames.push_back(c);

  for (int s = 0; s < opt.steps; ++s) {
    if (opt.method == Integrator::Euler) {
      const Eigen::MatrixXd A = accel(P, V);
      P += h * V;
      V += h * A;
    } else {
      const Eigen::MatrixXd k1p = V, k1v = accel(P, V);
      const Eigen::MatrixXd k2p = V + 0.5 * h * k1v,
                            k2v = accel(P + 0.5 * h * k1p, V + 0.5 * h * k1v);
      const Eigen::MatrixXd k3p = V + 0.5 * h * k2v,
                            k3v = accel(P + 0.5 * h * k2p, V + 0.5 * h * k2v);
      const Eigen::MatrixXd k4p = V + h * k3v,
                            k4v = accel(P + h * k3p, V + h * k3v);
      P += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      V += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    frames.push_back(stage_curve(P));
  }
  return make_path(std::move(frames));
}

}  // namespace polygeo
