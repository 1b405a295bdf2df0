#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "polygeo/errors.hpp"
#include "polygeo/metric_kernel.hpp"

namespace polygeo {

// Closed polygon with n >= 3 vertices in R^d and no two consecutive vertices
// coincident. Vertices are the columns of a d x n matrix. Immutable after
// construction; edge vectors, edge lengths, vertex weights and total length
// are computed once and cached.
class DiscreteCurve {
 public:
  explicit DiscreteCurve(Eigen::MatrixXd vertices) : pts_(std::move(vertices)) {
    const int d = static_cast<int>(pts_.rows());
    const int n = static_cast<int>(pts_.cols());
    if (d < 1) throw ValidationError("curve dimension must be >= 1");
    if (n < 3) throw ValidationError("curve needs at least 3 vertices");

    detail::CurveWork<double> w;
    detail::curve_geometry(pts_.data(), n, d, w);

    edges_ = Eigen::Map<const Eigen::MatrixXd>(w.edge.data(), d, n);
    elen_ = Eigen::Map<const Eigen::VectorXd>(w.elen.data(), n);
    mu_ = Eigen::Map<const Eigen::VectorXd>(w.mu.data(), n);
    len_ = w.len;
    eps_reg_ = w.eps_reg;
  }

  int dim() const { return static_cast<int>(pts_.rows()); }
  int size() const { return static_cast<int>(pts_.cols()); }

  const Eigen::MatrixXd& vertices() const { return pts_; }
  Eigen::VectorXd vertex(int i) const { return pts_.col(cyc(i)); }
  /// Edge vectors, column i = c_{i+1} - c_i.
  const Eigen::MatrixXd& edges() const { return edges_; }
  const Eigen::VectorXd& edge_lengths() const { return elen_; }
  /// mu_i = (|e_i| + |e_{i-1}|)/2; the weights sum to the total length.
  const Eigen::VectorXd& vertex_weights() const { return mu_; }
  double length() const { return len_; }
  double mean_edge_length() const { return len_ / size(); }
  double regularity_tolerance() const { return eps_reg_; }

 private:
  int cyc(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }

  Eigen::MatrixXd pts_, edges_;
  Eigen::VectorXd elen_, mu_;
  double len_ = 0.0, eps_reg_ = 0.0;
};

/// Builds a curve from one row of coordinates per vertex.
inline DiscreteCurve make_curve(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw ValidationError("empty vertex list");
  const int n = static_cast<int>(points.size());
  const int d = static_cast<int>(points.front().size());
  Eigen::MatrixXd m(d, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(points[i].size()) != d)
      throw ValidationError("inconsistent point dimension at vertex " +
                            std::to_string(i));
    for (int a = 0; a < d; ++a) m(a, i) = points[i][a];
  }
  return DiscreteCurve(std::move(m));
}

// Tangent vector at a curve: one d-vector per vertex, stored like the curve
// itself (columns of a d x n matrix).
struct TangentField {
  Eigen::MatrixXd components;

  int dim() const { return static_cast<int>(components.rows()); }
  int size() const { return static_cast<int>(components.cols()); }
};

inline void require_attached(const DiscreteCurve& c, const TangentField& h) {
  if (h.dim() != c.dim() || h.size() != c.size())
    throw ValidationError("tangent field shape does not match the curve");
}

inline TangentField make_field(const DiscreteCurve& c, Eigen::MatrixXd comp) {
  TangentField h{std::move(comp)};
  require_attached(c, h);
  return h;
}

inline TangentField zero_field(const DiscreteCurve& c) {
  return {Eigen::MatrixXd::Zero(c.dim(), c.size())};
}

/// h_i = c_i.
inline TangentField identity_field(const DiscreteCurve& c) {
  return {c.vertices()};
}

/// h_i = u for every vertex.
inline TangentField constant_field(const DiscreteCurve& c,
                                   const Eigen::VectorXd& u) {
  if (u.size() != c.dim())
    throw ValidationError("constant field dimension does not match the curve");
  Eigen::MatrixXd m(c.dim(), c.size());
  m.colwise() = u;
  return {m};
}

// Result of applying the arc-length derivative recursion j times. Values of
// even order sit on vertices, values of odd order on edges.
struct DerivedField {
  int order = 0;
  bool vertex_based = true;
  Eigen::MatrixXd values;
};

inline DerivedField discrete_derivative(const DiscreteCurve& c,
                                        const TangentField& h, int order) {
  require_attached(c, h);
  if (order < 0) throw ValidationError("derivative order must be >= 0");
  detail::CurveWork<double> w;
  detail::curve_geometry(c.vertices().data(), c.size(), c.dim(), w);
  const std::vector<double> vals =
      detail::derivative_values(w, h.components.data(), order);
  DerivedField out;
  out.order = order;
  out.vertex_based = (order % 2 == 0);
  out.values =
      Eigen::Map<const Eigen::MatrixXd>(vals.data(), c.dim(), c.size());
  return out;
}

/// Vertex i of the result is vertex i + shift of the input (indices mod n).
inline DiscreteCurve cyclic_shift(const DiscreteCurve& c, int shift) {
  const int n = c.size();
  const int s = ((shift % n) + n) % n;
  Eigen::MatrixXd m(c.dim(), n);
  for (int i = 0; i < n; ++i) m.col(i) = c.vertices().col((i + s) % n);
  return DiscreteCurve(std::move(m));
}

inline TangentField cyclic_shift(const TangentField& h, int shift) {
  const int n = h.size();
  const int s = ((shift % n) + n) % n;
  Eigen::MatrixXd m(h.dim(), n);
  for (int i = 0; i < n; ++i) m.col(i) = h.components.col((i + s) % n);
  return {std::move(m)};
}

/// Maps every vertex to scale * R * c_i + shift. R must be a proper rotation.
inline DiscreteCurve similarity_transform(const DiscreteCurve& c, double scale,
                                          const Eigen::MatrixXd& R,
                                          const Eigen::VectorXd& shift) {
  const int d = c.dim();
  if (R.rows() != d || R.cols() != d || shift.size() != d)
    throw ValidationError("transform shape does not match the curve dimension");
  const double ortho_err =
      (R.transpose() * R - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (ortho_err > 1e-10)
    throw InvalidRotation("R^T R deviates from the identity by " +
                          std::to_string(ortho_err));
  if (R.determinant() < 0.5)
    throw InvalidRotation("R must have determinant +1");
  if (!(scale > 0.0)) throw ValidationError("scale must be positive");
  Eigen::MatrixXd m = (scale * (R * c.vertices())).colwise() + shift;
  return DiscreteCurve(std::move(m));
}

namespace detail {

inline CurveWork<double> work_of(const DiscreteCurve& c) {
  CurveWork<double> w;
  w.n = c.size();
  w.d = c.dim();
  w.edge.assign(c.edges().data(), c.edges().data() + w.n * w.d);
  w.elen.assign(c.edge_lengths().data(), c.edge_lengths().data() + w.n);
  w.mu.assign(c.vertex_weights().data(), c.vertex_weights().data() + w.n);
  w.len = c.length();
  w.eps_reg = c.regularity_tolerance();
  return w;
}

}  // namespace detail

}  // namespace polygeo
