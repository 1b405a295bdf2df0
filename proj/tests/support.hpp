#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "polygeo/curve.hpp"
#include "polygeo/metric.hpp"

namespace polygeo::testing {

inline DiscreteCurve unit_square() {
  return make_curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline DiscreteCurve right_triangle() {
  return make_curve({{0, 0}, {0, 1}, {1, 0}});
}

/// Regular n-gon inscribed in the unit circle, vertex i at angle 2*pi*i/n.
inline DiscreteCurve regular_ngon(int n) {
  Eigen::MatrixXd m(2, n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * M_PI * i / n;
    m(0, i) = std::cos(t);
    m(1, i) = std::sin(t);
  }
  return DiscreteCurve(m);
}

// Gaussian vertices, redrawn until the polygon is comfortably regular so
// that property tolerances are meaningful.
inline DiscreteCurve random_curve(std::mt19937_64& rng, int n, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::MatrixXd m(d, n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < d; ++a) m(a, i) = gauss(rng);
    DiscreteCurve c(m);
    if (c.edge_lengths().minCoeff() >= 0.1 * c.mean_edge_length()) return c;
  }
  throw std::logic_error("random curve generation kept producing thin edges");
}

inline TangentField random_field(std::mt19937_64& rng, const DiscreteCurve& c) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(c.dim(), c.size());
  for (int i = 0; i < c.size(); ++i)
    for (int a = 0; a < c.dim(); ++a) m(a, i) = gauss(rng);
  return {m};
}

inline Eigen::MatrixXd random_rotation(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  if (d == 2) {
    const double t = 2.0 * M_PI * gauss(rng);
    Eigen::Matrix2d r;
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
  }
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(d);
  for (int a = 0; a < d; ++a) v[a] = gauss(rng);
  return v;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

inline double max_vertex_distance(const DiscreteCurve& a,
                                  const DiscreteCurve& b) {
  return (a.vertices() - b.vertices()).cwiseAbs().maxCoeff();
}

}  // namespace polygeo::testing
