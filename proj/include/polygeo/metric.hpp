#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <string>
#include <utility>

#include "polygeo/curve.hpp"
#include "polygeo/errors.hpp"
#include "polygeo/metric_kernel.hpp"

namespace polygeo {

enum class MetricVariant { ScaleInvariant, ConstantCoefficient };

// Order and variant of a Sobolev metric on the polygon space. The
// scale-invariant variant weights each term with powers of the curve length;
// the constant-coefficient variant drops those weights (and with them scale
// invariance).
struct MetricSpec {
  int order = 2;
  MetricVariant variant = MetricVariant::ScaleInvariant;
};

inline bool is_scale_invariant(const MetricSpec& s) {
  return s.variant == MetricVariant::ScaleInvariant;
}

inline void require_valid(const MetricSpec& s) {
  if (s.order < 0) throw ValidationError("metric order must be >= 0");
}

/// Order-m homogeneous term: sum_i w^{2m-3} <D^m h_i, D^m k_i> mu_{i,m}.
inline double gm_dot(const DiscreteCurve& c, const TangentField& h,
                     const TangentField& k, const MetricSpec& spec) {
  require_valid(spec);
  require_attached(c, h);
  require_attached(c, k);
  const detail::CurveWork<double> w = detail::work_of(c);
  double z = 0.0, hm = 0.0;
  detail::sobolev_terms(w, h.components.data(), k.components.data(), spec.order,
                        is_scale_invariant(spec), z, hm);
  return hm;
}

/// Full inner product: zeroth-order term plus the order-m term. For m = 0 the
/// two terms coincide, so the value is twice the zeroth-order term.
inline double gm_inner(const DiscreteCurve& c, const TangentField& h,
                       const TangentField& k, const MetricSpec& spec) {
  require_valid(spec);
  require_attached(c, h);
  require_attached(c, k);
  const detail::CurveWork<double> w = detail::work_of(c);
  return detail::sobolev_inner(w, h.components.data(), k.components.data(),
                               spec.order, is_scale_invariant(spec));
}

namespace detail {

// Dense (n*d) x (n*d) matrix of the inner product, assembled by composing the
// banded cyclic difference matrices with diagonal weights. Coordinates are
// stacked vertex-major: entry i*d + a is coordinate a of vertex i.
inline Eigen::MatrixXd assemble_metric_entries(const DiscreteCurve& c,
                                               const MetricSpec& spec) {
  require_valid(spec);
  const int n = c.size(), d = c.dim(), m = spec.order;
  const Eigen::VectorXd& elen = c.edge_lengths();
  const Eigen::VectorXd& mu = c.vertex_weights();

  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
  for (int j = 0; j < m; ++j) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    if (j % 2 == 0) {
      for (int i = 0; i < n; ++i) {
        A(i, (i + 1) % n) = 1.0 / elen[i];
        A(i, i) = -1.0 / elen[i];
      }
    } else {
      for (int i = 0; i < n; ++i) {
        A(i, i) = 1.0 / mu[i];
        A(i, (i + n - 1) % n) = -1.0 / mu[i];
      }
    }
    B = (A * B).eval();
  }

  const bool scale = is_scale_invariant(spec);
  const double f0 = scale ? std::pow(c.length(), -3) : 1.0;
  const double fm = scale ? std::pow(c.length(), 2 * m - 3) : 1.0;
  const Eigen::VectorXd wm = (m % 2 == 0) ? mu : elen;

  Eigen::MatrixXd core = f0 * Eigen::MatrixXd(mu.asDiagonal());
  core += fm * (B.transpose() * wm.asDiagonal() * B);
  core = (0.5 * (core + core.transpose())).eval();  // bitwise symmetric

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < d; ++a) G(i * d + a, j * d + a) = core(i, j);
  return G;
}

}  // namespace detail

// Matrix form of the inner product at a fixed curve, with its Cholesky
// factorization. Construction fails with NotPositiveDefinite if the assembled
// matrix is not SPD.
class MetricMatrix {
 public:
  MetricMatrix(DiscreteCurve base, const MetricSpec& spec)
      : base_(std::move(base)),
        spec_(spec),
        entries_(detail::assemble_metric_entries(base_, spec_)),
        llt_(entries_) {
    if (llt_.info() != Eigen::Success)
      throw NotPositiveDefinite("Cholesky factorization of the metric failed");
  }

  const DiscreteCurve& base() const { return base_; }
  const MetricSpec& spec() const { return spec_; }
  const Eigen::MatrixXd& entries() const { return entries_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    return llt_.solve(rhs);
  }

  double quad(const TangentField& h, const TangentField& k) const {
    require_attached(base_, h);
    require_attached(base_, k);
    const Eigen::Map<const Eigen::VectorXd> hv(h.components.data(),
                                               h.components.size());
    const Eigen::Map<const Eigen::VectorXd> kv(k.components.data(),
                                               k.components.size());
    return hv.dot(entries_ * kv);
  }

 private:
  DiscreteCurve base_;
  MetricSpec spec_;
  Eigen::MatrixXd entries_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

inline MetricMatrix metric_matrix(const DiscreteCurve& c,
                                  const MetricSpec& spec) {
  return MetricMatrix(c, spec);
}

/// Returns (|directional derivative of sqrt(length) along h|, constant
/// coefficient order-2 norm of h). The first never exceeds the second.
inline std::pair<double, double> lipschitz_witness(const DiscreteCurve& c,
                                                   const TangentField& h) {
  require_attached(c, h);
  const int n = c.size();
  double dlen = 0.0;  // d length / dh = sum <h_{i+1} - h_i, e_i> / |e_i|
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd dh =
        h.components.col((i + 1) % n) - h.components.col(i);
    dlen += dh.dot(c.edges().col(i)) / c.edge_lengths()[i];
  }
  const double first = std::abs(dlen) / (2.0 * std::sqrt(c.length()));
  const MetricSpec cc{2, MetricVariant::ConstantCoefficient};
  const double second = std::sqrt(gm_inner(c, h, h, cc));
  return {first, second};
}

}  // namespace polygeo
