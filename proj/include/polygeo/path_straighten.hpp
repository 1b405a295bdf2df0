#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polygeo/curve.hpp"
#include "polygeo/dual.hpp"
#include "polygeo/lbfgs.hpp"
#include "polygeo/metric.hpp"
#include "polygeo/path.hpp"

namespace polygeo {

struct BvpOptions {
  int interior_frames = 20;     // free frames between the fixed endpoints
  double grad_tol_scale = 1e-8; // tolerance = scale * (1 + initial energy)
  int max_iterations = 2000;
  double jitter_scale = 1e-3;   // restart noise, times mean edge length
  int max_restarts = 5;
  std::uint64_t seed = 0;
  int memory = 10;
};

struct BvpResult {
  CurvePath path;
  TangentField initial_velocity;  // one-sided first difference at t = 0
  double final_energy = 0.0;
  int iterations = 0;
  int restarts = 0;
  double final_grad_norm = 0.0;
  std::vector<double> energy_trace;  // non-increasing per accepted iterate
};

namespace detail {

// Discrete path energy and its exact gradient over the interior frames.
// Frame t sits at x[(t-1)*nd ... t*nd) for t = 1..T; endpoints are fixed.
class PathEnergy {
 public:
  PathEnergy(const DiscreteCurve& c0, const DiscreteCurve& c1,
             const MetricSpec& spec, int interior_frames)
      : spec_(spec),
        n_(c0.size()),
        d_(c0.dim()),
        T_(interior_frames),
        dt_(1.0 / (interior_frames + 1)),
        a0_(c0.vertices()),
        a1_(c1.vertices()) {}

  int dof() const { return T_ * n_ * d_; }

  std::optional<double> energy(const Eigen::VectorXd& x) const {
    const int nd = n_ * d_;
    double total = 0.0;
    try {
      for (int t = 0; t <= T_; ++t) {
        const double* a = (t == 0) ? a0_.data() : x.data() + (t - 1) * nd;
        const double* b = (t == T_) ? a1_.data() : x.data() + t * nd;
        total += interval_energy(a, b, n_, d_, dt_, spec_);
      }
    } catch (const DegenerateCurve&) {
      return std::nullopt;
    }
    return total;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    const int nd = n_ * d_;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dof());
    std::vector<Dual> a(nd), b(nd);
    for (int t = 0; t <= T_; ++t) {
      const double* ap = (t == 0) ? a0_.data() : x.data() + (t - 1) * nd;
      const double* bp = (t == T_) ? a1_.data() : x.data() + t * nd;
      for (int p = 0; p < nd; ++p) {
        a[p] = Dual(ap[p]);
        b[p] = Dual(bp[p]);
      }
      if (t > 0) {  // derivative with respect to frame t (the interval start)
        for (int p = 0; p < nd; ++p) {
          a[p].dot = 1.0;
          const Dual e = interval_energy(a.data(), b.data(), n_, d_, dt_, spec_);
          g[(t - 1) * nd + p] += e.dot;
          a[p].dot = 0.0;
        }
      }
      if (t < T_) {  // derivative with respect to frame t+1 (the interval end)
        for (int p = 0; p < nd; ++p) {
          b[p].dot = 1.0;
          const Dual e = interval_energy(a.data(), b.data(), n_, d_, dt_, spec_);
          g[t * nd + p] += e.dot;
          b[p].dot = 0.0;
        }
      }
    }
    return g;
  }

  double dt() const { return dt_; }

 private:
  MetricSpec spec_;
  int n_, d_, T_;
  double dt_;
  Eigen::MatrixXd a0_, a1_;
};

// Block-tridiagonal SPD solver (block Thomas algorithm with Cholesky pivots).
// Used to apply the leading-order path-energy Hessian as an L-BFGS
// preconditioner: diag_t = (2/dt)(G_{t-1} + G_t), offdiag_t = -(2/dt) G_t
// with G_t the metric matrix at the t-th interval midpoint.
class BlockTridiag {
 public:
  BlockTridiag(std::vector<Eigen::MatrixXd> diag,
               std::vector<Eigen::MatrixXd> offdiag)
      : off_(std::move(offdiag)) {
    const size_t T = diag.size();
    llt_.reserve(T);
    w_.resize(T > 0 ? T - 1 : 0);
    Eigen::MatrixXd S = diag[0];
    for (size_t t = 0;; ++t) {
      llt_.emplace_back(S);
      if (llt_.back().info() != Eigen::Success)
        throw NotPositiveDefinite("path Hessian preconditioner is not SPD");
      if (t + 1 >= T) break;
      w_[t] = llt_.back().solve(off_[t]);
      S = diag[t + 1] - off_[t].transpose() * w_[t];
    }
    b_ = static_cast<int>(diag[0].rows());
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    const size_t T = llt_.size();
    std::vector<Eigen::VectorXd> y(T);
    y[0] = rhs.segment(0, b_);
    for (size_t t = 1; t < T; ++t)
      y[t] = rhs.segment(t * b_, b_) -
             off_[t - 1].transpose() * llt_[t - 1].solve(y[t - 1]);
    Eigen::VectorXd x(rhs.size());
    Eigen::VectorXd z = llt_[T - 1].solve(y[T - 1]);
    x.segment((T - 1) * b_, b_) = z;
    for (size_t t = T - 1; t > 0; --t) {
      z = llt_[t - 1].solve(y[t - 1]) - w_[t - 1] * x.segment(t * b_, b_);
      x.segment((t - 1) * b_, b_) = z;
    }
    return x;
  }

 private:
  std::vector<Eigen::MatrixXd> off_;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> llt_;
  std::vector<Eigen::MatrixXd> w_;
  int b_ = 0;
};

}  // namespace detail

// Path straightening: minimizes the discrete path energy over the interior
// frames with the endpoints pinned, starting from linear interpolation. If an
// initializer leaves the space, it is retried with vertex-wise uniform noise
// up to max_restarts times.
inline BvpResult log_map(const DiscreteCurve& c0, const DiscreteCurve& c1,
                         const MetricSpec& spec, const BvpOptions& opt = {}) {
  require_valid(spec);
  if (c0.size() != c1.size() || c0.dim() != c1.dim())
    throw ValidationError("endpoint curves must share vertex count and dimension");
  if (opt.interior_frames < 1)
    throw ValidationError("path straightening needs at least one interior frame");

  const int n = c0.size(), d = c0.dim(), nd = n * d, T = opt.interior_frames;
  const detail::PathEnergy problem(c0, c1, spec, T);

  Eigen::VectorXd base(problem.dof());
  for (int t = 1; t <= T; ++t) {
    const double s = static_cast<double>(t) / (T + 1);
    Eigen::Map<Eigen::MatrixXd>(base.data() + (t - 1) * nd, d, n) =
        (1.0 - s) * c0.vertices() + s * c1.vertices();
  }

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  const double eta = opt.jitter_scale * c0.mean_edge_length();

  int restarts = 0;
  Eigen::VectorXd x;
  std::optional<double> e0;
  LbfgsReport rep;
  bool solved = false;
  while (true) {
    x = base;
    if (restarts > 0)
      for (int p = 0; p < x.size(); ++p) x[p] += eta * noise(rng);
    e0 = problem.energy(x);
    if (e0) {
      LbfgsOptions lopt;
      lopt.memory = opt.memory;
      lopt.max_iterations = opt.max_iterations;
      lopt.grad_tol = opt.grad_tol_scale * (1.0 + *e0);

      // Leading-order Hessian of the energy at the start path, applied as the
      // initial inverse Hessian.
      std::shared_ptr<detail::BlockTridiag> precond;
      try {
        const double dt = 1.0 / (T + 1);
        std::vector<Eigen::MatrixXd> gmid(T + 1);
        for (int t = 0; t <= T; ++t) {
          const Eigen::MatrixXd a =
              (t == 0) ? c0.vertices()
                       : Eigen::MatrixXd(Eigen::Map<const Eigen::MatrixXd>(
                             x.data() + (t - 1) * nd, d, n));
          const Eigen::MatrixXd b =
              (t == T) ? c1.vertices()
                       : Eigen::MatrixXd(Eigen::Map<const Eigen::MatrixXd>(
                             x.data() + t * nd, d, n));
          gmid[t] = detail::assemble_metric_entries(
              DiscreteCurve(0.5 * (a + b)), spec);
        }
        std::vector<Eigen::MatrixXd> diag(T), off(T - 1);
        for (int t = 1; t <= T; ++t)
          diag[t - 1] = (2.0 / dt) * (gmid[t - 1] + gmid[t]);
        for (int t = 1; t < T; ++t) off[t - 1] = (-2.0 / dt) * gmid[t];
        precond = std::make_shared<detail::BlockTridiag>(std::move(diag),
                                                         std::move(off));
        lopt.precondition = [precond](const Eigen::VectorXd& v) {
          return precond->solve(v);
        };
      } catch (const Error&) {
        // Fall back to the unpreconditioned recursion.
      }

      rep = lbfgs_minimize(
          x, [&](const Eigen::VectorXd& p) { return problem.energy(p); },
          [&](const Eigen::VectorXd& p) { return problem.gradient(p); }, lopt);
      if (rep.converged) {
        solved = true;
        break;
      }
      if (!rep.line_search_failed)
        throw MaxIterations(
            "path straightening gradient norm " + std::to_string(rep.grad_norm) +
            " did not reach tolerance " + std::to_string(lopt.grad_tol));
    }
    if (++restarts > opt.max_restarts) {
      if (e0)
        throw MaxIterations("path straightening stalled after " +
                            std::to_string(opt.max_restarts) + " noise restarts");
      throw InitializationFailed("no regular initializer found after " +
                                 std::to_string(opt.max_restarts) +
                                 " noise restarts");
    }
  }

  std::vector<DiscreteCurve> frames;
  frames.reserve(T + 2);
  frames.push_back(c0);
  for (int t = 1; t <= T; ++t)
    frames.emplace_back(
        Eigen::MatrixXd(Eigen::Map<const Eigen::MatrixXd>(x.data() + (t - 1) * nd, d, n)));
  frames.push_back(c1);

  BvpResult out{make_path(std::move(frames)),
                TangentField{},
                rep.f,
                rep.iterations,
                restarts,
                rep.grad_norm,
                rep.f_trace};
  out.initial_velocity = make_field(
      c0, (out.path.frames[1].vertices() - c0.vertices()) / problem.dt());
  return out;
}

}  // namespace polygeo
