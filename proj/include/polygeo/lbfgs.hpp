#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace polygeo {

struct LbfgsOptions {
  int memory = 10;
  int max_iterations = 2000;
  double grad_tol = 1e-8;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  // Optional application of an initial inverse Hessian; defaults to the
  // usual scaled identity when empty.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> precondition;
};

struct LbfgsReport {
  bool converged = false;
  bool line_search_failed = false;
  int iterations = 0;
  double f = 0.0;
  double grad_norm = 0.0;
  std::vector<double> f_trace;  // one entry per accepted iterate
};

using Objective =
    std::function<std::optional<double>(const Eigen::VectorXd&)>;
using Gradient = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

namespace detail {

struct LineSearchResult {
  bool ok = false;
  double alpha = 0.0;
  double f = 0.0;
  Eigen::VectorXd x, g;
};

// Strong Wolfe line search (bracket and zoom). Infeasible trial points count
// as +infinity, so the search backs off into the feasible region.
inline LineSearchResult wolfe_search(const Objective& f, const Gradient& g,
                                     const Eigen::VectorXd& x0, double f0,
                                     const Eigen::VectorXd& grad0,
                                     const Eigen::VectorXd& p, double c1,
                                     double c2) {
  const double slope0 = grad0.dot(p);
  const double inf = std::numeric_limits<double>::infinity();
  LineSearchResult out;

  auto eval_f = [&](double a) {
    const std::optional<double> v = f(x0 + a * p);
    return v ? *v : inf;
  };
  auto finish = [&](double a, double fa) {
    out.ok = true;
    out.alpha = a;
    out.f = fa;
    out.x = x0 + a * p;
    out.g = g(out.x);
    return out;
  };

  auto zoom = [&](double lo, double f_lo, double hi) -> LineSearchResult {
    for (int it = 0; it < 60; ++it) {
      const double a = 0.5 * (lo + hi);
      const double fa = eval_f(a);
      if (!(fa <= f0 + c1 * a * slope0) || fa >= f_lo) {
        hi = a;
      } else {
        const Eigen::VectorXd ga = g(x0 + a * p);
        const double slope = ga.dot(p);
        if (std::abs(slope) <= -c2 * slope0) return finish(a, fa);
        if (slope * (hi - lo) >= 0.0) hi = lo;
        lo = a;
        f_lo = fa;
      }
      if (std::abs(hi - lo) <= 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    // Fall back to the best sufficient-decrease point found.
    if (f_lo < f0) return finish(lo, f_lo);
    return out;
  };

  double a_prev = 0.0, f_prev = f0, a = 1.0;
  for (int it = 0; it < 30; ++it) {
    const double fa = eval_f(a);
    if (!(fa <= f0 + c1 * a * slope0) || (it > 0 && fa >= f_prev))
      return zoom(a_prev, f_prev, a);
    const Eigen::VectorXd ga = g(x0 + a * p);
    const double slope = ga.dot(p);
    if (std::abs(slope) <= -c2 * slope0) return finish(a, fa);
    if (slope >= 0.0) return zoom(a, fa, a_prev);
    a_prev = a;
    f_prev = fa;
    a *= 2.0;
  }
  return out;
}

}  // namespace detail

// Limited-memory BFGS with a strong Wolfe line search. The objective may
// return nullopt on infeasible points; accepted iterates are always feasible
// and the f_trace is strictly non-increasing.
inline LbfgsReport lbfgs_minimize(Eigen::VectorXd& x, const Objective& f,
                                  const Gradient& grad,
                                  const LbfgsOptions& opt = {}) {
  LbfgsReport rep;
  std::optional<double> fx = f(x);
  if (!fx) return rep;  // caller validates the start point
  Eigen::VectorXd g = grad(x);
  rep.f_trace.push_back(*fx);

  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int it = 0; it < opt.max_iterations; ++it) {
    rep.iterations = it;
    rep.f = *fx;
    rep.grad_norm = g.norm();
    if (rep.grad_norm <= opt.grad_tol) {
      rep.converged = true;
      return rep;
    }

    // Two-loop recursion.
    Eigen::VectorXd q = g;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (opt.precondition) {
      q = opt.precondition(q);
    } else if (!s_hist.empty()) {
      q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    }
    for (size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    Eigen::VectorXd p = -q;
    if (!(g.dot(p) < 0.0)) {  // not a descent direction: restart from steepest
      p = -g;
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    const detail::LineSearchResult ls = detail::wolfe_search(
        f, grad, x, *fx, g, p, opt.wolfe_c1, opt.wolfe_c2);
    if (!ls.ok) {
      rep.line_search_failed = true;
      return rep;
    }

    const Eigen::VectorXd s = ls.x - x;
    const Eigen::VectorXd y = ls.g - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opt.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x = ls.x;
    fx = ls.f;
    g = ls.g;
    rep.f_trace.push_back(*fx);
  }
  rep.iterations = opt.max_iterations;
  rep.f = *fx;
  rep.grad_norm = g.norm();
  rep.converged = rep.grad_norm <= opt.grad_tol;
  return rep;
}

}  // namespace polygeo
