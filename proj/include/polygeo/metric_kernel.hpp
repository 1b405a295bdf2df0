#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "polygeo/dual.hpp"
#include "polygeo/errors.hpp"

// Scalar-generic kernel behind the curve and metric operations. Everything
// here works on flat column-major vertex data (vertex i occupies entries
// [i*d, i*d + d)), so the same code path serves plain doubles and Dual
// scalars for exact differentiation.

namespace polygeo::detail {

template <class S>
S ipow(S base, int e) {
  if (e < 0) return S(1.0) / ipow(base, -e);
  S r(1.0);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

// Edge data of a closed polygon: e_i = c_{i+1} - c_i, the edge lengths, the
// averaged vertex weights mu_i = (|e_i| + |e_{i-1}|)/2 and the total length.
template <class S>
struct CurveWork {
  int n = 0, d = 0;
  std::vector<S> edge;  // n*d
  std::vector<S> elen;  // n
  std::vector<S> mu;    // n
  S len{0.0};
  double eps_reg = 0.0;
};

// Fills `w` from raw vertices; throws DegenerateCurve if any edge length is
// at or below the regularity tolerance 1e-12 * mean edge length (1e-12 when
// every edge is zero).
template <class S>
void curve_geometry(const S* verts, int n, int d, CurveWork<S>& w) {
  using std::sqrt;
  w.n = n;
  w.d = d;
  w.edge.assign(static_cast<size_t>(n) * d, S(0.0));
  w.elen.assign(n, S(0.0));
  w.mu.assign(n, S(0.0));

  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n;
    S s2(0.0);
    for (int a = 0; a < d; ++a) {
      const S e = verts[ip * d + a] - verts[i * d + a];
      w.edge[i * d + a] = e;
      s2 += e * e;
    }
    w.elen[i] = sqrt(s2);
    mean += value_of(w.elen[i]);
  }
  mean /= n;
  w.eps_reg = 1e-12 * (mean > 0.0 ? mean : 1.0);

  S len(0.0);
  for (int i = 0; i < n; ++i) {
    if (value_of(w.elen[i]) <= w.eps_reg) {
      throw DegenerateCurve("consecutive vertices " + std::to_string(i) +
                            " and " + std::to_string((i + 1) % n) +
                            " coincide (edge length below tolerance)");
    }
    len += w.elen[i];
    w.mu[i] = (w.elen[i] + w.elen[(i + n - 1) % n]) * S(0.5);
  }
  w.len = len;
}

// One step of the arc-length derivative recursion: values of order j become
// values of order j+1. Even j: forward difference over the edge length (the
// result lives on edges). Odd j: backward difference over the vertex weight
// (the result lives on vertices).
template <class S>
void derivative_step(const CurveWork<S>& w, int j, const S* in, S* out) {
  const int n = w.n, d = w.d;
  if (j % 2 == 0) {
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n;
      for (int a = 0; a < d; ++a)
        out[i * d + a] = (in[ip * d + a] - in[i * d + a]) / w.elen[i];
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const int im = (i + n - 1) % n;
      for (int a = 0; a < d; ++a)
        out[i * d + a] = (in[i * d + a] - in[im * d + a]) / w.mu[i];
    }
  }
}

template <class S>
std::vector<S> derivative_values(const CurveWork<S>& w, const S* h, int order) {
  const size_t m = static_cast<size_t>(w.n) * w.d;
  std::vector<S> cur(h, h + m), nxt(m, S(0.0));
  for (int j = 0; j < order; ++j) {
    derivative_step(w, j, cur.data(), nxt.data());
    cur.swap(nxt);
  }
  return cur;
}

// Zeroth-order and order-m terms of the Sobolev inner product. The weight of
// the order-m term is mu_i for even m (vertex-based values) and |e_i| for odd
// m (edge-based values); the scale-invariant variant multiplies by powers of
// the total length.
template <class S>
void sobolev_terms(const CurveWork<S>& w, const S* h, const S* k, int order,
                   bool scale_invariant, S& zeroth, S& homogeneous) {
  const int n = w.n, d = w.d;

  S z(0.0);
  for (int i = 0; i < n; ++i) {
    S dot(0.0);
    for (int a = 0; a < d; ++a) dot += h[i * d + a] * k[i * d + a];
    z += dot * w.mu[i];
  }
  if (scale_invariant) z = z * ipow(w.len, -3);
  zeroth = z;

  const std::vector<S> dh = derivative_values(w, h, order);
  std::vector<S> dk_store;
  const S* dk = dh.data();
  if (k != h) {
    dk_store = derivative_values(w, k, order);
    dk = dk_store.data();
  }

  const bool vertex_based = (order % 2 == 0);
  S hm(0.0);
  for (int i = 0; i < n; ++i) {
    S dot(0.0);
    for (int a = 0; a < d; ++a) dot += dh[i * d + a] * dk[i * d + a];
    hm += dot * (vertex_based ? w.mu[i] : w.elen[i]);
  }
  if (scale_invariant) hm = hm * ipow(w.len, 2 * order - 3);
  homogeneous = hm;
}

template <class S>
S sobolev_inner(const CurveWork<S>& w, const S* h, const S* k, int order,
                bool scale_invariant) {
  S z(0.0), hm(0.0);
  sobolev_terms(w, h, k, order, scale_invariant, z, hm);
  return z + hm;
}

}  // namespace polygeo::detail
