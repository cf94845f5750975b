#pragma once

#include <vector>

#include "spencer/lattice/lattice.hpp"

namespace spencer::lattice {

inline int pair_count(int n) { return n * (n - 1) / 2; }

inline int pair_index(int n, int d1, int d2) {
  /* (0,1),(0,2),...,(0,n-1),(1,2),... */
  if (d1 < 0 || d2 <= d1 || d2 >= n) throw invariant_violation("bad direction pair");
  return d1 * n - d1 * (d1 + 1) / 2 + (d2 - d1 - 1);
}

/* forward difference of a one-component field, (df)_d = (f(x+he_d)-f(x))/h */
inline Field diff0(const LatticeSpec& L, const Field& f) {
  Field out(L.n, f.nsites, f.m);
  const double invh = 1.0 / L.h();
  for (int d = 0; d < L.n; ++d)
    for (long long s = 0; s < f.nsites; ++s) {
      const double* a = f.at(0, s);
      const double* b = f.at(0, L.shifted(s, d, +1));
      double* o = out.at(d, s);
      for (int k = 0; k < f.m; ++k) o[k] = (b[k] - a[k]) * invh;
    }
  return out;
}

/* Omega_{d1 d2} = (d omega)_{d1 d2} + [omega_{d1}, omega_{d2}],
 * one component per ordered pair d1 < d2. */
inline Field curvature(const LatticeSpec& L, const AlgebraD& g, const Field& omega) {
  Field out(pair_count(L.n), omega.nsites, g.dim);
  const double invh = 1.0 / L.h();
  std::vector<double> br(g.dim);
  for (int d1 = 0; d1 < L.n; ++d1)
    for (int d2 = d1 + 1; d2 < L.n; ++d2) {
      const int pc = pair_index(L.n, d1, d2);
      for (long long s = 0; s < omega.nsites; ++s) {
        const double* w1 = omega.at(d1, s);
        const double* w2 = omega.at(d2, s);
        const double* w2s = omega.at(d2, L.shifted(s, d1, +1));
        const double* w1s = omega.at(d1, L.shifted(s, d2, +1));
        double* o = out.at(pc, s);
        g.bracket(w1, w2, br.data());
        for (int k = 0; k < g.dim; ++k)
          o[k] = (w2s[k] - w2[k]) * invh - (w1s[k] - w1[k]) * invh + br[k];
      }
    }
  return out;
}

/* R_d = (d lambda)_d + coad(omega_d, lambda); linear in lambda. */
inline Field apply_residual_op(const LatticeSpec& L, const AlgebraD& g,
                               const Field& omega, const Field& lambda) {
  Field out(L.n, lambda.nsites, g.dim);
  const double invh = 1.0 / L.h();
  std::vector<double> cd(g.dim);
  for (int d = 0; d < L.n; ++d)
    for (long long s = 0; s < lambda.nsites; ++s) {
      const double* lam = lambda.at(0, s);
      const double* lams = lambda.at(0, L.shifted(s, d, +1));
      g.coad(omega.at(d, s), lam, cd.data());
      double* o = out.at(d, s);
      for (int k = 0; k < g.dim; ++k) o[k] = (lams[k] - lam[k]) * invh + cd[k];
    }
  return out;
}

inline Field cartan_residual(const LatticeSpec& L, const AlgebraD& g,
                             const Field& omega, const Field& lambda) {
  return apply_residual_op(L, g, omega, lambda);
}

/* Adjoint of the residual operator under the plain Euclidean pairing:
 * (L^T R)(x) = sum_d (R_d(x-he_d) - R_d(x))/h + coad(omega_d(x),.)^T R_d(x). */
inline Field apply_residual_op_transpose(const LatticeSpec& L, const AlgebraD& g,
                                         const Field& omega, const Field& R) {
  Field out(1, R.nsites, g.dim);
  const double invh = 1.0 / L.h();
  std::vector<double> ct(g.dim);
  for (int d = 0; d < L.n; ++d)
    for (long long s = 0; s < R.nsites; ++s) {
      const double* rd = R.at(d, s);
      const double* rdm = R.at(d, L.shifted(s, d, -1));
      g.coad_transpose(omega.at(d, s), rd, ct.data());
      double* o = out.at(0, s);
      for (int k = 0; k < g.dim; ++k) o[k] += (rdm[k] - rd[k]) * invh + ct[k];
    }
  return out;
}

struct ObstructionReport {
  double max_abs = 0;
  double mean_abs = 0;
  long long argmax_site = 0;
};

/* s(x) = max over pairs |<lambda(x), Omega_{d1 d2}(x)>| */
inline ObstructionReport integrability_obstruction(const LatticeSpec& L,
                                                   const AlgebraD& g,
                                                   const Field& omega,
                                                   const Field& lambda) {
  Field Om = curvature(L, g, omega);
  ObstructionReport rep;
  double total = 0;
  for (long long s = 0; s < lambda.nsites; ++s) {
    double site_max = 0;
    const double* lam = lambda.at(0, s);
    for (int pc = 0; pc < Om.comps; ++pc) {
      const double* o = Om.at(pc, s);
      double dp = 0;
      for (int k = 0; k < g.dim; ++k) dp += lam[k] * o[k];
      site_max = std::max(site_max, std::abs(dp));
    }
    total += site_max;
    if (site_max > rep.max_abs) {
      rep.max_abs = site_max;
      rep.argmax_site = s;
    }
  }
  rep.mean_abs = total / static_cast<double>(lambda.nsites);
  return rep;
}

/* I = (1/2) h^n sum |R|^2 + alpha h^n sum |lambda - anchor|^2 */
inline double compatibility_functional(const LatticeSpec& L, const AlgebraD& g,
                                       const Field& omega, const Field& lambda,
                                       const Field& anchor, double alpha) {
  Field R = apply_residual_op(L, g, omega, lambda);
  double hn = 1;
  for (int d = 0; d < L.n; ++d) hn *= L.h();
  double s = 0.5 * dot(R, R);
  if (alpha != 0) {
    Field dl = lambda - anchor;
    s += alpha * dot(dl, dl);
  }
  return hn * s;
}

/* exact gradient of the functional in lambda:
 * h^n (L^T L lambda + 2 alpha (lambda - anchor)) */
inline Field functional_gradient(const LatticeSpec& L, const AlgebraD& g,
                                 const Field& omega, const Field& lambda,
                                 const Field& anchor, double alpha) {
  Field R = apply_residual_op(L, g, omega, lambda);
  Field grad = apply_residual_op_transpose(L, g, omega, R);
  if (alpha != 0) grad = grad + scaled(lambda - anchor, 2.0 * alpha);
  double hn = 1;
  for (int d = 0; d < L.n; ++d) hn *= L.h();
  return scaled(grad, hn);
}

/* Nullifier of the constraint functional at one site, on the tangent
 * model R^n (+) g of the trivial bundle: the connection form sends a
 * horizontal direction e_d to omega_d(x) and a vertical direction xi to
 * itself, so the functional is
 *
 *   w(v, xi) = sum_d v_d <lambda(x), omega_d(x)> + <lambda(x), xi>.
 *
 * D = ker w has codimension 1 whenever lambda(x) != 0, hence
 * dim D = n + m - 1, dim(D cap V) = m - 1, and D + V is everything.
 * The dims are measured, not asserted. */
struct DistributionReport {
  long long site = 0;
  int ambient = 0;                          /* n + dim g */
  int dim_D = 0;
  int dim_D_cap_V = 0;
  int dim_D_plus_V = 0;
  bool D_plus_V_full = false;
  std::vector<std::vector<double>> basis;   /* orthonormal basis of D */
};

inline DistributionReport constraint_distribution(const LatticeSpec& L, const AlgebraD& g,
                                                  const Field& omega, const Field& lambda,
                                                  long long site) {
  if (site < 0 || site >= lambda.nsites)
    throw input_error("constraint distribution: site index out of range");
  const int n = L.n, m = g.dim, amb = n + m;
  const double* lam = lambda.at(0, site);
  double lam_norm = 0;
  for (int j = 0; j < m; ++j) lam_norm += lam[j] * lam[j];
  if (lam_norm == 0)
    throw input_error("constraint distribution: lambda vanishes at the queried site "
                      "(degenerate constraint)");

  std::vector<double> w(amb, 0.0);
  for (int d = 0; d < n; ++d) {
    const double* om = omega.at(d, site);
    for (int j = 0; j < m; ++j) w[d] += lam[j] * om[j];
  }
  for (int j = 0; j < m; ++j) w[n + j] = lam[j];
  double wn = 0;
  for (double x : w) wn += x * x;
  wn = std::sqrt(wn);
  for (double& x : w) x /= wn;

  DistributionReport rep;
  rep.site = site;
  rep.ambient = amb;

  /* orthonormal basis of w-perp: Gram-Schmidt the standard basis against w */
  std::vector<std::vector<double>> onb;
  onb.push_back(w);
  for (int i = 0; i < amb && (int)onb.size() < amb; ++i) {
    std::vector<double> v(amb, 0.0);
    v[i] = 1.0;
    for (const auto& b : onb) {
      double pr = 0;
      for (int t = 0; t < amb; ++t) pr += v[t] * b[t];
      for (int t = 0; t < amb; ++t) v[t] -= pr * b[t];
    }
    double nn = 0;
    for (double x : v) nn += x * x;
    nn = std::sqrt(nn);
    if (nn > 1e-12) {
      for (double& x : v) x /= nn;
      onb.push_back(std::move(v));
      rep.basis.push_back(onb.back());
    }
  }
  rep.dim_D = static_cast<int>(rep.basis.size());

  /* D cap V = {xi : <lambda, xi> = 0}: lambda != 0 makes the restriction
   * of w to V rank 1 */
  rep.dim_D_cap_V = m - 1;

  /* D + V: measured rank of [basis(D) | e_n..e_{n+m-1}] */
  std::vector<std::vector<double>> span;
  auto add_to_span = [&](std::vector<double> v) {
    for (const auto& b : span) {
      double pr = 0;
      for (int t = 0; t < amb; ++t) pr += v[t] * b[t];
      for (int t = 0; t < amb; ++t) v[t] -= pr * b[t];
    }
    double nn = 0;
    for (double x : v) nn += x * x;
    nn = std::sqrt(nn);
    if (nn > 1e-10) {
      for (double& x : v) x /= nn;
      span.push_back(std::move(v));
    }
  };
  for (const auto& b : rep.basis) add_to_span(b);
  for (int j = 0; j < m; ++j) {
    std::vector<double> v(amb, 0.0);
    v[n + j] = 1.0;
    add_to_span(std::move(v));
  }
  rep.dim_D_plus_V = static_cast<int>(span.size());
  rep.D_plus_V_full = (rep.dim_D_plus_V == amb);
  return rep;
}

}  // namespace spencer::lattice
