#pragma once

#include <cmath>
#include <vector>

#include "spencer/lattice/ops.hpp"

namespace spencer::lattice {

inline double vdot(const double* a, const double* b, int m) {
  double s = 0;
  for (int k = 0; k < m; ++k) s += a[k] * b[k];
  return s;
}

/* Pairing form theta_d = <lambda, omega_d>.  The defect
 *   E = (d theta)_{d1 d2} - <lambda, Omega_{d1 d2}> - <lambda,[w1,w2]> + C,
 *   C = -<lambda,[w1(x), w2(x+h e1) - w2(x)]>
 *       +<lambda,[w2(x), w1(x+h e2) - w1(x)]>,
 * collapses exactly (in real arithmetic) to the residual pairing
 *   <R_{d1}(x), w2(x+h e1)> - <R_{d2}(x), w1(x+h e2)>,
 * so max_identity_gap is pure roundoff, and max_defect measures how far
 * the configuration is from closing the two-form (it vanishes with R). */
struct SymplecticReport {
  double max_identity_gap = 0;
  double max_defect = 0;
  double cartan_residual_max = 0; /* max site/direction norm of R */
};

inline SymplecticReport symplectic_check(const LatticeSpec& L, const AlgebraD& g,
                                         const Field& omega, const Field& lambda) {
  SymplecticReport rep;
  Field Om = curvature(L, g, omega);
  Field R = apply_residual_op(L, g, omega, lambda);
  for (long long s = 0; s < lambda.nsites; ++s)
    for (int d = 0; d < L.n; ++d) {
      double n2 = 0;
      for (int k = 0; k < g.dim; ++k) n2 += R.at(d, s)[k] * R.at(d, s)[k];
      rep.cartan_residual_max = std::max(rep.cartan_residual_max, std::sqrt(n2));
    }
  const double invh = 1.0 / L.h();
  const int m = g.dim;
  std::vector<double> br(m), diffv(m);
  for (int d1 = 0; d1 < L.n; ++d1)
    for (int d2 = d1 + 1; d2 < L.n; ++d2)
      for (long long s = 0; s < lambda.nsites; ++s) {
        const long long s1 = L.shifted(s, d1, +1), s2 = L.shifted(s, d2, +1);
        const double* lam = lambda.at(0, s);
        const double* w1 = omega.at(d1, s);
        const double* w2 = omega.at(d2, s);
        const double* w2s = omega.at(d2, s1);
        const double* w1s = omega.at(d1, s2);
        /* (d theta)_{d1 d2} */
        const double th2s = vdot(lambda.at(0, s1), w2s, m);
        const double th2 = vdot(lam, w2, m);
        const double th1s = vdot(lambda.at(0, s2), w1s, m);
        const double th1 = vdot(lam, w1, m);
        double E = (th2s - th2) * invh - (th1s - th1) * invh;
        E -= vdot(lam, Om.at(pair_index(L.n, d1, d2), s), m);
        g.bracket(w1, w2, br.data());
        E -= vdot(lam, br.data(), m);
        for (int k = 0; k < m; ++k) diffv[k] = w2s[k] - w2[k];
        g.bracket(w1, diffv.data(), br.data());
        E -= vdot(lam, br.data(), m);
        for (int k = 0; k < m; ++k) diffv[k] = w1s[k] - w1[k];
        g.bracket(w2, diffv.data(), br.data());
        E += vdot(lam, br.data(), m);
        const double pairing = vdot(R.at(d1, s), w2s, m) - vdot(R.at(d2, s), w1s, m);
        rep.max_identity_gap = std::max(rep.max_identity_gap, std::abs(E - pairing));
        rep.max_defect = std::max(rep.max_defect, std::abs(E));
      }
  return rep;
}

/* Second-order log of the four-step plaquette word
 *   X1 = h w_{d1}(x),  X2 = h w_{d2}(x+h e_{d1}),
 *   X3 = -h w_{d1}(x+h e_{d2}),  X4 = -h w_{d2}(x):
 *   K = (sum X_i + 1/2 sum_{i<j} [X_i, X_j]) / h^2.
 * K - Omega = O(h) on smooth fields and is exactly zero for constant
 * fields (the difference terms vanish and the commutator sum telescopes
 * to [w1, w2]). */
struct FrobeniusReport {
  double max_defect = 0;
  double max_curvature = 0;
};

inline FrobeniusReport frobenius_defect(const LatticeSpec& L, const AlgebraD& g,
                                        const Field& omega) {
  FrobeniusReport rep;
  Field Om = curvature(L, g, omega);
  const double h = L.h();
  const int m = g.dim;
  std::vector<std::vector<double>> X(4, std::vector<double>(m));
  std::vector<double> acc(m), br(m);
  for (int d1 = 0; d1 < L.n; ++d1)
    for (int d2 = d1 + 1; d2 < L.n; ++d2)
      for (long long s = 0; s < omega.nsites; ++s) {
        const double* w1 = omega.at(d1, s);
        const double* w2s = omega.at(d2, L.shifted(s, d1, +1));
        const double* w1s = omega.at(d1, L.shifted(s, d2, +1));
        const double* w2 = omega.at(d2, s);
        for (int k = 0; k < m; ++k) {
          X[0][k] = h * w1[k];
          X[1][k] = h * w2s[k];
          X[2][k] = -h * w1s[k];
          X[3][k] = -h * w2[k];
        }
        for (int k = 0; k < m; ++k)
          acc[k] = X[0][k] + X[1][k] + X[2][k] + X[3][k];
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) {
            g.bracket(X[i].data(), X[j].data(), br.data());
            for (int k = 0; k < m; ++k) acc[k] += 0.5 * br[k];
          }
        const double* om = Om.at(pair_index(L.n, d1, d2), s);
        double defect2 = 0, curv2 = 0;
        for (int k = 0; k < m; ++k) {
          const double dk = acc[k] / (h * h) - om[k];
          defect2 += dk * dk;
          curv2 += om[k] * om[k];
        }
        rep.max_defect = std::max(rep.max_defect, std::sqrt(defect2));
        rep.max_curvature = std::max(rep.max_curvature, std::sqrt(curv2));
      }
  return rep;
}

/* <coad(a, lam), b> - <coad(b, lam), a> + 2 <lam, [a,b]> = 0, sampled;
 * pins down the sign/pairing conventions shared by all lattice ops. */
struct PairingIdentityReport {
  double max_abs = 0;
  double max_scale = 1; /* largest term magnitude seen, for relative reading */
};

inline PairingIdentityReport pairing_identity_sample(const AlgebraD& g, int trials,
                                                     std::uint64_t seed) {
  PairingIdentityReport rep;
  UniformGen gen(seed);
  const int m = g.dim;
  std::vector<double> a(m), b(m), lam(m), ca(m), cb(m), br(m);
  for (int t = 0; t < trials; ++t) {
    for (int k = 0; k < m; ++k) {
      a[k] = gen(1.0);
      b[k] = gen(1.0);
      lam[k] = gen(1.0);
    }
    g.coad(a.data(), lam.data(), ca.data());
    g.coad(b.data(), lam.data(), cb.data());
    g.bracket(a.data(), b.data(), br.data());
    const double t1 = vdot(ca.data(), b.data(), m);
    const double t2 = vdot(cb.data(), a.data(), m);
    const double t3 = vdot(lam.data(), br.data(), m);
    rep.max_abs = std::max(rep.max_abs, std::abs(t1 - t2 + 2.0 * t3));
    rep.max_scale = std::max({rep.max_scale, std::abs(t1), std::abs(t2), std::abs(t3)});
  }
  return rep;
}

/* Infinitesimal joint gauge shift with constant parameter xi:
 *   omega_d -> omega_d + dt ([omega_d, xi] - (d xi)_d),
 *   lambda  -> lambda - dt coad(xi, lambda),
 * where (d xi)_d = 0 because xi is constant across sites.  When the
 * coadjoint matrices are antisymmetric (compact type) the first
 * variation of the anchor-free functional vanishes, so
 * |I(dt) - I(0)| must shrink quadratically. */
struct EquivarianceReport {
  std::vector<double> dts;
  std::vector<double> delta_I;
  double min_slope = 0;
};

inline EquivarianceReport equivariance_study(const LatticeSpec& L, const AlgebraD& g,
                                             const Field& omega, const Field& lambda,
                                             const std::vector<double>& xi,
                                             const std::vector<double>& dts) {
  if (static_cast<int>(xi.size()) != g.dim)
    throw input_error("equivariance: xi must have algebra dimension");
  EquivarianceReport rep;
  rep.dts = dts;
  Field anchor(1, lambda.nsites, g.dim); /* unused at alpha = 0 */
  const double I0 = compatibility_functional(L, g, omega, lambda, anchor, 0.0);
  std::vector<double> br(g.dim), cd(g.dim);
  for (double dt : dts) {
    Field om2 = omega;
    Field lam2 = lambda;
    for (int d = 0; d < L.n; ++d)
      for (long long s = 0; s < omega.nsites; ++s) {
        g.bracket(omega.at(d, s), xi.data(), br.data());
        double* o = om2.at(d, s);
        for (int k = 0; k < g.dim; ++k) o[k] += dt * br[k];
      }
    for (long long s = 0; s < lambda.nsites; ++s) {
      g.coad(xi.data(), lambda.at(0, s), cd.data());
      double* o = lam2.at(0, s);
      for (int k = 0; k < g.dim; ++k) o[k] -= dt * cd[k];
    }
    rep.delta_I.push_back(
        std::abs(compatibility_functional(L, g, om2, lam2, anchor, 0.0) - I0));
  }
  rep.min_slope = 1e9;
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    const double slope = std::log(rep.delta_I[i] / rep.delta_I[i + 1]) /
                         std::log(dts[i] / dts[i + 1]);
    rep.min_slope = std::min(rep.min_slope, slope);
  }
  return rep;
}

/* Analytic flat configuration on the 2-d grid for a 3-dim algebra with
 * cyclic brackets: omega is the exact left-logarithmic derivative of
 * g(x) = exp(phi1 e1) exp(phi2 e2) sampled at sites, lambda the exactly
 * transported covector.  The continuum residual is identically zero, so
 * every discrete residual here is pure discretization error, O(h). */
inline void flat_configuration(const LatticeSpec& L, Field& omega, Field& lambda,
                               const std::vector<double>& lam0) {
  if (L.n != 2) throw input_error("flat configuration: needs a 2-d grid");
  const double tau = 6.283185307179586476925286766559;
  auto phi1 = [&](double x1, double x2) {
    return 0.7 * std::sin(tau * x1 + 0.3) * std::cos(tau * x2);
  };
  auto phi2 = [&](double x1, double x2) {
    return 0.5 * std::cos(tau * x1) * std::sin(tau * x2 + 0.1);
  };
  auto d1phi1 = [&](double x1, double x2) {
    return 0.7 * tau * std::cos(tau * x1 + 0.3) * std::cos(tau * x2);
  };
  auto d2phi1 = [&](double x1, double x2) {
    return -0.7 * tau * std::sin(tau * x1 + 0.3) * std::sin(tau * x2);
  };
  auto d1phi2 = [&](double x1, double x2) {
    return -0.5 * tau * std::sin(tau * x1) * std::sin(tau * x2 + 0.1);
  };
  auto d2phi2 = [&](double x1, double x2) {
    return 0.5 * tau * std::cos(tau * x1) * std::cos(tau * x2 + 0.1);
  };
  /* exp(-phi ad_{e_axis}) for the cyclic 3-dim brackets: fixes e_axis,
   * rotates the other two as (b,c) -> (cos b - sin c, sin b + cos c) */
  auto rotate = [&](int axis, double phi, double* v) {
    const int b = (axis + 1) % 3, c = (axis + 2) % 3;
    const double cb = std::cos(phi), sb = std::sin(phi);
    const double vb = v[b], vc = v[c];
    v[b] = cb * vb + sb * vc;
    v[c] = -sb * vb + cb * vc;
  };
  omega = Field(2, L.sites(), 3);
  lambda = Field(1, L.sites(), 3);
  for (long long s = 0; s < L.sites(); ++s) {
    const double x1 = L.pos(s, 0), x2 = L.pos(s, 1);
    const double p2 = phi2(x1, x2);
    const double dphi1[2] = {d1phi1(x1, x2), d2phi1(x1, x2)};
    const double dphi2[2] = {d1phi2(x1, x2), d2phi2(x1, x2)};
    for (int d = 0; d < 2; ++d) {
      double* o = omega.at(d, s);
      o[0] = dphi1[d] * std::cos(p2);
      o[2] = dphi1[d] * std::sin(p2);
      o[1] = dphi2[d];
    }
    double* lm = lambda.at(0, s);
    for (int k = 0; k < 3; ++k) lm[k] = lam0[k];
    rotate(0, phi1(x1, x2), lm);
    rotate(1, p2, lm);
  }
}

/* Residual / obstruction / two-form-defect / commutator-defect decay
 * across grid refinements of the analytic flat configuration. */
struct RefinementStudy {
  std::vector<int> Ns;
  std::vector<double> residual_max;
  std::vector<double> obstruction_max;
  std::vector<double> symplectic_max;
  std::vector<double> frobenius_max;
  double residual_slope = 0;
  double obstruction_slope = 0;
  double symplectic_slope = 0;
  double frobenius_slope = 0;
};

inline RefinementStudy refinement_study(const AlgebraD& g, const std::vector<int>& Ns,
                                        const std::vector<double>& lam0) {
  RefinementStudy st;
  st.Ns = Ns;
  for (int N : Ns) {
    LatticeSpec L(2, N);
    Field omega, lambda;
    flat_configuration(L, omega, lambda, lam0);
    SymplecticReport sy = symplectic_check(L, g, omega, lambda);
    st.residual_max.push_back(sy.cartan_residual_max);
    st.symplectic_max.push_back(sy.max_defect);
    st.obstruction_max.push_back(integrability_obstruction(L, g, omega, lambda).max_abs);
    st.frobenius_max.push_back(frobenius_defect(L, g, omega).max_defect);
  }
  /* measured order = least-squares slope of log(err) against log(1/N) */
  auto fit = [&](const std::vector<double>& e) {
    const std::size_t n = e.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = -std::log(static_cast<double>(st.Ns[i]));
      const double y = std::log(std::max(e[i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  st.residual_slope = fit(st.residual_max);
  st.obstruction_slope = fit(st.obstruction_max);
  st.symplectic_slope = fit(st.symplectic_max);
  st.frobenius_slope = fit(st.frobenius_max);
  return st;
}

}  // namespace spencer::lattice
