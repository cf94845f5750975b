#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "spencer/lattice/ops.hpp"

namespace spencer::lattice {

/* d omega_d / dt = (d xi)_d + [omega_d, xi] - sum_{d'} X_{d'} Omega_{d' d},
 * xi a fixed gauge-parameter field, X a constant direction vector.
 * The curvature is recomputed at every stage evaluation. */
inline Field evolve_rhs(const LatticeSpec& L, const AlgebraD& g, const Field& omega,
                        const Field& xi, const std::vector<double>& X) {
  Field out = diff0(L, xi);
  Field Om = curvature(L, g, omega);
  std::vector<double> br(g.dim);
  for (int d = 0; d < L.n; ++d)
    for (long long s = 0; s < omega.nsites; ++s) {
      double* o = out.at(d, s);
      g.bracket(omega.at(d, s), xi.at(0, s), br.data());
      for (int k = 0; k < g.dim; ++k) o[k] += br[k];
      for (int dp = 0; dp < L.n; ++dp) {
        if (dp == d || X[dp] == 0) continue;
        /* Omega_{dp d} = -Omega_{d dp} for dp > d */
        const double sgn = (dp < d) ? 1.0 : -1.0;
        const double* om =
            Om.at(pair_index(L.n, std::min(dp, d), std::max(dp, d)), s);
        for (int k = 0; k < g.dim; ++k) o[k] -= X[dp] * sgn * om[k];
      }
    }
  return out;
}

struct EvolveOptions {
  double dt = 0.01;
  int steps = 100;
  std::string scheme = "rk4"; /* euler|rk4 */
  std::vector<double> X;      /* size n, defaults to zeros */
  double blowup_threshold = 1e6;
};

struct EvolveResult {
  Field omega;
  int steps_done = 0;
  bool blew_up = false;
  int blowup_step = -1;
  std::vector<double> max_norm_history;       /* after each step */
  std::vector<double> curvature_norm_history; /* max |Omega| after each step */
};

inline EvolveResult evolve(const LatticeSpec& L, const AlgebraD& g, Field omega,
                           const Field& xi, EvolveOptions opt) {
  if (opt.scheme != "euler" && opt.scheme != "rk4")
    throw input_error("evolve: scheme must be euler|rk4");
  if (opt.X.empty()) opt.X.assign(L.n, 0.0);
  if (static_cast<int>(opt.X.size()) != L.n)
    throw input_error("evolve: X must have one entry per direction");
  if (!(opt.dt > 0)) throw input_error("evolve: dt must be positive");

  EvolveResult res;
  for (int step = 0; step < opt.steps; ++step) {
    if (opt.scheme == "euler") {
      omega = omega + scaled(evolve_rhs(L, g, omega, xi, opt.X), opt.dt);
    } else {
      Field k1 = evolve_rhs(L, g, omega, xi, opt.X);
      Field k2 = evolve_rhs(L, g, omega + scaled(k1, opt.dt / 2), xi, opt.X);
      Field k3 = evolve_rhs(L, g, omega + scaled(k2, opt.dt / 2), xi, opt.X);
      Field k4 = evolve_rhs(L, g, omega + scaled(k3, opt.dt), xi, opt.X);
      omega = omega + scaled(k1 + scaled(k2, 2.0) + scaled(k3, 2.0) + k4, opt.dt / 6);
    }
    const double mx = omega.max_abs();
    res.max_norm_history.push_back(mx);
    res.curvature_norm_history.push_back(
        std::isfinite(mx) ? curvature(L, g, omega).max_abs()
                          : std::numeric_limits<double>::infinity());
    res.steps_done = step + 1;
    if (!std::isfinite(mx) || mx > opt.blowup_threshold) {
      res.blew_up = true;
      res.blowup_step = step;
      break;
    }
  }
  res.omega = std::move(omega);
  return res;
}

/* Dense matrix exponential (Taylor with scaling and squaring), used as
 * an independent oracle for the zero-bracket constant-coefficient case
 * where the flow is exactly linear. */
inline std::vector<double> dense_expm(const std::vector<double>& A, int n) {
  double norm = 0;
  for (int i = 0; i < n; ++i) {
    double row = 0;
    for (int j = 0; j < n; ++j) row += std::abs(A[i * n + j]);
    norm = std::max(norm, row);
  }
  int s = 0;
  while (norm > 0.5) {
    norm /= 2;
    ++s;
  }
  std::vector<double> B(A);
  const double scale = std::ldexp(1.0, -s);
  for (auto& x : B) x *= scale;

  std::vector<double> E(n * n, 0.0), term(n * n, 0.0), tmp(n * n);
  for (int i = 0; i < n; ++i) E[i * n + i] = term[i * n + i] = 1.0;
  for (int k = 1; k <= 24; ++k) {
    /* term = term * B / k */
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0;
        for (int t = 0; t < n; ++t) acc += term[i * n + t] * B[t * n + j];
        tmp[i * n + j] = acc / k;
      }
    term.swap(tmp);
    for (int i = 0; i < n * n; ++i) E[i] += term[i];
  }
  for (int r = 0; r < s; ++r) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0;
        for (int t = 0; t < n; ++t) acc += E[i * n + t] * E[t * n + j];
        tmp[i * n + j] = acc;
      }
    E.swap(tmp);
  }
  return E;
}

}  // namespace spencer::lattice
