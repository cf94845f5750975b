#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "spencer/lattice/ops.hpp"

namespace spencer::lattice {

struct SolveOptions {
  double alpha = 1e-2;
  int max_iter = 500;
  double tol = 1e-10;
};

struct SolveResult {
  Field lambda;
  int iterations = 0;
  bool converged = false;
  double final_residual = 0; /* |Ax-b| relative to max(|b|, |r0|) */
  std::vector<double> functional_history;
  double final_functional = 0;
};

/* Minimizes I(lambda) by conjugate gradients on the normal equations
 *   (L^T L + 2 alpha) lambda = 2 alpha anchor
 * starting from lambda0 (the overall h^n factor cancels).  With
 * alpha = 0 the system is solved on the affine slice
 * {lambda : lambda(site 0) = lambda0(site 0)} to fix the otherwise-free
 * direction along ker L; non-convergence is reported, never thrown. */
inline SolveResult solve_compatibility(const LatticeSpec& L, const AlgebraD& g,
                                       const Field& omega, const Field& lambda0,
                                       const Field& anchor, const SolveOptions& opt) {
  if (opt.alpha < 0) throw input_error("solver: alpha must be >= 0");
  if (opt.max_iter < 1) throw input_error("solver: max_iter must be >= 1");
  if (opt.tol <= 0) throw input_error("solver: tol must be > 0");
  if (lambda0.nsites != anchor.nsites || lambda0.m != anchor.m)
    throw input_error("solver: lambda0 and anchor live on different grids");
  const bool pinned = (opt.alpha == 0);

  auto project = [&](Field& f) { /* zero the pinned site's components */
    if (!pinned) return;
    double* p = f.at(0, 0);
    for (int k = 0; k < g.dim; ++k) p[k] = 0;
  };

  auto apply_A = [&](const Field& x) {
    Field ax = apply_residual_op_transpose(L, g, omega,
                                           apply_residual_op(L, g, omega, x));
    if (opt.alpha != 0) ax = ax + scaled(x, 2.0 * opt.alpha);
    return ax;
  };

  SolveResult res;
  Field x = lambda0;
  Field b(1, anchor.nsites, g.dim);
  if (!pinned) b = scaled(anchor, 2.0 * opt.alpha);

  Field r = b - apply_A(x);
  project(r);
  const double bnorm = b.norm2();
  Field p = r;
  double gamma = dot(r, r);
  const double scale = std::max({bnorm * bnorm, gamma, 1.0e-60});

  res.functional_history.push_back(
      compatibility_functional(L, g, omega, x, anchor, opt.alpha));

  const double stop2 = opt.tol * opt.tol * scale;
  int it = 0;
  for (; it < opt.max_iter && gamma > stop2; ++it) {
    Field ap = apply_A(p);
    project(ap);
    const double denom = dot(p, ap);
    if (denom <= 0) break; /* numerically singular direction */
    const double a = gamma / denom;
    x = x + scaled(p, a);
    r = r - scaled(ap, a);
    const double gnew = dot(r, r);
    p = r + scaled(p, gnew / gamma);
    gamma = gnew;
    res.functional_history.push_back(
        compatibility_functional(L, g, omega, x, anchor, opt.alpha));
  }
  res.iterations = it;
  res.converged = (gamma <= stop2);
  res.final_residual = std::sqrt(gamma / scale);
  res.final_functional = res.functional_history.back();
  res.lambda = std::move(x);
  return res;
}

}  // namespace spencer::lattice
