#pragma once

#include <vector>

#include "spencer/core/dense.hpp"
#include "spencer/liealg/lie_algebra.hpp"

namespace spencer::liealg {

/* Exact scalar q*sqrt(r), q,r rational, r > 0.  Addition is defined
 * only when the radicands differ by a rational square; that is all the
 * orthonormalized structure constants ever need (each Killing trace or
 * Jacobi sum carries a single radicand). */
struct Surd {
  Rat q{0};
  Rat r{1};

  Surd() = default;
  Surd(Rat q_, Rat r_) : q(std::move(q_)), r(std::move(r_)) {
    if (r <= 0) throw invariant_violation("surd: nonpositive radicand");
    if (q == 0) r = 1;
  }

  static bool rational_sqrt(const Rat& x, Rat& out) {
    if (x <= 0) return false;
    Int n = numerator(x), d = denominator(x);
    Int sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    out = Rat(sn, sd);
    return true;
  }

  Surd operator*(const Surd& rhs) const {
    if (q == 0 || rhs.q == 0) return Surd();
    Surd out(q * rhs.q, r * rhs.r);
    Rat root;
    if (rational_sqrt(out.r, root)) { /* pull perfect squares out */
      out.q *= root;
      out.r = 1;
    }
    return out;
  }

  Surd operator+(const Surd& rhs) const {
    if (q == 0) return rhs;
    if (rhs.q == 0) return *this;
    Rat s;
    if (!rational_sqrt(r / rhs.r, s))
      throw invariant_violation("surd: incompatible radicands in addition");
    Rat qq = q * s + rhs.q;
    if (qq == 0) return Surd();
    return Surd(qq, rhs.r);
  }

  bool operator==(const Surd& rhs) const {
    if (q == 0 && rhs.q == 0) return true;
    if ((q > 0) != (rhs.q > 0)) return false;
    return q * q * r == rhs.q * rhs.q * rhs.r;
  }

  double value() const { return rat_double(q) * std::sqrt(rat_double(r)); }
};

struct OrthonormalizedBasis {
  /* new basis f_i = (1/sqrt(scale_sq[i])) * sum_j basis(i,j) e_j */
  RatDense basis;              /* rational Gram-Schmidt vectors, row i = v_i */
  std::vector<Rat> scale_sq;   /* d_i = -K(v_i, v_i) > 0 */
  std::vector<Surd> constants; /* [f_i,f_j] = sum_k constants[(i*dim+j)*dim+k] f_k */
  bool killing_is_minus_identity = false;
  int dim = 0;

  const Surd& cc(int i, int j, int k) const { return constants[(i * dim + j) * dim + k]; }
};

/* Rescales a rational basis so that the Killing form becomes exactly
 * -Id.  Requires -K positive definite (compact type); otherwise throws
 * unsupported_algebra_error.  The result's Killing form is re-computed
 * from the surd structure constants and asserted equal to -Id, so a
 * second orthonormalization pass would be the identity. */
inline OrthonormalizedBasis orthonormalize_basis(const LieAlgebra& g) {
  const int n = g.dim;
  RatDense K = g.killing_form();
  /* M = -K must be positive definite */
  RatDense M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = -K(i, j);

  OrthonormalizedBasis out;
  out.dim = n;
  out.basis = RatDense::identity(n);
  out.scale_sq.assign(n, Rat(0));

  auto mdot = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n; ++j) s += a[i] * M(i, j) * b[j];
    }
    return s;
  };

  std::vector<std::vector<Rat>> v(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) v[i][j] = (i == j) ? 1 : 0;
    for (int j = 0; j < i; ++j) {
      Rat proj = mdot(v[i], v[j]) / out.scale_sq[j];
      for (int k = 0; k < n; ++k) v[i][k] -= proj * v[j][k];
    }
    out.scale_sq[i] = mdot(v[i], v[i]);
    if (out.scale_sq[i] <= 0)
      throw unsupported_algebra_error(
          "orthonormalize_basis: Killing form is not negative definite");
    for (int k = 0; k < n; ++k) out.basis(i, k) = v[i][k];
  }

  /* expand [v_i, v_j] in the v-basis: solve V^T a = x with V rows v_i */
  RatDense V(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) V(i, j) = v[i][j];
  RatDense Vinv = V.transpose().inverse();

  out.constants.assign(static_cast<std::size_t>(n) * n * n, Surd());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto br = g.bracket(v[i], v[j]);
      for (int k = 0; k < n; ++k) {
        Rat a = 0;
        for (int m = 0; m < n; ++m) a += Vinv(k, m) * br[m];
        if (a != 0)
          out.constants[(i * n + j) * n + k] =
              Surd(a, out.scale_sq[k] / (out.scale_sq[i] * out.scale_sq[j]));
      }
    }

  /* Killing form of the rescaled constants, exact surd arithmetic */
  out.killing_is_minus_identity = true;
  for (int i = 0; i < n && out.killing_is_minus_identity; ++i)
    for (int j = 0; j < n && out.killing_is_minus_identity; ++j) {
      Surd tr;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) tr = tr + out.cc(i, k, l) * out.cc(j, l, k);
      Surd expect = (i == j) ? Surd(Rat(-1), Rat(1)) : Surd();
      if (!(tr == expect)) out.killing_is_minus_identity = false;
    }
  if (!out.killing_is_minus_identity)
    throw invariant_violation("orthonormalize_basis: rescaled Killing form is not -Id");
  return out;
}

}  // namespace spencer::liealg
