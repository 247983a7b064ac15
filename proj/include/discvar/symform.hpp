#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "discvar/groebner.hpp"
#include "discvar/multipoly.hpp"
#include "discvar/unipoly.hpp"

namespace discvar {

/// Exact division in an integral domain, for fraction-free elimination.
inline BigRational exact_quotient(const BigRational& a, const BigRational& b) { return a / b; }
template <class F>
MultiPoly<F> exact_quotient(const MultiPoly<F>& a, const MultiPoly<F>& b) { return exact_div(a, b); }

/// Square matrix of polynomials over one ring, row-major.
template <class F>
struct PolyMatrix {
  std::size_t n = 0;
  RingPtr ring;
  std::vector<MultiPoly<F>> entries;

  PolyMatrix() = default;
  PolyMatrix(std::size_t size, RingPtr r) : n(size), ring(std::move(r)), entries(size * size, MultiPoly<F>(ring)) {}

  MultiPoly<F>& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const MultiPoly<F>& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  PolyMatrix transpose() const {
    PolyMatrix t(n, ring);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  PolyMatrix operator*(const PolyMatrix& o) const {
    if (o.n != n) throw UsageError("matrix size mismatch");
    PolyMatrix r(n, ring);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        MultiPoly<F> acc(ring);
        for (std::size_t k = 0; k < n; ++k) acc += (*this)(i, k) * o(k, j);
        r(i, j) = std::move(acc);
      }
    return r;
  }
  MultiPoly<F> trace() const {
    MultiPoly<F> acc(ring);
    for (std::size_t i = 0; i < n; ++i) acc += (*this)(i, i);
    return acc;
  }
  /// Exact entry-wise symmetry as polynomials.
  bool is_symmetric() const {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }
  PolyMatrix in_ring(const RingPtr& target) const {
    PolyMatrix r(n, target);
    for (std::size_t k = 0; k < entries.size(); ++k) r.entries[k] = entries[k].in_ring(target);
    return r;
  }
};

using QPolyMatrix = PolyMatrix<BigRational>;

/// Determinant by cofactor expansion (sizes up to 3) or fraction-free
/// Bareiss elimination. R needs RingOps and exact_quotient.
template <class R>
R determinant(std::vector<R> a, std::size_t n) {
  if (n == 0) throw UsageError("determinant of an empty matrix");
  auto at = [&](std::size_t i, std::size_t j) -> R& { return a[i * n + j]; };
  if (n == 1) return at(0, 0);
  if (n == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  if (n == 3) {
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  }
  bool negate = false;
  bool have_prev = false;
  R prev{};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (RingOps<R>::is_zero(at(k, k))) {
      std::size_t r = k + 1;
      while (r < n && RingOps<R>::is_zero(at(r, k))) ++r;
      if (r == n) return R{};
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        at(i, j) = have_prev ? exact_quotient(v, prev) : v;
      }
      at(i, k) = R{};
    }
    prev = at(k, k);
    have_prev = true;
  }
  R d = at(n - 1, n - 1);
  return negate ? R{} - d : d;
}

template <class F>
MultiPoly<F> determinant(const PolyMatrix<F>& m) {
  MultiPoly<F> d = determinant(m.entries, m.n);
  return d.in_ring(m.ring);
}

/// det(t*I - M) as a polynomial in a fresh variable t whose coefficients
/// live in M's ring; monic of degree n.
template <class F>
UniPoly<MultiPoly<F>> char_poly(const PolyMatrix<F>& m) {
  std::vector<std::string> vars = m.ring->vars();
  std::string t = "charpoly_t";
  while (m.ring->index_of(t)) t += "_";
  vars.push_back(t);
  RingPtr ext = PolyRing::make(vars, MonomialOrder::grevlex());
  const std::size_t ti = vars.size() - 1;
  PolyMatrix<F> a = m.in_ring(ext);
  auto tvar = MultiPoly<F>::variable(ext, ti);
  for (auto& e : a.entries) e = -e;
  for (std::size_t i = 0; i < m.n; ++i) a(i, i) += tvar;
  MultiPoly<F> d = determinant(a);
  std::vector<std::vector<typename MultiPoly<F>::Term>> by_degree(m.n + 1);
  for (const auto& term : d.terms()) {
    Monomial mono = term.mono;
    int e = mono[ti];
    mono.set(ti, 0);
    by_degree.at(static_cast<std::size_t>(e)).push_back({mono, term.coef});
  }
  std::vector<MultiPoly<F>> coeffs;
  for (auto& terms : by_degree) coeffs.push_back(MultiPoly<F>::from_terms(ext, std::move(terms)).in_ring(m.ring));
  return UniPoly<MultiPoly<F>>(std::move(coeffs));
}

/// Resultant as the determinant of the Sylvester matrix, computed by
/// fraction-free elimination.
template <class R>
R sylvester_resultant(const UniPoly<R>& p, const UniPoly<R>& q) {
  if (p.is_zero() || q.is_zero()) throw UsageError("resultant of a zero polynomial");
  const int dp = p.degree();
  const int dq = q.degree();
  if (dp < 1 || dq < 1) throw UsageError("resultant needs degrees at least one");
  const std::size_t size = static_cast<std::size_t>(dp + dq);
  std::vector<R> s(size * size);
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) s[static_cast<std::size_t>(r) * size + static_cast<std::size_t>(r + k)] = p.coeff(dp - k);
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k)
      s[static_cast<std::size_t>(dq + r) * size + static_cast<std::size_t>(r + k)] = q.coeff(dq - k);
  return determinant(std::move(s), size);
}

/// Discriminant of a monic polynomial normalized to prod_{i<j}(r_i - r_j)^2,
/// i.e. (-1)^{n(n-1)/2} Res(p, p').
template <class R>
R monic_discriminant(const UniPoly<R>& p) {
  R res = sylvester_resultant(p, p.derivative());
  const int n = p.degree();
  return ((n * (n - 1) / 2) % 2 == 1) ? R{} - res : res;
}

/// Names of the matrix-entry variables x11, x12, ..., xnn (upper triangle,
/// row-major).
std::vector<std::string> matrix_var_names(std::size_t n);
/// Ring Q[x_ij, i <= j] with the given order.
RingPtr matrix_ring(std::size_t n, MonomialOrder order = MonomialOrder::grevlex());
/// The symmetric matrix [x_ij] over a ring containing the x variables.
QPolyMatrix generic_symmetric(std::size_t n, const RingPtr& ring);

/// Discriminant of the characteristic polynomial of the generic symmetric
/// n x n matrix; vanishes exactly on matrices with a multiple eigenvalue.
QMultiPoly discriminant(std::size_t n, const RingPtr& ring = nullptr);

/// Symbolic construction behind the relation ideal: D = diag(lambda, lambda,
/// mu1, ..., mu_{n-2}), Y = [y_ij], X = Y D Y^T and the row orthonormality
/// conditions of Y.
struct GenericSetup {
  std::size_t n = 0;
  RingPtr ring;  ///< y11..ynn, lambda, mu1..mu_{n-2}
  QPolyMatrix d;
  QPolyMatrix y;
  QPolyMatrix x;
  QSystem ortes;

  std::vector<std::string> y_vars() const;
  std::vector<std::string> eig_vars() const;
};

GenericSetup build_generic(std::size_t n);

/// Row-orthonormality equations row_i(Y).row_j(Y) - delta_ij.
QSystem orthogonality_equations(const QPolyMatrix& y);

}  // namespace discvar
