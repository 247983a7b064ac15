#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "discvar/error.hpp"
#include "discvar/ring_ops.hpp"

namespace discvar {

/// Dense univariate polynomial over a commutative ring R, coefficients stored
/// from the constant term upwards. R must provide +, -, *, a zero default
/// constructor and a RingOps<R> specialization.
template <class R>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly monomial(R coef, int degree) {
    std::vector<R> c(static_cast<std::size_t>(degree) + 1);
    c.back() = std::move(coef);
    return UniPoly(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<R>& coeffs() const { return c_; }

  /// Coefficient of t^i; zero beyond the degree.
  R coeff(int i) const {
    if (i < 0 || i > degree()) return R{};
    return c_[static_cast<std::size_t>(i)];
  }
  const R& lead() const {
    if (c_.empty()) throw UsageError("leading coefficient of zero polynomial");
    return c_.back();
  }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<R> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < c_.size() && i < o.c_.size()) r[i] = c_[i] + o.c_[i];
      else if (i < c_.size()) r[i] = c_[i];
      else r[i] = o.c_[i];
    }
    return UniPoly(std::move(r));
  }
  UniPoly operator-() const {
    std::vector<R> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(R{} - x);
    return UniPoly(std::move(r));
  }
  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<R> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (RingOps<R>::is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly scaled(const R& s) const {
    std::vector<R> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x * s);
    return UniPoly(std::move(r));
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<R> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = RingOps<R>::times_int(c_[i], static_cast<long>(i));
    return UniPoly(std::move(r));
  }

  /// Horner evaluation in any type the coefficients convert to.
  template <class T>
  T evaluate(const T& t) const {
    T acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + T(*it);
    return acc;
  }

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && RingOps<R>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

/// Quotient and remainder over a field.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divmod(const UniPoly<F>& a, const UniPoly<F>& b) {
  if (b.is_zero()) throw UsageError("polynomial division by zero");
  std::vector<F> rem = a.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {UniPoly<F>{}, a};
  std::vector<F> quo(static_cast<std::size_t>(dq) + 1);
  const F& lb = b.lead();
  for (int k = dq; k >= 0; --k) {
    F q = rem[static_cast<std::size_t>(k + db)] / lb;
    if (RingOps<F>::is_zero(q)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
    quo[static_cast<std::size_t>(k)] = q;
  }
  return {UniPoly<F>(std::move(quo)), UniPoly<F>(std::move(rem))};
}

template <class F>
UniPoly<F> make_monic(const UniPoly<F>& p) {
  if (p.is_zero()) return p;
  F inv = F(1) / p.lead();
  return p.scaled(inv);
}

/// Monic gcd over a field (Euclid).
template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

}  // namespace discvar
