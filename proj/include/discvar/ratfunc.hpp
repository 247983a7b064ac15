#pragma once

#include <cstddef>
#include <string>

#include "discvar/rational.hpp"
#include "discvar/unipoly.hpp"

namespace discvar {

using QPoly = UniPoly<BigRational>;

/// Element of the rational function field Q(k). Kept canonical: the
/// denominator is monic and coprime to the numerator, so structural equality
/// is mathematical equality.
class RatFunc {
 public:
  RatFunc() : den_(QPoly({BigRational(1)})) {}
  RatFunc(long c) : RatFunc(BigRational(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const BigRational& c) : num_(QPoly({c})), den_(QPoly({BigRational(1)})) {}  // NOLINT
  RatFunc(QPoly num, QPoly den);

  /// The transcendental k itself.
  static RatFunc param() { return RatFunc(QPoly({BigRational(0), BigRational(1)}), QPoly({BigRational(1)})); }
  static constexpr const char* kParamName = "k";

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// True when the value does not depend on k.
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  BigRational constant_value() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const { return RatFunc(-num_, den_, Canonical{}); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Value at k = point. Throws UsageError at a pole.
  BigRational evaluate(const BigRational& point) const;
  double evaluate(double point) const;

  /// deg(num) - deg(den); order of growth as k -> infinity.
  int degree_at_infinity() const { return num_.degree() - den_.degree(); }
  /// lim k^{-d} f(k) for d = degree_at_infinity().
  BigRational leading_ratio() const { return num_.lead() / den_.lead(); }

  std::size_t bit_size() const;
  std::string to_string() const;

 private:
  struct Canonical {};
  RatFunc(QPoly num, QPoly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  QPoly num_;
  QPoly den_;
};

inline std::string to_string(const RatFunc& f) { return f.to_string(); }
inline std::size_t bit_size(const RatFunc& f) { return f.bit_size(); }

/// Paper-style text of a univariate polynomial in `var`, e.g. "k^2+1".
std::string to_string(const QPoly& p, const std::string& var);

}  // namespace discvar
