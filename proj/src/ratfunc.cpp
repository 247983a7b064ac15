#include "discvar/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace discvar {

RatFunc::RatFunc(QPoly num, QPoly den) {
  if (den.is_zero()) throw UsageError("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = QPoly({BigRational(1)});
    return;
  }
  QPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  BigRational lc = den.lead();
  if (lc != 1) {
    BigRational inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

BigRational RatFunc::constant_value() const {
  if (!is_constant()) throw UsageError("rational function depends on k: " + to_string());
  return num_.coeff(0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (is_constant() && den_.degree() == 0 && o.is_constant()) {
    return RatFunc(num_.coeff(0) * o.num_.coeff(0));
  }
  // Cross-cancel first to keep intermediate degrees small.
  QPoly g1 = gcd(num_, o.den_);
  QPoly g2 = gcd(o.num_, den_);
  QPoly a = g1.degree() > 0 ? divmod(num_, g1).first : num_;
  QPoly d2 = g1.degree() > 0 ? divmod(o.den_, g1).first : o.den_;
  QPoly b = g2.degree() > 0 ? divmod(o.num_, g2).first : o.num_;
  QPoly d1 = g2.degree() > 0 ? divmod(den_, g2).first : den_;
  QPoly n = a * b;
  QPoly d = d1 * d2;
  BigRational lc = d.lead();
  if (lc != 1) {
    BigRational inv = 1 / lc;
    n = n.scaled(inv);
    d = d.scaled(inv);
  }
  return RatFunc(std::move(n), std::move(d), Canonical{});
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw UsageError("division by zero rational function");
  return *this * RatFunc(o.den_, o.num_);
}

BigRational RatFunc::evaluate(const BigRational& point) const {
  BigRational d = den_.evaluate(point);
  if (sgn(d) == 0) throw UsageError("rational function has a pole at k = " + point.get_str());
  BigRational n = num_.evaluate(point);
  return n / d;
}

double RatFunc::evaluate(double point) const {
  double n = 0.0;
  double d = 0.0;
  for (int i = num_.degree(); i >= 0; --i) n = n * point + num_.coeff(i).get_d();
  for (int i = den_.degree(); i >= 0; --i) d = d * point + den_.coeff(i).get_d();
  return n / d;
}

std::size_t RatFunc::bit_size() const {
  std::size_t b = 0;
  for (const auto& c : num_.coeffs()) b = std::max(b, discvar::bit_size(c));
  for (const auto& c : den_.coeffs()) b = std::max(b, discvar::bit_size(c));
  return b;
}

std::string to_string(const QPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    BigRational c = p.coeff(i);
    if (sgn(c) == 0) continue;
    bool neg = sgn(c) < 0;
    BigRational a = neg ? BigRational(-c) : c;
    if (!first) os << (neg ? "-" : "+");
    else if (neg) os << "-";
    first = false;
    bool unit = (a == 1);
    if (i == 0 || !unit) {
      if (a.get_den() != 1 && i > 0) os << "(" << a.get_str() << ")";
      else os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string RatFunc::to_string() const {
  std::string n = discvar::to_string(num_, kParamName);
  if (den_.degree() == 0) return n;
  std::string d = discvar::to_string(den_, kParamName);
  bool simple_num = num_.degree() <= 0 || (num_.coeffs().size() - static_cast<std::size_t>(std::count_if(
      num_.coeffs().begin(), num_.coeffs().end(), [](const BigRational& c) { return sgn(c) == 0; }))) == 1;
  if (!simple_num) n = "(" + n + ")";
  return n + "/(" + d + ")";
}

}  // namespace discvar
