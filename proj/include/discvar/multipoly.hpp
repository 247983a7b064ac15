#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "discvar/monomial.hpp"
#include "discvar/ratfunc.hpp"
#include "discvar/rational.hpp"

namespace discvar {

inline double coef_to_double(const BigRational& c) { return c.get_d(); }
/// Q(k) coefficients evaluate only when they are constant.
inline double coef_to_double(const RatFunc& c) { return c.constant_value().get_d(); }

/// Sparse multivariate polynomial over a coefficient field F (BigRational or
/// RatFunc). Terms are kept strictly descending in the ring's monomial order
/// with no zero coefficients, so == is mathematical equality.
///
/// A default-constructed MultiPoly is the zero of every ring: it adopts the
/// ring of whatever it is combined with.
template <class F>
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    F coef;
    bool operator==(const Term& o) const { return mono == o.mono && coef == o.coef; }
  };

  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MultiPoly constant(RingPtr ring, const F& c) {
    MultiPoly p(std::move(ring));
    if (!is_zero_coef(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static MultiPoly variable(RingPtr ring, std::size_t index) {
    if (index >= ring->size()) throw UsageError("variable index out of range");
    MultiPoly p(std::move(ring));
    p.terms_.push_back({Monomial::variable(index), F(1)});
    return p;
  }
  static MultiPoly variable(const RingPtr& ring, std::string_view name) {
    return variable(ring, ring->require_index(name));
  }
  static MultiPoly term(RingPtr ring, const Monomial& m, const F& c) {
    MultiPoly p(std::move(ring));
    if (!is_zero_coef(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Builds from arbitrary (possibly repeated, unsorted) terms.
  static MultiPoly from_terms(RingPtr ring, std::vector<Term> terms) {
    MultiPoly p(std::move(ring));
    const PolyRing& r = *p.ring_;
    std::sort(terms.begin(), terms.end(),
              [&r](const Term& a, const Term& b) { return r.compare(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
        if (is_zero_coef(p.terms_.back().coef)) p.terms_.pop_back();
      } else if (!is_zero_coef(t.coef)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Term& lead() const {
    if (terms_.empty()) throw UsageError("leading term of zero polynomial");
    return terms_.front();
  }
  const Monomial& lead_mono() const { return lead().mono; }
  const F& lead_coef() const { return lead().coef; }

  /// -1 for zero.
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }
  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.mono.degree() == terms_.front().mono.degree(); });
  }
  bool involves(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.mono[var] != 0; });
  }
  int degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
  }

  MultiPoly operator+(const MultiPoly& o) const { return merge(o, false); }
  MultiPoly operator-(const MultiPoly& o) const { return merge(o, true); }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }

  MultiPoly operator*(const MultiPoly& o) const {
    RingPtr r = common_ring(o);
    if (is_zero() || o.is_zero()) return MultiPoly(r);
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coef);
    if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coef);
    if (terms_.size() * o.terms_.size() <= 64) {
      MultiPoly acc(r);
      for (const auto& t : terms_) acc = acc + o.mul_term(t.mono, t.coef);
      return acc;
    }
    // Merging row by row is quadratic in the result size; sort all products once instead.
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, a.coef * b.coef});
    return from_terms(r, std::move(prod));
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const F& c) const {
    if (is_zero_coef(c)) return MultiPoly(ring_);
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }
  /// this * c * m.
  MultiPoly mul_term(const Monomial& m, const F& c) const {
    MultiPoly r(ring_);
    if (is_zero_coef(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
  }

  /// In-place this -= c * m * g; the workhorse of reduction.
  void sub_mul_term(const F& c, const Monomial& m, const MultiPoly& g) { sub_mul_term_from(0, c, m, g); }

  /// Same, when every term of c*m*g is known to sort at or after position
  /// `pos`: the first `pos` terms are left untouched.
  void sub_mul_term_from(std::size_t pos, const F& c, const Monomial& m, const MultiPoly& g) {
    if (g.is_zero() || is_zero_coef(c)) return;
    if (!ring_) ring_ = g.ring_;
    const PolyRing& r = *ring_;
    std::vector<Term> out;
    out.reserve(terms_.size() - pos + g.terms_.size());
    std::size_t i = pos;
    std::size_t j = 0;
    Monomial gm = g.terms_[0].mono * m;
    while (i < terms_.size() && j < g.terms_.size()) {
      auto cmp = r.compare(terms_[i].mono, gm);
      if (cmp > 0) {
        out.push_back(std::move(terms_[i++]));
      } else if (cmp < 0) {
        out.push_back({gm, -(g.terms_[j].coef * c)});
        if (++j < g.terms_.size()) gm = g.terms_[j].mono * m;
      } else {
        F v = terms_[i].coef - g.terms_[j].coef * c;
        if (!is_zero_coef(v)) out.push_back({gm, std::move(v)});
        ++i;
        if (++j < g.terms_.size()) gm = g.terms_[j].mono * m;
      }
    }
    for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
    for (; j < g.terms_.size(); ++j) out.push_back({g.terms_[j].mono * m, -(g.terms_[j].coef * c)});
    if (pos == 0) {
      terms_ = std::move(out);
    } else {
      terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(pos), terms_.end());
      terms_.insert(terms_.end(), std::make_move_iterator(out.begin()), std::make_move_iterator(out.end()));
    }
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(ring_, F(1));
    MultiPoly base = *this;
    while (e != 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e != 0) base = base * base;
    }
    return result;
  }

  /// Partial derivative with respect to variable `var`.
  MultiPoly diff(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      int e = t.mono[var];
      if (e == 0) continue;
      Monomial m = t.mono;
      m.set(var, e - 1);
      out.push_back({m, RingOps<F>::times_int(t.coef, e)});
    }
    // Differentiation preserves the relative order of the surviving terms
    // only for some orders, so re-sort.
    return from_terms(ring_, std::move(out));
  }

  /// Same polynomial re-expressed in another ring; variables are matched by
  /// name and every variable actually used must exist there.
  MultiPoly in_ring(const RingPtr& target) const {
    if (!ring_ || same_ring(ring_, target)) {
      MultiPoly r = *this;
      r.ring_ = target;
      return r;
    }
    std::vector<std::size_t> map(ring_->size(), kMaxVars);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t i = 0; i < ring_->size(); ++i) {
        if (t.mono[i] == 0) continue;
        if (map[i] == kMaxVars) map[i] = target->require_index(ring_->var(i));
        m.set(map[i], t.mono[i]);
      }
      out.push_back({m, t.coef});
    }
    return from_terms(target, std::move(out));
  }

  /// Applies `fn` to every coefficient, producing a polynomial over G in the
  /// same ring; zero results are dropped.
  template <class G, class Fn>
  MultiPoly<G> map_coeffs(Fn&& fn) const {
    std::vector<typename MultiPoly<G>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono, fn(t.coef)});
    return MultiPoly<G>::from_terms(ring_, std::move(out));
  }

  bool operator==(const MultiPoly& o) const {
    if (terms_.empty() && o.terms_.empty()) return true;
    return same_ring(ring_, o.ring_) && terms_ == o.terms_;
  }

  static bool is_zero_coef(const F& c) { return RingOps<F>::is_zero(c); }

 private:
  RingPtr common_ring(const MultiPoly& o) const {
    if (!ring_) return o.ring_;
    if (!o.ring_) return ring_;
    if (!same_ring(ring_, o.ring_)) throw UsageError("polynomials live in different rings");
    return ring_;
  }

  MultiPoly merge(const MultiPoly& o, bool subtract) const {
    RingPtr rp = common_ring(o);
    MultiPoly out(rp);
    if (!rp) return out;
    const PolyRing& r = *rp;
    out.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      auto cmp = r.compare(terms_[i].mono, o.terms_[j].mono);
      if (cmp > 0) {
        out.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        const Term& t = o.terms_[j++];
        out.terms_.push_back({t.mono, subtract ? F(-t.coef) : t.coef});
      } else {
        F v = subtract ? F(terms_[i].coef - o.terms_[j].coef) : F(terms_[i].coef + o.terms_[j].coef);
        if (!is_zero_coef(v)) out.terms_.push_back({terms_[i].mono, std::move(v)});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) {
      const Term& t = o.terms_[j];
      out.terms_.push_back({t.mono, subtract ? F(-t.coef) : t.coef});
    }
    return out;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

using QMultiPoly = MultiPoly<BigRational>;
using KMultiPoly = MultiPoly<RatFunc>;

template <class F>
struct RingOps<MultiPoly<F>> {
  static bool is_zero(const MultiPoly<F>& p) { return p.is_zero(); }
  static MultiPoly<F> times_int(const MultiPoly<F>& p, long k) { return p.scaled(F(k)); }
};

template <class F>
MultiPoly<F> operator*(const F& c, const MultiPoly<F>& p) { return p.scaled(c); }

/// Scales to leading coefficient one.
template <class F>
MultiPoly<F> make_monic(const MultiPoly<F>& p) {
  if (p.is_zero()) return p;
  return p.scaled(F(1) / p.lead_coef());
}

/// Integer content one, positive leading coefficient. Generates the same
/// ideal as p; zero maps to zero.
QMultiPoly normalize_primitive(const QMultiPoly& p);

/// Canonical generator normalization per coefficient field: primitive
/// integer form over Q, monic over Q(k).
inline QMultiPoly normalize_generator(const QMultiPoly& p) { return normalize_primitive(p); }
inline KMultiPoly normalize_generator(const KMultiPoly& p) { return make_monic(p); }

/// Exact quotient a / b; throws UsageError if b does not divide a.
template <class F>
MultiPoly<F> exact_div(const MultiPoly<F>& a, const MultiPoly<F>& b) {
  if (b.is_zero()) throw UsageError("exact_div by zero polynomial");
  MultiPoly<F> rem = a;
  MultiPoly<F> quo(b.ring() ? b.ring() : a.ring());
  const Monomial& lb = b.lead_mono();
  const F& cb = b.lead_coef();
  while (!rem.is_zero()) {
    const auto& lt = rem.lead();
    if (!lb.divides(lt.mono)) throw UsageError("exact_div: divisor does not divide dividend");
    Monomial m = lt.mono / lb;
    F c = lt.coef / cb;
    quo = quo + MultiPoly<F>::term(quo.ring(), m, c);
    rem.sub_mul_term(c, m, b);
  }
  return quo;
}

/// Substitution target: for each variable of p's ring (by index), either a
/// replacement polynomial in `target` or nothing (kept as is, looked up by
/// name in `target`).
template <class F>
MultiPoly<F> substitute(const MultiPoly<F>& p, const RingPtr& target,
                        const std::map<std::size_t, MultiPoly<F>>& bindings) {
  if (p.is_zero()) return MultiPoly<F>(target);
  const RingPtr& src = p.ring();
  std::vector<std::size_t> keep(src->size(), kMaxVars);
  for (std::size_t i = 0; i < src->size(); ++i)
    if (!bindings.count(i)) {
      if (auto j = target->index_of(src->var(i))) keep[i] = *j;
    }
  // Cache powers of bound values.
  std::map<std::pair<std::size_t, int>, MultiPoly<F>> powers;
  auto power_of = [&](std::size_t var, int e) -> const MultiPoly<F>& {
    auto key = std::make_pair(var, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    MultiPoly<F> v = bindings.at(var).in_ring(target);
    return powers.emplace(key, v.pow(static_cast<unsigned>(e))).first->second;
  };
  MultiPoly<F> acc(target);
  for (const auto& t : p.terms()) {
    Monomial kept;
    for (std::size_t i = 0; i < src->size(); ++i) {
      int e = t.mono[i];
      if (e == 0 || bindings.count(i)) continue;
      if (keep[i] == kMaxVars) throw UsageError("substitute: variable " + src->var(i) + " missing from target ring");
      kept.set(keep[i], e);
    }
    MultiPoly<F> term = MultiPoly<F>::term(target, kept, t.coef);
    for (const auto& [var, value] : bindings) {
      (void)value;
      int e = t.mono[var];
      if (e != 0) term = term * power_of(var, e);
      if (term.is_zero()) break;
    }
    acc += term;
  }
  return acc;
}

/// Name-keyed substitution. The result lives in the ring of the unbound
/// variables (same order kind) unless `target` is given.
template <class F>
MultiPoly<F> substitute(const MultiPoly<F>& p, const std::map<std::string, MultiPoly<F>>& bindings,
                        RingPtr target = nullptr) {
  const RingPtr& src = p.ring();
  if (!src) return MultiPoly<F>(target);
  std::map<std::size_t, MultiPoly<F>> by_index;
  for (const auto& [name, value] : bindings) by_index.emplace(src->require_index(name), value);
  if (!target) {
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < src->size(); ++i)
      if (!by_index.count(i)) rest.push_back(src->var(i));
    MonomialOrder o = src->order();
    if (o.kind == MonomialOrder::Kind::Block) o = MonomialOrder::grevlex();
    target = PolyRing::make(std::move(rest), o);
  }
  return substitute(p, target, by_index);
}

/// Value at a point given per variable index. Horner in the first variable
/// over grouped coefficients would be marginally more accurate; term-wise
/// summation with cached powers is sufficient at these sizes.
template <class F>
double evaluate_numeric(const MultiPoly<F>& p, const std::vector<double>& point) {
  if (p.is_zero()) return 0.0;
  if (point.size() < p.ring()->size()) throw UsageError("evaluate_numeric: missing variable bindings");
  double acc = 0.0;
  for (const auto& t : p.terms()) {
    double v = coef_to_double(t.coef);
    for (std::size_t i = 0; i < p.ring()->size(); ++i) {
      int e = t.mono[i];
      if (e != 0) v *= std::pow(point[i], e);
    }
    acc += v;
  }
  return acc;
}

template <class F>
double evaluate_numeric(const MultiPoly<F>& p, const std::map<std::string, double>& point) {
  if (p.is_zero()) return 0.0;
  std::vector<double> v(p.ring()->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = point.find(p.ring()->var(i));
    if (it == point.end()) {
      if (p.involves(i)) throw UsageError("evaluate_numeric: no value for " + p.ring()->var(i));
      continue;
    }
    v[i] = it->second;
  }
  return evaluate_numeric(p, v);
}

/// Sum of |term| at the point: the natural magnitude against which rounding
/// error of evaluate_numeric is measured.
template <class F>
double evaluation_scale(const MultiPoly<F>& p, const std::vector<double>& point) {
  double acc = 0.0;
  for (const auto& t : p.terms()) {
    double v = std::abs(coef_to_double(t.coef));
    for (std::size_t i = 0; i < p.ring()->size(); ++i) {
      int e = t.mono[i];
      if (e != 0) v *= std::pow(std::abs(point[i]), e);
    }
    acc += v;
  }
  return acc;
}

}  // namespace discvar
