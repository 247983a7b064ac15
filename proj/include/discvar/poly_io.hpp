#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "discvar/multipoly.hpp"

namespace discvar {

namespace detail {

inline void append_monomial(std::ostringstream& os, const Monomial& m, const PolyRing& ring) {
  bool first = true;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    int e = m[i];
    if (e == 0) continue;
    if (!first) os << '*';
    first = false;
    os << ring.var(i);
    if (e > 1) os << '^' << e;
  }
}

/// Coefficient text and sign handling differ per field.
inline bool coef_negative(const BigRational& c) { return sgn(c) < 0; }
inline bool coef_negative(const RatFunc& c) {
  return c.num().degree() == 0 && c.den().degree() == 0 && sgn(c.num().coeff(0)) < 0;
}
inline std::string coef_abs_text(const BigRational& c, bool with_mono) {
  BigRational a = abs(c);
  if (with_mono && a == 1) return {};
  if (with_mono && a.get_den() != 1) return "(" + a.get_str() + ")*";
  return with_mono ? a.get_str() + "*" : a.get_str();
}
inline std::string coef_abs_text(const RatFunc& c, bool with_mono) {
  RatFunc a = coef_negative(c) ? -c : c;
  if (a.is_constant()) return coef_abs_text(a.constant_value(), with_mono);
  std::string s = a.to_string();
  return with_mono ? "(" + s + ")*" : "(" + s + ")";
}

template <class F>
struct Param {
  static std::optional<F> lookup(std::string_view) { return std::nullopt; }
};
template <>
struct Param<RatFunc> {
  static std::optional<RatFunc> lookup(std::string_view name) {
    if (name == RatFunc::kParamName) return RatFunc::param();
    return std::nullopt;
  }
};

template <class F>
class Parser {
 public:
  Parser(std::string_view text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

  MultiPoly<F> parse() {
    MultiPoly<F> p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UsageError("polynomial parse error at " + std::to_string(pos_) + ": " + why + " in '" +
                     std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly<F> expr() {
    MultiPoly<F> acc(ring_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    MultiPoly<F> t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  MultiPoly<F> term() {
    MultiPoly<F> acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        MultiPoly<F> d = power();
        if (d.is_zero() || !d.is_constant()) fail("division by a non-constant");
        acc = acc.scaled(F(1) / d.lead_coef());
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly<F> power() {
    MultiPoly<F> base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  MultiPoly<F> atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly<F> inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return MultiPoly<F>::constant(ring_, F(parse_rational(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (auto idx = ring_->index_of(name)) return MultiPoly<F>::variable(ring_, *idx);
      if (auto v = Param<F>::lookup(name)) return MultiPoly<F>::constant(ring_, *v);
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  RingPtr ring_;
};

}  // namespace detail

/// ASCII text in the style `x12^2*x23 -x12*x13*x22 +(1/2)*x13^3`.
template <class F>
std::string to_text(const MultiPoly<F>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = detail::coef_negative(t.coef);
    if (!first) os << (neg ? " -" : " +");
    else if (neg) os << '-';
    first = false;
    bool has_mono = !t.mono.is_one();
    os << detail::coef_abs_text(t.coef, has_mono);
    if (has_mono) detail::append_monomial(os, t.mono, *p.ring());
  }
  return os.str();
}

/// Parses infix text (+ - * / ^ and parentheses) into `ring`. Over Q(k) the
/// identifier `k` denotes the field parameter unless it names a variable.
template <class F>
MultiPoly<F> parse_poly(std::string_view text, const RingPtr& ring) {
  return detail::Parser<F>(text, ring).parse();
}

inline QMultiPoly parse_qpoly(std::string_view text, const RingPtr& ring) { return parse_poly<BigRational>(text, ring); }
inline KMultiPoly parse_kpoly(std::string_view text, const RingPtr& ring) { return parse_poly<RatFunc>(text, ring); }

// JSON: {"vars": [...], "order": "...", "terms": [{"exps": [...], "num": ..., "den": ...}]}.
// Over Q num/den are decimal integer strings; over Q(k) they are arrays of
// rational strings, the coefficients of k from the constant term upwards.

inline nlohmann::json coef_to_json_num(const BigRational& c) { return c.get_num().get_str(); }
inline nlohmann::json coef_to_json_den(const BigRational& c) { return c.get_den().get_str(); }
inline nlohmann::json qpoly_to_json(const QPoly& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}
inline nlohmann::json coef_to_json_num(const RatFunc& c) { return qpoly_to_json(c.num()); }
inline nlohmann::json coef_to_json_den(const RatFunc& c) { return qpoly_to_json(c.den()); }

template <class F>
F coef_from_json(const nlohmann::json& num, const nlohmann::json& den);

template <>
inline BigRational coef_from_json<BigRational>(const nlohmann::json& num, const nlohmann::json& den) {
  BigRational q(BigInt(num.get<std::string>()), BigInt(den.get<std::string>()));
  q.canonicalize();
  return q;
}

template <>
inline RatFunc coef_from_json<RatFunc>(const nlohmann::json& num, const nlohmann::json& den) {
  auto read = [](const nlohmann::json& a) {
    std::vector<BigRational> c;
    for (const auto& x : a) c.push_back(parse_rational(x.get<std::string>()));
    return QPoly(std::move(c));
  };
  return RatFunc(read(num), read(den));
}

inline nlohmann::json ring_to_json(const PolyRing& r) {
  return {{"vars", r.vars()}, {"order", r.order().name()}};
}
inline RingPtr ring_from_json(const nlohmann::json& j) {
  return PolyRing::make(j.at("vars").get<std::vector<std::string>>(),
                        MonomialOrder::parse(j.at("order").get<std::string>()));
}

template <class F>
nlohmann::json terms_to_json(const MultiPoly<F>& p, std::size_t nvars) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    std::vector<int> exps(nvars);
    for (std::size_t i = 0; i < nvars; ++i) exps[i] = t.mono[i];
    terms.push_back({{"exps", exps}, {"num", coef_to_json_num(t.coef)}, {"den", coef_to_json_den(t.coef)}});
  }
  return terms;
}

template <class F>
nlohmann::json to_json(const MultiPoly<F>& p, const RingPtr& ring) {
  nlohmann::json j = ring_to_json(*ring);
  j["terms"] = terms_to_json(p.in_ring(ring), ring->size());
  return j;
}

template <class F>
MultiPoly<F> terms_from_json(const nlohmann::json& terms, const RingPtr& ring) {
  std::vector<typename MultiPoly<F>::Term> out;
  for (const auto& t : terms) {
    auto exps = t.at("exps").get<std::vector<int>>();
    if (exps.size() != ring->size()) throw UsageError("term exponent vector does not match ring size");
    out.push_back({Monomial(exps), coef_from_json<F>(t.at("num"), t.at("den"))});
  }
  return MultiPoly<F>::from_terms(ring, std::move(out));
}

template <class F>
MultiPoly<F> poly_from_json(const nlohmann::json& j) {
  return terms_from_json<F>(j.at("terms"), ring_from_json(j));
}

}  // namespace discvar
