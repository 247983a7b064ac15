#include "discvar/monomial.hpp"

#include <algorithm>
#include <set>

namespace discvar {

namespace {

std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  int da = 0;
  int db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering lex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace

Monomial::Monomial(const std::vector<int>& exps) {
  if (exps.size() > kMaxVars) throw UsageError("too many variables for a monomial");
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > 255) throw UsageError("monomial exponent out of range");
    e_[i] = static_cast<Exponent>(exps[i]);
  }
  refresh();
}

void Monomial::set(std::size_t i, int value) {
  if (i >= kMaxVars || value < 0 || value > 255) throw UsageError("monomial exponent out of range");
  e_[i] = static_cast<Exponent>(value);
  refresh();
}

void Monomial::refresh() {
  int d = 0;
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    d += e_[i];
    if (e_[i] != 0) m |= 1u << i;
  }
  deg_ = static_cast<std::uint16_t>(d);
  mask_ = m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = static_cast<unsigned>(e_[i]) + o.e_[i];
    if (s > 255) throw UsageError("monomial exponent overflow");
    r.e_[i] = static_cast<Exponent>(s);
  }
  r.deg_ = static_cast<std::uint16_t>(deg_ + o.deg_);
  r.mask_ = mask_ | o.mask_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<Exponent>(e_[i] - o.e_[i]);
  r.refresh();
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
  r.refresh();
  return r;
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
  switch (kind) {
    case Kind::GradedRevLex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      return grevlex_range(a, b, 0, nvars);
    case Kind::DegLex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      return lex_range(a, b, 0, nvars);
    case Kind::Lex:
      return lex_range(a, b, 0, nvars);
    case Kind::Block: {
      auto c = grevlex_range(a, b, 0, block);
      if (c != std::strong_ordering::equal) return c;
      return grevlex_range(a, b, block, nvars);
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case Kind::GradedRevLex: return "grevlex";
    case Kind::DegLex: return "deglex";
    case Kind::Lex: return "lex";
    case Kind::Block: return "block:" + std::to_string(block);
  }
  return "?";
}

MonomialOrder MonomialOrder::parse(std::string_view name) {
  if (name == "grevlex") return grevlex();
  if (name == "deglex") return deglex();
  if (name == "lex") return lex();
  if (name.starts_with("block:")) {
    std::string num(name.substr(6));
    try {
      return block_elim(static_cast<std::size_t>(std::stoul(num)));
    } catch (const std::exception&) {
      throw UsageError("bad block order: " + std::string(name));
    }
  }
  throw UsageError("unknown monomial order: " + std::string(name));
}

PolyRing::PolyRing(std::vector<std::string> vars, MonomialOrder order)
    : vars_(std::move(vars)), order_(order) {
  if (vars_.size() > kMaxVars) throw UsageError("too many variables: " + std::to_string(vars_.size()));
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty()) throw UsageError("empty variable name");
    if (!seen.insert(v).second) throw UsageError("duplicate variable " + v);
  }
  if (order_.kind == MonomialOrder::Kind::Block && order_.block > vars_.size())
    throw UsageError("block size exceeds variable count");
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

std::size_t PolyRing::require_index(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw UsageError("unknown variable " + std::string(name));
  return *i;
}

}  // namespace discvar
