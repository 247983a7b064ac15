#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "discvar/error.hpp"

namespace discvar {

/// Largest supported variable context. The n = 4 relation ideal needs
/// 16 + 3 + 10 variables plus one Rabinowitsch variable.
inline constexpr std::size_t kMaxVars = 32;

/// Power product x_0^e_0 ... x_{m-1}^e_{m-1}. Slots past the ring size are
/// always zero. Caches total degree and a support bitmask used as a cheap
/// divisibility filter.
class Monomial {
 public:
  using Exponent = std::uint8_t;

  Monomial() = default;
  explicit Monomial(const std::vector<int>& exps);

  static Monomial variable(std::size_t index) {
    Monomial m;
    m.e_[index] = 1;
    m.deg_ = 1;
    m.mask_ = 1u << index;
    return m;
  }

  int operator[](std::size_t i) const { return e_[i]; }
  int degree() const { return deg_; }
  std::uint32_t support() const { return mask_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, int value);

  /// True when this monomial divides `other`.
  bool divides(const Monomial& other) const {
    if ((mask_ & ~other.mask_) != 0 || deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] > other.e_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const;
  /// Exact quotient; requires o.divides(*this).
  Monomial operator/(const Monomial& o) const;
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b) { return (a.mask_ & b.mask_) == 0; }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }

  const std::array<Exponent, kMaxVars>& exponents() const { return e_; }

 private:
  void refresh();

  std::array<Exponent, kMaxVars> e_{};
  std::uint16_t deg_ = 0;
  std::uint32_t mask_ = 0;
};

/// Admissible monomial orders. Block compares the first `block` variables by
/// graded reverse lex, breaking ties with graded reverse lex on the rest; it
/// is an elimination order for the first block.
struct MonomialOrder {
  enum class Kind { GradedRevLex, DegLex, Lex, Block };

  Kind kind = Kind::GradedRevLex;
  std::size_t block = 0;

  static MonomialOrder grevlex() { return {Kind::GradedRevLex, 0}; }
  static MonomialOrder deglex() { return {Kind::DegLex, 0}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder block_elim(std::size_t first) { return {Kind::Block, first}; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b, std::size_t nvars) const;

  std::string name() const;
  static MonomialOrder parse(std::string_view name);

  bool operator==(const MonomialOrder&) const = default;
};

/// Named variable context plus monomial order. Polynomials over the same
/// ring may be combined; rings compare by value.
class PolyRing {
 public:
  PolyRing(std::vector<std::string> vars, MonomialOrder order);

  static std::shared_ptr<const PolyRing> make(std::vector<std::string> vars,
                                              MonomialOrder order = MonomialOrder::grevlex()) {
    return std::make_shared<const PolyRing>(std::move(vars), order);
  }

  std::size_t size() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var(std::size_t i) const { return vars_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;
  const MonomialOrder& order() const { return order_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    return order_.compare(a, b, vars_.size());
  }

  bool operator==(const PolyRing& o) const { return order_ == o.order_ && vars_ == o.vars_; }

 private:
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace discvar
