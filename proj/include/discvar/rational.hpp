#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "discvar/error.hpp"
#include "discvar/ring_ops.hpp"

namespace discvar {

/// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
/// denominator) after every arithmetic operation.
using BigRational = mpq_class;
using BigInt = mpz_class;

template <>
struct RingOps<BigRational> {
  static bool is_zero(const BigRational& q) { return sgn(q) == 0; }
  static BigRational times_int(const BigRational& q, long k) { return q * k; }
};

inline std::string to_string(const BigRational& q) {
  return q.get_str();
}

/// Parses "p", "-p", "p/q" or a terminating decimal such as "-0.25".
inline BigRational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw UsageError("empty rational literal");
  BigRational out;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t scale = s.size() - dot - 1;
    BigInt num;
    if (num.set_str(digits, 10) != 0) throw UsageError("bad rational literal: " + s);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    out = BigRational(num, den);
  } else if (out.set_str(s, 10) != 0) {
    throw UsageError("bad rational literal: " + s);
  }
  if (out.get_den() == 0) throw UsageError("zero denominator in " + s);
  out.canonicalize();
  return out;
}

/// Number of bits of the larger of numerator and denominator.
inline std::size_t bit_size(const BigRational& q) {
  std::size_t n = mpz_sizeinbase(q.get_num_mpz_t(), 2);
  std::size_t d = mpz_sizeinbase(q.get_den_mpz_t(), 2);
  return n > d ? n : d;
}

}  // namespace discvar
