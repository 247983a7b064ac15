#pragma once

namespace discvar {

/// Minimal interface generic code needs from a coefficient ring. The
/// primary template covers types with an is_zero() member and a
/// constructor from long; other types specialize.
template <class T>
struct RingOps {
  static bool is_zero(const T& x) { return x.is_zero(); }
  static T times_int(const T& x, long k) { return x * T(k); }
};

}  // namespace discvar
