#include "discvar/multipoly.hpp"

namespace discvar {

QMultiPoly normalize_primitive(const QMultiPoly& p) {
  if (p.is_zero()) return p;
  // Clear denominators with their lcm, then divide by the numerators' gcd.
  BigInt den_lcm = 1;
  for (const auto& t : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
  BigInt num_gcd = 0;
  for (const auto& t : p.terms()) {
    BigInt n = t.coef.get_num() * (den_lcm / t.coef.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  BigRational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (sgn(p.lead_coef()) < 0) factor = -factor;
  if (factor == 1) return p;
  return p.scaled(factor);
}

}  // namespace discvar
