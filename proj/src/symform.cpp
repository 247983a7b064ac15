#include <map>
#include "discvar/symform.hpp"

namespace discvar {

std::vector<std::string> matrix_var_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) v.push_back("x" + std::to_string(i) + std::to_string(j));
  return v;
}

RingPtr matrix_ring(std::size_t n, MonomialOrder order) { return PolyRing::make(matrix_var_names(n), order); }

QPolyMatrix generic_symmetric(std::size_t n, const RingPtr& ring) {
  QPolyMatrix m(n, ring);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto v = QMultiPoly::variable(ring, "x" + std::to_string(i + 1) + std::to_string(j + 1));
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

QMultiPoly discriminant(std::size_t n, const RingPtr& ring) {
  if (n < 2) throw UsageError("discriminant needs n >= 2");
  RingPtr r = ring ? ring : matrix_ring(n);
  UniPoly<QMultiPoly> p = char_poly(generic_symmetric(n, r));
  // Discriminant of the generic monic polynomial t^n + c_{n-1} t^{n-1} + ...
  // in the symbols c_i, then c_i replaced by the coefficients of p. Running
  // the Sylvester elimination on the matrix entries directly is far slower
  // from n = 4 on.
  std::vector<std::string> cs;
  for (std::size_t i = 0; i < n; ++i) cs.push_back("c" + std::to_string(i));
  RingPtr cr = PolyRing::make(cs);
  std::vector<QMultiPoly> generic;
  for (std::size_t i = 0; i < n; ++i) generic.push_back(QMultiPoly::variable(cr, i));
  generic.push_back(QMultiPoly::constant(cr, BigRational(1)));
  QMultiPoly dc = monic_discriminant(UniPoly<QMultiPoly>(generic));
  std::map<std::size_t, QMultiPoly> bind;
  for (std::size_t i = 0; i < n; ++i) bind.emplace(i, p.coeff(static_cast<int>(i)).in_ring(r));
  return substitute(dc, r, bind);
}

std::vector<std::string> GenericSetup::y_vars() const {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) v.push_back("y" + std::to_string(i) + std::to_string(j));
  return v;
}

std::vector<std::string> GenericSetup::eig_vars() const {
  std::vector<std::string> v{"lambda"};
  for (std::size_t k = 1; k + 2 <= n; ++k) v.push_back("mu" + std::to_string(k));
  return v;
}

QSystem orthogonality_equations(const QPolyMatrix& y) {
  QSystem s{y.ring, {}, false};
  for (std::size_t i = 0; i < y.n; ++i)
    for (std::size_t j = i; j < y.n; ++j) {
      QMultiPoly acc(y.ring);
      for (std::size_t k = 0; k < y.n; ++k) acc += y(i, k) * y(j, k);
      if (i == j) acc -= QMultiPoly::constant(y.ring, BigRational(1));
      s.gens.push_back(std::move(acc));
    }
  return s;
}

GenericSetup build_generic(std::size_t n) {
  if (n < 3) throw UsageError("build_generic needs n >= 3");
  GenericSetup g;
  g.n = n;
  std::vector<std::string> vars = g.y_vars();
  for (const auto& e : g.eig_vars()) vars.push_back(e);
  g.ring = PolyRing::make(vars, MonomialOrder::grevlex());

  g.y = QPolyMatrix(n, g.ring);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g.y(i, j) = QMultiPoly::variable(g.ring, "y" + std::to_string(i + 1) + std::to_string(j + 1));

  g.d = QPolyMatrix(n, g.ring);
  auto lambda = QMultiPoly::variable(g.ring, "lambda");
  g.d(0, 0) = lambda;
  g.d(1, 1) = lambda;
  for (std::size_t k = 2; k < n; ++k) g.d(k, k) = QMultiPoly::variable(g.ring, "mu" + std::to_string(k - 1));

  g.x = g.y * g.d * g.y.transpose();
  g.ortes = orthogonality_equations(g.y);
  return g;
}

}  // namespace discvar
