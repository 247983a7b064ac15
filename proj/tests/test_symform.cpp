#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "discvar/groebner.hpp"
#include "discvar/poly_io.hpp"
#include "discvar/symform.hpp"

using namespace discvar;

namespace {

QMultiPoly q(std::string_view text, const RingPtr& r) { return parse_qpoly(text, r); }

QPolyMatrix constant_matrix(const std::vector<std::vector<long>>& rows, const RingPtr& r) {
  QPolyMatrix m(rows.size(), r);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = QMultiPoly::constant(r, BigRational(rows[i][j]));
  return m;
}

BigRational const_value(const QMultiPoly& p) { return p.is_zero() ? BigRational(0) : p.lead_coef(); }

}  // namespace

TEST_CASE("build_generic n = 3") {
  GenericSetup g = build_generic(3);
  CHECK(g.ring->size() == 11);
  CHECK(g.y_vars().size() == 9);
  CHECK(g.eig_vars() == std::vector<std::string>{"lambda", "mu1"});
  CHECK(g.ortes.gens.size() == 6);
  CHECK(g.x.is_symmetric());

  QSystem gb = buchberger(g.ortes);
  QMultiPoly trace_target = q("2*lambda+mu1", g.ring);
  QMultiPoly det_target = q("lambda^2*mu1", g.ring);
  CHECK(reduce(g.x.trace() - trace_target, gb).is_zero());
  CHECK(reduce(determinant(g.x) - det_target, gb).is_zero());
  CHECK_FALSE(reduce(g.x.trace(), gb).is_zero());
}

TEST_CASE("build_generic rejects n < 3") {
  CHECK_THROWS_AS(build_generic(2), UsageError);
  CHECK_THROWS_AS(build_generic(0), UsageError);
}

TEST_CASE("char_poly") {
  auto r = PolyRing::make({"a", "b", "c"});
  auto cp = char_poly(constant_matrix({{1, 0}, {0, 2}}, r));
  REQUIRE(cp.degree() == 2);
  CHECK(const_value(cp.coeff(2)) == 1);
  CHECK(const_value(cp.coeff(1)) == -3);
  CHECK(const_value(cp.coeff(0)) == 2);

  QPolyMatrix m(2, r);
  m(0, 0) = q("a", r);
  m(0, 1) = m(1, 0) = q("b", r);
  m(1, 1) = q("c", r);
  auto g = char_poly(m);
  CHECK(g.coeff(2) == QMultiPoly::constant(r, BigRational(1)));
  CHECK(g.coeff(1) == q("-a-c", r));
  CHECK(g.coeff(0) == q("a*c-b^2", r));

  // (t-1)^2 (t+2) = t^3 - 3t + 2.
  auto h = char_poly(constant_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -2}}, r));
  CHECK(const_value(h.coeff(3)) == 1);
  CHECK(const_value(h.coeff(2)) == 0);
  CHECK(const_value(h.coeff(1)) == -3);
  CHECK(const_value(h.coeff(0)) == 2);
  const BigRational roots_product = BigRational(1) * 1 * -2;
  CHECK(-const_value(h.coeff(0)) == roots_product);
}

TEST_CASE("sylvester_resultant") {
  auto r = PolyRing::make({"a", "b", "c"});
  using U = UniPoly<QMultiPoly>;
  QMultiPoly one = QMultiPoly::constant(r, BigRational(1));
  U p({-q("a", r), one}), s({-q("b", r), one});
  CHECK(sylvester_resultant(p, s) == q("a-b", r));

  U quad({q("c", r), q("b", r), one});
  U lin({q("b", r), QMultiPoly::constant(r, BigRational(2))});
  QMultiPoly res = sylvester_resultant(quad, lin);
  // Res(t^2+bt+c, 2t+b) = 4c - b^2 with this row layout.
  CHECK(res == q("4*c-b^2", r));
  CHECK(monic_discriminant(quad) == q("b^2-4*c", r));

  CHECK_THROWS_AS(sylvester_resultant(U(), lin), UsageError);
}

TEST_CASE("discriminant values") {
  QMultiPoly d = discriminant(3);
  // Variables x11 x12 x13 x22 x23 x33.
  CHECK(evaluate_numeric(d, std::vector<double>{1, 0, 0, 1, 0, -2}) == 0.0);
  CHECK(evaluate_numeric(d, std::vector<double>{1, 0, 0, 2, 0, 3}) == doctest::Approx(4.0));
  CHECK(d.is_homogeneous());
  CHECK(d.total_degree() == 6);
  CHECK(discriminant(2).total_degree() == 2);
}

TEST_CASE("discriminant equals the eigenvalue product formula on random matrices") {
  QMultiPoly d = discriminant(3);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = u(rng);
    Eigen::Vector3d e = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues();
    double prod = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) prod *= (e(i) - e(j)) * (e(i) - e(j));
    std::vector<double> pt{m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)};
    CHECK(evaluate_numeric(d, pt) == doctest::Approx(prod).epsilon(1e-8).scale(1.0));
    CHECK(evaluate_numeric(d, pt) >= -1e-12);
  }
}

TEST_CASE("determinant agrees with Eigen") {
  auto r = PolyRing::make({"a"});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> u(-5, 5);
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::vector<long>> rows(n, std::vector<long>(n));
    Eigen::MatrixXd e(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) e(i, j) = static_cast<double>(rows[i][j] = u(rng));
    CHECK(const_value(determinant(constant_matrix(rows, r))).get_d() == doctest::Approx(e.determinant()));
  }
}

TEST_CASE("orthogonality equations") {
  auto r = PolyRing::make({"y11", "y12", "y21", "y22"});
  QPolyMatrix y(2, r);
  y(0, 0) = q("y11", r);
  y(0, 1) = q("y12", r);
  y(1, 0) = q("y21", r);
  y(1, 1) = q("y22", r);
  QSystem o = orthogonality_equations(y);
  CHECK(o.gens.size() == 3);
  for (const auto& g : o.gens) CHECK(g.total_degree() == 2);
}
