#include <doctest.h>

#include <random>

#include "discvar/groebner.hpp"
#include "discvar/poly_io.hpp"
#include "discvar/symform.hpp"
#include "discvar/variety.hpp"

using namespace discvar;

namespace {

QSystem sys(const std::vector<std::string>& texts, const RingPtr& r) { return parse_system<BigRational>(texts, r); }
QMultiPoly q(std::string_view text, const RingPtr& r) { return parse_qpoly(text, r); }

bool is_reduced(const QSystem& g) {
  for (std::size_t i = 0; i < g.gens.size(); ++i) {
    if (g.gens[i].lead_coef() <= 0) return false;
    for (std::size_t j = 0; j < g.gens.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : g.gens[i].terms())
        if (g.gens[j].lead_mono().divides(t.mono)) return false;
    }
  }
  return true;
}

QSystem random_system(std::mt19937_64& rng, const RingPtr& r) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2), nterms(2, 4), ngens(2, 3);
  QSystem s{r, {}, false};
  int count = ngens(rng);
  for (int g = 0; g < count; ++g) {
    QMultiPoly p(r);
    for (int t = nterms(rng); t > 0; --t) {
      Monomial m;
      for (std::size_t i = 0; i < r->size(); ++i)
        for (int k = ex(rng); k > 0; --k) m = m * Monomial::variable(i);
      int c = coef(rng);
      if (c != 0) p += QMultiPoly::term(r, m, BigRational(c));
    }
    if (!p.is_zero()) s.gens.push_back(p);
  }
  return s;
}

}  // namespace

TEST_CASE("reduce") {
  auto r = PolyRing::make({"x", "y"});
  CHECK(reduce(q("x^2", r), sys({"x"}, r)).is_zero());
  CHECK(reduce(q("x^2+y", r), sys({"x"}, r)) == q("y", r));
}

TEST_CASE("buchberger small cases") {
  auto r = PolyRing::make({"x", "y"}, MonomialOrder::lex());
  QSystem g = buchberger(sys({"x"}, r));
  REQUIRE(g.gens.size() == 1);
  CHECK(g.gens[0] == q("x", r));

  QSystem h = buchberger(sys({"x-y^2", "y-x^2"}, r));
  bool found = false;
  for (const auto& p : h.gens) found = found || p == q("y^4-y", r);
  CHECK(found);
  CHECK(ideal_member(q("x-y^2", r), h));
  CHECK(satisfies_buchberger_criterion(h));

  CHECK(buchberger(sys({"x*y-1", "x"}, r)).is_unit());
}

TEST_CASE("orthonormality equations for n = 2") {
  auto r = PolyRing::make({"y11", "y12", "y21", "y22"});
  QSystem ortes = sys({"y11^2+y12^2-1", "y11*y21+y12*y22", "y21^2+y22^2-1"}, r);
  QSystem g = buchberger(ortes);
  CHECK(satisfies_buchberger_criterion(g));
  CHECK(reduce(q("y11^2+y12^2-1", r), g).is_zero());
  // det(Y)^2 = 1 on orthogonal matrices.
  CHECK(reduce(q("(y11*y22-y12*y21)^2-1", r), g).is_zero());
}

TEST_CASE("ideal and radical membership") {
  auto r = PolyRing::make({"x", "y"});
  CHECK_FALSE(ideal_member(q("x", r), sys({"x^2"}, r)));
  CHECK(ideal_member(q("x^2", r), sys({"x"}, r)));
  CHECK(radical_member(q("x", r), sys({"x^2"}, r)));
  CHECK_FALSE(radical_member(q("x", r), sys({"y"}, r)));
  CHECK(radical_member(q("x+y", r), sys({"x^3", "y^2"}, r)));
  CHECK(radical_member(q("x*y", r), sys({"x^2*y", "x*y^2"}, r)));
}

TEST_CASE("elimination") {
  auto r = PolyRing::make({"t", "x", "y"});
  QSystem parabola = eliminate(sys({"x-t", "y-t^2"}, r), {"t"});
  REQUIRE(parabola.gens.size() == 1);
  CHECK(parabola.gens[0] == normalize_primitive(q("y-x^2", parabola.ring)));

  QSystem cusp = eliminate(sys({"x-t^2", "y-t^3"}, r), {"t"});
  REQUIRE(cusp.gens.size() == 1);
  const QMultiPoly& c = cusp.gens[0];
  CHECK(c == normalize_primitive(q("x^3-y^2", cusp.ring)));
  CHECK(evaluate_numeric(c, std::vector<double>{1, 1}) == 0.0);
  CHECK(evaluate_numeric(c, std::vector<double>{4, 8}) == 0.0);
  auto pr = PolyRing::make({"t"});
  QMultiPoly t = QMultiPoly::variable(pr, "t");
  CHECK(substitute(c, {{"x", t * t}, {"y", t * t * t}}, pr).is_zero());

  CHECK_THROWS_AS(eliminate(sys({"x-t"}, r), {"s"}), UsageError);
}

TEST_CASE("random systems: reduced bases satisfying the Buchberger criterion") {
  std::mt19937_64 rng(2024);
  auto r = PolyRing::make({"x", "y", "z"});
  for (int trial = 0; trial < 40; ++trial) {
    QSystem s = random_system(rng, r);
    if (s.gens.empty()) continue;
    QSystem g = buchberger(s);
    CHECK(satisfies_buchberger_criterion(g));
    CHECK(is_reduced(g));
    for (const auto& p : s.gens) CHECK(reduce(p, g).is_zero());
    // Re-running on the basis is a fixed point; the output does not depend on generator order.
    QSystem again = buchberger(g);
    CHECK(to_json(again) == to_json(g));
    QSystem rev{r, std::vector<QMultiPoly>(s.gens.rbegin(), s.gens.rend()), false};
    CHECK(to_json(buchberger(rev)) == to_json(g));
  }
}

TEST_CASE("ideals_equal and squared containment") {
  auto r = PolyRing::make({"x", "y"});
  CHECK(ideals_equal(sys({"x", "y"}, r), sys({"x+y", "x-y"}, r)));
  CHECK_FALSE(ideals_equal(sys({"x"}, r), sys({"x^2"}, r)));
  CHECK(squares_mutually_contained(sys({"x"}, r), sys({"x^2"}, r)));
  CHECK_FALSE(squares_mutually_contained(sys({"x"}, r), sys({"x^3"}, r)));
}

TEST_CASE("discriminant reduces to zero by the simplified relation basis") {
  auto r = layout_ring(3, VarLayout::Listing);
  QSystem g = buchberger(sys(golden::rels_s(), r));
  CHECK(reduce(discriminant(3, r), g).is_zero());
}

TEST_CASE("resource limits abort with progress") {
  DeriveOptions o;
  o.groebner.limits.max_pairs = 20;
  try {
    relations_ideal(3, o);
    FAIL("expected ResourceLimitExceeded");
  } catch (const ResourceLimitExceeded& e) {
    CHECK(std::string(e.what()).find("pair") != std::string::npos);
    CHECK(e.progress().find("pairs reduced") != std::string::npos);
  }
  o.groebner.limits = {};
  o.groebner.limits.max_basis = 5;
  CHECK_THROWS_AS(relations_ideal(3, o), ResourceLimitExceeded);
}

TEST_CASE("json round trip of a system") {
  auto r = PolyRing::make({"x", "y"});
  QSystem g = buchberger(sys({"x^2-y", "x*y-1"}, r));
  QSystem back = system_from_json<BigRational>(to_json(g));
  CHECK(*back.ring == *g.ring);
  CHECK(back.gens == g.gens);
}
