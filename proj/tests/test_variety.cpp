#include <doctest.h>

#include <filesystem>

#include "discvar/cache.hpp"
#include "discvar/groebner.hpp"
#include "discvar/numgeo.hpp"
#include "discvar/poly_io.hpp"
#include "discvar/symform.hpp"
#include "discvar/variety.hpp"

using namespace discvar;

namespace {

QMultiPoly q(std::string_view text, const RingPtr& r) { return parse_qpoly(text, r); }

std::vector<BigRational> rats(std::initializer_list<long> v) {
  std::vector<BigRational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

DeriveOptions listing() {
  DeriveOptions o;
  o.layout = VarLayout::Listing;
  return o;
}

bool contains_up_to_scale(const QSystem& s, const QMultiPoly& p) {
  for (const auto& g : s.gens)
    if (normalize_primitive(g) == normalize_primitive(p.in_ring(s.ring))) return true;
  return false;
}

std::vector<int> degrees(const QSystem& s) {
  std::vector<int> d;
  for (const auto& g : s.gens) d.push_back(g.total_degree());
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("relation ideal n = 3 in the listing layout: seven cubics and a quartic") {
  QSystem rels = relations_ideal(3, listing());
  CHECK(degrees(rels) == std::vector<int>{3, 3, 3, 3, 3, 3, 3, 4});
  for (const auto& g : rels.gens) CHECK(g.is_homogeneous());
  CHECK(reduce(discriminant(3, rels.ring), rels).is_zero());

  QSystem s = simplify_system(rels, {});
  QMultiPoly first = q("x12^2*x23 - x12*x13*x22 + x12*x13*x33 - x13^2*x23", s.ring);
  CHECK(contains_up_to_scale(s, first));
}

TEST_CASE("relation ideal n = 3 in the graded layout") {
  QSystem rels = relations_ideal(3);
  CHECK(degrees(rels) == std::vector<int>{3, 3, 3, 3, 3, 3, 3});
  QSystem golden = parse_system<BigRational>(golden::rels_s(), rels.ring);
  CHECK(squares_mutually_contained(rels, golden));
}

TEST_CASE("relations_ideal rejects n < 3") { CHECK_THROWS_AS(relations_ideal(2), UsageError); }

TEST_CASE("simplify_system") {
  auto r = PolyRing::make({"x", "y"});
  QSystem s = parse_system<BigRational>({"x", "x^2"}, r);
  std::vector<std::string> removed;
  QSystem out = simplify_system(s, {}, &removed);
  REQUIRE(out.gens.size() == 1);
  CHECK(out.gens[0] == q("x", r));
  REQUIRE(removed.size() == 1);
  CHECK(radical_member(q(removed[0], r), out));

  QSystem rels = relations_ideal(3);
  std::vector<std::string> gone;
  QSystem rs = simplify_system(rels, {}, &gone);
  CHECK(rs.gens.size() + gone.size() == rels.gens.size());
  for (const auto& g : gone) CHECK(radical_member(q(g, rels.ring), rs));
  QSystem again = simplify_system(rs, {});
  CHECK(again.gens == rs.gens);
}

TEST_CASE("trace-zero restriction") {
  auto r = matrix_ring(3);
  QSystem trace{r, {q("x11+x22+x33", r)}, false};
  QSystem t = restrict_trace_zero(trace, {});
  CHECK(t.gens.empty());

  DerivationReport rep = derive(3, listing(), true, nullptr);
  QSystem golden = parse_system<BigRational>(golden::m0eqs(), rep.m0eqs.ring);
  CHECK(ideals_equal(rep.m0eqs, golden));
  for (const auto& g : rep.m0eqs.gens) CHECK_FALSE(rep.m0eqs.ring->index_of("x11").has_value());
}

TEST_CASE("M0eqs vanish on the orbit of diag(1,1,-2)") {
  DerivationReport rep = derive(3, {}, true, nullptr);
  for (const auto& x : sample_orbit({1, 1, -2}, 200, 5)) CHECK(max_relative_residual(rep.m0eqs, x) < 1e-9);
}

TEST_CASE("derive and verify n = 3") {
  for (VarLayout l : {VarLayout::Graded, VarLayout::Listing}) {
    DeriveOptions o;
    o.layout = l;
    DerivationReport rep = derive(3, o, true, nullptr);
    verify_derivation(rep, o.groebner);
    CHECK(rep.passed());
    CHECK(rep.checks.size() >= 7);
    for (const auto& g : compare_golden(rep, o.groebner)) {
      CHECK_MESSAGE(g.ideal_equal, g.name);
      // In the listing layout the computed systems are the listings themselves.
      if (l == VarLayout::Listing) CHECK_MESSAGE(g.exact_match, g.name);
    }
  }
}

TEST_CASE("verify_derivation flags a corrupted basis") {
  DerivationReport rep = derive(3, {}, true, nullptr);
  rep.rels.gens.resize(1);
  rep.rels.reduced = false;
  verify_derivation(rep, {});
  CHECK_FALSE(rep.passed());
  bool discr_failed = false;
  for (const auto& c : rep.checks)
    if (c.name.find("discriminant reduces") != std::string::npos) discr_failed = !c.pass;
  CHECK(discr_failed);
}

TEST_CASE("derive without simplification keeps all members") {
  DerivationReport rep = derive(3, {}, false, nullptr);
  CHECK(rep.rels_s.gens.size() == rep.rels.gens.size());
}

TEST_CASE("Viete orbit system") {
  QSystem v = orbit_ideal_viete(rats({1, 1, -2}));
  CHECK(v.gens.size() == 4);
  for (const auto& x : sample_orbit({1, 1, -2}, 100, 9)) CHECK(max_relative_residual(v, x) < 1e-9);
  QSystem v4 = orbit_ideal_viete(rats({3, 3, -1, 2}));
  CHECK(v4.gens.size() == 5);
  for (const auto& x : sample_orbit({3, 3, -1, 2}, 50, 10)) CHECK(max_relative_residual(v4, x) < 1e-9);
}

TEST_CASE("orbit minimal equations") {
  DeriveOptions o = listing();
  OrbitSystem orbit = orbit_minimal_eqs(rats({1, -2, 1}), o);
  CHECK(orbit.eigenvalues == rats({-2, 1, 1}));
  GoldenResult g = compare_orbit_golden(orbit, o.groebner);
  CHECK(g.ideal_equal);
  CHECK(g.exact_match);
  CHECK(orbit.equations.gens.size() == 5);
  int linear = 0, quadratic = 0;
  for (const auto& e : orbit.equations.gens) (e.total_degree() == 1 ? linear : quadratic)++;
  CHECK(linear == 1);
  CHECK(quadratic == 4);

  OrbitSystem zero = orbit_minimal_eqs(rats({0, 0, 0}));
  CHECK(zero.basis.gens.size() == 6);
  for (const auto& e : zero.basis.gens) CHECK(e.total_degree() == 1);

  CHECK_THROWS_AS(orbit_minimal_eqs(rats({1, 2, 3})), UsageError);
}

TEST_CASE("1-orbit over Q(k)") {
  DeriveOptions o = listing();
  KSystem sym = one_orbit_eqs(o);
  GoldenResult g = compare_one_orbit_golden(sym);
  CHECK(g.ideal_equal);
  CHECK(g.exact_match);

  QSystem k0 = one_orbit_eqs_at(BigRational(0), o);
  CHECK(ideals_equal(k0, specialize_k(sym, BigRational(0))));
  QSystem e1 = parse_system<BigRational>({"x11-1", "x12", "x13", "x22+x33+1", "x23^2+(x33+1/2)^2-9/4"}, k0.ring);
  CHECK(ideals_equal(k0, e1));
  QMultiPoly det = determinant(generic_symmetric(3, k0.ring));
  CHECK(reduce(det + QMultiPoly::constant(k0.ring, BigRational(2)), k0).is_zero());

  for (long k : {1L, -3L, 2L}) {
    QSystem direct = one_orbit_eqs_at(BigRational(k), o);
    CHECK(ideals_equal(direct, specialize_k(sym, BigRational(k))));
  }

  QSystem inf = one_orbit_limit_infinity(sym);
  QSystem e2 = parse_system<BigRational>({"x22-1", "x12", "x23", "x11+x33+1", "x13^2+(x33+1/2)^2-9/4"}, inf.ring);
  CHECK(ideals_equal(inf, e2));

  std::optional<CircleForm> circle;
  for (const auto& p : inf.gens)
    if (p.total_degree() == 2) circle = circle_form(p);
  REQUIRE(circle);
  CHECK(circle->u == "x13");
  CHECK(circle->v == "x33");
  CHECK(circle->cv == BigRational(-1, 2));
  CHECK(circle->radius_sq == BigRational(9, 4));
}

TEST_CASE("derivation JSON is deterministic and the cache reproduces it") {
  auto dir = std::filesystem::temp_directory_path() / "discvar-test-variety-cache";
  std::filesystem::remove_all(dir);
  BasisCache cache(dir);
  DerivationReport cold = derive(3, {}, true, &cache);
  CHECK_FALSE(cold.from_cache);
  DerivationReport warm = derive(3, {}, true, &cache);
  CHECK(warm.from_cache);
  DerivationReport fresh = derive(3, {}, true, nullptr);
  verify_derivation(cold, {});
  verify_derivation(warm, {});
  verify_derivation(fresh, {});
  CHECK(to_json(cold).dump() == to_json(warm).dump());
  CHECK(to_json(cold).dump() == to_json(fresh).dump());
  CHECK(to_json(cold)["schema"] == 1);

  BasisCache other(dir, "another-version");
  CHECK_FALSE(other.load("rels", {{"n", 3}, {"layout", "graded"}}).has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("discriminant divisibility probe runs") {
  DerivationReport rep = derive(3, {}, true, nullptr);
  auto probe = discriminant_divisibility_probe(rep);
  CHECK(probe.size() == rep.rels.gens.size());
}
