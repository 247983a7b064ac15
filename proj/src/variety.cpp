#include "discvar/variety.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "discvar/cache.hpp"

namespace discvar {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string xname(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return "x" + std::to_string(i + 1) + std::to_string(j + 1);
}

template <class F>
std::vector<MultiPoly<F>> orthonormal_rows(const PolyMatrix<F>& y) {
  std::vector<MultiPoly<F>> out;
  for (std::size_t i = 0; i < y.n; ++i)
    for (std::size_t j = i; j < y.n; ++j) {
      MultiPoly<F> acc(y.ring);
      for (std::size_t k = 0; k < y.n; ++k) acc += y(i, k) * y(j, k);
      if (i == j) acc -= MultiPoly<F>::constant(y.ring, F(1));
      out.push_back(std::move(acc));
    }
  return out;
}

// Shared implicitization: ring Y, params, x; generators x_ij - (Y D Y^T)_ij,
// the orthonormality equations of Y and any extra ones; eliminate Y and params.
template <class F>
PolySystem<F> eliminate_conjugation(
    std::size_t n, const std::vector<std::string>& params,
    const std::function<MultiPoly<F>(const RingPtr&, std::size_t)>& diag,
    const std::function<void(const RingPtr&, const PolyMatrix<F>&, std::vector<MultiPoly<F>>&)>& extra,
    const DeriveOptions& opts) {
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) vars.push_back("y" + std::to_string(i) + std::to_string(j));
  std::vector<std::string> drop = vars;
  for (const auto& p : params) {
    vars.push_back(p);
    drop.push_back(p);
  }
  const std::vector<std::string> xs = layout_vars(n, opts.layout);
  vars.insert(vars.end(), xs.begin(), xs.end());
  RingPtr ring = PolyRing::make(vars, MonomialOrder::grevlex());

  PolyMatrix<F> y(n, ring);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y(i, j) = MultiPoly<F>::variable(ring, i * n + j);
  PolyMatrix<F> d(n, ring);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = diag(ring, i);
  PolyMatrix<F> x = y * d * y.transpose();

  PolySystem<F> sys{ring, orthonormal_rows(y), false};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) sys.gens.push_back(MultiPoly<F>::variable(ring, xname(i, j)) - x(i, j));
  if (extra) extra(ring, y, sys.gens);
  return eliminate(sys, drop, opts.groebner, layout_order(opts.layout), xs);
}

template <class F>
bool same_generator_sets(const PolySystem<F>& a, const PolySystem<F>& b) {
  if (a.gens.size() != b.gens.size()) return false;
  std::vector<MultiPoly<F>> rest;
  for (const auto& g : b.gens) rest.push_back(normalize_generator(g.in_ring(a.ring)));
  for (const auto& g : a.gens) {
    MultiPoly<F> ng = normalize_generator(g);
    auto it = std::find(rest.begin(), rest.end(), ng);
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return true;
}

std::string join_degrees(const QSystem& s) {
  std::string out;
  for (const auto& g : s.gens) out += (out.empty() ? "" : ",") + std::to_string(g.total_degree());
  return out;
}

}  // namespace

std::string to_string(VarLayout l) { return l == VarLayout::Graded ? "graded" : "listing"; }

VarLayout parse_layout(const std::string& s) {
  if (s == "graded") return VarLayout::Graded;
  if (s == "listing") return VarLayout::Listing;
  throw UsageError("unknown layout '" + s + "' (expected graded or listing)");
}

std::vector<std::string> layout_vars(std::size_t n, VarLayout l) {
  if (l == VarLayout::Graded) return matrix_var_names(n);
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) v.push_back(xname(i, j));
  for (std::size_t i = 0; i < n; ++i) v.push_back(xname(i, i));
  return v;
}

MonomialOrder layout_order(VarLayout l) {
  return l == VarLayout::Graded ? MonomialOrder::grevlex() : MonomialOrder::deglex();
}

RingPtr layout_ring(std::size_t n, VarLayout l) { return PolyRing::make(layout_vars(n, l), layout_order(l)); }

QSystem relations_ideal(std::size_t n, const DeriveOptions& opts) {
  if (n < 3) throw UsageError("relations_ideal needs n >= 3");
  GenericSetup g = build_generic(n);
  const std::vector<std::string> params = g.eig_vars();
  auto diag = [&](const RingPtr& ring, std::size_t i) {
    return QMultiPoly::variable(ring, i < 2 ? std::string("lambda") : params[i - 1]);
  };
  return eliminate_conjugation<BigRational>(n, params, diag, nullptr, opts);
}

QSystem simplify_system(const QSystem& s, const GroebnerOptions& opts, std::vector<std::string>* removed) {
  std::vector<QMultiPoly> cur;
  for (const auto& g : s.gens)
    if (!g.is_zero()) cur.push_back(normalize_primitive(g));
  const PolyRing& ring = *s.ring;
  std::stable_sort(cur.begin(), cur.end(),
                   [&](const QMultiPoly& a, const QMultiPoly& b) { return ring.compare(a.lead_mono(), b.lead_mono()) < 0; });
  // Passes from the largest leading monomial down until nothing more can go.
  std::vector<bool> alive(cur.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t idx = cur.size(); idx-- > 0;) {
      if (!alive[idx] || std::count(alive.begin(), alive.end(), true) < 2) continue;
      QSystem rest{s.ring, {}, false};
      for (std::size_t j = 0; j < cur.size(); ++j)
        if (alive[j] && j != idx) rest.gens.push_back(cur[j]);
      if (radical_member(cur[idx], rest, opts)) {
        if (removed) removed->push_back(to_text(cur[idx]));
        alive[idx] = false;
        changed = true;
      }
    }
  }
  QSystem out{s.ring, {}, false};
  for (std::size_t j = 0; j < cur.size(); ++j)
    if (alive[j]) out.gens.push_back(cur[j]);
  return out;
}

QSystem restrict_trace_zero(const QSystem& s, const GroebnerOptions& opts) {
  const PolyRing& src = *s.ring;
  src.require_index("x11");
  std::vector<std::string> rest;
  for (const auto& v : src.vars())
    if (v != "x11") rest.push_back(v);
  RingPtr target = PolyRing::make(rest, src.order().kind == MonomialOrder::Kind::Block ? MonomialOrder::grevlex()
                                                                                        : src.order());
  QMultiPoly minus_trace(target);
  for (const auto& v : rest)
    if (v.size() == 3 && v[1] == v[2]) minus_trace -= QMultiPoly::variable(target, v);
  std::map<std::string, QMultiPoly> bind{{"x11", minus_trace}};
  QSystem out{target, {}, false};
  for (const auto& g : s.gens) {
    QMultiPoly r = substitute(g, bind, target);
    if (!r.is_zero()) out.gens.push_back(std::move(r));
  }
  if (out.gens.empty()) return out;
  return buchberger(out, opts);
}

std::vector<BigRational> sorted_spectrum(std::vector<BigRational> eigs) {
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

QSystem orbit_ideal_viete(const std::vector<BigRational>& eigs, VarLayout layout) {
  const std::size_t n = eigs.size();
  if (n < 2) throw UsageError("orbit_ideal_viete needs at least two eigenvalues");
  RingPtr ring = layout_ring(n, layout);
  UniPoly<QMultiPoly> cp = char_poly(generic_symmetric(n, ring));
  // prod (t - e_i), low to high.
  std::vector<BigRational> target{BigRational(1)};
  for (const auto& e : eigs) {
    std::vector<BigRational> next(target.size() + 1, BigRational(0));
    for (std::size_t i = 0; i < target.size(); ++i) {
      next[i + 1] += target[i];
      next[i] -= e * target[i];
    }
    target = std::move(next);
  }
  QSystem s{ring, {}, false};
  s.gens.push_back(discriminant(n, ring));
  for (std::size_t i = 0; i < n; ++i) {
    s.gens.push_back(cp.coeff(static_cast<int>(i)).in_ring(ring) - QMultiPoly::constant(ring, target[i]));
  }
  return s;
}

OrbitSystem orbit_minimal_eqs(const std::vector<BigRational>& eigs, const DeriveOptions& opts) {
  std::vector<BigRational> sorted = sorted_spectrum(eigs);
  const std::size_t n = sorted.size();
  if (n < 2) throw UsageError("orbit_minimal_eqs needs at least two eigenvalues");
  std::size_t rep = n;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (sorted[i] == sorted[i + 1]) {
      rep = i;
      break;
    }
  if (rep == n) throw UsageError("orbit_minimal_eqs needs a repeated eigenvalue");
  // Repeated value first, the rest in ascending order.
  std::vector<BigRational> diag{sorted[rep], sorted[rep]};
  for (std::size_t i = 0; i < n; ++i)
    if (i != rep && i != rep + 1) diag.push_back(sorted[i]);
  auto entry = [&](const RingPtr& ring, std::size_t i) { return QMultiPoly::constant(ring, diag[i]); };
  OrbitSystem o;
  o.eigenvalues = sorted;
  o.ambient_dim = n * (n + 1) / 2;
  o.basis = eliminate_conjugation<BigRational>(n, {}, entry, nullptr, opts);
  o.equations = simplify_system(o.basis, opts.groebner);
  return o;
}

namespace {

template <class F>
PolySystem<F> one_orbit_impl(const F& k, const DeriveOptions& opts) {
  const std::vector<BigRational> diag{BigRational(1), BigRational(1), BigRational(-2)};
  auto entry = [&](const RingPtr& ring, std::size_t i) { return MultiPoly<F>::constant(ring, F(diag[i])); };
  // Y v = v for the axis v = e1 + k e2.
  auto fixed_axis = [&](const RingPtr& ring, const PolyMatrix<F>& y, std::vector<MultiPoly<F>>& gens) {
    const std::vector<F> v{F(1), k, F(0)};
    for (std::size_t i = 0; i < 3; ++i) {
      MultiPoly<F> acc(ring);
      for (std::size_t j = 0; j < 3; ++j)
        if (!RingOps<F>::is_zero(v[j])) acc += y(i, j).scaled(v[j]);
      if (!RingOps<F>::is_zero(v[i])) acc -= MultiPoly<F>::constant(ring, v[i]);
      gens.push_back(std::move(acc));
    }
  };
  return eliminate_conjugation<F>(3, {}, entry, fixed_axis, opts);
}

}  // namespace

KSystem one_orbit_eqs(const DeriveOptions& opts) { return one_orbit_impl<RatFunc>(RatFunc::param(), opts); }

QSystem one_orbit_eqs_at(const BigRational& k, const DeriveOptions& opts) { return one_orbit_impl<BigRational>(k, opts); }

QSystem specialize_k(const KSystem& s, const BigRational& k, const GroebnerOptions& opts) {
  QSystem out{s.ring, {}, false};
  for (const auto& g : s.gens) {
    QMultiPoly q = g.map_coeffs<BigRational>([&](const RatFunc& c) { return c.evaluate(k); });
    if (!q.is_zero()) out.gens.push_back(std::move(q));
  }
  if (out.gens.empty()) return out;
  return buchberger(out, opts);
}

QSystem one_orbit_limit_infinity(const KSystem& s, const GroebnerOptions& opts) {
  const RingPtr& ring = s.ring;
  ring->require_index("x13");
  ring->require_index("x23");
  KMultiPoly x13 = KMultiPoly::variable(ring, "x13");
  const RatFunc inv_k = RatFunc(1) / RatFunc::param();
  std::map<std::string, KMultiPoly> bind{{"x23", -x13.scaled(inv_k)}};
  QSystem out{ring, {QMultiPoly::variable(ring, "x23")}, false};
  for (const auto& g : s.gens) {
    KMultiPoly h = substitute(g, bind, ring);
    if (h.is_zero()) continue;
    int top = h.terms().front().coef.degree_at_infinity();
    for (const auto& t : h.terms()) top = std::max(top, t.coef.degree_at_infinity());
    std::vector<QMultiPoly::Term> lead;
    for (const auto& t : h.terms())
      if (t.coef.degree_at_infinity() == top) lead.push_back({t.mono, t.coef.leading_ratio()});
    out.gens.push_back(QMultiPoly::from_terms(ring, std::move(lead)));
  }
  return buchberger(out, opts);
}

std::optional<CircleForm> circle_form(const QMultiPoly& p) {
  if (p.is_zero() || p.total_degree() != 2) return std::nullopt;
  const RingPtr& ring = p.ring();
  std::vector<std::size_t> squares;
  BigRational a;
  for (const auto& t : p.terms()) {
    if (t.mono.degree() != 2) continue;
    std::size_t v = kMaxVars;
    for (std::size_t i = 0; i < ring->size(); ++i)
      if (t.mono[i] == 2) v = i;
    if (v == kMaxVars) return std::nullopt;  // cross term
    if (!squares.empty() && t.coef != a) return std::nullopt;
    a = t.coef;
    squares.push_back(v);
  }
  if (squares.size() != 2) return std::nullopt;
  std::sort(squares.begin(), squares.end());
  BigRational lu, lv, c;
  for (const auto& t : p.terms()) {
    if (t.mono.degree() == 0) c = t.coef / a;
    if (t.mono.degree() != 1) continue;
    if (t.mono[squares[0]] == 1) lu = t.coef / a;
    else if (t.mono[squares[1]] == 1) lv = t.coef / a;
    else return std::nullopt;
  }
  CircleForm f;
  f.u = ring->var(squares[0]);
  f.v = ring->var(squares[1]);
  f.cu = -lu / 2;
  f.cv = -lv / 2;
  f.radius_sq = f.cu * f.cu + f.cv * f.cv - c;
  return f;
}

std::string GoldenResult::verdict() const {
  if (ideal_equal && exact_match) return "exact match";
  if (ideal_equal) return "equivalent, different basis";
  return "not equivalent";
}

bool DerivationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

DerivationReport derive(std::size_t n, const DeriveOptions& opts, bool simplify, BasisCache* cache) {
  DerivationReport r;
  r.n = n;
  r.layout = opts.layout;
  r.simplified = simplify;
  const nlohmann::json params{{"n", n}, {"layout", to_string(opts.layout)}};

  auto t0 = Clock::now();
  std::optional<nlohmann::json> hit = cache ? cache->load("rels", params) : std::nullopt;
  if (hit) {
    r.rels = system_from_json<BigRational>(hit->at("system"));
    r.groebner_summary = hit->value("stats", "");
    r.from_cache = true;
  } else {
    GroebnerStats st;
    DeriveOptions o = opts;
    o.groebner.stats = &st;
    r.rels = relations_ideal(n, o);
    r.groebner_summary = st.summary();
    if (cache) cache->store("rels", params, {{"system", to_json(r.rels)}, {"stats", r.groebner_summary}});
  }
  r.timings.emplace_back(r.from_cache ? "relations ideal (cached)" : "relations ideal", seconds_since(t0));

  if (simplify) {
    t0 = Clock::now();
    std::optional<nlohmann::json> shit = cache ? cache->load("rels_s", params) : std::nullopt;
    if (shit) {
      r.rels_s = system_from_json<BigRational>(shit->at("system"));
      r.removed = shit->at("removed").get<std::vector<std::string>>();
    } else {
      r.rels_s = simplify_system(r.rels, opts.groebner, &r.removed);
      if (cache) cache->store("rels_s", params, {{"system", to_json(r.rels_s)}, {"removed", r.removed}});
    }
    r.timings.emplace_back("simplification", seconds_since(t0));
  } else {
    r.rels_s = r.rels;
  }

  t0 = Clock::now();
  r.m0eqs = restrict_trace_zero(r.rels_s, opts.groebner);
  if (simplify) r.m0eqs = simplify_system(r.m0eqs, opts.groebner);
  r.timings.emplace_back("trace-zero restriction", seconds_since(t0));
  return r;
}

void verify_derivation(DerivationReport& r, const GroebnerOptions& opts) {
  const std::size_t n = r.n;
  const RingPtr& xr = r.rels.ring;
  auto t0 = Clock::now();

  {
    QMultiPoly d = discriminant(n, xr);
    QMultiPoly rem = reduce(d, r.rels);
    r.checks.push_back({"discriminant reduces to zero modulo Rels", rem.is_zero() && r.rels.reduced,
                        rem.is_zero() ? std::string("remainder 0") : "remainder with " + std::to_string(rem.terms().size()) + " terms"});
    const int deg = d.total_degree();
    std::ostringstream os;
    os << "homogeneous of degree " << deg << "; n(n-1) = " << n * (n - 1) << ", 2n = " << 2 * n;
    r.checks.push_back({"discriminant degree", d.is_homogeneous() && deg == static_cast<int>(n * (n - 1)), os.str()});
  }

  {
    std::vector<std::string> eig{"lambda"};
    for (std::size_t k = 1; k + 2 <= n; ++k) eig.push_back("mu" + std::to_string(k));
    RingPtr er = PolyRing::make(eig);
    std::map<std::string, QMultiPoly> bind;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        bind[xname(i, j)] = i != j ? QMultiPoly(er) : QMultiPoly::variable(er, i < 2 ? std::size_t{0} : i - 1);
    std::size_t bad = 0;
    for (const QSystem* s : {&r.rels, &r.rels_s})
      for (const auto& g : s->gens)
        if (!substitute(g, bind, er).is_zero()) ++bad;
    r.checks.push_back({"diagonal substitution gives the zero polynomial", bad == 0,
                        bad == 0 ? std::string("all members vanish") : std::to_string(bad) + " members do not vanish"});
  }

  {
    GenericSetup g = build_generic(n);
    QSystem ort = buchberger(g.ortes, opts);
    QMultiPoly lambda = QMultiPoly::variable(g.ring, "lambda");
    QMultiPoly tr = lambda + lambda;
    QMultiPoly det = lambda * lambda;
    for (std::size_t k = 1; k + 2 <= n; ++k) {
      QMultiPoly mu = QMultiPoly::variable(g.ring, "mu" + std::to_string(k));
      tr += mu;
      det = det * mu;
    }
    bool tr_ok = reduce(g.x.trace() - tr, ort).is_zero();
    bool det_ok = reduce(determinant(g.x) - det, ort).is_zero();
    r.checks.push_back({"trace(X) = 2 lambda + sum mu modulo OrtEs", tr_ok, tr_ok ? "exact" : "nonzero remainder"});
    r.checks.push_back({"det(X) = lambda^2 prod mu modulo OrtEs", det_ok, det_ok ? "exact" : "nonzero remainder"});
  }

  if (r.simplified) {
    bool eq = squares_mutually_contained(r.rels, r.rels_s, opts);
    r.checks.push_back({"Rels and RelsS equivalent (mutual squared membership)", eq,
                        std::to_string(r.rels.size()) + " vs " + std::to_string(r.rels_s.size()) + " members"});
  }

  {
    int lo = 1 << 20;
    for (const auto& g : r.rels_s.gens) lo = std::min(lo, g.total_degree());
    for (const auto& g : r.rels.gens) lo = std::min(lo, g.total_degree());
    r.checks.push_back({"no member of degree below three", lo >= 3,
                        "Rels degrees " + join_degrees(r.rels) + "; RelsS degrees " + join_degrees(r.rels_s)});
  }
  r.timings.emplace_back("verification", seconds_since(t0));
}

namespace golden {

const std::vector<std::string>& rels_s() {
  static const std::vector<std::string> v{
      "x12^2*x23 -x12*x13*x22 +x12*x13*x33 -x13^2*x23",
      "x12*x23*x11 -x12*x23*x22 -x13^3 +x13*x23^2 -x13*x11*x22 +x13*x11*x33 +x13*x22^2 -x13*x22*x33",
      "x12*x13*x11 -x12*x13*x22 -x13^2*x23 +x23^3 -x23*x11^2 +x23*x11*x22 +x23*x11*x33 -x23*x22*x33",
      "x12^2*x11 -x12^2*x22 -x13^2*x11 +x13^2*x33 +x23^2*x22 -x23^2*x33 -x11^2*x22 +x11^2*x33 +x11*x22^2 "
      "-x11*x33^2 -x22^2*x33 +x22*x33^2",
      "x12^3 -x12*x23^2 -x12*x11*x22 +x12*x11*x33 +x12*x22*x33 -x12*x33^2 -x13*x23*x11 +x13*x23*x33",
  };
  return v;
}

const std::vector<std::string>& m0eqs() {
  static const std::vector<std::string> v{
      "x12*x23*x22 +(1/2)*x12*x23*x33 +(1/2)*x13^3 -(1/2)*x13*x23^2 -x13*x22^2 +(1/2)*x13*x22*x33 "
      "+(1/2)*x13*x33^2",
      "x12^2*x22 +(1/2)*x12^2*x33 -(1/2)*x13^2*x22 -x13^2*x33 -(1/2)*x23^2*x22 +(1/2)*x23^2*x33 +x22^3 "
      "+(3/2)*x22^2*x33 -(3/2)*x22*x33^2 -x33^3",
      "x12^2*x23 +(3/2)*x12*x13*x33 -(1/2)*x13^2*x23 -(1/2)*x23^3 +x23*x22^2 +(5/2)*x23*x22*x33 +x23*x33^2",
      "x12^3 -x12*x23^2 +x12*x22^2 +x12*x22*x33 -2*x12*x33^2 +x13*x23*x22 +2*x13*x23*x33",
  };
  return v;
}

const std::vector<std::string>& orbit_eqs() {
  static const std::vector<std::string> v{
      "x11 + x22 + x33",
      "x23^2 - x22*x33 + x22 + x33 - 1",
      "x13^2 + x22*x33 + x33^2 - x22 - 1",
      "x12*x33 - x13*x23 - x12",
      "x12^2 + x22^2 + x22*x33 - x33 - 1",
  };
  return v;
}

const std::vector<std::string>& one_orbit_eqs() {
  static const std::vector<std::string> v{
      "x11 + x33*k^2/(k^2+1) + (k^2-1)/(k^2+1)",
      "x22 + x33/(k^2+1) + (-k^2+1)/(k^2+1)",
      "x13 + k*x23",
      "x12 - x33*k/(k^2+1) - 2*k/(k^2+1)",
      "x23^2 + x33^2/(k^2+1) + x33/(k^2+1) - 2/(k^2+1)",
  };
  return v;
}

}  // namespace golden

namespace {

template <class F>
GoldenResult compare_with(const std::string& name, const PolySystem<F>& computed,
                          const std::vector<std::string>& printed, const GroebnerOptions& opts) {
  GoldenResult g;
  g.name = name;
  PolySystem<F> fixture = parse_system<F>(printed, computed.ring);
  g.computed = computed.size();
  g.printed = fixture.size();
  g.ideal_equal = squares_mutually_contained(computed, fixture, opts);
  g.exact_match = same_generator_sets(computed, fixture);
  return g;
}

}  // namespace

std::vector<GoldenResult> compare_golden(const DerivationReport& r, const GroebnerOptions& opts) {
  if (r.n != 3) return {};
  std::vector<GoldenResult> out;
  out.push_back(compare_with("RelsS", r.rels_s, golden::rels_s(), opts));
  out.push_back(compare_with("M0eqs", r.m0eqs, golden::m0eqs(), opts));
  return out;
}

GoldenResult compare_orbit_golden(const OrbitSystem& orbit, const GroebnerOptions& opts) {
  return compare_with("orbitEqs", orbit.equations, golden::orbit_eqs(), opts);
}

GoldenResult compare_one_orbit_golden(const KSystem& s) {
  GoldenResult g;
  g.name = "1-orbitEqs";
  KSystem fixture = parse_system<RatFunc>(golden::one_orbit_eqs(), s.ring);
  g.computed = s.size();
  g.printed = fixture.size();
  g.ideal_equal = ideals_equal(s, fixture);
  g.exact_match = same_generator_sets(s, fixture);
  return g;
}

std::vector<DivisibilityProbe> discriminant_divisibility_probe(const DerivationReport& r) {
  QMultiPoly d = discriminant(r.n, r.rels.ring);
  QSystem principal{r.rels.ring, {d}, true};
  std::vector<DivisibilityProbe> out;
  for (const auto& g : r.rels.gens) {
    QMultiPoly sq = g * g;
    DivisibilityProbe p;
    p.member = to_text(g);
    p.divides_square = reduce(sq, principal).is_zero();
    p.divides_fourth = p.divides_square || reduce(sq * sq, principal).is_zero();
    out.push_back(std::move(p));
  }
  return out;
}

nlohmann::json to_json(const DerivationReport& r, bool with_timings) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "derivation";
  j["n"] = r.n;
  j["layout"] = to_string(r.layout);
  j["simplified"] = r.simplified;
  j["rels"] = to_json(r.rels);
  j["rels_s"] = to_json(r.rels_s);
  j["m0eqs"] = to_json(r.m0eqs);
  j["removed"] = r.removed;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  j["passed"] = r.passed();
  if (with_timings) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [k, v] : r.timings) t[k] = v;
    j["timings"] = t;
    j["groebner"] = r.groebner_summary;
  }
  return j;
}

std::string to_text(const DerivationReport& r) {
  std::ostringstream os;
  os << "n = " << r.n << ", layout " << to_string(r.layout) << " (" << r.rels.ring->order().name() << " on";
  for (const auto& v : r.rels.ring->vars()) os << ' ' << v;
  os << ")\n\n";
  os << "Rels: " << r.rels.size() << " members, degrees " << join_degrees(r.rels) << "\n";
  os << listing("Rels", r.rels) << "\n";
  if (r.simplified) {
    os << "RelsS: " << r.rels_s.size() << " members after removing " << r.removed.size() << "\n";
    os << listing("RelsS", r.rels_s) << "\n";
  }
  os << listing("M0eqs", r.m0eqs) << "\n";
  if (!r.checks.empty()) {
    os << "checks:\n";
    for (const auto& c : r.checks) os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  }
  if (!r.timings.empty()) {
    os << "timings:\n";
    for (const auto& [k, v] : r.timings) os << "  " << k << ": " << v << " s\n";
  }
  if (!r.groebner_summary.empty()) os << "groebner: " << r.groebner_summary << "\n";
  return os.str();
}

}  // namespace discvar
