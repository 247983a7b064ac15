#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "discvar/error.hpp"
#include "discvar/multipoly.hpp"
#include "discvar/poly_io.hpp"

namespace discvar {

/// Ordered list of generators over a common ring. When `reduced` is set the
/// list is a reduced Groebner basis in normalized form (primitive integer
/// over Q, monic over Q(k)) sorted by ascending leading monomial.
template <class F>
struct PolySystem {
  RingPtr ring;
  std::vector<MultiPoly<F>> gens;
  bool reduced = false;

  std::size_t size() const { return gens.size(); }
  bool is_unit() const { return gens.size() == 1 && gens[0].is_constant() && !gens[0].is_zero(); }
};

using QSystem = PolySystem<BigRational>;
using KSystem = PolySystem<RatFunc>;

/// Zero means unlimited.
struct GroebnerLimits {
  std::size_t max_pairs = 0;
  std::size_t max_coeff_bits = 0;
  std::size_t max_basis = 0;
  double max_seconds = 0.0;
};

struct GroebnerStats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t pairs_pruned = 0;
  std::size_t basis_peak = 0;
  std::size_t coeff_bits_peak = 0;
  int degree_peak = 0;
  double seconds = 0.0;

  std::string summary() const {
    std::ostringstream os;
    os << "pairs reduced " << pairs_reduced << ", zero reductions " << zero_reductions << ", pruned "
       << pairs_pruned << ", basis peak " << basis_peak << ", degree peak " << degree_peak
       << ", coefficient bits peak " << coeff_bits_peak << ", " << seconds << " s";
    return os.str();
  }
};

enum class PairStrategy { Normal, Sugar };

struct GroebnerOptions {
  GroebnerLimits limits;
  PairStrategy strategy = PairStrategy::Normal;
  /// Return {1} as soon as a nonzero constant appears.
  bool stop_on_unit = false;
  GroebnerStats* stats = nullptr;
};

namespace detail {

inline std::size_t coeff_bits(const BigRational& c) { return bit_size(c); }
inline std::size_t coeff_bits(const RatFunc& c) { return c.bit_size(); }

template <class F>
std::size_t max_coeff_bits(const MultiPoly<F>& p) {
  std::size_t b = 0;
  for (const auto& t : p.terms()) b = std::max(b, coeff_bits(t.coef));
  return b;
}

/// Index of the first generator whose leading monomial divides m, or npos.
template <class F>
std::size_t find_divisor(const std::vector<const MultiPoly<F>*>& g, const Monomial& m) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i]->lead_mono().divides(m)) return i;
  return static_cast<std::size_t>(-1);
}

/// Full normal form of f against the given reducers, none of which is zero.
template <class F>
MultiPoly<F> normal_form(MultiPoly<F> h, const std::vector<const MultiPoly<F>*>& g) {
  if (g.empty() || h.is_zero()) return h;
  // Terms before `done` are irreducible and final; subtracting c*m*g for the
  // term at `done` only changes terms at or after it.
  std::size_t done = 0;
  while (done < h.size()) {
    const auto& t = h.terms()[done];
    std::size_t k = find_divisor(g, t.mono);
    if (k == static_cast<std::size_t>(-1)) {
      ++done;
      continue;
    }
    const MultiPoly<F>& d = *g[k];
    F c = t.coef / d.lead_coef();
    Monomial m = t.mono / d.lead_mono();
    h.sub_mul_term_from(done, c, m, d);
  }
  return h;
}

template <class F>
MultiPoly<F> s_polynomial(const MultiPoly<F>& a, const MultiPoly<F>& b) {
  Monomial l = lcm(a.lead_mono(), b.lead_mono());
  MultiPoly<F> s = a.mul_term(l / a.lead_mono(), b.lead_coef());
  s.sub_mul_term(a.lead_coef(), l / b.lead_mono(), b);
  return s;
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  int sugar;
};

}  // namespace detail

/// Remainder of f on division by G: no remaining term is divisible by a
/// leading monomial of G, and f - remainder lies in ideal(G).
template <class F>
MultiPoly<F> reduce(const MultiPoly<F>& f, const PolySystem<F>& g) {
  std::vector<const MultiPoly<F>*> refs;
  for (const auto& p : g.gens)
    if (!p.is_zero()) refs.push_back(&p);
  MultiPoly<F> h = f.in_ring(g.ring);
  return detail::normal_form(std::move(h), refs);
}

/// Reduced Groebner basis. Pairs are processed in a fixed order (lowest lcm
/// total degree first, ties by the younger generator index, then the older)
/// so the output is reproducible bit for bit.
template <class F>
PolySystem<F> buchberger(const PolySystem<F>& input, const GroebnerOptions& opts = {}) {
  using Poly = MultiPoly<F>;
  const auto start = std::chrono::steady_clock::now();
  GroebnerStats local;
  GroebnerStats& st = opts.stats ? *opts.stats : local;
  st = GroebnerStats{};
  const RingPtr& ring = input.ring;
  if (!ring || ring->size() == 0) throw UsageError("buchberger needs a nonempty variable context");

  std::vector<Poly> polys;
  std::vector<int> sugar;
  std::vector<bool> active;
  std::vector<detail::Pair> pairs;

  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  auto progress = [&] {
    st.seconds = elapsed();
    std::ostringstream os;
    std::size_t live = static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
    os << st.summary() << ", live basis " << live << ", pending pairs " << pairs.size();
    return os.str();
  };
  auto check_limits = [&] {
    const auto& lim = opts.limits;
    if (lim.max_pairs && st.pairs_reduced >= lim.max_pairs)
      throw ResourceLimitExceeded("S-pair limit reached", progress());
    if (lim.max_basis && polys.size() > lim.max_basis)
      throw ResourceLimitExceeded("basis size limit reached", progress());
    if (lim.max_coeff_bits && st.coeff_bits_peak > lim.max_coeff_bits)
      throw ResourceLimitExceeded("coefficient size limit reached", progress());
    if (lim.max_seconds > 0 && elapsed() > lim.max_seconds)
      throw ResourceLimitExceeded("time limit reached", progress());
  };

  auto reducers = [&] {
    std::vector<const Poly*> r;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) r.push_back(&polys[i]);
    return r;
  };

  auto unit_system = [&] {
    PolySystem<F> out{ring, {Poly::constant(ring, F(1))}, true};
    st.seconds = elapsed();
    return out;
  };

  // Gebauer-Moeller installation of a new generator h.
  auto update = [&](Poly h, int h_sugar) {
    const std::size_t hi = polys.size();
    const Monomial& lh = h.lead_mono();
    std::vector<detail::Pair> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active[g]) continue;
      Monomial l = lcm(lh, polys[g].lead_mono());
      int s = std::max(h_sugar + (l.degree() - lh.degree()),
                       sugar[g] + (l.degree() - polys[g].lead_mono().degree()));
      c.push_back({g, hi, l, s});
    }
    std::vector<detail::Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const auto& p = c[k];
      bool keep = coprime(lh, polys[p.i].lead_mono());
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q)
          if (c[q].lcm.divides(p.lcm)) keep = false;
        for (std::size_t q = 0; q < d.size() && keep; ++q)
          if (d[q].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
      else ++st.pairs_pruned;
    }
    std::vector<detail::Pair> next;
    for (const auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && !(lcm(polys[p.i].lead_mono(), lh) == p.lcm) &&
                  !(lcm(polys[p.j].lead_mono(), lh) == p.lcm);
      if (drop) ++st.pairs_pruned;
      else next.push_back(p);
    }
    for (const auto& p : d) {
      if (coprime(lh, polys[p.i].lead_mono())) ++st.pairs_pruned;
      else next.push_back(p);
    }
    pairs = std::move(next);
    for (std::size_t g = 0; g < hi; ++g)
      if (active[g] && lh.divides(polys[g].lead_mono())) active[g] = false;
    st.coeff_bits_peak = std::max(st.coeff_bits_peak, detail::max_coeff_bits(h));
    st.degree_peak = std::max(st.degree_peak, h.total_degree());
    polys.push_back(std::move(h));
    sugar.push_back(h_sugar);
    active.push_back(true);
    st.basis_peak = std::max(st.basis_peak, static_cast<std::size_t>(std::count(active.begin(), active.end(), true)));
  };

  for (const auto& g0 : input.gens) {
    Poly f = g0.in_ring(ring);
    int s = f.total_degree();
    Poly h = detail::normal_form(std::move(f), reducers());
    if (h.is_zero()) continue;
    h = normalize_generator(h);
    if (h.is_constant() && opts.stop_on_unit) return unit_system();
    update(std::move(h), s);
  }

  auto pair_less = [&](const detail::Pair& a, const detail::Pair& b) {
    int ka = opts.strategy == PairStrategy::Sugar ? a.sugar : a.lcm.degree();
    int kb = opts.strategy == PairStrategy::Sugar ? b.sugar : b.lcm.degree();
    if (ka != kb) return ka < kb;
    if (opts.strategy == PairStrategy::Sugar) {
      auto c = ring->compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
    }
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };

  while (!pairs.empty()) {
    check_limits();
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    detail::Pair p = *it;
    pairs.erase(it);
    ++st.pairs_reduced;
    Poly s = detail::s_polynomial(polys[p.i], polys[p.j]);
    Poly h = detail::normal_form(std::move(s), reducers());
    if (h.is_zero()) {
      ++st.zero_reductions;
      continue;
    }
    h = normalize_generator(h);
    if (h.is_constant()) {
      if (opts.stop_on_unit) return unit_system();
    }
    update(std::move(h), p.sugar);
  }

  // Minimal basis: active generators already have pairwise non-divisible
  // leading monomials. Interreduce tails.
  std::vector<Poly> basis;
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (active[i]) basis.push_back(polys[i]);
  std::sort(basis.begin(), basis.end(),
            [&](const Poly& a, const Poly& b) { return ring->compare(a.lead_mono(), b.lead_mono()) < 0; });
  if (!basis.empty() && basis.front().is_constant()) return unit_system();
  std::vector<Poly> out;
  out.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<const Poly*> others;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (k != i) others.push_back(&basis[k]);
    Poly h = detail::normal_form(basis[i], others);
    out.push_back(normalize_generator(h));
  }
  st.seconds = elapsed();
  return PolySystem<F>{ring, std::move(out), true};
}

/// f in ideal(gens)?
template <class F>
bool ideal_member(const MultiPoly<F>& f, const PolySystem<F>& gens, const GroebnerOptions& opts = {}) {
  const PolySystem<F> g = gens.reduced ? gens : buchberger(gens, opts);
  return reduce(f, g).is_zero();
}

/// Does some power of f lie in ideal(gens)? Decided exactly by testing
/// 1 in ideal(gens, 1 - t*f) for a fresh variable t.
template <class F>
bool radical_member(const MultiPoly<F>& f, const PolySystem<F>& gens, const GroebnerOptions& opts = {}) {
  if (f.is_zero()) return true;
  std::vector<std::string> vars = gens.ring->vars();
  std::string t = "rabinowitsch_t";
  while (gens.ring->index_of(t)) t += "_";
  vars.push_back(t);
  RingPtr ext = PolyRing::make(std::move(vars), MonomialOrder::grevlex());
  PolySystem<F> sys{ext, {}, false};
  for (const auto& g : gens.gens) sys.gens.push_back(g.in_ring(ext));
  MultiPoly<F> tf = MultiPoly<F>::variable(ext, t) * f.in_ring(ext);
  sys.gens.push_back(MultiPoly<F>::constant(ext, F(1)) - tf);
  GroebnerOptions o = opts;
  o.stop_on_unit = true;
  return buchberger(sys, o).is_unit();
}

/// All S-polynomials of G reduce to zero modulo G.
template <class F>
bool satisfies_buchberger_criterion(const PolySystem<F>& g) {
  std::vector<const MultiPoly<F>*> refs;
  for (const auto& p : g.gens) refs.push_back(&p);
  for (std::size_t i = 0; i < g.gens.size(); ++i)
    for (std::size_t j = i + 1; j < g.gens.size(); ++j) {
      if (coprime(g.gens[i].lead_mono(), g.gens[j].lead_mono())) continue;
      if (!detail::normal_form(detail::s_polynomial(g.gens[i], g.gens[j]), refs).is_zero()) return false;
    }
  return true;
}

/// Generators of ideal(gens) intersected with the subring of kept variables:
/// a Groebner basis under a block order with the dropped block first, keep
/// the members free of dropped variables, then re-reduce in the kept ring
/// (graded reverse lex unless `kept_order` says otherwise).
template <class F>
PolySystem<F> eliminate(const PolySystem<F>& gens, const std::vector<std::string>& drop,
                        const GroebnerOptions& opts = {},
                        MonomialOrder kept_order = MonomialOrder::grevlex(),
                        std::vector<std::string> kept_vars = {}) {
  const PolyRing& src = *gens.ring;
  std::set<std::string> dropset(drop.begin(), drop.end());
  for (const auto& d : drop) src.require_index(d);
  std::vector<std::string> order;
  for (const auto& v : src.vars())
    if (dropset.count(v)) order.push_back(v);
  std::vector<std::string> kept;
  for (const auto& v : src.vars())
    if (!dropset.count(v)) kept.push_back(v);
  if (kept_vars.empty()) kept_vars = kept;
  if (std::set<std::string>(kept_vars.begin(), kept_vars.end()) != std::set<std::string>(kept.begin(), kept.end()))
    throw UsageError("eliminate: kept variable list does not match the ring");
  order.insert(order.end(), kept.begin(), kept.end());
  RingPtr block = PolyRing::make(order, MonomialOrder::block_elim(dropset.size()));
  PolySystem<F> sys{block, {}, false};
  for (const auto& g : gens.gens) sys.gens.push_back(g.in_ring(block));
  PolySystem<F> gb = buchberger(sys, opts);

  RingPtr target = PolyRing::make(kept_vars, kept_order);
  PolySystem<F> out{target, {}, false};
  for (const auto& g : gb.gens) {
    bool free = true;
    for (std::size_t i = 0; i < dropset.size() && free; ++i)
      if (g.involves(i)) free = false;
    if (free) out.gens.push_back(g.in_ring(target));
  }
  GroebnerOptions re = opts;
  re.stats = nullptr;
  return buchberger(out, re);
}

/// Same ideal test by one-sided membership in both directions.
template <class F>
bool ideals_equal(const PolySystem<F>& a, const PolySystem<F>& b, const GroebnerOptions& opts = {}) {
  PolySystem<F> ga = a.reduced ? a : buchberger(a, opts);
  PolySystem<F> gb = b.reduced ? b : buchberger(b, opts);
  for (const auto& p : a.gens)
    if (!reduce(p, gb).is_zero()) return false;
  for (const auto& p : b.gens)
    if (!reduce(p, ga).is_zero()) return false;
  return true;
}

/// Mutual squared membership: p^2 in ideal(b) for every p in a and vice versa.
/// This is the equivalence the golden comparisons use.
template <class F>
bool squares_mutually_contained(const PolySystem<F>& a, const PolySystem<F>& b, const GroebnerOptions& opts = {}) {
  PolySystem<F> ga = a.reduced ? a : buchberger(a, opts);
  PolySystem<F> gb = b.reduced ? b : buchberger(b, opts);
  for (const auto& p : a.gens)
    if (!reduce(p.in_ring(b.ring) * p.in_ring(b.ring), gb).is_zero()) return false;
  for (const auto& p : b.gens)
    if (!reduce(p.in_ring(a.ring) * p.in_ring(a.ring), ga).is_zero()) return false;
  return true;
}

template <class F>
nlohmann::json to_json(const PolySystem<F>& s) {
  nlohmann::json j = ring_to_json(*s.ring);
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : s.gens) gens.push_back({{"terms", terms_to_json(g, s.ring->size())}, {"text", to_text(g)}});
  j["gens"] = gens;
  j["reduced"] = s.reduced;
  return j;
}

template <class F>
PolySystem<F> system_from_json(const nlohmann::json& j) {
  PolySystem<F> s{ring_from_json(j), {}, j.value("reduced", false)};
  for (const auto& g : j.at("gens")) s.gens.push_back(terms_from_json<F>(g.at("terms"), s.ring));
  return s;
}

template <class F>
PolySystem<F> parse_system(const std::vector<std::string>& texts, const RingPtr& ring) {
  PolySystem<F> s{ring, {}, false};
  for (const auto& t : texts) s.gens.push_back(parse_poly<F>(t, ring));
  return s;
}

/// Re-expresses every generator in another ring (reorders terms).
template <class F>
PolySystem<F> in_ring(const PolySystem<F>& s, const RingPtr& ring) {
  PolySystem<F> out{ring, {}, false};
  for (const auto& g : s.gens) out.gens.push_back(g.in_ring(ring));
  return out;
}

}  // namespace discvar
