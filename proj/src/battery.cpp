#include "discvar/battery.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "discvar/numgeo.hpp"

namespace discvar {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double worst_residual(const QSystem& s, const std::vector<SymMatrixN>& pts) {
  double w = 0;
  for (const auto& x : pts) w = std::max(w, max_relative_residual(s, x));
  return w;
}

// Integer coefficients in [-5, 5] on every degree-two monomial, fixed.
QMultiPoly fixed_quadratic_form(const RingPtr& ring) {
  QMultiPoly q(ring);
  long c = 3;
  for (std::size_t i = 0; i < ring->size(); ++i)
    for (std::size_t j = i; j < ring->size(); ++j) {
      c = (c * 7 + 5) % 11;
      long coef = c - 5 == 0 ? 1 : c - 5;
      q += QMultiPoly::variable(ring, i) * QMultiPoly::variable(ring, j) * QMultiPoly::constant(ring, BigRational(coef));
    }
  return q;
}

const QMultiPoly* quadratic_member(const QSystem& s) {
  for (const auto& g : s.gens)
    if (g.total_degree() == 2) return &g;
  return nullptr;
}

void add(BatteryReport& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

void golden_check(BatteryReport& r, const GoldenResult& g, bool require_exact) {
  const bool pass = g.ideal_equal && (!require_exact || g.exact_match);
  add(r, "golden " + g.name, pass,
      g.verdict() + " (computed " + std::to_string(g.computed) + " members, listing " + std::to_string(g.printed) + ")");
}

void one_orbit_checks(BatteryReport& r, const DeriveOptions& dopt) {
  const GroebnerOptions& gopt = dopt.groebner;
  KSystem sym = one_orbit_eqs(dopt);
  golden_check(r, compare_one_orbit_golden(sym), true);

  KMultiPoly ellipse = parse_kpoly("(k^2+1)*x23^2 + (x33+1/2)^2 - 9/4", sym.ring);
  add(r, "1-orbit ellipse (k^2+1) x23^2 + (x33+1/2)^2 = 9/4", ideal_member(ellipse, sym, gopt), "exact membership");

  QSystem k0 = specialize_k(sym, BigRational(0), gopt);
  QSystem k0_direct = one_orbit_eqs_at(BigRational(0), dopt);
  add(r, "1-orbit at k = 0 agrees with the direct computation", ideals_equal(k0, k0_direct, gopt), "");
  const QMultiPoly* c0 = quadratic_member(k0);
  std::optional<CircleForm> f0 = c0 ? circle_form(*c0) : std::nullopt;
  add(r, "1-orbit at k = 0 is the circle x23^2 + (x33+1/2)^2 = 9/4",
      f0 && f0->u == "x23" && f0->v == "x33" && f0->cu == 0 && f0->cv == BigRational(-1, 2) &&
          f0->radius_sq == BigRational(9, 4),
      f0 ? "radius^2 " + to_string(f0->radius_sq) : "no circle member");
  {
    QMultiPoly det = determinant(generic_symmetric(3, k0.ring));
    QMultiPoly rem = reduce(det + QMultiPoly::constant(k0.ring, BigRational(2)), k0);
    add(r, "det(X) + 2 reduces to zero at k = 0", rem.is_zero(), rem.is_zero() ? "remainder 0" : to_text(rem));
  }

  QSystem inf = one_orbit_limit_infinity(sym, gopt);
  const QMultiPoly* ci = quadratic_member(inf);
  std::optional<CircleForm> fi = ci ? circle_form(*ci) : std::nullopt;
  const bool same_radius = fi && f0 && fi->radius_sq == f0->radius_sq;
  add(r, "k -> infinity limit is the circle x13^2 + (x33+1/2)^2 = 9/4",
      fi && fi->u == "x13" && fi->v == "x33" && fi->cv == BigRational(-1, 2) && same_radius,
      fi ? "radius^2 " + to_string(fi->radius_sq) : "no circle member");
  const bool x22 = ideal_member(parse_qpoly("x22 - 1", inf.ring), inf, gopt) &&
                   ideal_member(parse_qpoly("x12", inf.ring), inf, gopt) &&
                   ideal_member(parse_qpoly("x23", inf.ring), inf, gopt) &&
                   ideal_member(parse_qpoly("x11 + x33 + 1", inf.ring), inf, gopt);
  add(r, "k -> infinity limit matrix [[-x33-1,0,x13],[0,1,0],[x13,0,x33]]", x22, "");
}

}  // namespace

bool BatteryReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

BatteryReport run_battery(const BatteryOptions& opts) {
  BatteryReport r;
  r.n = opts.n;
  r.seed = opts.seed;
  const int n = static_cast<int>(opts.n);
  const GroebnerOptions& gopt = opts.derive.groebner;

  DerivationReport d = derive(opts.n, opts.derive, true, opts.cache);
  verify_derivation(d, gopt);
  for (const auto& c : d.checks) add(r, "derive: " + c.name, c.pass, c.detail);
  r.notes.push_back("RelsS has " + std::to_string(d.rels_s.size()) + " members (Rels " + std::to_string(d.rels.size()) +
                    ")");
  if (opts.n == 3) {
    for (const auto& g : compare_golden(d, gopt)) golden_check(r, g, false);
    r.notes.push_back("the reference RelsS listing has " + std::to_string(golden::rels_s().size()) + " members");
  }

  std::uint64_t stream = opts.seed;
  auto next_seed = [&] { return stream++; };

  // Numeric vanishing.
  const auto mh = sample_maximal_spectrum(n, opts.samples, next_seed());
  {
    double w = std::max(worst_residual(d.rels, mh), worst_residual(d.rels_s, mh));
    add(r, "Rels and RelsS vanish on maximal-spectrum samples", w < 1e-9, "max relative residual " + fmt(w));
  }
  {
    std::mt19937_64 rng(next_seed());
    std::uniform_real_distribution<double> u(-3, 3);
    double w = 0;
    for (const auto& x : mh) {
      const double s = u(rng);
      w = std::max(w, max_relative_residual(d.rels_s, x + s * Eigen::MatrixXd::Identity(n, n)));
    }
    add(r, "RelsS vanishes after adding scalar matrices", w < 1e-9, "max relative residual " + fmt(w));
  }
  {
    QMultiPoly q = fixed_quadratic_form(d.rels.ring);
    double best = 0;
    for (const auto& x : mh) {
      const auto pt = point_in_ring(*q.ring(), x);
      best = std::max(best, std::abs(evaluate_numeric(q, pt)) / evaluation_scale(q, pt));
    }
    add(r, "a fixed quadratic form does not vanish on the variety", best > 0.1, "max relative value " + fmt(best));
  }

  // Jacobian ranks.
  {
    int bad = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(100, mh.size()); ++i)
      if (jacobian_rank_at(d.rels_s, mh[i], opts.rank_tol) != 2) ++bad;
    add(r, "Jacobian rank 2 at maximal-spectrum points", bad == 0, std::to_string(bad) + " of 100 points differ");
    const int r0 = jacobian_rank_at(d.rels_s, Eigen::MatrixXd::Zero(n, n), opts.rank_tol);
    add(r, "Jacobian rank 0 at the origin", r0 == 0, "rank " + std::to_string(r0));
    std::mt19937_64 rng(next_seed());
    std::uniform_real_distribution<double> u(-3, 3);
    int worst = 0;
    for (int i = 0; i < 10; ++i)
      worst = std::max(worst, jacobian_rank_at(d.rels_s, u(rng) * Eigen::MatrixXd::Identity(n, n), opts.rank_tol));
    add(r, "Jacobian rank below 2 at scalar matrices", worst < 2, "largest rank " + std::to_string(worst));
  }

  // Diameter bounds.
  {
    std::mt19937_64 rng(next_seed());
    std::uniform_real_distribution<double> u(-2, 2);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
      std::vector<double> e(static_cast<std::size_t>(t % 2 ? 4 : 3));
      for (auto& v : e) v = u(rng);
      DiameterEstimate de = orbit_diameter_estimate(e, 200, rng());
      if (!(de.lower <= de.estimate + 1e-12 && de.estimate <= de.upper + 1e-9)) ++bad;
    }
    add(r, "diameter bounds max|e_i - e_j| <= estimate <= 2 d(D, Scal)", bad == 0,
        std::to_string(bad) + " of 100 spectra violate");
    DiameterEstimate de = orbit_diameter_estimate({1, 1, -2}, opts.samples, next_seed());
    r.notes.push_back("orbit diameter estimate for (1,1,-2): " + fmt(de.estimate) + " over " +
                      std::to_string(de.points) + " points; |lambda - mu| = 3, bounds [" + fmt(de.lower) + ", " +
                      fmt(de.upper) + "]");
  }

  if (opts.n == 3) {
    const auto orbit_pts = sample_orbit({1, 1, -2}, opts.samples, next_seed());
    add(r, "M0eqs vanish on the orbit of diag(1,1,-2)", worst_residual(d.m0eqs, orbit_pts) < 1e-9,
        "max relative residual " + fmt(worst_residual(d.m0eqs, orbit_pts)));

    OrbitSystem orbit = orbit_minimal_eqs({1, 1, -2}, opts.derive);
    golden_check(r, compare_orbit_golden(orbit, gopt), false);
    add(r, "orbitEqs vanish on the orbit of diag(1,1,-2)", worst_residual(orbit.equations, orbit_pts) < 1e-9,
        "max relative residual " + fmt(worst_residual(orbit.equations, orbit_pts)));
    {
      QSystem viete = orbit_ideal_viete({1, 1, -2}, opts.derive.layout);
      add(r, "Viete orbit equations vanish on the orbit of diag(1,1,-2)", worst_residual(viete, orbit_pts) < 1e-9,
          "max relative residual " + fmt(worst_residual(viete, orbit_pts)));
    }

    one_orbit_checks(r, opts.derive);

    SingularityWitness v = vertex_witness(opts.rank_tol);
    add(r, "vertex witness D, D2, M1, M2 independent", v.exact.rank == 4 && v.numeric_rank == 4 && v.max_deviation < 1e-12,
        "exact rank " + std::to_string(v.exact.rank) + ", numeric rank " + std::to_string(v.numeric_rank));
    SingularityWitness e = embracing_plane_witness(opts.rank_tol);
    add(r, "embracing plane T1, T2, B, D2', D3' independent",
        e.exact.rank == 5 && e.numeric_rank == 5 && e.max_deviation < 1e-12,
        "exact rank " + std::to_string(e.exact.rank) + ", numeric rank " + std::to_string(e.numeric_rank));
    ExpVCheck ev = exp_v_rank_check(1, -2);
    add(r, "exp_V map has rank 2 at zero", ev.rank == 2, "rank " + std::to_string(ev.rank));
  }

  if (opts.deep) {
    int sq = 0, fourth = 0;
    for (const auto& p : discriminant_divisibility_probe(d)) {
      sq += p.divides_square;
      fourth += p.divides_fourth;
    }
    r.notes.push_back("divisibility probe: discr divides g^2 for " + std::to_string(sq) + " and g^4 for " +
                      std::to_string(fourth) + " of " + std::to_string(d.rels.size()) + " Rels members");
  }
  return r;
}

nlohmann::json to_json(const BatteryReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "verify";
  j["n"] = r.n;
  j["seed"] = r.seed;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  j["notes"] = r.notes;
  j["passed"] = r.passed();
  return j;
}

std::string to_text(const BatteryReport& r) {
  std::ostringstream os;
  os << "verify n = " << r.n << ", seed " << r.seed << "\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  os << (r.passed() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

}  // namespace discvar
