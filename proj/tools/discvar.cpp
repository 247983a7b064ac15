// discvar: derivations and checks for the variety of symmetric matrices with
// a multiple eigenvalue.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "discvar/battery.hpp"
#include "discvar/cache.hpp"
#include "discvar/numgeo.hpp"
#include "discvar/variety.hpp"

using namespace discvar;
using nlohmann::json;

namespace {

struct RunConfig {
  bool json_out = false;
  bool no_cache = false;
  bool timings = false;
  std::string cache_dir;
  std::string layout = "graded";
  std::size_t max_pairs = 0;
  std::size_t max_coeff_bits = 0;
  std::size_t max_basis = 0;
  double max_seconds = 300;
  double rank_tol = 1e-8;

  // derive / verify
  std::size_t n = 3;
  bool no_simplify = false;
  bool deep = false;
  // orbit-eqs / sample
  std::string eigs;
  std::size_t count = 0;
  std::uint64_t seed = 42;
  std::size_t samples = 2000;
  std::string out;
  // one-orbit
  std::string k;
  bool k_infinity = false;
  bool symbolic = false;

  DeriveOptions derive_options() const {
    DeriveOptions o;
    o.layout = parse_layout(layout);
    o.groebner.limits.max_pairs = max_pairs;
    o.groebner.limits.max_coeff_bits = max_coeff_bits;
    o.groebner.limits.max_basis = max_basis;
    o.groebner.limits.max_seconds = max_seconds;
    return o;
  }

  std::unique_ptr<BasisCache> cache() const {
    if (no_cache) return nullptr;
    return std::make_unique<BasisCache>(cache_dir.empty() ? BasisCache::default_dir() : std::filesystem::path(cache_dir));
  }
};

std::vector<BigRational> parse_eigs(const std::string& text) {
  std::vector<BigRational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.size() < 2) throw UsageError("--eigs needs at least two comma-separated values");
  return out;
}

std::vector<double> to_doubles(const std::vector<BigRational>& v) {
  std::vector<double> d;
  for (const auto& x : v) d.push_back(x.get_d());
  return d;
}

json eigs_json(const std::vector<BigRational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json golden_json(const GoldenResult& g) {
  return {{"name", g.name}, {"ideal_equal", g.ideal_equal}, {"exact_match", g.exact_match},
          {"computed", g.computed}, {"printed", g.printed}, {"verdict", g.verdict()}};
}

void emit(const RunConfig& c, const json& j, const std::string& text) {
  if (c.json_out) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

int cmd_derive(const RunConfig& c) {
  auto cache = c.cache();
  DeriveOptions o = c.derive_options();
  DerivationReport r = derive(c.n, o, !c.no_simplify, cache.get());
  verify_derivation(r, o.groebner);
  std::vector<GoldenResult> golden = compare_golden(r, o.groebner);
  std::string extra;
  for (const auto& g : golden) {
    r.checks.push_back({"golden " + g.name + " (mutual squared membership)", g.ideal_equal,
                        g.verdict() + ", computed " + std::to_string(g.computed) + " members, listing " +
                            std::to_string(g.printed)});
  }
  json j = to_json(r, c.timings);
  json ga = json::array();
  for (const auto& g : golden) ga.push_back(golden_json(g));
  j["golden"] = ga;
  emit(c, j, to_text(r));
  return r.passed() ? 0 : 1;
}

int cmd_orbit_eqs(const RunConfig& c) {
  DeriveOptions o = c.derive_options();
  OrbitSystem orbit = orbit_minimal_eqs(parse_eigs(c.eigs), o);
  std::optional<GoldenResult> g;
  std::vector<BigRational> ref{BigRational(-2), BigRational(1), BigRational(1)};
  if (orbit.eigenvalues == ref) g = compare_orbit_golden(orbit, o.groebner);

  json j{{"schema", 1}, {"kind", "orbit"}, {"eigenvalues", eigs_json(orbit.eigenvalues)},
         {"ambient_dim", orbit.ambient_dim}, {"equations", to_json(orbit.equations)}, {"basis", to_json(orbit.basis)}};
  std::ostringstream os;
  os << "eigenvalues";
  for (const auto& e : orbit.eigenvalues) os << ' ' << to_string(e);
  os << ", ambient dimension " << orbit.ambient_dim << "\n";
  os << "reduced basis: " << orbit.basis.size() << " members; after simplification " << orbit.equations.size() << "\n";
  os << listing("orbitEqs", orbit.equations);
  if (g) {
    j["golden"] = golden_json(*g);
    os << "golden orbitEqs: " << g->verdict() << "\n";
  }
  emit(c, j, os.str());
  return g && !g->ideal_equal ? 1 : 0;
}

int cmd_one_orbit(const RunConfig& c) {
  DeriveOptions o = c.derive_options();
  json j{{"schema", 1}, {"kind", "one-orbit"}};
  std::ostringstream os;
  bool ok = true;

  auto circle = [&](const QSystem& s) {
    for (const auto& g : s.gens)
      if (g.total_degree() == 2)
        if (auto f = circle_form(g)) {
          j["circle"] = {{"u", f->u}, {"v", f->v}, {"center", {to_string(f->cu), to_string(f->cv)}},
                         {"radius_sq", to_string(f->radius_sq)}};
          os << "circle in (" << f->u << ", " << f->v << "): center (" << to_string(f->cu) << ", " << to_string(f->cv)
             << "), radius^2 " << to_string(f->radius_sq) << "\n";
        }
  };
  auto det_check = [&](const QSystem& s) {
    QMultiPoly det = determinant(generic_symmetric(3, s.ring));
    bool zero = reduce(det + QMultiPoly::constant(s.ring, BigRational(2)), s).is_zero();
    j["det_plus_2_reduces_to_zero"] = zero;
    os << "det(X) + 2 modulo the system: " << (zero ? "0" : "nonzero") << "\n";
    ok = ok && zero;
  };

  if (c.k_infinity) {
    KSystem sym = one_orbit_eqs(o);
    QSystem inf = one_orbit_limit_infinity(sym, o.groebner);
    j["mode"] = "infinity";
    j["system"] = to_json(inf);
    os << listing("1-orbitEqs(k = infinity)", inf);
    circle(inf);
    det_check(inf);
  } else if (!c.k.empty()) {
    BigRational k = parse_rational(c.k);
    QSystem s = one_orbit_eqs_at(k, o);
    QSystem spec = specialize_k(one_orbit_eqs(o), k, o.groebner);
    bool agree = ideals_equal(s, spec, o.groebner);
    j["mode"] = "value";
    j["k"] = to_string(k);
    j["system"] = to_json(s);
    j["agrees_with_specialization"] = agree;
    os << listing("1-orbitEqs(k = " + to_string(k) + ")", s);
    os << "specialization of the symbolic system: " << (agree ? "same ideal" : "DIFFERENT ideal") << "\n";
    circle(s);
    det_check(s);
    ok = ok && agree;
  } else {
    KSystem sym = one_orbit_eqs(o);
    GoldenResult g = compare_one_orbit_golden(sym);
    j["mode"] = "symbolic";
    j["system"] = to_json(sym);
    j["golden"] = golden_json(g);
    os << listing("1-orbitEqs", sym);
    os << "golden 1-orbitEqs: " << g.verdict() << "\n";
    ok = g.ideal_equal && g.exact_match;
  }
  emit(c, j, os.str());
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& c) {
  auto cache = c.cache();
  BatteryOptions b;
  b.n = c.n;
  b.seed = c.seed;
  b.samples = c.samples;
  b.rank_tol = c.rank_tol;
  b.deep = c.deep;
  b.derive = c.derive_options();
  b.cache = cache.get();
  BatteryReport r = run_battery(b);
  emit(c, to_json(r), to_text(r));
  return r.passed() ? 0 : 1;
}

int cmd_sample(const RunConfig& c) {
  if (c.count == 0) throw UsageError("--count must be positive");
  const std::vector<BigRational> eigs = sorted_spectrum(parse_eigs(c.eigs));
  const int n = static_cast<int>(eigs.size());
  const std::vector<SymMatrixN> pts = sample_orbit(to_doubles(eigs), c.count, c.seed);

  std::vector<std::pair<std::string, QSystem>> systems;
  systems.emplace_back("viete", orbit_ideal_viete(eigs, parse_layout(c.layout)));
  bool repeated = false;
  for (std::size_t i = 0; i + 1 < eigs.size(); ++i) repeated = repeated || eigs[i] == eigs[i + 1];
  if (n == 3 && repeated) {
    DeriveOptions o = c.derive_options();
    auto cache = c.cache();
    systems.emplace_back("orbit", orbit_minimal_eqs(eigs, o).equations);
    systems.emplace_back("rels_s", derive(3, o, true, cache.get()).rels_s);
  }

  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) names.push_back("x" + std::to_string(i) + std::to_string(j));

  const bool csv = c.out.size() >= 4 && c.out.substr(c.out.size() - 4) == ".csv";
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot open " + c.out + " for writing");
  f.precision(17);
  double worst = 0;
  json points = json::array();
  if (csv) {
    for (const auto& nm : names) f << nm << ",";
    for (std::size_t s = 0; s < systems.size(); ++s) f << "residual_" << systems[s].first << (s + 1 < systems.size() ? "," : "\n");
  }
  for (const auto& x : pts) {
    Eigen::VectorXd v = flatten_upper(x);
    json res = json::object();
    std::vector<double> rs;
    for (const auto& [name, sys] : systems) {
      double r = max_relative_residual(sys, x);
      res[name] = r;
      rs.push_back(r);
      worst = std::max(worst, r);
    }
    if (csv) {
      for (Eigen::Index k = 0; k < v.size(); ++k) f << v(k) << ",";
      for (std::size_t s = 0; s < rs.size(); ++s) f << rs[s] << (s + 1 < rs.size() ? "," : "\n");
    } else {
      points.push_back({{"x", std::vector<double>(v.data(), v.data() + v.size())}, {"residuals", res}});
    }
  }
  if (!csv) {
    json doc{{"schema", 1}, {"kind", "samples"}, {"eigenvalues", eigs_json(eigs)}, {"seed", c.seed},
             {"coordinates", names}, {"points", points}};
    f << doc.dump() << "\n";
  }
  f.close();
  if (!f) throw std::runtime_error("failed writing " + c.out);

  json j{{"schema", 1}, {"kind", "sample-summary"}, {"out", c.out}, {"count", c.count}, {"seed", c.seed},
         {"max_relative_residual", worst}};
  std::ostringstream os;
  os << "wrote " << c.count << " points to " << c.out << "; largest relative residual " << worst << "\n";
  emit(c, j, os.str());
  return 0;
}

json witness_json(const SingularityWitness& w) {
  json rows = json::array(), ech = json::array();
  for (const auto& r : w.exact_rows) {
    json a = json::array();
    for (const auto& x : r) a.push_back(to_string(x));
    rows.push_back(a);
  }
  for (const auto& r : w.exact.echelon) {
    json a = json::array();
    for (const auto& x : r) a.push_back(to_string(x));
    ech.push_back(a);
  }
  return {{"names", w.names}, {"rows", rows}, {"echelon", ech}, {"exact_rank", w.exact.rank},
          {"numeric_rank", w.numeric_rank}, {"max_deviation", w.max_deviation}};
}

std::string witness_text(const std::string& title, const SingularityWitness& w) {
  std::ostringstream os;
  auto row = [&](const std::vector<BigRational>& r) {
    os << "[";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? ", " : "") << to_string(r[i]);
    os << "]";
  };
  os << title << "\n  rows (X11, X12, X13, X22, X23, X33):\n";
  for (std::size_t i = 0; i < w.names.size(); ++i) {
    os << "    " << w.names[i] << " ";
    row(w.exact_rows[i]);
    os << "\n";
  }
  os << "  staircase form:\n";
  for (const auto& r : w.exact.echelon) {
    os << "    ";
    row(r);
    os << "\n";
  }
  os << "  exact rank " << w.exact.rank << ", numeric rank " << w.numeric_rank << " (numeric vs exact entries within "
     << w.max_deviation << ")\n";
  return os.str();
}

int cmd_singularity(const RunConfig& c) {
  SingularityWitness v = vertex_witness(c.rank_tol);
  SingularityWitness e = embracing_plane_witness(c.rank_tol);
  json j{{"schema", 1}, {"kind", "singularity"}, {"vertex", witness_json(v)}, {"embracing_plane", witness_json(e)}};
  std::string text = witness_text("vertex of the trace-zero section: D, D2, M1, M2 (a = -1/2, b = -3/2)", v) +
                     witness_text("embracing plane at diag(0,0,1): T1, T2, B, D2', D3'", e);
  emit(c, j, text);
  const bool ok = v.exact.rank == 4 && v.numeric_rank == 4 && e.exact.rank == 5 && e.numeric_rank == 5;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Equations and checks for the variety of real symmetric matrices with a multiple eigenvalue"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", c.json_out, "Print JSON (schema 1) instead of text");
  app.add_flag("--no-cache", c.no_cache, "Recompute bases instead of reading the cache");
  app.add_option("--cache-dir", c.cache_dir, "Cache directory (default: $DISCVAR_CACHE_DIR, else ~/.cache/discvar)");
  app.add_option("--layout", c.layout, "Variable order of the x ring: graded (grevlex x11>x12>...) or listing")
      ->check(CLI::IsMember({"graded", "listing"}))
      ->capture_default_str();
  app.add_option("--max-pairs", c.max_pairs, "Groebner limit on reduced S-pairs (0 = none)")->capture_default_str();
  app.add_option("--max-coeff-bits", c.max_coeff_bits, "Groebner limit on coefficient bit size (0 = none)")
      ->capture_default_str();
  app.add_option("--max-basis", c.max_basis, "Groebner limit on basis size (0 = none)")->capture_default_str();
  app.add_option("--max-seconds", c.max_seconds, "Groebner wall-clock limit per computation (0 = none)")
      ->capture_default_str();
  app.add_option("--rank-tol", c.rank_tol, "Relative pivot tolerance for numeric ranks")->capture_default_str();
  app.add_flag("--timings", c.timings, "Include wall-clock timings in JSON output");

  auto* derive = app.add_subcommand("derive", "Relation ideal, simplified system and trace-zero section");
  derive->add_option("--n", c.n, "Matrix size")->capture_default_str()->check(CLI::PositiveNumber);
  derive->add_flag("--no-simplify", c.no_simplify, "Skip the radical-membership simplification");

  auto* orbit = app.add_subcommand("orbit-eqs", "Minimal equations of the conjugation orbit of diag(eigs)");
  orbit->add_option("--eigs", c.eigs, "Eigenvalues a,b,c[,...] (rationals or decimals)")->required();

  auto* one = app.add_subcommand("one-orbit", "Orbit of diag(1,1,-2) under rotations about e1 + k e2");
  auto* ok = one->add_option("--k", c.k, "A rational value of k");
  auto* oinf = one->add_flag("--k-infinity", c.k_infinity, "The limit k -> infinity");
  auto* osym = one->add_flag("--symbolic", c.symbolic, "Symbolic k over Q(k) (default)");
  ok->excludes(oinf)->excludes(osym);
  oinf->excludes(osym);

  auto* verify = app.add_subcommand("verify", "Run the full check battery; exit 1 if anything fails");
  verify->add_option("--n", c.n, "Matrix size")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", c.seed, "Master seed for sampling")->capture_default_str();
  verify->add_option("--samples", c.samples, "Points per numeric vanishing check")->capture_default_str();
  verify->add_flag("--deep", c.deep, "Also probe whether discr divides g^2 or g^4 for Rels members");

  auto* sample = app.add_subcommand("sample", "Write orbit samples with per-point residuals");
  sample->add_option("--eigs", c.eigs, "Eigenvalues a,b,c[,...]")->required();
  sample->add_option("--count", c.count, "Number of points")->required();
  sample->add_option("--seed", c.seed, "Seed")->required();
  sample->add_option("--out", c.out, "Output path (.csv for CSV, otherwise JSON)")->required();

  auto* sing = app.add_subcommand("singularity", "Rank witnesses for the singular vertex and the embracing plane");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*derive) return cmd_derive(c);
    if (*orbit) return cmd_orbit_eqs(c);
    if (*one) return cmd_one_orbit(c);
    if (*verify) return cmd_verify(c);
    if (*sample) return cmd_sample(c);
    if (*sing) return cmd_singularity(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitExceeded& e) {
    std::cerr << "resource limit reached: " << e.what() << "\nprogress: " << e.progress() << "\n";
    if (c.json_out) {
      json j{{"schema", 1}, {"kind", "aborted"}, {"reason", e.what()}, {"progress", e.progress()}, {"n", c.n}};
      std::cout << j.dump(2) << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
