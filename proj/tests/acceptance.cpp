// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "discvar/groebner.hpp"
#include "discvar/numgeo.hpp"
#include "discvar/poly_io.hpp"
#include "discvar/symform.hpp"
#include "discvar/variety.hpp"

using namespace discvar;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Cli {
  int code = -1;
  std::string out;
  std::string err;
};

Cli run_cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / ("discvar-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path err = dir / "stderr.txt";
  std::string cmd = "DISCVAR_CACHE_DIR='" + (dir / "cache").string() + "' '" + DISCVAR_CLI + "' " + args + " 2>'" +
                    err.string() + "'";
  Cli r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(err);
  std::stringstream ss;
  ss << f.rdbuf();
  r.err = ss.str();
  return r;
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << detail << std::endl;
}

template <class Fn>
void criterion(int id, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

QSystem listing_system(const std::vector<std::string>& texts, const RingPtr& ring) {
  return parse_system<BigRational>(texts, ring);
}

double worst_residual(const QSystem& s, const std::vector<SymMatrixN>& pts) {
  double w = 0;
  for (const auto& x : pts) w = std::max(w, max_relative_residual(s, x));
  return w;
}

std::vector<SymMatrixN> random_lambda_mu_samples(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<SymMatrixN> out;
  while (out.size() < count) {
    const double l = u(rng), m = u(rng);
    if (std::abs(l - m) < 0.1) continue;
    out.push_back(conjugate(random_so(3, rng), diag_matrix({l, l, m})));
  }
  return out;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  // The default derivation, shared by several criteria.
  const DeriveOptions graded;
  DerivationReport base = derive(3, graded, true, nullptr);
  verify_derivation(base, graded.groebner);
  const RingPtr xring = base.rels.ring;

  criterion(1, [&] {
    const auto t0 = Clock::now();
    Cli r = run_cli("derive --n 3 --json --no-cache");
    const double secs = seconds_since(t0);
    if (r.code != 0) return report(1, false, "derive exited " + std::to_string(r.code) + ": " + r.err);
    json j = json::parse(r.out);
    QSystem computed = system_from_json<BigRational>(j.at("rels_s"));
    QSystem printed = listing_system(golden::rels_s(), computed.ring);
    const bool equiv = squares_mutually_contained(computed, printed);
    std::string verdict;
    for (const auto& g : j.at("golden"))
      if (g.at("name") == "RelsS") verdict = g.at("verdict");
    DeriveOptions lo;
    lo.layout = VarLayout::Listing;
    DerivationReport listing = derive(3, lo, true, nullptr);
    const GoldenResult lg = compare_golden(listing, lo.groebner)[0];
    report(1, equiv && secs < 300,
           "mutual squared membership " + std::string(equiv ? "holds" : "fails") + " (" +
               std::to_string(computed.gens.size()) + " vs " + std::to_string(printed.gens.size()) + " members); " +
               "term sets: " + verdict + " in the graded layout, " + lg.verdict() + " in the listing layout; " +
               fmt(secs) + " s");
  });

  criterion(2, [&] {
    QSystem printed = listing_system(golden::m0eqs(), base.m0eqs.ring);
    const bool eq = ideals_equal(base.m0eqs, printed);
    report(2, eq && printed.gens.size() == 4,
           std::string("ideal equality with the 4 listed cubics ") + (eq ? "holds" : "fails") + "; computed " +
               std::to_string(base.m0eqs.gens.size()) + " members");
  });

  criterion(3, [&] {
    bool ok = true;
    std::string detail;
    for (const auto& c : base.checks) {
      const bool wanted = c.name.find("discriminant reduces") != std::string::npos ||
                          c.name.find("diagonal substitution") != std::string::npos ||
                          c.name.find("trace(X)") != std::string::npos || c.name.find("det(X)") != std::string::npos;
      if (!wanted) continue;
      ok = ok && c.pass;
      detail += (detail.empty() ? "" : "; ") + c.name + (c.pass ? " ok" : " FAILED");
    }
    report(3, ok && !detail.empty(), detail);
  });

  criterion(4, [&] {
    Cli r = run_cli("orbit-eqs --eigs 1,1,-2 --json");
    if (r.code != 0) return report(4, false, "orbit-eqs exited " + std::to_string(r.code));
    json j = json::parse(r.out);
    QSystem computed = system_from_json<BigRational>(j.at("equations"));
    QSystem printed = listing_system(golden::orbit_eqs(), computed.ring);
    const bool eq = ideals_equal(computed, printed);
    int linear = 0, quadratic = 0;
    for (const auto& g : printed.gens) (g.total_degree() == 1 ? linear : quadratic)++;
    report(4, eq && linear == 1 && quadratic == 4,
           std::string("ideal equality with the linear + 4 quadratic listing ") + (eq ? "holds" : "fails") +
               "; term sets " + j.at("golden").at("verdict").get<std::string>());
  });

  criterion(5, [&] {
    DeriveOptions lo;
    lo.layout = VarLayout::Listing;
    KSystem sym = one_orbit_eqs(lo);
    GoldenResult g = compare_one_orbit_golden(sym);
    QSystem k0 = specialize_k(sym, BigRational(0));
    QSystem e1 = listing_system({"x11-1", "x12", "x13", "x22+x33+1", "x23^2+(x33+1/2)^2-9/4"}, k0.ring);
    const bool k0_ok = ideals_equal(k0, e1);
    QMultiPoly det = determinant(generic_symmetric(3, k0.ring));
    const bool det_ok = reduce(det + QMultiPoly::constant(k0.ring, BigRational(2)), k0).is_zero();
    QSystem inf = one_orbit_limit_infinity(sym);
    QSystem e2 = listing_system({"x22-1", "x12", "x23", "x11+x33+1", "x13^2+(x33+1/2)^2-9/4"}, inf.ring);
    const bool inf_ok = ideals_equal(inf, e2);
    BigRational r0, ri;
    for (const auto& p : k0.gens)
      if (auto c = circle_form(p)) r0 = c->radius_sq;
    for (const auto& p : inf.gens)
      if (auto c = circle_form(p)) ri = c->radius_sq;
    const bool radius_ok = r0 == BigRational(9, 4) && ri == BigRational(9, 4);
    report(5, g.exact_match && g.ideal_equal && k0_ok && det_ok && inf_ok && radius_ok,
           "symbolic system " + g.verdict() + "; k = 0 circle " + (k0_ok ? "ok" : "wrong") + ", radius^2 " +
               to_string(r0) + "; det(X)+2 " + (det_ok ? "reduces to 0" : "does not reduce") + "; k -> infinity " +
               (inf_ok ? "e2 circle" : "wrong") + ", radius^2 " + to_string(ri));
  });

  criterion(6, [&] {
    int low = 99;
    for (const auto& g : base.rels_s.gens) low = std::min(low, g.total_degree());
    QMultiPoly q(xring);
    long c = 3;
    for (std::size_t i = 0; i < xring->size(); ++i)
      for (std::size_t j = i; j < xring->size(); ++j) {
        c = (c * 7 + 5) % 11;
        const long coef = c - 5 == 0 ? 1 : c - 5;
        q += QMultiPoly::term(xring, Monomial::variable(i) * Monomial::variable(j), BigRational(coef));
      }
    double best = 0;
    for (const auto& x : sample_maximal_spectrum(3, 2000, 606)) {
      const auto pt = point_in_ring(*xring, x);
      best = std::max(best, std::abs(evaluate_numeric(q, pt)) / evaluation_scale(q, pt));
    }
    report(6, low >= 3 && best > 0.1,
           "lowest RelsS degree " + std::to_string(low) + "; fixed quadratic form max |value|/scale " + fmt(best) +
               " over 2000 samples");
  });

  criterion(7, [&] {
    const double rs = worst_residual(base.rels_s, random_lambda_mu_samples(2000, 707));
    const auto orbit = sample_orbit({1, 1, -2}, 2000, 708);
    const double m0 = worst_residual(base.m0eqs, orbit);
    OrbitSystem os = orbit_minimal_eqs({BigRational(1), BigRational(1), BigRational(-2)}, graded);
    const double oe = worst_residual(os.equations, orbit);
    report(7, rs < 1e-9 && m0 < 1e-9 && oe < 1e-9,
           "max relative residuals: RelsS " + fmt(rs) + ", M0eqs " + fmt(m0) + ", orbitEqs " + fmt(oe) +
               " (tolerance 1e-9)");
  });

  criterion(8, [&] {
    int bad = 0;
    for (const auto& x : sample_maximal_spectrum(3, 100, 808))
      if (jacobian_rank_at(base.rels_s, x, 1e-8) != 2) ++bad;
    const int r0 = jacobian_rank_at(base.rels_s, SymMatrixN::Zero(3, 3), 1e-8);
    std::mt19937_64 rng(809);
    std::uniform_real_distribution<double> u(-3, 3);
    int scal = 0;
    for (int i = 0; i < 10; ++i)
      scal = std::max(scal, jacobian_rank_at(base.rels_s, SymMatrixN::Identity(3, 3) * u(rng), 1e-8));
    report(8, bad == 0 && r0 == 0 && scal < 2,
           std::to_string(100 - bad) + "/100 points of rank 2; rank " + std::to_string(r0) +
               " at the origin; largest rank at scalar matrices " + std::to_string(scal));
  });

  criterion(9, [&] {
    SingularityWitness v = vertex_witness(1e-8);
    SingularityWitness e = embracing_plane_witness(1e-8);
    report(9, v.exact.rank == 4 && v.numeric_rank == 4 && e.exact.rank == 5 && e.numeric_rank == 5,
           "vertex witness rank " + std::to_string(v.exact.rank) + " exact / " + std::to_string(v.numeric_rank) +
               " numeric; embracing plane rank " + std::to_string(e.exact.rank) + " exact / " +
               std::to_string(e.numeric_rank) + " numeric");
  });

  criterion(10, [&] {
    DiameterEstimate d = orbit_diameter_estimate({1, 1, -2}, 10000, 1010);
    const bool in_range = d.estimate >= 2.97 && d.estimate <= 3.0 + 1e-9;
    std::mt19937_64 rng(1011);
    std::uniform_real_distribution<double> u(-2, 2);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
      std::vector<double> e(t % 2 ? 4 : 3);
      for (auto& x : e) x = u(rng);
      DiameterEstimate de = orbit_diameter_estimate(e, 200, rng());
      if (!(de.lower <= de.estimate + 1e-12 && de.estimate <= de.upper + 1e-9)) ++bad;
    }
    report(10, in_range && bad == 0,
           "estimate for (1,1,-2) " + fmt(d.estimate) + " over " + std::to_string(d.points) +
               " points, required [2.97, 3]; bounds hold for " + std::to_string(100 - bad) + "/100 spectra" +
               (in_range ? "" : "; orbit points I - 3uu^T with orthogonal u are 3*sqrt(2) apart in the s metric"));
  });

  criterion(11, [&] {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1111);
    std::uniform_real_distribution<double> u(-3, 3);
    auto rand_sym = [&](int n) {
      SymMatrixN x(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) x(i, j) = x(j, i) = u(rng);
      return x;
    };
    double iso = 0;
    for (int t = 0; t < 1000; ++t) {
      SymMatrixN x = rand_sym(3), y = rand_sym(3);
      RotationOp g = random_so(3, rng);
      iso = std::max(iso, std::abs(s_dist(conjugate(g, x), conjugate(g, y)) - s_dist(x, y)));
    }
    bool commutator = true;
    std::uniform_int_distribution<int> ui(-5, 5);
    for (int t = 0; t < 200; ++t) {
      Eigen::Matrix3d d = Eigen::Matrix3d::Zero(), a = Eigen::Matrix3d::Zero();
      for (int i = 0; i < 3; ++i) d(i, i) = ui(rng);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) a(j, i) = -(a(i, j) = ui(rng));
      Eigen::Matrix3d c = d * a - a * d;
      commutator = commutator && c == c.transpose() && c.diagonal().isZero(0);
    }
    double eig = 0;
    for (int t = 0; t < 1000; ++t) {
      const double l = u(rng), m = u(rng);
      std::vector<double> want{l, l, m};
      std::sort(want.begin(), want.end());
      JacobiResult r = jacobi_eigs(conjugate(random_so(3, rng), diag_matrix({l, l, m})));
      for (int i = 0; i < 3; ++i) eig = std::max(eig, std::abs(r.eigs.values[i] - want[i]));
    }
    double shift = 0;
    for (const auto& x : sample_maximal_spectrum(3, 1000, 1112))
      shift = std::max(shift, max_relative_residual(base.rels_s, x + SymMatrixN::Identity(3, 3) * u(rng)));
    bool embed = proj_plane_embed(Eigen::Vector3d::UnitZ()) == diag_matrix({1, 1, -2});
    std::normal_distribution<double> gauss(0, 1);
    for (int t = 0; t < 1000; ++t) {
      Eigen::Vector3d l(gauss(rng), gauss(rng), gauss(rng));
      l.normalize();
      embed = embed && proj_plane_embed(l) == proj_plane_embed(-l);
    }
    const int expv = exp_v_rank_check(1, -2, 1e-5, 1e-5).rank;
    const double secs = seconds_since(t0);
    report(11,
           iso < 1e-9 && commutator && eig < 1e-9 && shift < 1e-9 && embed && expv == 2 && secs < 120,
           "isometry " + fmt(iso) + ", commutators " + (commutator ? "exact" : "WRONG") + ", eigenvalues " + fmt(eig) +
               ", cylinder shift " + fmt(shift) + ", embedding identities " + (embed ? "exact" : "WRONG") +
               ", exp_V rank " + std::to_string(expv) + "; " + fmt(secs) + " s");
  });

  criterion(12, [&] {
    Cli r = run_cli("derive --n 4 --no-cache --max-seconds 20");
    const bool clean = r.code == 1 && r.err.find("resource limit reached") != std::string::npos &&
                       r.err.find("progress:") != std::string::npos;
    std::string progress = r.err.substr(0, r.err.find('\n', r.err.find("progress:")));
    for (auto& ch : progress)
      if (ch == '\n') ch = ' ';
    report(12, clean, "exit " + std::to_string(r.code) + "; " + progress);
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed") << " in "
            << fmt(seconds_since(start)) << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
