#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "discvar/groebner.hpp"
#include "discvar/symform.hpp"

namespace discvar {

class BasisCache;

/// Variable order of the matrix-entry ring. `Graded` is grevlex with
/// x11 > x12 > ... > xnn. `Listing` is deg-lex with the off-diagonal entries
/// first (x12 > x13 > x23 > x11 > x22 > x33 for n = 3), the layout in which
/// the reference n = 3 listings use.
enum class VarLayout { Graded, Listing };

std::string to_string(VarLayout l);
VarLayout parse_layout(const std::string& s);
std::vector<std::string> layout_vars(std::size_t n, VarLayout l);
MonomialOrder layout_order(VarLayout l);
RingPtr layout_ring(std::size_t n, VarLayout l);

struct DeriveOptions {
  VarLayout layout = VarLayout::Graded;
  GroebnerOptions groebner;
};

/// Every polynomial relation among the entries of X = Y D Y^T (D with a
/// double eigenvalue) modulo the orthonormality of Y: the ideal of the
/// discriminant variety, as a reduced basis in the x ring.
QSystem relations_ideal(std::size_t n, const DeriveOptions& opts = {});

/// Drops members that lie in the radical of the others until none does.
/// Members are sorted by leading monomial and tried from the largest down,
/// in repeated passes. `removed` collects the text of each dropped member in
/// removal order.
QSystem simplify_system(const QSystem& s, const GroebnerOptions& opts = {},
                        std::vector<std::string>* removed = nullptr);

/// Substitutes x11 = -(x22 + ... + xnn) and re-reduces over the remaining
/// variables.
QSystem restrict_trace_zero(const QSystem& s, const GroebnerOptions& opts = {});

/// Spectrum with exact entries, sorted ascending.
std::vector<BigRational> sorted_spectrum(std::vector<BigRational> eigs);

/// Matrices with the given spectrum: discr(X) together with the monic
/// characteristic polynomial matched coefficient by coefficient against
/// prod (t - e_i). n + 1 equations.
QSystem orbit_ideal_viete(const std::vector<BigRational>& eigs, VarLayout layout = VarLayout::Graded);

struct OrbitSystem {
  std::vector<BigRational> eigenvalues;  ///< sorted
  QSystem basis;                         ///< reduced Groebner basis
  QSystem equations;                     ///< basis after simplify_system
  std::size_t ambient_dim = 0;
};

/// Implicit equations of the conjugation orbit of diag(eigs), by eliminating
/// Y from {x - Y D Y^T} together with the orthonormality equations, then
/// simplified. Needs a repeated eigenvalue.
OrbitSystem orbit_minimal_eqs(const std::vector<BigRational>& eigs, const DeriveOptions& opts = {});

/// Orbit of D = diag(1, 1, -2) under the rotations fixing e1 + k e2, over
/// Q(k).
KSystem one_orbit_eqs(const DeriveOptions& opts = {});
/// Same for a fixed rational k, computed directly over Q.
QSystem one_orbit_eqs_at(const BigRational& k, const DeriveOptions& opts = {});
/// Evaluates every coefficient at k and re-reduces over Q.
QSystem specialize_k(const KSystem& s, const BigRational& k, const GroebnerOptions& opts = {});
/// Limit k -> infinity with x13 kept free: substitute x23 = -x13/k, keep the
/// dominant power of k in each member, and add x23 = 0.
QSystem one_orbit_limit_infinity(const KSystem& s, const GroebnerOptions& opts = {});

/// u^2 + v^2 + a u + b v + c = 0 read as a circle in the (u, v) plane.
struct CircleForm {
  std::string u;
  std::string v;
  BigRational cu;
  BigRational cv;
  BigRational radius_sq;
};
std::optional<CircleForm> circle_form(const QMultiPoly& p);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct GoldenResult {
  std::string name;
  bool ideal_equal = false;
  bool exact_match = false;
  std::size_t computed = 0;
  std::size_t printed = 0;
  std::string verdict() const;
};

struct DerivationReport {
  std::size_t n = 0;
  VarLayout layout = VarLayout::Graded;
  bool simplified = true;
  QSystem rels;
  QSystem rels_s;
  QSystem m0eqs;
  std::vector<std::string> removed;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> timings;
  std::string groebner_summary;
  bool from_cache = false;

  bool passed() const;
};

/// relations_ideal, then simplify_system (unless `simplify` is off), then
/// restrict_trace_zero. The checks are left empty. `cache` may be null.
DerivationReport derive(std::size_t n, const DeriveOptions& opts = {}, bool simplify = true,
                        BasisCache* cache = nullptr);

/// Recomputes the three evaluation checks and the equivalence Rels ~ RelsS,
/// plus the degree floor and the discriminant degree. Failures are recorded,
/// never thrown.
void verify_derivation(DerivationReport& report, const GroebnerOptions& opts = {});

/// Golden comparisons of the n = 3 report against the reference listings.
std::vector<GoldenResult> compare_golden(const DerivationReport& report, const GroebnerOptions& opts = {});
GoldenResult compare_orbit_golden(const OrbitSystem& orbit, const GroebnerOptions& opts = {});
GoldenResult compare_one_orbit_golden(const KSystem& s);

/// Exploratory: for each Rels member g, does discr divide g^2, g^4?
struct DivisibilityProbe {
  std::string member;
  bool divides_square = false;
  bool divides_fourth = false;
};
std::vector<DivisibilityProbe> discriminant_divisibility_probe(const DerivationReport& report);

nlohmann::json to_json(const DerivationReport& r, bool with_timings = false);
std::string to_text(const DerivationReport& r);
/// Paper-style listing `name = {p1, p2, ...}`.
template <class F>
std::string listing(const std::string& name, const PolySystem<F>& s) {
  std::string out = name + " =\n {";
  for (std::size_t i = 0; i < s.gens.size(); ++i) {
    out += (i ? ",\n  " : "") + to_text(s.gens[i]);
  }
  return out + "}\n";
}

namespace golden {
/// Published n = 3 systems, verbatim.
const std::vector<std::string>& rels_s();
const std::vector<std::string>& m0eqs();
const std::vector<std::string>& orbit_eqs();
const std::vector<std::string>& one_orbit_eqs();
}  // namespace golden

}  // namespace discvar
