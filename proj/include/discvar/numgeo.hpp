#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "discvar/error.hpp"
#include "discvar/groebner.hpp"
#include "discvar/rational.hpp"

namespace discvar {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense symmetric matrix; functions below return exactly symmetric values.
using SymMatrixN = Eigen::MatrixXd;
/// Element of SO(n).
using RotationOp = Eigen::MatrixXd;

/// Copies the upper triangle onto the lower one.
template <class Derived>
MatrixX<typename Derived::Scalar> symmetrized(const Eigen::MatrixBase<Derived>& m) {
  MatrixX<typename Derived::Scalar> s = m;
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j) s(i, j) = s(j, i);
  return s;
}

/// Sum of squares of all entries.
template <class Derived>
typename Derived::Scalar s_quad(const Eigen::MatrixBase<Derived>& x) {
  return x.squaredNorm();
}

template <class A, class B>
typename A::Scalar s_dist(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw UsageError("s_dist: size mismatch");
  return (x - y).norm();
}

/// Inner product whose square-norm is s_quad.
template <class A, class B>
typename A::Scalar s_inner(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  return x.cwiseProduct(y).sum();
}

/// g X g^T, resymmetrized.
template <class G, class X>
MatrixX<typename X::Scalar> conjugate(const Eigen::MatrixBase<G>& g, const Eigen::MatrixBase<X>& x) {
  if (g.rows() != x.rows()) throw UsageError("conjugate: size mismatch");
  return symmetrized(g * x * g.transpose());
}

template <class Derived>
bool is_rotation(const Eigen::MatrixBase<Derived>& g, double tol = 1e-12) {
  const auto n = g.rows();
  if (g.cols() != n) return false;
  return (g.transpose() * g - MatrixX<typename Derived::Scalar>::Identity(n, n)).cwiseAbs().maxCoeff() <= tol &&
         std::abs(g.determinant() - 1) <= tol;
}

/// Sorted eigenvalues with multiplicities found by clustering neighbours
/// closer than `tol`.
struct EigenMultiset {
  std::vector<double> values;
  std::vector<std::pair<double, int>> clusters;

  static EigenMultiset from_values(std::vector<double> v, double tol);
  /// Clustering tolerance 1e-7 (1 + |S|) for a matrix of norm |S|.
  static double default_tol(double norm) { return 1e-7 * (1.0 + norm); }

  std::size_t width() const { return clusters.size(); }
  bool has_multiple() const { return clusters.size() < values.size(); }
  /// Exactly n - 1 distinct values.
  bool maximal_spectrum() const { return !values.empty() && clusters.size() + 1 == values.size(); }
};

struct JacobiResult {
  EigenMultiset eigs;
  RotationOp g;  ///< columns are eigenvectors: g^T S g = diag(values)
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal norm drops below
/// 1e-12 |S| or 100 sweeps. The orthogonal factor is made proper by
/// flipping one column when its determinant is -1.
JacobiResult jacobi_eigs(const SymMatrixN& s);

/// Haar-distributed rotation: QR of a Gaussian matrix with the signs of R's
/// diagonal moved into Q, then a column flip if det = -1.
template <class Rng>
RotationOp random_so(int n, Rng& rng) {
  if (n < 2) throw UsageError("random_so needs n >= 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

inline RotationOp random_so(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_so(n, rng);
}

/// Rotation of the coordinate frame about `axis` by phi (n = 3). As a matrix
/// acting on vectors this is the Rodrigues rotation by -phi; conjugating
/// diag(1,1,-2) about e1 gives entries (2,2) = c^2 - 2 s^2, (2,3) = -3 c s.
RotationOp rotation_axis_angle(const Eigen::Vector3d& axis, double phi);

/// Point of the orbit of diag(1,1,-2) whose (-2)-eigenvector is l, i.e. the
/// frame rotation taking e3 to l applied to D. Computed in closed form as
/// I - 3 l l^T so that s(l) = s(-l) and s(e3) = D hold exactly.
SymMatrixN proj_plane_embed(const Eigen::Vector3d& l);
/// Same point by an explicit rotation taking e3 to l, for cross-checks.
SymMatrixN proj_plane_embed_by_rotation(const Eigen::Vector3d& l);

/// Antisymmetric basis E_ij - E_ji, i < j.
std::vector<Eigen::MatrixXd> so_basis(int n);
/// [A, D] = A D - D A for every A in so_basis.
std::vector<Eigen::MatrixXd> tangent_basis(const SymMatrixN& d);

/// Upper triangle, row-major: X11, X12, ..., Xnn.
Eigen::VectorXd flatten_upper(const Eigen::MatrixXd& x);
Eigen::MatrixXd unflatten_upper(const Eigen::VectorXd& v, int n);

/// Numerical rank by Gaussian elimination with complete pivoting. Pivots
/// below tol * reference are treated as zero; the reference is the largest
/// entry unless given.
int rank_with_tol(const std::vector<Eigen::VectorXd>& rows, double tol = 1e-8,
                  std::optional<double> reference = std::nullopt);

/// Exact rank over Q, recording the row-echelon form reached.
struct ExactRank {
  int rank = 0;
  std::vector<std::vector<BigRational>> echelon;
};
ExactRank exact_rank(std::vector<std::vector<BigRational>> rows);

/// Orbit point g D g^T.
inline SymMatrixN orbit_point(const RotationOp& g, const SymMatrixN& d) { return conjugate(g, d); }
SymMatrixN diag_matrix(const std::vector<double>& eigs);

/// `count` points g D g^T with g drawn by random_so from one seeded stream.
std::vector<SymMatrixN> sample_orbit(const std::vector<double>& eigs, std::size_t count, std::uint64_t seed);

/// Points of the discriminant variety with exactly n - 1 distinct eigenvalues:
/// diag(l, l, m_1, ...) with entries uniform in [-2, 2], pairwise at least
/// 0.1 apart, conjugated by a random rotation.
std::vector<SymMatrixN> sample_maximal_spectrum(int n, std::size_t count, std::uint64_t seed);

/// Squared s-distance from diag(eigs) to the line of scalar matrices.
double dist_to_scalars_sq(const std::vector<double>& eigs);

struct DiameterEstimate {
  double estimate = 0.0;
  double lower = 0.0;  ///< max |e_i - e_j|
  double upper = 0.0;  ///< 2 d(D, Scal)
  std::size_t points = 0;
  bool narrow_spectrum = false;  ///< not exactly n - 1 distinct values
};

/// Largest pairwise s-distance among orbit samples: D and every D with two
/// diagonal entries swapped, for n = 3 a fixed grid over the circle family through D, then
/// `samples` random rotations drawn from `seed`. Later samples extend earlier
/// ones, so the estimate never decreases with `samples`.
DiameterEstimate orbit_diameter_estimate(const std::vector<double>& eigs, std::size_t samples, std::uint64_t seed);

/// Rank of the Jacobian of the system's members with respect to the x
/// variables at X. Pivots are compared against tol times the coefficient
/// scale of the gradients, so the rank at a point where all gradients vanish
/// is 0 regardless of rounding.
int jacobian_rank_at(const QSystem& system, const SymMatrixN& x, double tol = 1e-8);

/// Values of the x variables of `ring` at the symmetric matrix X.
std::vector<double> point_in_ring(const PolyRing& ring, const SymMatrixN& x);

/// |p(X)| / evaluation scale, the largest over the members.
double max_relative_residual(const QSystem& s, const SymMatrixN& x);

/// Every tangent direction at diagonal D is s-orthogonal to every diagonal
/// direction.
bool orthogonality_witness(const SymMatrixN& d, double tol = 1e-12);

/// Finite-difference rank of A -> exp(A) D exp(A)^T at A = 0 for A in the span
/// of the infinitesimal rotations about e1 and e2; D = diag(a, a, b).
struct ExpVCheck {
  int rank = 0;
  Eigen::MatrixXd jacobian;  ///< 6 x 2, columns d/dt1, d/dt2 flattened
};
ExpVCheck exp_v_rank_check(double a, double b, double h = 1e-5, double tol = 1e-5);

/// Matrices behind the vertex-singularity argument and the embracing-plane
/// argument, with the ranks found numerically and exactly.
struct SingularityWitness {
  std::vector<std::string> names;
  std::vector<Eigen::MatrixXd> matrices;
  std::vector<std::vector<BigRational>> exact_rows;
  int numeric_rank = 0;
  ExactRank exact;
  double max_deviation = 0.0;  ///< numeric vs exact entries
};
/// D, D2, M1, M2 for D = diag(1,1,-2); M1, M2 from rotations by pi/4 about
/// e1 and e2.
SingularityWitness vertex_witness(double tol = 1e-8);
/// T1, T2, B, D2', D3' for D = diag(0,0,1).
SingularityWitness embracing_plane_witness(double tol = 1e-8);

}  // namespace discvar
