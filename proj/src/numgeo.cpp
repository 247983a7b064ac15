#include "discvar/numgeo.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace discvar {

EigenMultiset EigenMultiset::from_values(std::vector<double> v, double tol) {
  EigenMultiset m;
  std::sort(v.begin(), v.end());
  m.values = v;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    while (j < v.size() && v[j] - v[j - 1] <= tol) ++j;
    double sum = 0;
    for (std::size_t k = i; k < j; ++k) sum += v[k];
    m.clusters.emplace_back(sum / static_cast<double>(j - i), static_cast<int>(j - i));
    i = j;
  }
  return m;
}

JacobiResult jacobi_eigs(const SymMatrixN& s_in) {
  const Eigen::Index n = s_in.rows();
  if (s_in.cols() != n) throw UsageError("jacobi_eigs: matrix is not square");
  Eigen::MatrixXd a = symmetrized(s_in);
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double norm = a.norm();
  auto off = [&] {
    double o = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) o += 2 * a(i, j) * a(i, j);
    return std::sqrt(o);
  };
  int sweeps = 0;
  while (sweeps < 100 && off() > 1e-12 * norm) {
    ++sweeps;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        // Classical stable choice of the rotation angle.
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  JacobiResult r;
  r.g = Eigen::MatrixXd(n, n);
  std::vector<double> vals;
  for (Eigen::Index k = 0; k < n; ++k) {
    r.g.col(k) = v.col(idx[static_cast<std::size_t>(k)]);
    vals.push_back(a(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(k)]));
  }
  if (r.g.determinant() < 0) r.g.col(0) = -r.g.col(0);
  r.eigs = EigenMultiset::from_values(std::move(vals), EigenMultiset::default_tol(norm));
  r.sweeps = sweeps;
  return r;
}

RotationOp rotation_axis_angle(const Eigen::Vector3d& axis, double phi) {
  if (std::abs(axis.norm() - 1) > 1e-12) throw UsageError("rotation_axis_angle: axis must be a unit vector");
  return Eigen::AngleAxisd(-phi, axis).toRotationMatrix();
}

SymMatrixN proj_plane_embed(const Eigen::Vector3d& l) {
  const double len = l.norm();
  if (len == 0) throw UsageError("proj_plane_embed: zero axis");
  const Eigen::Vector3d u = l / len;
  SymMatrixN x = Eigen::Matrix3d::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) -= 3 * (u(i) * u(j));
  return symmetrized(x);
}

SymMatrixN proj_plane_embed_by_rotation(const Eigen::Vector3d& l) {
  const Eigen::Vector3d u = l.normalized();
  const Eigen::Vector3d e3 = Eigen::Vector3d::UnitZ();
  // Active rotation taking e3 to u, about e3 x u.
  Eigen::Matrix3d g = Eigen::Quaterniond::FromTwoVectors(e3, u).toRotationMatrix();
  return conjugate(g, diag_matrix({1, 1, -2}));
}

std::vector<Eigen::MatrixXd> so_basis(int n) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      a(i, j) = 1;
      a(j, i) = -1;
      out.push_back(a);
    }
  return out;
}

std::vector<Eigen::MatrixXd> tangent_basis(const SymMatrixN& d) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& a : so_basis(static_cast<int>(d.rows()))) out.push_back(a * d - d * a);
  return out;
}

Eigen::VectorXd flatten_upper(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  Eigen::VectorXd v(n * (n + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) v(k++) = x(i, j);
  return v;
}

Eigen::MatrixXd unflatten_upper(const Eigen::VectorXd& v, int n) {
  if (v.size() != n * (n + 1) / 2) throw UsageError("unflatten_upper: wrong length");
  Eigen::MatrixXd x(n, n);
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) x(i, j) = x(j, i) = v(k++);
  return x;
}

int rank_with_tol(const std::vector<Eigen::VectorXd>& rows, double tol, std::optional<double> reference) {
  if (rows.empty()) throw UsageError("rank_with_tol: empty list");
  const Eigen::Index m = rows.front().size();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) throw UsageError("rank_with_tol: rows of different length");
    a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  const double ref = reference ? *reference : a.cwiseAbs().maxCoeff();
  const double threshold = tol * ref;
  int rank = 0;
  const Eigen::Index r = a.rows();
  for (Eigen::Index k = 0; k < std::min(r, m); ++k) {
    Eigen::Index pi = 0, pj = 0;
    const double piv = a.bottomRightCorner(r - k, m - k).cwiseAbs().maxCoeff(&pi, &pj);
    if (!(piv > threshold)) break;
    a.row(k).swap(a.row(k + pi));
    a.col(k).swap(a.col(k + pj));
    for (Eigen::Index i = k + 1; i < r; ++i) a.row(i) -= (a(i, k) / a(k, k)) * a.row(k);
    ++rank;
  }
  return rank;
}

ExactRank exact_rank(std::vector<std::vector<BigRational>> rows) {
  ExactRank out;
  if (rows.empty()) return out;
  const std::size_t m = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < m && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      BigRational f = rows[i][col] / rows[r][col];
      for (std::size_t j = col; j < m; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  out.rank = static_cast<int>(r);
  out.echelon = std::move(rows);
  return out;
}

SymMatrixN diag_matrix(const std::vector<double>& eigs) {
  const auto n = static_cast<Eigen::Index>(eigs.size());
  SymMatrixN d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = eigs[static_cast<std::size_t>(i)];
  return d;
}

std::vector<SymMatrixN> sample_orbit(const std::vector<double>& eigs, std::size_t count, std::uint64_t seed) {
  const SymMatrixN d = diag_matrix(eigs);
  std::mt19937_64 rng(seed);
  std::vector<SymMatrixN> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(conjugate(random_so(static_cast<int>(eigs.size()), rng), d));
  return out;
}

std::vector<SymMatrixN> sample_maximal_spectrum(int n, std::size_t count, std::uint64_t seed) {
  if (n < 2) throw UsageError("sample_maximal_spectrum needs n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<SymMatrixN> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<double> e{u(rng)};
    e.push_back(e[0]);
    while (static_cast<int>(e.size()) < n) {
      double v = u(rng);
      bool apart = true;
      for (std::size_t k = 1; k < e.size(); ++k) apart = apart && std::abs(v - e[k]) >= 0.1;
      if (apart) e.push_back(v);
    }
    out.push_back(conjugate(random_so(n, rng), diag_matrix(e)));
  }
  return out;
}

double dist_to_scalars_sq(const std::vector<double>& eigs) {
  if (eigs.empty()) return 0;
  const double m = std::accumulate(eigs.begin(), eigs.end(), 0.0) / static_cast<double>(eigs.size());
  double s = 0;
  for (double e : eigs) s += (e - m) * (e - m);
  return s;
}

DiameterEstimate orbit_diameter_estimate(const std::vector<double>& eigs, std::size_t samples, std::uint64_t seed) {
  const int n = static_cast<int>(eigs.size());
  if (n < 2) throw UsageError("orbit_diameter_estimate needs n >= 2");
  DiameterEstimate e;
  for (double a : eigs)
    for (double b : eigs) e.lower = std::max(e.lower, std::abs(a - b));
  e.upper = 2 * std::sqrt(dist_to_scalars_sq(eigs));
  const SymMatrixN d = diag_matrix(eigs);
  {
    double norm = d.norm();
    e.narrow_spectrum = !EigenMultiset::from_values(eigs, EigenMultiset::default_tol(norm)).maximal_spectrum();
  }

  // Points as upper-triangle vectors with off-diagonal entries scaled by
  // sqrt(2), so the Euclidean distance is the s-distance.
  std::vector<Eigen::VectorXd> pts;
  auto add = [&](const Eigen::MatrixXd& x) {
    Eigen::VectorXd v = flatten_upper(x);
    Eigen::Index k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++k)
        if (i != j) v(k) *= std::sqrt(2.0);
    pts.push_back(std::move(v));
  };
  add(d);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<double> p = eigs;
      std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
      add(diag_matrix(p));
    }
  if (n == 3) {
    // Circles through D: rotations by phi about axes at angle psi from e1 in
    // the (e1, e2) plane.
    constexpr int grid = 48;
    for (int a = 0; a < grid; ++a) {
      const double psi = M_PI * a / grid;
      const Eigen::Vector3d axis(std::cos(psi), std::sin(psi), 0.0);
      for (int b = 1; b < grid; ++b) add(conjugate(rotation_axis_angle(axis, M_PI * b / grid), d));
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) add(conjugate(random_so(n, rng), d));

  double best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).squaredNorm());
  e.estimate = std::sqrt(best);
  e.points = pts.size();
  return e;
}

std::vector<double> point_in_ring(const PolyRing& ring, const SymMatrixN& x) {
  std::vector<double> p(ring.size(), 0.0);
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const std::string& v = ring.var(k);
    if (v.size() != 3 || v[0] != 'x') throw UsageError("point_in_ring: not a matrix variable: " + v);
    const int i = v[1] - '1', j = v[2] - '1';
    if (i < 0 || j < 0 || i >= x.rows() || j >= x.rows()) throw UsageError("point_in_ring: index out of range: " + v);
    p[k] = x(i, j);
  }
  return p;
}

int jacobian_rank_at(const QSystem& system, const SymMatrixN& x, double tol) {
  const PolyRing& ring = *system.ring;
  const std::vector<double> pt = point_in_ring(ring, x);
  std::vector<Eigen::VectorXd> rows;
  double reference = 0;
  for (const auto& g : system.gens) {
    Eigen::VectorXd row(static_cast<Eigen::Index>(ring.size()));
    for (std::size_t k = 0; k < ring.size(); ++k) {
      QMultiPoly dg = g.diff(k);
      row(static_cast<Eigen::Index>(k)) = evaluate_numeric(dg, pt);
      reference = std::max(reference, evaluation_scale(dg, pt));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return 0;
  return rank_with_tol(rows, tol, reference);
}

double max_relative_residual(const QSystem& s, const SymMatrixN& x) {
  const std::vector<double> pt = point_in_ring(*s.ring, x);
  double worst = 0;
  for (const auto& g : s.gens) {
    const double v = std::abs(evaluate_numeric(g, pt));
    const double scale = evaluation_scale(g, pt);
    if (v == 0) continue;
    worst = std::max(worst, scale > 0 ? v / scale : INFINITY);
  }
  return worst;
}

bool orthogonality_witness(const SymMatrixN& d, double tol) {
  const Eigen::Index n = d.rows();
  for (const auto& t : tangent_basis(d))
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(t(i, i)) > tol * (1 + d.norm())) return false;
  return true;
}

ExpVCheck exp_v_rank_check(double a, double b, double h, double tol) {
  const Eigen::MatrixXd d = diag_matrix({a, a, b});
  const std::vector<Eigen::MatrixXd> so = so_basis(3);
  // so_basis order: (1,2), (1,3), (2,3). Rotations about e1 and e2.
  const Eigen::MatrixXd gens[2] = {-so[2], so[1]};
  ExpVCheck out;
  out.jacobian = Eigen::MatrixXd(6, 2);
  std::vector<Eigen::VectorXd> cols;
  for (int k = 0; k < 2; ++k) {
    Eigen::MatrixXd ep = (h * gens[k]).exp();
    Eigen::MatrixXd em = (-h * gens[k]).exp();
    Eigen::VectorXd col = (flatten_upper(conjugate(ep, d)) - flatten_upper(conjugate(em, d))) / (2 * h);
    out.jacobian.col(k) = col;
    cols.push_back(col);
  }
  out.rank = rank_with_tol(cols, tol, std::max({std::abs(a), std::abs(b), 1.0}));
  return out;
}

namespace {

std::vector<BigRational> rat_row(std::initializer_list<BigRational> v) { return std::vector<BigRational>(v); }

void finish_witness(SingularityWitness& w, double tol) {
  std::vector<Eigen::VectorXd> rows;
  for (std::size_t i = 0; i < w.matrices.size(); ++i) {
    Eigen::VectorXd v = flatten_upper(w.matrices[i]);
    rows.push_back(v);
    for (Eigen::Index k = 0; k < v.size(); ++k)
      w.max_deviation = std::max(w.max_deviation, std::abs(v(k) - w.exact_rows[i][static_cast<std::size_t>(k)].get_d()));
  }
  w.numeric_rank = rank_with_tol(rows, tol);
  w.exact = exact_rank(w.exact_rows);
}

// Scales t so that its largest entry in absolute value becomes +1.
Eigen::MatrixXd unit_direction(const Eigen::MatrixXd& t) {
  Eigen::Index i = 0, j = 0;
  t.cwiseAbs().maxCoeff(&i, &j);
  return t / t(i, j);
}

}  // namespace

SingularityWitness vertex_witness(double tol) {
  SingularityWitness w;
  const SymMatrixN d = diag_matrix({1, 1, -2});
  const Eigen::Vector3d e1 = Eigen::Vector3d::UnitX(), e2 = Eigen::Vector3d::UnitY();
  w.names = {"D", "D2", "M1", "M2"};
  w.matrices = {d, conjugate(rotation_axis_angle(e1, M_PI / 2), d), conjugate(rotation_axis_angle(e1, M_PI / 4), d),
                // The circle about e2 passes through M2 at -pi/4 in this convention.
                conjugate(rotation_axis_angle(e2, -M_PI / 4), d)};
  const BigRational a(-1, 2), b(-3, 2), z(0), one(1);
  w.exact_rows = {rat_row({one, z, z, one, z, BigRational(-2)}), rat_row({one, z, z, BigRational(-2), z, one}),
                  rat_row({one, z, z, a, b, -a - 1}), rat_row({a, z, b, one, z, -a - 1})};
  finish_witness(w, tol);
  return w;
}

SingularityWitness embracing_plane_witness(double tol) {
  SingularityWitness w;
  const SymMatrixN d = diag_matrix({0, 0, 1});
  const SymMatrixN d3 = diag_matrix({1, 0, 0});
  const auto td = tangent_basis(d);
  const auto t3 = tangent_basis(d3);
  const Eigen::Vector3d e1 = Eigen::Vector3d::UnitX();
  const Eigen::Vector3d e2 = Eigen::Vector3d::UnitY();
  const SymMatrixN d2 = conjugate(rotation_axis_angle(e1, M_PI / 2), d);
  const SymMatrixN d3r = conjugate(rotation_axis_angle(e2, M_PI / 2), d);
  w.names = {"T1", "T2", "B", "D2'", "D3'"};
  // tangent_basis order: (1,2), (1,3), (2,3).
  w.matrices = {unit_direction(td[2]), unit_direction(td[1]), unit_direction(t3[0]), d2 - d, d3r - d};
  const BigRational z(0), one(1), m1(-1);
  w.exact_rows = {rat_row({z, z, z, z, one, z}), rat_row({z, z, one, z, z, z}), rat_row({z, one, z, z, z, z}),
                  rat_row({z, z, z, one, z, m1}), rat_row({one, z, z, z, z, m1})};
  finish_witness(w, tol);
  return w;
}

}  // namespace discvar
