// SPDX-License-Identifier: Apache-2.0
#include "holonomy.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"

namespace loopstar {

namespace {

constexpr Complex kI(0.0, 1.0);

Matrix gaussian(int n, Rng& rng, bool complex_entries) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = complex_entries ? normal(rng) : 0.0;
      m(i, j) = Complex(re, im);
    }
  return m;
}

Matrix haar_unitary(int n, Rng& rng) {
  const Matrix z = gaussian(n, rng, true);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

Matrix pauli(int k) {
  Matrix m = Matrix::Zero(2, 2);
  switch (k) {
    case 0: m(0, 1) = 1; m(1, 0) = 1; break;
    case 1: m(0, 1) = -kI; m(1, 0) = kI; break;
    default: m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

Matrix elementary(int n, int i, int j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1;
  return m;
}

}  // namespace

Matrix sample(const GroupSpec& group, Rng& rng) {
  group.validate();
  const int n = group.n;
  switch (group.kind) {
    case GroupKind::SU2: {
      std::normal_distribution<double> normal(0.0, 1.0);
      double q[4];
      double norm = 0;
      for (double& x : q) {
        x = normal(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (double& x : q) x /= norm;
      Matrix u(2, 2);
      u << Complex(q[0], q[1]), Complex(q[2], q[3]), Complex(-q[2], q[3]), Complex(q[0], -q[1]);
      return u;
    }
    case GroupKind::Un:
      return haar_unitary(n, rng);
    case GroupKind::GLn: {
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
      const Matrix u = haar_unitary(n, rng);
      const Matrix v = haar_unitary(n, rng);
      Matrix d = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) d(i, i) = std::polar(std::exp(0.4 * normal(rng)), phase(rng));
      return u * d * v;
    }
    case GroupKind::SL2R: {
      Matrix m = gaussian(2, rng, false);
      double det = m.determinant().real();
      while (std::abs(det) < 1e-3) {
        m = gaussian(2, rng, false);
        det = m.determinant().real();
      }
      if (det < 0) {
        m.row(0) *= -1.0;
        det = -det;
      }
      return m / std::sqrt(det);
    }
    case GroupKind::SL2C: {
      Matrix m = gaussian(2, rng, true);
      Complex det = m.determinant();
      while (std::abs(det) < 1e-3) {
        m = gaussian(2, rng, true);
        det = m.determinant();
      }
      return m / std::sqrt(det);
    }
  }
  throw Error(ErrorKind::UnsupportedGroup, "unsupported group");
}

bool in_group(const GroupSpec& group, const Matrix& u, double tol) {
  const int n = group.n;
  if (u.rows() != n || u.cols() != n) return false;
  const Complex det = u.determinant();
  const Matrix id = Matrix::Identity(n, n);
  switch (group.kind) {
    case GroupKind::SU2:
      return std::abs(det - 1.0) < tol && (u.adjoint() * u - id).norm() < tol;
    case GroupKind::Un:
      return (u.adjoint() * u - id).norm() < tol;
    case GroupKind::GLn:
      return std::abs(det) > tol;
    case GroupKind::SL2R:
      return std::abs(det - 1.0) < tol && u.imag().norm() < tol;
    case GroupKind::SL2C:
      return std::abs(det - 1.0) < tol;
  }
  return false;
}

// --- assignments -----------------------------------------------------------

HolonomyAssignment::HolonomyAssignment(GroupSpec group, std::vector<Matrix> arcs)
    : group_(group), arcs_(std::move(arcs)) {
  group_.validate();
  inverses_.reserve(arcs_.size());
  for (const auto& m : arcs_) {
    if (m.rows() != group_.n || m.cols() != group_.n)
      throw Error(ErrorKind::InvalidArgument, "arc matrix has the wrong size");
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) throw Error(ErrorKind::InvalidArgument, "arc matrix is not invertible");
    inverses_.push_back(lu.inverse());
  }
}

HolonomyAssignment HolonomyAssignment::random(const Diagram& d, const GroupSpec& group, Rng& rng) {
  std::vector<Matrix> arcs;
  arcs.reserve(d.arcs().size());
  for (std::size_t i = 0; i < d.arcs().size(); ++i) arcs.push_back(sample(group, rng));
  return HolonomyAssignment(group, std::move(arcs));
}

HolonomyAssignment HolonomyAssignment::identity(const Diagram& d, const GroupSpec& group) {
  return HolonomyAssignment(group, std::vector<Matrix>(d.arcs().size(), Matrix::Identity(group.n, group.n)));
}

const Matrix& HolonomyAssignment::matrix(int arc) const {
  if (arc < 0 || static_cast<std::size_t>(arc) >= arcs_.size())
    throw Error(ErrorKind::MissingArc, "no matrix assigned to arc " + std::to_string(arc));
  return arcs_[static_cast<std::size_t>(arc)];
}

const Matrix& HolonomyAssignment::inverse(int arc) const {
  if (arc < 0 || static_cast<std::size_t>(arc) >= inverses_.size())
    throw Error(ErrorKind::MissingArc, "no matrix assigned to arc " + std::to_string(arc));
  return inverses_[static_cast<std::size_t>(arc)];
}

Matrix based_holonomy(const Loop& loop, std::size_t start, const HolonomyAssignment& a) {
  const int n = a.group().n;
  Matrix acc = Matrix::Identity(n, n);
  const std::size_t len = loop.steps.size();
  for (std::size_t i = 0; i < len; ++i) acc = acc * a.step_matrix(loop.steps[(start + i) % len]);
  return acc;
}

Complex eval_wilson(const Loop& loop, const HolonomyAssignment& a) {
  return based_holonomy(loop, 0, a).trace();
}

Complex eval_monomial(const Monomial& m, const HolonomyAssignment& a) {
  Complex v = 1.0;
  for (const auto& loop : m.loops()) v *= eval_wilson(loop, a);
  return v;
}

Complex eval_formal(const NumericSum& s, const HolonomyAssignment& a) {
  Complex total = 0.0;
  for (const auto& [m, c] : s.terms()) total += c * eval_monomial(m, a);
  return total;
}

Complex eval_formal(const SeriesSum& s, const HolonomyAssignment& a, double beta) {
  return eval_formal(evaluate_coeffs(s, beta), a);
}

// --- projections and bases -------------------------------------------------

Matrix projection_pi(const GroupSpec& group, const Matrix& u) {
  group.validate();
  switch (group.kind) {
    case GroupKind::GLn:
    case GroupKind::Un:
      return u;
    case GroupKind::SU2:
      return 0.5 * (u - u.inverse());
    case GroupKind::SL2R:
    case GroupKind::SL2C:
      return u - 0.5 * u.trace() * Matrix::Identity(2, 2);
  }
  throw Error(ErrorKind::UnsupportedGroup, "unsupported group");
}

LieBasis LieBasis::from_elements(std::vector<Matrix> elements) {
  const auto dim = static_cast<Eigen::Index>(elements.size());
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = (elements[i] * elements[j]).trace();
  Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) throw Error(ErrorKind::Validation, "singular Gram matrix");
  LieBasis b;
  b.elements = std::move(elements);
  b.gram = g;
  b.gram_inverse = lu.inverse();
  return b;
}

LieBasis LieBasis::standard(const GroupSpec& group) {
  group.validate();
  const int n = group.n;
  std::vector<Matrix> e;
  switch (group.kind) {
    case GroupKind::GLn:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e.push_back(elementary(n, i, j));
      break;
    case GroupKind::Un:
      for (int j = 0; j < n; ++j) e.push_back(kI * elementary(n, j, j));
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          e.push_back(elementary(n, j, k) - elementary(n, k, j));
          e.push_back(kI * (elementary(n, j, k) + elementary(n, k, j)));
        }
      break;
    case GroupKind::SU2:
      for (int k = 0; k < 3; ++k) e.push_back(kI * pauli(k));
      break;
    case GroupKind::SL2R:
    case GroupKind::SL2C:
      e.push_back(pauli(2));             // h
      e.push_back(elementary(2, 0, 1));  // e
      e.push_back(elementary(2, 1, 0));  // f
      break;
  }
  return from_elements(std::move(e));
}

Complex gram_pairing(const LieBasis& basis, const Matrix& u, const Matrix& v) {
  const std::size_t dim = basis.elements.size();
  std::vector<Complex> tu(dim), tv(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    tu[a] = (u * basis.elements[a]).trace();
    tv[a] = (v * basis.elements[a]).trace();
  }
  Complex total = 0.0;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      total += basis.gram_inverse(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * tu[a] * tv[b];
  return total;
}

double verify_gram_identity(const GroupSpec& group, const LieBasis& basis, const Matrix& u, const Matrix& v) {
  const Complex lhs = gram_pairing(basis, u, v);
  const Complex rhs = (projection_pi(group, u) * projection_pi(group, v)).trace();
  return std::abs(lhs - rhs);
}

double verify_gram_identity(const GroupSpec& group, const Matrix& u, const Matrix& v) {
  return verify_gram_identity(group, LieBasis::standard(group), u, v);
}

// --- lattice functional derivative -----------------------------------------

namespace {

struct Lattice {
  std::vector<Matrix> field;  // constant Lie-algebra value per segment
  int n = 2;

  // Ordered holonomy over [from, to] ⊆ [0, 1] with a box perturbation of
  // total mass `mass` in direction `dir` supported on [lo, hi].
  Matrix holonomy(double from, double to, double lo, double hi, double mass, const Matrix& dir) const {
    const int segments = static_cast<int>(field.size());
    std::vector<double> cuts{from, to};
    for (int k = 1; k < segments; ++k) cuts.push_back(static_cast<double>(k) / segments);
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    Matrix acc = Matrix::Identity(n, n);
    const double height = hi > lo ? mass / (hi - lo) : 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double x = std::max(cuts[i], from);
      const double y = std::min(cuts[i + 1], to);
      if (y <= x) continue;
      const double mid = 0.5 * (x + y);
      const int seg = std::clamp(static_cast<int>(mid * segments), 0, segments - 1);
      Matrix gen = field[static_cast<std::size_t>(seg)];
      if (mid > lo && mid < hi) gen += height * dir;
      acc = acc * Matrix((gen * (y - x)).exp());
    }
    return acc;
  }
};

}  // namespace

double lattice_derivative_check(const LatticeOptions& options) {
  if (options.segments < 2) throw Error(ErrorKind::InvalidArgument, "lattice needs at least 2 segments");
  if (!(options.step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  const LieBasis basis = LieBasis::standard(options.group);
  Rng rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Lattice lat;
  lat.n = options.group.n;
  for (int k = 0; k < options.segments; ++k) {
    Matrix a = Matrix::Zero(lat.n, lat.n);
    if (!options.flat)
      for (const auto& e : basis.elements) a += normal(rng) * e;
    lat.field.push_back(a);
  }
  const double w = options.step;
  const double ds = 1e-7;
  double worst = 0.0;
  const Matrix zero = Matrix::Zero(lat.n, lat.n);

  if (options.site == LatticeSite::Interior) {
    const double c = (options.segments / 3 + 0.5) / options.segments;
    if (w >= std::min(c, 1.0 - c)) throw Error(ErrorKind::InvalidArgument, "step too large for the lattice");
    const Matrix hol_at_c = lat.holonomy(c, 1.0, 0, 0, 0, zero) * lat.holonomy(0.0, c, 0, 0, 0, zero);
    for (const auto& e : basis.elements) {
      const Complex plus = lat.holonomy(0.0, 1.0, c - w, c + w, ds, e).trace();
      const Complex minus = lat.holonomy(0.0, 1.0, c - w, c + w, -ds, e).trace();
      const Complex fd = (plus - minus) / (2.0 * ds);
      const Complex expected = (hol_at_c * e).trace();
      worst = std::max(worst, std::abs(fd - expected));
    }
    return worst;
  }

  if (w >= 0.5) throw Error(ErrorKind::InvalidArgument, "step too large for the lattice");
  const Matrix hol = lat.holonomy(0.0, 1.0, 0, 0, 0, zero);
  for (const auto& e : basis.elements) {
    // bump centred at t = 0: only the half on [0, w] lies on the path
    const Matrix p0 = lat.holonomy(0.0, 1.0, -w, w, ds, e);
    const Matrix m0 = lat.holonomy(0.0, 1.0, -w, w, -ds, e);
    const Matrix fd0 = (p0 - m0) / (2.0 * ds);
    worst = std::max(worst, (fd0 - 0.5 * e * hol).cwiseAbs().maxCoeff());
    // centred at t = 1
    const Matrix p1 = lat.holonomy(0.0, 1.0, 1.0 - w, 1.0 + w, ds, e);
    const Matrix m1 = lat.holonomy(0.0, 1.0, 1.0 - w, 1.0 + w, -ds, e);
    const Matrix fd1 = (p1 - m1) / (2.0 * ds);
    worst = std::max(worst, (fd1 - 0.5 * hol * e).cwiseAbs().maxCoeff());
  }
  return worst;
}

// --- JSON ------------------------------------------------------------------

std::string assignment_to_json(const Diagram& d, const HolonomyAssignment& a) {
  nlohmann::ordered_json j;
  j["group"] = a.group().name();
  j["n"] = a.group().n;
  nlohmann::ordered_json arcs = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < d.arcs().size(); ++i) {
    const Matrix& m = a.matrix(static_cast<int>(i));
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
    arcs[d.arcs()[i].name] = std::move(entries);
  }
  j["arcs"] = std::move(arcs);
  return j.dump();
}

HolonomyAssignment assignment_from_json(const Diagram& d, const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const GroupSpec group = parse_group(j.at("group").get<std::string>(), j.value("n", 2));
    const int n = group.n;
    std::vector<Matrix> arcs;
    for (const auto& arc : d.arcs()) {
      if (!j.at("arcs").contains(arc.name))
        throw Error(ErrorKind::MissingArc, "assignment has no matrix for arc " + arc.name);
      const auto& entries = j.at("arcs").at(arc.name);
      if (entries.size() != static_cast<std::size_t>(n * n))
        throw Error(ErrorKind::InvalidArgument, "arc " + arc.name + ": expected " + std::to_string(n * n) + " entries");
      Matrix m(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          const auto& z = entries.at(static_cast<std::size_t>(r * n + c));
          m(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
      arcs.push_back(std::move(m));
    }
    return HolonomyAssignment(group, std::move(arcs));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("assignment JSON: ") + e.what());
  }
}

}  // namespace loopstar
