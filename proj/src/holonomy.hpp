// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coeff.hpp"
#include "diagram.hpp"
#include "formal_sum.hpp"

namespace loopstar {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;
using Rng = std::mt19937_64;

/// Random group element. SU(2) from unit quaternions, U(n) from the QR
/// factor of a complex Gaussian matrix, GL(n) as U·D·V with a random complex
/// diagonal D, SL(2) from Gaussian matrices rescaled to det 1.
Matrix sample(const GroupSpec& group, Rng& rng);

/// Membership up to `tol` (unitarity, determinant, reality as applicable).
bool in_group(const GroupSpec& group, const Matrix& u, double tol = 1e-10);

/// Matrices per arc of a diagram. Reversed steps use the inverse.
class HolonomyAssignment {
 public:
  HolonomyAssignment(GroupSpec group, std::vector<Matrix> arcs);

  static HolonomyAssignment random(const Diagram& d, const GroupSpec& group, Rng& rng);
  static HolonomyAssignment identity(const Diagram& d, const GroupSpec& group);

  const GroupSpec& group() const noexcept { return group_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  const Matrix& matrix(int arc) const;
  const Matrix& inverse(int arc) const;
  const Matrix& step_matrix(const Step& s) const { return s.reversed ? inverse(s.arc) : matrix(s.arc); }

 private:
  GroupSpec group_;
  std::vector<Matrix> arcs_;
  std::vector<Matrix> inverses_;
};

/// Ordered product of the step matrices of `loop` starting at steps[start].
Matrix based_holonomy(const Loop& loop, std::size_t start, const HolonomyAssignment& a);

/// tr of the holonomy around the loop; independent of the starting step.
Complex eval_wilson(const Loop& loop, const HolonomyAssignment& a);
Complex eval_monomial(const Monomial& m, const HolonomyAssignment& a);
Complex eval_formal(const NumericSum& s, const HolonomyAssignment& a);
/// Series coefficients evaluated as truncated polynomials at h = 2β.
Complex eval_formal(const SeriesSum& s, const HolonomyAssignment& a, double beta);

/// π: G → 𝔤. Identity for GL(n)/U(n); (U − U⁻¹)/2 for SU(2);
/// U − tr(U)/2 · I for SL(2,ℝ) and SL(2,ℂ).
Matrix projection_pi(const GroupSpec& group, const Matrix& u);

/// Basis {e_α} of a matrix Lie algebra with Gram matrix g_αβ = tr(e_α e_β).
struct LieBasis {
  std::vector<Matrix> elements;
  Matrix gram;
  Matrix gram_inverse;

  /// gl(n): E_ij; u(n): iE_jj, E_jk − E_kj, i(E_jk + E_kj); su(2): iσ;
  /// sl(2): {h, e, f}. Throws Error(Validation) if the Gram matrix is singular.
  static LieBasis standard(const GroupSpec& group);
  static LieBasis from_elements(std::vector<Matrix> elements);
};

/// Σ_αβ (g⁻¹)_αβ tr(U e_α) tr(V e_β).
Complex gram_pairing(const LieBasis& basis, const Matrix& u, const Matrix& v);

/// |gram_pairing(U, V) − tr(π(U) π(V))| with the standard basis.
double verify_gram_identity(const GroupSpec& group, const Matrix& u, const Matrix& v);
double verify_gram_identity(const GroupSpec& group, const LieBasis& basis, const Matrix& u, const Matrix& v);

enum class LatticeSite { Endpoint, Interior };

struct LatticeOptions {
  int segments = 64;
  /// Half-width of the box approximating the delta function.
  double step = 1e-4;
  LatticeSite site = LatticeSite::Interior;
  GroupSpec group = GroupSpec::su2();
  std::uint64_t seed = 1;
  bool flat = false;  // A ≡ 0
};

/// Piecewise-constant connection on N segments of [0, 1] (a circle for
/// Interior). Compares the derivative of tr hol (Interior) or of hol_[0,1]
/// at both ends (Endpoint) along a box bump in each basis direction with
/// tr(hol_t e_α), resp. ½ e_α hol and ½ hol e_α. Returns the largest
/// deviation. Throws Error(InvalidArgument) when segments < 2.
double lattice_derivative_check(const LatticeOptions& options);

std::string assignment_to_json(const Diagram& d, const HolonomyAssignment& a);
HolonomyAssignment assignment_from_json(const Diagram& d, const std::string& text);

}  // namespace loopstar
