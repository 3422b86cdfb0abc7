// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <string>

#include "series.hpp"

namespace loopstar {

enum class GroupKind { SU2, SL2R, SL2C, GLn, Un };

/// Gauge group and matrix size of the defining representation. The rank-2
/// kinds always have n == 2.
struct GroupSpec {
  GroupKind kind = GroupKind::SU2;
  int n = 2;

  static GroupSpec su2() { return {GroupKind::SU2, 2}; }
  static GroupSpec sl2r() { return {GroupKind::SL2R, 2}; }
  static GroupSpec sl2c() { return {GroupKind::SL2C, 2}; }
  static GroupSpec gln(int n) { return {GroupKind::GLn, n}; }
  static GroupSpec un(int n) { return {GroupKind::Un, n}; }

  /// Throws Error(UnsupportedGroup) for n < 1, or n != 2 on a rank-2 kind.
  void validate() const;
  /// SU2, SL2R and SL2C share crossing coefficients and the sl(2) projection.
  bool is_rank_two() const { return kind == GroupKind::SU2 || kind == GroupKind::SL2R || kind == GroupKind::SL2C; }
  /// n²/4 + 2 for GLn/Un, 3 for the rank-2 kinds.
  Rational delta() const;
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Accepts "su2", "sl2r", "sl2c", "gln", "un" (case-insensitive).
GroupSpec parse_group(const std::string& name, int n);

enum class CrossingType { Over, Under };

std::string to_string(CrossingType t);

/// Coefficients of the untouched (virtual) term and of the oriented smoothing
/// in the resolution of one crossing.
struct CrossingCoeffs {
  Series c_virtual;
  Series c_smooth;
};

struct CrossingValues {
  std::complex<double> c_virtual;
  std::complex<double> c_smooth;
};

enum class HyperbolicKind { CoshScaled, SinhOverRoot };

/// Taylor series in h of cosh(β√Δ) or sinh(β√Δ)/√Δ at β = h/2. Only even
/// powers of √Δ occur, so the coefficients are rational. Rejects order < 1.
Series series_hyperbolic(HyperbolicKind kind, const Rational& delta, int order);

CrossingCoeffs crossing_coeffs(const GroupSpec& group, CrossingType type, int order);

/// Closed-form coefficients at coupling β (hyperbolic functions evaluated
/// directly).
CrossingValues crossing_values(const GroupSpec& group, CrossingType type, double beta);

/// Truncated polynomial evaluated at h = 2β.
std::complex<double> eval_at(const Series& c, double beta);

/// Unoriented (Kauffman-normalized) coefficients a, b for the rank-2 groups.
struct KauffmanCoeffs {
  Series a;
  Series b;
};
struct KauffmanValues {
  std::complex<double> a;
  std::complex<double> b;
};
KauffmanCoeffs kauffman_coeffs(int order);
KauffmanValues kauffman_values(double beta);

/// 2x2 rational matrix acting on (virtual, smooth) coefficient pairs:
/// f' = a f + c g, g' = b f + d g (derivatives in β).
struct Generator {
  Rational a, b, c, d;
  friend bool operator==(const Generator&, const Generator&) = default;
};

Generator derived_generator(const GroupSpec& group, CrossingType type = CrossingType::Over);

/// First column of exp(βM) with β = h/2, computed as a matrix power series.
CrossingCoeffs generator_exponential(const Generator& m, int order);

/// Closed forms of (c_virtual, c_smooth) as text in beta, e.g.
/// "cosh(sqrt(3) beta) - sinh(sqrt(3) beta)/sqrt(3)".
std::array<std::string, 2> closed_form_text(const GroupSpec& group, CrossingType type);

/// {group, type, K, virtual: [...], smooth: [...]} as a JSON string.
std::string coeff_table_json(const GroupSpec& group, CrossingType type, int order);

}  // namespace loopstar
