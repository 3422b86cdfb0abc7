// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace loopstar {

using Rational = mpq_class;

inline constexpr int kDefaultOrder = 8;

/// p/q in lowest terms (mpq_class(p, q) alone does not reduce).
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p"; throws Error(InvalidArgument) on malformed input.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Truncated power series c_0 + c_1 h + ... + c_K h^K with exact rational
/// coefficients. Arithmetic between series of different orders truncates to
/// the smaller order.
class Series {
 public:
  Series() : Series(kDefaultOrder) {}
  explicit Series(int order);
  Series(int order, const Rational& constant);
  Series(int order, std::vector<Rational> coeffs);

  static Series zero(int order) { return Series(order); }
  static Series one(int order) { return Series(order, Rational(1)); }
  /// The monomial h (zero when order == 0).
  static Series h(int order);
  /// e^{c h} truncated at the given order.
  static Series exp_linear(const Rational& c, int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Rational& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const;
  Series truncated(int order) const;

  Series& operator+=(const Series& rhs);
  Series& operator-=(const Series& rhs);
  Series& operator*=(const Series& rhs);
  Series& operator*=(const Rational& rhs);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Rational& b) { return a *= b; }
  friend Series operator*(const Rational& b, Series a) { return a *= b; }
  Series operator-() const;

  friend bool operator==(const Series& a, const Series& b);

  /// Value of the truncated polynomial at a numeric h.
  std::complex<double> eval_h(std::complex<double> h) const;

  std::vector<std::string> to_strings() const;
  /// Human-readable form such as "1 - 1/2 h + 3/8 h^2".
  std::string pretty() const;

 private:
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const Series& s) { return s.is_zero(); }
inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>(0.0, 0.0); }

}  // namespace loopstar
