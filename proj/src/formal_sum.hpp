// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "series.hpp"

namespace loopstar {

/// Multiset of canonical loops, kept sorted. The empty monomial is the
/// constant function 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Loop> loops, Convention convention = Convention::Oriented) {
    for (auto& l : loops) loops_.push_back(canonical(l, convention));
    std::sort(loops_.begin(), loops_.end());
  }

  const std::vector<Loop>& loops() const noexcept { return loops_; }
  std::size_t degree() const noexcept { return loops_.size(); }
  bool is_constant() const noexcept { return loops_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.loops_.reserve(a.loops_.size() + b.loops_.size());
    std::merge(a.loops_.begin(), a.loops_.end(), b.loops_.begin(), b.loops_.end(),
               std::back_inserter(m.loops_));
    return m;
  }

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Loop> loops_;
};

/// Finite linear combination of monomials with coefficients in Coeff
/// (Series for exact work, std::complex<double> for a fixed numeric β).
/// Zero coefficients are never stored.
template <class Coeff>
class FormalSum {
 public:
  using Map = std::map<Monomial, Coeff>;

  FormalSum() = default;
  FormalSum(const Monomial& m, const Coeff& c) { add(m, c); }

  void add(const Monomial& m, const Coeff& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  const Map& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  FormalSum& operator+=(const FormalSum& rhs) {
    for (const auto& [m, c] : rhs.terms_) add(m, c);
    return *this;
  }
  FormalSum& operator-=(const FormalSum& rhs) {
    for (const auto& [m, c] : rhs.terms_) add(m, -c);
    return *this;
  }
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }

  /// Pointwise product of functions: monomials multiply, coefficients multiply.
  friend FormalSum operator*(const FormalSum& a, const FormalSum& b) {
    FormalSum out;
    for (const auto& [m, c] : a.terms_)
      for (const auto& [n, d] : b.terms_) out.add(m * n, c * d);
    return out;
  }

  FormalSum scaled(const Coeff& k) const {
    FormalSum out;
    for (const auto& [m, c] : terms_) out.add(m, c * k);
    return out;
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using Out = decltype(f(std::declval<const Coeff&>()));
    FormalSum<Out> out;
    for (const auto& [m, c] : terms_) out.add(m, f(c));
    return out;
  }

  friend bool operator==(const FormalSum& a, const FormalSum& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

using SeriesSum = FormalSum<Series>;
using NumericSum = FormalSum<std::complex<double>>;

/// A single monomial with coefficient 1.
inline SeriesSum unit_sum(const Monomial& m, int order) { return SeriesSum(m, Series::one(order)); }

/// Slot k of every coefficient, kept in an order-`order` series at slot 0.
inline SeriesSum slot(const SeriesSum& s, int k, int order = 0) {
  return s.map_coeffs([&](const Series& c) {
    Series out(order);
    if (k <= c.order()) out[0] = c[k];
    return out;
  });
}

/// Lift numeric h-independent values: each series is replaced by its value at h = 2β.
NumericSum evaluate_coeffs(const SeriesSum& s, double beta);

// JSON / text I/O (formal_sum_io.cpp)
std::string to_json(const Diagram& d, const SeriesSum& s);
std::string to_json(const Diagram& d, const NumericSum& s);
SeriesSum series_sum_from_json(const Diagram& d, const std::string& text, int order);
std::string to_text(const Diagram& d, const SeriesSum& s);
std::string to_text(const Diagram& d, const NumericSum& s);
std::string monomial_text(const Diagram& d, const Monomial& m);

}  // namespace loopstar
