// SPDX-License-Identifier: Apache-2.0
#include "series.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace loopstar {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, "empty rational");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw Error(ErrorKind::InvalidArgument, "malformed rational '" + text + "'");
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash))
    throw Error(ErrorKind::InvalidArgument, "malformed rational '" + text + "'");
  std::string body = text[0] == '+' ? text.substr(1) : text;
  Rational q;
  if (q.set_str(body, 10) != 0) throw Error(ErrorKind::InvalidArgument, "malformed rational '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Series::Series(int order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "series order must be >= 0");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, Rational(0));
}

Series::Series(int order, const Rational& constant) : Series(order) { coeffs_[0] = constant; }

Series::Series(int order, std::vector<Rational> coeffs) : Series(order) {
  const std::size_t n = std::min(coeffs.size(), coeffs_.size());
  for (std::size_t k = 0; k < n; ++k) coeffs_[k] = coeffs[k];
}

Series Series::h(int order) {
  Series s(order);
  if (order >= 1) s.coeffs_[1] = 1;
  return s;
}

Series Series::exp_linear(const Rational& c, int order) {
  Series s(order);
  Rational term = 1;
  for (int k = 0; k <= order; ++k) {
    s.coeffs_[static_cast<std::size_t>(k)] = term;
    term *= c;
    term /= k + 1;
  }
  return s;
}

bool Series::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

Series Series::truncated(int order) const {
  Series s(std::min(order, this->order()));
  for (int k = 0; k <= s.order(); ++k) s[k] = (*this)[k];
  return s;
}

Series& Series::operator+=(const Series& rhs) {
  if (rhs.order() < order()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Series& Series::operator-=(const Series& rhs) {
  if (rhs.order() < order()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  const int order = std::min(a.order(), b.order());
  Series out(order);
  for (int i = 0; i <= order; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b.coeffs_[j] == 0) continue;
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

Series& Series::operator*=(const Series& rhs) { return *this = *this * rhs; }

Series& Series::operator*=(const Rational& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

bool operator==(const Series& a, const Series& b) {
  const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& x = k < a.coeffs_.size() ? a.coeffs_[k] : Rational(0);
    const Rational& y = k < b.coeffs_.size() ? b.coeffs_[k] : Rational(0);
    if (x != y) return false;
  }
  return true;
}

std::complex<double> Series::eval_h(std::complex<double> h) const {
  // Horner
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * h + it->get_d();
  return acc;
}

std::vector<std::string> Series::to_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(to_string(c));
  return out;
}

std::string Series::pretty() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k >= 1) {
      if (mag != 1) os << " ";
      os << "h";
      if (k >= 2) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace loopstar
