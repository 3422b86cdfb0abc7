// SPDX-License-Identifier: Apache-2.0
#include "coeff.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

#include "error.hpp"

namespace loopstar {

void GroupSpec::validate() const {
  if (is_rank_two() && n != 2)
    throw Error(ErrorKind::UnsupportedGroup, name() + " requires n = 2");
  if (n < 1) throw Error(ErrorKind::UnsupportedGroup, "matrix size must be >= 1");
  if (n > 16) throw Error(ErrorKind::UnsupportedGroup, "matrix size above 16 is not supported");
}

Rational GroupSpec::delta() const {
  if (is_rank_two()) return 3;
  Rational d(n * n, 4);
  d.canonicalize();
  return d + 2;
}

std::string GroupSpec::name() const {
  switch (kind) {
    case GroupKind::SU2: return "su2";
    case GroupKind::SL2R: return "sl2r";
    case GroupKind::SL2C: return "sl2c";
    case GroupKind::GLn: return "gln";
    case GroupKind::Un: return "un";
  }
  return "?";
}

GroupSpec parse_group(const std::string& name, int n) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  GroupSpec g;
  if (lower == "su2") g = GroupSpec::su2();
  else if (lower == "sl2r") g = GroupSpec::sl2r();
  else if (lower == "sl2c") g = GroupSpec::sl2c();
  else if (lower == "gln") g = GroupSpec::gln(n);
  else if (lower == "un") g = GroupSpec::un(n);
  else throw Error(ErrorKind::UnsupportedGroup, "unknown group '" + name + "'");
  g.validate();
  return g;
}

std::string to_string(CrossingType t) { return t == CrossingType::Over ? "over" : "under"; }

Series series_hyperbolic(HyperbolicKind kind, const Rational& delta, int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "series order must be >= 1");
  if (delta <= 0) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
  // cosh(x√Δ) = Σ Δ^m x^{2m}/(2m)!,  sinh(x√Δ)/√Δ = Σ Δ^m x^{2m+1}/(2m+1)!,  x = h/2
  Series s(order);
  const int start = kind == HyperbolicKind::CoshScaled ? 0 : 1;
  Rational delta_pow = 1;
  for (int k = start; k <= order; k += 2) {
    Rational term = delta_pow;
    for (int j = 1; j <= k; ++j) term /= 2 * j;  // (1/2)^k / k!
    s[k] = term;
    delta_pow *= delta;
  }
  return s;
}

namespace {

CrossingCoeffs constant_coeffs(int order) { return {Series::one(order), Series::zero(order)}; }

double delta_d(const GroupSpec& g) { return g.delta().get_d(); }

}  // namespace

CrossingCoeffs crossing_coeffs(const GroupSpec& group, CrossingType type, int order) {
  group.validate();
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "series order must be >= 0");
  if (order == 0) return constant_coeffs(0);
  const Rational delta = group.delta();
  const Series ch = series_hyperbolic(HyperbolicKind::CoshScaled, delta, order);
  const Series sh = series_hyperbolic(HyperbolicKind::SinhOverRoot, delta, order);
  const Rational sign = type == CrossingType::Over ? 1 : -1;
  if (group.is_rank_two()) {
    return {ch - sign * sh, sign * Rational(2) * sh};
  }
  // e^{±βn/2} framing factor, β = h/2
  Rational half_n(group.n, 2);
  half_n.canonicalize();
  Rational rate(group.n, 4);
  rate.canonicalize();
  const Series framing = Series::exp_linear(sign * rate, order);
  return {framing * (ch - sign * half_n * sh), framing * (sign * Rational(2) * sh)};
}

CrossingValues crossing_values(const GroupSpec& group, CrossingType type, double beta) {
  group.validate();
  const double delta = delta_d(group);
  const double root = std::sqrt(delta);
  const double ch = std::cosh(beta * root);
  const double sh = std::sinh(beta * root) / root;
  const double sign = type == CrossingType::Over ? 1.0 : -1.0;
  if (group.is_rank_two()) return {ch - sign * sh, sign * 2.0 * sh};
  const double n = group.n;
  const double framing = std::exp(sign * beta * n / 2.0);
  return {framing * (ch - sign * (n / 2.0) * sh), framing * sign * 2.0 * sh};
}

std::complex<double> eval_at(const Series& c, double beta) { return c.eval_h(2.0 * beta); }

KauffmanCoeffs kauffman_coeffs(int order) {
  if (order == 0) return {Series(0, Rational(-1)), Series(0, Rational(-1))};
  const Series ch = series_hyperbolic(HyperbolicKind::CoshScaled, 3, order);
  const Series sh = series_hyperbolic(HyperbolicKind::SinhOverRoot, 3, order);
  return {-ch - sh, -ch + sh};
}

KauffmanValues kauffman_values(double beta) {
  const double root = std::sqrt(3.0);
  const double ch = std::cosh(root * beta);
  const double sh = std::sinh(root * beta) / root;
  return {-ch - sh, -ch + sh};
}

Generator derived_generator(const GroupSpec& group, CrossingType type) {
  group.validate();
  Generator m = group.is_rank_two() ? Generator{-1, 2, 1, 1} : Generator{0, 2, 1, group.n};
  if (type == CrossingType::Under) m = Generator{-m.a, -m.b, -m.c, -m.d};
  return m;
}

CrossingCoeffs generator_exponential(const Generator& m, int order) {
  // v_{k+1} = (β M) v_k / (k+1) with β = h/2, starting from v_0 = (1, 0)
  Series f = Series::one(order);
  Series g = Series::zero(order);
  Rational vf = 1, vg = 0;
  for (int k = 1; k <= order; ++k) {
    Rational nf = (m.a * vf + m.c * vg) / (2 * k);
    Rational ng = (m.b * vf + m.d * vg) / (2 * k);
    vf = nf;
    vg = ng;
    f[k] = vf;
    g[k] = vg;
  }
  return {f, g};
}

std::array<std::string, 2> closed_form_text(const GroupSpec& group, CrossingType type) {
  group.validate();
  const bool over = type == CrossingType::Over;
  const std::string root = "sqrt(" + to_string(group.delta()) + ")";
  const std::string ch = "cosh(" + root + " beta)";
  const std::string sh = "sinh(" + root + " beta)/" + root;
  if (group.is_rank_two())
    return {ch + (over ? " - " : " + ") + sh, std::string(over ? "" : "-") + "2 " + sh};
  const std::string n = std::to_string(group.n);
  const std::string frame = "e^(" + std::string(over ? "" : "-") + n + " beta/2)";
  return {frame + " (" + ch + (over ? " - " : " + ") + "(" + n + "/2) " + sh + ")",
          frame + " " + (over ? "" : "-") + "2 " + sh};
}

std::string coeff_table_json(const GroupSpec& group, CrossingType type, int order) {
  const CrossingCoeffs cc = crossing_coeffs(group, type, order);
  nlohmann::ordered_json j;
  j["group"] = group.name();
  if (!group.is_rank_two()) j["n"] = group.n;
  j["type"] = to_string(type);
  j["K"] = order;
  j["virtual"] = cc.c_virtual.to_strings();
  j["smooth"] = cc.c_smooth.to_strings();
  return j.dump();
}

}  // namespace loopstar
