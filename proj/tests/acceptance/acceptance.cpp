// One PASS/FAIL line per acceptance criterion. Every reference value is
// computed here, independently of the library code under test.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coeff.hpp"
#include "goldman.hpp"
#include "holonomy.hpp"
#include "random_diagram.hpp"
#include "star.hpp"

using namespace loopstar;

namespace {

constexpr int K = 8;

struct Outcome {
  bool passed = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed = passed && ok;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Rational factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Rational power(const Rational& x, int k) {
  Rational p(1);
  for (int i = 0; i < k; ++i) p *= x;
  return p;
}

// Taylor coefficients in h of cosh(x) ∓ sinh(x)/√3 and 2 sinh(x)/√3 at
// x = √3 h/2; the sign flips for an under-crossing.
CrossingCoeffs su2_taylor(CrossingType type) {
  const int sign = type == CrossingType::Over ? 1 : -1;
  CrossingCoeffs c{Series(K), Series(K)};
  for (int k = 0; k <= K; ++k) {
    const Rational q = power(Rational(3, 4), k / 2);
    if (k % 2 == 0) {
      c.c_virtual[k] = q / factorial(k);
    } else {
      c.c_virtual[k] = -sign * q / (2 * factorial(k));
      c.c_smooth[k] = sign * q / factorial(k);
    }
  }
  return c;
}

Series exp_series(const Rational& a) {
  Series s(K);
  for (int k = 0; k <= K; ++k) s[k] = power(a, k) / factorial(k);
  return s;
}

// First column of exp(βM), β = h/2, as a rational matrix power series.
CrossingCoeffs matrix_exponential(const Generator& m) {
  CrossingCoeffs c{Series(K), Series(K)};
  Rational x(1), y(0);  // (M/2)^k e_1 / k!
  for (int k = 0; k <= K; ++k) {
    c.c_virtual[k] = x;
    c.c_smooth[k] = y;
    const Rational nx = (m.a * x + m.c * y) / (2 * (k + 1));
    const Rational ny = (m.b * x + m.d * y) / (2 * (k + 1));
    x = nx;
    y = ny;
  }
  return c;
}

std::vector<Matrix> basis_for(const GroupSpec& g) {
  const Complex i(0, 1);
  auto m2 = [](Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
  };
  if (g.kind == GroupKind::SU2) return {m2(0, i, i, 0), m2(0, 1, -1, 0), m2(i, 0, 0, -i)};
  if (g.is_rank_two()) return {m2(1, 0, 0, -1), m2(0, 1, 0, 0), m2(0, 0, 1, 0)};
  std::vector<Matrix> out;
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      Matrix e = Matrix::Zero(g.n, g.n);
      e(a, b) = 1;
      out.push_back(e);
    }
  return out;
}

// Σ (G⁻¹)_αβ tr(U e_α) tr(V e_β) with G_αβ = tr(e_α e_β).
Complex pairing(const std::vector<Matrix>& basis, const Matrix& u, const Matrix& v) {
  const int k = static_cast<int>(basis.size());
  Matrix gram(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) gram(a, b) = (basis[a] * basis[b]).trace();
  const Matrix inv = gram.inverse();
  Complex total = 0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) total += inv(a, b) * (u * basis[a]).trace() * (v * basis[b]).trace();
  return total;
}

Matrix pi(const GroupSpec& g, const Matrix& u) {
  if (!g.is_rank_two()) return u;
  return u - 0.5 * u.trace() * Matrix::Identity(2, 2);
}

// Per-point bracket: Σ_p ε_p ⟨hol_p C, hol_p C′⟩.
Complex direct_bracket(const Diagram& d, const Loop& c, const Loop& c2, const HolonomyAssignment& a,
                       const GroupSpec& g) {
  const auto basis = basis_for(g);
  Complex total = 0;
  for (const auto& pc : d.passes(c))
    for (const auto& pc2 : d.passes(c2)) {
      if (pc.pass.point != pc2.pass.point) continue;
      const Matrix hu = based_holonomy(c, (pc.position + 1) % c.size(), a);
      const Matrix hv = based_holonomy(c2, (pc2.position + 1) % c2.size(), a);
      total += static_cast<double>(d.pair_sign(pc.pass, pc2.pass)) * pairing(basis, hu, hv);
    }
  return total;
}

SeriesSum single(const Diagram& d, int curve, int order) { return unit_sum(Monomial({d.curve_loop(curve)}), order); }

NumericSum numeric_single(const Diagram& d, int curve) { return NumericSum(Monomial({d.curve_loop(curve)}), 1.0); }

Outcome single_crossing() {
  Outcome o;
  for (auto type : {CrossingType::Over, CrossingType::Under}) {
    const CrossingCoeffs want = su2_taylor(type);
    const CrossingCoeffs got = crossing_coeffs(GroupSpec::su2(), type, K);
    o.require(got.c_virtual == want.c_virtual && got.c_smooth == want.c_smooth,
              "series differ from the Taylor oracle (" + to_string(type) + ")");
  }
  const double r3 = std::sqrt(3.0);
  double worst = 0;
  for (double beta : {0.1, 1.0}) {
    const CrossingValues v = crossing_values(GroupSpec::su2(), CrossingType::Over, beta);
    const double x = r3 * beta;
    worst = std::max(worst, std::abs(v.c_virtual - (std::cosh(x) - std::sinh(x) / r3)));
    worst = std::max(worst, std::abs(v.c_smooth - 2 * std::sinh(x) / r3));
  }
  o.require(worst < 1e-12, "closed form off by " + fmt(worst));

  const Diagram d = Diagram::parse("point p +\ncurve C level 1: p\ncurve D level 0: p\n");
  const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
  const CrossingCoeffs t = su2_taylor(CrossingType::Over);
  SeriesSum want;
  want.add(Monomial({c, c2}), t.c_virtual);
  want.add(Monomial({concat_at(d, c, c2, 0)}), t.c_smooth);
  o.require(star(d, single(d, 0, K), single(d, 1, K), GroupSpec::su2(), K) == want, "W_C * W_D differs");
  if (o.passed) o.detail = "K=8 exact, closed form within " + fmt(worst);
  return o;
}

Outcome poisson_limit() {
  Outcome o;
  Rng rng(2024);
  const std::vector<GroupSpec> groups{GroupSpec::gln(1), GroupSpec::gln(2), GroupSpec::gln(3), GroupSpec::un(2),
                                      GroupSpec::su2(),  GroupSpec::sl2r(), GroupSpec::sl2c()};
  int cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Diagram d(random_diagram_spec(rng, {4, 2, 1, 1}));
    // h-independent inputs kept at order 1
    const SeriesSum f = slot(random_polynomial(d, {0, 1}, rng, 1), 0, 1);
    const SeriesSum g = slot(random_polynomial(d, {2, 3}, rng, 1), 0, 1);
    for (const auto& grp : groups) {
      const SeriesSum s = star(d, f, g, grp, 1);
      o.require(slot(s, 0) == slot(f * g, 0), "h^0 slot is not f g for " + grp.name());
      o.require(slot(s, 1) == slot(bracket_poly(d, f, g, grp), 0), "h^1 slot differs from the bracket for " + grp.name());
      ++cases;
    }
  }
  if (o.passed) o.detail = std::to_string(cases) + " cases (20 diagrams x 7 groups), zero residual";
  return o;
}

Outcome associativity() {
  Outcome o;
  Rng rng(77);
  double worst = 0;
  int triples = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const Diagram d(random_diagram_spec(rng, {3, 2, 1, 1}));
    for (const auto& g : {GroupSpec::su2(), GroupSpec::gln(2)}) {
      const SeriesSum u = random_polynomial(d, {0}, rng, K), v = random_polynomial(d, {1}, rng, K),
                      w = random_polynomial(d, {2}, rng, K);
      const SeriesSum lhs = star(d, star(d, u, v, g, K), w, g, K);
      const SeriesSum rhs = star(d, u, star(d, v, w, g, K), g, K);
      o.require((lhs - rhs).empty(), "symbolic nestings differ for " + g.name());
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      const NumericSum x = numeric_single(d, 0), y = numeric_single(d, 1), z = numeric_single(d, 2);
      for (double beta : {0.01, 0.1, 0.5}) {
        const Complex l = eval_formal(star(d, star(d, x, y, g, beta), z, g, beta), a);
        const Complex r = eval_formal(star(d, x, star(d, y, z, g, beta), g, beta), a);
        worst = std::max(worst, std::abs(l - r));
      }
      ++triples;
    }
  }
  o.require(worst < 1e-9, "numeric nestings differ by " + fmt(worst));
  if (o.passed) o.detail = std::to_string(triples) + " triples exact, numeric max " + fmt(worst);
  return o;
}

Outcome trace_identities() {
  Outcome o;
  Rng rng(5);
  double worst = 0, worst_lib = 0, worst_sl2 = 0;
  const std::vector<GroupSpec> groups{GroupSpec::gln(1), GroupSpec::gln(2), GroupSpec::gln(3),
                                      GroupSpec::gln(4), GroupSpec::su2(),  GroupSpec::sl2r()};
  for (const auto& g : groups) {
    const auto basis = basis_for(g);
    for (int i = 0; i < 1000; ++i) {
      const Matrix u = sample(g, rng), v = sample(g, rng);
      worst = std::max(worst, std::abs(pairing(basis, u, v) - (pi(g, u) * pi(g, v)).trace()));
      worst = std::max(worst, (projection_pi(g, u) - pi(g, u)).norm());
      worst_lib = std::max(worst_lib, verify_gram_identity(g, u, v));
      if (g.is_rank_two())
        worst_sl2 =
            std::max(worst_sl2, std::abs((u * v).trace() + (u * v.inverse()).trace() - u.trace() * v.trace()));
    }
  }
  o.require(worst < 1e-9, "oracle residual " + fmt(worst));
  o.require(worst_lib < 1e-9, "library residual " + fmt(worst_lib));
  o.require(worst_sl2 < 1e-10, "SL(2) trace identity residual " + fmt(worst_sl2));
  if (o.passed)
    o.detail = "6000 pairs, residual " + fmt(std::max(worst, worst_lib)) + ", SL(2) identity " + fmt(worst_sl2);
  return o;
}

Outcome bracket_oracle() {
  Outcome o;
  Rng rng(99);
  double worst = 0, worst_forms = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Diagram d(random_diagram_spec(rng, {2, 3, 1, 1}));
    const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
    for (const auto& g : {GroupSpec::gln(1), GroupSpec::gln(2), GroupSpec::gln(3), GroupSpec::un(2)}) {
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      worst = std::max(worst, std::abs(eval_formal(bracket_gln(d, c, c2), a, 0.0) - direct_bracket(d, c, c2, a, g)));
    }
    for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r()}) {
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      const Complex alt = eval_formal(bracket_sl2(d, c, c2, Sl2Form::Alt), a, 0.0);
      const Complex rev = eval_formal(bracket_sl2(d, c, c2, Sl2Form::Reversal), a, 0.0);
      worst = std::max(worst, std::abs(alt - direct_bracket(d, c, c2, a, g)));
      worst_forms = std::max(worst_forms, std::abs(alt - rev));
    }
  }
  o.require(worst < 1e-9, "bracket vs per-point sum " + fmt(worst));
  o.require(worst_forms < 1e-10, "rank-2 forms differ by " + fmt(worst_forms));
  if (o.passed) o.detail = "30 diagrams, residual " + fmt(worst) + ", forms " + fmt(worst_forms);
  return o;
}

Outcome generator_consistency() {
  Outcome o;
  const std::vector<GroupSpec> groups{GroupSpec::su2(),  GroupSpec::sl2r(), GroupSpec::sl2c(), GroupSpec::gln(1),
                                      GroupSpec::gln(2), GroupSpec::gln(3), GroupSpec::gln(4), GroupSpec::un(3)};
  for (const auto& g : groups)
    for (auto type : {CrossingType::Over, CrossingType::Under}) {
      const CrossingCoeffs e = matrix_exponential(derived_generator(g, type));
      const CrossingCoeffs c = crossing_coeffs(g, type, K);
      o.require(e.c_virtual == c.c_virtual && e.c_smooth == c.c_smooth,
                "exp(beta M) differs for " + g.name() + " " + to_string(type));
    }
  const Generator over = derived_generator(GroupSpec::su2(), CrossingType::Over);
  const Generator under = derived_generator(GroupSpec::su2(), CrossingType::Under);
  o.require(over.a == -1 && over.b == 2, "SU(2) over-crossing first column is not (-1, 2)");
  o.require(under.a == 1 && under.b == -2, "SU(2) under-crossing first column is not (1, -2)");
  if (o.passed) o.detail = "8 groups x 2 types to K=8, SU(2) column (-1, 2)";
  return o;
}

Outcome framing() {
  Outcome o;
  for (auto [type, a] : {std::pair{CrossingType::Over, Rational(1, 2)}, std::pair{CrossingType::Under, Rational(-1, 2)}}) {
    const CrossingCoeffs gl = crossing_coeffs(GroupSpec::gln(2), type, K);
    const CrossingCoeffs su = crossing_coeffs(GroupSpec::su2(), type, K);
    const Series f = exp_series(a);
    o.require(gl.c_virtual == (su.c_virtual * f).truncated(K) && gl.c_smooth == (su.c_smooth * f).truncated(K),
              "GL(2) != e^(+-h/2) SU(2) for " + to_string(type));
  }
  if (o.passed) o.detail = "over and under, K=8 exact";
  return o;
}

Outcome lattice() {
  Outcome o;
  LatticeOptions opt;
  opt.segments = 64;
  std::ostringstream detail;
  for (auto site : {LatticeSite::Interior, LatticeSite::Endpoint}) {
    const char* name = site == LatticeSite::Interior ? "interior" : "endpoint";
    opt.site = site;
    std::vector<double> r;
    for (double step : {1e-3, 1e-4, 1e-5}) {
      opt.step = step;
      r.push_back(lattice_derivative_check(opt));
    }
    o.require(r[2] < 1e-4, std::string(name) + " residual at 1e-5 is " + fmt(r[2]));
    // at least first order: residual bounded by the step at every refinement
    for (int i = 0; i < 3; ++i) o.require(r[i] < std::pow(10.0, -3 - i), std::string(name) + " residual exceeds the step");
    if (site == LatticeSite::Endpoint) {
      // first order: each tenfold refinement gains one digit
      for (int i = 0; i < 2; ++i) {
        const double rate = std::log10(r[i] / r[i + 1]);
        o.require(rate > 0.9 && rate < 1.1, "endpoint convergence rate " + std::to_string(rate));
      }
    }
    detail << (site == LatticeSite::Endpoint ? ", " : "") << name << " " << fmt(r[0]) << "/" << fmt(r[1]) << "/"
           << fmt(r[2]);
  }
  if (o.passed) o.detail = "N=64, " + detail.str();
  return o;
}

Outcome jacobi() {
  Outcome o;
  Rng rng(314);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Diagram d(random_diagram_spec(rng, {3, 2, 1, 1}));
    const SeriesSum x = single(d, 0, 0), y = single(d, 1, 0), z = single(d, 2, 0);
    for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::gln(3)}) {
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      const auto ev = [&](const SeriesSum& s) { return eval_formal(s, a, 0.0); };
      const Complex sum = ev(bracket_poly(d, bracket_poly(d, x, y, g), z, g)) +
                          ev(bracket_poly(d, bracket_poly(d, y, z, g), x, g)) +
                          ev(bracket_poly(d, bracket_poly(d, z, x, g), y, g));
      worst = std::max(worst, std::abs(sum));
    }
  }
  o.require(worst < 1e-8, "cyclic sum " + fmt(worst));
  if (o.passed) o.detail = "10 triples x 3 groups, max " + fmt(worst);
  return o;
}

Outcome reidemeister_two() {
  Outcome o;
  const Diagram d = Diagram::parse("point p +\npoint q -\ncurve C level 1: p q\ncurve D level 0: p q\n");
  const Diagram free = Diagram::parse("curve C level 1:\ncurve D level 0:\n");
  const GroupSpec g = GroupSpec::su2();
  Rng rng(42);
  double smallest = 1e300;
  for (int i = 0; i < 5; ++i) {
    const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
    // the crossing-free diagram carries the same loop holonomies on its single arcs
    const HolonomyAssignment b(g, {based_holonomy(d.curve_loop(0), 0, a), based_holonomy(d.curve_loop(1), 0, a)});
    const Complex with = eval_formal(expect(d, stacked_curves(d), oriented_rule(g, 0.5)), a);
    const Complex without = eval_formal(expect(free, stacked_curves(free), oriented_rule(g, 0.5)), b);
    smallest = std::min(smallest, std::abs(with - without));
  }
  o.require(smallest > 1e-3, "difference only " + fmt(smallest));
  if (o.passed) o.detail = "min difference " + fmt(smallest) + " over 5 assignments";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"single-crossing SU(2) star product", single_crossing},
      {"Poisson limit of the star product", poisson_limit},
      {"associativity", associativity},
      {"trace and projection identities", trace_identities},
      {"bracket against the per-point sum", bracket_oracle},
      {"generator exponential and closed forms", generator_consistency},
      {"framing relation GL(2) vs SU(2)", framing},
      {"lattice functional derivative", lattice},
      {"Jacobi identity", jacobi},
      {"Reidemeister II pair is not removable", reidemeister_two},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %2zu  %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    failed += o.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
