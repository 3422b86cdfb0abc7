// SPDX-License-Identifier: Apache-2.0
#include "checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "coeff.hpp"
#include "error.hpp"
#include "goldman.hpp"
#include "holonomy.hpp"
#include "random_diagram.hpp"
#include "star.hpp"

namespace loopstar {

namespace {

using Results = std::vector<CheckResult>;

std::string num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

void record(Results& out, const std::string& suite, const std::string& name, bool ok, const std::string& detail) {
  out.push_back({suite, name, ok, detail});
}

void record_max(Results& out, const std::string& suite, const std::string& name, double residual, double tol) {
  record(out, suite, name, residual < tol, "max residual " + num(residual) + " (tol " + num(tol) + ")");
}

std::string label(const GroupSpec& g) {
  return g.is_rank_two() ? g.name() : g.name() + "(" + std::to_string(g.n) + ")";
}

std::vector<GroupSpec> all_groups() {
  return {GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::sl2c(), GroupSpec::gln(1), GroupSpec::gln(2),
          GroupSpec::gln(3), GroupSpec::gln(4), GroupSpec::un(2), GroupSpec::un(3)};
}

// --- coefficient suites ----------------------------------------------------

Results generator_suite(const CheckOptions& o) {
  Results out;
  for (const auto& g : all_groups())
    for (auto t : {CrossingType::Over, CrossingType::Under}) {
      const CrossingCoeffs want = crossing_coeffs(g, t, o.order);
      const CrossingCoeffs got = generator_exponential(derived_generator(g, t), o.order);
      record(out, "generator", label(g) + " " + to_string(t),
             got.c_virtual == want.c_virtual && got.c_smooth == want.c_smooth, "exp(beta M)(1,0) vs closed forms");
    }
  const Generator m = derived_generator(GroupSpec::su2());
  record(out, "generator", "su2 first column", m.a == -1 && m.b == 2, "(a, b) = (-1, 2)");
  return out;
}

Results framing_suite(const CheckOptions& o) {
  Results out;
  for (auto t : {CrossingType::Over, CrossingType::Under}) {
    const Series frame = Series::exp_linear(ratio(t == CrossingType::Over ? 1 : -1, 2), o.order);
    const CrossingCoeffs gl = crossing_coeffs(GroupSpec::gln(2), t, o.order);
    const CrossingCoeffs su = crossing_coeffs(GroupSpec::su2(), t, o.order);
    record(out, "framing", "gl2 coefficients " + to_string(t),
           gl.c_virtual == frame * su.c_virtual && gl.c_smooth == frame * su.c_smooth, "e^{+-h/2} factor");
  }
  Rng rng(o.seed);
  int bad = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Diagram d(random_diagram_spec(rng, {2, 3, 1, 1}));
    const SeriesSum f = unit_sum(Monomial({d.curve_loop(0)}), o.order);
    const SeriesSum g = unit_sum(Monomial({d.curve_loop(1)}), o.order);
    StackedMonomial stack{{d.curve_loop(0), 1}, {d.curve_loop(1), -1}};
    int net = 0;
    for (const auto& x : active_crossings(d, stack)) net += x.type == CrossingType::Over ? 1 : -1;
    const SeriesSum gl = star(d, f, g, GroupSpec::gln(2), o.order);
    const SeriesSum su = star(d, f, g, GroupSpec::su2(), o.order);
    if (!(gl == su.scaled(Series::exp_linear(ratio(net, 2), o.order)))) ++bad;
  }
  record(out, "framing", "gl2 star vs su2 star", bad == 0, std::to_string(bad) + " of 10 random diagrams differ");
  return out;
}

Results series_suite(const CheckOptions& o) {
  Results out;
  double worst = 0;
  for (const auto& g : all_groups())
    for (auto t : {CrossingType::Over, CrossingType::Under}) {
      const CrossingCoeffs s = crossing_coeffs(g, t, o.order);
      const CrossingValues v = crossing_values(g, t, 0.05);
      worst = std::max({worst, std::abs(eval_at(s.c_virtual, 0.05) - v.c_virtual),
                        std::abs(eval_at(s.c_smooth, 0.05) - v.c_smooth)});
    }
  record_max(out, "series", "truncation at beta=0.05", worst, o.order >= 8 ? 1e-10 : 1e-2);
  return out;
}

// --- holonomy suites -------------------------------------------------------

Results gram_suite(const CheckOptions& o) {
  Results out;
  Rng rng(o.seed);
  for (const auto& g : all_groups()) {
    const LieBasis basis = LieBasis::standard(g);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      const Matrix u = sample(g, rng);
      const Matrix v = sample(g, rng);
      worst = std::max(worst, verify_gram_identity(g, basis, u, v));
    }
    record_max(out, "gram", label(g) + " trace identity", worst, 1e-9);
  }
  for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::sl2c()}) {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      const Matrix u = sample(g, rng);
      const Matrix v = sample(g, rng);
      worst = std::max(worst, std::abs((u * v).trace() + (u * v.inverse()).trace() - u.trace() * v.trace()));
    }
    record_max(out, "gram", label(g) + " tr(UV)+tr(UV^-1)=trU trV", worst, 1e-10);
  }
  // basis independence: a random real change of basis leaves the pairing unchanged
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const auto& g : {GroupSpec::gln(3), GroupSpec::su2(), GroupSpec::sl2r()}) {
    const LieBasis std_basis = LieBasis::standard(g);
    std::vector<Matrix> mixed;
    for (std::size_t i = 0; i < std_basis.elements.size(); ++i) {
      Matrix e = Matrix::Zero(g.n, g.n);
      for (const auto& b : std_basis.elements) e += normal(rng) * b;
      mixed.push_back(e);
    }
    const LieBasis other = LieBasis::from_elements(std::move(mixed));
    double worst = 0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, verify_gram_identity(g, other, sample(g, rng), sample(g, rng)));
    record_max(out, "gram", label(g) + " basis independence", worst, 1e-8);
  }
  return out;
}

Results lattice_suite(const CheckOptions& o) {
  Results out;
  for (auto site : {LatticeSite::Interior, LatticeSite::Endpoint})
    for (const auto& g : {GroupSpec::su2(), GroupSpec::gln(2)}) {
      LatticeOptions lo;
      lo.site = site;
      lo.group = g;
      lo.seed = o.seed;
      lo.step = 1e-4;
      const double r4 = lattice_derivative_check(lo);
      lo.step = 1e-5;
      const double r5 = lattice_derivative_check(lo);
      const std::string where = site == LatticeSite::Interior ? "interior" : "endpoint";
      record(out, "lattice", label(g) + " " + where, r4 < 1e-3 && r5 < 1e-4 && r5 <= r4 + 1e-7,
             "step 1e-4: " + num(r4) + ", step 1e-5: " + num(r5));
    }
  return out;
}

// --- bracket suites --------------------------------------------------------

double pointwise_bracket_residual(const Diagram& d, const GroupSpec& g, Rng& rng) {
  const LieBasis basis = LieBasis::standard(g);
  const Loop c = d.curve_loop(0);
  const Loop c2 = d.curve_loop(1);
  const SeriesSum b = bracket_loops(d, c, c2, g, Sl2Form::Alt);
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
    Complex direct = 0.0;
    for (const auto& x : loop_crossings(d, c, c2)) {
      const Matrix hc = based_holonomy(c, (x.first.position + 1) % c.size(), a);
      const Matrix hc2 = based_holonomy(c2, (x.second.position + 1) % c2.size(), a);
      direct += static_cast<double>(x.sign) * gram_pairing(basis, hc, hc2);
    }
    worst = std::max(worst, std::abs(eval_formal(b, a, 0.0) - direct));
  }
  return worst;
}

Results bracket_suite(const CheckOptions& o) {
  Results out;
  Rng rng(o.seed);
  for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::sl2c(), GroupSpec::gln(2),
                        GroupSpec::gln(3), GroupSpec::un(3)}) {
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const Diagram d(random_diagram_spec(rng, {2, 3, 0, 1}));
      worst = std::max(worst, pointwise_bracket_residual(d, g, rng));
    }
    record_max(out, "bracket", label(g) + " per-point oracle", worst, 1e-9);
  }
  for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r()}) {
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const Diagram d(random_diagram_spec(rng, {2, 3, 0, 1}));
      const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
      const SeriesSum rev = bracket_sl2(d, c, c2, Sl2Form::Reversal);
      const SeriesSum alt = bracket_sl2(d, c, c2, Sl2Form::Alt);
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      worst = std::max(worst, std::abs(eval_formal(rev, a, 0.0) - eval_formal(alt, a, 0.0)));
    }
    record_max(out, "bracket", label(g) + " reversal vs alt form", worst, 1e-10);
  }
  int asym_bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Diagram d(random_diagram_spec(rng, {3, 2, 0, 1}));
    const SeriesSum f = random_polynomial(d, {0, 1}, rng, o.order);
    const SeriesSum g = random_polynomial(d, {2}, rng, o.order);
    for (const auto& grp : {GroupSpec::su2(), GroupSpec::gln(3)})
      if (!(bracket_poly(d, f, g, grp) + bracket_poly(d, g, f, grp)).empty()) ++asym_bad;
  }
  record(out, "bracket", "antisymmetry", asym_bad == 0, std::to_string(asym_bad) + " of 40 nonzero");
  return out;
}

Results jacobi_suite(const CheckOptions& o) {
  Results out;
  Rng rng(o.seed);
  for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::gln(2), GroupSpec::gln(3), GroupSpec::un(2)}) {
    double worst = 0;
    int symbolic = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const Diagram d(random_diagram_spec(rng, {3, 2, 1, 1}));
      const SeriesSum x = unit_sum(Monomial({d.curve_loop(0)}), 0);
      const SeriesSum y = unit_sum(Monomial({d.curve_loop(1)}), 0);
      const SeriesSum z = unit_sum(Monomial({d.curve_loop(2)}), 0);
      const SeriesSum sum = bracket_poly(d, bracket_poly(d, x, y, g), z, g) +
                            bracket_poly(d, bracket_poly(d, y, z, g), x, g) +
                            bracket_poly(d, bracket_poly(d, z, x, g), y, g);
      if (sum.empty()) ++symbolic;
      for (int k = 0; k < 3; ++k)
        worst = std::max(worst, std::abs(eval_formal(sum, HolonomyAssignment::random(d, g, rng), 0.0)));
    }
    record(out, "jacobi", label(g) + " cyclic sum", worst < 1e-8,
           "max residual " + num(worst) + " (tol 1e-08); " + std::to_string(symbolic) +
               " of 10 sums vanish symbolically");
  }
  return out;
}

// --- star suites -----------------------------------------------------------

std::pair<std::vector<int>, std::vector<int>> split_curves(int curves, Rng& rng) {
  std::vector<int> f, g;
  const int cut = std::uniform_int_distribution<int>(1, curves - 1)(rng);
  for (int c = 0; c < curves; ++c) (c < cut ? f : g).push_back(c);
  return {f, g};
}

Results poisson_suite(const CheckOptions& o) {
  Results out;
  Rng rng(o.seed);
  for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::gln(2), GroupSpec::gln(3), GroupSpec::un(2)}) {
    int bad = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const int curves = std::uniform_int_distribution<int>(2, 4)(rng);
      const Diagram d(random_diagram_spec(rng, {curves, 2, 0, 1}));
      const auto [fc, gc] = split_curves(curves, rng);
      const SeriesSum f = random_polynomial(d, fc, rng, o.order);
      const SeriesSum h = random_polynomial(d, gc, rng, o.order);
      if (!poisson_limit_check(d, f, h, g).empty()) ++bad;
    }
    record(out, "poisson", label(g) + " h^1 slot equals bracket", bad == 0,
           std::to_string(bad) + " of 20 random diagrams with nonzero residual");
  }
  return out;
}

Results assoc_suite(const CheckOptions& o) {
  Results out;
  Rng rng(o.seed);
  const std::vector<double> betas{0.01, 0.1, 0.5};
  for (const auto& g : {GroupSpec::su2(), GroupSpec::gln(2), GroupSpec::gln(3)}) {
    int bad = 0;
    double worst = 0;
    const int order = std::min(o.order, 4);
    for (int trial = 0; trial < 10; ++trial) {
      const Diagram d(random_diagram_spec(rng, {3, 2, 1, 1}));
      const SeriesSum u = random_polynomial(d, {0}, rng, order, 1);
      const SeriesSum v = random_polynomial(d, {1}, rng, order, 1);
      const SeriesSum w = random_polynomial(d, {2}, rng, order, 1);
      std::vector<HolonomyAssignment> as{HolonomyAssignment::random(d, g, rng), HolonomyAssignment::random(d, g, rng)};
      const AssocReport r = assoc_check(d, u, v, w, g, order, as, betas);
      if (!r.level_difference.empty() || !r.nested_difference.empty()) ++bad;
      worst = std::max(worst, r.numeric_residual);
    }
    record(out, "assoc", label(g) + " symbolic", bad == 0, std::to_string(bad) + " of 10 triples differ");
    record_max(out, "assoc", label(g) + " numeric nesting", worst, 1e-9);
  }
  return out;
}

StackedMonomial random_stack(const Diagram& d, Rng& rng) {
  StackedMonomial s;
  for (std::size_t c = 0; c < d.curves().size(); ++c)
    s.push_back({d.curve_loop(static_cast<int>(c)), std::uniform_int_distribution<int>(-2, 2)(rng)});
  return s;
}

Results order_suite(const CheckOptions& o) {
  Results out;
  Rng rng(o.seed);
  for (const auto& g : {GroupSpec::su2(), GroupSpec::gln(3)}) {
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const Diagram d(random_diagram_spec(rng, {3, 2, 1, 1}));
      const StackedMonomial stack = random_stack(d, rng);
      const std::size_t k = active_crossings(d, stack).size();
      std::vector<std::size_t> perm(k);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      for (double beta : {0.01, 0.1, 0.5}) {
        const auto rule = oriented_rule(g, beta);
        const NumericSum sorted = expect(d, stack, rule);
        const NumericSum shuffled = expect(d, stack, rule, &perm);
        worst = std::max(worst, std::abs(eval_formal(sorted, a) - eval_formal(shuffled, a)));
      }
    }
    record_max(out, "order", label(g) + " resolution-order independence", worst, 1e-9);
  }
  return out;
}

Results kauffman_suite(const CheckOptions& o) {
  Results out;
  Rng rng(o.seed);
  const KauffmanValues k0 = kauffman_values(0.0);
  record(out, "kauffman", "a = b = -1 at beta = 0", k0.a == Complex(-1.0) && k0.b == Complex(-1.0), "");
  for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r()}) {
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const Diagram d(random_diagram_spec(rng, {2, 2, 1, 1}));
      const StackedMonomial stack{{d.curve_loop(0), 1}, {d.curve_loop(1), -1}};
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      for (double beta : {0.1, 0.5}) {
        const Complex oriented = eval_formal(expect(d, stack, oriented_rule(g, beta)), a);
        const Complex unoriented = eval_normalized(expect(d, stack, kauffman_rule(g, beta)), a);
        // input W̃_C W̃_D = (+1) W_C W_D
        worst = std::max(worst, std::abs(oriented - unoriented));
      }
    }
    record_max(out, "kauffman", label(g) + " agrees with oriented resolution", worst, 1e-10);
  }
  return out;
}

Results r2_suite(const CheckOptions& o) {
  Results out;
  const Diagram d = Diagram::parse("point p +\npoint q -\ncurve C level 1: p q\ncurve D level 0: p q\n");
  Rng rng(o.seed);
  const GroupSpec g = GroupSpec::su2();
  const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
  const NumericSum e = expect(d, stacked_curves(d), oriented_rule(g, 0.5));
  const Complex resolved = eval_formal(e, a);
  const Complex bare = eval_wilson(d.curve_loop(0), a) * eval_wilson(d.curve_loop(1), a);
  const double diff = std::abs(resolved - bare);
  record(out, "r2", "R2 pair differs from crossing-free pair at beta=0.5", diff > 1e-3,
         "difference " + num(diff) + " (expected > 1e-3)");
  return out;
}

const std::map<std::string, std::function<Results(const CheckOptions&)>>& registry() {
  static const std::map<std::string, std::function<Results(const CheckOptions&)>> r{
      {"generator", generator_suite}, {"framing", framing_suite}, {"series", series_suite},
      {"gram", gram_suite},           {"lattice", lattice_suite}, {"bracket", bracket_suite},
      {"jacobi", jacobi_suite},       {"poisson", poisson_suite}, {"assoc", assoc_suite},
      {"order", order_suite},         {"kauffman", kauffman_suite}, {"r2", r2_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& check_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<CheckResult> run_checks(const std::string& suite, const CheckOptions& options) {
  if (options.order < 1) throw Error(ErrorKind::InvalidArgument, "check suites need order >= 1");
  if (suite == "all") {
    Results out;
    for (const auto& [name, fn] : registry()) {
      Results r = fn(options);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  const auto it = registry().find(suite);
  if (it == registry().end()) throw Error(ErrorKind::InvalidArgument, "unknown check suite '" + suite + "'");
  return it->second(options);
}

}  // namespace loopstar
