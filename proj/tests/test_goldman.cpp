#include <doctest.h>

#include "error.hpp"
#include "goldman.hpp"
#include "holonomy.hpp"
#include "random_diagram.hpp"

using namespace loopstar;

namespace {

using C = std::complex<double>;

// Basis of the Lie algebra built here, independently of LieBasis.
std::vector<Matrix> basis_for(const GroupSpec& g) {
  std::vector<Matrix> out;
  if (g.is_rank_two()) {
    Matrix h(2, 2), e(2, 2), f(2, 2);
    h << 1, 0, 0, -1;
    e << 0, 1, 0, 0;
    f << 0, 0, 1, 0;
    return {h, e, f};
  }
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      Matrix m = Matrix::Zero(g.n, g.n);
      m(i, j) = 1;
      out.push_back(m);
    }
  return out;
}

// Σ_αβ (g⁻¹)_αβ tr(U e_α) tr(V e_β)
C pairing(const std::vector<Matrix>& basis, const Matrix& u, const Matrix& v) {
  const int k = static_cast<int>(basis.size());
  Matrix gram(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) gram(a, b) = (basis[a] * basis[b]).trace();
  const Matrix inv = gram.inverse();
  C total = 0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) total += inv(a, b) * (u * basis[a]).trace() * (v * basis[b]).trace();
  return total;
}

// Per-point bracket of two curve loops.
C direct_bracket(const Diagram& d, const Loop& c, const Loop& c2, const HolonomyAssignment& a, const GroupSpec& g) {
  const auto basis = basis_for(g);
  C total = 0;
  for (const auto& pc : d.passes(c))
    for (const auto& pc2 : d.passes(c2)) {
      if (pc.pass.point != pc2.pass.point) continue;
      const Matrix hu = based_holonomy(c, (pc.position + 1) % c.size(), a);
      const Matrix hv = based_holonomy(c2, (pc2.position + 1) % c2.size(), a);
      total += static_cast<double>(d.pair_sign(pc.pass, pc2.pass)) * pairing(basis, hu, hv);
    }
  return total;
}

SeriesSum single(const Loop& l) { return unit_sum(Monomial({l}), 0); }

}  // namespace

TEST_CASE("one positive crossing gives the concatenation") {
  const Diagram d = Diagram::parse("point p +\ncurve C level 0: p\ncurve D level 0: p\n");
  const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
  const SeriesSum b = bracket_gln(d, c, c2);
  REQUIRE(b.size() == 1);
  CHECK(b.terms().begin()->first == Monomial({concat_at(d, c, c2, 0)}));
  CHECK(b.terms().begin()->second == Series::one(kDefaultOrder));
}

TEST_CASE("disjoint loops commute") {
  const Diagram d = Diagram::parse("curve C level 0:\ncurve D level 0:\n");
  CHECK(bracket_gln(d, d.curve_loop(0), d.curve_loop(1)).empty());
  CHECK(bracket_sl2(d, d.curve_loop(0), d.curve_loop(1), Sl2Form::Alt).empty());
  CHECK(bracket_sl2(d, d.curve_loop(0), d.curve_loop(1), Sl2Form::Reversal).empty());
}

TEST_CASE("two crossings of opposite sign") {
  const Diagram d = Diagram::parse("point p +\npoint q -\ncurve C level 0: p q\ncurve D level 0: p q\n");
  const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
  SeriesSum want;
  want.add(Monomial({concat_at(d, c, c2, 0)}), Series::one(2));
  want.add(Monomial({concat_at(d, c, c2, 1)}), -Series::one(2));
  CHECK(bracket_gln(d, c, c2, 2) == want);
  Rng rng(1);
  for (const auto& g : {GroupSpec::gln(2), GroupSpec::gln(3), GroupSpec::un(2)}) {
    const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
    CHECK(std::abs(eval_formal(bracket_gln(d, c, c2), a, 0.0) - direct_bracket(d, c, c2, a, g)) < 1e-9);
  }
}

TEST_CASE("alt form for one positive crossing") {
  const Diagram d = Diagram::parse("point p +\ncurve C level 0: p\ncurve D level 0: p\n");
  const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
  SeriesSum want;
  want.add(Monomial({concat_at(d, c, c2, 0)}), Series::one(1));
  want.add(Monomial({c, c2}), Series(1, ratio(-1, 2)));
  CHECK(bracket_sl2(d, c, c2, Sl2Form::Alt, 1) == want);
}

TEST_CASE("the two rank-2 forms agree numerically and match the per-point formula") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Diagram d(random_diagram_spec(rng, {2, 3, 1, 1}));
    const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
    for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::sl2c()}) {
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      const C alt = eval_formal(bracket_sl2(d, c, c2, Sl2Form::Alt), a, 0.0);
      const C rev = eval_formal(bracket_sl2(d, c, c2, Sl2Form::Reversal), a, 0.0);
      if (g.kind != GroupKind::SL2C) CHECK(std::abs(alt - rev) < 1e-10);
      CHECK(std::abs(alt - direct_bracket(d, c, c2, a, g)) < 1e-9);
    }
  }
}

TEST_CASE("Leibniz rule against the per-point formula") {
  // {W_C, W_D²} = 2 W_D {W_C, W_D}
  const Diagram d = Diagram::parse("point p +\npoint q +\ncurve C level 0: p q\ncurve D level 0: q p\n");
  const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
  const SeriesSum f = single(c);
  const SeriesSum g = unit_sum(Monomial({c2, c2}), 0);
  Rng rng(9);
  for (const auto& grp : {GroupSpec::gln(3), GroupSpec::su2()}) {
    const HolonomyAssignment a = HolonomyAssignment::random(d, grp, rng);
    const C want = 2.0 * eval_wilson(c2, a) * direct_bracket(d, c, c2, a, grp);
    CHECK(std::abs(eval_formal(bracket_poly(d, f, g, grp), a, 0.0) - want) < 1e-9);
  }
}

TEST_CASE("bracket with a constant vanishes") {
  const Diagram d = Diagram::parse("point p +\ncurve C level 0: p\ncurve D level 0: p\n");
  const SeriesSum one = unit_sum(Monomial(), 0);
  CHECK(bracket_poly(d, single(d.curve_loop(0)), one, GroupSpec::gln(2)).empty());
  CHECK(bracket_poly(d, one, single(d.curve_loop(1)), GroupSpec::su2()).empty());
}

TEST_CASE("antisymmetry on random pairs") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Diagram d(random_diagram_spec(rng, {3, 2, 0, 1}));
    const SeriesSum f = random_polynomial(d, {0}, rng, 2);
    const SeriesSum g = random_polynomial(d, {1, 2}, rng, 2);
    for (const auto& grp : {GroupSpec::su2(), GroupSpec::gln(2)})
      CHECK((bracket_poly(d, f, g, grp) + bracket_poly(d, g, f, grp)).empty());
  }
}

TEST_CASE("non-transversal loops are rejected") {
  const Diagram d = Diagram::parse("point p +\ncurve C level 0: p\ncurve D level 0: p\n");
  const Loop c = d.curve_loop(0);
  CHECK_THROWS_AS(bracket_gln(d, c, c), Error);
  try {
    loop_crossings(d, c, rotate(c, 0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Transversality);
  }
}

TEST_CASE("Jacobi identity numerically") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Diagram d(random_diagram_spec(rng, {3, 2, 1, 1}));
    const SeriesSum x = single(d.curve_loop(0)), y = single(d.curve_loop(1)), z = single(d.curve_loop(2));
    for (const auto& g : {GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::gln(3)}) {
      const SeriesSum xy = bracket_poly(d, x, y, g);
      CHECK_FALSE(bracket_poly(d, xy, z, g).empty());
      const SeriesSum sum = bracket_poly(d, xy, z, g) + bracket_poly(d, bracket_poly(d, y, z, g), x, g) +
                            bracket_poly(d, bracket_poly(d, z, x, g), y, g);
      const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
      CHECK(std::abs(eval_formal(sum, a, 0.0)) < 1e-8);
    }
  }
}
