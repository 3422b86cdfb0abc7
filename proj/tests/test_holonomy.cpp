#include <doctest.h>

#include "error.hpp"
#include "holonomy.hpp"

using namespace loopstar;

namespace {

const std::vector<GroupSpec> kGroups{GroupSpec::su2(), GroupSpec::sl2r(), GroupSpec::sl2c(),
                                     GroupSpec::gln(1), GroupSpec::gln(3), GroupSpec::un(3)};

Matrix id(int n) { return Matrix::Identity(n, n); }

}  // namespace

TEST_CASE("samplers land in their groups") {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Matrix u = sample(GroupSpec::su2(), rng);
    CHECK(std::abs(u.determinant() - 1.0) < 1e-12);
    CHECK((u.adjoint() * u - id(2)).norm() < 1e-12);
    const Matrix r = sample(GroupSpec::sl2r(), rng);
    CHECK(r.imag().norm() == 0.0);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
    const Matrix c = sample(GroupSpec::sl2c(), rng);
    CHECK(std::abs(c.determinant() - 1.0) < 1e-12);
    const Matrix v = sample(GroupSpec::un(4), rng);
    CHECK((v.adjoint() * v - id(4)).norm() < 1e-12);
    CHECK(std::abs(sample(GroupSpec::gln(3), rng).determinant()) > 1e-8);
  }
  for (const auto& g : kGroups) CHECK(in_group(g, sample(g, rng)));
  CHECK_FALSE(in_group(GroupSpec::su2(), 2.0 * id(2)));
}

TEST_CASE("samplers are deterministic under a seed") {
  for (const auto& g : kGroups) {
    Rng a(99), b(99);
    CHECK(sample(g, a) == sample(g, b));
  }
}

TEST_CASE("Wilson loops") {
  const Diagram d = Diagram::parse("point p +\npoint q -\ncurve C level 0: p q\ncurve D level 0: p q\n");
  const Loop c = d.curve_loop(0);
  CHECK(eval_wilson(c, HolonomyAssignment::identity(d, GroupSpec::gln(3))) == Complex(3.0));
  Rng rng(5);
  const HolonomyAssignment a = HolonomyAssignment::random(d, GroupSpec::gln(3), rng);
  const Matrix expected = a.matrix(0) * a.matrix(1);
  CHECK(std::abs(eval_wilson(c, a) - expected.trace()) < 1e-13);
  CHECK(std::abs(eval_wilson(c, a) - eval_wilson(rotate(c, 1), a)) < 1e-13);
  const Diagram free = Diagram::parse("curve L level 0:\n");
  const HolonomyAssignment fa = HolonomyAssignment::random(free, GroupSpec::su2(), rng);
  CHECK(std::abs(eval_wilson(free.curve_loop(0), fa) - fa.matrix(0).trace()) < 1e-15);
}

TEST_CASE("orientation reversal") {
  const Diagram d = Diagram::parse("point p +\npoint q -\ncurve C level 0: p q\ncurve D level 0: p q\n");
  const Loop l = concat_at(d, d.curve_loop(0), d.curve_loop(1), 0);
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const HolonomyAssignment su = HolonomyAssignment::random(d, GroupSpec::su2(), rng);
    CHECK(std::abs(eval_wilson(reverse(l), su) - eval_wilson(l, su)) < 1e-12);
    const HolonomyAssignment gl = HolonomyAssignment::random(d, GroupSpec::gln(3), rng);
    CHECK(std::abs(eval_wilson(reverse(l), gl) - eval_wilson(l, gl)) > 1e-6);
  }
}

TEST_CASE("concatenation evaluates as the product of based holonomies") {
  const Diagram d = Diagram::parse("point p +\npoint q -\npoint s +\ncurve C level 0: s p q s\ncurve D level 0: q p\n");
  const Loop c = d.curve_loop(0), c2 = d.curve_loop(1);
  const Loop cc = concat_at(d, c, c2, 0);
  Rng rng(2);
  for (const auto& g : kGroups) {
    const HolonomyAssignment a = HolonomyAssignment::random(d, g, rng);
    const auto pc = d.find_pass(c, 0);
    const auto pc2 = d.find_pass(c2, 0);
    const Matrix hc = based_holonomy(c, (pc->position + 1) % c.size(), a);
    const Matrix hc2 = based_holonomy(c2, (pc2->position + 1) % c2.size(), a);
    CHECK(std::abs(eval_wilson(cc, a) - (hc * hc2).trace()) < 1e-12 * (1 + std::abs((hc * hc2).trace())));
  }
}

TEST_CASE("formal sums evaluate linearly") {
  const Diagram d = Diagram::parse("point p +\ncurve C level 0: p\ncurve D level 0: p\n");
  Rng rng(4);
  const HolonomyAssignment a = HolonomyAssignment::random(d, GroupSpec::gln(2), rng);
  CHECK(eval_formal(NumericSum{}, a) == Complex(0.0));
  const Monomial m({d.curve_loop(0), d.curve_loop(1)});
  CHECK(std::abs(eval_formal(NumericSum(m, 1.0), a) -
                 eval_wilson(d.curve_loop(0), a) * eval_wilson(d.curve_loop(1), a)) < 1e-14);
  const Monomial n({concat_at(d, d.curve_loop(0), d.curve_loop(1), 0)});
  const Complex x(0.3, -1.2), y(-2.5, 0.4);
  NumericSum s(m, x);
  s.add(n, y);
  CHECK(std::abs(eval_formal(s, a) - (x * eval_monomial(m, a) + y * eval_monomial(n, a))) < 1e-12);
  CHECK(std::abs(eval_formal(s.scaled(2.0), a) - 2.0 * eval_formal(s, a)) < 1e-12);
  SeriesSum series(m, Series::h(2) + Series::one(2));
  CHECK(std::abs(eval_formal(series, a, 0.25) - 1.5 * eval_monomial(m, a)) < 1e-13);
}

TEST_CASE("missing arcs are reported") {
  const Diagram d = Diagram::parse("point p +\ncurve C level 0: p\ncurve D level 0: p\n");
  const HolonomyAssignment small(GroupSpec::su2(), {Matrix::Identity(2, 2)});
  CHECK_THROWS_AS(eval_wilson(d.curve_loop(1), small), Error);
  try {
    eval_wilson(d.curve_loop(1), small);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingArc);
  }
  CHECK_THROWS_AS(assignment_from_json(d, R"({"group":"su2","arcs":{"C.0":[[1,0],[0,0],[0,0],[1,0]]}})"), Error);
}

TEST_CASE("assignment JSON round trip") {
  const Diagram d = Diagram::parse("point p +\ncurve C level 0: p\ncurve D level 0: p\n");
  Rng rng(8);
  const HolonomyAssignment a = HolonomyAssignment::random(d, GroupSpec::gln(3), rng);
  const HolonomyAssignment b = assignment_from_json(d, assignment_to_json(d, a));
  CHECK(b.group() == a.group());
  for (int i = 0; i < 2; ++i) CHECK((a.matrix(i) - b.matrix(i)).norm() == 0.0);
}

TEST_CASE("projection pi") {
  Rng rng(3);
  const Matrix u = sample(GroupSpec::gln(3), rng);
  CHECK(projection_pi(GroupSpec::gln(3), u) == u);
  CHECK(projection_pi(GroupSpec::su2(), id(2)).norm() == 0.0);
  for (const auto& g : {GroupSpec::sl2r(), GroupSpec::sl2c(), GroupSpec::su2()})
    for (int i = 0; i < 100; ++i) {
      const Matrix a = sample(g, rng), b = sample(g, rng);
      const Complex lhs = (projection_pi(g, a) * projection_pi(g, b)).trace();
      const Complex rhs = (a * b).trace() - 0.5 * a.trace() * b.trace();
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("Gram identity") {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const Matrix u = sample(GroupSpec::gln(2), rng), v = sample(GroupSpec::gln(2), rng);
    CHECK(verify_gram_identity(GroupSpec::gln(2), u, v) < 1e-10);
    CHECK(std::abs(gram_pairing(LieBasis::standard(GroupSpec::gln(2)), u, v) - (u * v).trace()) < 1e-10);
    CHECK(verify_gram_identity(GroupSpec::sl2r(), sample(GroupSpec::sl2r(), rng), sample(GroupSpec::sl2r(), rng)) <
          1e-10);
  }
  CHECK(verify_gram_identity(GroupSpec::su2(), id(2), id(2)) < 1e-15);
  CHECK(std::abs(gram_pairing(LieBasis::standard(GroupSpec::su2()), id(2), id(2))) < 1e-15);
  // brute force over basis indices for sl(2): h, e, f
  const LieBasis b = LieBasis::standard(GroupSpec::sl2r());
  REQUIRE(b.elements.size() == 3);
  CHECK(((b.gram * b.gram_inverse) - Matrix::Identity(3, 3)).norm() < 1e-12);
  const Matrix e = b.elements[1];
  CHECK_THROWS_AS(LieBasis::from_elements({e, 2.0 * e}), Error);
}

TEST_CASE("lattice functional derivative") {
  LatticeOptions o;
  o.flat = true;
  CHECK(lattice_derivative_check(o) < 1e-6);
  o.flat = false;
  for (auto site : {LatticeSite::Interior, LatticeSite::Endpoint}) {
    o.site = site;
    o.step = 1e-4;
    const double coarse = lattice_derivative_check(o);
    o.step = 1e-5;
    const double fine = lattice_derivative_check(o);
    CHECK(coarse < 1e-3);
    CHECK(fine < 1e-4);
  }
  // first order at the endpoint: a tenfold smaller step gives a tenfold smaller residual
  o.site = LatticeSite::Endpoint;
  o.step = 1e-3;
  const double r3 = lattice_derivative_check(o);
  o.step = 1e-4;
  const double r4 = lattice_derivative_check(o);
  CHECK(r3 / r4 == doctest::Approx(10.0).epsilon(0.1));
  o.segments = 1;
  CHECK_THROWS_AS(lattice_derivative_check(o), Error);
}
