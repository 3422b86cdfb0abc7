// SPDX-License-Identifier: Apache-2.0
#include "star.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"
#include "goldman.hpp"

namespace loopstar {

// --- resolution rules ------------------------------------------------------

ResolutionRule<Series> oriented_rule(const GroupSpec& group, int order) {
  const CrossingCoeffs o = crossing_coeffs(group, CrossingType::Over, order);
  const CrossingCoeffs u = crossing_coeffs(group, CrossingType::Under, order);
  return {{Branch<Series>{o.c_virtual, std::nullopt}, Branch<Series>{o.c_smooth, Smoothing::Oriented}},
          {Branch<Series>{u.c_virtual, std::nullopt}, Branch<Series>{u.c_smooth, Smoothing::Oriented}},
          Convention::Oriented,
          Series::one(order)};
}

ResolutionRule<Complex> oriented_rule(const GroupSpec& group, double beta) {
  const CrossingValues o = crossing_values(group, CrossingType::Over, beta);
  const CrossingValues u = crossing_values(group, CrossingType::Under, beta);
  return {{Branch<Complex>{o.c_virtual, std::nullopt}, Branch<Complex>{o.c_smooth, Smoothing::Oriented}},
          {Branch<Complex>{u.c_virtual, std::nullopt}, Branch<Complex>{u.c_smooth, Smoothing::Oriented}},
          Convention::Oriented,
          Complex(1.0)};
}

namespace {

void require_rank_two(const GroupSpec& group) {
  group.validate();
  if (!group.is_rank_two())
    throw Error(ErrorKind::UnsupportedGroup,
                "the unoriented resolution needs su2, sl2r or sl2c; " + group.name() + " loops are oriented");
}

}  // namespace

ResolutionRule<Series> kauffman_rule(const GroupSpec& group, int order) {
  require_rank_two(group);
  const KauffmanCoeffs k = kauffman_coeffs(order);
  return {{Branch<Series>{k.a, Smoothing::Oriented}, Branch<Series>{k.b, Smoothing::Reversal}},
          {Branch<Series>{k.b, Smoothing::Oriented}, Branch<Series>{k.a, Smoothing::Reversal}},
          Convention::Unoriented,
          Series::one(order)};
}

ResolutionRule<Complex> kauffman_rule(const GroupSpec& group, double beta) {
  require_rank_two(group);
  const KauffmanValues k = kauffman_values(beta);
  return {{Branch<Complex>{k.a, Smoothing::Oriented}, Branch<Complex>{k.b, Smoothing::Reversal}},
          {Branch<Complex>{k.b, Smoothing::Oriented}, Branch<Complex>{k.a, Smoothing::Reversal}},
          Convention::Unoriented,
          Complex(1.0)};
}

// --- active crossings ------------------------------------------------------

StackedMonomial stacked_curves(const Diagram& d) {
  StackedMonomial out;
  for (std::size_t c = 0; c < d.curves().size(); ++c)
    out.push_back({d.curve_loop(static_cast<int>(c)), d.curves()[c].level});
  return out;
}

namespace {

struct Site {
  std::size_t loop;
  PassSite site;
};

std::vector<Site> sites_of(const Diagram& d, const std::vector<Loop>& loops, int point) {
  std::vector<Site> out;
  for (std::size_t l = 0; l < loops.size(); ++l)
    for (const auto& s : d.passes(loops[l]))
      if (s.pass.point == point) out.push_back({l, s});
  return out;
}

}  // namespace

std::vector<ActiveCrossing> active_crossings(const Diagram& d, const StackedMonomial& stack) {
  for (std::size_t i = 0; i < stack.size(); ++i)
    for (std::size_t j = i + 1; j < stack.size(); ++j)
      if (stack[i].level != stack[j].level && share_arc(stack[i].loop, stack[j].loop))
        throw Error(ErrorKind::Transversality, "loops " + d.loop_text(stack[i].loop) + " and " +
                                                   d.loop_text(stack[j].loop) +
                                                   " on different levels share an arc");

  std::vector<std::vector<std::pair<std::size_t, PassSite>>> by_point(d.points().size());
  for (std::size_t l = 0; l < stack.size(); ++l)
    for (const auto& s : d.passes(stack[l].loop)) by_point[static_cast<std::size_t>(s.pass.point)].push_back({l, s});

  std::vector<ActiveCrossing> out;
  for (std::size_t p = 0; p < by_point.size(); ++p) {
    const auto& sites = by_point[p];
    if (sites.size() < 2) continue;
    const int level0 = stack[sites.front().first].level;
    const bool mixed = std::any_of(sites.begin(), sites.end(),
                                   [&](const auto& s) { return stack[s.first].level != level0; });
    if (!mixed) continue;
    if (sites.size() > 2)
      throw Error(ErrorKind::Transversality,
                  "point " + d.points()[p].id + " is crossed by a repeated loop on another level");
    const auto& a = sites[0];
    const auto& b = sites[1];
    const bool a_upper = stack[a.first].level > stack[b.first].level;
    const Pass& upper = a_upper ? a.second.pass : b.second.pass;
    const Pass& lower = a_upper ? b.second.pass : a.second.pass;
    const int eps = d.pair_sign(upper, lower);
    out.push_back({static_cast<int>(p), eps > 0 ? CrossingType::Over : CrossingType::Under});
  }
  return out;
}

// --- state sum -------------------------------------------------------------

namespace {

template <class Coeff>
class StateSum {
 public:
  StateSum(const Diagram& d, const ResolutionRule<Coeff>& rule, std::vector<ActiveCrossing> sequence)
      : d_(d), rule_(rule), sequence_(std::move(sequence)) {}

  FormalSum<Coeff> run(std::vector<Loop> loops) {
    original_.assign(d_.points().size(), {true, true});
    for (const auto& l : loops)
      for (const auto& s : d_.passes(l))
        original_[static_cast<std::size_t>(s.pass.point)][static_cast<std::size_t>(s.pass.slot)] = s.pass.forward;
    expand(0, std::move(loops), rule_.one);
    return std::move(result_);
  }

 private:
  void expand(std::size_t i, std::vector<Loop> loops, const Coeff& weight) {
    if (i == sequence_.size()) {
      result_.add(Monomial(std::move(loops), rule_.convention), weight);
      return;
    }
    const ActiveCrossing& x = sequence_[i];
    const auto& branches = x.type == CrossingType::Over ? rule_.over : rule_.under;
    for (const auto& br : branches) {
      if (is_zero(br.weight)) continue;
      const Coeff w = weight * br.weight;
      if (!br.smoothing) {
        expand(i + 1, loops, w);
        continue;
      }
      const auto sites = sites_of(d_, loops, x.point);
      if (sites.size() != 2)
        throw Error(ErrorKind::Transversality,
                    "crossing " + d_.points()[static_cast<std::size_t>(x.point)].id + " lost its strands");
      // Smoothings are fixed by the original strand directions; a strand
      // flipped by an earlier reversal turns one kind into the other.
      Smoothing kind = *br.smoothing;
      if (flipped(sites[0].site.pass) != flipped(sites[1].site.pass))
        kind = kind == Smoothing::Oriented ? Smoothing::Reversal : Smoothing::Oriented;
      expand(i + 1,
             resolve(loops, {sites[0].loop, sites[0].site.position}, {sites[1].loop, sites[1].site.position}, kind),
             w);
    }
  }

  bool flipped(const Pass& p) const {
    return p.forward != original_[static_cast<std::size_t>(p.point)][static_cast<std::size_t>(p.slot)];
  }

  const Diagram& d_;
  const ResolutionRule<Coeff>& rule_;
  std::vector<std::array<bool, 2>> original_;
  std::vector<ActiveCrossing> sequence_;
  FormalSum<Coeff> result_;
};

}  // namespace

template <class Coeff>
FormalSum<Coeff> expect(const Diagram& d, const StackedMonomial& stack, const ResolutionRule<Coeff>& rule,
                        const std::vector<std::size_t>* order) {
  const auto active = active_crossings(d, stack);
  std::vector<ActiveCrossing> sequence;
  if (order) {
    std::vector<std::size_t> check = *order;
    std::sort(check.begin(), check.end());
    std::vector<std::size_t> iota(active.size());
    std::iota(iota.begin(), iota.end(), std::size_t{0});
    if (check != iota) throw Error(ErrorKind::InvalidArgument, "resolution order is not a permutation");
    for (std::size_t k : *order) sequence.push_back(active[k]);
  } else {
    sequence = active;
  }
  std::vector<Loop> loops;
  for (const auto& s : stack) loops.push_back(s.loop);
  return StateSum<Coeff>(d, rule, std::move(sequence)).run(std::move(loops));
}

template FormalSum<Series> expect(const Diagram&, const StackedMonomial&, const ResolutionRule<Series>&,
                                  const std::vector<std::size_t>*);
template FormalSum<Complex> expect(const Diagram&, const StackedMonomial&, const ResolutionRule<Complex>&,
                                   const std::vector<std::size_t>*);

SeriesSum expect(const Diagram& d, const StackedMonomial& stack, const GroupSpec& group, int order) {
  return expect(d, stack, oriented_rule(group, order));
}

namespace {

StackedMonomial stack_of(const std::initializer_list<std::pair<const Monomial*, int>> parts) {
  StackedMonomial s;
  for (const auto& [m, level] : parts)
    for (const auto& l : m->loops()) s.push_back({l, level});
  return s;
}

}  // namespace

template <class Coeff>
FormalSum<Coeff> star(const Diagram& d, const FormalSum<Coeff>& f, const FormalSum<Coeff>& g,
                      const ResolutionRule<Coeff>& rule) {
  FormalSum<Coeff> out;
  for (const auto& [m, a] : f.terms())
    for (const auto& [n, b] : g.terms()) {
      const auto e = expect(d, stack_of({{&m, 1}, {&n, -1}}), rule);
      out += e.scaled(a * b);
    }
  return out;
}

template FormalSum<Series> star(const Diagram&, const FormalSum<Series>&, const FormalSum<Series>&,
                                const ResolutionRule<Series>&);
template FormalSum<Complex> star(const Diagram&, const FormalSum<Complex>&, const FormalSum<Complex>&,
                                 const ResolutionRule<Complex>&);

SeriesSum star(const Diagram& d, const SeriesSum& f, const SeriesSum& g, const GroupSpec& group, int order) {
  return star(d, f, g, oriented_rule(group, order));
}

NumericSum star(const Diagram& d, const NumericSum& f, const NumericSum& g, const GroupSpec& group, double beta) {
  return star(d, f, g, oriented_rule(group, beta));
}

SeriesSum expect_three(const Diagram& d, const SeriesSum& u, const SeriesSum& v, const SeriesSum& w,
                       const std::array<int, 3>& levels, const GroupSpec& group, int order) {
  const auto rule = oriented_rule(group, order);
  SeriesSum out;
  for (const auto& [mu, cu] : u.terms())
    for (const auto& [mv, cv] : v.terms())
      for (const auto& [mw, cw] : w.terms()) {
        const auto e = expect(d, stack_of({{&mu, levels[0]}, {&mv, levels[1]}, {&mw, levels[2]}}), rule);
        out += e.scaled(cu * cv * cw);
      }
  return out;
}

SeriesSum poisson_limit_check(const Diagram& d, const SeriesSum& f, const SeriesSum& g, const GroupSpec& group) {
  constexpr int kOrder = 1;
  auto trunc = [](const Series& c) { return c.truncated(kOrder); };
  const SeriesSum f1 = f.map_coeffs(trunc);
  const SeriesSum g1 = g.map_coeffs(trunc);
  SeriesSum residual = star(d, f1, g1, group, kOrder);
  residual -= f1 * g1;
  residual -= bracket_poly(d, f1, g1, group).scaled(Series::h(kOrder));
  return residual;
}

AssocReport assoc_check(const Diagram& d, const SeriesSum& u, const SeriesSum& v, const SeriesSum& w,
                        const GroupSpec& group, int order, const std::vector<HolonomyAssignment>& assignments,
                        const std::vector<double>& betas) {
  AssocReport r;
  r.level_difference = expect_three(d, u, v, w, {2, 0, -1}, group, order) -
                       expect_three(d, u, v, w, {1, 0, -2}, group, order);
  r.nested_difference = star(d, star(d, u, v, group, order), w, group, order) -
                        star(d, u, star(d, v, w, group, order), group, order);
  // Numeric nesting with closed-form coefficients; inputs contribute their h⁰ values.
  auto constant = [](const Series& c) { return Complex(c[0].get_d(), 0.0); };
  const NumericSum nu = u.map_coeffs(constant), nv = v.map_coeffs(constant), nw = w.map_coeffs(constant);
  for (double beta : betas) {
    const NumericSum left = star(d, star(d, nu, nv, group, beta), nw, group, beta);
    const NumericSum right = star(d, nu, star(d, nv, nw, group, beta), group, beta);
    for (const auto& a : assignments)
      r.numeric_residual = std::max(r.numeric_residual, std::abs(eval_formal(left, a) - eval_formal(right, a)));
  }
  return r;
}

SeriesSum unoriented_kauffman_resolution(const Diagram& d, const StackedMonomial& stack, const GroupSpec& group,
                                         int order) {
  return expect(d, stack, kauffman_rule(group, order));
}

Complex eval_normalized(const NumericSum& s, const HolonomyAssignment& a) {
  Complex total = 0.0;
  for (const auto& [m, c] : s.terms()) {
    const double sign = m.degree() % 2 == 0 ? 1.0 : -1.0;
    total += c * sign * eval_monomial(m, a);
  }
  return total;
}

}  // namespace loopstar
