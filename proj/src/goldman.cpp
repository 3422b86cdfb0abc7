// SPDX-License-Identifier: Apache-2.0
#include "goldman.hpp"

#include "error.hpp"

namespace loopstar {

std::vector<LoopCrossing> loop_crossings(const Diagram& d, const Loop& c, const Loop& c2) {
  if (share_arc(c, c2))
    throw Error(ErrorKind::Transversality, "loops " + d.loop_text(c) + " and " + d.loop_text(c2) +
                                               " share an arc; they are not transversal");
  std::vector<LoopCrossing> out;
  const auto pa = d.passes(c);
  const auto pb = d.passes(c2);
  for (const auto& a : pa)
    for (const auto& b : pb)
      if (a.pass.point == b.pass.point) out.push_back({a, b, d.pair_sign(a.pass, b.pass)});
  std::sort(out.begin(), out.end(),
            [](const LoopCrossing& x, const LoopCrossing& y) { return x.first.pass.point < y.first.pass.point; });
  return out;
}

namespace {

Loop smoothed(const Loop& c, const Loop& c2, const LoopCrossing& x, Smoothing kind) {
  return resolve({c, c2}, {0, x.first.position}, {1, x.second.position}, kind).front();
}

}  // namespace

SeriesSum bracket_gln(const Diagram& d, const Loop& c, const Loop& c2, int order) {
  SeriesSum out;
  for (const auto& x : loop_crossings(d, c, c2))
    out.add(Monomial({smoothed(c, c2, x, Smoothing::Oriented)}), Series(order, Rational(x.sign)));
  return out;
}

SeriesSum bracket_sl2(const Diagram& d, const Loop& c, const Loop& c2, Sl2Form form, int order) {
  SeriesSum out;
  const Rational half(1, 2);
  for (const auto& x : loop_crossings(d, c, c2)) {
    const Rational eps = x.sign;
    const Monomial concat({smoothed(c, c2, x, Smoothing::Oriented)});
    if (form == Sl2Form::Reversal) {
      out.add(concat, Series(order, Rational(eps * half)));
      out.add(Monomial({smoothed(c, c2, x, Smoothing::Reversal)}), Series(order, Rational(-eps * half)));
    } else {
      out.add(concat, Series(order, eps));
      out.add(Monomial({c, c2}), Series(order, Rational(-eps * half)));
    }
  }
  return out;
}

SeriesSum bracket_loops(const Diagram& d, const Loop& c, const Loop& c2, const GroupSpec& group, Sl2Form form,
                        int order) {
  group.validate();
  if (group.is_rank_two()) return bracket_sl2(d, c, c2, form, order);
  return bracket_gln(d, c, c2, order);
}

SeriesSum bracket_poly(const Diagram& d, const SeriesSum& f, const SeriesSum& g, const GroupSpec& group,
                       Sl2Form form) {
  SeriesSum out;
  for (const auto& [m, a] : f.terms()) {
    for (const auto& [n, b] : g.terms()) {
      const Series ab = a * b;
      const auto& ml = m.loops();
      const auto& nl = n.loops();
      for (std::size_t i = 0; i < ml.size(); ++i) {
        for (std::size_t j = 0; j < nl.size(); ++j) {
          const SeriesSum pair = bracket_loops(d, ml[i], nl[j], group, form, ab.order());
          if (pair.empty()) continue;
          std::vector<Loop> rest;
          for (std::size_t k = 0; k < ml.size(); ++k)
            if (k != i) rest.push_back(ml[k]);
          for (std::size_t k = 0; k < nl.size(); ++k)
            if (k != j) rest.push_back(nl[k]);
          const Monomial others(std::move(rest));
          for (const auto& [pm, pc] : pair.terms()) out.add(others * pm, ab * pc);
        }
      }
    }
  }
  return out;
}

}  // namespace loopstar
