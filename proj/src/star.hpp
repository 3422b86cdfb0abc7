// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "coeff.hpp"
#include "diagram.hpp"
#include "formal_sum.hpp"
#include "holonomy.hpp"

namespace loopstar {

/// One outcome of resolving a crossing: a weight and the reconnection to
/// apply (none keeps the crossing as a bare, virtual double point).
template <class Coeff>
struct Branch {
  Coeff weight;
  std::optional<Smoothing> smoothing;
};

/// How active crossings are resolved: two branches per crossing type, the
/// canonical-form convention of the output, and the ring's unit.
template <class Coeff>
struct ResolutionRule {
  std::array<Branch<Coeff>, 2> over;
  std::array<Branch<Coeff>, 2> under;
  Convention convention = Convention::Oriented;
  Coeff one;
};

/// c_virtual·(bare) + c_smooth·(oriented smoothing), per group.
ResolutionRule<Series> oriented_rule(const GroupSpec& group, int order);
ResolutionRule<Complex> oriented_rule(const GroupSpec& group, double beta);
/// Rank-2 unoriented resolution: over → a·(oriented) + b·(reversal),
/// under → b·(oriented) + a·(reversal), in the variables W̃ = −W. Throws
/// Error(UnsupportedGroup) for GL(n)/U(n).
ResolutionRule<Series> kauffman_rule(const GroupSpec& group, int order);
ResolutionRule<Complex> kauffman_rule(const GroupSpec& group, double beta);

struct StackedLoop {
  Loop loop;
  int level = 0;
};
using StackedMonomial = std::vector<StackedLoop>;

/// The curves of a diagram at their declared levels.
StackedMonomial stacked_curves(const Diagram& d);

struct ActiveCrossing {
  int point = 0;
  CrossingType type = CrossingType::Over;
};

/// Crossings whose strands lie on loops of different levels, sorted by point.
/// Over when ε of (upper strand, lower strand) is +1. Throws
/// Error(Transversality) when loops on different levels share an arc, or a
/// repeated loop takes part in an active crossing.
std::vector<ActiveCrossing> active_crossings(const Diagram& d, const StackedMonomial& stack);

/// State sum over all 2^k resolutions of the active crossings, applied in
/// point order or in `order` (indices into active_crossings()).
template <class Coeff>
FormalSum<Coeff> expect(const Diagram& d, const StackedMonomial& stack, const ResolutionRule<Coeff>& rule,
                        const std::vector<std::size_t>* order = nullptr);

SeriesSum expect(const Diagram& d, const StackedMonomial& stack, const GroupSpec& group, int order);

/// f ⋆ g: f stacked at level +1, g at −1, extended bilinearly.
template <class Coeff>
FormalSum<Coeff> star(const Diagram& d, const FormalSum<Coeff>& f, const FormalSum<Coeff>& g,
                      const ResolutionRule<Coeff>& rule);

SeriesSum star(const Diagram& d, const SeriesSum& f, const SeriesSum& g, const GroupSpec& group, int order);
NumericSum star(const Diagram& d, const NumericSum& f, const NumericSum& g, const GroupSpec& group, double beta);

/// Three factors at the given levels, extended trilinearly.
SeriesSum expect_three(const Diagram& d, const SeriesSum& u, const SeriesSum& v, const SeriesSum& w,
                       const std::array<int, 3>& levels, const GroupSpec& group, int order);

/// Slots 0 and 1 of star(f, g) − f·g − h·bracket(f, g); the zero sum when
/// the Poisson limit holds.
SeriesSum poisson_limit_check(const Diagram& d, const SeriesSum& f, const SeriesSum& g, const GroupSpec& group);

struct AssocReport {
  SeriesSum level_difference;   // ⟨(T_2ε u) v (T_−ε w)⟩ − ⟨(T_ε u) v (T_−2ε w)⟩
  SeriesSum nested_difference;  // (u⋆v)⋆w − u⋆(v⋆w), exact
  double numeric_residual = 0;  // max over β and assignments, closed-form coefficients
};

AssocReport assoc_check(const Diagram& d, const SeriesSum& u, const SeriesSum& v, const SeriesSum& w,
                        const GroupSpec& group, int order, const std::vector<HolonomyAssignment>& assignments,
                        const std::vector<double>& betas);

/// Kauffman-normalized resolution of a stacked diagram (output in W̃ = −W).
SeriesSum unoriented_kauffman_resolution(const Diagram& d, const StackedMonomial& stack, const GroupSpec& group,
                                         int order);

/// Evaluates a sum written in W̃ = −W: each monomial picks up (−1)^degree.
Complex eval_normalized(const NumericSum& s, const HolonomyAssignment& a);

}  // namespace loopstar
