// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "coeff.hpp"
#include "diagram.hpp"
#include "formal_sum.hpp"

namespace loopstar {

/// A transversal crossing of two distinct loops: the pass of the first loop,
/// the pass of the second, and ε for that ordered pair.
struct LoopCrossing {
  PassSite first;
  PassSite second;
  int sign = 1;
};

/// Crossings of two loops, in point order. Throws Error(Transversality) if
/// the loops share an arc.
std::vector<LoopCrossing> loop_crossings(const Diagram& d, const Loop& c, const Loop& c2);

/// Σ_i ε_i W_{C *_i C′}, coefficients in the h⁰ slot.
SeriesSum bracket_gln(const Diagram& d, const Loop& c, const Loop& c2, int order = kDefaultOrder);

enum class Sl2Form {
  Reversal,  // ½ Σ ε_i (W_{C*_iC′} − W_{C*_iC̄′})
  Alt,       // Σ ε_i (W_{C*_iC′} − ½ W_C W_{C′})
};

SeriesSum bracket_sl2(const Diagram& d, const Loop& c, const Loop& c2, Sl2Form form,
                      int order = kDefaultOrder);

/// Bracket of two loops in the convention of `group` (Alt form for rank 2).
SeriesSum bracket_loops(const Diagram& d, const Loop& c, const Loop& c2, const GroupSpec& group,
                        Sl2Form form = Sl2Form::Alt, int order = kDefaultOrder);

/// Bilinear extension with the Leibniz rule over the loops of each monomial.
SeriesSum bracket_poly(const Diagram& d, const SeriesSum& f, const SeriesSum& g, const GroupSpec& group,
                       Sl2Form form = Sl2Form::Alt);

}  // namespace loopstar
