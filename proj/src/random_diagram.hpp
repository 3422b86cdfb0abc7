// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "diagram.hpp"
#include "formal_sum.hpp"
#include "holonomy.hpp"

namespace loopstar {

struct RandomDiagramOptions {
  int curves = 3;
  int max_inter = 2;  // crossings per pair of curves, drawn from [min_inter, max_inter]
  int min_inter = 0;
  int max_self = 1;   // self-crossings per curve, drawn from [0, max_self]
};

/// Random combinatorial diagram: curves "C0", "C1", ... at level 0, points
/// "p0", "p1", ... with random signs, passes inserted at random positions.
DiagramSpec random_diagram_spec(Rng& rng, const RandomDiagramOptions& options = {});

/// Random polynomial in the Wilson loops of `curves`: up to `terms`
/// monomials, each a product of distinct curves, with small rational
/// coefficients (h⁰ and h¹ slots) at the given order.
SeriesSum random_polynomial(const Diagram& d, const std::vector<int>& curves, Rng& rng, int order, int terms = 2);

}  // namespace loopstar
