// SPDX-License-Identifier: Apache-2.0
#include "random_diagram.hpp"

#include <string>

#include "error.hpp"

namespace loopstar {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void insert_random(std::vector<std::string>& passes, const std::string& id, Rng& rng) {
  const int at = uniform(rng, 0, static_cast<int>(passes.size()));
  passes.insert(passes.begin() + at, id);
}

}  // namespace

DiagramSpec random_diagram_spec(Rng& rng, const RandomDiagramOptions& options) {
  if (options.curves < 1 || options.min_inter < 0 || options.max_inter < options.min_inter || options.max_self < 0)
    throw Error(ErrorKind::InvalidArgument, "bad random diagram options");
  DiagramSpec spec;
  spec.curves.resize(static_cast<std::size_t>(options.curves));
  for (int c = 0; c < options.curves; ++c) spec.curves[static_cast<std::size_t>(c)].id = "C" + std::to_string(c);

  auto new_point = [&] {
    const std::string id = "p" + std::to_string(spec.points.size());
    spec.points.push_back({id, uniform(rng, 0, 1) ? 1 : -1});
    return id;
  };
  for (int i = 0; i < options.curves; ++i)
    for (int j = i + 1; j < options.curves; ++j)
      for (int k = uniform(rng, options.min_inter, options.max_inter); k > 0; --k) {
        const std::string id = new_point();
        insert_random(spec.curves[static_cast<std::size_t>(i)].passes, id, rng);
        insert_random(spec.curves[static_cast<std::size_t>(j)].passes, id, rng);
      }
  for (auto& curve : spec.curves)
    for (int k = uniform(rng, 0, options.max_self); k > 0; --k) {
      const std::string id = new_point();
      insert_random(curve.passes, id, rng);
      insert_random(curve.passes, id, rng);
    }
  return spec;
}

SeriesSum random_polynomial(const Diagram& d, const std::vector<int>& curves, Rng& rng, int order, int terms) {
  if (curves.empty() || terms < 1) throw Error(ErrorKind::InvalidArgument, "empty random polynomial request");
  SeriesSum out;
  for (int t = 0; t < terms; ++t) {
    std::vector<Loop> loops;
    for (int c : curves)
      if (uniform(rng, 0, 1)) loops.push_back(d.curve_loop(c));
    if (loops.empty()) loops.push_back(d.curve_loop(curves[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(curves.size()) - 1))]));
    Series coeff(order);
    coeff[0] = ratio(uniform(rng, -3, 3), uniform(rng, 1, 3));
    if (order >= 1) coeff[1] = ratio(uniform(rng, -2, 2), uniform(rng, 1, 2));
    if (coeff.is_zero()) coeff[0] = 1;
    out.add(Monomial(std::move(loops)), coeff);
  }
  if (out.empty()) out.add(Monomial({d.curve_loop(curves.front())}), Series::one(order));
  return out;
}

}  // namespace loopstar
