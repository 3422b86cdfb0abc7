// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loopstar {

// ---------------------------------------------------------------------------
// Declarations as written in a diagram file. A DiagramSpec may be invalid;
// validate() lists the problems and Diagram's constructor refuses it.

struct PointDecl {
  std::string id;
  int sign = 1;  // ε for the ordered pair (first pass, second pass)
};

struct CurveDecl {
  std::string id;
  int level = 0;
  std::vector<std::string> passes;  // cyclic; empty for a free loop
};

struct DiagramSpec {
  std::vector<PointDecl> points;
  std::vector<CurveDecl> curves;
};

/// Empty result means the spec is valid: every point is visited exactly
/// twice, ids are unique and every pass names a declared point.
std::vector<std::string> validate(const DiagramSpec& spec);

/// Throws ParseError with 1-based line/column on syntax errors. Semantic
/// checks are left to validate().
DiagramSpec parse_diagram_spec(std::string_view text);
std::string render_diagram(const DiagramSpec& spec);

// ---------------------------------------------------------------------------
// Loops are cyclic words of arcs. An arc is the piece of a curve between two
// consecutive passes; a curve with no passes is one closed arc.

struct Step {
  int arc = 0;
  bool reversed = false;
  auto operator<=>(const Step&) const = default;
};

struct Loop {
  std::vector<Step> steps;
  auto operator<=>(const Loop&) const = default;
  std::size_t size() const { return steps.size(); }
};

enum class Convention { Oriented, Unoriented };

/// Index of the lexicographically least rotation (Booth's algorithm).
std::size_t least_rotation(std::span<const Step> word);

Loop rotate(const Loop& loop, std::size_t start);
Loop reverse(const Loop& loop);
Loop canonical(const Loop& loop, Convention convention = Convention::Oriented);

/// A strand pass: the loop goes through `point` along the strand in `slot`
/// (0 = first pass, 1 = second pass), along (forward) or against the arcs.
struct Pass {
  int point = 0;
  int slot = 0;
  bool forward = true;
  friend bool operator==(const Pass&, const Pass&) = default;
};

/// Junction `position` sits between steps[position] and steps[position + 1].
struct PassSite {
  Pass pass;
  std::size_t position = 0;
};

enum class Smoothing {
  Oriented,  // in1 -> out2, in2 -> out1 (concatenation / self-splice)
  Reversal,  // in1 -> in2 reversed, out1 reversed -> out2 (C *_p C̄′)
};

class Diagram {
 public:
  struct End {
    int point;
    int slot;
    friend bool operator==(const End&, const End&) = default;
  };
  struct ArcInfo {
    std::string name;  // "<curve>.<index>"
    int curve = 0;
    int index = 0;
    std::optional<End> tail;  // where the arc starts
    std::optional<End> head;  // where the arc ends
  };
  struct PassRef {
    int curve = 0;
    int position = 0;
  };
  struct PointInfo {
    std::string id;
    int sign = 1;
    std::array<PassRef, 2> slots{};
    std::array<int, 2> in_arc{};
    std::array<int, 2> out_arc{};
  };
  struct CurveInfo {
    std::string id;
    int level = 0;
    std::vector<int> passes;  // point indices
    int first_arc = 0;
    int arc_count = 1;
  };

  Diagram() = default;
  /// Throws Error(Validation) listing every problem found by validate().
  explicit Diagram(DiagramSpec spec);

  static Diagram parse(std::string_view text) { return Diagram(parse_diagram_spec(text)); }
  std::string render() const { return render_diagram(spec_); }
  const DiagramSpec& spec() const noexcept { return spec_; }

  const std::vector<PointInfo>& points() const noexcept { return points_; }
  const std::vector<CurveInfo>& curves() const noexcept { return curves_; }
  const std::vector<ArcInfo>& arcs() const noexcept { return arcs_; }

  std::optional<int> find_point(std::string_view id) const;
  std::optional<int> find_curve(std::string_view id) const;
  std::optional<int> find_arc(std::string_view name) const;
  int curve_index(std::string_view id) const;  // throws on unknown id

  /// The curve traversed along its arcs, starting at arc <curve>.0.
  Loop curve_loop(int curve) const;

  /// Pass of a point at the junction a -> b, if that junction is one.
  std::optional<Pass> junction_pass(const Step& a, const Step& b) const;
  std::vector<PassSite> passes(const Loop& loop) const;
  std::optional<PassSite> find_pass(const Loop& loop, int point) const;

  /// ε of the ordered pair (first, second) of passes through one point.
  int pair_sign(const Pass& first, const Pass& second) const;

  std::string loop_text(const Loop& loop) const;

 private:
  DiagramSpec spec_;
  std::vector<PointInfo> points_;
  std::vector<CurveInfo> curves_;
  std::vector<ArcInfo> arcs_;
};

/// Resolves the crossing formed by two pass sites of `loops` (both sites on
/// one loop is allowed). Loops not involved keep their relative order; the
/// result loops are appended at the end.
struct SiteRef {
  std::size_t loop = 0;
  std::size_t position = 0;
};
std::vector<Loop> resolve(const std::vector<Loop>& loops, SiteRef first, SiteRef second,
                          Smoothing kind);

/// C *_p C′: traverse C from p back to p, then C′ from p back to p.
/// Throws Error(InvalidArgument) unless each loop passes p exactly once.
Loop concat_at(const Diagram& d, const Loop& c, const Loop& c2, int point);

/// True when the two loops use a common arc (not transversal).
bool share_arc(const Loop& a, const Loop& b);

}  // namespace loopstar
