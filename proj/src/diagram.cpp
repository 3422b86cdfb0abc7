// SPDX-License-Identifier: Apache-2.0
#include "diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "error.hpp"

namespace loopstar {

// --- validation ------------------------------------------------------------

std::vector<std::string> validate(const DiagramSpec& spec) {
  std::vector<std::string> errors;
  std::map<std::string, int> visits;
  std::set<std::string> declared;
  for (const auto& p : spec.points) {
    if (p.sign != 1 && p.sign != -1) errors.push_back("point " + p.id + ": sign must be + or -");
    if (!declared.insert(p.id).second) errors.push_back("duplicate point " + p.id);
    visits[p.id] = 0;
  }
  std::set<std::string> curve_ids;
  for (const auto& c : spec.curves) {
    if (!curve_ids.insert(c.id).second) errors.push_back("duplicate curve " + c.id);
    for (const auto& pid : c.passes) {
      auto it = visits.find(pid);
      if (it == visits.end()) {
        errors.push_back("curve " + c.id + " passes undeclared point " + pid);
        continue;
      }
      ++it->second;
    }
  }
  for (const auto& p : spec.points) {
    const int n = visits[p.id];
    if (n < 2) {
      errors.push_back("point " + p.id + ": missing pass (visited " + std::to_string(n) +
                       " time" + (n == 1 ? "" : "s") + ", expected 2)");
    } else if (n > 2) {
      errors.push_back("point " + p.id + ": triple point (visited " + std::to_string(n) +
                       " times, expected 2)");
    }
  }
  return errors;
}

// --- text format -----------------------------------------------------------

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ':') {
      out.push_back({":", static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ':' &&
           line[i] != '#')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

void require_ident(const Token& t, int line, const char* what) {
  if (t.text.empty() || !is_ident_start(t.text[0]) ||
      !std::all_of(t.text.begin(), t.text.end(), is_ident_char))
    throw ParseError(line, t.column, std::string("expected ") + what + ", got '" + t.text + "'");
}

}  // namespace

DiagramSpec parse_diagram_spec(std::string_view text) {
  DiagramSpec spec;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    const auto tokens = tokenize_line(line);
    const int end_col = static_cast<int>(line.size()) + 1;
    if (!tokens.empty()) {
      const std::string& kw = tokens[0].text;
      if (kw == "point") {
        if (tokens.size() < 2) throw ParseError(line_no, end_col, "expected point id");
        require_ident(tokens[1], line_no, "point id");
        if (tokens.size() < 3) throw ParseError(line_no, end_col, "expected sign '+' or '-'");
        const Token& s = tokens[2];
        if (s.text != "+" && s.text != "-")
          throw ParseError(line_no, s.column, "expected sign '+' or '-', got '" + s.text + "'");
        if (tokens.size() > 3) throw ParseError(line_no, tokens[3].column, "unexpected token '" + tokens[3].text + "'");
        spec.points.push_back({tokens[1].text, s.text == "+" ? 1 : -1});
      } else if (kw == "curve") {
        if (tokens.size() < 2) throw ParseError(line_no, end_col, "expected curve id");
        require_ident(tokens[1], line_no, "curve id");
        if (tokens.size() < 3 || tokens[2].text != "level")
          throw ParseError(line_no, tokens.size() < 3 ? end_col : tokens[2].column, "expected 'level'");
        if (tokens.size() < 4) throw ParseError(line_no, end_col, "expected level integer");
        const Token& lv = tokens[3];
        int level = 0;
        const char* b = lv.text.data();
        const char* e = b + lv.text.size();
        auto [ptr, ec] = std::from_chars(b, e, level);
        if (ec != std::errc() || ptr != e)
          throw ParseError(line_no, lv.column, "expected level integer, got '" + lv.text + "'");
        if (tokens.size() < 5 || tokens[4].text != ":")
          throw ParseError(line_no, tokens.size() < 5 ? end_col : tokens[4].column, "expected ':'");
        CurveDecl c{tokens[1].text, level, {}};
        for (std::size_t k = 5; k < tokens.size(); ++k) {
          require_ident(tokens[k], line_no, "point id");
          c.passes.push_back(tokens[k].text);
        }
        spec.curves.push_back(std::move(c));
      } else {
        throw ParseError(line_no, tokens[0].column, "expected 'point' or 'curve', got '" + kw + "'");
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return spec;
}

std::string render_diagram(const DiagramSpec& spec) {
  std::ostringstream os;
  for (const auto& p : spec.points) os << "point " << p.id << ' ' << (p.sign > 0 ? '+' : '-') << '\n';
  for (const auto& c : spec.curves) {
    os << "curve " << c.id << " level " << c.level << ':';
    for (const auto& p : c.passes) os << ' ' << p;
    os << '\n';
  }
  return os.str();
}

// --- loops -----------------------------------------------------------------

std::size_t least_rotation(std::span<const Step> word) {
  const std::size_t n = word.size();
  if (n <= 1) return 0;
  // Booth's algorithm over the doubled word
  std::vector<long> fail(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const Step& sj = word[j % n];
    long i = fail[j - k - 1];
    while (i != -1 && sj != word[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < word[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = fail[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != word[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < word[(k + static_cast<std::size_t>(i) + 1) % n]) k = j;
      fail[j - k] = -1;
    } else {
      fail[j - k] = i + 1;
    }
  }
  return k % n;
}

Loop rotate(const Loop& loop, std::size_t start) {
  Loop out;
  const std::size_t n = loop.steps.size();
  out.steps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.steps.push_back(loop.steps[(start + i) % n]);
  return out;
}

Loop reverse(const Loop& loop) {
  Loop out;
  out.steps.reserve(loop.steps.size());
  for (auto it = loop.steps.rbegin(); it != loop.steps.rend(); ++it) out.steps.push_back({it->arc, !it->reversed});
  return out;
}

Loop canonical(const Loop& loop, Convention convention) {
  Loop fwd = rotate(loop, least_rotation(loop.steps));
  if (convention == Convention::Oriented) return fwd;
  const Loop rev = reverse(loop);
  Loop bwd = rotate(rev, least_rotation(rev.steps));
  return std::min(fwd, bwd);
}

bool share_arc(const Loop& a, const Loop& b) {
  for (const auto& s : a.steps)
    for (const auto& t : b.steps)
      if (s.arc == t.arc) return true;
  return false;
}

// --- diagram ---------------------------------------------------------------

Diagram::Diagram(DiagramSpec spec) : spec_(std::move(spec)) {
  const auto errors = validate(spec_);
  if (!errors.empty()) {
    std::string msg = "invalid diagram:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw Error(ErrorKind::Validation, msg);
  }
  std::unordered_map<std::string, int> point_index;
  for (const auto& p : spec_.points) {
    point_index.emplace(p.id, static_cast<int>(points_.size()));
    points_.push_back(PointInfo{p.id, p.sign, {}, {}, {}});
  }
  std::vector<int> seen(points_.size(), 0);
  for (const auto& c : spec_.curves) {
    CurveInfo info;
    info.id = c.id;
    info.level = c.level;
    info.first_arc = static_cast<int>(arcs_.size());
    const int curve = static_cast<int>(curves_.size());
    for (std::size_t k = 0; k < c.passes.size(); ++k) {
      const int p = point_index.at(c.passes[k]);
      info.passes.push_back(p);
      points_[p].slots[seen[p]++] = PassRef{curve, static_cast<int>(k)};
    }
    info.arc_count = std::max<int>(1, static_cast<int>(c.passes.size()));
    for (int k = 0; k < info.arc_count; ++k)
      arcs_.push_back(ArcInfo{c.id + "." + std::to_string(k), curve, k, std::nullopt, std::nullopt});
    curves_.push_back(std::move(info));
  }
  // arc k of a curve runs from pass k to pass k+1
  for (std::size_t p = 0; p < points_.size(); ++p) {
    for (int slot = 0; slot < 2; ++slot) {
      const PassRef ref = points_[p].slots[slot];
      const CurveInfo& c = curves_[ref.curve];
      const int k = ref.position;
      const int m = c.arc_count;
      const int out = c.first_arc + k;
      const int in = c.first_arc + (k + m - 1) % m;
      points_[p].out_arc[slot] = out;
      points_[p].in_arc[slot] = in;
      arcs_[out].tail = End{static_cast<int>(p), slot};
      arcs_[in].head = End{static_cast<int>(p), slot};
    }
  }
}

std::optional<int> Diagram::find_point(std::string_view id) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].id == id) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Diagram::find_curve(std::string_view id) const {
  for (std::size_t i = 0; i < curves_.size(); ++i)
    if (curves_[i].id == id) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Diagram::find_arc(std::string_view name) const {
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    if (arcs_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

int Diagram::curve_index(std::string_view id) const {
  if (auto c = find_curve(id)) return *c;
  throw Error(ErrorKind::InvalidArgument, "unknown curve '" + std::string(id) + "'");
}

Loop Diagram::curve_loop(int curve) const {
  const CurveInfo& c = curves_.at(static_cast<std::size_t>(curve));
  Loop loop;
  for (int k = 0; k < c.arc_count; ++k) loop.steps.push_back({c.first_arc + k, false});
  return loop;
}

std::optional<Pass> Diagram::junction_pass(const Step& a, const Step& b) const {
  if (a.reversed != b.reversed) return std::nullopt;
  const ArcInfo& x = arcs_[a.arc];
  const ArcInfo& y = arcs_[b.arc];
  if (!a.reversed) {
    if (x.head && y.tail && *x.head == *y.tail) return Pass{x.head->point, x.head->slot, true};
  } else {
    if (x.tail && y.head && *x.tail == *y.head) return Pass{x.tail->point, x.tail->slot, false};
  }
  return std::nullopt;
}

std::vector<PassSite> Diagram::passes(const Loop& loop) const {
  std::vector<PassSite> out;
  const std::size_t n = loop.steps.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (auto p = junction_pass(loop.steps[j], loop.steps[(j + 1) % n])) out.push_back({*p, j});
  }
  return out;
}

std::optional<PassSite> Diagram::find_pass(const Loop& loop, int point) const {
  std::optional<PassSite> found;
  for (const auto& site : passes(loop)) {
    if (site.pass.point != point) continue;
    if (found) return std::nullopt;  // passes twice: not a single pass
    found = site;
  }
  return found;
}

int Diagram::pair_sign(const Pass& first, const Pass& second) const {
  int s = points_.at(static_cast<std::size_t>(first.point)).sign;
  if (first.slot != 0) s = -s;
  if (!first.forward) s = -s;
  if (!second.forward) s = -s;
  return s;
}

std::string Diagram::loop_text(const Loop& loop) const {
  std::string out = "tr(";
  for (std::size_t i = 0; i < loop.steps.size(); ++i) {
    if (i) out += ' ';
    out += arcs_.at(static_cast<std::size_t>(loop.steps[i].arc)).name;
    if (loop.steps[i].reversed) out += "^-1";
  }
  return out + ")";
}

// --- resolution ------------------------------------------------------------

namespace {

// steps[from], steps[from+1], ..., `count` steps cyclically
std::vector<Step> segment(const Loop& loop, std::size_t from, std::size_t count) {
  std::vector<Step> out;
  out.reserve(count);
  const std::size_t n = loop.steps.size();
  for (std::size_t i = 0; i < count; ++i) out.push_back(loop.steps[(from + i) % n]);
  return out;
}

std::vector<Step> reversed_word(std::vector<Step> w) {
  std::reverse(w.begin(), w.end());
  for (auto& s : w) s.reversed = !s.reversed;
  return w;
}

void append(std::vector<Step>& dst, const std::vector<Step>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

}  // namespace

std::vector<Loop> resolve(const std::vector<Loop>& loops, SiteRef first, SiteRef second, Smoothing kind) {
  if (first.loop >= loops.size() || second.loop >= loops.size())
    throw Error(ErrorKind::InvalidArgument, "pass site out of range");
  std::vector<Loop> out;
  for (std::size_t i = 0; i < loops.size(); ++i)
    if (i != first.loop && i != second.loop) out.push_back(loops[i]);

  if (first.loop != second.loop) {
    const Loop& a = loops[first.loop];
    const Loop& b = loops[second.loop];
    // Y1..X1 then Y2..X2 (or its reverse)
    std::vector<Step> wa = segment(a, first.position + 1, a.size());
    std::vector<Step> wb = segment(b, second.position + 1, b.size());
    Loop merged;
    merged.steps = std::move(wa);
    append(merged.steps, kind == Smoothing::Oriented ? wb : reversed_word(wb));
    out.push_back(std::move(merged));
    return out;
  }

  const Loop& l = loops[first.loop];
  const std::size_t n = l.size();
  std::size_t j1 = first.position, j2 = second.position;
  if (j1 == j2) throw Error(ErrorKind::InvalidArgument, "the two passes coincide");
  if (j1 > j2) std::swap(j1, j2);
  // S1 runs from just after j1 through j2, S2 from just after j2 around to j1
  std::vector<Step> s1 = segment(l, j1 + 1, j2 - j1);
  std::vector<Step> s2 = segment(l, j2 + 1, n - (j2 - j1));
  if (kind == Smoothing::Oriented) {
    out.push_back(Loop{std::move(s1)});
    out.push_back(Loop{std::move(s2)});
  } else {
    Loop joined{std::move(s2)};
    append(joined.steps, reversed_word(std::move(s1)));
    out.push_back(std::move(joined));
  }
  return out;
}

Loop concat_at(const Diagram& d, const Loop& c, const Loop& c2, int point) {
  const auto pa = d.find_pass(c, point);
  const auto pb = d.find_pass(c2, point);
  if (!pa || !pb)
    throw Error(ErrorKind::InvalidArgument,
                "point " + d.points().at(static_cast<std::size_t>(point)).id +
                    " is not a crossing between the two loops");
  auto r = resolve({c, c2}, {0, pa->position}, {1, pb->position}, Smoothing::Oriented);
  return r.front();
}

}  // namespace loopstar
