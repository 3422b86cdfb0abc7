// SPDX-License-Identifier: Apache-2.0
// loopstar: bracket, star product and expectation of Wilson loops on curve
// diagrams, crossing-coefficient tables and the property-check suites.
#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopstar/loopstar.h"

namespace {

struct DomainError {
  std::string message;
};

void ok(ls_status s) {
  if (s != LS_OK) throw DomainError{std::string(ls_status_name(s)) + ": " + ls_last_error()};
}

struct DiagramFree {
  void operator()(ls_diagram* d) const { ls_diagram_free(d); }
};
struct SumFree {
  void operator()(ls_sum* s) const { ls_sum_free(s); }
};
using DiagramPtr = std::unique_ptr<ls_diagram, DiagramFree>;
using SumPtr = std::unique_ptr<ls_sum, SumFree>;

std::string take(char* s) {
  std::string out(s);
  ls_string_free(s);
  return out;
}

struct Options {
  std::string group = "su2";
  int n = 2;
  int order = 8;
  std::optional<double> beta;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string type = "over";
  std::string file;
  std::string suite = "all";
  std::vector<std::string> left, right;
};

ls_format format_of(const Options& o) { return o.format == "text" ? LS_FORMAT_TEXT : LS_FORMAT_JSON; }

ls_group group_of(const Options& o) {
  ls_group g;
  ok(ls_group_parse(o.group.c_str(), o.n, &g));
  return g;
}

DiagramPtr load(const Options& o) {
  ls_diagram* d = nullptr;
  ok(ls_diagram_load(o.file.c_str(), &d));
  return DiagramPtr(d);
}

// Unless given explicitly, the left factor is the curves on the highest
// level and the right factor the rest; with a single level, the first curve
// against the others.
void default_factors(const ls_diagram* d, Options& o) {
  if (!o.left.empty() && !o.right.empty()) return;
  std::size_t count = 0;
  ok(ls_diagram_curve_count(d, &count));
  std::vector<std::pair<std::string, int>> curves;
  for (std::size_t i = 0; i < count; ++i) {
    const char* id = nullptr;
    int level = 0;
    ok(ls_diagram_curve_id(d, i, &id));
    ok(ls_diagram_curve_level(d, i, &level));
    curves.emplace_back(id, level);
  }
  auto contains = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  if (o.left.empty() && o.right.empty()) {
    int top = curves.empty() ? 0 : curves.front().second;
    for (const auto& c : curves) top = std::max(top, c.second);
    const bool single_level = std::all_of(curves.begin(), curves.end(), [&](auto& c) { return c.second == top; });
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const bool left = single_level ? i == 0 : curves[i].second == top;
      (left ? o.left : o.right).push_back(curves[i].first);
    }
    return;
  }
  auto& missing = o.left.empty() ? o.left : o.right;
  const auto& given = o.left.empty() ? o.right : o.left;
  for (const auto& c : curves)
    if (!contains(given, c.first)) missing.push_back(c.first);
}

SumPtr monomial(const ls_diagram* d, const std::vector<std::string>& ids, int order) {
  std::vector<const char*> ptrs;
  for (const auto& s : ids) ptrs.push_back(s.c_str());
  ls_sum* s = nullptr;
  ok(ls_sum_monomial(d, ptrs.data(), ptrs.size(), order, &s));
  return SumPtr(s);
}

void print_sum(const ls_diagram* d, const ls_sum* s, const Options& o) {
  char* text = nullptr;
  ok(ls_sum_format(d, s, format_of(o), &text));
  const std::string out = take(text);
  std::cout << out;
  if (out.empty() || out.back() != '\n') std::cout << '\n';
}

int run_binary(Options& o, bool is_star) {
  const DiagramPtr d = load(o);
  const ls_group g = group_of(o);
  default_factors(d.get(), o);
  const SumPtr f = monomial(d.get(), o.left, o.order);
  const SumPtr h = monomial(d.get(), o.right, o.order);
  ls_sum* out = nullptr;
  if (!is_star) {
    ok(ls_bracket(d.get(), f.get(), h.get(), g, &out));
  } else if (o.beta) {
    ok(ls_star_at(d.get(), f.get(), h.get(), g, *o.beta, &out));
  } else {
    ok(ls_star(d.get(), f.get(), h.get(), g, o.order, &out));
  }
  SumPtr result(out);
  if (!is_star && o.beta) {
    ls_sum* numeric = nullptr;
    ok(ls_sum_eval_coeffs(result.get(), *o.beta, &numeric));
    result.reset(numeric);
  }
  print_sum(d.get(), result.get(), o);
  return 0;
}

int run_expect(const Options& o) {
  const DiagramPtr d = load(o);
  const ls_group g = group_of(o);
  ls_sum* out = nullptr;
  if (o.beta)
    ok(ls_expect_at(d.get(), g, *o.beta, &out));
  else
    ok(ls_expect(d.get(), g, o.order, &out));
  const SumPtr result(out);
  print_sum(d.get(), result.get(), o);
  return 0;
}

int run_coeffs(const Options& o) {
  char* text = nullptr;
  ok(ls_coeffs(group_of(o), o.type == "under" ? LS_UNDER : LS_OVER, o.order, o.beta ? 1 : 0, o.beta.value_or(0.0),
               format_of(o), &text));
  std::cout << take(text);
  return 0;
}

int run_check(const Options& o) {
  char* text = nullptr;
  int failures = 0;
  ok(ls_check(o.suite.c_str(), o.seed, o.order, format_of(o), &text, &failures));
  std::cout << take(text);
  return failures == 0 ? 0 : 1;
}

std::vector<std::string> suite_names() {
  char* text = nullptr;
  std::vector<std::string> names{"all"};
  if (ls_check_suites(&text) != LS_OK) return names;
  std::string all = take(text);
  std::size_t start = 0;
  for (std::size_t nl; (nl = all.find('\n', start)) != std::string::npos; start = nl + 1)
    names.push_back(all.substr(start, nl - start));
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goldman bracket and star product of Wilson loops on curve diagrams"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("LOOPSTAR_ORDER")) {
    try {
      o.order = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "loopstar: LOOPSTAR_ORDER must be an integer\n";
      return 2;
    }
  }

  auto common = [&](CLI::App* sub, bool with_group) {
    if (with_group) {
      sub->add_option("--group", o.group, "su2, sl2r, sl2c, gln or un")
          ->check(CLI::IsMember({"su2", "sl2r", "sl2c", "gln", "un"}, CLI::ignore_case))
          ->capture_default_str();
      sub->add_option("--n", o.n, "matrix size for gln/un")->check(CLI::Range(1, 16))->capture_default_str();
    }
    sub->add_option("--order", o.order, "truncation order K in h (default: LOOPSTAR_ORDER or 8)")
        ->check(CLI::Range(0, 64));
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  };
  auto factors = [&](CLI::App* sub) {
    sub->add_option("--left", o.left, "curves of the left factor (comma separated)")->delimiter(',');
    sub->add_option("--right", o.right, "curves of the right factor (comma separated)")->delimiter(',');
  };

  CLI::App* bracket = app.add_subcommand("bracket", "Poisson bracket of two Wilson-loop monomials");
  common(bracket, true);
  factors(bracket);
  bracket->add_option("--eval-beta", o.beta, "print coefficients as floats");
  bracket->add_option("file", o.file, "diagram file")->required()->check(CLI::ExistingFile);

  CLI::App* star = app.add_subcommand("star", "star product of two Wilson-loop monomials");
  common(star, true);
  factors(star);
  star->add_option("--eval-beta", o.beta, "use closed-form coefficients at this beta");
  star->add_option("file", o.file, "diagram file")->required()->check(CLI::ExistingFile);

  CLI::App* expect = app.add_subcommand("expect", "expectation of all curves at their declared levels");
  common(expect, true);
  expect->add_option("--eval-beta", o.beta, "use closed-form coefficients at this beta");
  expect->add_option("file", o.file, "diagram file")->required()->check(CLI::ExistingFile);

  CLI::App* coeffs = app.add_subcommand("coeffs", "crossing coefficient table");
  common(coeffs, true);
  coeffs->add_option("--type", o.type, "over or under")->check(CLI::IsMember({"over", "under"}))->capture_default_str();
  coeffs->add_option("--eval-beta", o.beta, "also evaluate the closed forms at this beta");

  CLI::App* check = app.add_subcommand("check", "run property-check suites");
  common(check, false);
  check->add_option("--seed", o.seed, "random seed")->capture_default_str();
  check->add_option("suite", o.suite, "suite name or all")->check(CLI::IsMember(suite_names()))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto& c : o.group) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  try {
    if (bracket->parsed()) return run_binary(o, false);
    if (star->parsed()) return run_binary(o, true);
    if (expect->parsed()) return run_expect(o);
    if (coeffs->parsed()) return run_coeffs(o);
    if (check->parsed()) return run_check(o);
  } catch (const DomainError& e) {
    std::cerr << "loopstar: " << e.message << "\n";
    return 1;
  }
  return 2;
}
