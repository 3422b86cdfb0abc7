// SPDX-License-Identifier: Apache-2.0
#include "loopstar/loopstar.h"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "checks.hpp"
#include "coeff.hpp"
#include "error.hpp"
#include "goldman.hpp"
#include "holonomy.hpp"
#include "star.hpp"

struct ls_diagram {
  loopstar::Diagram d;
};

struct ls_sum {
  std::variant<loopstar::SeriesSum, loopstar::NumericSum> v;
};

namespace {

using namespace loopstar;

thread_local std::string g_last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ls_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return LS_ERR_INVALID_ARGUMENT;
    case ErrorKind::Parse: return LS_ERR_PARSE;
    case ErrorKind::Validation: return LS_ERR_VALIDATION;
    case ErrorKind::Transversality: return LS_ERR_TRANSVERSALITY;
    case ErrorKind::UnsupportedGroup: return LS_ERR_UNSUPPORTED_GROUP;
    case ErrorKind::MissingArc: return LS_ERR_MISSING_ARC;
  }
  return LS_ERR_INTERNAL;
}

template <class F>
ls_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return LS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const IoError& e) {
    g_last_error = e.what();
    return LS_ERR_IO;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return LS_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorKind::InvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

GroupSpec to_spec(ls_group g) {
  GroupSpec s;
  switch (g.kind) {
    case LS_GROUP_SU2: s = GroupSpec::su2(); break;
    case LS_GROUP_SL2R: s = GroupSpec::sl2r(); break;
    case LS_GROUP_SL2C: s = GroupSpec::sl2c(); break;
    case LS_GROUP_GLN: s = GroupSpec::gln(g.n); break;
    case LS_GROUP_UN: s = GroupSpec::un(g.n); break;
    default: throw Error(ErrorKind::UnsupportedGroup, "unknown group kind");
  }
  s.validate();
  return s;
}

ls_group from_spec(const GroupSpec& s) {
  switch (s.kind) {
    case GroupKind::SU2: return {LS_GROUP_SU2, 2};
    case GroupKind::SL2R: return {LS_GROUP_SL2R, 2};
    case GroupKind::SL2C: return {LS_GROUP_SL2C, 2};
    case GroupKind::GLn: return {LS_GROUP_GLN, s.n};
    case GroupKind::Un: return {LS_GROUP_UN, s.n};
  }
  throw Error(ErrorKind::UnsupportedGroup, "unknown group kind");
}

void check_order(int order) {
  if (order < 0 || order > 64) throw Error(ErrorKind::InvalidArgument, "order must lie in [0, 64]");
}

// Sums carry arc indices; reject one built against a diagram with fewer arcs.
template <class Sum>
void check_arcs(const Diagram& d, const Sum& s) {
  for (const auto& [m, c] : s.terms())
    for (const auto& l : m.loops())
      for (const auto& step : l.steps)
        if (step.arc < 0 || static_cast<std::size_t>(step.arc) >= d.arcs().size())
          throw Error(ErrorKind::MissingArc, "sum refers to an arc the diagram does not have");
}

void check_sum(const Diagram& d, const ls_sum* s) {
  require(s, "sum");
  std::visit([&](const auto& x) { check_arcs(d, x); }, s->v);
}

const SeriesSum& series_of(const ls_sum* s) {
  const auto* p = std::get_if<SeriesSum>(&s->v);
  if (!p) throw Error(ErrorKind::InvalidArgument, "expected a sum with series coefficients");
  return *p;
}

NumericSum numeric_of(const ls_sum* s, double beta) {
  if (const auto* p = std::get_if<NumericSum>(&s->v)) return *p;
  return evaluate_coeffs(std::get<SeriesSum>(s->v), beta);
}

ls_sum* make_sum(SeriesSum s) { return new ls_sum{std::move(s)}; }
ls_sum* make_sum(NumericSum s) { return new ls_sum{std::move(s)}; }

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

extern "C" {

const char* ls_last_error(void) { return g_last_error.c_str(); }

const char* ls_status_name(ls_status status) {
  switch (status) {
    case LS_OK: return "ok";
    case LS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LS_ERR_PARSE: return "parse error";
    case LS_ERR_VALIDATION: return "validation error";
    case LS_ERR_TRANSVERSALITY: return "transversality error";
    case LS_ERR_UNSUPPORTED_GROUP: return "unsupported group";
    case LS_ERR_MISSING_ARC: return "missing arc";
    case LS_ERR_IO: return "i/o error";
    case LS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ls_string_free(char* s) { delete[] s; }

ls_status ls_group_parse(const char* name, int n, ls_group* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = from_spec(parse_group(name, n));
  });
}

ls_status ls_diagram_parse(const char* text, ls_diagram** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new ls_diagram{Diagram::parse(text)};
  });
}

ls_status ls_diagram_load(const char* path, ls_diagram** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      *out = new ls_diagram{Diagram::parse(ss.str())};
    } catch (const ParseError& e) {
      throw Error(ErrorKind::Parse, std::string(path) + ":" + e.what());
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(path) + ": " + e.what());
    }
  });
}

void ls_diagram_free(ls_diagram* d) { delete d; }

ls_status ls_diagram_render(const ls_diagram* d, char** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = dup_string(d->d.render());
  });
}

ls_status ls_diagram_curve_count(const ls_diagram* d, size_t* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = d->d.curves().size();
  });
}

ls_status ls_diagram_curve_id(const ls_diagram* d, size_t index, const char** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    if (index >= d->d.curves().size()) throw Error(ErrorKind::InvalidArgument, "curve index out of range");
    *out = d->d.curves()[index].id.c_str();
  });
}

ls_status ls_diagram_curve_level(const ls_diagram* d, size_t index, int* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    if (index >= d->d.curves().size()) throw Error(ErrorKind::InvalidArgument, "curve index out of range");
    *out = d->d.curves()[index].level;
  });
}

ls_status ls_sum_monomial(const ls_diagram* d, const char* const* curve_ids, size_t count, int order,
                          ls_sum** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    check_order(order);
    if (count > 0) require(curve_ids, "curve_ids");
    std::vector<Loop> loops;
    for (size_t i = 0; i < count; ++i) {
      require(curve_ids[i], "curve id");
      const auto c = d->d.find_curve(curve_ids[i]);
      if (!c) throw Error(ErrorKind::InvalidArgument, std::string("unknown curve '") + curve_ids[i] + "'");
      loops.push_back(d->d.curve_loop(*c));
    }
    *out = make_sum(unit_sum(Monomial(std::move(loops)), order));
  });
}

ls_status ls_sum_from_json(const ls_diagram* d, const char* json, int order, ls_sum** out) {
  return guarded([&] {
    require(d, "diagram");
    require(json, "json");
    require(out, "out");
    check_order(order);
    *out = make_sum(series_sum_from_json(d->d, json, order));
  });
}

void ls_sum_free(ls_sum* s) { delete s; }

ls_status ls_sum_size(const ls_sum* s, size_t* out) {
  return guarded([&] {
    require(s, "sum");
    require(out, "out");
    *out = std::visit([](const auto& x) { return x.size(); }, s->v);
  });
}

ls_status ls_sum_is_numeric(const ls_sum* s, int* out) {
  return guarded([&] {
    require(s, "sum");
    require(out, "out");
    *out = std::holds_alternative<NumericSum>(s->v) ? 1 : 0;
  });
}

ls_status ls_sum_format(const ls_diagram* d, const ls_sum* s, ls_format format, char** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    check_sum(d->d, s);
    if (format != LS_FORMAT_JSON && format != LS_FORMAT_TEXT) throw Error(ErrorKind::InvalidArgument, "bad format");
    *out = dup_string(std::visit(
        [&](const auto& x) { return format == LS_FORMAT_JSON ? to_json(d->d, x) : to_text(d->d, x); }, s->v));
  });
}

ls_status ls_sum_eval_coeffs(const ls_sum* s, double beta, ls_sum** out) {
  return guarded([&] {
    require(s, "sum");
    require(out, "out");
    *out = make_sum(numeric_of(s, beta));
  });
}

ls_status ls_sum_evaluate(const ls_diagram* d, const ls_sum* s, const char* assignment_json, double beta,
                          double* re, double* im) {
  return guarded([&] {
    require(d, "diagram");
    require(assignment_json, "assignment");
    require(re, "re");
    require(im, "im");
    check_sum(d->d, s);
    const HolonomyAssignment a = assignment_from_json(d->d, assignment_json);
    const Complex z = eval_formal(numeric_of(s, beta), a);
    *re = z.real();
    *im = z.imag();
  });
}

ls_status ls_random_assignment(const ls_diagram* d, ls_group group, uint64_t seed, char** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    Rng rng(seed);
    *out = dup_string(assignment_to_json(d->d, HolonomyAssignment::random(d->d, to_spec(group), rng)));
  });
}

ls_status ls_bracket(const ls_diagram* d, const ls_sum* f, const ls_sum* g, ls_group group, ls_sum** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    check_sum(d->d, f);
    check_sum(d->d, g);
    *out = make_sum(bracket_poly(d->d, series_of(f), series_of(g), to_spec(group)));
  });
}

ls_status ls_star(const ls_diagram* d, const ls_sum* f, const ls_sum* g, ls_group group, int order, ls_sum** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    check_order(order);
    check_sum(d->d, f);
    check_sum(d->d, g);
    *out = make_sum(star(d->d, series_of(f), series_of(g), to_spec(group), order));
  });
}

ls_status ls_star_at(const ls_diagram* d, const ls_sum* f, const ls_sum* g, ls_group group, double beta,
                     ls_sum** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    check_sum(d->d, f);
    check_sum(d->d, g);
    *out = make_sum(star(d->d, numeric_of(f, beta), numeric_of(g, beta), to_spec(group), beta));
  });
}

ls_status ls_expect(const ls_diagram* d, ls_group group, int order, ls_sum** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    check_order(order);
    *out = make_sum(expect(d->d, stacked_curves(d->d), to_spec(group), order));
  });
}

ls_status ls_expect_at(const ls_diagram* d, ls_group group, double beta, ls_sum** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = make_sum(expect(d->d, stacked_curves(d->d), oriented_rule(to_spec(group), beta)));
  });
}

ls_status ls_coeffs(ls_group group, ls_crossing type, int order, int evaluate, double beta, ls_format format,
                    char** out) {
  return guarded([&] {
    require(out, "out");
    check_order(order);
    if (type != LS_OVER && type != LS_UNDER) throw Error(ErrorKind::InvalidArgument, "bad crossing type");
    const GroupSpec g = to_spec(group);
    const CrossingType t = type == LS_OVER ? CrossingType::Over : CrossingType::Under;
    const CrossingCoeffs cc = crossing_coeffs(g, t, order);
    const auto closed = closed_form_text(g, t);
    if (format == LS_FORMAT_JSON) {
      auto j = nlohmann::ordered_json::parse(coeff_table_json(g, t, order));
      j["closed_form"] = {{"virtual", closed[0]}, {"smooth", closed[1]}};
      if (evaluate) {
        const CrossingValues v = crossing_values(g, t, beta);
        j["beta"] = beta;
        j["values"] = {{"virtual", {v.c_virtual.real(), v.c_virtual.imag()}},
                       {"smooth", {v.c_smooth.real(), v.c_smooth.imag()}}};
      }
      *out = dup_string(j.dump(2) + "\n");
      return;
    }
    if (format != LS_FORMAT_TEXT) throw Error(ErrorKind::InvalidArgument, "bad format");
    std::ostringstream os;
    os << "group " << g.name();
    if (!g.is_rank_two()) os << " n=" << g.n;
    os << ", " << to_string(t) << ", K=" << order << ", h = 2 beta\n";
    std::vector<std::array<std::string, 4>> rows{{"term", "series", "closed form", evaluate ? "value" : ""}};
    const Series* series[2] = {&cc.c_virtual, &cc.c_smooth};
    const char* names[2] = {"virtual", "smooth"};
    CrossingValues v{};
    if (evaluate) v = crossing_values(g, t, beta);
    for (int k = 0; k < 2; ++k)
      rows.push_back({names[k], series[k]->pretty(), closed[static_cast<std::size_t>(k)],
                      evaluate ? complex_text(k == 0 ? v.c_virtual : v.c_smooth) : ""});
    std::array<std::size_t, 4> width{};
    for (const auto& r : rows)
      for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], r[c].size());
    for (const auto& r : rows) {
      std::string line;
      for (std::size_t c = 0; c < 4; ++c)
        if (!r[c].empty() || c < 3) line += (c ? "  " : "") + pad(r[c], c == 3 ? 0 : width[c]);
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << "\n";
    }
    if (evaluate) os << "values at beta = " << std::setprecision(12) << beta << "\n";
    *out = dup_string(os.str());
  });
}

ls_status ls_check(const char* suite, uint64_t seed, int order, ls_format format, char** out, int* failures) {
  return guarded([&] {
    require(suite, "suite");
    require(out, "out");
    require(failures, "failures");
    check_order(order);
    const auto results = run_checks(suite, {seed, order});
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    if (format == LS_FORMAT_JSON) {
      nlohmann::ordered_json j;
      j["suite"] = suite;
      j["seed"] = seed;
      j["K"] = order;
      j["results"] = nlohmann::ordered_json::array();
      for (const auto& r : results)
        j["results"].push_back({{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      j["checks"] = results.size();
      j["failures"] = failed;
      *out = dup_string(j.dump(2) + "\n");
    } else {
      std::ostringstream os;
      for (const auto& r : results) {
        os << (r.passed ? "PASS  " : "FAIL  ") << r.suite << ": " << r.name;
        if (!r.detail.empty()) os << "  [" << r.detail << "]";
        os << "\n";
      }
      os << results.size() << " checks, " << failed << " failed\n";
      *out = dup_string(os.str());
    }
    *failures = failed;
  });
}

ls_status ls_check_suites(char** out) {
  return guarded([&] {
    require(out, "out");
    std::string s;
    for (const auto& name : check_suites()) s += name + "\n";
    *out = dup_string(s);
  });
}

}  // extern "C"
