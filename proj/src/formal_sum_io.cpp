// SPDX-License-Identifier: Apache-2.0
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "coeff.hpp"
#include "error.hpp"
#include "formal_sum.hpp"

namespace loopstar {

using nlohmann::ordered_json;

namespace {

ordered_json monomial_json(const Diagram& d, const Monomial& m) {
  ordered_json loops = ordered_json::array();
  for (const auto& loop : m.loops()) {
    ordered_json steps = ordered_json::array();
    for (const auto& s : loop.steps)
      steps.push_back({d.arcs().at(static_cast<std::size_t>(s.arc)).name, s.reversed ? "-" : "+"});
    loops.push_back(std::move(steps));
  }
  return loops;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

NumericSum evaluate_coeffs(const SeriesSum& s, double beta) {
  return s.map_coeffs([&](const Series& c) { return eval_at(c, beta); });
}

std::string monomial_text(const Diagram& d, const Monomial& m) {
  if (m.is_constant()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.loops().size(); ++i) {
    if (i) out += " * ";
    out += d.loop_text(m.loops()[i]);
  }
  return out;
}

std::string to_json(const Diagram& d, const SeriesSum& s) {
  ordered_json j = ordered_json::array();
  for (const auto& [m, c] : s.terms()) {
    ordered_json term;
    term["coeff"] = c.to_strings();
    term["monomial"] = monomial_json(d, m);
    j.push_back(std::move(term));
  }
  return j.dump();
}

std::string to_json(const Diagram& d, const NumericSum& s) {
  ordered_json j = ordered_json::array();
  for (const auto& [m, c] : s.terms()) {
    ordered_json term;
    term["value"] = {c.real(), c.imag()};
    term["monomial"] = monomial_json(d, m);
    j.push_back(std::move(term));
  }
  return j.dump();
}

SeriesSum series_sum_from_json(const Diagram& d, const std::string& text, int order) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("formal sum JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorKind::InvalidArgument, "formal sum JSON must be an array");
  SeriesSum out;
  try {
    for (const auto& term : j) {
      std::vector<Rational> coeffs;
      for (const auto& c : term.at("coeff")) coeffs.push_back(parse_rational(c.get<std::string>()));
      std::vector<Loop> loops;
      for (const auto& lj : term.at("monomial")) {
        Loop loop;
        for (const auto& sj : lj) {
          const auto name = sj.at(0).get<std::string>();
          const auto dir = sj.at(1).get<std::string>();
          const auto arc = d.find_arc(name);
          if (!arc) throw Error(ErrorKind::InvalidArgument, "unknown arc '" + name + "'");
          if (dir != "+" && dir != "-") throw Error(ErrorKind::InvalidArgument, "direction must be '+' or '-'");
          loop.steps.push_back({*arc, dir == "-"});
        }
        if (loop.steps.empty()) throw Error(ErrorKind::InvalidArgument, "empty loop in monomial");
        loops.push_back(std::move(loop));
      }
      out.add(Monomial(std::move(loops)), Series(order, std::move(coeffs)));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("formal sum JSON: ") + e.what());
  }
  return out;
}

std::string to_text(const Diagram& d, const SeriesSum& s) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::size_t width = 5;
  for (const auto& [m, c] : s.terms()) {
    rows.emplace_back(c.pretty(), monomial_text(d, m));
    width = std::max(width, rows.back().first.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "coeff" << "  monomial\n";
  for (const auto& [c, m] : rows) os << std::left << std::setw(static_cast<int>(width)) << c << "  " << m << '\n';
  if (rows.empty()) os << "(empty sum)\n";
  return os.str();
}

std::string to_text(const Diagram& d, const NumericSum& s) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::size_t width = 5;
  for (const auto& [m, c] : s.terms()) {
    std::string v = format_double(c.real());
    if (c.imag() != 0.0) v += (c.imag() < 0 ? " - " : " + ") + format_double(std::abs(c.imag())) + "i";
    rows.emplace_back(v, monomial_text(d, m));
    width = std::max(width, rows.back().first.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "value" << "  monomial\n";
  for (const auto& [c, m] : rows) os << std::left << std::setw(static_cast<int>(width)) << c << "  " << m << '\n';
  if (rows.empty()) os << "(empty sum)\n";
  return os.str();
}

}  // namespace loopstar
