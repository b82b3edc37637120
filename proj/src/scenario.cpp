#include "disslab/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "disslab/error.hpp"

namespace disslab {

SolverOptions Scenario::solver_options() const {
  SolverOptions o;
  o.tol = tol;
  o.margin_floor = margin_floor;
  return o;
}

void Scenario::validate() const {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw DomainError("gamma must be >= 1");
  data.validate();
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (!(margin_floor > 0.0)) throw DomainError("margin_floor must be positive");
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L must be positive");
  if (weak_tests < 0) throw DomainError("weak_tests must be nonnegative");
}

namespace {

// Read a positive quantity, reporting the line of the offending entry.
double positive(const keyval::Section& s, const char* key) {
  const double v = s.get_double(key);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParseError("[" + s.name() + "] " + key + " must be positive, got " + s.at(key).value,
                     s.at(key).line);
  }
  return v;
}

double finite(const keyval::Section& s, const char* key, double fallback) {
  if (!s.has(key)) return fallback;
  const double v = s.get_double(key);
  if (!std::isfinite(v)) {
    throw ParseError("[" + s.name() + "] " + key + " must be finite", s.at(key).line);
  }
  return v;
}

GridAxis grid(const keyval::Section& s, const char* key) {
  try {
    return GridAxis::parse(s.get_string(key));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), s.at(key).line);
  }
}

}  // namespace

Scenario Scenario::from_document(const keyval::Document& doc, const std::string& prefix) {
  Scenario sc;
  if (const auto* meta = doc.find(prefix + "scenario")) {
    if (meta->has("name")) sc.name = meta->get_string("name");
  }

  const auto& gas = doc.at(prefix + "gas");
  sc.gamma = gas.get_double("gamma");
  if (!(sc.gamma >= 1.0) || !std::isfinite(sc.gamma)) {
    throw ParseError("[" + gas.name() + "] gamma must be >= 1", gas.at("gamma").line);
  }

  const auto& d = doc.at(prefix + "data");
  sc.data.rho_minus = positive(d, "rho_minus");
  sc.data.rho_plus = positive(d, "rho_plus");
  sc.data.v_minus = {finite(d, "v_minus_1", 0.0), finite(d, "v_minus_2", 0.0)};
  sc.data.v_plus = {finite(d, "v_plus_1", 0.0), finite(d, "v_plus_2", 0.0)};
  if (!d.has("v_minus_2") || !d.has("v_plus_2")) {
    throw ParseError("[" + d.name() + "] needs v_minus_2 and v_plus_2", d.line());
  }

  if (const auto* s = doc.find(prefix + "search")) {
    if (s->has("grid_rho1")) sc.grid_rho1 = grid(*s, "grid_rho1");
    if (s->has("grid_C")) sc.grid_C = grid(*s, "grid_C");
    if (s->has("tol")) sc.tol = positive(*s, "tol");
    if (s->has("margin_floor")) sc.margin_floor = positive(*s, "margin_floor");
    if (s->has("L")) sc.L = positive(*s, "L");
    if (s->has("seed")) sc.seed = s->get_uint("seed");
    if (s->has("weak_tests")) {
      const auto n = s->get_int("weak_tests");
      if (n < 0 || n > 100000) throw ParseError("weak_tests out of range", s->at("weak_tests").line);
      sc.weak_tests = static_cast<int>(n);
    }
  }
  sc.validate();
  return sc;
}

void Scenario::write_to(keyval::Document& doc, const std::string& prefix) const {
  doc.add(prefix + "scenario").set("name", name);
  doc.add(prefix + "gas").set("gamma", gamma);
  auto& d = doc.add(prefix + "data");
  d.set("rho_minus", data.rho_minus)
      .set("v_minus_1", data.v_minus.tangential)
      .set("v_minus_2", data.v_minus.normal)
      .set("rho_plus", data.rho_plus)
      .set("v_plus_1", data.v_plus.tangential)
      .set("v_plus_2", data.v_plus.normal);
  auto& s = doc.add(prefix + "search");
  if (grid_rho1) s.set("grid_rho1", grid_rho1->to_string());
  if (grid_C) s.set("grid_C", grid_C->to_string());
  s.set("tol", tol).set("margin_floor", margin_floor).set("L", L).set("seed", seed);
  s.set("weak_tests", weak_tests);
}

Scenario Scenario::load(const std::string& path) {
  return from_document(keyval::Document::load(path));
}

}  // namespace disslab
