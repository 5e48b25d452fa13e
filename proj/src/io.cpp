#include "woodshole/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "woodshole/error.hpp"

namespace woodshole::io {

namespace {

double round_at_1e15(double v) {
  if (std::abs(v) >= 1e3) return v;  // already below the rounding grain
  const double r = std::round(v * 1e15) / 1e15;
  return r == 0.0 ? 0.0 : r;
}

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(what) + " is missing the \"" + key + "\" field");
  }
  return j.at(key);
}

int require_int(const json& j, const char* key, const char* what) {
  const json& v = require(j, key, what);
  if (!v.is_number_integer()) throw InputError(std::string(what) + " field \"" + key + "\" must be an integer");
  return v.get<int>();
}

double number_or_zero(const json& term, const char* key) {
  if (!term.contains(key)) return 0.0;
  const json& v = term.at(key);
  if (!v.is_number()) throw InputError(std::string("polynomial term field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string format_point(const std::vector<Complex>& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << std::setprecision(6) << p[i].real() << (p[i].imag() < 0 ? "-" : "+") << std::abs(p[i].imag()) << "i";
  }
  os << ")";
  return os.str();
}

}  // namespace

json complex_to_json(Complex z) {
  return json{{"re", round_at_1e15(z.real())}, {"im", round_at_1e15(z.imag())}};
}

MultiPoly poly_from_json(const json& j, int num_vars) {
  if (!j.is_array()) throw InputError("polynomial must be a JSON array of terms");
  std::vector<std::pair<Exponent, Complex>> terms;
  for (const json& term : j) {
    if (!term.is_object() || !term.contains("exp")) throw InputError("polynomial term needs an \"exp\" field");
    const json& e = term.at("exp");
    if (!e.is_array()) throw InputError("term exponent must be an array");
    Exponent exp;
    for (const json& k : e) {
      if (!k.is_number_integer()) throw InputError("term exponents must be integers");
      exp.push_back(k.get<int>());
    }
    if (static_cast<int>(exp.size()) != num_vars) {
      throw InputError("term exponent has " + std::to_string(exp.size()) + " entries, expected " +
                       std::to_string(num_vars));
    }
    terms.emplace_back(std::move(exp), Complex(number_or_zero(term, "re"), number_or_zero(term, "im")));
  }
  return MultiPoly(num_vars, terms);
}

json poly_to_json(const MultiPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) {
    out.push_back(json{{"exp", e}, {"re", round_at_1e15(c.real())}, {"im", round_at_1e15(c.imag())}});
  }
  return out;
}

ProjEndo endo_from_json(const json& j) {
  const int n = require_int(j, "n", "endomorphism file");
  const int degree = require_int(j, "degree", "endomorphism file");
  if (n < 1 || n > kMaxProjectiveDim) throw InputError("endomorphism dimension n must be between 1 and 3");
  const json& comps = require(j, "components", "endomorphism file");
  if (!comps.is_array() || static_cast<int>(comps.size()) != n + 1) {
    throw InputError("endomorphism file needs n + 1 = " + std::to_string(n + 1) + " components");
  }
  std::vector<MultiPoly> polys;
  for (const json& c : comps) polys.push_back(poly_from_json(c, n + 1));
  ProjEndo f(std::move(polys));
  if (f.degree() != degree) {
    throw InputError("declared degree " + std::to_string(degree) + " differs from component degree " +
                     std::to_string(f.degree()));
  }
  return f;
}

json endo_to_json(const ProjEndo& f) {
  json comps = json::array();
  for (const MultiPoly& c : f.components()) comps.push_back(poly_to_json(c));
  return json{{"n", f.dim()}, {"degree", f.degree()}, {"components", comps}};
}

PlaneVectorField vf_from_json(const json& j) {
  PlaneVectorField v(poly_from_json(require(j, "P", "vector-field file"), 2),
                     poly_from_json(require(j, "Q", "vector-field file"), 2));
  if (j.contains("degree_hint")) {
    const json& hint = j.at("degree_hint");
    if (!hint.is_number_integer()) throw InputError("degree_hint must be an integer");
    if (hint.get<int>() != v.degree()) {
      throw InputError("degree_hint " + std::to_string(hint.get<int>()) + " differs from field degree " +
                       std::to_string(v.degree()));
    }
  }
  return v;
}

json vf_to_json(const PlaneVectorField& v) {
  return json{{"degree_hint", v.degree()}, {"P", poly_to_json(v.P())}, {"Q", poly_to_json(v.Q())}};
}

InvariantPolySpec invariant_from_json(const json& j) {
  const int n = require_int(j, "n", "invariant file");
  const json& monos = require(j, "monomials", "invariant file");
  if (!monos.is_array()) throw InputError("invariant monomials must be an array");
  std::vector<SigmaMonomial> out;
  for (const json& m : monos) {
    const json& a = require(m, "a", "invariant monomial");
    if (!a.is_array()) throw InputError("invariant monomial exponents must be an array");
    std::vector<int> exps;
    for (const json& k : a) {
      if (!k.is_number_integer()) throw InputError("invariant exponents must be integers");
      exps.push_back(k.get<int>());
    }
    out.push_back({std::move(exps), Complex(number_or_zero(m, "re"), number_or_zero(m, "im"))});
  }
  return InvariantPolySpec(n, std::move(out));
}

json invariant_to_json(const InvariantPolySpec& b) {
  json monos = json::array();
  for (const SigmaMonomial& m : b.monomials()) {
    monos.push_back(json{{"a", m.exponents},
                         {"re", round_at_1e15(m.coefficient.real())},
                         {"im", round_at_1e15(m.coefficient.imag())}});
  }
  return json{{"n", b.n()}, {"monomials", monos}};
}

json report_to_json(const VerificationReport& r) {
  json entries = json::array();
  for (const VerificationEntry& e : r.entries) {
    json terms = json::array();
    for (const PointTerm& t : e.terms) {
      json point = json::array();
      for (Complex z : t.point) point.push_back(complex_to_json(z));
      terms.push_back(json{{"kind", t.kind}, {"point", point}, {"value", complex_to_json(t.value)}});
    }
    entries.push_back(json{{"relation", e.relation},
                           {"variant", e.variant},
                           {"lhs", complex_to_json(e.lhs)},
                           {"rhs", complex_to_json(e.rhs)},
                           {"residual", round_at_1e15(e.residual)},
                           {"tolerance", e.tolerance},
                           {"pass", e.pass},
                           {"per_point_terms", terms}});
  }
  json out{{"command", r.command},
           {"input", r.input},
           {"seed", r.seed},
           {"config", json{{"tol", r.tol}}},
           {"entries", entries},
           {"notes", r.notes},
           {"pass", r.all_pass()}};
  if (r.wall_time.has_value()) out["wall_time"] = *r.wall_time;
  return out;
}

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.command << " " << r.input << "  (seed " << r.seed << ", tol " << r.tol << ")\n";
  for (const std::string& note : r.notes) os << "  " << note << "\n";
  for (const VerificationEntry& e : r.entries) {
    os << "\n" << e.relation << " [" << e.variant << "]\n";
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      const PointTerm& t = e.terms[i];
      os << "  " << std::setw(3) << i << "  " << std::left << std::setw(9) << t.kind << std::right << " "
         << format_point(t.point) << "   " << format_complex(t.value) << "\n";
    }
    os << "  sum      " << format_complex(e.lhs) << "\n";
    os << "  expected " << format_complex(e.rhs) << "\n";
    os << "  residual " << std::setprecision(3) << std::scientific << e.residual << " (tolerance "
       << e.tolerance << ")" << std::defaultfloat << "  " << (e.pass ? "PASS" : "FAIL") << "\n";
  }
  if (r.wall_time.has_value()) os << "\nwall time " << std::setprecision(3) << *r.wall_time << " s\n";
  os << "\n" << (r.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw InputError("malformed JSON in " + path + ": " + ex.what());
  }
}

}  // namespace woodshole::io
