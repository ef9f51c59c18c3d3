#include "multipole/json_io.hpp"

#include <string>

#include "multipole/error.hpp"

namespace multipole {

namespace {

constexpr int kMaxDegree = 64;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing \"") + key + "\"");
  return *it;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) bad("unknown key \"" + it.key() + "\"");
  }
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

int degree_of(const Json& j) {
  const int d = as_int(field(j, "degree"), "degree");
  if (d < 0 || d > kMaxDegree) bad("degree out of range");
  return d;
}

template <class F>
void for_terms(const Json& j, F f) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) bad("\"terms\" must be an array");
  for (const Json& t : terms) {
    if (!t.is_object()) bad("term must be an object");
    only_keys(t, {"exp", "re", "im"});
    const Json& e = field(t, "exp");
    if (!e.is_array() || e.size() != 3) bad("\"exp\" must have three entries");
    Monomial m{as_int(e[0], "exponent"), as_int(e[1], "exponent"), as_int(e[2], "exponent")};
    if (m.a < 0 || m.b < 0 || m.c < 0) bad("negative exponent");
    const double re = t.contains("re") ? as_double(t["re"], "re") : 0.0;
    const double im = t.contains("im") ? as_double(t["im"], "im") : 0.0;
    f(m, cd(re, im));
  }
}

void append_terms(Json& terms, const HomogPoly& p) {
  const auto ms = monomials(p.degree());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const cd c = p.coeffs()[static_cast<Eigen::Index>(i)];
    if (c == 0.0) continue;
    terms.push_back(Json{{"exp", {ms[i].a, ms[i].b, ms[i].c}}, {"re", c.real()}, {"im", c.imag()}});
  }
}

Json lines_to_json(const std::vector<Vec3>& lines) {
  Json out = Json::array();
  for (const Vec3& w : lines) out.push_back(vec3_to_json(w));
  return out;
}

std::vector<Vec3> lines_from_json(const Json& j) {
  if (!j.is_array()) bad("\"lines\" must be an array");
  std::vector<Vec3> out;
  for (const Json& w : j) out.push_back(vec3_from_json(w));
  return out;
}

}  // namespace

Json complex_to_json(cd z) { return Json::array({z.real(), z.imag()}); }

cd complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) bad("complex number must be [re, im]");
  return {as_double(j[0], "real part"), as_double(j[1], "imaginary part")};
}

Json vec3_to_json(const Vec3& v) {
  return Json::array({complex_to_json(v[0]), complex_to_json(v[1]), complex_to_json(v[2])});
}

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) bad("vector must have three entries");
  return {complex_from_json(j[0]), complex_from_json(j[1]), complex_from_json(j[2])};
}

Json poly_to_json(const HomogPoly& p) {
  Json terms = Json::array();
  append_terms(terms, p);
  return Json{{"degree", p.degree()}, {"terms", terms}};
}

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (const HomogPoly& h : p.parts()) append_terms(terms, h);
  return Json{{"degree", std::max(0, p.degree())}, {"terms", terms}};
}

Poly poly_from_json(const Json& j) {
  only_keys(j, {"degree", "terms"});
  const int d = degree_of(j);
  Poly p;
  p.part_mut(d);
  for_terms(j, [&](const Monomial& m, cd c) {
    if (m.degree() > d) bad("term exceeds the declared degree");
    p.part_mut(m.degree()).coeff(m) += c;
  });
  return p;
}

HomogPoly homog_from_json(const Json& j) {
  only_keys(j, {"degree", "terms"});
  const int d = degree_of(j);
  HomogPoly p(d);
  for_terms(j, [&](const Monomial& m, cd c) {
    if (m.degree() != d) bad("polynomial is not homogeneous of the declared degree");
    p.coeff(m) += c;
  });
  return p;
}

Json quadform_to_json(const QuadForm& q) {
  const Mat3& b = q.matrix();
  const bool real = b.imag().isZero(0.0);
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 3; ++c) {
      if (real) {
        row.push_back(b(r, c).real());
      } else {
        row.push_back(complex_to_json(b(r, c)));
      }
    }
    rows.push_back(row);
  }
  return Json{{"B", rows}, {"real", real}};
}

QuadForm quadform_from_json(const Json& j) {
  only_keys(j, {"B", "real"});
  const Json& rows = field(j, "B");
  if (!rows.is_array() || rows.size() != 3) bad("\"B\" must be 3x3");
  Mat3 b;
  for (int r = 0; r < 3; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 3) bad("\"B\" must be 3x3");
    for (int c = 0; c < 3; ++c) b(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  if (j.contains("real")) {
    if (!j["real"].is_boolean()) bad("\"real\" must be a boolean");
    if (j["real"].get<bool>() && !b.imag().isZero(0.0)) bad("\"real\" form has complex entries");
  }
  if (!b.isApprox(b.transpose(), 1e-14)) bad("\"B\" must be symmetric");
  return QuadForm(b);
}

Json parcelling_to_json(const Parcelling& p) {
  Json out = Json::array();
  for (auto [a, b] : p.pieces) out.push_back(Json::array({a, b}));
  return out;
}

Parcelling parcelling_from_json(const Json& j) {
  if (!j.is_array()) bad("\"parcelling\" must be an array");
  Parcelling p;
  for (const Json& piece : j) {
    if (!piece.is_array() || piece.size() != 2) bad("parcelling piece must be a pair");
    p.pieces.emplace_back(as_int(piece[0], "cluster index"), as_int(piece[1], "cluster index"));
  }
  return p;
}

Json factorization_to_json(const MultipoleFactorization& f) {
  std::vector<Vec3> lines;
  for (const HomogPoly& l : f.lines) lines.push_back(l.linear_coeffs());
  Json out{{"lambda", complex_to_json(f.lambda)},
           {"lines", lines_to_json(lines)},
           {"remainder", poly_to_json(f.remainder)},
           {"parcelling", parcelling_to_json(f.parcelling)}};
  if (f.q_power != 0) out["q_power"] = f.q_power;
  return out;
}

MultipoleFactorization factorization_from_json(const Json& j) {
  only_keys(j, {"lambda", "lines", "remainder", "parcelling", "q_power"});
  MultipoleFactorization f;
  f.lambda = complex_from_json(field(j, "lambda"));
  for (const Vec3& w : lines_from_json(field(j, "lines"))) f.lines.push_back(HomogPoly::linear(w));
  f.remainder = homog_from_json(field(j, "remainder"));
  f.parcelling = parcelling_from_json(field(j, "parcelling"));
  if (j.contains("q_power")) f.q_power = as_int(j["q_power"], "q_power");
  return f;
}

Json multipole_to_json(const Multipole& m) {
  return Json{{"lambda", complex_to_json(m.lambda)}, {"lines", lines_to_json(m.lines)}};
}

Multipole multipole_from_json(const Json& j) {
  only_keys(j, {"lambda", "lines"});
  Multipole m;
  m.lambda = complex_from_json(field(j, "lambda"));
  m.lines = lines_from_json(field(j, "lines"));
  return m;
}

Json sequence_to_json(const MultipoleSequence& s) {
  Json out{{"lambda", complex_to_json(s.lambda)}};
  if (!s.terms.empty()) {
    Json terms = Json::object();
    for (const auto& [k, m] : s.terms) terms[std::to_string(k)] = multipole_to_json(m);
    out["terms"] = terms;
  }
  return out;
}

MultipoleSequence sequence_from_json(const Json& j) {
  only_keys(j, {"lambda", "terms"});
  MultipoleSequence s;
  s.lambda = complex_from_json(field(j, "lambda"));
  if (j.contains("terms")) {
    if (!j["terms"].is_object()) bad("\"terms\" must be an object");
    for (auto it = j["terms"].begin(); it != j["terms"].end(); ++it) {
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(it.key(), &used);
        if (used != it.key().size()) bad("term key must be a degree");
      } catch (const std::logic_error&) {
        bad("term key must be a degree");
      }
      s.terms[k] = multipole_from_json(it.value());
    }
  }
  return s;
}

Json maxwell_to_json(const MaxwellVectors& m) {
  return Json{{"vectors", lines_to_json(m.vectors)}, {"scale", complex_to_json(m.scale)}};
}

MaxwellVectors maxwell_from_json(const Json& j) {
  only_keys(j, {"vectors", "scale"});
  MaxwellVectors m;
  m.vectors = lines_from_json(field(j, "vectors"));
  m.scale = complex_from_json(field(j, "scale"));
  return m;
}

Json conic_divisor_to_json(const ConicDivisor& d) {
  Json out = Json::array();
  for (const auto& [x, m] : d.points) {
    out.push_back(Json{{"point", vec3_to_json(x.coords())}, {"multiplicity", m}});
  }
  return out;
}

ConicDivisor conic_divisor_from_json(const Json& j) {
  if (!j.is_array()) bad("divisor must be an array");
  ConicDivisor d;
  for (const Json& e : j) {
    only_keys(e, {"point", "multiplicity"});
    d.points.emplace_back(ProjPoint2(vec3_from_json(field(e, "point"))),
                          as_int(field(e, "multiplicity"), "multiplicity"));
  }
  return d;
}

}  // namespace multipole
