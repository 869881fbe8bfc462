#include "btt/json_io.hpp"

#include <algorithm>
#include <climits>

#include "btt/errors.hpp"

namespace btt::io {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(Errc::Schema, (path.empty() ? "<root>" : path) + ": " + what);
}

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) schema(path, "expected an object");
  for (const char* k : required) {
    if (!j.contains(k)) schema(path, std::string("missing key '") + k + "'");
  }
  for (const auto& [k, v] : j.items()) {
    auto same = [&](const char* x) { return k == x; };
    if (std::none_of(required.begin(), required.end(), same) && std::none_of(optional.begin(), optional.end(), same))
      schema(path, "unknown key '" + k + "'");
  }
}

const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

long int_from_json(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<unsigned long long>() > static_cast<unsigned long long>(LONG_MAX))
    schema(path, "integer out of range");
  return j.get<long>();
}

std::string string_from_json(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

std::vector<long> ints_from_json(const json& j, const std::string& path) {
  std::vector<long> out;
  for (std::size_t i = 0; i < expect_array(j, path).size(); ++i)
    out.push_back(int_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Polyhedron polyhedron_from_json(const json& j, const std::string& path, bool need_id) {
  if (need_id)
    expect_object(j, path, {"id", "vertices"}, {"rays"});
  else
    expect_object(j, path, {"vertices"}, {"rays"});
  Polyhedron p;
  if (need_id) p.id = string_from_json(j["id"], path + ".id");
  const json& vs = expect_array(j["vertices"], path + ".vertices");
  for (std::size_t i = 0; i < vs.size(); ++i)
    p.vertices.push_back(point_from_json(vs[i], path + ".vertices[" + std::to_string(i) + "]"));
  if (j.contains("rays")) {
    const json& rs = expect_array(j["rays"], path + ".rays");
    for (std::size_t i = 0; i < rs.size(); ++i)
      p.rays.push_back(ints_from_json(rs[i], path + ".rays[" + std::to_string(i) + "]"));
  }
  return p;
}

json polyhedron_json(const Polyhedron& p, bool with_id) {
  json j = json::object();
  if (with_id) j["id"] = p.id;
  j["vertices"] = json::array();
  for (const auto& v : p.vertices) j["vertices"].push_back(to_json(v));
  j["rays"] = p.rays;
  return j;
}

json issues_json(const std::vector<Issue>& xs) {
  json a = json::array();
  for (const auto& i : xs) a.push_back({{"kind", i.kind}, {"detail", i.detail}});
  return a;
}

}  // namespace

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Parse, std::string("invalid JSON: ") + e.what());
  }
}

Field field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("backend")) schema("field", "expected {\"backend\": ...}");
  const std::string b = string_from_json(j["backend"], "field.backend");
  if (b == "padic") {
    expect_object(j, "field", {"backend", "p"});
    long p = int_from_json(j["p"], "field.p");
    if (p < 2) throw Error(Errc::InvalidField, "p must be a prime, got " + std::to_string(p));
    return Field::padic(static_cast<unsigned long>(p));
  }
  if (b == "laurent") {
    expect_object(j, "field", {"backend"}, {"var"});
    if (j.contains("var")) return Field::laurent(string_from_json(j["var"], "field.var"));
    return Field::laurent();
  }
  schema("field.backend", "expected \"padic\" or \"laurent\"");
}

json to_json(const Field& f) {
  if (f.is_padic()) return {{"backend", "padic"}, {"p", f.prime()}};
  json j = {{"backend", "laurent"}};
  if (f.indeterminate() != "t") j["var"] = f.indeterminate();
  return j;
}

Field field_from_string(const std::string& s) {
  if (s == "laurent") return Field::laurent();
  if (s.rfind("padic:", 0) == 0) {
    try {
      std::size_t used = 0;
      long p = std::stol(s.substr(6), &used);
      if (used == s.size() - 6 && p >= 2) return Field::padic(static_cast<unsigned long>(p));
    } catch (const std::logic_error&) {
    }
  }
  throw Error(Errc::Parse, "field must be 'padic:P' or 'laurent', got '" + s + "'");
}

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(int_from_json(j, path));
  if (!j.is_string()) schema(path, "expected a rational string or an integer");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

Scalar scalar_from_json(const Field& f, const json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(int_from_json(j, path));
  if (!j.is_string()) schema(path, "expected a scalar string or an integer");
  try {
    return f.parse(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(e.code() == Errc::InvalidScalar ? Errc::Parse : e.code(), path + ": " + e.what());
  }
}

Matrix matrix_from_json(const Field& f, const json& j, const std::string& path) {
  const json& rows = expect_array(j, path);
  if (rows.empty()) schema(path, "empty matrix");
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    const json& row = expect_array(rows[i], rp);
    if (row.size() != rows[0].size()) schema(rp, "ragged matrix");
    std::vector<Scalar> r;
    for (std::size_t k = 0; k < row.size(); ++k) r.push_back(scalar_from_json(f, row[k], rp + "[" + std::to_string(k) + "]"));
    out.push_back(std::move(r));
  }
  return Matrix::from_rows(out);
}

json to_json(const Field& f, const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(f.format(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

QPoint point_from_json(const json& j, const std::string& path) {
  QPoint x;
  for (std::size_t i = 0; i < expect_array(j, path).size(); ++i)
    x.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return x;
}

json to_json(const QPoint& x) {
  json a = json::array();
  for (const auto& c : x) a.push_back(to_string(c));
  return a;
}

Complex complex_from_json(const json& j) {
  expect_object(j, "complex", {"dim", "cells"}, {"faces"});
  Complex c;
  long dim = int_from_json(j["dim"], "complex.dim");
  if (dim < 1) schema("complex.dim", "must be positive");
  c.dim = static_cast<std::size_t>(dim);
  const json& cells = expect_array(j["cells"], "complex.cells");
  for (std::size_t i = 0; i < cells.size(); ++i)
    c.cells.push_back(polyhedron_from_json(cells[i], "complex.cells[" + std::to_string(i) + "]", true));
  if (j.contains("faces")) {
    const json& faces = expect_array(j["faces"], "complex.faces");
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const std::string fp = "complex.faces[" + std::to_string(i) + "]";
      expect_object(faces[i], fp, {"cells", "face"});
      const json& ids = expect_array(faces[i]["cells"], fp + ".cells");
      if (ids.size() != 2) schema(fp + ".cells", "expected two cell ids");
      c.faces.push_back({string_from_json(ids[0], fp + ".cells[0]"), string_from_json(ids[1], fp + ".cells[1]"),
                         polyhedron_from_json(faces[i]["face"], fp + ".face", false)});
    }
  }
  return c;
}

json to_json(const Complex& c) {
  json j = {{"dim", c.dim}, {"cells", json::array()}, {"faces", json::array()}};
  for (const auto& cell : c.cells) j["cells"].push_back(polyhedron_json(cell, true));
  for (const auto& f : c.faces) j["faces"].push_back({{"cells", {f.first, f.second}}, {"face", polyhedron_json(f.face, false)}});
  return j;
}

PAMap pamap_from_json(const json& j, const std::optional<Field>& field) {
  expect_object(j, "", {"field", "complex", "rank", "pieces"});
  Field f = field ? *field : field_from_json(j["field"]);
  if (field) field_from_json(j["field"]);  // still schema-checked
  Complex c = complex_from_json(j["complex"]);
  long rank = int_from_json(j["rank"], "rank");
  if (rank < 1) schema("rank", "must be positive");
  std::vector<PAPiece> pieces;
  const json& ps = expect_array(j["pieces"], "pieces");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string pp = "pieces[" + std::to_string(i) + "]";
    expect_object(ps[i], pp, {"cell", "basis", "chars"});
    PAPiece p;
    p.cell = string_from_json(ps[i]["cell"], pp + ".cell");
    p.basis = matrix_from_json(f, ps[i]["basis"], pp + ".basis");
    const json& chars = expect_array(ps[i]["chars"], pp + ".chars");
    for (std::size_t k = 0; k < chars.size(); ++k)
      p.chars.push_back(ints_from_json(chars[k], pp + ".chars[" + std::to_string(k) + "]"));
    pieces.push_back(std::move(p));
  }
  return PAMap(f, std::move(c), static_cast<std::size_t>(rank), std::move(pieces));
}

json to_json(const PAMap& phi) {
  json pieces = json::array();
  for (const auto& p : phi.pieces())
    pieces.push_back({{"cell", p.cell}, {"basis", to_json(phi.field(), p.basis)}, {"chars", p.chars}});
  return {{"field", to_json(phi.field())}, {"complex", to_json(phi.complex())}, {"rank", phi.rank()}, {"pieces", pieces}};
}

json to_json(const AdaptedNorm& v) {
  json vals = json::array();
  for (const auto& c : v.values()) vals.push_back(to_string(c));
  return {{"basis", to_json(v.field(), v.basis())}, {"values", vals}};
}

json to_json(const Lattice& l) {
  return {{"generators", to_json(l.field(), l.generators())}, {"exponents", l.pivot_exponents()}};
}

json to_json(const ComplexReport& r) {
  return {{"ok", r.ok()}, {"violations", issues_json(r.violations)}, {"warnings", issues_json(r.warnings)}};
}

json to_json(const GluingReport& r) {
  json fs = json::array();
  for (const auto& f : r.failures) {
    fs.push_back({{"face", f.face},
                  {"cells", {f.first, f.second}},
                  {"vertex", f.vertex ? to_json(*f.vertex) : json(nullptr)},
                  {"ray", f.ray ? json(*f.ray) : json(nullptr)},
                  {"detail", f.detail}});
  }
  return {{"ok", r.ok()}, {"failures", fs}, {"warnings", issues_json(r.warnings)}};
}

json to_json(const LinearPart& lp, const Field& f) {
  json k = json::array();
  for (const auto& e : lp.klyachko) {
    json steps = json::array();
    for (const auto& s : e.steps) steps.push_back({{"j", s.j}, {"subspace", to_json(f, s.subspace)}});
    k.push_back({{"ray", e.ray}, {"cell", e.cell}, {"filtration", steps}});
  }
  json pv = json::array();
  for (const auto& p : lp.prevaluations) {
    json vals = json::array();
    for (const auto& c : p.prevaluation.values()) vals.push_back(to_string(c));
    pv.push_back({{"cell", p.cell}, {"ray", p.ray}, {"basis", to_json(f, p.prevaluation.basis())}, {"values", vals}});
  }
  return {{"klyachko", k}, {"prevaluations", pv}};
}

json to_json(const MorphismResult& r) {
  json j = {{"morphism", r.ok}};
  if (!r.ok) {
    json w = {{"detail", r.detail}};
    if (r.vertex) w["vertex"] = to_json(*r.vertex);
    if (r.character) w["character"] = *r.character;
    if (r.ray) w["ray"] = *r.ray;
    if (r.j) w["j"] = *r.j;
    j["witness"] = w;
  }
  return j;
}

json to_json(const tree::Certificate& c) {
  json j;
  if (c.kind == tree::Certificate::Kind::Tripod) {
    j["kind"] = "tripod";
    j["tripod_vertex"] = c.tripod_vertex->key();
    j["tripod_lattice"] = to_json(c.tripod_vertex->lattice());
    json ws = json::array();
    for (const auto& w : c.witnesses) ws.push_back(w.key());
    j["witnesses"] = ws;
    json ds = json::array();
    for (const auto& d : tree::tripod_directions(c.witnesses, *c.tripod_vertex)) ds.push_back(d.key());
    j["directions"] = ds;
  } else {
    j["kind"] = "end_incompatible";
    if (c.end_index) j["end_index"] = *c.end_index;
    if (c.vertex) j["vertex"] = c.vertex->key();
  }
  j["detail"] = c.detail;
  return j;
}

json to_json(const Field& f, const DistributivityWitness& w) {
  json ms = json::array();
  for (const auto& m : w.members) ms.push_back(to_json(f, m));
  return {{"kind", "distributivity"}, {"law", w.law}, {"subspaces", w.subspaces}, {"members", ms}};
}

json to_json(const SplitVerdict& v, const Field& f) {
  json j;
  switch (v.kind) {
    case SplitVerdict::Kind::Split:
      j["verdict"] = "split";
      j["frame"] = to_json(f, *v.frame);
      break;
    case SplitVerdict::Kind::NotSplit:
      j["verdict"] = "not_split";
      if (v.certificate)
        j["certificate"] = to_json(*v.certificate);
      else
        j["certificate"] = to_json(f, *v.obstruction);
      break;
    case SplitVerdict::Kind::Unknown:
      j["verdict"] = "unknown";
      break;
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

}  // namespace btt::io
