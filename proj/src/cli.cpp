#include "btt/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "btt/errors.hpp"

namespace btt::cli {

namespace {

using io::json;

PAMap load(const json& map, const FieldOverride& field) { return io::pamap_from_json(map, field); }

// Rejects maps whose gluing fails, for the commands that need a real map.
void require_glued(const PAMap& phi) {
  GluingReport rep = validate_gluing(phi);
  if (!rep.ok()) throw Error(Errc::GluingViolation, rep.failures.front().detail);
}

QPoint random_point(const Polyhedron& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> w(1, 4), s(0, 12), den(1, 3);
  QPoint x(c.vertices[0].size(), Rational(0));
  std::vector<Rational> lam;
  Rational tot = 0;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    lam.emplace_back(w(rng));
    tot += lam.back();
  }
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += lam[i] / tot * c.vertices[i][j];
  }
  for (const auto& r : c.rays) {
    Rational t(s(rng), den(rng));
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += t * r[j];
  }
  for (auto& y : x) y.canonicalize();
  return x;
}

// Seeded sampling of condition (c) over points of every cell and vectors
// built from the cell's basis.
json sample_condition(const PAMap& phi, const PAMap& psi, const Matrix& f, const SelfCheck& check) {
  std::mt19937_64 rng(check.seed);
  std::uniform_int_distribution<long> coef(-3, 3);
  const auto& cells = phi.complex().cells;
  std::size_t bad = 0;
  for (std::size_t k = 0; k < check.samples; ++k) {
    const Polyhedron& c = cells[k % cells.size()];
    const PAPiece& p = phi.piece_for(c.id);
    QPoint x;
    if (k < c.vertices.size() * cells.size()) {
      x = c.vertices[(k / cells.size()) % c.vertices.size()];
    } else {
      x = random_point(c, rng);
    }
    Vector e(phi.rank());
    if (k % 2 == 0) {
      e = p.basis.column((k / 2) % phi.rank());
    } else {
      for (std::size_t j = 0; j < phi.rank(); ++j) {
        Vector b = p.basis.column(j);
        Scalar a(coef(rng));
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += a * b[i];
      }
    }
    NormValue lhs = norm_eval(eval(phi, c.id, x), e);
    NormValue rhs = norm_eval(eval(psi, c.id, x), f * e);
    bool ok = !rhs || (lhs && *lhs <= *rhs);
    if (!ok) ++bad;
  }
  return {{"seed", check.seed}, {"samples", check.samples}, {"violations", bad}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

QPoint parse_point(const std::string& s) {
  QPoint x;
  for (const auto& part : split_list(s, ',')) x.push_back(parse_rational(part));
  return x;
}

std::vector<long> parse_ints(const std::string& s) {
  std::vector<long> out;
  for (const auto& part : split_list(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw Error(Errc::Parse, "expected comma-separated integers, got '" + s + "'");
    }
  }
  return out;
}

void flatten(const json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out += path + " = " + j.get<std::string>() + "\n";
  } else {
    out += path + " = " + j.dump() + "\n";
  }
}

}  // namespace

int default_depth() {
  if (const char* env = std::getenv("BTT_BUDGET_DEPTH")) {
    char* end = nullptr;
    long d = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && d >= 0 && d <= 16) return static_cast<int>(d);
  }
  return SplitOptions{}.depth;
}

CommandResult validate(const json& map, const FieldOverride& field) {
  PAMap phi = load(map, field);
  ComplexReport cr = validate_complex(phi.complex());
  json body = {{"ok", cr.ok()}, {"complex", io::to_json(cr)}};
  if (cr.ok()) {
    GluingReport gr = validate_gluing(phi);
    body["ok"] = gr.ok();
    body["gluing"] = io::to_json(gr);
  }
  return {body, body["ok"].get<bool>() ? Ok : Semantic};
}

CommandResult evaluate(const json& map, const std::string& cell, const QPoint& x, const FieldOverride& field) {
  PAMap phi = load(map, field);
  json body = {{"cell", cell}, {"point", io::to_json(x)}};
  body["norm"] = io::to_json(eval(phi, cell, x));
  return {body, Ok};
}

CommandResult lattice(const json& map, const QPoint& vertex, const std::vector<long>& u, const FieldOverride& field) {
  PAMap phi = load(map, field);
  Lattice l = vertex_lattice(phi, vertex, u);
  json body = {{"vertex", io::to_json(vertex)}, {"character", u}};
  body["lattice"] = io::to_json(l);
  return {body, Ok};
}

CommandResult generic_fiber(const json& map, const FieldOverride& field) {
  PAMap phi = load(map, field);
  require_glued(phi);
  return {io::to_json(linear_part(phi), phi.field()), Ok};
}

CommandResult split(const json& map, const SplitOptions& opts, const FieldOverride& field) {
  PAMap phi = load(map, field);
  SplitVerdict v = splitting_check(phi, opts);
  return {io::to_json(v, phi.field()), v.kind == SplitVerdict::Kind::Unknown ? UnknownVerdict : Ok};
}

CommandResult hom(const json& map, const json& morphism, const SelfCheck& check, const FieldOverride& field) {
  PAMap phi = load(map, field);
  if (!morphism.is_object() || !morphism.contains("target") || !morphism.contains("matrix") || morphism.size() != 2)
    throw Error(Errc::Schema, "morphism: expected {\"target\": <map>, \"matrix\": [[...]]}");
  PAMap psi = io::pamap_from_json(morphism["target"], field);
  require_glued(phi);
  require_glued(psi);
  Matrix f = io::matrix_from_json(phi.field(), morphism["matrix"], "matrix");
  MorphismResult r = morphism_check(phi, psi, f);
  json body = io::to_json(r);
  if (check.samples > 0) {
    json sc = sample_condition(phi, psi, f, check);
    // Sampling can only find violations; report whether it contradicts the verdict.
    sc["consistent"] = !(r.ok && sc["violations"].get<std::size_t>() > 0);
    body["self_check"] = sc;
  }
  return {body, Ok};
}

CommandResult tree_neighbors(const Field& field, const std::string& center) {
  auto c = tree::vertex_from_key(field, center);
  json ns = json::array();
  for (const auto& v : tree::neighbors(c)) ns.push_back(v.key());
  return {{{"center", c.key()}, {"neighbors", ns}}, Ok};
}

CommandResult tree_geodesic(const Field& field, const std::string& from, const std::string& to) {
  auto a = tree::vertex_from_key(field, from);
  auto b = tree::vertex_from_key(field, to);
  json path = json::array();
  for (const auto& v : tree::geodesic(a, b)) path.push_back(v.key());
  return {{{"distance", tree::distance(a, b)}, {"path", path}}, Ok};
}

CommandResult tree_helly(const Field& field, const std::vector<std::string>& keys) {
  if (keys.empty()) throw Error(Errc::Parse, "helly needs at least one vertex");
  std::vector<tree::VertexClass> s;
  for (const auto& k : keys) s.push_back(tree::vertex_from_key(field, k));
  json body = {{"helly", tree::helly_triples(s)}};
  auto cl = tree::common_line(s, {});
  body["common_line"] = cl.ok();
  if (cl.ok())
    body["frame"] = io::to_json(field, *cl.frame);
  else
    body["certificate"] = io::to_json(*cl.certificate);
  return {body, Ok};
}

CommandResult tree_dot(const Field& field, const std::string& center, int radius, int cap) {
  return {json(tree::export_dot(tree::vertex_from_key(field, center), radius, cap)), Ok};
}

std::string to_text(const json& j) {
  std::string out;
  flatten(j, "", out);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattices, norms and piecewise affine maps into the Bruhat-Tits building", "btt"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string field_text;
  int depth = default_depth();
  long far_cap = SplitOptions{}.far_cap;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--field", field_text, "Override the field: padic:P or laurent");

  std::string input, cell, at, vertex, chars = "", map_path;
  auto* v = app.add_subcommand("validate", "Check the complex and the gluing of a map");
  v->add_option("input", input, "Map JSON")->required();

  auto* e = app.add_subcommand("eval", "Evaluate the map at a point of a cell");
  e->add_option("input", input, "Map JSON")->required();
  e->add_option("--cell", cell, "Cell id")->required();
  e->add_option("--at", at, "Point, comma separated rationals")->required();

  auto* l = app.add_subcommand("lattice", "Weight lattice at a vertex");
  l->add_option("input", input, "Map JSON")->required();
  l->add_option("--vertex", vertex, "Vertex, comma separated rationals")->required();
  l->add_option("--char", chars, "Character u, comma separated integers")->required();

  auto* g = app.add_subcommand("generic-fiber", "Klyachko filtrations of the recession rays");
  g->add_option("input", input, "Map JSON")->required();

  auto* s = app.add_subcommand("split", "Decide equivariant splitting");
  s->add_option("input", input, "Map JSON")->required();
  s->add_option("--depth", depth, "Refinement depth for rank >= 3 (default: BTT_BUDGET_DEPTH or 3)")
      ->check(CLI::Range(0, 16));
  s->add_option("--far-cap", far_cap, "Largest far-point multiple in rank 2")->check(CLI::Range(1L, 1L << 20));

  auto* h = app.add_subcommand("hom", "Check that a matrix defines a morphism of maps");
  h->add_option("input", input, "Source map JSON")->required();
  h->add_option("--map", map_path, "JSON {\"target\": map, \"matrix\": rows}")->required();
  h->add_option("--seed", seed, "Seed of the sampling self-check");
  h->add_option("--samples", samples, "Number of sampled (x, e) pairs (0: off)");

  auto* t = app.add_subcommand("tree", "Bruhat-Tits tree of rank-2 lattices");
  t->require_subcommand(1);
  t->fallthrough();
  unsigned long p = 2;
  std::string center = "0:0", from, to;
  std::vector<std::string> keys;
  int radius = 1, radius_cap = 8;
  t->add_option("--p", p, "Prime (p-adic backend)");
  auto* tn = t->add_subcommand("neighbors", "The q+1 neighbours of a vertex");
  tn->add_option("--center", center, "Vertex key a:x");
  auto* tg = t->add_subcommand("geodesic", "Path between two vertices");
  tg->add_option("--from", from, "Vertex key")->required();
  tg->add_option("--to", to, "Vertex key")->required();
  auto* th = t->add_subcommand("helly", "Helly triple test and common line");
  th->add_option("--vertices", keys, "Vertex keys")->required();
  auto* td = t->add_subcommand("dot", "DOT graph of a ball");
  td->add_option("--center", center, "Vertex key a:x");
  td->add_option("--radius", radius, "Ball radius")->check(CLI::NonNegativeNumber);
  td->add_option("--radius-cap", radius_cap, "Largest radius allowed")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& pe) {
    int code = app.exit(pe, out, err);
    return code == 0 ? Ok : ParseError;
  }

  try {
    FieldOverride field;
    if (!field_text.empty()) field = io::field_from_string(field_text);
    auto load_json = [&](const std::string& path) { return io::parse_text(read_file(path)); };

    CommandResult r;
    if (*v) {
      r = validate(load_json(input), field);
    } else if (*e) {
      r = evaluate(load_json(input), cell, parse_point(at), field);
    } else if (*l) {
      r = lattice(load_json(input), parse_point(vertex), parse_ints(chars), field);
    } else if (*g) {
      r = generic_fiber(load_json(input), field);
    } else if (*s) {
      r = split(load_json(input), SplitOptions{depth, far_cap}, field);
    } else if (*h) {
      r = hom(load_json(input), load_json(map_path), SelfCheck{seed, samples}, field);
    } else {
      Field tf = field ? *field : Field::padic(p);
      if (*tn) r = tree_neighbors(tf, center);
      if (*tg) r = tree_geodesic(tf, from, to);
      if (*th) r = tree_helly(tf, keys);
      if (*td) {
        if (radius > radius_cap)
          throw Error(Errc::RadiusTooLarge, "radius " + std::to_string(radius) + " exceeds the cap " +
                                                std::to_string(radius_cap));
        r = tree_dot(tf, center, radius, radius_cap);
      }
    }

    if (format == "dot" && !(*td)) throw Error(Errc::Parse, "--format dot is only available for 'tree dot'");
    if (r.body.is_string()) {
      out << r.body.get<std::string>();
    } else if (format == "text") {
      out << to_text(r.body);
    } else {
      out << r.body.dump(2) << "\n";
    }
    return r.exit_code;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return ex.code() == Errc::Parse || ex.code() == Errc::Schema ? ParseError : Semantic;
  }
}

}  // namespace btt::cli
