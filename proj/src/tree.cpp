#include "btt/tree.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>

#include "btt/errors.hpp"

namespace btt::tree {

namespace {

Lattice scale_to_unit_pivot(const Lattice& l) {
  if (l.rank() != 2) throw Error(Errc::DimensionMismatch, "tree vertices are rank-2 lattices");
  long a0 = l.pivot_exponents()[0];
  return a0 == 0 ? l : l.scaled(l.field().uniformizer_pow(-a0));
}

Matrix two_columns(const Vector& a, const Vector& b) { return Matrix::from_columns({a, b}, 2); }

// Basis {e', f} of L where e' is the primitive multiple of e in L.
std::pair<Vector, Vector> adapted_pair(const Lattice& l, const Vector& e) {
  const Field& f = l.field();
  const Matrix& g = l.generators();
  Vector c = inverse(g) * e;
  long m = std::min(f.val(c[0]).is_infinite() ? LONG_MAX : f.val(c[0]).value(),
                    f.val(c[1]).is_infinite() ? LONG_MAX : f.val(c[1]).value());
  Vector prim = e;
  for (auto& x : prim) x = x * f.uniformizer_pow(-m);
  // The coordinate that is a unit decides which generator to keep.
  Scalar c0 = c[0] * f.uniformizer_pow(-m);
  if (!c0.is_zero() && f.val(c0) == Val(0)) return {prim, g.column(1)};
  return {prim, g.column(0)};
}

}  // namespace

VertexClass::VertexClass(Lattice l) : lat_(std::move(l)) {
  key_ = std::to_string(exponent()) + ":" + field().format(offdiag());
}

VertexClass VertexClass::of(const Lattice& l) { return VertexClass(scale_to_unit_pivot(l)); }

long VertexClass::exponent() const { return field().val(lat_.generators()(1, 1)).value(); }

bool operator<(const VertexClass& a, const VertexClass& b) {
  if (a.exponent() != b.exponent()) return a.exponent() < b.exponent();
  return a.key_ < b.key_;
}

VertexClass normalize(const Lattice& l) { return VertexClass::of(l); }

VertexClass vertex_from_key(const Field& field, const std::string& key) {
  auto colon = key.find(':');
  if (colon == std::string::npos) throw Error(Errc::Parse, "vertex key must look like 'a:x', got '" + key + "'");
  long a = 0;
  try {
    std::size_t used = 0;
    a = std::stol(key.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("exponent");
  } catch (const std::logic_error&) {
    throw Error(Errc::Parse, "bad exponent in vertex key '" + key + "'");
  }
  Matrix g(2, 2);
  g(0, 0) = Scalar(1);
  g(1, 0) = field.parse(key.substr(colon + 1));
  g(1, 1) = field.uniformizer_pow(a);
  return VertexClass::of(Lattice::from_generators(field, g));
}

std::vector<VertexClass> neighbors(const VertexClass& v) {
  const Field& f = v.field();
  const std::size_t q = f.residue_size();
  const Matrix& g = v.lattice().generators();
  const Scalar pi = f.uniformizer();
  Vector g1 = g.column(0), g2 = g.column(1);
  std::vector<VertexClass> out;
  out.reserve(q + 1);
  auto add = [&](const Vector& lift) {
    Matrix gens(2, 3);
    for (std::size_t i = 0; i < 2; ++i) {
      gens(i, 0) = pi * g1[i];
      gens(i, 1) = pi * g2[i];
      gens(i, 2) = lift[i];
    }
    out.push_back(VertexClass::of(Lattice::from_generators(f, gens)));
  };
  for (std::size_t c = 0; c < q; ++c) {
    Vector lift(2);
    for (std::size_t i = 0; i < 2; ++i) lift[i] = g1[i] + Scalar(static_cast<long>(c)) * g2[i];
    add(lift);
  }
  add(g2);
  return out;
}

long distance(const VertexClass& u, const VertexClass& v) {
  auto inv = invariant_factors(u.lattice(), v.lattice());
  return inv.exponents.front() - inv.exponents.back();
}

std::vector<VertexClass> geodesic(const VertexClass& u, const VertexClass& v) {
  if (u == v) return {u};
  const Field& f = u.field();
  auto inv = invariant_factors(u.lattice(), v.lattice());
  const long e1 = inv.exponents[0], e2 = inv.exponents[1];
  std::vector<VertexClass> path;
  for (long k = 0; k <= e1 - e2; ++k) {
    path.push_back(VertexClass::of(Lattice::diagonal(f, inv.basis, {e2 + k, e2})));
  }
  return path;
}

bool same_end(const End& a, const End& b) {
  return rank(two_columns(a.direction, b.direction)) == 1;
}

End end_of_line(const Vector& e) { return End{e}; }

namespace {

using Adjacency = std::map<std::string, std::set<std::string>>;

Adjacency union_graph(const std::vector<VertexClass>& points, std::map<std::string, VertexClass>* index = nullptr) {
  Adjacency adj;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      auto path = geodesic(points[i], points[j]);
      for (std::size_t k = 0; k < path.size(); ++k) {
        adj[path[k].key()];
        if (index) index->emplace(path[k].key(), path[k]);
        if (k + 1 < path.size()) {
          adj[path[k].key()].insert(path[k + 1].key());
          adj[path[k + 1].key()].insert(path[k].key());
        }
      }
    }
  }
  return adj;
}

}  // namespace

int tripod_degree(const std::vector<VertexClass>& points, const VertexClass& center) {
  Adjacency adj = union_graph(points);
  auto it = adj.find(center.key());
  return it == adj.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<VertexClass> tripod_directions(const std::vector<VertexClass>& points, const VertexClass& center) {
  std::map<std::string, VertexClass> index;
  Adjacency adj = union_graph(points, &index);
  std::vector<VertexClass> out;
  auto it = adj.find(center.key());
  if (it == adj.end()) return out;
  for (const auto& k : it->second) out.push_back(index.at(k));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<VertexClass> dedupe(std::vector<VertexClass> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

struct Collinearity {
  bool collinear = true;
  VertexClass a, b;                 // diameter endpoints
  std::optional<VertexClass> off;   // a vertex off the a-b path
  std::optional<VertexClass> median;
};

Collinearity check_collinear(const std::vector<VertexClass>& s) {
  auto farthest = [&](const VertexClass& from) {
    const VertexClass* best = &s.front();
    long bd = -1;
    for (const auto& x : s) {
      long d = distance(from, x);
      if (d > bd) {
        bd = d;
        best = &x;
      }
    }
    return *best;
  };
  VertexClass a = farthest(s.front());
  VertexClass b = farthest(a);
  Collinearity out{true, a, b, std::nullopt, std::nullopt};
  const long dab = distance(a, b);
  for (const auto& x : s) {
    long dax = distance(a, x), dxb = distance(x, b);
    if (dax + dxb != dab) {
      out.collinear = false;
      out.off = x;
      long k = (dax + dab - dxb) / 2;
      out.median = geodesic(a, b)[static_cast<std::size_t>(k)];
      return out;
    }
  }
  return out;
}

Certificate tripod_certificate(const Collinearity& c, const std::string& detail) {
  Certificate cert;
  cert.kind = Certificate::Kind::Tripod;
  cert.tripod_vertex = c.median;
  cert.witnesses = {c.a, c.b, *c.off};
  cert.detail = detail;
  return cert;
}

bool all_adapted(const std::vector<VertexClass>& s, const Matrix& frame) {
  for (const auto& x : s) {
    if (!is_adapted(norm_from_lattice(x.lattice()), frame)) return false;
  }
  return true;
}

// Any frame whose apartment contains the path through S (S collinear).
Matrix frame_through(const Collinearity& c) {
  if (c.a == c.b) return c.a.lattice().generators();
  return invariant_factors(c.a.lattice(), c.b.lattice()).basis;
}

}  // namespace

CommonLineResult common_line(const std::vector<VertexClass>& input, const std::vector<End>& ends_in) {
  if (input.empty()) throw Error(Errc::DimensionMismatch, "common_line needs at least one vertex");
  const std::vector<VertexClass> s = dedupe(input);
  const Field& field = s.front().field();
  CommonLineResult res;

  // Distinct end lines, remembering the first index of each.
  std::vector<std::size_t> end_idx;
  for (std::size_t i = 0; i < ends_in.size(); ++i) {
    bool seen = false;
    for (auto j : end_idx) seen = seen || same_end(ends_in[i], ends_in[j]);
    if (!seen) end_idx.push_back(i);
  }

  Collinearity col = check_collinear(s);
  if (!col.collinear) {
    res.certificate = tripod_certificate(col, "vertex set is not contained in a line");
    return res;
  }
  if (end_idx.size() > 2) {
    Certificate cert;
    cert.kind = Certificate::Kind::EndIncompatible;
    cert.end_index = end_idx[2];
    cert.detail = "an apartment has only two ends";
    res.certificate = cert;
    return res;
  }
  if (end_idx.size() == 2) {
    Matrix frame = two_columns(ends_in[end_idx[0]].direction, ends_in[end_idx[1]].direction);
    for (const auto& x : s) {
      if (!is_adapted(norm_from_lattice(x.lattice()), frame)) {
        Certificate cert;
        cert.kind = Certificate::Kind::EndIncompatible;
        cert.end_index = end_idx[1];
        cert.vertex = x;
        cert.detail = "vertex is off the apartment spanned by the two ends";
        res.certificate = cert;
        return res;
      }
    }
    res.frame = frame;
    return res;
  }
  if (end_idx.size() == 1) {
    const Vector& e = ends_in[end_idx[0]].direction;
    // Walk from a vertex of S towards the end beyond every merge point.
    long far = 0;
    for (const auto& x : s) far = std::max(far, distance(s.front(), x));
    auto [prim, other] = adapted_pair(s.front().lattice(), e);
    std::vector<long> exps{0, far + 1};
    VertexClass z = VertexClass::of(Lattice::diagonal(field, two_columns(prim, other), exps));
    std::vector<VertexClass> ext = s;
    ext.push_back(z);
    Collinearity c2 = check_collinear(dedupe(ext));
    bool z_end = c2.collinear && (c2.a == z || c2.b == z);
    if (!z_end) {
      Certificate cert;
      if (!c2.collinear) {
        cert = tripod_certificate(c2, "the ray towards the end leaves the line through the vertices");
      } else {
        cert.detail = "the ray towards the end leaves the line through the vertices";
      }
      cert.kind = Certificate::Kind::EndIncompatible;
      cert.end_index = end_idx[0];
      res.certificate = cert;
      return res;
    }
    const VertexClass& y = c2.a == z ? c2.b : c2.a;
    auto [py, fy] = adapted_pair(y.lattice(), e);
    Matrix frame = two_columns(py, fy);
    if (!all_adapted(s, frame)) throw std::logic_error("common_line: one-end frame failed verification");
    res.frame = frame;
    return res;
  }
  Matrix frame = frame_through(col);
  if (!all_adapted(s, frame)) throw std::logic_error("common_line: frame failed verification");
  res.frame = frame;
  return res;
}

bool helly_triples(const std::vector<VertexClass>& input) {
  const std::vector<VertexClass> s = dedupe(input);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      for (std::size_t k = j + 1; k < s.size(); ++k) {
        Adjacency adj = union_graph({s[i], s[j], s[k]});
        for (const auto& [key, nb] : adj) {
          if (nb.size() > 2) return false;
        }
      }
    }
  }
  return true;
}

std::vector<VertexClass> ball_vertices(const VertexClass& center, int radius, int cap) {
  if (radius < 0) throw Error(Errc::RadiusTooLarge, "radius must be nonnegative");
  if (radius > cap)
    throw Error(Errc::RadiusTooLarge, "radius " + std::to_string(radius) + " exceeds cap " + std::to_string(cap));
  std::vector<VertexClass> out{center};
  std::set<std::string> seen{center.key()};
  std::size_t frontier_begin = 0;
  for (int d = 0; d < radius; ++d) {
    std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (auto& n : neighbors(out[i])) {
        if (seen.insert(n.key()).second) out.push_back(n);
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

std::string export_dot(const VertexClass& center, int radius, int cap) {
  auto verts = ball_vertices(center, radius, cap);
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < verts.size(); ++i) id[verts[i].key()] = i;
  std::ostringstream os;
  os << "graph bruhat_tits {\n";
  for (std::size_t i = 0; i < verts.size(); ++i) {
    os << "  n" << i << " [label=\"(0," << verts[i].exponent() << ") "
       << verts[i].field().format(verts[i].offdiag()) << "\"];\n";
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (auto& n : neighbors(verts[i])) {
      auto it = id.find(n.key());
      if (it == id.end()) continue;
      auto e = std::minmax(i, it->second);
      if (edges.insert(e).second) os << "  n" << e.first << " -- n" << e.second << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace btt::tree
