#include "btt/polyhedral.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "btt/errors.hpp"
#include "btt/simplex.hpp"

namespace btt {

const Polyhedron& Complex::cell(const std::string& id) const {
  for (const auto& c : cells) {
    if (c.id == id) return c;
  }
  throw Error(Errc::CellNotFound, "no cell '" + id + "'");
}

bool Complex::has_cell(const std::string& id) const {
  return std::any_of(cells.begin(), cells.end(), [&](const Polyhedron& c) { return c.id == id; });
}

std::vector<QPoint> Complex::vertices() const {
  std::vector<QPoint> out;
  for (const auto& c : cells) {
    for (const auto& v : c.vertices) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

namespace {

// x ∈ conv(vs) + cone(rs), optionally dropping vertex `skip`.
bool in_hull(const std::vector<QPoint>& vs, const std::vector<RayDir>& rs, const QPoint& x, std::size_t skip,
             bool affine) {
  const std::size_t n = x.size();
  std::vector<const QPoint*> used;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k != skip) used.push_back(&vs[k]);
  }
  if (affine && used.empty()) return false;
  const std::size_t vars = (affine ? used.size() : 0) + rs.size();
  std::vector<std::vector<Rational>> a(n + (affine ? 1 : 0), std::vector<Rational>(vars));
  std::vector<Rational> b(a.size());
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t col = 0;
    if (affine) {
      for (const QPoint* v : used) a[d][col++] = (*v)[d];
    }
    for (const auto& w : rs) a[d][col++] = w[d];
    b[d] = x[d];
  }
  if (affine) {
    for (std::size_t k = 0; k < used.size(); ++k) a[n][k] = 1;
    b[n] = 1;
  }
  return feasible_point(a, b).has_value();
}

void check_dims(const Polyhedron& p, std::size_t n) {
  for (const auto& v : p.vertices) {
    if (v.size() != n) throw Error(Errc::DimensionMismatch, "cell '" + p.id + "': vertex dimension");
  }
  for (const auto& w : p.rays) {
    if (w.size() != n) throw Error(Errc::DimensionMismatch, "cell '" + p.id + "': ray dimension");
  }
}

}  // namespace

bool in_polyhedron(const Polyhedron& p, const QPoint& x) {
  check_dims(p, x.size());
  return in_hull(p.vertices, p.rays, x, p.vertices.size(), true);
}

bool in_recession_cone(const Polyhedron& p, const RayDir& w) {
  check_dims(p, w.size());
  QPoint x(w.begin(), w.end());
  return in_hull({}, p.rays, x, 0, false);
}

bool contains_polyhedron(const Polyhedron& outer, const Polyhedron& inner) {
  for (const auto& v : inner.vertices) {
    if (!in_polyhedron(outer, v)) return false;
  }
  for (const auto& w : inner.rays) {
    if (!in_recession_cone(outer, w)) return false;
  }
  return true;
}

RayDir primitive(const std::vector<long>& w) {
  long g = 0;
  for (long x : w) g = std::gcd(g, x);
  if (g == 0) throw Error(Errc::DimensionMismatch, "zero ray direction");
  RayDir out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] / g;
  return out;
}

std::vector<RayDir> recession(const Polyhedron& p) { return p.rays; }

RecessionFan recession_fan(const Complex& c) {
  std::set<RayDir> all;
  for (const auto& cell : c.cells) all.insert(cell.rays.begin(), cell.rays.end());
  RecessionFan fan;
  fan.rays.assign(all.begin(), all.end());
  for (const auto& cell : c.cells) {
    std::vector<std::size_t> idx;
    for (const auto& w : cell.rays) {
      idx.push_back(static_cast<std::size_t>(std::lower_bound(fan.rays.begin(), fan.rays.end(), w) - fan.rays.begin()));
    }
    fan.cells.emplace_back(cell.id, std::move(idx));
  }
  return fan;
}

long vertex_multiplicity(const QPoint& v) { return to_long(lcm_of_denominators(v)); }

ComplexReport validate_complex(const Complex& c) {
  ComplexReport rep;
  auto bad = [&](std::string kind, std::string detail) { rep.violations.push_back({std::move(kind), std::move(detail)}); };

  std::set<std::string> ids;
  for (const auto& cell : c.cells) {
    if (!ids.insert(cell.id).second) bad("duplicate_id", "cell id '" + cell.id + "' appears twice");
  }

  bool dims_ok = true;
  auto check_shape = [&](const Polyhedron& p, const std::string& what) {
    if (p.vertices.empty()) bad("no_vertices", what + " has no vertices");
    for (const auto& v : p.vertices) {
      if (v.size() != c.dim) {
        bad("dimension", what + ": vertex " + format_point(v) + " not in dimension " + std::to_string(c.dim));
        dims_ok = false;
      }
    }
    for (const auto& w : p.rays) {
      if (w.size() != c.dim) {
        bad("dimension", what + ": ray " + format_ray(w) + " not in dimension " + std::to_string(c.dim));
        dims_ok = false;
        continue;
      }
      long g = 0;
      for (long x : w) g = std::gcd(g, x);
      if (g != 1) bad("ray_not_primitive", what + ": ray " + format_ray(w));
    }
  };

  for (const auto& cell : c.cells) check_shape(cell, "cell '" + cell.id + "'");
  for (std::size_t k = 0; k < c.faces.size(); ++k) {
    check_shape(c.faces[k].face, "face #" + std::to_string(k));
  }
  if (!dims_ok) return rep;

  for (const auto& cell : c.cells) {
    for (std::size_t i = 0; i < cell.rays.size(); ++i) {
      for (std::size_t j = i + 1; j < cell.rays.size(); ++j) {
        if (cell.rays[i] == cell.rays[j]) bad("duplicate_ray", "cell '" + cell.id + "': " + format_ray(cell.rays[i]));
      }
    }
    for (std::size_t k = 0; k < cell.vertices.size(); ++k) {
      if (cell.vertices.size() > 1 && in_hull(cell.vertices, cell.rays, cell.vertices[k], k, true)) {
        bad("redundant_vertex", "cell '" + cell.id + "': " + format_point(cell.vertices[k]) +
                                    " lies in the hull of the other data");
      }
    }
  }

  for (std::size_t k = 0; k < c.faces.size(); ++k) {
    const auto& f = c.faces[k];
    const std::string tag = "face #" + std::to_string(k) + " (" + f.first + ", " + f.second + ")";
    if (!c.has_cell(f.first) || !c.has_cell(f.second)) {
      bad("unknown_cell", tag + " names a missing cell");
      continue;
    }
    for (const std::string* id : {&f.first, &f.second}) {
      const Polyhedron& cell = c.cell(*id);
      for (const auto& v : f.face.vertices) {
        if (!in_polyhedron(cell, v)) bad("face_outside_cell", tag + ": vertex " + format_point(v) + " not in '" + *id + "'");
      }
      for (const auto& w : f.face.rays) {
        if (!in_recession_cone(cell, w))
          bad("face_outside_cell", tag + ": ray " + format_ray(w) + " not in the recession cone of '" + *id + "'");
      }
    }
  }

  // Input contract: cells sharing a listed vertex should have a declared face.
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < c.cells.size(); ++j) {
      const auto& a = c.cells[i];
      const auto& b = c.cells[j];
      bool share = std::any_of(a.vertices.begin(), a.vertices.end(), [&](const QPoint& v) {
        return std::find(b.vertices.begin(), b.vertices.end(), v) != b.vertices.end();
      });
      if (!share) continue;
      bool declared = std::any_of(c.faces.begin(), c.faces.end(), [&](const DeclaredFace& f) {
        return (f.first == a.id && f.second == b.id) || (f.first == b.id && f.second == a.id);
      });
      if (!declared && !contains_polyhedron(a, b) && !contains_polyhedron(b, a))
        rep.warnings.push_back({"undeclared_face", "cells '" + a.id + "' and '" + b.id + "' share a vertex"});
    }
  }
  return rep;
}

std::vector<std::string> maximal_cells(const Complex& c) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    bool inside = false;
    for (std::size_t j = 0; j < c.cells.size() && !inside; ++j) {
      if (i == j) continue;
      // A cell equal to another one is only dropped once.
      if (contains_polyhedron(c.cells[j], c.cells[i]) &&
          (!contains_polyhedron(c.cells[i], c.cells[j]) || j < i))
        inside = true;
    }
    if (!inside) out.push_back(c.cells[i].id);
  }
  return out;
}

Rational pairing(const CharacterVector& u, const QPoint& x) {
  if (u.size() != x.size() + 1)
    throw Error(Errc::DimensionMismatch, "character of length " + std::to_string(u.size()) + " against a point of dimension " +
                                             std::to_string(x.size()));
  Rational s = u.back();
  for (std::size_t j = 0; j < x.size(); ++j) s += u[j] * x[j];
  return s;
}

Rational pairing_ray(const CharacterVector& u, const RayDir& w) {
  if (u.size() != w.size() + 1)
    throw Error(Errc::DimensionMismatch, "character of length " + std::to_string(u.size()) + " against a ray of dimension " +
                                             std::to_string(w.size()));
  Rational s = 0;
  for (std::size_t j = 0; j < w.size(); ++j) s += Rational(u[j]) * w[j];
  return s;
}

std::string format_point(const QPoint& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + to_string(x[i]);
  return s + ")";
}

std::string format_ray(const RayDir& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

}  // namespace btt
