#include "btt/pamap.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include "btt/errors.hpp"

namespace btt {

PAMap::PAMap(Field field, Complex complex, std::size_t rank, std::vector<PAPiece> pieces)
    : field_(std::move(field)), complex_(std::move(complex)), rank_(rank), pieces_(std::move(pieces)) {
  if (rank_ == 0) throw Error(Errc::DimensionMismatch, "rank must be positive");
  std::set<std::string> seen;
  for (const auto& p : pieces_) {
    if (!complex_.has_cell(p.cell)) throw Error(Errc::CellNotFound, "piece for unknown cell '" + p.cell + "'");
    if (!seen.insert(p.cell).second) throw Error(Errc::Schema, "two pieces for cell '" + p.cell + "'");
    if (p.basis.rows() != rank_ || p.basis.cols() != rank_)
      throw Error(Errc::DimensionMismatch, "piece '" + p.cell + "': basis is not " + std::to_string(rank_) + "x" +
                                               std::to_string(rank_));
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t j = 0; j < rank_; ++j) field_.check(p.basis(i, j));
    }
    if (!is_invertible(p.basis)) throw Error(Errc::Singular, "piece '" + p.cell + "': basis is singular");
    if (p.chars.size() != rank_)
      throw Error(Errc::DimensionMismatch, "piece '" + p.cell + "': need one character per basis vector");
    for (const auto& u : p.chars) {
      if (u.size() != complex_.dim + 1)
        throw Error(Errc::DimensionMismatch, "piece '" + p.cell + "': characters have length " +
                                                 std::to_string(complex_.dim + 1));
    }
  }
  for (const auto& id : maximal_cells(complex_)) {
    if (!seen.count(id)) throw Error(Errc::Schema, "maximal cell '" + id + "' has no piece");
  }
}

const PAPiece& PAMap::piece_for(const std::string& cell) const {
  for (const auto& p : pieces_) {
    if (p.cell == cell) return p;
  }
  const Polyhedron& c = complex_.cell(cell);
  for (const auto& p : pieces_) {
    if (contains_polyhedron(complex_.cell(p.cell), c)) return p;
  }
  throw Error(Errc::CellNotFound, "no piece covers cell '" + cell + "'");
}

std::vector<Rational> piece_values(const PAPiece& p, const QPoint& x) {
  std::vector<Rational> out;
  out.reserve(p.chars.size());
  for (const auto& u : p.chars) out.push_back(pairing(u, x));
  return out;
}

Prevaluation ray_prevaluation(const PAPiece& p, const RayDir& w) {
  std::vector<Rational> vals;
  for (const auto& u : p.chars) vals.push_back(pairing_ray(u, w));
  return Prevaluation(p.basis, std::move(vals));
}

bool same_filtration(const Prevaluation& a, const Prevaluation& b) {
  auto ba = a.breakpoints();
  if (ba != b.breakpoints()) return false;
  for (const auto& t : ba) {
    if (!(a.subspace_at(t) == b.subspace_at(t))) return false;
  }
  return true;
}

AdaptedNorm eval(const PAMap& phi, const std::string& cell, const QPoint& x) {
  const Polyhedron& c = phi.complex().cell(cell);
  if (x.size() != phi.dim())
    throw Error(Errc::DimensionMismatch, "point " + format_point(x) + " is not in dimension " + std::to_string(phi.dim()));
  if (!in_polyhedron(c, x)) throw Error(Errc::PointOutsideCell, format_point(x) + " is not in cell '" + cell + "'");
  const PAPiece& p = phi.piece_for(cell);
  return AdaptedNorm(phi.field(), p.basis, piece_values(p, x));
}

// ------------------------------------------------------------------ gluing

GluingReport validate_gluing(const PAMap& phi) {
  GluingReport rep;
  const Complex& cx = phi.complex();
  for (std::size_t k = 0; k < cx.faces.size(); ++k) {
    const auto& f = cx.faces[k];
    const PAPiece& a = phi.piece_for(f.first);
    const PAPiece& b = phi.piece_for(f.second);
    for (const auto& v : f.face.vertices) {
      AdaptedNorm na(phi.field(), a.basis, piece_values(a, v));
      AdaptedNorm nb(phi.field(), b.basis, piece_values(b, v));
      if (!norm_equal(na, nb)) {
        rep.failures.push_back({k, f.first, f.second, v, std::nullopt,
                                "norms differ at vertex " + format_point(v)});
      }
    }
    for (const auto& w : f.face.rays) {
      if (!same_filtration(ray_prevaluation(a, w), ray_prevaluation(b, w))) {
        rep.failures.push_back({k, f.first, f.second, std::nullopt, w,
                                "filtrations differ along ray " + format_ray(w)});
      }
    }
  }

  // Cells sharing a listed ray without a declared face through it.
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cx.cells.size(); ++j) {
      const auto& ci = cx.cells[i];
      const auto& cj = cx.cells[j];
      for (const auto& w : ci.rays) {
        if (std::find(cj.rays.begin(), cj.rays.end(), w) == cj.rays.end()) continue;
        bool declared = std::any_of(cx.faces.begin(), cx.faces.end(), [&](const DeclaredFace& f) {
          bool pair = (f.first == ci.id && f.second == cj.id) || (f.first == cj.id && f.second == ci.id);
          return pair && std::find(f.face.rays.begin(), f.face.rays.end(), w) != f.face.rays.end();
        });
        if (declared) continue;
        if (!same_filtration(ray_prevaluation(phi.piece_for(ci.id), w), ray_prevaluation(phi.piece_for(cj.id), w)))
          rep.warnings.push_back({"inconsistent_ray", "cells '" + ci.id + "' and '" + cj.id + "' disagree along " +
                                                          format_ray(w) + " without a declared face"});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------- weight modules

namespace {

std::vector<long> character_part(const PAMap& phi, const std::vector<long>& u) {
  const std::size_t n = phi.dim();
  if (u.size() == n) return u;
  if (u.size() == n + 1 && u.back() == 0) return {u.begin(), u.end() - 1};
  throw Error(Errc::DimensionMismatch, "character must have " + std::to_string(n) + " entries (or a trailing 0)");
}

Rational pair_m(const std::vector<long>& u, const QPoint& x) {
  Rational s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) s += Rational(u[j]) * x[j];
  return s;
}

Lattice piece_lattice(const Field& field, const PAPiece& p, const QPoint& v, const std::vector<long>& u) {
  const Rational t = pair_m(u, v);
  auto vals = piece_values(p, v);
  std::vector<long> exps;
  for (const auto& c : vals) exps.push_back(to_long(ceil_q(t - c)));
  return Lattice::diagonal(field, p.basis, exps);
}

}  // namespace

Lattice vertex_lattice(const PAMap& phi, const QPoint& v, const std::vector<long>& u_in) {
  const std::vector<long> u = character_part(phi, u_in);
  std::optional<Lattice> out;
  std::string first;
  for (const auto& c : phi.complex().cells) {
    if (std::find(c.vertices.begin(), c.vertices.end(), v) == c.vertices.end()) continue;
    Lattice l = piece_lattice(phi.field(), phi.piece_for(c.id), v, u);
    if (!out) {
      out = l;
      first = c.id;
    } else if (!(l == *out)) {
      throw Error(Errc::GluingViolation,
                  "cells '" + first + "' and '" + c.id + "' give different lattices at " + format_point(v));
    }
  }
  if (!out) throw Error(Errc::VertexNotFound, format_point(v) + " is not a vertex of the complex");
  return *out;
}

ConeModule cone_module(const PAMap& phi, const std::string& cell, const std::vector<long>& u_in) {
  const Polyhedron& c = phi.complex().cell(cell);
  const std::vector<long> u = character_part(phi, u_in);
  const PAPiece& p = phi.piece_for(cell);
  ConeModule out;
  Matrix cols(phi.rank(), 0);
  for (std::size_t i = 0; i < phi.rank(); ++i) {
    bool in = true;
    for (const auto& w : c.rays) {
      Rational s = pairing_ray(p.chars[i], w) - pair_m(u, QPoint(w.begin(), w.end()));
      if (s < 0) in = false;
    }
    if (!in) continue;
    std::optional<long> m;
    for (const auto& v : c.vertices) {
      long e = to_long(ceil_q(pair_m(u, v) - pairing(p.chars[i], v)));
      m = m ? std::max(*m, e) : e;
    }
    out.support.push_back(i);
    out.exponents.push_back(*m);
    Vector col = p.basis.column(i);
    Scalar s = phi.field().uniformizer_pow(*m);
    for (auto& x : col) x *= s;
    cols = Matrix::hconcat(cols, Matrix::from_columns({col}, phi.rank()));
  }
  out.generators = canonical_module(phi.field(), cols);
  return out;
}

// ------------------------------------------------------------- linear part

Matrix KlyachkoEntry::at(long j, std::size_t rank) const {
  Matrix out(rank, 0);
  // steps run by decreasing j: the last step with step.j >= j wins.
  for (const auto& s : steps) {
    if (s.j >= j) out = s.subspace;
  }
  return out;
}

LinearPart linear_part(const PAMap& phi) {
  LinearPart out;
  const Complex& cx = phi.complex();
  RecessionFan fan = recession_fan(cx);
  for (const auto& w : fan.rays) {
    for (const auto& c : cx.cells) {
      if (std::find(c.rays.begin(), c.rays.end(), w) == c.rays.end()) continue;
      Prevaluation pv = ray_prevaluation(phi.piece_for(c.id), w);
      KlyachkoEntry e;
      e.ray = w;
      e.cell = c.id;
      auto bps = pv.breakpoints();
      for (auto it = bps.rbegin(); it != bps.rend(); ++it) e.steps.push_back({to_long(it->get_num()), pv.subspace_at(*it)});
      out.klyachko.push_back(std::move(e));
      break;
    }
  }
  for (const auto& c : cx.cells) {
    for (const auto& w : c.rays) out.prevaluations.push_back({c.id, w, ray_prevaluation(phi.piece_for(c.id), w)});
  }
  return out;
}

// --------------------------------------------------------------- morphisms

namespace {

// u0 ∈ Z^n with ⟨u0, v⟩ ≡ 1/d (mod 1), d the multiplicity of v.
std::vector<long> unit_character(const QPoint& v) {
  const Integer d = lcm_of_denominators(v);
  std::vector<long> u(v.size(), 0);
  if (d == 1) return u;
  // Bezout over d, a_1, ..., a_n where v_k = a_k / d.
  Integer g = d;
  std::vector<Integer> coef(v.size(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    Rational ak_q = v[k] * Rational(d);
    Integer ak = ak_q.get_num();
    if (ak == 0) continue;
    Integer gnew, s, t;
    mpz_gcdext(gnew.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), ak.get_mpz_t());
    for (auto& c : coef) c *= s;
    coef[k] += t;
    g = gnew;
  }
  // g == 1 because d is the lcm of reduced denominators.
  for (std::size_t k = 0; k < v.size(); ++k) {
    Integer r = coef[k] % d;
    u[k] = to_long(r);
  }
  return u;
}

bool same_cells(const Complex& a, const Complex& b) {
  if (a.dim != b.dim || a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const auto& x = a.cells[i];
    const auto& y = b.cells[i];
    if (x.id != y.id || x.vertices != y.vertices || x.rays != y.rays) return false;
  }
  return true;
}

}  // namespace

MorphismResult morphism_check(const PAMap& phi, const PAMap& psi, const Matrix& f) {
  if (!(phi.field() == psi.field())) throw Error(Errc::BackendMismatch, "maps over different fields");
  if (f.rows() != psi.rank() || f.cols() != phi.rank())
    throw Error(Errc::DimensionMismatch, "F must be " + std::to_string(psi.rank()) + "x" + std::to_string(phi.rank()));
  if (!same_cells(phi.complex(), psi.complex())) throw Error(Errc::CellMismatch, "maps live on different complexes");

  MorphismResult res;
  for (const auto& v : phi.complex().vertices()) {
    const long d = vertex_multiplicity(v);
    const std::vector<long> u0 = unit_character(v);
    for (long t = 0; t < d; ++t) {
      std::vector<long> u(u0.size());
      for (std::size_t k = 0; k < u.size(); ++k) u[k] = t * u0[k];
      Lattice a = vertex_lattice(phi, v, u);
      Lattice b = vertex_lattice(psi, v, u);
      const Matrix& g = a.generators();
      for (std::size_t j = 0; j < g.cols(); ++j) {
        if (!b.contains_vector(f * g.column(j))) {
          res.ok = false;
          res.vertex = v;
          res.character = u;
          res.detail = "F maps a generator of the lattice at " + format_point(v) + " outside the target lattice";
          return res;
        }
      }
    }
  }

  RecessionFan fan = recession_fan(phi.complex());
  for (const auto& w : fan.rays) {
    for (const auto& c : phi.complex().cells) {
      if (std::find(c.rays.begin(), c.rays.end(), w) == c.rays.end()) continue;
      Prevaluation pa = ray_prevaluation(phi.piece_for(c.id), w);
      Prevaluation pb = ray_prevaluation(psi.piece_for(c.id), w);
      std::set<Rational> js;
      for (auto& x : pa.breakpoints()) js.insert(x);
      for (auto& x : pb.breakpoints()) js.insert(x);
      for (const auto& j : js) {
        Matrix src = pa.subspace_at(j);
        if (!span_contains(pb.subspace_at(j), f * src)) {
          res.ok = false;
          res.ray = w;
          res.j = to_long(j.get_num());
          res.detail = "F does not respect the filtration along " + format_ray(w);
          return res;
        }
      }
      break;
    }
  }
  return res;
}

// --------------------------------------------------------------- splitting

namespace {

struct ImageData {
  std::vector<AdaptedNorm> vertex_norms;
  std::vector<std::pair<std::string, RayDir>> cell_rays;
};

ImageData collect(const PAMap& phi) {
  ImageData d;
  const Complex& cx = phi.complex();
  for (const auto& v : cx.vertices()) {
    for (const auto& c : cx.cells) {
      if (std::find(c.vertices.begin(), c.vertices.end(), v) == c.vertices.end()) continue;
      const PAPiece& p = phi.piece_for(c.id);
      d.vertex_norms.emplace_back(phi.field(), p.basis, piece_values(p, v));
      break;
    }
  }
  for (const auto& c : cx.cells) {
    for (const auto& w : c.rays) d.cell_rays.emplace_back(c.id, w);
  }
  return d;
}

bool frame_ok(const PAMap& phi, const ImageData& d, const Matrix& frame) {
  if (!is_invertible(frame)) return false;
  for (const auto& n : d.vertex_norms) {
    if (!is_adapted(n, frame)) return false;
  }
  for (const auto& [cell, w] : d.cell_rays) {
    Prevaluation pv = ray_prevaluation(phi.piece_for(cell), w);
    for (const auto& a : pv.breakpoints()) {
      if (!frame_compatible(pv.subspace_at(a), frame)) return false;
    }
  }
  return true;
}

std::vector<tree::VertexClass> ball_classes(const AdaptedNorm& v) {
  std::vector<tree::VertexClass> out;
  for (const auto& t : period_thresholds({&v})) out.push_back(tree::VertexClass::of(ball(v, t)));
  return out;
}

// Image points x = v + k w for every vertex v and listed ray w of a cell.
std::vector<AdaptedNorm> far_points(const PAMap& phi, long k) {
  std::vector<AdaptedNorm> out;
  for (const auto& c : phi.complex().cells) {
    const PAPiece& p = phi.piece_for(c.id);
    for (const auto& v : c.vertices) {
      for (const auto& w : c.rays) {
        QPoint x = v;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += Rational(k * w[j]);
        out.emplace_back(phi.field(), p.basis, piece_values(p, x));
      }
    }
  }
  return out;
}

SplitVerdict split_rank_two(const PAMap& phi, const ImageData& d, const SplitOptions& opts) {
  std::vector<tree::VertexClass> s;
  for (const auto& n : d.vertex_norms) {
    for (auto& x : ball_classes(n)) s.push_back(x);
  }
  std::vector<tree::End> ends;
  for (const auto& [cell, w] : d.cell_rays) {
    const PAPiece& p = phi.piece_for(cell);
    Rational s0 = pairing_ray(p.chars[0], w);
    Rational s1 = pairing_ray(p.chars[1], w);
    if (s0 == s1) continue;
    ends.push_back(tree::end_of_line(p.basis.column(s0 > s1 ? 0 : 1)));
  }

  SplitVerdict out;
  tree::CommonLineResult res = tree::common_line(s, ends);
  if (res.ok()) {
    if (!frame_ok(phi, d, *res.frame)) throw std::logic_error("splitting_check: frame failed verification");
    out.kind = SplitVerdict::Kind::Split;
    out.frame = res.frame;
    return out;
  }
  out.kind = SplitVerdict::Kind::NotSplit;
  out.certificate = res.certificate;
  if (res.certificate->kind == tree::Certificate::Kind::Tripod) return out;

  // Trade the end certificate for a tripod among actual image points.
  std::vector<tree::VertexClass> ext = s;
  for (long k = 1; k <= opts.far_cap; k *= 2) {
    for (const auto& n : far_points(phi, k)) {
      for (auto& x : ball_classes(n)) ext.push_back(x);
    }
    tree::CommonLineResult r2 = tree::common_line(ext, {});
    if (!r2.ok()) {
      out.certificate = r2.certificate;
      out.note = "tripod found after moving " + std::to_string(k) + " along the rays";
      return out;
    }
  }
  out.note = "no tripod among image points up to distance " + std::to_string(opts.far_cap);
  return out;
}

std::string frame_key(const Field& field, const Matrix& g) {
  std::vector<std::string> cols;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    Vector c = g.column(j);
    Scalar lead;
    for (const auto& x : c) {
      if (!x.is_zero()) {
        lead = x;
        break;
      }
    }
    std::string k;
    for (const auto& x : c) k += field.format(x / lead) + ",";
    cols.push_back(k);
  }
  std::sort(cols.begin(), cols.end());
  std::string out;
  for (auto& c : cols) out += c + ";";
  return out;
}

Lattice sum_l(const Lattice& a, const Lattice& b) { return lattice_sum(a, b); }
Lattice meet_l(const Lattice& a, const Lattice& b) { return lattice_intersect(a, b); }
Matrix sum_s(const Matrix& a, const Matrix& b) { return column_space(Matrix::hconcat(a, b)); }
Matrix meet_s(const Matrix& a, const Matrix& b) { return subspace_intersection(a, b); }

template <typename T, typename Sum, typename Meet, typename Eq>
std::optional<std::pair<std::string, std::array<std::size_t, 3>>> find_violation(const std::vector<T>& fam, Sum sum,
                                                                                 Meet meet, Eq eq) {
  const std::size_t m = fam.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        if (a == b || a == c) continue;
        if (!eq(meet(fam[a], sum(fam[b], fam[c])), sum(meet(fam[a], fam[b]), meet(fam[a], fam[c]))))
          return std::make_pair(std::string("a&(b+c)"), std::array<std::size_t, 3>{a, b, c});
        if (!eq(sum(fam[a], meet(fam[b], fam[c])), meet(sum(fam[a], fam[b]), sum(fam[a], fam[c]))))
          return std::make_pair(std::string("a+(b&c)"), std::array<std::size_t, 3>{a, b, c});
      }
    }
  }
  return std::nullopt;
}

SplitVerdict split_higher_rank(const PAMap& phi, const ImageData& d, const SplitOptions& opts) {
  const Field& field = phi.field();
  SplitVerdict out;
  std::vector<Matrix> level;
  std::set<std::string> seen;
  auto add = [&](std::vector<Matrix>& into, const Matrix& g) {
    if (seen.insert(frame_key(field, g)).second) into.push_back(g);
  };
  for (const auto& p : phi.pieces()) add(level, p.basis);
  for (std::size_t i = 0; i < d.vertex_norms.size(); ++i) {
    for (std::size_t j = i + 1; j < d.vertex_norms.size(); ++j)
      add(level, common_adapted_basis(d.vertex_norms[i], d.vertex_norms[j]));
  }

  const std::size_t level_cap = 64;
  for (int depth = 0;; ++depth) {
    for (const auto& g : level) {
      if (frame_ok(phi, d, g)) {
        out.kind = SplitVerdict::Kind::Split;
        out.frame = g;
        return out;
      }
    }
    if (depth >= opts.depth) break;
    // Refine: pull each candidate towards a norm it misses, anchored at the
    // mean of the norms it already carries.
    std::vector<Matrix> next;
    for (const auto& g : level) {
      std::vector<const AdaptedNorm*> on;
      std::vector<const AdaptedNorm*> off;
      for (const auto& n : d.vertex_norms) (is_adapted(n, g) ? on : off).push_back(&n);
      if (on.empty() || off.empty()) continue;
      std::vector<Rational> mean(g.cols(), Rational(0));
      for (const auto* n : on) {
        for (std::size_t k = 0; k < g.cols(); ++k) mean[k] += *norm_eval(*n, g.column(k));
      }
      for (auto& x : mean) x /= static_cast<long>(on.size());
      AdaptedNorm anchor(field, g, mean);
      for (const auto* n : off) {
        add(next, common_adapted_basis(anchor, *n));
        if (next.size() >= level_cap) break;
      }
      if (next.size() >= level_cap) break;
    }
    if (next.empty()) break;
    level = std::move(next);
  }

  // Obstruction search among balls of image points.
  std::vector<Lattice> fam;
  auto push_lattice = [&](const Lattice& l) {
    if (std::none_of(fam.begin(), fam.end(), [&](const Lattice& x) { return x == l; })) fam.push_back(l);
  };
  std::vector<AdaptedNorm> pts = d.vertex_norms;
  for (long k : {1L, 2L}) {
    for (auto& n : far_points(phi, k)) pts.push_back(n);
  }
  const std::size_t fam_cap = 14;
  for (const auto& n : pts) {
    for (const auto& t : period_thresholds({&n})) {
      push_lattice(ball(n, t));
      push_lattice(ball(n, t + 1));
    }
    if (fam.size() >= fam_cap) break;
  }
  if (fam.size() > fam_cap) fam.erase(fam.begin() + static_cast<std::ptrdiff_t>(fam_cap), fam.end());
  auto lv = find_violation(fam, sum_l, meet_l, [](const Lattice& a, const Lattice& b) { return a == b; });
  if (lv) {
    out.kind = SplitVerdict::Kind::NotSplit;
    DistributivityWitness w;
    w.law = lv->first;
    for (auto i : lv->second) w.members.push_back(fam[i].generators());
    out.obstruction = w;
    return out;
  }

  std::vector<Matrix> flags;
  for (const auto& [cell, w] : d.cell_rays) {
    Prevaluation pv = ray_prevaluation(phi.piece_for(cell), w);
    for (const auto& a : pv.breakpoints()) {
      Matrix s = pv.subspace_at(a);
      if (s.cols() == 0 || s.cols() == phi.rank()) continue;
      if (std::none_of(flags.begin(), flags.end(), [&](const Matrix& x) { return x == s; })) flags.push_back(s);
    }
  }
  auto sv = find_violation(flags, sum_s, meet_s, [](const Matrix& a, const Matrix& b) { return a == b; });
  if (sv) {
    out.kind = SplitVerdict::Kind::NotSplit;
    DistributivityWitness w;
    w.subspaces = true;
    w.law = sv->first;
    for (auto i : sv->second) w.members.push_back(flags[i]);
    out.obstruction = w;
    return out;
  }

  out.kind = SplitVerdict::Kind::Unknown;
  out.note = "no verified frame within refinement depth " + std::to_string(opts.depth) + " and no distributivity " +
             "violation among " + std::to_string(fam.size()) + " balls and " + std::to_string(flags.size()) + " flags";
  return out;
}

}  // namespace

bool verify_obstruction(const Field& field, const DistributivityWitness& w) {
  if (w.members.size() != 3) return false;
  auto check = [&](const auto& a, const auto& b, const auto& c, auto sum, auto meet) {
    if (w.law == "a&(b+c)") return !(meet(a, sum(b, c)) == sum(meet(a, b), meet(a, c)));
    if (w.law == "a+(b&c)") return !(sum(a, meet(b, c)) == meet(sum(a, b), sum(a, c)));
    return false;
  };
  if (w.subspaces) {
    Matrix a = column_space(w.members[0]), b = column_space(w.members[1]), c = column_space(w.members[2]);
    return check(a, b, c, sum_s, meet_s);
  }
  Lattice a = Lattice::from_generators(field, w.members[0]);
  Lattice b = Lattice::from_generators(field, w.members[1]);
  Lattice c = Lattice::from_generators(field, w.members[2]);
  return check(a, b, c, sum_l, meet_l);
}

SplitVerdict splitting_check(const PAMap& phi, const SplitOptions& opts) {
  GluingReport g = validate_gluing(phi);
  if (!g.ok()) throw Error(Errc::GluingViolation, g.failures.front().detail);
  ImageData d = collect(phi);
  if (phi.rank() == 1) {
    SplitVerdict out;
    out.kind = SplitVerdict::Kind::Split;
    out.frame = phi.pieces().front().basis;
    return out;
  }
  if (phi.rank() == 2) return split_rank_two(phi, d, opts);
  return split_higher_rank(phi, d, opts);
}

bool frame_splits(const PAMap& phi, const Matrix& frame) { return frame_ok(phi, collect(phi), frame); }

bool piece_equiv(const Field& field, const Complex& c, const PAPiece& p, const PAPiece& q) {
  if (p.cell != q.cell) throw Error(Errc::CellMismatch, "pieces on '" + p.cell + "' and '" + q.cell + "'");
  if (p.basis.rows() != q.basis.rows()) throw Error(Errc::DimensionMismatch, "pieces of different rank");
  const Polyhedron& cell = c.cell(p.cell);
  for (const auto& v : cell.vertices) {
    if (!norm_equal(AdaptedNorm(field, p.basis, piece_values(p, v)), AdaptedNorm(field, q.basis, piece_values(q, v))))
      return false;
  }
  for (const auto& w : cell.rays) {
    if (!same_filtration(ray_prevaluation(p, w), ray_prevaluation(q, w))) return false;
  }
  return true;
}

}  // namespace btt
