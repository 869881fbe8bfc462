#include <doctest.h>

#include <map>
#include <queue>

#include "btt/errors.hpp"
#include "btt/tree.hpp"
#include "support/random.hpp"
#include "support/tree_support.hpp"

using namespace btt;
using namespace btt::tree;
using btt::testing::Rng;

namespace {

Scalar q(long a, long b = 1) { return Scalar(Rational(a, b)); }

const Field F2 = Field::padic(2);
const Field F3 = Field::padic(3);

VertexClass diag(const Field& f, const Scalar& a, const Scalar& b) {
  return normalize(hnf(f, Matrix::diagonal({a, b})));
}

VertexClass from_cols(const Field& f, const Vector& c1, const Vector& c2) {
  return normalize(hnf(f, Matrix::from_columns({c1, c2}, 2)));
}

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("normalize examples") {
  VertexClass s = normalize(Lattice::standard(F2, 2));
  CHECK(s == normalize(Lattice::standard(F2, 2).scaled(q(4))));
  CHECK(diag(F2, q(1), q(1, 2)) == diag(F2, q(2), q(1)));
  CHECK_FALSE(diag(F2, q(1), q(2)) == diag(F2, q(2), q(1)));
  CHECK(btt::testing::bfs_distance(diag(F2, q(1), q(2)), diag(F2, q(2), q(1)), 4) == 2);
  CHECK(s.key() == "0:0");
  CHECK(vertex_from_key(F2, diag(F2, q(1), q(1, 8)).key()) == diag(F2, q(1), q(1, 8)));
  CHECK_THROWS_AS(normalize(Lattice::standard(F2, 3)), Error);
  CHECK_THROWS_AS(vertex_from_key(F2, "x:0"), Error);

  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    Lattice l = btt::testing::random_lattice(F3, rng, 2);
    CHECK(normalize(l) == normalize(l.scaled(btt::testing::random_scalar(F3, rng, -4, 4, 0.0))));
  }
}

TEST_CASE("neighbors") {
  VertexClass s = normalize(Lattice::standard(F2, 2));
  auto nb = neighbors(s);
  REQUIRE(nb.size() == 3);
  std::vector<VertexClass> expected{diag(F2, q(1), q(2)), diag(F2, q(2), q(1)),
                                    from_cols(F2, {q(1), q(1)}, {q(0), q(2)})};
  for (const auto& e : expected) CHECK(std::find(nb.begin(), nb.end(), e) != nb.end());

  Rng rng(9);
  for (const Field& f : {F2, F3, Field::padic(5)}) {
    for (int i = 0; i < 15; ++i) {
      VertexClass v = normalize(btt::testing::random_lattice(f, rng, 2));
      auto ns = neighbors(v);
      CHECK(ns.size() == f.prime() + 1);
      for (std::size_t a = 0; a < ns.size(); ++a) {
        CHECK(distance(v, ns[a]) == 1);
        for (std::size_t b = a + 1; b < ns.size(); ++b) CHECK_FALSE(ns[a] == ns[b]);
        auto back = neighbors(ns[a]);
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
      }
    }
  }
  try {
    neighbors(normalize(Lattice::standard(Field::laurent(), 2)));
    FAIL("expected UnsupportedEnumeration");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedEnumeration);
  }
}

TEST_CASE("distance and geodesic") {
  VertexClass s = normalize(Lattice::standard(F2, 2));
  CHECK(distance(s, s) == 0);
  CHECK(geodesic(s, s) == std::vector<VertexClass>{s});
  VertexClass d3 = diag(F2, q(1), q(8));
  CHECK(distance(s, d3) == 3);

  Rng rng(200);
  for (int i = 0; i < 100; ++i) {
    const Field& f = i % 2 ? F2 : F3;
    VertexClass u = btt::testing::random_walk(normalize(btt::testing::random_lattice(f, rng, 2)), rng, 3);
    VertexClass v = btt::testing::random_walk(u, rng, static_cast<int>(rng.uniform(0, 5)));
    long d = distance(u, v);
    auto path = geodesic(u, v);
    CHECK(path.size() == static_cast<std::size_t>(d + 1));
    CHECK(path.front() == u);
    CHECK(path.back() == v);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) CHECK(distance(path[k], path[k + 1]) == 1);
    CHECK(btt::testing::bfs_distance(u, v, 6) == d);
    VertexClass w = btt::testing::random_walk(u, rng, 3);
    CHECK(distance(u, w) <= distance(u, v) + distance(v, w));
  }
  // Laurent backend: distance via invariant factors still works.
  Field lt = Field::laurent();
  Scalar t = Scalar::indeterminate();
  CHECK(distance(normalize(Lattice::standard(lt, 2)), diag(lt, q(1), t * t)) == 2);
}

TEST_CASE("two-apartment overlap") {
  Vector b1{q(1), q(0)}, b2{q(0), q(1)}, b12{q(1), q(1)};
  for (long k = -2; k <= 5; ++k) {
    Scalar s = F2.uniformizer_pow(-k);
    Vector sb2{q(0), s};
    bool same = from_cols(F2, b1, sb2) == from_cols(F2, b12, sb2);
    CHECK(same == (k >= 0));
  }
}

TEST_CASE("common_line examples") {
  VertexClass s = normalize(Lattice::standard(F2, 2));
  auto r1 = common_line({s, diag(F2, q(1), q(2)), diag(F2, q(1), q(4))}, {});
  REQUIRE(r1.ok());
  CHECK(same_span(r1.frame->select_columns({0}), Matrix::from_columns({{q(1), q(0)}}, 2)) !=
        same_span(r1.frame->select_columns({0}), Matrix::from_columns({{q(0), q(1)}}, 2)));

  auto nb = neighbors(s);
  auto r2 = common_line(nb, {});
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.certificate->kind == Certificate::Kind::Tripod);
  CHECK(*r2.certificate->tripod_vertex == s);
  CHECK(tripod_degree(nb, s) == 3);

  // {std, O b1 + O b2/4, O b1 + O (2b1+b2)/4}: pairwise distances are all 2
  // (Smith oracle on the 2x2 change of basis), so the three branch at
  // O b1 + O b2/2 rather than lying on one line.
  VertexClass a = diag(F2, q(1), q(1, 4));
  VertexClass b = from_cols(F2, {q(1), q(0)}, {q(1, 2), q(1, 4)});
  VertexClass m = diag(F2, q(1), q(1, 2));
  CHECK(distance(a, b) == 2);
  CHECK(distance(s, a) == 2);
  CHECK(distance(s, b) == 2);
  CHECK(btt::testing::bfs_distance(a, b, 4) == 2);
  auto r3 = common_line({s, a, b}, {});
  REQUIRE_FALSE(r3.ok());
  CHECK(*r3.certificate->tripod_vertex == m);
  auto dirs = tripod_directions({s, a, b}, m);
  REQUIRE(dirs.size() == 3);
  for (const auto& x : {s, a, b}) CHECK(std::find(dirs.begin(), dirs.end(), x) != dirs.end());
  // Replacing b by O b1 + O 2b2 puts std between the other two.
  VertexClass c = diag(F2, q(1), q(2));
  CHECK(distance(a, c) == 3);
  auto r4 = common_line({s, a, c}, {});
  REQUIRE(r4.ok());
  for (std::size_t j = 0; j < 2; ++j) {
    Matrix col = r4.frame->select_columns({j});
    CHECK((same_span(col, Matrix::from_columns({{q(1), q(0)}}, 2)) ||
           same_span(col, Matrix::from_columns({{q(0), q(1)}}, 2))));
  }
}

TEST_CASE("common_line with ends") {
  VertexClass s = normalize(Lattice::standard(F2, 2));
  Vector b1{q(1), q(0)}, b2{q(0), q(1)}, b12{q(1), q(1)}, c{q(2), q(1)};
  auto r = common_line({s}, {End{b1}, End{b2}});
  REQUIRE(r.ok());
  // Two ends force the frame; std is not adapted to {b2, 2b1+b2}.
  auto r2 = common_line({s}, {End{b2}, End{c}});
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.certificate->kind == Certificate::Kind::EndIncompatible);
  // Three distinct ends never fit.
  CHECK_FALSE(common_line({s}, {End{b1}, End{b2}, End{b12}}).ok());
  // One end: the vertices must line up with the ray.
  auto r3 = common_line({s, diag(F2, q(1), q(4))}, {End{b1}});
  REQUIRE(r3.ok());
  CHECK(is_adapted(norm_from_lattice(s.lattice()), *r3.frame));
  // std sits between O b1 + O 4b2 and the ray to K(b1+b2): still one apartment.
  CHECK(common_line({s, diag(F2, q(1), q(4))}, {End{b12}}).ok());
  // The ray to K(b1+2b2) shares one edge with the path to O b1 + O 4b2, then leaves.
  auto r4 = common_line({s, diag(F2, q(1), q(4))}, {End{Vector{q(1), q(2)}}});
  REQUIRE_FALSE(r4.ok());
  CHECK(r4.certificate->kind == Certificate::Kind::EndIncompatible);
  CHECK(*r4.certificate->tripod_vertex == diag(F2, q(1), q(2)));
  // The ray to K(2b1+b2) leaves the path towards O b1 + O b2/4 at its midpoint.
  CHECK_FALSE(common_line({s, diag(F2, q(1), q(1, 4))}, {End{c}}).ok());
  CHECK(common_line({s, diag(F2, q(1), q(1, 4))}, {End{b2}}).ok());
  // Duplicate ends collapse.
  CHECK(common_line({s}, {End{b1}, End{Vector{q(3), q(0)}}}).ok());
}

TEST_CASE("helly examples and equivalence with common_line") {
  std::vector<VertexClass> line;
  for (long k = 0; k < 5; ++k) line.push_back(diag(F2, q(1), F2.uniformizer_pow(k - 2)));
  CHECK(helly_triples(line));
  CHECK(common_line(line, {}).ok());
  VertexClass s = normalize(Lattice::standard(F2, 2));
  CHECK_FALSE(helly_triples(neighbors(s)));

  Rng rng(600);
  int collinear = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Field& f = trial % 2 ? F2 : F3;
    auto set = btt::testing::random_vertex_set(f, rng, 8, 5);
    bool h = helly_triples(set);
    auto res = common_line(set, {});
    CHECK(h == res.ok());
    collinear += h ? 1 : 0;
    if (res.ok()) {
      for (const auto& v : set) CHECK(is_adapted(norm_from_lattice(v.lattice()), *res.frame));
    } else {
      CHECK(tripod_degree(set, *res.certificate->tripod_vertex) >= 3);
    }
  }
  CHECK(collinear > 10);
  CHECK(collinear < 110);
}

TEST_CASE("ball structure and DOT export") {
  VertexClass s2 = normalize(Lattice::standard(F2, 2));
  VertexClass s3 = normalize(Lattice::standard(F3, 2));
  CHECK(ball_vertices(s2, 1).size() == 4);
  CHECK(ball_vertices(s2, 2).size() == 10);
  CHECK(ball_vertices(s3, 2).size() == 17);
  std::string dot = export_dot(s2, 1);
  CHECK(std::count(dot.begin(), dot.end(), '\n') == 1 + 4 + 3 + 1);
  CHECK(dot == export_dot(s2, 1));
  CHECK_THROWS_AS(export_dot(s2, 9), Error);
  CHECK_NOTHROW(export_dot(s2, 9, 9));

  // Acyclic: edges inside a ball = vertices - 1.
  for (const VertexClass& c : {s2, s3}) {
    auto verts = ball_vertices(c, 3);
    std::size_t edges = 0;
    for (const auto& v : verts) {
      for (const auto& n : neighbors(v)) edges += std::find(verts.begin(), verts.end(), n) != verts.end();
    }
    CHECK(edges / 2 == verts.size() - 1);
  }
}

TEST_CASE("apartment membership inside a ball") {
  VertexClass s = normalize(Lattice::standard(F2, 2));
  const int radius = 3;
  std::vector<VertexClass> apartment;
  for (long a = -radius; a <= radius; ++a) apartment.push_back(diag(F2, q(1), F2.uniformizer_pow(a)));
  std::size_t adapted = 0;
  for (const auto& v : ball_vertices(s, radius)) {
    bool in = is_adapted(norm_from_lattice(v.lattice()), Matrix::identity(2));
    bool listed = std::find(apartment.begin(), apartment.end(), v) != apartment.end();
    CHECK(in == listed);
    adapted += in;
  }
  CHECK(adapted == apartment.size());
}

}  // TEST_SUITE
