#pragma once

#include <string>
#include <utility>
#include <vector>

#include "btt/rational.hpp"

namespace btt {

/// A point of N_Q × {1}; the trailing 1 is implicit.
using QPoint = std::vector<Rational>;
/// Primitive integral direction in N × {0}.
using RayDir = std::vector<long>;
/// ũ = (u, k) ∈ M × Z, paired with (x, 1).
using CharacterVector = std::vector<long>;

/// conv(vertices) + cone(rays).
struct Polyhedron {
  std::string id;
  std::vector<QPoint> vertices;
  std::vector<RayDir> rays;
};

struct DeclaredFace {
  std::string first;
  std::string second;
  Polyhedron face;
};

struct Complex {
  std::size_t dim = 0;
  std::vector<Polyhedron> cells;
  std::vector<DeclaredFace> faces;

  /// Throws CellNotFound.
  const Polyhedron& cell(const std::string& id) const;
  bool has_cell(const std::string& id) const;
  /// Distinct vertices of all cells, in first-seen order.
  std::vector<QPoint> vertices() const;
};

/// Exact membership via rational feasibility of the V-representation.
bool in_polyhedron(const Polyhedron& p, const QPoint& x);
/// w ∈ cone(rays).
bool in_recession_cone(const Polyhedron& p, const RayDir& w);
/// Every vertex of `inner` lies in `outer` and every ray of `inner` in its cone.
bool contains_polyhedron(const Polyhedron& outer, const Polyhedron& inner);

/// Divides out the gcd; throws DimensionMismatch on the zero vector.
RayDir primitive(const std::vector<long>& w);

std::vector<RayDir> recession(const Polyhedron& p);

struct RecessionFan {
  /// Distinct rays over all cells, sorted lexicographically.
  std::vector<RayDir> rays;
  /// Per cell: indices into `rays`.
  std::vector<std::pair<std::string, std::vector<std::size_t>>> cells;
};
RecessionFan recession_fan(const Complex& c);

/// ℓ with (ℓv, ℓ) primitive: the lcm of the coordinate denominators.
long vertex_multiplicity(const QPoint& v);

struct Issue {
  std::string kind;
  std::string detail;
};

struct ComplexReport {
  std::vector<Issue> violations;
  std::vector<Issue> warnings;
  bool ok() const { return violations.empty(); }
};

ComplexReport validate_complex(const Complex& c);

/// Cells not contained in any other cell, in input order.
std::vector<std::string> maximal_cells(const Complex& c);

/// Σ u_j x_j + u_{n+1}; DimensionMismatch unless |ũ| = |x| + 1.
Rational pairing(const CharacterVector& u, const QPoint& x);
/// Linear part only: Σ u_j w_j.
Rational pairing_ray(const CharacterVector& u, const RayDir& w);

std::string format_point(const QPoint& x);
std::string format_ray(const RayDir& w);

}  // namespace btt
