#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btt/latnorm.hpp"

namespace btt::tree {

/// Homothety class [Λ] of a rank-2 lattice: a vertex of the Bruhat-Tits tree.
///
/// The representative is scaled so that the first canonical pivot is ϖ^0;
/// the class is then determined by the second pivot exponent a (which may be
/// negative) and the reduced off-diagonal entry x. key() = "a:x".
class VertexClass {
 public:
  /// Throws DimensionMismatch unless the lattice has rank 2.
  static VertexClass of(const Lattice& l);

  const Lattice& lattice() const { return lat_; }
  const Field& field() const { return lat_.field(); }
  long exponent() const;
  const Scalar& offdiag() const { return lat_.generators()(1, 0); }
  const std::string& key() const { return key_; }

  friend bool operator==(const VertexClass& a, const VertexClass& b) { return a.key_ == b.key_; }
  /// Deterministic order: by exponent, then key.
  friend bool operator<(const VertexClass& a, const VertexClass& b);

 private:
  explicit VertexClass(Lattice l);
  Lattice lat_;
  std::string key_;
};

VertexClass normalize(const Lattice& l);
/// The class of the lattice with the given canonical data ϖ^0, x / ϖ^a.
VertexClass vertex_from_key(const Field& field, const std::string& key);

/// The q+1 neighbours, ordered by the residue lines (1:0), (1:1), ..., (0:1).
/// Throws UnsupportedEnumeration for the Laurent backend.
std::vector<VertexClass> neighbors(const VertexClass& v);

long distance(const VertexClass& u, const VertexClass& v);
/// Vertices from u to v inclusive, consecutive ones adjacent.
std::vector<VertexClass> geodesic(const VertexClass& u, const VertexClass& v);

/// A boundary point of the tree: a line in E = K^2.
struct End {
  Vector direction;
};

bool same_end(const End& a, const End& b);
/// The end reached by the ray O ϖ^k f ⊕ O e (k → ∞) is the line K·e.
End end_of_line(const Vector& e);

/// Degree of `center` in the union of the pairwise geodesics of `points`.
int tripod_degree(const std::vector<VertexClass>& points, const VertexClass& center);
/// Neighbours of `center` that are used by the union of pairwise geodesics.
std::vector<VertexClass> tripod_directions(const std::vector<VertexClass>& points, const VertexClass& center);

struct Certificate {
  enum class Kind { Tripod, EndIncompatible };
  Kind kind = Kind::Tripod;
  /// Tripod: a vertex of degree >= 3 and three witnesses whose pairwise
  /// geodesics meet there.
  std::optional<VertexClass> tripod_vertex;
  std::vector<VertexClass> witnesses;
  /// EndIncompatible: the offending end (index into the ends argument) and,
  /// when one exists, a vertex off every admissible apartment.
  std::optional<std::size_t> end_index;
  std::optional<VertexClass> vertex;
  std::string detail;
};

struct CommonLineResult {
  /// Set on success: columns g1, g2 with every vertex adapted.
  std::optional<Matrix> frame;
  std::optional<Certificate> certificate;
  bool ok() const { return frame.has_value(); }
};

/// Is there a single apartment containing all of S whose frame contains every
/// end line? S must be nonempty.
CommonLineResult common_line(const std::vector<VertexClass>& s, const std::vector<End>& ends);

/// True iff each 3-subset of S has a path as the union of its geodesics.
bool helly_triples(const std::vector<VertexClass>& s);

/// Ball of the given radius, in BFS order (ties by neighbour order).
/// Throws RadiusTooLarge above `cap`.
std::vector<VertexClass> ball_vertices(const VertexClass& center, int radius, int cap = 8);

/// DOT graph of the ball; deterministic.
std::string export_dot(const VertexClass& center, int radius, int cap = 8);

}  // namespace btt::tree
