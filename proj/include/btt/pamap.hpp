#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btt/latnorm.hpp"
#include "btt/polyhedral.hpp"
#include "btt/tree.hpp"

namespace btt {

/// Local data on one cell: a basis b_1..b_r of E and characters ũ_1..ũ_r.
/// On the cell, x ↦ the norm adapted to the basis with values ⟨ũ_i, (x,1)⟩.
struct PAPiece {
  std::string cell;
  Matrix basis;
  std::vector<CharacterVector> chars;
};

/// A piecewise affine map from a polyhedral complex to the extended building.
/// The constructor checks shapes only; gluing is validate_gluing's job.
class PAMap {
 public:
  /// Throws Singular, DimensionMismatch, CellNotFound, or Schema (duplicate
  /// piece, or a maximal cell without a piece).
  PAMap(Field field, Complex complex, std::size_t rank, std::vector<PAPiece> pieces);

  const Field& field() const { return field_; }
  const Complex& complex() const { return complex_; }
  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return complex_.dim; }
  const std::vector<PAPiece>& pieces() const { return pieces_; }

  /// The piece of `cell`, or of the first maximal cell containing it.
  const PAPiece& piece_for(const std::string& cell) const;

 private:
  Field field_;
  Complex complex_;
  std::size_t rank_;
  std::vector<PAPiece> pieces_;
};

/// ⟨ũ_i, (x,1)⟩ for each character of the piece.
std::vector<Rational> piece_values(const PAPiece& p, const QPoint& x);
/// The linear part at w: values ⟨u_i, w⟩ on the piece basis.
Prevaluation ray_prevaluation(const PAPiece& p, const RayDir& w);
/// Same breakpoints and the same subspace at each of them.
bool same_filtration(const Prevaluation& a, const Prevaluation& b);

/// Throws CellNotFound, PointOutsideCell.
AdaptedNorm eval(const PAMap& phi, const std::string& cell, const QPoint& x);

struct GluingFailure {
  std::size_t face = 0;
  std::string first;
  std::string second;
  std::optional<QPoint> vertex;
  std::optional<RayDir> ray;
  std::string detail;
};

struct GluingReport {
  std::vector<GluingFailure> failures;
  std::vector<Issue> warnings;
  bool ok() const { return failures.empty(); }
};

/// For each declared face: equal norms at its vertices, equal ray
/// filtrations along its rays.
GluingReport validate_gluing(const PAMap& phi);

/// The ball {e : Φ(v)(e) >= ⟨u,v⟩} = ⊕ ϖ^{⌈⟨u,v⟩ − c_i(v)⌉} O b_i.
/// `u` has n entries, or n+1 with the last 0.
/// Throws VertexNotFound, and GluingViolation if two cells at v disagree.
Lattice vertex_lattice(const PAMap& phi, const QPoint& v, const std::vector<long>& u);

struct ConeModule {
  /// Indices i with ⟨u_i − u, w⟩ >= 0 on every recession ray w.
  std::vector<std::size_t> support;
  /// m_i = max over vertices of ⌈⟨u,v⟩ − c_i(v)⌉, for i in support.
  std::vector<long> exponents;
  /// canonical_module of the columns ϖ^{m_i} b_i.
  Matrix generators;
};

/// {e : Φ(x)(e) >= ⟨u,x⟩ on the whole cell}. Throws CellNotFound.
ConeModule cone_module(const PAMap& phi, const std::string& cell, const std::vector<long>& u);

struct FiltrationStep {
  long j = 0;
  Matrix subspace;
};

/// Decreasing filtration E_j = span{b_i : ⟨u_i, w⟩ >= j} of one ray.
struct KlyachkoEntry {
  RayDir ray;
  /// The cell the data was read from.
  std::string cell;
  /// By decreasing j; E_j for j between steps is the next step up.
  std::vector<FiltrationStep> steps;

  /// E_j for any integer j (all of E below the last step, 0 above the first).
  Matrix at(long j, std::size_t rank) const;
};

struct RayPrevaluation {
  std::string cell;
  RayDir ray;
  Prevaluation prevaluation;
};

struct LinearPart {
  std::vector<KlyachkoEntry> klyachko;
  std::vector<RayPrevaluation> prevaluations;
};

LinearPart linear_part(const PAMap& phi);

struct MorphismResult {
  bool ok = true;
  std::optional<QPoint> vertex;
  std::optional<std::vector<long>> character;
  std::optional<RayDir> ray;
  std::optional<long> j;
  std::string detail;
};

/// F : E → E′ (an r′ × r matrix). Vertex lattices for one u per class of
/// ⟨u,v⟩ mod 1, then ray filtrations. Throws DimensionMismatch,
/// CellMismatch (different complexes), BackendMismatch.
MorphismResult morphism_check(const PAMap& phi, const PAMap& psi, const Matrix& f);

/// A sum/intersection identity that fails in a family of lattices (or
/// subspaces) taken from the image. Diagonal families are distributive, so
/// this rules out a common frame.
struct DistributivityWitness {
  bool subspaces = false;
  /// "a&(b+c)" or "a+(b&c)".
  std::string law;
  /// Generators of a, b, c.
  std::vector<Matrix> members;
};

/// Recomputes both sides of the law; true iff they differ.
bool verify_obstruction(const Field& field, const DistributivityWitness& w);

struct SplitOptions {
  int depth = 3;
  long far_cap = 1024;
};

struct SplitVerdict {
  enum class Kind { Split, NotSplit, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Matrix> frame;
  std::optional<tree::Certificate> certificate;
  std::optional<DistributivityWitness> obstruction;
  std::string note;
};

/// Throws GluingViolation if validate_gluing fails.
SplitVerdict splitting_check(const PAMap& phi, const SplitOptions& opts = {});

/// Every vertex norm adapted to `frame`, every ray flag spanned by it.
bool frame_splits(const PAMap& phi, const Matrix& frame);

/// Throws CellMismatch for different cells, DimensionMismatch for ranks.
bool piece_equiv(const Field& field, const Complex& c, const PAPiece& p, const PAPiece& q);

}  // namespace btt
