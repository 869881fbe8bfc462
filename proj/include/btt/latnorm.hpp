#pragma once

#include <optional>
#include <vector>

#include "btt/matrix.hpp"
#include "btt/rational.hpp"
#include "btt/valfield.hpp"

namespace btt {

/// Value of a norm or prevaluation: a rational, or nullopt for ∞.
using NormValue = std::optional<Rational>;

/// Canonical generators of the O-span of the columns of `gens`, any rank.
///
/// Column echelon form: column k has its pivot in row p_k (p_0 < p_1 < ...),
/// is zero above p_k, and the pivot is exactly ϖ^a. Entries in row p_k of
/// earlier columns are reduced modulo ϖ^a O to the representative returned by
/// Field::reduce_mod. Zero generators are dropped. Two generator sets span the
/// same O-module iff their canonical forms are identical.
Matrix canonical_module(const Field& field, const Matrix& gens);

/// A full-rank O-submodule of K^r, stored in canonical form.
class Lattice {
 public:
  /// Throws RankDeficient if the columns do not span K^r.
  static Lattice from_generators(const Field& field, const Matrix& gens);
  static Lattice standard(const Field& field, std::size_t r);
  /// ⊕ ϖ^{exps[i]} O b_i for the columns b_i of `basis`.
  static Lattice diagonal(const Field& field, const Matrix& basis, const std::vector<long>& exps);

  const Field& field() const { return field_; }
  std::size_t rank() const { return gens_.rows(); }
  const Matrix& generators() const { return gens_; }
  /// Valuations of the diagonal pivots.
  std::vector<long> pivot_exponents() const;

  /// c·Λ for c ≠ 0.
  Lattice scaled(const Scalar& c) const;
  bool contains_vector(const Vector& e) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.field_ == b.field_ && a.gens_ == b.gens_;
  }

 private:
  Lattice(Field f, Matrix g) : field_(std::move(f)), gens_(std::move(g)) {}
  Field field_;
  Matrix gens_;
};

Lattice hnf(const Field& field, const Matrix& gens);
bool lattice_contains(const Lattice& a, const Lattice& b);
bool lattice_equal(const Lattice& a, const Lattice& b);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
/// Computed through the dual lattice: A ∩ B = (A* + B*)*.
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
/// {x : xᵀy ∈ O for all y ∈ Λ}.
Lattice dual_lattice(const Lattice& l);

/// Additive norm v(Σ λ_i b_i) = min_i (val λ_i + c_i), a point of the extended
/// building presented by an adapting basis.
class AdaptedNorm {
 public:
  /// Throws Singular if `basis` is not invertible, DimensionMismatch if the
  /// value count differs from the rank.
  AdaptedNorm(Field field, Matrix basis, std::vector<Rational> values);

  const Field& field() const { return field_; }
  std::size_t rank() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<Rational>& values() const { return values_; }
  bool is_integral() const;
  /// Same basis, new values (no re-inversion).
  AdaptedNorm with_values(std::vector<Rational> values) const;

  /// Coordinates of e in the adapting basis.
  Vector coordinates(const Vector& e) const { return basis_inv_ * e; }
  /// Valuations of those coordinates.
  std::vector<Val> coordinate_valuations(const Vector& e) const;

 private:
  Field field_;
  Matrix basis_;
  Matrix basis_inv_;
  std::vector<Rational> values_;
  // Laurent backend only: row i of basis_inv_ is inv_num_[i] / D_i with
  // ord_t(D_i) = inv_den_order_[i]. Valuations then need no gcds.
  std::vector<std::vector<Polynomial>> inv_num_;
  std::vector<long> inv_den_order_;
};

NormValue norm_eval(const AdaptedNorm& v, const Vector& e);
/// Sublevel lattice {e : v(e) >= t} = ⊕ ϖ^{⌈t - c_i⌉} O b_i.
Lattice ball(const AdaptedNorm& v, const Rational& t);

AdaptedNorm norm_from_lattice(const Lattice& l);
/// Throws NonIntegralNorm unless every value is an integer.
Lattice lattice_from_norm(const AdaptedNorm& v);

AdaptedNorm floor_norm(const AdaptedNorm& v);
AdaptedNorm ceil_norm(const AdaptedNorm& v);
/// v + c (same basis).
AdaptedNorm shift_norm(const AdaptedNorm& v, const Rational& c);

/// Fractional parts of all values of all norms, sorted and deduplicated.
/// Balls change only at these thresholds modulo 1.
std::vector<Rational> period_thresholds(const std::vector<const AdaptedNorm*>& norms,
                                        const std::vector<Rational>& extra = {});

/// v ≼ w, i.e. v(e) <= w(e) for all e.
bool norm_leq(const AdaptedNorm& v, const AdaptedNorm& w);
bool norm_equal(const AdaptedNorm& v, const AdaptedNorm& w);
/// Throws Singular if `basis` is not invertible.
bool is_adapted(const AdaptedNorm& v, const Matrix& basis);

struct InvariantFactors {
  /// Weakly decreasing.
  std::vector<long> exponents;
  /// Columns g_i: a basis of A with {ϖ^{exponents[i]} g_i} a basis of B.
  Matrix basis;
};

InvariantFactors invariant_factors(const Lattice& a, const Lattice& b);
/// A basis to which both norms are adapted; verified before returning.
Matrix common_adapted_basis(const AdaptedNorm& v, const AdaptedNorm& w);

/// F (r' x r) maps Λ_v into Λ_w; equivalently v(e) <= w(F e) for all e.
/// Both norms must be integral.
bool pullback_check(const Matrix& f, const AdaptedNorm& v, const AdaptedNorm& w);

/// Norm-like function constant on K^× orbits: v(Σ λ_i b_i) = min{c_i : λ_i ≠ 0}.
class Prevaluation {
 public:
  Prevaluation(Matrix basis, std::vector<Rational> values);

  std::size_t rank() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<Rational>& values() const { return values_; }

  NormValue evaluate(const Vector& e) const;
  /// Canonical basis of {e : v(e) >= a}.
  Matrix subspace_at(const Rational& a) const;
  /// Distinct values in increasing order; the filtration only jumps there.
  std::vector<Rational> breakpoints() const;

 private:
  Matrix basis_;
  Matrix basis_inv_;
  std::vector<Rational> values_;
};

/// True iff the subspace (columns of `subspace`) is spanned by the frame
/// columns it contains.
bool frame_compatible(const Matrix& subspace, const Matrix& frame);

}  // namespace btt
