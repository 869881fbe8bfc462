#include "btt/latnorm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "btt/errors.hpp"

namespace btt {

// ---------------------------------------------------------------- lattices

Matrix canonical_module(const Field& field, const Matrix& gens) {
  Matrix m = gens;
  const std::size_t r = m.rows();
  const std::size_t k = m.cols();
  std::size_t pc = 0;
  for (std::size_t i = 0; i < r && pc < k; ++i) {
    // Pivot: the column with the smallest valuation in this row.
    std::size_t best = k;
    Val best_val;
    for (std::size_t j = pc; j < k; ++j) {
      Val v = field.val(m(i, j));
      if (!v.is_infinite() && (best == k || v < best_val)) {
        best = j;
        best_val = v;
      }
    }
    if (best == k) continue;
    m.swap_columns(pc, best);
    const long a = best_val.value();
    const Scalar pivot = field.uniformizer_pow(a);
    m.scale_column(pc, pivot / m(i, pc));
    for (std::size_t j = pc + 1; j < k; ++j) {
      if (!m(i, j).is_zero()) m.axpy_column(j, m(i, j) / pivot, pc);
    }
    for (std::size_t l = 0; l < pc; ++l) {
      Scalar rep = field.reduce_mod(m(i, l), a);
      if (!(rep == m(i, l))) m.axpy_column(l, (m(i, l) - rep) / pivot, pc);
    }
    ++pc;
  }
  std::vector<std::size_t> keep(pc);
  std::iota(keep.begin(), keep.end(), 0);
  return m.select_columns(keep);
}

Lattice Lattice::from_generators(const Field& field, const Matrix& gens) {
  if (gens.rows() == 0) throw Error(Errc::RankDeficient, "lattice of rank 0");
  Matrix c = canonical_module(field, gens);
  if (c.cols() != gens.rows())
    throw Error(Errc::RankDeficient, "generators span a subspace of dimension " + std::to_string(c.cols()) +
                                         " < " + std::to_string(gens.rows()));
  return Lattice(field, std::move(c));
}

Lattice Lattice::standard(const Field& field, std::size_t r) { return Lattice(field, Matrix::identity(r)); }

Lattice Lattice::diagonal(const Field& field, const Matrix& basis, const std::vector<long>& exps) {
  if (exps.size() != basis.cols()) throw Error(Errc::DimensionMismatch, "one exponent per basis column");
  Matrix g = basis;
  for (std::size_t j = 0; j < exps.size(); ++j) g.scale_column(j, field.uniformizer_pow(exps[j]));
  return from_generators(field, g);
}

std::vector<long> Lattice::pivot_exponents() const {
  std::vector<long> out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = field_.val(gens_(i, i)).value();
  return out;
}

Lattice Lattice::scaled(const Scalar& c) const {
  if (c.is_zero()) throw Error(Errc::RankDeficient, "scaling a lattice by zero");
  return from_generators(field_, gens_.scaled(c));
}

bool Lattice::contains_vector(const Vector& e) const {
  if (e.size() != rank()) throw Error(Errc::DimensionMismatch, "vector length differs from lattice rank");
  // Forward substitution against the lower-triangular canonical form.
  Vector x(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    Scalar acc = e[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (!gens_(i, j).is_zero() && !x[j].is_zero()) acc -= gens_(i, j) * x[j];
    }
    x[i] = acc / gens_(i, i);
    Val v = field_.val(x[i]);
    if (!v.is_infinite() && v.value() < 0) return false;
  }
  return true;
}

Lattice hnf(const Field& field, const Matrix& gens) { return Lattice::from_generators(field, gens); }

namespace {

void require_compatible(const Lattice& a, const Lattice& b) {
  if (!(a.field() == b.field())) throw Error(Errc::BackendMismatch, "lattices over different fields");
  if (a.rank() != b.rank()) throw Error(Errc::DimensionMismatch, "lattices of different rank");
}

}  // namespace

bool lattice_contains(const Lattice& a, const Lattice& b) {
  require_compatible(a, b);
  for (std::size_t j = 0; j < b.rank(); ++j) {
    if (!a.contains_vector(b.generators().column(j))) return false;
  }
  return true;
}

bool lattice_equal(const Lattice& a, const Lattice& b) {
  require_compatible(a, b);
  return a == b;
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  require_compatible(a, b);
  return Lattice::from_generators(a.field(), Matrix::hconcat(a.generators(), b.generators()));
}

Lattice dual_lattice(const Lattice& l) {
  return Lattice::from_generators(l.field(), inverse(l.generators()).transpose());
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  require_compatible(a, b);
  return dual_lattice(lattice_sum(dual_lattice(a), dual_lattice(b)));
}

// ------------------------------------------------------------------- norms

AdaptedNorm::AdaptedNorm(Field field, Matrix basis, std::vector<Rational> values)
    : field_(std::move(field)), basis_(std::move(basis)), values_(std::move(values)) {
  if (basis_.rows() != basis_.cols()) throw Error(Errc::DimensionMismatch, "norm basis must be square");
  if (values_.size() != basis_.cols()) throw Error(Errc::DimensionMismatch, "one value per basis column");
  if (basis_.rows() == 0) throw Error(Errc::DimensionMismatch, "norm of rank 0");
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    for (std::size_t j = 0; j < basis_.cols(); ++j) field_.check(basis_(i, j));
  }
  basis_inv_ = inverse(basis_);
  if (!field_.is_padic()) {
    const std::size_t r = basis_.rows();
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<RatFunc> row;
      for (std::size_t j = 0; j < r; ++j) row.push_back(basis_inv_(i, j).as_ratfunc());
      std::vector<Polynomial> nums;
      long den_order = 0;
      for (std::size_t j = 0; j < r; ++j) {
        Polynomial p = row[j].num();
        for (std::size_t k = 0; k < r; ++k) {
          if (k != j) p = p * row[k].den();
        }
        nums.push_back(std::move(p));
        den_order += row[j].den().order_at_zero();
      }
      inv_num_.push_back(std::move(nums));
      inv_den_order_.push_back(den_order);
    }
  }
}

std::vector<Val> AdaptedNorm::coordinate_valuations(const Vector& e) const {
  if (e.size() != rank()) throw Error(Errc::DimensionMismatch, "vector length differs from norm rank");
  std::vector<Val> out;
  if (field_.is_padic()) {
    for (const auto& c : coordinates(e)) out.push_back(field_.val(c));
    return out;
  }
  // e_j = n_j / d_j; clear all denominators at once.
  const std::size_t r = rank();
  std::vector<RatFunc> f;
  long den_order = 0;
  for (const auto& x : e) {
    field_.check(x);
    f.push_back(x.as_ratfunc());
    den_order += f.back().den().order_at_zero();
  }
  std::vector<Polynomial> cleared;
  for (std::size_t j = 0; j < r; ++j) {
    Polynomial p = f[j].num();
    for (std::size_t k = 0; k < r && !p.is_zero(); ++k) {
      if (k != j && !f[k].den().is_constant()) p = p * f[k].den();
    }
    cleared.push_back(std::move(p));
  }
  // Only the order of Σ_j P_ij E_j is needed: build its coefficients from
  // degree 0 upwards and stop at the first nonzero one.
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t top = 0;
    for (std::size_t j = 0; j < r; ++j) {
      const auto& a = inv_num_[i][j].coeffs();
      const auto& b = cleared[j].coeffs();
      if (!a.empty() && !b.empty()) top = std::max(top, a.size() + b.size() - 1);
    }
    Val order = Val::infinity();
    Rational c, t;
    for (std::size_t k = 0; k < top && order.is_infinite(); ++k) {
      c = 0;
      for (std::size_t j = 0; j < r; ++j) {
        const auto& a = inv_num_[i][j].coeffs();
        const auto& b = cleared[j].coeffs();
        const std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
        for (std::size_t x = lo; x < a.size() && x <= k; ++x) {
          if (a[x] == 0 || b[k - x] == 0) continue;
          mpq_mul(t.get_mpq_t(), a[x].get_mpq_t(), b[k - x].get_mpq_t());
          c += t;
        }
      }
      if (c != 0) order = Val(static_cast<long>(k) - inv_den_order_[i] - den_order);
    }
    out.push_back(order);
  }
  return out;
}

AdaptedNorm AdaptedNorm::with_values(std::vector<Rational> values) const {
  if (values.size() != values_.size()) throw Error(Errc::DimensionMismatch, "one value per basis column");
  AdaptedNorm out = *this;
  out.values_ = std::move(values);
  return out;
}

bool AdaptedNorm::is_integral() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

NormValue norm_eval(const AdaptedNorm& v, const Vector& e) {
  if (e.size() != v.rank()) throw Error(Errc::DimensionMismatch, "vector length differs from norm rank");
  std::vector<Val> vals = v.coordinate_valuations(e);
  NormValue best;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i].is_infinite()) continue;
    Rational x = Rational(vals[i].value()) + v.values()[i];
    if (!best || x < *best) best = x;
  }
  return best;
}

Lattice ball(const AdaptedNorm& v, const Rational& t) {
  std::vector<long> exps(v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) exps[i] = to_long(ceil_q(t - v.values()[i]));
  return Lattice::diagonal(v.field(), v.basis(), exps);
}

AdaptedNorm norm_from_lattice(const Lattice& l) {
  return AdaptedNorm(l.field(), l.generators(), std::vector<Rational>(l.rank(), Rational(0)));
}

Lattice lattice_from_norm(const AdaptedNorm& v) {
  if (!v.is_integral()) throw Error(Errc::NonIntegralNorm, "norm has non-integral values");
  return ball(v, Rational(0));
}

namespace {

template <typename F>
AdaptedNorm map_values(const AdaptedNorm& v, F f) {
  std::vector<Rational> vals;
  vals.reserve(v.rank());
  for (const auto& c : v.values()) vals.push_back(f(c));
  return v.with_values(std::move(vals));
}

void require_compatible(const AdaptedNorm& v, const AdaptedNorm& w) {
  if (!(v.field() == w.field())) throw Error(Errc::BackendMismatch, "norms over different fields");
  if (v.rank() != w.rank()) throw Error(Errc::DimensionMismatch, "norms of different rank");
}

}  // namespace

AdaptedNorm floor_norm(const AdaptedNorm& v) {
  return map_values(v, [](const Rational& c) { return Rational(floor_q(c)); });
}

AdaptedNorm ceil_norm(const AdaptedNorm& v) {
  return map_values(v, [](const Rational& c) { return Rational(ceil_q(c)); });
}

AdaptedNorm shift_norm(const AdaptedNorm& v, const Rational& c) {
  return map_values(v, [&](const Rational& x) { return Rational(x + c); });
}

std::vector<Rational> period_thresholds(const std::vector<const AdaptedNorm*>& norms,
                                        const std::vector<Rational>& extra) {
  std::vector<Rational> out;
  for (const auto* n : norms) {
    for (const auto& c : n->values()) out.push_back(frac_q(c));
  }
  for (const auto& c : extra) out.push_back(frac_q(c));
  if (out.empty()) out.emplace_back(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// v <= w everywhere iff w(a_i) >= c_i on an adapted basis (a_i, c_i) of v:
// w(Σ λ_i a_i) >= min(val λ_i + w(a_i)) >= min(val λ_i + c_i) = v(Σ λ_i a_i).
bool norm_leq(const AdaptedNorm& v, const AdaptedNorm& w) {
  require_compatible(v, w);
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (*norm_eval(w, v.basis().column(i)) < v.values()[i]) return false;
  }
  return true;
}

bool norm_equal(const AdaptedNorm& v, const AdaptedNorm& w) { return norm_leq(v, w) && norm_leq(w, v); }

// The norm adapted to B with values v(b_j) is <= v, and the two agree iff
// their volumes Σ values - val det(basis) agree.
bool is_adapted(const AdaptedNorm& v, const Matrix& basis) {
  if (basis.rows() != v.rank() || basis.cols() != v.rank())
    throw Error(Errc::DimensionMismatch, "candidate basis has the wrong shape");
  const Scalar det = determinant(basis);
  if (det.is_zero()) throw Error(Errc::Singular, "candidate basis is not invertible");
  Rational lhs = -Rational(v.field().val(det).value());
  for (std::size_t i = 0; i < v.rank(); ++i) lhs += *norm_eval(v, basis.column(i));
  Rational rhs = -Rational(v.field().val(determinant(v.basis())).value());
  for (const auto& c : v.values()) rhs += c;
  return lhs == rhs;
}

namespace {

struct Reduced {
  Matrix basis;                // columns adapted to both norms
  std::vector<long> exponent;  // val of the surviving entry of row i
};

// Simultaneous reduction of two norms. T expresses the w-basis in the
// v-basis; pivots minimise val(T_ij) + c_i - d_j, which makes every row
// operation a valid change of v-adapted basis and every column operation a
// valid change of w-adapted basis. At the end T is monomial.
Reduced weighted_reduction(const AdaptedNorm& v, const AdaptedNorm& w) {
  const Field& field = v.field();
  const std::size_t r = v.rank();
  Matrix t = inverse(v.basis()) * w.basis();
  Matrix g = v.basis();
  std::vector<bool> row_done(r, false);
  std::vector<bool> col_done(r, false);
  std::vector<long> exponent(r, 0);
  for (std::size_t step = 0; step < r; ++step) {
    std::size_t pi = r;
    std::size_t pj = r;
    Rational best;
    for (std::size_t i = 0; i < r; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (col_done[j] || t(i, j).is_zero()) continue;
        Rational omega = Rational(field.val(t(i, j)).value()) + v.values()[i] - w.values()[j];
        if (pi == r || omega < best) {
          pi = i;
          pj = j;
          best = omega;
        }
      }
    }
    if (pi == r) throw std::logic_error("weighted_reduction: singular change of basis");
    for (std::size_t i = 0; i < r; ++i) {
      if (i == pi || row_done[i] || t(i, pj).is_zero()) continue;
      Scalar alpha = t(i, pj) / t(pi, pj);
      t.axpy_row(i, alpha, pi);
      g.axpy_column(pi, -alpha, i);
    }
    for (std::size_t l = 0; l < r; ++l) {
      if (l == pj || col_done[l] || t(pi, l).is_zero()) continue;
      t.axpy_column(l, t(pi, l) / t(pi, pj), pj);
    }
    row_done[pi] = true;
    col_done[pj] = true;
    exponent[pi] = field.val(t(pi, pj)).value();
  }
  return {std::move(g), std::move(exponent)};
}

}  // namespace

InvariantFactors invariant_factors(const Lattice& a, const Lattice& b) {
  require_compatible(a, b);
  Reduced red = weighted_reduction(norm_from_lattice(a), norm_from_lattice(b));
  std::vector<std::size_t> order(a.rank());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return red.exponent[x] > red.exponent[y]; });
  InvariantFactors out;
  for (auto i : order) out.exponents.push_back(red.exponent[i]);
  out.basis = red.basis.select_columns(order);
  return out;
}

Matrix common_adapted_basis(const AdaptedNorm& v, const AdaptedNorm& w) {
  require_compatible(v, w);
  Reduced red = weighted_reduction(v, w);
  if (!is_adapted(v, red.basis) || !is_adapted(w, red.basis))
    throw std::logic_error("common_adapted_basis: verification failed");
  return red.basis;
}

bool pullback_check(const Matrix& f, const AdaptedNorm& v, const AdaptedNorm& w) {
  if (!(v.field() == w.field())) throw Error(Errc::BackendMismatch, "norms over different fields");
  if (f.cols() != v.rank() || f.rows() != w.rank())
    throw Error(Errc::DimensionMismatch, "map shape does not match the norms");
  Lattice src = lattice_from_norm(v);
  Lattice dst = lattice_from_norm(w);
  for (std::size_t j = 0; j < src.rank(); ++j) {
    if (!dst.contains_vector(f * src.generators().column(j))) return false;
  }
  return true;
}

// ------------------------------------------------------------ prevaluations

Prevaluation::Prevaluation(Matrix basis, std::vector<Rational> values)
    : basis_(std::move(basis)), values_(std::move(values)) {
  if (basis_.rows() != basis_.cols()) throw Error(Errc::DimensionMismatch, "prevaluation basis must be square");
  if (values_.size() != basis_.cols()) throw Error(Errc::DimensionMismatch, "one value per basis column");
  basis_inv_ = inverse(basis_);
}

NormValue Prevaluation::evaluate(const Vector& e) const {
  if (e.size() != rank()) throw Error(Errc::DimensionMismatch, "vector length differs from rank");
  Vector lambda = basis_inv_ * e;
  NormValue best;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!lambda[i].is_zero() && (!best || values_[i] < *best)) best = values_[i];
  }
  return best;
}

Matrix Prevaluation::subspace_at(const Rational& a) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= a) idx.push_back(i);
  }
  return column_space(basis_.select_columns(idx));
}

std::vector<Rational> Prevaluation::breakpoints() const {
  std::vector<Rational> out = values_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool frame_compatible(const Matrix& subspace, const Matrix& frame) {
  std::vector<std::size_t> inside;
  for (std::size_t j = 0; j < frame.cols(); ++j) {
    Matrix col(frame.rows(), 1);
    col.set_column(0, frame.column(j));
    if (span_contains(subspace, col)) inside.push_back(j);
  }
  return rank(frame.select_columns(inside)) == rank(subspace);
}

}  // namespace btt
