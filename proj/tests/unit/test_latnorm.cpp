#include <doctest.h>

#include "btt/errors.hpp"
#include "btt/latnorm.hpp"
#include "support/random.hpp"

using namespace btt;
using btt::testing::Rng;

namespace {

Scalar q(long a, long b = 1) { return Scalar(Rational(a, b)); }
Rational r(long a, long b = 1) { return Rational(a, b); }

Matrix cols(std::initializer_list<std::initializer_list<Scalar>> columns) {
  std::vector<Vector> cs;
  for (auto c : columns) cs.emplace_back(c);
  return Matrix::from_columns(cs, cs.front().size());
}

// Membership oracle: x ∈ O-span of the columns of an invertible M iff the
// coordinates M^{-1}x all have nonnegative valuation.
bool in_span_oracle(const Field& f, const Matrix& m, const Vector& x) {
  for (const auto& c : inverse(m) * x) {
    if (f.val(c) < Val(0)) return false;
  }
  return true;
}

// v_Λ(e) = max{k : ϖ^{-k} e ∈ Λ}, by direct search over k.
long lattice_norm_oracle(const Field& f, const Matrix& m, const Vector& e) {
  const Vector y = inverse(m) * e;
  long best = -100;
  for (long k = -10; k <= 10; ++k) {
    bool inside = true;
    for (const auto& c : y) inside = inside && f.val(c * f.uniformizer_pow(-k)) >= Val(0);
    if (inside) best = k;
  }
  return best;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Parse;
}

const Field F2 = Field::padic(2);

}  // namespace

TEST_SUITE("latnorm") {

TEST_CASE("hnf examples") {
  Lattice a = hnf(F2, cols({{q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}}));
  CHECK(a.generators() == Matrix::identity(2));

  Lattice b = hnf(F2, cols({{q(2), q(0)}, {q(1), q(1)}}));
  CHECK(hnf(F2, b.generators()) == b);

  Lattice c = hnf(F2, cols({{q(4), q(2)}, {q(0), q(1)}}));
  Lattice d = hnf(F2, cols({{q(4), q(0)}, {q(0), q(1)}, {q(4), q(2)}}));
  CHECK(lattice_equal(c, d));
  // Oracle: each generator set lies in the O-span of the other.
  Matrix cm = cols({{q(4), q(2)}, {q(0), q(1)}});
  for (const Vector& g : {Vector{q(4), q(0)}, Vector{q(0), q(1)}, Vector{q(4), q(2)}}) {
    CHECK(in_span_oracle(F2, cm, g));
    CHECK(in_span_oracle(F2, cm, Vector{-g[0], -g[1]}));
  }

  CHECK(code_of([] { hnf(F2, cols({{q(1), q(2)}, {q(2), q(4)}})); }) == Errc::RankDeficient);
  CHECK(code_of([] { hnf(F2, cols({{q(1), q(0)}, {Scalar::indeterminate(), q(1)}})); }) ==
        Errc::BackendMismatch);
}

TEST_CASE("hnf canonical form is unique and spans the same module") {
  Rng rng(42);
  for (const Field& f : {F2, Field::padic(3), Field::laurent()}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
      Matrix m = btt::testing::random_invertible(f, rng, n);
      Lattice l = hnf(f, m);
      // Change generators by a random element of GL_n(O) plus extra O-combinations.
      Matrix u = Matrix::identity(n);
      for (int k = 0; k < 6; ++k) {
        std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        if (i == j) {
          u.scale_column(i, btt::testing::random_unit(f, rng));
        } else {
          u.axpy_column(i, btt::testing::random_scalar(f, rng, 0, 3), j);
        }
      }
      Matrix m2 = m * u;
      Matrix extra = m * btt::testing::random_matrix(f, rng, n, 2, 0, 3);
      CHECK(hnf(f, Matrix::hconcat(m2, extra)) == l);
      // Canonical columns generate the same module as m.
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(in_span_oracle(f, m, l.generators().column(j)));
        CHECK(in_span_oracle(f, l.generators(), m.column(j)));
      }
      // Shape of the canonical form.
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(l.generators()(i, i) == f.uniformizer_pow(f.val(l.generators()(i, i)).value()));
        for (std::size_t j = i + 1; j < n; ++j) CHECK(l.generators()(i, j).is_zero());
      }
    }
  }
}

TEST_CASE("lattice containment, sum, intersection") {
  Lattice std2 = Lattice::standard(F2, 2);
  Lattice l = Lattice::diagonal(F2, Matrix::identity(2), {1, 0});
  CHECK(lattice_contains(std2, l));
  CHECK_FALSE(lattice_contains(l, std2));

  Lattice a = Lattice::diagonal(F2, Matrix::identity(2), {1, 0});
  Lattice b = Lattice::diagonal(F2, Matrix::identity(2), {0, 1});
  CHECK(lattice_sum(a, b) == std2);
  CHECK(lattice_intersect(a, b) == Lattice::diagonal(F2, Matrix::identity(2), {1, 1}));

  CHECK(code_of([&] { lattice_contains(std2, Lattice::standard(F2, 3)); }) == Errc::DimensionMismatch);
}

TEST_CASE("intersection agrees with membership sampling") {
  Matrix am = Matrix::identity(2);
  Matrix bm = cols({{q(1), q(1)}, {q(0), q(1, 2)}});
  Lattice a = hnf(F2, am), b = hnf(F2, bm);
  Lattice c = lattice_intersect(a, b);
  Rng rng(3);
  int inside = 0;
  for (int i = 0; i < 500; ++i) {
    Vector x = btt::testing::random_vector(F2, rng, 2, -2, 3);
    bool expect = in_span_oracle(F2, am, x) && in_span_oracle(F2, bm, x);
    CHECK(c.contains_vector(x) == expect);
    inside += expect ? 1 : 0;
  }
  CHECK(inside > 20);

  for (const Field& f : {Field::padic(3), Field::laurent()}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
      Matrix m1 = btt::testing::random_invertible(f, rng, n);
      Matrix m2 = btt::testing::random_invertible(f, rng, n);
      Lattice i12 = lattice_intersect(hnf(f, m1), hnf(f, m2));
      Lattice s12 = lattice_sum(hnf(f, m1), hnf(f, m2));
      CHECK(lattice_contains(s12, i12));
      for (int k = 0; k < 40; ++k) {
        Vector x = btt::testing::random_vector(f, rng, n, -3, 4);
        CHECK(i12.contains_vector(x) == (in_span_oracle(f, m1, x) && in_span_oracle(f, m2, x)));
        if (in_span_oracle(f, m1, x)) CHECK(s12.contains_vector(x));
      }
    }
  }
}

TEST_CASE("diagonal sum/intersection exponents combine by min/max") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<long> ea(3), eb(3), mn(3), mx(3);
    for (std::size_t i = 0; i < 3; ++i) {
      ea[i] = rng.uniform(-3, 3);
      eb[i] = rng.uniform(-3, 3);
      mn[i] = std::min(ea[i], eb[i]);
      mx[i] = std::max(ea[i], eb[i]);
    }
    Matrix basis = btt::testing::random_invertible(F2, rng, 3);
    Lattice a = Lattice::diagonal(F2, basis, ea), b = Lattice::diagonal(F2, basis, eb);
    CHECK(lattice_sum(a, b) == Lattice::diagonal(F2, basis, mn));
    CHECK(lattice_intersect(a, b) == Lattice::diagonal(F2, basis, mx));
  }
}

TEST_CASE("norm_eval examples") {
  AdaptedNorm v(F2, Matrix::identity(2), {r(0), r(0)});
  CHECK(*norm_eval(v, {q(1), q(1)}) == 0);
  AdaptedNorm w(F2, Matrix::identity(2), {r(1, 2), r(0)});
  CHECK(*norm_eval(w, {q(2), q(0)}) == r(3, 2));
  AdaptedNorm u(F2, cols({{q(1), q(0)}, {q(1), q(1)}}), {r(0), r(0)});
  CHECK(*norm_eval(u, {q(0), q(1)}) == 0);
  CHECK_FALSE(norm_eval(u, {q(0), q(0)}).has_value());
  CHECK(code_of([] { AdaptedNorm(F2, cols({{q(1), q(2)}, {q(2), q(4)}}), {r(0), r(0)}); }) == Errc::Singular);
  CHECK(code_of([] { AdaptedNorm(F2, Matrix::identity(2), {r(0)}); }) == Errc::DimensionMismatch);
}

TEST_CASE("ball examples and periodicity") {
  AdaptedNorm v(F2, Matrix::identity(2), {r(0), r(0)});
  CHECK(ball(v, r(0)) == Lattice::standard(F2, 2));
  AdaptedNorm w(F2, Matrix::identity(2), {r(1, 2), r(0)});
  CHECK(ball(w, r(0)) == Lattice::standard(F2, 2));
  CHECK(ball(w, r(3, 4)) == Lattice::standard(F2, 2).scaled(q(2)));

  Rng rng(99);
  for (const Field& f : {F2, Field::laurent()}) {
    for (int trial = 0; trial < 40; ++trial) {
      AdaptedNorm n = btt::testing::random_norm(f, rng, 3, 4);
      Rational t = btt::testing::random_rational(rng, 12, 6);
      CHECK(ball(n, t + 1) == ball(n, t).scaled(f.uniformizer()));
    }
  }
}

TEST_CASE("lattice and norm round trips") {
  Lattice std2 = Lattice::standard(F2, 2);
  AdaptedNorm n = norm_from_lattice(std2);
  CHECK(n.basis() == Matrix::identity(2));
  CHECK(n.values() == std::vector<Rational>{r(0), r(0)});

  Matrix dm = Matrix::diagonal({q(2), q(1)});
  Lattice l = hnf(F2, dm);
  AdaptedNorm nl = norm_from_lattice(l);
  Vector e1{q(1), q(0)};
  CHECK(*norm_eval(nl, e1) == -1);
  CHECK(lattice_norm_oracle(F2, dm, e1) == -1);

  CHECK(code_of([] { lattice_from_norm(AdaptedNorm(F2, Matrix::identity(1), {r(1, 2)})); }) ==
        Errc::NonIntegralNorm);

  Rng rng(1);
  for (const Field& f : {F2, Field::padic(3), Field::laurent()}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t k = static_cast<std::size_t>(rng.uniform(1, 4));
      Matrix m = btt::testing::random_invertible(f, rng, k);
      Lattice lat = hnf(f, m);
      CHECK(lattice_from_norm(norm_from_lattice(lat)) == lat);
      // norm_from_lattice matches max{k : ϖ^{-k} e ∈ Λ} pointwise.
      for (int s = 0; s < 5; ++s) {
        Vector e = btt::testing::random_vector(f, rng, k, -2, 3);
        CHECK(*norm_eval(norm_from_lattice(lat), e) == lattice_norm_oracle(f, m, e));
      }
      AdaptedNorm v = btt::testing::random_norm(f, rng, k, 1);
      CHECK(norm_equal(norm_from_lattice(lattice_from_norm(v)), v));
    }
  }
}

TEST_CASE("floor and ceiling") {
  AdaptedNorm v(F2, Matrix::identity(2), {r(1, 2), r(0)});
  CHECK(ceil_norm(v).values() == std::vector<Rational>{r(1), r(0)});
  CHECK(floor_norm(v).values() == std::vector<Rational>{r(0), r(0)});
  AdaptedNorm w(F2, Matrix::identity(2), {r(3), r(-2)});
  CHECK(ceil_norm(w).values() == w.values());
  CHECK(floor_norm(w).values() == w.values());
  AdaptedNorm u(F2, Matrix::identity(2), {r(-1, 3), r(5, 2)});
  CHECK(ceil_norm(u).values() == std::vector<Rational>{r(0), r(3)});

  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    AdaptedNorm n = btt::testing::random_norm(F2, rng, 3, 3);
    CHECK(norm_leq(floor_norm(n), n));
    CHECK(norm_leq(n, ceil_norm(n)));
    CHECK(floor_norm(n).is_integral());
    CHECK(norm_equal(ceil_norm(floor_norm(n)), floor_norm(n)));
  }
}

TEST_CASE("norm order and equality examples") {
  AdaptedNorm v(F2, Matrix::identity(2), {r(0), r(0)});
  AdaptedNorm w(F2, Matrix::identity(2), {r(1), r(1)});
  CHECK(norm_leq(v, w));
  AdaptedNorm a = norm_from_lattice(Lattice::standard(F2, 2));
  AdaptedNorm b = norm_from_lattice(Lattice::standard(F2, 2).scaled(q(2)));
  CHECK_FALSE(norm_leq(a, b));
  CHECK(norm_leq(b, a));
  CHECK(norm_equal(v, v));
  AdaptedNorm v2(F2, cols({{q(1), q(0)}, {q(2), q(1)}}), {r(0), r(0)});
  CHECK(norm_equal(v, v2));
  AdaptedNorm v3(F2, Matrix::identity(2), {r(0), r(1)});
  CHECK_FALSE(norm_equal(v, v3));
  CHECK(code_of([&] { norm_leq(v, AdaptedNorm(F2, Matrix::identity(3), {r(0), r(0), r(0)})); }) ==
        Errc::DimensionMismatch);
}

TEST_CASE("norm_leq agrees with pointwise sampling") {
  Rng rng(300);
  int true_count = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Field& f = trial % 3 == 2 ? Field::laurent() : F2;
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
    AdaptedNorm v = btt::testing::random_norm(f, rng, k, 2);
    // Bias towards comparable pairs: w is v shifted up, in another basis.
    AdaptedNorm w = rng.chance(0.5) ? btt::testing::random_norm(f, rng, k, 2)
                                    : shift_norm(v, btt::testing::random_rational(rng, 2, 2));
    bool leq = norm_leq(v, w);
    true_count += leq ? 1 : 0;
    std::vector<Vector> samples = btt::testing::structured_vectors(Matrix::hconcat(v.basis(), w.basis()));
    for (const auto& g : btt::testing::structured_vectors(common_adapted_basis(v, w))) samples.push_back(g);
    for (int s = 0; s < 60; ++s) samples.push_back(btt::testing::random_vector(f, rng, k));
    bool witness = false;
    for (const auto& e : samples) {
      if (*norm_eval(v, e) > *norm_eval(w, e)) witness = true;
    }
    CHECK(leq == !witness);
  }
  CHECK(true_count > 10);
}

TEST_CASE("norm axioms hold on random norms") {
  Rng rng(31);
  for (const Field& f : {F2, Field::laurent()}) {
    for (int trial = 0; trial < 30; ++trial) {
      AdaptedNorm v = btt::testing::random_norm(f, rng, 3, 3);
      for (int s = 0; s < 10; ++s) {
        Vector e = btt::testing::random_vector(f, rng, 3);
        Vector e2 = btt::testing::random_vector(f, rng, 3);
        Scalar lam = btt::testing::random_scalar(f, rng, -3, 3, 0.0);
        Vector le = e, sum = e;
        for (std::size_t i = 0; i < 3; ++i) {
          le[i] = lam * e[i];
          sum[i] = e[i] + e2[i];
        }
        CHECK(*norm_eval(v, le) == Rational(f.val(lam).value()) + *norm_eval(v, e));
        auto vs = norm_eval(v, sum);
        if (vs) CHECK(*vs >= std::min(*norm_eval(v, e), *norm_eval(v, e2)));
      }
    }
  }
}

TEST_CASE("is_adapted examples") {
  AdaptedNorm std_norm = norm_from_lattice(Lattice::standard(F2, 2));
  for (long delta = 0; delta <= 4; ++delta) {
    Matrix b = cols({{q(1), q(0)}, {F2.uniformizer_pow(delta), q(1)}});
    CHECK(is_adapted(std_norm, b));
  }
  Matrix b2 = cols({{q(1), q(1)}, {q(0), q(1)}});
  for (long k = 0; k <= 5; ++k) {
    AdaptedNorm v = norm_from_lattice(hnf(F2, Matrix::diagonal({q(1), F2.uniformizer_pow(-k)})));
    CHECK(is_adapted(v, b2));
  }
  AdaptedNorm v = norm_from_lattice(hnf(F2, Matrix::diagonal({q(1), q(2)})));
  CHECK_FALSE(is_adapted(v, b2));
  // Ball-equality oracle at t = 0 for the last case.
  std::vector<long> exps(2);
  for (std::size_t i = 0; i < 2; ++i) exps[i] = to_long(ceil_q(-*norm_eval(v, b2.column(i))));
  CHECK_FALSE(ball(v, r(0)) == Lattice::diagonal(F2, b2, exps));

  CHECK(code_of([&] { is_adapted(std_norm, cols({{q(1), q(1)}, {q(1), q(1)}})); }) == Errc::Singular);
}

TEST_CASE("is_adapted is frame invariant") {
  Rng rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    AdaptedNorm v = btt::testing::random_norm(F2, rng, 3, 3);
    Matrix b = rng.chance(0.5) ? v.basis() : btt::testing::random_invertible(F2, rng, 3);
    bool base = is_adapted(v, b);
    CHECK(is_adapted(v, v.basis()));
    CHECK(is_adapted(shift_norm(v, btt::testing::random_rational(rng, 5, 3)), b) == base);
    Matrix scaled = b;
    for (std::size_t j = 0; j < 3; ++j) scaled.scale_column(j, btt::testing::random_scalar(F2, rng, -3, 3, 0.0));
    CHECK(is_adapted(v, scaled) == base);
  }
}

TEST_CASE("invariant factors") {
  Lattice std2 = Lattice::standard(F2, 2);
  InvariantFactors a = invariant_factors(std2, hnf(F2, Matrix::diagonal({q(1), q(8)})));
  CHECK(a.exponents == std::vector<long>{3, 0});
  Matrix bm = cols({{q(1), q(1, 4)}, {q(0), q(1)}});
  InvariantFactors b = invariant_factors(std2, hnf(F2, bm));
  CHECK(b.exponents == std::vector<long>{2, -2});
  // Smith oracle for 2x2: smallest exponent = min entry valuation,
  // sum of exponents = valuation of the determinant.
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const Field& f = trial % 2 ? F2 : Field::laurent();
    Matrix am = btt::testing::random_invertible(f, rng, 2);
    Matrix cm = btt::testing::random_invertible(f, rng, 2);
    Lattice la = hnf(f, am), lc = hnf(f, cm);
    InvariantFactors inv = invariant_factors(la, lc);
    Matrix t = inverse(am) * cm;
    Val mn;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) mn = min(mn, f.val(t(i, j)));
    long det_val = f.val(t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0)).value();
    CHECK(inv.exponents[1] == mn.value());
    CHECK(inv.exponents[0] == det_val - mn.value());
    // The returned basis realises both lattices.
    CHECK(hnf(f, inv.basis) == la);
    CHECK(Lattice::diagonal(f, inv.basis, inv.exponents) == lc);
  }
}

TEST_CASE("common adapted basis self-verification") {
  Rng rng(200);
  for (int trial = 0; trial < 60; ++trial) {
    const Field& f = trial % 4 == 3 ? Field::laurent() : F2;
    AdaptedNorm v = btt::testing::random_norm(f, rng, 3, trial % 2 ? 1 : 4);
    AdaptedNorm w = btt::testing::random_norm(f, rng, 3, trial % 2 ? 1 : 3);
    Matrix g = common_adapted_basis(v, w);
    CHECK(is_adapted(v, g));
    CHECK(is_adapted(w, g));
  }
}

TEST_CASE("pullback examples and sampling") {
  AdaptedNorm s = norm_from_lattice(Lattice::standard(F2, 2));
  CHECK(pullback_check(Matrix::identity(2), s, s));
  CHECK_FALSE(pullback_check(Matrix::diagonal({q(1, 2), q(1)}), s, s));
  CHECK(code_of([&] { pullback_check(Matrix::identity(3), s, s); }) == Errc::DimensionMismatch);

  Rng rng(17);
  int passes = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
    std::size_t k2 = static_cast<std::size_t>(rng.uniform(1, 3));
    AdaptedNorm v = btt::testing::random_norm(F2, rng, k);
    AdaptedNorm w = btt::testing::random_norm(F2, rng, k2);
    Matrix fm = btt::testing::random_matrix(F2, rng, k2, k, 0, 3, 0.3);
    bool ok = pullback_check(fm, v, w);
    passes += ok ? 1 : 0;
    // Witness candidates: O-generators ϖ^{-c_i} b_i of Λ_v and random vectors.
    std::vector<Vector> samples;
    for (std::size_t i = 0; i < k; ++i) {
      Vector g = v.basis().column(i);
      for (auto& x : g) x = x * F2.uniformizer_pow(-to_long(v.values()[i].get_num()));
      samples.push_back(g);
    }
    for (int s2 = 0; s2 < 100; ++s2) samples.push_back(btt::testing::random_vector(F2, rng, k));
    bool violated = false;
    for (const auto& e : samples) {
      auto fe = norm_eval(w, fm * e);
      if (fe && *fe < *norm_eval(v, e)) violated = true;
    }
    CHECK(ok == !violated);
  }
  CHECK(passes > 3);
}

TEST_CASE("prevaluation flags") {
  Prevaluation p(cols({{q(1), q(0)}, {q(1), q(1)}}), {r(0), r(2)});
  CHECK(*p.evaluate({q(5), q(5)}) == 2);
  CHECK(*p.evaluate({q(0), q(5)}) == 0);
  CHECK(*p.evaluate({q(1), q(0)}) == 0);
  CHECK(*p.evaluate({q(4), q(0)}) == 0);  // v(λe) = v(e)
  CHECK_FALSE(p.evaluate({q(0), q(0)}).has_value());
  CHECK(p.subspace_at(r(1)).cols() == 1);
  CHECK(p.subspace_at(r(-3)).cols() == 2);
  CHECK(p.subspace_at(r(3)).cols() == 0);
  CHECK(p.breakpoints() == std::vector<Rational>{r(0), r(2)});
  CHECK(frame_compatible(p.subspace_at(r(1)), cols({{q(1), q(0)}, {q(1), q(1)}})));
  CHECK_FALSE(frame_compatible(p.subspace_at(r(1)), Matrix::identity(2)));
}

}  // TEST_SUITE
