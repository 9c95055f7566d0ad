#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtwist/model.hpp"

#include <cmath>
#include <random>

using namespace qtwist;

namespace {

std::mt19937_64 eng(42);

Rat rnd() { return make_rat(static_cast<long>(eng() % 19) - 9, 1 + static_cast<long>(eng() % 8)); }

RatMat random_bilinear(int d) {
    RatMat m(d, d, Rat(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = rnd();
    return m;
}

}  // namespace

TEST_CASE("flat model instantiation and admissible relations") {
    ModelContext ctx = build_flat_model(2);
    CHECK(ctx.dim == 8);
    CHECK_NOTHROW(validate_admissible_basis(ctx));
    // J1 J2 - J3 = 0 and J1^2 + Id = 0 explicitly
    CHECK((ctx.J(0) * ctx.J(1)) == ctx.J(2));
    RatMat id = RatMat::identity(8, Rat(1), Rat(0));
    CHECK((ctx.J(0) * ctx.J(0) + id).all_zero());
    // n = 3: 12x12 orthogonal matrices
    ModelContext ctx3 = build_flat_model(3);
    for (int a = 0; a < 3; ++a)
        CHECK(ctx3.J(a).transpose() * ctx3.J(a) ==
              RatMat::identity(12, Rat(1), Rat(0)));
    CHECK_THROWS_AS(build_flat_model(1), std::invalid_argument);
}

TEST_CASE("exterior derivative on coordinates and d^2 = 0") {
    ModelContext ctx = build_flat_model(2);
    const int d = ctx.dim;
    // d(x2 dx1) = -dx1 ^ dx2
    PolyVec a = ctx.zero_vec();
    a[0] = Poly::variable(d, 1);
    PolyMat da = exterior_derivative1(a);
    CHECK(da(0, 1) == Poly::constant(d, Rat(-1)));
    CHECK(da(1, 0) == Poly::constant(d, Rat(1)));
    // d(df) = 0 for f = x1 x3
    Poly f = Poly::variable(d, 0) * Poly::variable(d, 2);
    CHECK(is_zero(exterior_derivative1(exterior_derivative0(f))));
    // d of a constant 1-form vanishes
    PolyVec c = ctx.zero_vec();
    for (int i = 0; i < d; ++i) c[i] = Poly::constant(d, rnd());
    CHECK(is_zero(exterior_derivative1(c)));
    // d(d(alpha)) = 0 for random 1-forms up to the degree bound
    for (int t = 0; t < 10; ++t) {
        PolyVec w = ctx.zero_vec();
        for (int i = 0; i < d; ++i) {
            Poly p(d);
            for (int k = 0; k < 3; ++k) {
                Mono m(d, 0);
                int td = static_cast<int>(eng() % 4);
                for (int e = 0; e < td; ++e) m[eng() % d] += 1;
                p.add_term(m, rnd());
            }
            w[i] = p;
        }
        CHECK(is_zero(exterior_derivative2(exterior_derivative1(w))));
    }
}

TEST_CASE("codifferential examples") {
    ModelContext ctx = build_flat_model(2);
    const int d = ctx.dim;
    PolyVec c = ctx.zero_vec();
    for (int i = 0; i < d; ++i) c[i] = Poly::constant(d, rnd());
    CHECK(codifferential(c).is_zero());
    PolyVec b = ctx.zero_vec();
    b[0] = Poly::variable(d, 0);  // x1 dx1
    CHECK(codifferential(b) == Poly::constant(d, Rat(-1)));
    PolyVec rot = ctx.zero_vec();  // x2 dx1 - x1 dx2: co-closed, not closed
    rot[0] = Poly::variable(d, 1);
    rot[1] = -Poly::variable(d, 0);
    CHECK(codifferential(rot).is_zero());
    CHECK(!is_zero(exterior_derivative1(rot)));
}

TEST_CASE("antidifferentiation decides exactness") {
    ModelContext ctx = build_flat_model(2);
    const int d = ctx.dim;
    Poly f = Poly::variable(d, 0) * Poly::variable(d, 3) +
             Poly::variable(d, 1) * Poly::variable(d, 1);
    Poly g;
    CHECK(antidifferentiate(exterior_derivative0(f), g));
    CHECK(g == f);  // same normalization: no constant term
    PolyVec bad = ctx.zero_vec();
    bad[0] = Poly::variable(d, 1);
    CHECK(!antidifferentiate(bad, g));
}

TEST_CASE("P_h projector and the Q-hermitian predicate") {
    ModelContext ctx = build_flat_model(2);
    CHECK(is_q_hermitian(ctx, ctx.g));
    CHECK(p_h_project(ctx, ctx.g) == ctx.g);
    RatMat omega1 = ctx.J(0).transpose();  // g(J1 ., .)
    CHECK(!is_q_hermitian(ctx, omega1));
    // omega1(J2 X, J2 Y) = -omega1(X, Y)
    CHECK(ctx.J(1).transpose() * omega1 * ctx.J(1) == scale(Rat(-1), omega1));
    for (int t = 0; t < 12; ++t) {
        RatMat eta = random_bilinear(ctx.dim);
        RatMat ph = p_h_project(ctx, eta);
        CHECK(p_h_project(ctx, ph) == ph);
        CHECK(is_q_hermitian(ctx, ph));
        if (is_q_hermitian(ctx, eta)) CHECK(ph == eta);
    }
    // P_h preserves symmetry type
    RatMat skew = skew_part(random_bilinear(ctx.dim));
    CHECK(skew_part(p_h_project(ctx, skew)) == p_h_project(ctx, skew));
}

TEST_CASE("exact evaluation tracks double evaluation within 2^-40") {
    ModelContext ctx = build_flat_model(2);
    const int d = ctx.dim;
    for (int t = 0; t < 50; ++t) {
        Poly p(d);
        for (int k = 0; k < 6; ++k) {
            Mono m(d, 0);
            int td = static_cast<int>(eng() % 4);
            for (int e = 0; e < td; ++e) m[eng() % d] += 1;
            p.add_term(m, make_rat(static_cast<long>(eng() % 2048) - 1024,
                                   1 + static_cast<long>(eng() % 64)));
        }
        std::vector<Rat> pt(d);
        std::vector<double> ptd(d);
        for (int i = 0; i < d; ++i) {
            pt[i] = make_rat(static_cast<long>(eng() % 2048) - 1024,
                             1 + static_cast<long>(eng() % 32));
            ptd[i] = to_double(pt[i]);
        }
        double exact = to_double(p.eval(pt));
        double approx = p.eval_double(ptd);
        double rel = std::abs(exact - approx) / std::max(1.0, std::abs(exact));
        CHECK(rel <= std::ldexp(1.0, -40));
    }
}
