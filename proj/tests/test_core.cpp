#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtwist/gauss.hpp"
#include "qtwist/matrix.hpp"
#include "qtwist/poly.hpp"

#include <random>

using namespace qtwist;

TEST_CASE("rationals stay canonical through arithmetic") {
    Rat a = make_rat(6, -4);
    CHECK(a == make_rat(-3, 2));
    CHECK(to_string(a) == "-3/2");
    Rat b = make_rat(1, 3) + make_rat(1, 6);
    CHECK(b == make_rat(1, 2));
    CHECK(b.get_den() == 2);
    CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
}

TEST_CASE("vec3 algebra") {
    Vec3 e1{Rat(1), Rat(0), Rat(0)}, e2{Rat(0), Rat(1), Rat(0)};
    CHECK(cross(e1, e2) == Vec3{Rat(0), Rat(0), Rat(1)});
    CHECK(dot(e1, e2) == Rat(0));
    CHECK(epsilon3(0, 1, 2) == 1);
    CHECK(epsilon3(1, 0, 2) == -1);
    CHECK(epsilon3(0, 0, 2) == 0);
    // triple product identity a x (b x c) = b(a.c) - c(a.b) on samples
    std::mt19937_64 eng(7);
    auto rnd = [&] { return make_rat(static_cast<long>(eng() % 19) - 9, 1 + static_cast<long>(eng() % 5)); };
    for (int t = 0; t < 20; ++t) {
        Vec3 a{rnd(), rnd(), rnd()}, b{rnd(), rnd(), rnd()}, c{rnd(), rnd(), rnd()};
        Vec3 lhs = cross(a, cross(b, c));
        Vec3 rhs = dot(a, c) * b - dot(a, b) * c;
        CHECK(is_zero(lhs - rhs));
    }
}

TEST_CASE("gaussian rationals form a field") {
    GaussRat i = GaussRat::unit_i();
    CHECK(i * i == GaussRat(Rat(-1)));
    GaussRat z(make_rat(3, 2), make_rat(-1, 4));
    CHECK(z / z == GaussRat(Rat(1)));
    CHECK((z * z.conj()).im == Rat(0));
    CHECK_THROWS_AS(z / GaussRat{}, std::domain_error);
}

TEST_CASE("exact elimination: rank, nullspace, inverse") {
    RatMat m(3, 4, Rat(0));
    m(0, 0) = Rat(1);
    m(0, 2) = Rat(2);
    m(1, 1) = Rat(1);
    m(1, 3) = Rat(-1);
    m(2, 0) = Rat(2);
    m(2, 2) = Rat(4);
    CHECK(rank(m) == 2);
    RatMat ker = nullspace(m);
    CHECK(ker.cols() == 2);
    // every kernel column is annihilated
    for (int c = 0; c < ker.cols(); ++c)
        for (int r = 0; r < 3; ++r) {
            Rat acc(0);
            for (int k = 0; k < 4; ++k) acc += m(r, k) * ker(k, c);
            CHECK(is_zero(acc));
        }
    GaussMat g(2, 2);
    g(0, 0) = GaussRat(Rat(1), Rat(1));
    g(0, 1) = GaussRat(Rat(2));
    g(1, 0) = GaussRat(Rat(0), Rat(1));
    g(1, 1) = GaussRat(Rat(1));
    GaussMat gi = inverse(g);
    CHECK((g * gi) == GaussMat::identity(2, GaussRat(Rat(1))));
    CHECK(same_column_span(g, GaussMat::identity(2, GaussRat(Rat(1)))));
}

TEST_CASE("polynomial ring basics") {
    const int nv = 4;
    Poly x = Poly::variable(nv, 0), y = Poly::variable(nv, 1);
    Poly p = x * y + Poly::constant(nv, make_rat(3, 2));
    CHECK(p.degree() == 2);
    CHECK(p.derivative(0) == y);
    CHECK(p.derivative(2).is_zero());
    std::vector<Rat> pt{Rat(2), make_rat(1, 2), Rat(0), Rat(-1)};
    CHECK(p.eval(pt) == make_rat(5, 2));
    // cancellation removes stored terms
    Poly q = p - x * y;
    CHECK(q.term_count() == 1);
    CHECK((p - p).is_zero());
    CHECK_THROWS_AS(p + Poly::variable(3, 0), std::invalid_argument);
}

TEST_CASE("degree-checked product fails loudly") {
    const int nv = 2;
    Poly x = Poly::variable(nv, 0);
    Poly x2 = x * x;
    CHECK_NOTHROW(mul_checked(x2, x, 3));
    CHECK_THROWS_AS(mul_checked(x2, x2, 3), DegreeOverflow);
}
