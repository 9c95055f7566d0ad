#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtwist/penrose.hpp"

#include <random>

using namespace qtwist;

namespace {

std::mt19937_64 eng(2024);

Rat rnd() { return make_rat(static_cast<long>(eng() % 19) - 9, 1 + static_cast<long>(eng() % 8)); }

QSection rnd_q(const ModelContext& ctx, int degree) {
    QSection a = ctx.zero_q();
    for (int b = 0; b < 3; ++b) {
        Poly p(ctx.dim);
        p.add_term(Mono(ctx.dim, 0), rnd());
        for (int t = 0; t < degree; ++t) {
            Mono m(ctx.dim, 0);
            m[eng() % ctx.dim] = 1;
            p.add_term(m, rnd());
        }
        a[b] = p;
    }
    return a;
}

std::vector<Vec3> units5() {
    return {{Rat(1), Rat(0), Rat(0)},
            {Rat(0), Rat(1), Rat(0)},
            {Rat(0), Rat(0), Rat(1)},
            {make_rat(3, 5), make_rat(4, 5), Rat(0)},
            {make_rat(1, 3), make_rat(2, 3), make_rat(2, 3)}};
}

}  // namespace

TEST_CASE("both Penrose routes agree as polynomial fields") {
    ModelContext ctx = build_flat_model(2, 8);
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    for (int t = 0; t < 5; ++t) {
        PolyVec al = ctx.zero_vec();
        for (int i = 0; i < ctx.dim; ++i) {
            Poly p(ctx.dim);
            p.add_term(Mono(ctx.dim, 0), rnd());
            Mono m(ctx.dim, 0);
            m[eng() % ctx.dim] = 1;
            p.add_term(m, rnd());
            al[i] = p;
        }
        QuatConnection d = make_connection(ctx, al);
        QSection a = rnd_q(ctx, 1);
        TensorField p1 = penrose_operator(d, a, pi_s3);
        TensorField p2 = penrose_via_weight(d, a, b);
        for (size_t k = 0; k < p1.size(); ++k) CHECK(p1[k] == p2[k]);
        CHECK(is_zero(apply_weight(pi_h, p1)));
    }
    // constant A, flat connection: P A = 0
    QSection cst = ctx.zero_q();
    cst[1] = ctx.one();
    CHECK(is_zero(penrose_operator(flat_connection(ctx), cst, pi_s3)));
}

TEST_CASE("second covariant derivative: symmetry in the flat case") {
    ModelContext ctx = build_flat_model(2, 8);
    QuatConnection flat = flat_connection(ctx);
    QSection a = rnd_q(ctx, 2);
    SecondDerivative dd = second_covariant(flat, a);
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j)
            for (int b = 0; b < 3; ++b) {
                CHECK(dd.at(i, j)[b] == a[b].derivative(j).derivative(i));
                CHECK(dd.at(i, j)[b] == dd.at(j, i)[b]);
            }
}

TEST_CASE("antisymmetrized second derivative equals the curvature commutator") {
    ModelContext ctx = build_flat_model(2, 8);
    PolyVec al = ctx.zero_vec();
    al[0] = Poly::variable(ctx.dim, 1);  // x2 dx1
    QuatConnection d = make_connection(ctx, al);
    QSection a = rnd_q(ctx, 1);
    SecondDerivative dd = second_covariant(d, a);
    CurvatureField r = curvature(d);
    PolyMat am = q_matrix(ctx, a);
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = i + 1; j < ctx.dim; ++j) {
            QSection anti = ctx.zero_q();
            for (int b = 0; b < 3; ++b) anti[b] = dd.at(i, j)[b] - dd.at(j, i)[b];
            const PolyMat& rij = r.upper(i, j);
            CHECK(is_zero(q_matrix(ctx, anti) - (rij * am - am * rij)));
        }
}

TEST_CASE("trace of the extended weight operator") {
    ModelContext ctx = build_flat_model(2, 8);
    RatMat b = weight_matrix_expansion(ctx);
    // symmetric-in-slots tensors are annihilated
    SecondDerivative sym;
    sym.dim = ctx.dim;
    sym.comp.assign(static_cast<size_t>(ctx.dim) * ctx.dim, ctx.zero_q());
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = i; j < ctx.dim; ++j) {
            QSection v = rnd_q(ctx, 1);
            sym.comp[static_cast<size_t>(i) * ctx.dim + j] = v;
            sym.comp[static_cast<size_t>(j) * ctx.dim + i] = v;
        }
    CHECK(is_zero(trace_b_tilde(ctx, b, sym)));
    // flat connection: D^2 A symmetric, trace vanishes
    QSection a = rnd_q(ctx, 2);
    CHECK(is_zero(trace_b_tilde(ctx, b, second_covariant(flat_connection(ctx), a))));
    // traced operator equals the curvature double sum, constant and
    // polynomial alpha
    for (int variant = 0; variant < 2; ++variant) {
        PolyVec al = ctx.zero_vec();
        if (variant == 0) {
            al[0] = Poly::constant(ctx.dim, Rat(1));
            al[6] = Poly::constant(ctx.dim, make_rat(-1, 2));
        } else {
            al[0] = Poly::variable(ctx.dim, 1);
            al[1] = -Poly::variable(ctx.dim, 0);
        }
        QuatConnection d = make_connection(ctx, al);
        QSection q = rnd_q(ctx, 1);
        QSection lhs = trace_b_tilde(ctx, b, second_covariant(d, q));
        QSection rhs = trace_b_tilde_curvature_form(d, curvature(d), q);
        for (int bb = 0; bb < 3; ++bb) CHECK(lhs[bb] == rhs[bb]);
    }
}

TEST_CASE("Weitzenbock identities at Scal = 0") {
    ModelContext ctx = build_flat_model(2, 8);
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    // alpha = 0, A constant: everything vanishes
    QSection cst = ctx.zero_q();
    cst[0] = ctx.one();
    WeitzenbockReport rep0 = weitzenbock_checks(flat_connection(ctx), cst, b, pi_s3);
    CHECK(rep0.operator_identity);
    CHECK(rep0.trace_identity);
    CHECK(rep0.eta_trace_identity);
    CHECK(rep0.symmetric_part_vanishes);
    CHECK(rep0.curvature_display_matches);
    // constant alpha != 0, A = J1: trace(eta) = -2 |alpha|^2
    PolyVec ca = ctx.zero_vec();
    ca[0] = Poly::constant(ctx.dim, Rat(1));
    ca[3] = Poly::constant(ctx.dim, make_rat(1, 2));
    WeitzenbockReport repc = weitzenbock_checks(make_connection(ctx, ca), cst, b, pi_s3);
    CHECK(repc.operator_identity);
    CHECK(repc.trace_identity);
    CHECK(repc.eta_trace_identity);
    CHECK(repc.symmetric_part_vanishes);
    CHECK(repc.curvature_display_matches);
    // co-closed, non-closed alpha with a degree-1 section
    PolyVec rot = ctx.zero_vec();
    rot[0] = Poly::variable(ctx.dim, 1);
    rot[1] = -Poly::variable(ctx.dim, 0);
    REQUIRE(codifferential(rot).is_zero());
    WeitzenbockReport repr = weitzenbock_checks(make_connection(ctx, rot), rnd_q(ctx, 1), b,
                                                pi_s3);
    CHECK(repr.operator_identity);
    CHECK(repr.trace_identity);
    CHECK(repr.eta_trace_identity);
    CHECK(repr.symmetric_part_vanishes);
    CHECK(repr.curvature_display_matches);
    // non-co-closed alpha: the eta-trace identity is out of scope and the
    // report leaves it unset
    PolyVec bad = ctx.zero_vec();
    bad[0] = Poly::variable(ctx.dim, 0);
    WeitzenbockReport repb = weitzenbock_checks(make_connection(ctx, bad), cst, b, pi_s3);
    CHECK(repb.operator_identity);
    CHECK(!repb.eta_trace_identity);
}

TEST_CASE("affine kernel construction and the transform biconditional") {
    ModelContext ctx = build_flat_model(2, 8);
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    QuatConnection flat = flat_connection(ctx);
    RatMat ker = penrose_kernel_affine(flat, pi_s3);
    CHECK(ker.cols() == 3 + 4 * ctx.n);  // free constant + pi_h directions
    auto units = units5();
    for (int col = 0; col < ker.cols(); ++col) {
        QSection a = affine_q_section(ctx, ker, col);
        CHECK(is_zero(penrose_operator(flat, a, pi_s3)));
        // every member is holomorphic for the certified set as a field
        for (const Vec3& u : units)
            for (int bx = 0; bx < ctx.dim; ++bx)
                CHECK(is_zero(holomorphicity_residual(flat, a, u, bx)));
    }
    // a section with dA in the +4 eigenspace built by the projector
    // (the construction behind the kernel): spot-check the opposite case
    QSection a = rnd_q(ctx, 1);
    std::vector<Rat> p(ctx.dim, Rat(0));
    for (auto& v : p) v = rnd();
    TransformSample s = penrose_transform_sample(flat, a, pi_s3, units, p);
    CHECK(s.agree);
    // constant alpha: biconditional on a grid of samples
    PolyVec ca = ctx.zero_vec();
    ca[0] = Poly::constant(ctx.dim, Rat(1));
    QuatConnection dc = make_connection(ctx, ca);
    REQUIRE(predicates(dc).is_self_dual);
    QSection aj1 = ctx.zero_q();
    aj1[0] = ctx.one();
    TransformSample s2 = penrose_transform_sample(dc, aj1, pi_s3, units, p);
    CHECK(s2.agree);
    // alpha must be constant for the affine construction
    PolyVec lx = ctx.zero_vec();
    lx[0] = Poly::variable(ctx.dim, 1);
    CHECK_THROWS_AS(penrose_kernel_affine(make_connection(ctx, lx), pi_s3),
                    std::invalid_argument);
}
