#include "checks_common.hpp"

#include "qtwist/ehrep.hpp"

namespace qtwist::checks {

namespace {

const GaussRat kOne{Rat(1)};

HVec unit_h(Rng& rng) {
    // rational points of the unit sphere in C^2 from two Pythagorean pairs:
    // h = (a + bi, c + di)/r with a^2 + b^2 + c^2 + d^2 = r^2.
    static const std::array<std::array<long, 5>, 4> table{{{1, 0, 0, 0, 1},
                                                           {0, 1, 0, 0, 1},
                                                           {1, 2, 2, 0, 3},
                                                           {2, 3, 6, 0, 7}}};
    auto& q = table[static_cast<size_t>(rng.pick(0, 3))];
    return {GaussRat(make_rat(q[0], q[4]), make_rat(q[1], q[4])),
            GaussRat(make_rat(q[2], q[4]), make_rat(q[3], q[4]))};
}

void h_space(CheckContext& c) {
    for (int t = 0; t < 6; ++t) {
        HVec h = unit_h(c.rng);
        HVec ht = q_conj(h);
        c.require(herm_h(h, h) == kOne, "<h, h> = 1");
        c.require(herm_h(ht, ht) == kOne, "<qh, qh> = 1");
        c.require(is_zero(herm_h(h, ht)), "<h, qh> = 0");
        c.require(omega_h(h, ht) == kOne, "omega(h, qh) = 1");
        HVec qq = q_conj(ht);
        c.require(qq[0] == -h[0] && qq[1] == -h[1], "q^2 = -Id");
    }
}

void f_map_check(CheckContext& c) {
    // F(h (x) hh) = 0; F(h (x) (h ht + ht h)) = h; F(h (x) ht ht) = ht
    HS2H t{};
    t[0] = kOne;  // h (x) s1
    c.require(f_map(t)[0] == GaussRat{} && f_map(t)[1] == GaussRat{}, "F(h s1) = 0");
    HS2H t2{};
    t2[1] = kOne;
    c.require(f_map(t2)[0] == kOne && is_zero(f_map(t2)[1]), "F(h s2) = h");
    HS2H zero{};
    c.require(is_zero(f_map(zero)[0]) && is_zero(f_map(zero)[1]), "F(0) = 0");
    c.require(rank(f_matrix_cube()) == 2, "rank of F on H (x) H (x) H is 2");
    c.require(rank(f_matrix()) == 2, "rank of F restricted to H (x) S^2H is 2");
    c.require(nullspace(f_matrix()).cols() == 4, "dim ker F = dim S^3 H = 4");
}

void sp1_basis(CheckContext& c) {
    GaussMat id2 = GaussMat::identity(2, kOne);
    for (int t = 0; t < 4; ++t) {
        HVec h = unit_h(c.rng);
        auto js = sp1_basis_from(h);
        for (int a = 0; a < 3; ++a)
            c.require((js[static_cast<size_t>(a)] * js[static_cast<size_t>(a)] + id2).all_zero(),
                      "j_a^2 = -Id", Json{{"a", a}});
        c.require((js[0] * js[1] - js[2]).all_zero(), "j1 j2 = j3");
        c.require((js[1] * js[0] + js[2]).all_zero(), "j2 j1 = -j3");
    }
    // h = (1, 0): j1 = diag(i, -i)
    auto js = sp1_basis_from(HVec{kOne, GaussRat{}});
    c.require(js[0](0, 0) == GaussRat::unit_i() && js[0](1, 1) == -GaussRat::unit_i() &&
                  is_zero(js[0](0, 1)) && is_zero(js[0](1, 0)),
              "j1 = diag(i, -i) in the (h, qh) basis");
    bool threw = false;
    try {
        sp1_basis_from(HVec{kOne, kOne});
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    c.require(threw, "non-unit spinor is rejected");
}

void weight_spectrum(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    RatMat b = weight_matrix_commutator(ctx);
    const int m = b.rows();
    RatMat id = RatMat::identity(m, Rat(1), Rat(0));
    c.require(((b + scale(Rat(2), id)) * (b - scale(Rat(4), id))).all_zero(),
              "(B + 2 Id)(B - 4 Id) = 0");
    c.require(is_zero(b.trace()), "trace(B) = 0");
    c.require(rank(b - scale(Rat(4), id)) == 8 * ctx.n, "rank(B - 4 Id) = 8n");
    c.require(rank(b + scale(Rat(2), id)) == 4 * ctx.n, "rank(B + 2 Id) = 4n");
}

void weight_routes(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    c.require(weight_matrix_commutator(ctx) == weight_matrix_expansion(ctx),
              "commutator definition equals the three-term expansion");
    // B(alpha (x) J1)(X) = -2 alpha(J3 X) J2 + 2 alpha(J2 X) J3 on samples
    RatMat b = weight_matrix_expansion(ctx);
    for (int t = 0; t < 4; ++t) {
        std::vector<Rat> alpha(static_cast<size_t>(ctx.dim)), x(static_cast<size_t>(ctx.dim));
        for (auto& v : alpha) v = c.rng.rat();
        for (auto& v : x) v = c.rng.rat();
        // lhs via matrix: coordinates of B(alpha (x) J1) evaluated at x
        Vec3 lhs = zero3();
        for (int i = 0; i < ctx.dim; ++i)
            for (int bb = 0; bb < 3; ++bb)
                for (int j = 0; j < ctx.dim; ++j)
                    lhs[static_cast<size_t>(bb)] += alpha[static_cast<size_t>(i)] *
                                                    b(j * 3 + bb, i * 3 + 0) *
                                                    x[static_cast<size_t>(j)];
        auto pair_j = [&](int a) {
            Rat acc(0);
            for (int p = 0; p < ctx.dim; ++p)
                for (int q = 0; q < ctx.dim; ++q)
                    if (!is_zero(ctx.J(a)(p, q)))
                        acc += alpha[static_cast<size_t>(p)] * ctx.J(a)(p, q) *
                               x[static_cast<size_t>(q)];
            return acc;
        };
        Vec3 rhs{Rat(0), Rat(-2) * pair_j(2), Rat(2) * pair_j(1)};
        c.require(is_zero(lhs - rhs), "B(alpha (x) J1)(X) = -2 alpha(J3 X) J2 + 2 alpha(J2 X) J3");
    }
}

void projectors_check(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    const int m = b.rows();
    RatMat id = RatMat::identity(m, Rat(1), Rat(0));
    c.require((pi_s3 + pi_h) == id, "pi_s3 + pi_h = Id");
    c.require((pi_s3 * pi_s3) == pi_s3, "pi_s3 idempotent");
    c.require((pi_h * pi_h) == pi_h, "pi_h idempotent");
    c.require((pi_s3 * pi_h).all_zero(), "pi_s3 pi_h = 0");
    // abstract generators: gamma1 is a -2 eigenvector, the embedded tensor
    // a +4 eigenvector (checked through the bridge pullback).
    Bridge br = make_bridge(ctx);
    GaussMat babs = abstract_weight(ctx.n);
    EHTensor g1(ctx.n);
    g1.at(0, 0, 1) = kOne;  // e* (x) h (x) s2
    g1.at(0, 1, 0) = kOne;  // e* (x) ht (x) s1
    GaussMat coords(12 * ctx.n, 1);
    for (int i = 0; i < 12 * ctx.n; ++i) coords(i, 0) = g1.c[static_cast<size_t>(i)];
    GaussMat image = babs * coords;
    bool eig = true;
    for (int i = 0; i < 12 * ctx.n; ++i)
        if (image(i, 0) != GaussRat(Rat(-2)) * coords(i, 0)) eig = false;
    c.require(eig, "B(gamma1) = -2 gamma1 for the S^3 generator");
    EHTensor g4 = embed_eh(ctx.n, 0, HVec{kOne, GaussRat{}});
    GaussMat coords4(12 * ctx.n, 1);
    for (int i = 0; i < 12 * ctx.n; ++i) coords4(i, 0) = g4.c[static_cast<size_t>(i)];
    GaussMat image4 = babs * coords4;
    bool eig4 = true;
    for (int i = 0; i < 12 * ctx.n; ++i)
        if (image4(i, 0) != GaussRat(Rat(4)) * coords4(i, 0)) eig4 = false;
    c.require(eig4, "B(embedded tensor) = 4 (embedded tensor)");
}

void embedding(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    GaussMat p6 = s3_fiber_projector();
    auto units = certified_units();
    for (int t = 0; t < 4; ++t) {
        HVec h = unit_h(c.rng);
        int k = static_cast<int>(c.rng.pick(0, 2 * ctx.n - 1));
        EHTensor gamma = embed_eh(ctx.n, k, h);
        c.require(!gamma.is_zero(), "embedding of a nonzero decomposable is nonzero");
        for (const Vec3& u : units)
            c.require(t_j(u, gamma).is_zero(), "T_j(embedded tensor) = 0",
                      Json{{"u", json_vec3(u)}});
        // pi_{S^3}(gamma) = 0 fiberwise
        bool in_h = true;
        for (int kk = 0; kk < 2 * ctx.n; ++kk) {
            std::array<GaussRat, 6> fiber{};
            for (int bb = 0; bb < 2; ++bb)
                for (int ss = 0; ss < 3; ++ss)
                    fiber[static_cast<size_t>(3 * bb + ss)] = gamma.at(kk, bb, ss);
            for (int rr = 0; rr < 6; ++rr) {
                GaussRat acc{};
                for (int cc = 0; cc < 6; ++cc)
                    acc += p6(rr, cc) * fiber[static_cast<size_t>(cc)];
                if (!is_zero(acc)) in_h = false;
            }
        }
        c.require(in_h, "embedded tensor lies in the H-isotypic component");
    }
    // S^3 generator gives a nonzero witness under T_{j1}
    EHTensor g3(ctx.n);
    g3.at(0, 0, 0) = kOne;
    c.require(!t_j(units[0], g3).is_zero(), "T_{j1}(e* h (x) hh) is nonzero");
    c.require(t_j(units[0], EHTensor(ctx.n)).is_zero(), "T_j(0) = 0");
}

void bridge_check(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    Bridge br = make_bridge(ctx);
    for (int a = 0; a < 3; ++a) {
        c.require(bridge_form_residual(ctx, br, a).all_zero(),
                  "bridge intertwines the form-factor action with j_a", Json{{"a", a}});
        c.require(bridge_q_residual(ctx, br, a).all_zero(),
                  "bridge intertwines the Q-factor action with ad(j_a)", Json{{"a", a}});
    }
    RatMat b = weight_matrix_expansion(ctx);
    GaussMat conj = br.to_eh * complexify(b) * br.from_eh;
    c.require((conj - abstract_weight(ctx.n)).all_zero(),
              "bridge conjugates B into 4 pi_H - 2 pi_S3");
    // eigenspace correspondences
    GaussMat eig_m2 = bridged_eigenspace(ctx, br, b, -2);
    GaussMat f = f_matrix();
    GaussMat idf(4 * ctx.n, 12 * ctx.n);
    for (int k = 0; k < 2 * ctx.n; ++k)
        for (int r = 0; r < 2; ++r)
            for (int c6 = 0; c6 < 6; ++c6) idf(2 * k + r, 6 * k + c6) = f(r, c6);
    c.require(same_column_span(eig_m2, nullspace(idf)),
              "bridge(eigenspace(B, -2)) = ker(Id (x) F)");
    GaussMat eig_p4 = bridged_eigenspace(ctx, br, b, 4);
    // span of embedded tensors: e*_k (x) h and e*_k (x) ht for all k
    GaussMat span_emb(12 * ctx.n, 4 * ctx.n);
    int col = 0;
    std::array<HVec, 2> hs{HVec{kOne, GaussRat{}}, HVec{GaussRat{}, kOne}};
    for (int k = 0; k < 2 * ctx.n; ++k)
        for (const HVec& h : hs) {
            EHTensor g = embed_eh(ctx.n, k, h);
            for (int i = 0; i < 12 * ctx.n; ++i) span_emb(i, col) = g.c[static_cast<size_t>(i)];
            ++col;
        }
    c.require(same_column_span(eig_p4, span_emb),
              "bridge(eigenspace(B, +4)) = span of embedded tensors");
}

void kernel_intersection_check(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    Bridge br = make_bridge(ctx);
    RatMat b = weight_matrix_expansion(ctx);
    auto units = certified_units();
    GaussMat inter = kernel_intersection(ctx.n, units);
    c.require(inter.cols() == 4 * ctx.n, "intersection has complex dimension 4n",
              Json{{"dim", inter.cols()}});
    GaussMat eig_p4 = bridged_eigenspace(ctx, br, b, 4);
    c.require(same_column_span(inter, eig_p4),
              "intersection of ker T_j equals the bridged image of pi_h");
    // one extra generic unit does not shrink the intersection
    std::vector<Vec3> more = units;
    more.push_back({make_rat(2, 7), make_rat(3, 7), make_rat(6, 7)});
    GaussMat inter2 = kernel_intersection(ctx.n, more);
    c.require(inter2.cols() == inter.cols() && same_column_span(inter2, inter),
              "an extra generic unit j does not shrink the intersection");
    // every embedded tensor lies in the intersection
    EHTensor g = embed_eh(ctx.n, 0, HVec{kOne, GaussRat{}});
    for (const Vec3& u : more)
        c.require(t_j(u, g).is_zero(), "embedded tensor in every ker T_j");
}

}  // namespace

void register_ehrep(std::vector<Check>& out) {
    out.push_back({"ehrep.h_space", "omega(h, qh) = 1, q^2 = -Id, <.,.> = omega(., q.)", "ehrep",
                   h_space});
    out.push_back({"ehrep.f_map",
                   "F(h (x) h1h2 + h2h1) = omega(h,h1) h2 + omega(h,h2) h1; rank 2; dim ker = 4",
                   "ehrep", f_map_check});
    out.push_back({"ehrep.sp1_basis",
                   "j1 = -i(h qh + qh h), j2 = -(hh + qh qh), j3 = i(qh qh - hh) is a unit "
                   "quaternion triple",
                   "ehrep", sp1_basis});
    out.push_back({"ehrep.weight_spectrum",
                   "(B + 2)(B - 4) = 0, trace(B) = 0, rank(B - 4I) = 8n, rank(B + 2I) = 4n",
                   "ehrep", weight_spectrum});
    out.push_back({"ehrep.weight_routes",
                   "B(alpha (x) A)(X) = [S^alpha_X, A] = sum_a alpha([J_a, A] X) J_a", "ehrep",
                   weight_routes});
    out.push_back({"ehrep.projectors",
                   "pi_s3 = (4 - B)/6 and pi_h = (B + 2)/6 are complementary projectors", "ehrep",
                   projectors_check});
    out.push_back({"ehrep.embedding",
                   "gamma(v) = 2(e* qh)(v) hh - (e* h)(v)(qh h + h qh) lies in ker T_j for all j",
                   "ehrep", embedding});
    out.push_back({"ehrep.bridge",
                   "complexified T*M (x) Q = E* (x) H (x) S^2H intertwining the J_a actions",
                   "ehrep", bridge_check});
    out.push_back({"ehrep.kernel_intersection",
                   "intersection of ker T_j over the certified units equals the +4 eigenspace",
                   "ehrep", kernel_intersection_check});
}

}  // namespace qtwist::checks
