#include "checks_common.hpp"

#include "qtwist/hermtwist.hpp"

namespace qtwist::checks {

namespace {

void dg_expansion(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, std::min(c.cfg.degree, 2)));
    for (int t = 0; t < 10; ++t) {
        std::vector<Rat> p = c.rng.point(ctx.dim);
        std::vector<Rat> x = c.rng.point(ctx.dim);
        std::vector<Rat> y = c.rng.point(ctx.dim);
        std::vector<Rat> v = c.rng.point(ctx.dim);
        c.require(dg_display(d, p, x, y, v) == dg_first_principles(d, p, x, y, v),
                  "(D_X g) display equals -g(S_X Y, V) - g(Y, S_X V)",
                  Json{{"p", json_point(p)}});
        if (c.failed) return;
    }
    // alpha = 0: Dg = 0
    QuatConnection flat = flat_connection(ctx);
    std::vector<Rat> p = c.rng.point(ctx.dim);
    c.require(is_zero(dg_display(flat, p, c.rng.point(ctx.dim), c.rng.point(ctx.dim),
                                 c.rng.point(ctx.dim))),
              "flat connection: D g = 0");
}

void torsion_form(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    // alpha = 0: t = 0
    {
        QuatConnection flat = flat_connection(ctx);
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        std::vector<Rat> x = c.rng.point(d);
        c.require(is_zero(torsion_form_horizontal(flat, z, x)), "flat connection: t = 0");
    }
    // closed alpha (exact linear forms): t(X~) = 8 alpha(X), t(vertical) = 0
    for (int t = 0; t < 4; ++t) {
        Poly f = c.rng.poly(d, std::min(c.cfg.degree + 1, 2), 3);
        PolyVec alpha = exterior_derivative0(f);
        QuatConnection conn = make_connection(ctx, alpha);
        CurvatureField r = curvature(conn);
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        for (int k = 0; k < d; ++k) {
            std::vector<Rat> ek(static_cast<size_t>(d), Rat(0));
            ek[static_cast<size_t>(k)] = Rat(1);
            Rat lhs = torsion_form_horizontal(conn, z, ek);
            Rat rhs = Rat(8) * conn.alpha[k].eval(z.p);
            c.require(lhs == rhs, "t(X~) = 8 alpha(X)",
                      Json{{"k", k}, {"lhs", json_rat(lhs)}, {"rhs", json_rat(rhs)}});
        }
        Vec3 a = tangent_at(c.rng, sp.u);
        c.require(is_zero(torsion_form_vertical(conn, r, z, a)),
                  "t(vertical) = 0 for closed connections", Json{{"u", json_vec3(sp.u)}});
        if (c.failed) return;
    }
}

void trace_sums(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    for (int t = 0; t < 8; ++t) {
        const SpherePoint& sp = pick_sphere(c.rng);
        RatMat eta = c.rng.rat_matrix(ctx.dim, ctx.dim);
        for (int i = 0; i < 3; ++i) {
            auto [lhs, rhs] = sums_identity_sides(ctx, eta, sp.u, i);
            c.require(lhs == rhs, "sum_k tr(J_i R^eta_{X_k, J X_k}) = 8n sum_k eta(JX_k, J_i X_k)",
                      Json{{"i", i}, {"u", json_vec3(sp.u)}});
        }
        // symmetric eta: the combinations tangent to the fiber vanish
        // (the directions that enter the vertical torsion are
        // perpendicular to J)
        RatMat sym = sym_part(eta);
        for (const Vec3& a : {sp.b1, sp.b2}) {
            Rat lhs_t(0), rhs_t(0);
            for (int i = 0; i < 3; ++i) {
                auto [lhs, rhs] = sums_identity_sides(ctx, sym, sp.u, i);
                lhs_t += a[i] * lhs;
                rhs_t += a[i] * rhs;
            }
            c.require(is_zero(rhs_t), "symmetric eta: tangential right side vanishes");
            c.require(is_zero(lhs_t), "symmetric eta: tangential left side vanishes");
        }
        // eta = 0
        auto [l0, r0] = sums_identity_sides(ctx, RatMat(ctx.dim, ctx.dim, Rat(0)), sp.u, 0);
        c.require(is_zero(l0) && is_zero(r0), "eta = 0 gives 0 = 0");
        if (c.failed) return;
    }
}

void chern_pairing(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    QuatConnection flat = flat_connection(ctx);
    CurvatureField r0 = curvature(flat);
    const SpherePoint& sp = pick_sphere(c.rng);
    std::vector<Rat> p = c.rng.point(d);
    c.require(chern_pairing_components(flat, r0, p, sp) == PiScalar{Rat(1, 2)},
              "alpha = 0: pairing is 1/(2 pi)");
    // alpha = dx1: 1/(2 pi) - 2/pi
    PolyVec dx1 = ctx.zero_vec();
    dx1[0] = Poly::constant(d, Rat(1));
    QuatConnection d1 = make_connection(ctx, dx1);
    CurvatureField r1 = curvature(d1);
    c.require(chern_pairing_components(d1, r1, p, sp) == PiScalar{Rat(1, 2) - Rat(2)},
              "alpha = dx1: pairing is 1/(2 pi) - 2/pi");
    int straddle_low = 0, straddle_high = 0;
    for (int t = 0; t < 10; ++t) {
        // random constant alpha
        PolyVec ca = ctx.zero_vec();
        for (int i = 0; i < d; ++i)
            if (c.rng.pick(0, 2) == 0)
                ca[static_cast<size_t>(i)] = Poly::constant(d, make_rat(c.rng.nonzero(), 6));
        QuatConnection conn = make_connection(ctx, ca);
        CurvatureField r = curvature(conn);
        const SpherePoint& sp2 = pick_sphere(c.rng);
        std::vector<Rat> p2 = c.rng.point(d);
        PiScalar assembled = chern_pairing_components(conn, r, p2, sp2);
        PiScalar closed = chern_pairing_closed_form(conn, p2);
        c.require(assembled == closed, "assembled pairing equals the closed form",
                  Json{{"assembled", assembled.str()}, {"closed", closed.str()}});
        // internal consistency: horizontal part equals trace(eta)/pi
        PolyMat eta = eta_of(conn);
        Poly tr = ctx.zero();
        for (int i = 0; i < d; ++i) tr += eta(i, i);
        PiScalar hor = chern_pairing_horizontal(conn, r, p2, sp2.u);
        c.require(hor == PiScalar{tr.eval(p2)}, "horizontal part equals trace(eta)/pi");
        // sign iff |alpha|^2 > 1/4
        Rat a2(0);
        for (int i = 0; i < d; ++i) {
            Rat v = conn.alpha[i].eval(p2);
            a2 += v * v;
        }
        c.require(assembled.negative() == (a2 > Rat(1, 4)),
                  "pairing negative iff |alpha|^2 > 1/4",
                  Json{{"alpha_sq", json_rat(a2)}});
        if (a2 > Rat(1, 4))
            ++straddle_high;
        else
            ++straddle_low;
        if (c.failed) return;
    }
    (void)straddle_low;
    (void)straddle_high;
    // pinned instances on both sides of the threshold, and exactly on it
    for (long num : {1L, 3L, 6L}) {
        PolyVec ca = ctx.zero_vec();
        ca[0] = Poly::constant(d, make_rat(num, 6));
        QuatConnection conn = make_connection(ctx, ca);
        CurvatureField r = curvature(conn);
        PiScalar v = chern_pairing_components(conn, r, p, sp);
        Rat a2 = make_rat(num * num, 36);
        c.require(v.negative() == (a2 > Rat(1, 4)),
                  "pairing sign at |alpha|^2 = " + to_string(a2));
        if (a2 == Rat(1, 4)) c.require(v == PiScalar{Rat(0)}, "pairing vanishes at the threshold");
    }
    // non-closed connections are rejected
    bool threw = false;
    PolyVec x2dx1 = ctx.zero_vec();
    x2dx1[0] = Poly::variable(d, 1);
    QuatConnection bad = make_connection(ctx, x2dx1);
    CurvatureField rb = curvature(bad);
    try {
        chern_pairing_components(bad, rb, p, sp);
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    c.require(threw, "pairing requires a closed connection");
}

}  // namespace

void register_hermtwist(std::vector<Check>& out) {
    out.push_back({"hermtwist.dg_expansion",
                   "(D_X g)(Y,V) display equals the first-principles derivative", "hermtwist",
                   dg_expansion});
    out.push_back({"hermtwist.torsion_form",
                   "t(X~) = 8 alpha(X) and t(vertical) = 0 for closed connections", "hermtwist",
                   torsion_form});
    out.push_back({"hermtwist.trace_sums",
                   "sum_k tr(J_i R^eta_{X_k, JX_k}) = 8n sum_k eta(J X_k, J_i X_k)", "hermtwist",
                   trace_sums});
    out.push_back({"hermtwist.chern_pairing",
                   "<gamma^D, Omega_g^D> = 1/(2 pi) - (2/pi)|alpha|^2 at Scal = 0", "hermtwist",
                   chern_pairing});
}

}  // namespace qtwist::checks
