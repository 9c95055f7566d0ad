#include "checks_common.hpp"

#include "qtwist/fd_check.hpp"
#include "qtwist/hermtwist.hpp"

namespace qtwist::checks {

namespace {

void projection(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    for (int t = 0; t < 8; ++t) {
        const SpherePoint& sp = pick_sphere(c.rng);
        Vec3 a{c.rng.rat(), c.rng.rat(), c.rng.rat()};
        Vec3 pa = pi_project(sp.u, a);
        c.require(is_zero(dot(pa, sp.u)), "projection lands in u-perp");
        c.require(is_zero(pi_project(sp.u, pa) - pa), "projection idempotent");
        c.require(is_zero(pi_project(sp.u, sp.u)), "projection kills J");
        RatMat m1 = q_matrix(ctx, pa);
        RatMat m2 = pi_project_matrix(ctx, sp.u, q_matrix(ctx, a));
        c.require(m1 == m2, "A - <A,J> J equals (A + J A J)/2",
                  Json{{"u", json_vec3(sp.u)}, {"a", json_vec3(a)}});
    }
}

void vertical(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, c.cfg.degree));
    for (int t = 0; t < 6; ++t) {
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(ctx.dim), sp.u);
        std::vector<Rat> x = c.rng.point(ctx.dim);
        c.require(is_zero(vertical_part(d, z, horizontal_lift(d, z, x))),
                  "vertical part of a horizontal lift vanishes");
        RatMat g = gamma_q_at(d, x, z.p);
        c.require((g + g.transpose()).all_zero(), "Gamma(X) is antisymmetric");
        Vec3 gu = zero3();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gu[static_cast<size_t>(i)] += g(i, j) * z.u[j];
        c.require(is_zero(dot(gu, z.u)), "the connection preserves the sphere");
        // alpha = 0: v(X, W) = W
        TwistorTangent tw(x, sp.u, tangent_at(c.rng, sp.u));
        c.require(is_zero(vertical_part(flat_connection(ctx), z, tw) - tw.w),
                  "product connection: v(U) = W");
    }
}

void nabla_checks(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    QuatConnection conn = make_connection(ctx, c.rng.one_form(d, std::min(c.cfg.degree, 2)));
    QuatConnection flat = flat_connection(ctx);
    // constant section, flat connection, horizontal U: nabla = 0
    {
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        QSection a = ctx.zero_q();
        for (int b = 0; b < 3; ++b) a[b] = Poly::constant(d, c.rng.rat());
        auto lift = horizontal_lift(flat, z, c.rng.point(d));
        c.require(is_zero(nabla_distinguished(flat, a, z, lift)),
                  "constant section, flat connection, horizontal direction");
    }
    // A = J1 constant at u = (1,0,0), vertical U: -W
    {
        TwistorPoint z(std::vector<Rat>(static_cast<size_t>(d), Rat(0)),
                       Vec3{Rat(1), Rat(0), Rat(0)});
        QSection a = ctx.zero_q();
        a[0] = ctx.one();
        Vec3 w{Rat(0), c.rng.rat(), c.rng.rat()};
        TwistorTangent t(std::vector<Rat>(static_cast<size_t>(d), Rat(0)), z.u, w);
        c.require(is_zero(nabla_distinguished(flat, a, z, t) + w),
                  "<J, A> = 1 vertical case gives -v(U)");
    }
    for (int t = 0; t < 5; ++t) {
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        TwistorTangent tt(c.rng.point(d), sp.u, tangent_at(c.rng, sp.u));
        // nabla J = 0 and Leibniz on projected polynomial sections
        std::array<Poly, 3> amb{c.rng.poly(d + 3, 2, 3), c.rng.poly(d + 3, 2, 3),
                                c.rng.poly(d + 3, 2, 3)};
        SectionField s = project_section(ctx, amb);
        Vec3 lhs = nabla_section(conn, j_section(s), z, tt);
        Vec3 rhs = cross(z.u, nabla_section(conn, s, z, tt));
        c.require(is_zero(lhs - rhs), "nabla(J s) = J nabla(s)");
        Poly f = c.rng.poly(d, std::min(c.cfg.degree, 2), 2);
        Vec3 l2 = nabla_section(conn, scale_section(f, s), z, tt);
        Rat uf(0);
        for (int i = 0; i < d; ++i)
            if (!is_zero(tt.x[i])) uf += tt.x[i] * f.derivative(i).eval(z.p);
        Vec3 r2 = uf * s.value(z) + f.eval(z.p) * nabla_section(conn, s, z, tt);
        c.require(is_zero(l2 - r2), "Leibniz rule against pullback functions");
        // metric compatibility: U <s1, s2> = <nabla s1, s2> + <s1, nabla s2>
        std::array<Poly, 3> amb2{c.rng.poly(d + 3, 2, 3), c.rng.poly(d + 3, 2, 3),
                                 c.rng.poly(d + 3, 2, 3)};
        SectionField s2 = project_section(ctx, amb2);
        std::vector<Rat> vars(z.p.begin(), z.p.end());
        vars.push_back(z.u[0]);
        vars.push_back(z.u[1]);
        vars.push_back(z.u[2]);
        Poly inner = s.c[0] * s2.c[0] + s.c[1] * s2.c[1] + s.c[2] * s2.c[2];
        Rat du(0);
        for (int i = 0; i < d; ++i)
            if (!is_zero(tt.x[i])) du += tt.x[i] * inner.derivative(i).eval(vars);
        for (int k = 0; k < 3; ++k)
            if (!is_zero(tt.w[k])) du += tt.w[k] * inner.derivative(d + k).eval(vars);
        Rat rhs_metric = dot(nabla_section(conn, s, z, tt), s2.value(z)) +
                         dot(s.value(z), nabla_section(conn, s2, z, tt));
        c.require(du == rhs_metric, "nabla preserves the fiber metric");
        // distinguished sections agree with the closed-form covariant derivative
        QSection a = c.rng.q_section(d, std::min(c.cfg.degree, 2));
        c.require(is_zero(nabla_section(conn, distinguished_section(ctx, a), z, tt) -
                          nabla_distinguished(conn, a, z, tt)),
                  "section-field route matches the distinguished formula");
    }
}

void curvature_formula(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    QuatConnection flat = flat_connection(ctx);
    CurvatureField r0 = curvature(flat);
    // flat horizontal-horizontal curvature vanishes
    {
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        TwistorTangent tu = horizontal_lift(flat, z, c.rng.point(d));
        TwistorTangent tv = horizontal_lift(flat, z, c.rng.point(d));
        Vec3 a = tangent_at(c.rng, sp.u);
        c.require(is_zero(curvature_nabla(flat, r0, z, tu, tv, a)),
                  "flat connection: horizontal-horizontal curvature vanishes");
    }
    // vertical-vertical example at u = (1,0,0): R_{B,C} A = -J A
    {
        TwistorPoint z(std::vector<Rat>(static_cast<size_t>(d), Rat(0)),
                       Vec3{Rat(1), Rat(0), Rat(0)});
        Vec3 b{Rat(0), Rat(1), Rat(0)}, cc{Rat(0), Rat(0), Rat(1)};
        Vec3 a{Rat(0), c.rng.rat(), c.rng.rat()};
        TwistorTangent tb(std::vector<Rat>(static_cast<size_t>(d), Rat(0)), z.u, b);
        TwistorTangent tc(std::vector<Rat>(static_cast<size_t>(d), Rat(0)), z.u, cc);
        Vec3 val = curvature_nabla(flat, r0, z, tb, tc, a);
        c.require(is_zero(val + cross(z.u, a)), "fiber curvature is -Omega_p(B,C) J A");
    }
    // antisymmetry in (U, V) for a polynomial connection
    QuatConnection conn = make_connection(ctx, c.rng.one_form(d, std::min(c.cfg.degree, 2)));
    CurvatureField r = curvature(conn);
    for (int t = 0; t < 4; ++t) {
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        TwistorTangent tu(c.rng.point(d), sp.u, tangent_at(c.rng, sp.u));
        TwistorTangent tv(c.rng.point(d), sp.u, tangent_at(c.rng, sp.u));
        Vec3 a = tangent_at(c.rng, sp.u);
        Vec3 v1 = curvature_nabla(conn, r, z, tu, tv, a);
        Vec3 v2 = curvature_nabla(conn, r, z, tv, tu, a);
        c.require(is_zero(v1 + v2), "curvature antisymmetric in (U, V)");
        // mixed horizontal lift / vertical tangent has no cross term
        TwistorTangent hor = horizontal_lift(conn, z, c.rng.point(d));
        TwistorTangent ver(std::vector<Rat>(static_cast<size_t>(d), Rat(0)), sp.u,
                           tangent_at(c.rng, sp.u));
        Vec3 mixed = curvature_nabla(conn, r, z, hor, ver, a);
        c.require(is_zero(mixed), "mixed horizontal/vertical curvature vanishes");
    }
}

void fd_oracle(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    int nontrivial = 0;
    for (int t = 0; t < 20; ++t) {
        PolyVec alpha = c.rng.one_form(d, 1);
        QuatConnection conn = make_connection(ctx, alpha);
        CurvatureField r = curvature(conn);
        std::array<Poly, 3> amb{c.rng.poly(d + 3, 2, 3), c.rng.poly(d + 3, 2, 3),
                                c.rng.poly(d + 3, 2, 3)};
        SectionField s = project_section(ctx, amb);
        const SpherePoint& sp = pick_sphere(c.rng);
        std::vector<Rat> p(static_cast<size_t>(d));
        for (auto& v : p) v = make_rat(c.rng.pick(-2, 2), 4);
        FdConfig cfg;
        switch (t % 4) {
            case 0:
                cfg.dir_u = static_cast<int>(c.rng.pick(0, d - 1));
                cfg.dir_v = d;  // base x fiber
                break;
            case 1:
                cfg.dir_u = d;
                cfg.dir_v = d + 1;  // fiber x fiber
                break;
            case 2: {
                cfg.dir_u = static_cast<int>(c.rng.pick(0, d - 1));
                cfg.dir_v = static_cast<int>(c.rng.pick(0, d - 1));
                if (cfg.dir_v == cfg.dir_u) cfg.dir_v = (cfg.dir_u + 1) % d;
                break;
            }
            default:
                cfg.dir_u = static_cast<int>(c.rng.pick(0, d - 1));
                cfg.dir_v = d + 1;
                break;
        }
        FdResult res = fd_curvature_check(conn, r, s, p, sp, cfg);
        double mag = 0;
        for (double v : res.formula) mag += v * v;
        if (mag > 1e-12) ++nontrivial;
        c.require(res.rel_error <= 1e-5,
                  "loop-derivative curvature matches the component formulas",
                  Json{{"rel_error", res.rel_error},
                       {"formula", {res.formula[0], res.formula[1], res.formula[2]}},
                       {"fd", {res.fd[0], res.fd[1], res.fd[2]}},
                       {"dirs", {cfg.dir_u, cfg.dir_v}}});
    }
    c.require(nontrivial >= 5, "enough configurations exercise nonzero curvature",
              Json{{"nontrivial", nontrivial}});
}

void chern_condition(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    int families = std::max(1, c.cfg.samples / 2);
    auto units = certified_units();
    for (int t = 0; t < families; ++t) {
        // self-dual family: residual vanishes identically as a field
        PolyVec sd = self_dual_alpha(c.rng, ctx);
        QuatConnection conn = make_connection(ctx, sd);
        CurvatureField r = curvature(conn);
        const Vec3& u = units[static_cast<size_t>(c.rng.pick(0, 4))];
        int bx = static_cast<int>(c.rng.pick(0, d - 2));
        int by = static_cast<int>(c.rng.pick(bx + 1, d - 1));
        Vec3 a = tangent_at(c.rng, u);
        QSection res = chern_condition_residual(conn, r, u, bx, by, a);
        c.require(is_zero(res), "self-dual connection: residual is the zero field",
                  Json{{"alpha", json_one_form(sd)}, {"u", json_vec3(u)}});
        if (c.failed) return;

        // non-self-dual family: find a concrete witness
        PolyVec nsd = non_self_dual_alpha(c.rng, ctx);
        QuatConnection conn2 = make_connection(ctx, nsd);
        CurvatureField r2 = curvature(conn2);
        bool witness = false;
        for (size_t ui = 0; ui < units.size() && !witness; ++ui) {
            Vec3 av = tangent_at(c.rng, units[ui]);
            if (is_zero(av)) continue;
            for (int i = 0; i < d && !witness; ++i)
                for (int j = i + 1; j < d && !witness; ++j) {
                    QSection rr = chern_condition_residual(conn2, r2, units[ui], i, j, av);
                    if (!is_zero(rr)) witness = true;
                }
        }
        c.require(witness, "non-self-dual connection admits a residual witness",
                  Json{{"alpha", json_one_form(nsd)}});
        if (c.failed) return;
    }
}

void nabla_difference(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    for (int t = 0; t < c.cfg.samples; ++t) {
        // base connection: flat for two thirds of the samples, an
        // arbitrary quaternionic one otherwise (the identity does not
        // need self-duality)
        PolyVec base = (t % 3 == 2) ? c.rng.one_form(d, std::min(c.cfg.degree, 2))
                                    : ctx.zero_vec();
        PolyVec alpha = c.rng.one_form(d, std::min(c.cfg.degree, 2));
        PolyVec shifted = base;
        for (int i = 0; i < d; ++i) shifted[static_cast<size_t>(i)] += alpha[static_cast<size_t>(i)];
        QuatConnection conn = make_connection(ctx, base);
        QuatConnection conn2 = make_connection(ctx, shifted);
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        TwistorTangent tt(c.rng.point(d), sp.u, tangent_at(c.rng, sp.u));
        QSection a = c.rng.q_section(d, std::min(c.cfg.degree, 2));
        Vec3 lhs = nabla_difference_lhs(conn, conn2, a, z, tt);
        Vec3 rhs = nabla_difference_rhs(ctx, alpha, a, z, tt);
        c.require(is_zero(lhs - rhs), "(nabla' - nabla) A~ = -2 alpha(J_u X) J A~",
                  Json{{"alpha", json_one_form(alpha)},
                       {"base", json_one_form(base)},
                       {"p", json_point(z.p)},
                       {"u", json_vec3(z.u)}});
        if (c.failed) return;
    }
    // self-dual pair satisfying the hypotheses of the difference formula:
    // base self-dual, shift with Q-hermitian differential
    PolyVec base = self_dual_alpha(c.rng, ctx);
    PolyVec alpha = self_dual_alpha(c.rng, ctx);
    PolyVec shifted = base;
    for (int i = 0; i < d; ++i) shifted[static_cast<size_t>(i)] += alpha[static_cast<size_t>(i)];
    QuatConnection conn = make_connection(ctx, base);
    QuatConnection conn2 = make_connection(ctx, shifted);
    c.require(predicates(conn).is_self_dual && predicates(conn2).is_self_dual,
              "constructed pair is self-dual");
    const SpherePoint& sp = pick_sphere(c.rng);
    TwistorPoint z(c.rng.point(d), sp.u);
    TwistorTangent tt(c.rng.point(d), sp.u, tangent_at(c.rng, sp.u));
    QSection a = c.rng.q_section(d, std::min(c.cfg.degree, 2));
    c.require(is_zero(nabla_difference_lhs(conn, conn2, a, z, tt) -
                      nabla_difference_rhs(ctx, alpha, a, z, tt)),
              "difference formula on a self-dual pair");
}

void beta_twist(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    QuatConnection conn = make_connection(ctx, self_dual_alpha(c.rng, ctx));
    CurvatureField r = curvature(conn);
    for (int t = 0; t < 6; ++t) {
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        TwistorTangent tt(c.rng.point(d), sp.u, tangent_at(c.rng, sp.u));
        std::array<Poly, 3> amb{c.rng.poly(d + 3, 2, 3), c.rng.poly(d + 3, 2, 3),
                                c.rng.poly(d + 3, 2, 3)};
        SectionField s = project_section(ctx, amb);
        Vec3 sval = s.value(z);
        // beta = 0 reduces to the plain connection
        PolyVec zero = ctx.zero_vec();
        c.require(is_zero(nabla_twisted(conn, zero, s, z, tt) - nabla_section(conn, s, z, tt)),
                  "beta = 0 leaves nabla unchanged");
        // closed beta: twisted curvature equals untwisted curvature
        Poly f = c.rng.poly(d, std::min(c.cfg.degree + 1, 3), 3);
        PolyVec closed = exterior_derivative0(f);
        TwistorTangent tv(c.rng.point(d), sp.u, tangent_at(c.rng, sp.u));
        Vec3 a = tangent_at(c.rng, sp.u);
        c.require(is_zero(curvature_twisted(conn, r, closed, z, tt, tv, a) -
                          curvature_nabla(conn, r, z, tt, tv, a)),
                  "closed beta does not change the curvature");
        // (0,1) property of the twist term and failure of (1,0)-linearity
        PolyVec beta = self_dual_alpha(c.rng, ctx);
        TwistorTangent jt = j_tangent(ctx, z, tt);
        Vec3 b_u = beta_tilde(ctx, beta, z, tt, sval);
        Vec3 b_ju = beta_tilde(ctx, beta, z, jt, sval);
        c.require(is_zero(cross(z.u, b_ju) - b_u), "J beta~(J U) = beta~(U): (0,1) type");
        // dbar of the twisted connection = dbar + beta~
        Vec3 lhs = Rat(1, 2) * (nabla_twisted(conn, beta, s, z, tt) +
                                cross(z.u, nabla_twisted(conn, beta, s, z, jt)));
        Vec3 rhs = dbar_section(conn, s, z, tt) + beta_tilde(ctx, beta, z, tt, sval);
        c.require(is_zero(lhs - rhs), "(0,1) part of nabla + pi*beta (x) J is dbar + beta~");
        // twisted curvature stays J-invariant for Q-hermitian d(beta):
        // horizontal J-rotation leaves the value unchanged
        TwistorTangent jtt = j_tangent(ctx, z, horizontal_lift(conn, z, tt.x));
        TwistorTangent jtv = j_tangent(ctx, z, horizontal_lift(conn, z, tv.x));
        TwistorTangent htt = horizontal_lift(conn, z, tt.x);
        TwistorTangent htv = horizontal_lift(conn, z, tv.x);
        Vec3 inv1 = curvature_twisted(conn, r, beta, z, jtt, jtv, a);
        Vec3 inv2 = curvature_twisted(conn, r, beta, z, htt, htv, a);
        c.require(is_zero(inv1 - inv2),
                  "twisted curvature is invariant under the horizontal J-rotation");
        if (c.failed) return;
    }
}

void gauge(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    QuatConnection conn = make_connection(ctx, c.rng.one_form(d, std::min(c.cfg.degree, 2)));
    for (int t = 0; t < 5; ++t) {
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        TwistorTangent tt(c.rng.point(d), sp.u, tangent_at(c.rng, sp.u));
        std::array<Poly, 3> amb{c.rng.poly(d + 3, 2, 3), c.rng.poly(d + 3, 2, 3),
                                c.rng.poly(d + 3, 2, 3)};
        SectionField s = project_section(ctx, amb);
        Poly one = Poly::constant(d, Rat(1));
        Poly zero = Poly::zero(d);
        c.require(is_zero(gauge_transformed_nabla(conn, s, one, zero, z, tt) -
                          nabla_section(conn, s, z, tt)),
                  "rho = 1, theta = 0 is the identity gauge");
        Poly theta_const = Poly::constant(d, c.rng.rat());
        c.require(is_zero(gauge_transformed_nabla(conn, s, one, theta_const, z, tt) -
                          nabla_section(conn, s, z, tt)),
                  "constant theta changes nothing");
        // theta pulled back from the base: difference is -d(theta) (x) J s
        Poly theta = c.rng.poly(d, 1, 2);
        Rat dtheta(0);
        for (int i = 0; i < d; ++i)
            if (!is_zero(tt.x[i])) dtheta += tt.x[i] * theta.derivative(i).eval(z.p);
        Vec3 lhs = gauge_transformed_nabla(conn, s, one, theta, z, tt) -
                   nabla_section(conn, s, z, tt);
        c.require(is_zero(lhs + dtheta * cross(z.u, s.value(z))),
                  "difference term is -d(theta) (x) J");
        // any gauge term preserves the fiber metric: <delta s, s> = 0 component
        Poly sq = c.rng.poly(d, 1, 1);
        Poly rho = Poly::constant(d, Rat(2)) + sq * sq;  // strictly positive
        Vec3 delta = gauge_transformed_nabla(conn, s, rho, theta, z, tt) -
                     nabla_section(conn, s, z, tt);
        c.require(is_zero(dot(delta, s.value(z))),
                  "gauge difference acts through J (skew on the fiber)");
        if (c.failed) return;
    }
}

void holomorphicity(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    Bridge br = make_bridge(ctx);
    auto units = certified_units();
    QuatConnection conn = make_connection(ctx, c.rng.one_form(d, std::min(c.cfg.degree, 2)));
    // constant section, flat connection: residual vanishes identically
    QuatConnection flat = flat_connection(ctx);
    QSection cst = ctx.zero_q();
    for (int b = 0; b < 3; ++b) cst[b] = Poly::constant(d, c.rng.rat());
    for (const Vec3& u : units)
        for (int bx = 0; bx < d; ++bx)
            c.require(is_zero(holomorphicity_residual(flat, cst, u, bx)),
                      "constant section of the flat connection is holomorphic");
    // residual equals the bridge pullback of T_j(DA)
    for (int t = 0; t < 4; ++t) {
        QSection a = c.rng.q_section(d, std::min(c.cfg.degree, 2));
        const Vec3& u = units[static_cast<size_t>(c.rng.pick(0, 4))];
        int bx = static_cast<int>(c.rng.pick(0, d - 1));
        std::vector<Rat> p = c.rng.point(d);
        PolyMat lhs = holomorphicity_residual(conn, a, u, bx);
        RatMat lhs_at = ctx.eval(lhs, p);
        PolyMat rhs = holomorphicity_residual_via_tj(conn, br, a, u, bx, p);
        RatMat rhs_at = ctx.eval(rhs, p);
        c.require(lhs_at == rhs_at, "display residual = bridge pullback of T_j(DA)",
                  Json{{"u", json_vec3(u)}, {"bx", bx}});
        if (c.failed) return;
    }
    // vertical directions are automatic: for distinguished sections the
    // dbar value along vertical U reduces to the fiber complex structure,
    // with zero residual regardless of A.
    for (int t = 0; t < 4; ++t) {
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        QSection a = c.rng.q_section(d, std::min(c.cfg.degree, 2));
        Vec3 w = tangent_at(c.rng, sp.u);
        TwistorTangent ver(std::vector<Rat>(static_cast<size_t>(d), Rat(0)), sp.u, w);
        TwistorTangent jver(std::vector<Rat>(static_cast<size_t>(d), Rat(0)), sp.u,
                            cross(sp.u, w));
        Vec3 n_j = nabla_distinguished(conn, a, z, jver);
        Vec3 jn = cross(sp.u, nabla_distinguished(conn, a, z, ver));
        c.require(is_zero(n_j - jn), "vertical holomorphicity is automatic",
                  Json{{"u", json_vec3(sp.u)}});
        if (c.failed) return;
    }
}

void conjugation(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    for (int t = 0; t < 6; ++t) {
        ThetaSection s{c.rng.q_section(d, std::min(c.cfg.degree, 2)),
                       c.rng.q_section(d, std::min(c.cfg.degree, 2))};
        ThetaSection ss = conjugate_section(conjugate_section(s));
        for (int b = 0; b < 3; ++b)
            c.require(ss.a[b] == s.a[b] && ss.b[b] == s.b[b], "conjugation is an involution");
        const SpherePoint& sp = pick_sphere(c.rng);
        TwistorPoint z(c.rng.point(d), sp.u);
        TwistorPoint zm(z.p, -sp.u);
        // sbar(J) = sigma_*(s(-J)) = -s(-J) in fiber coordinates
        ThetaSection sb = conjugate_section(s);
        c.require(is_zero(theta_section_value(ctx, sb, z) + theta_section_value(ctx, s, zm)),
                  "conjugation is sigma_* o evaluation at -J");
        // distinguished sections are purely imaginary, J A~ is real
        ThetaSection dist{s.a, ctx.zero_q()};
        ThetaSection db = conjugate_section(dist);
        c.require(is_zero(theta_section_value(ctx, db, z) + theta_section_value(ctx, dist, z)),
                  "distinguished sections satisfy sbar = -s");
        ThetaSection jdist{ctx.zero_q(), s.a};
        ThetaSection jb = conjugate_section(jdist);
        c.require(is_zero(theta_section_value(ctx, jb, z) - theta_section_value(ctx, jdist, z)),
                  "J A~ is a real section");
        if (c.failed) return;
    }
}

}  // namespace

void register_twistor(std::vector<Check>& out) {
    out.push_back({"twistor.projection", "Pi_J(A) = A - <A,J> J = (A + J A J)/2", "twistor",
                   projection});
    out.push_back({"twistor.vertical_part", "v(U) = W + Gamma(X) u; v(horizontal lift) = 0",
                   "twistor", vertical});
    out.push_back({"twistor.nabla",
                   "nabla_U A~ = Pi_J(D_X A) - <J,A> v(U); Leibniz; nabla J = 0; metric",
                   "twistor", nabla_checks});
    out.push_back({"twistor.curvature_formula",
                   "R(U,V) = Pi([R^D, A]) on lifts, -Omega_p(v,v) J A on fibers, 0 mixed",
                   "twistor", curvature_formula});
    out.push_back({"twistor.fd_oracle",
                   "finite-difference loop curvature matches the formulas (rel err <= 1e-5)",
                   "twistor", fd_oracle});
    out.push_back({"twistor.chern_condition",
                   "Pi_J([R_{JX^JY - X^Y}, A]) = 0 iff the connection is self-dual", "twistor",
                   chern_condition});
    out.push_back({"twistor.nabla_difference",
                   "nabla' - nabla = 2 J(pi* alpha) (x) J on distinguished sections", "twistor",
                   nabla_difference});
    out.push_back({"twistor.beta_twist",
                   "beta~_U s = (beta(X) J s - beta(JX) s)/2 is the (0,1) shift of nabla + "
                   "pi*beta (x) J",
                   "twistor", beta_twist});
    out.push_back({"twistor.gauge", "gauge difference (d^J log rho - d theta) (x) J", "twistor",
                   gauge});
    out.push_back({"twistor.holomorphicity",
                   "D_{JX}A - <D_{JX}A,J>J - J D_X A - <D_X A,J>Id = bridge pullback of T_j(DA)",
                   "twistor", holomorphicity});
    out.push_back({"twistor.conjugation",
                   "sbar_J = sigma_*(s_{sigma(J)}); distinguished sections purely imaginary",
                   "twistor", conjugation});
}

}  // namespace qtwist::checks
