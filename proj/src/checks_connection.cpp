#include "checks_common.hpp"

namespace qtwist::checks {

namespace {

void torsion_free(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, c.cfg.degree));
    for (int i = 0; i < ctx.dim; ++i) {
        PolyMat si = s_alpha_endo(d, i);
        for (int j = i + 1; j < ctx.dim; ++j) {
            PolyMat sj = s_alpha_endo(d, j);
            for (int r = 0; r < ctx.dim; ++r)
                c.require(si(r, j) == sj(r, i), "S_X Y = S_Y X on basis pairs",
                          Json{{"i", i}, {"j", j}, {"row", r}});
        }
    }
}

void volume_trace(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, c.cfg.degree));
    for (int j = 0; j < ctx.dim; ++j)
        c.require(trace_s_alpha(d, j) == Rat(4 * (ctx.n + 1)) * d.alpha[j],
                  "trace(S_X) = 4(n+1) alpha(X)", Json{{"j", j}});
    // zero covector gives the zero endomorphism
    QuatConnection flat = flat_connection(ctx);
    c.require(is_zero(s_alpha_endo(flat, 0)), "S^0 = 0");
}

void curvature_assembly(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    // flat connection: zero curvature
    CurvatureField r0 = curvature(flat_connection(ctx));
    for (const auto& m : r0.comp) c.require(is_zero(m), "flat connection has zero curvature");
    // constant alpha: R = [S_X, S_Y]
    PolyVec ca = ctx.zero_vec();
    for (int i = 0; i < ctx.dim; ++i) ca[static_cast<size_t>(i)] = Poly::constant(ctx.dim, c.rng.rat());
    QuatConnection dc = make_connection(ctx, ca);
    CurvatureField rc = curvature(dc);
    for (int i = 0; i < ctx.dim; ++i) {
        PolyMat si = s_alpha_endo(dc, i);
        for (int j = i + 1; j < ctx.dim; ++j) {
            PolyMat sj = s_alpha_endo(dc, j);
            c.require(is_zero(rc.upper(i, j) - (si * sj - sj * si)),
                      "constant alpha: R_{X,Y} = [S_X, S_Y]", Json{{"i", i}, {"j", j}});
        }
    }
    // Bianchi and normalizer residuals for a sampled polynomial alpha
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, c.cfg.degree));
    CurvatureField r = curvature(d);
    for (int t = 0; t < 6; ++t) {
        int i = static_cast<int>(c.rng.pick(0, ctx.dim - 1));
        int j = static_cast<int>(c.rng.pick(0, ctx.dim - 1));
        int k = static_cast<int>(c.rng.pick(0, ctx.dim - 1));
        c.require(is_zero(bianchi_residual(ctx, r, i, j, k)),
                  "first Bianchi sum vanishes", Json{{"i", i}, {"j", j}, {"k", k}});
    }
    auto omega = omega_forms_trace(d, r);
    for (int a = 0; a < 3; ++a)
        for (int t = 0; t < 4; ++t) {
            int i = static_cast<int>(c.rng.pick(0, ctx.dim - 2));
            int j = static_cast<int>(c.rng.pick(i + 1, ctx.dim - 1));
            c.require(is_zero(curvature_j_bracket_residual(ctx, r, omega, a, i, j)),
                      "[R_{X,Y}, J_i] = Omega_k J_j - Omega_j J_k",
                      Json{{"a", a}, {"i", i}, {"j", j}});
        }
}

void ricci_change(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    // alpha = 0: both sides vanish
    auto rep0 = ricci_change_check(flat_connection(ctx));
    c.require(rep0.sym_matches && rep0.skew_matches, "alpha = 0: both displays vanish");
    // constant alpha: skew side zero, sym side algebraic in alpha
    PolyVec ca = ctx.zero_vec();
    for (int i = 0; i < ctx.dim; ++i) ca[static_cast<size_t>(i)] = Poly::constant(ctx.dim, c.rng.rat());
    auto repc = ricci_change_check(make_connection(ctx, ca));
    c.require(repc.sym_matches && repc.skew_matches, "constant alpha: change formulas exact");
    // polynomial alphas
    for (int t = 0; t < 3; ++t) {
        PolyVec alpha = c.rng.one_form(ctx.dim, c.cfg.degree);
        auto rep = ricci_change_check(make_connection(ctx, alpha));
        c.require(rep.sym_matches, "sym display: 4n(T) + 8 P_h(T)",
                  Json{{"alpha", json_one_form(alpha)}});
        c.require(rep.skew_matches, "skew display: ric - ric^T = -4(n+1) d(alpha)",
                  Json{{"alpha", json_one_form(alpha)}});
    }
}

void eta_weyl_split(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, std::min(c.cfg.degree, 2)));
    CurvatureField r = curvature(d);
    PolyMat ric = ricci_contraction(ctx, r);
    PolyMat eta = eta_from_ricci(ctx, ric);
    // round trip through R^eta
    CurvatureField re = r_eta_field(ctx, eta);
    PolyMat eta2 = eta_from_ricci(ctx, ricci_contraction(ctx, re));
    c.require(is_zero(eta - eta2), "eta -> R^eta -> Ricci -> eta is the identity");
    // skew Q-hermitian value inverts with the 1/(4(n+1)) factor alone
    RatMat skew_h = p_h_project(ctx, skew_part(c.rng.rat_matrix(ctx.dim, ctx.dim)));
    RatMat eta_v = eta_from_ricci(ctx, skew_h);
    c.require(eta_v == scale(Rat(1, 4 * (ctx.n + 1)), skew_h),
              "purely skew Q-hermitian ricci: eta = ric/(4(n+1))");
    c.require(eta_from_ricci(ctx, RatMat(ctx.dim, ctx.dim, Rat(0))).all_zero(),
              "eta(0) = 0");
    // Weyl part: Ricci-flat and commutes with the basis
    CurvatureField w = weyl_part(d);
    c.require(is_zero(ricci_contraction(ctx, w)), "Ricci(W) = 0");
    for (int a = 0; a < 3; ++a) {
        PolyMat ja = ctx.lift(ctx.J(a));
        for (int i = 0; i < ctx.dim; ++i)
            for (int j = i + 1; j < ctx.dim; ++j) {
                const PolyMat& wij = w.upper(i, j);
                c.require(is_zero(wij * ja - ja * wij), "[W_{X,Y}, J_a] = 0",
                          Json{{"a", a}, {"i", i}, {"j", j}});
            }
    }
    // flat connection: W = 0
    CurvatureField w0 = weyl_part(flat_connection(ctx));
    for (const auto& m : w0.comp) c.require(is_zero(m), "alpha = 0: W = 0");
}

void omega_consistency(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, std::min(c.cfg.degree, 2)));
    CurvatureField r = curvature(d);
    PolyMat eta = eta_from_ricci(ctx, ricci_contraction(ctx, r));
    auto om_tr = omega_forms_trace(d, r);
    auto om_eta = omega_forms_eta(ctx, eta);
    for (int a = 0; a < 3; ++a)
        c.require(is_zero(om_tr[a] - om_eta[a]),
                  "Omega_i from -1/(2n) tr(J_i R) equals the eta expression", Json{{"a", a}});
    // R^eta reproduces the eta expression of Omega directly
    RatMat eta_v = c.rng.rat_matrix(ctx.dim, ctx.dim);
    for (int t = 0; t < 5; ++t) {
        int i = static_cast<int>(c.rng.pick(0, ctx.dim - 2));
        int j = static_cast<int>(c.rng.pick(i + 1, ctx.dim - 1));
        std::vector<Rat> x(static_cast<size_t>(ctx.dim), Rat(0)), y = x;
        x[static_cast<size_t>(i)] = Rat(1);
        y[static_cast<size_t>(j)] = Rat(1);
        RatMat rv = r_eta(ctx, eta_v, x, y);
        for (int a = 0; a < 3; ++a) {
            Rat tr = (ctx.J(a) * rv).trace();
            Rat lhs = Rat(-1, 2 * ctx.n) * tr;
            // eta(e_i, J_a e_j) - eta(e_j, J_a e_i)
            Rat eij(0), eji(0);
            for (int p = 0; p < ctx.dim; ++p) {
                if (!is_zero(ctx.J(a)(p, j))) eij += eta_v(i, p) * ctx.J(a)(p, j);
                if (!is_zero(ctx.J(a)(p, i))) eji += eta_v(j, p) * ctx.J(a)(p, i);
            }
            c.require(lhs == Rat(2) * (eij - eji),
                      "tr form of Omega matches 2(eta(X, J_i Y) - eta(Y, J_i X)) on R^eta",
                      Json{{"a", a}, {"i", i}, {"j", j}});
        }
    }
}

void predicates_check(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    auto p0 = predicates(flat_connection(ctx));
    c.require(p0.is_closed && p0.is_exact && p0.is_self_dual,
              "alpha = 0 is closed, exact, self-dual");
    PolyVec x2dx1 = ctx.zero_vec();
    x2dx1[0] = Poly::variable(ctx.dim, 1);
    auto p1 = predicates(make_connection(ctx, x2dx1));
    c.require(!p1.is_closed && !p1.is_exact, "alpha = x2 dx1 is not closed");
    // exact alpha: gradient of a random polynomial
    Poly f = c.rng.poly(ctx.dim, std::min(c.cfg.degree + 1, 3), 4);
    auto p2 = predicates(make_connection(ctx, exterior_derivative0(f)));
    c.require(p2.is_closed && p2.is_exact && p2.is_self_dual, "alpha = df is exact and self-dual",
              Json{{"f", json_poly(f)}});
    // constructed self-dual, non-closed family
    bool nonzero = false;
    PolyVec sd = self_dual_alpha(c.rng, ctx, &nonzero);
    auto p3 = predicates(make_connection(ctx, sd));
    c.require(p3.is_self_dual, "primitive of a Q-hermitian form is self-dual");
    if (nonzero) c.require(!p3.is_closed, "the constructed self-dual form is not closed");
    // closed <-> exact coincide on the simply connected model
    auto p4 = predicates(make_connection(ctx, non_self_dual_alpha(c.rng, ctx)));
    c.require(p4.is_closed == p4.is_exact, "closed iff exact on R^{4n}");
    c.require(!p4.is_self_dual, "sampled non-self-dual alpha fails the predicate");
}

}  // namespace

void register_connection(std::vector<Check>& out) {
    out.push_back({"connection.torsion_free", "S^alpha_X Y = S^alpha_Y X (torsion-free)",
                   "connection", torsion_free});
    out.push_back({"connection.volume_trace", "trace(S^alpha_X) = 4(n+1) alpha(X)", "connection",
                   volume_trace});
    out.push_back({"connection.curvature_assembly",
                   "R = dS + S^S; constant alpha gives [S_X, S_Y]; Bianchi and J-bracket residuals vanish",
                   "connection", curvature_assembly});
    out.push_back({"connection.ricci_change",
                   "Ricci(D + S^alpha) change formulas on the flat base", "connection",
                   ricci_change});
    out.push_back({"connection.eta_weyl_split",
                   "R^D = W + R^eta with Ricci(W) = 0, [W, J_a] = 0, and the eta round trip",
                   "connection", eta_weyl_split});
    out.push_back({"connection.omega_consistency",
                   "Omega_i = -1/(2n) tr(J_i R^D) = 2(eta(X, J_i Y) - eta(Y, J_i X))",
                   "connection", omega_consistency});
    out.push_back({"connection.predicates", "closed / exact / self-dual on constructed families",
                   "connection", predicates_check});
}

}  // namespace qtwist::checks
