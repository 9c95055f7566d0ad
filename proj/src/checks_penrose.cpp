#include "checks_common.hpp"

#include "qtwist/penrose.hpp"

namespace qtwist::checks {

namespace {

void routes(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    for (int t = 0; t < 6; ++t) {
        QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, std::min(c.cfg.degree, 2)));
        QSection a = c.rng.q_section(ctx.dim, std::min(c.cfg.degree, 2));
        TensorField p1 = penrose_operator(d, a, pi_s3);
        TensorField p2 = penrose_via_weight(d, a, b);
        bool eq = true;
        for (size_t k = 0; k < p1.size(); ++k)
            if (p1[k] != p2[k]) eq = false;
        c.require(eq, "pi_s3(DA) = (4 DA - B(DA))/6 as polynomial fields");
        // the projected value has no pi_h component
        TensorField back = apply_weight(pi_h, p1);
        c.require(is_zero(back), "pi_h(P^D A) = 0");
        if (c.failed) return;
    }
    // constant section of the flat connection
    QSection cst = ctx.zero_q();
    cst[1] = ctx.one();
    c.require(is_zero(penrose_operator(flat_connection(ctx), cst, pi_s3)),
              "constant section, flat connection: P A = 0");
}

void second_derivative(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    QuatConnection flat = flat_connection(ctx);
    QSection a = c.rng.q_section(ctx.dim, std::min(c.cfg.degree, 2));
    SecondDerivative dd0 = second_covariant(flat, a);
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j)
            for (int bb = 0; bb < 3; ++bb) {
                c.require(dd0.at(i, j)[bb] == a[bb].derivative(j).derivative(i),
                          "flat case: (D^2 A)_{X,Y} = d_X d_Y A");
                c.require(dd0.at(i, j)[bb] == dd0.at(j, i)[bb], "flat case: D^2 symmetric");
            }
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, std::min(c.cfg.degree, 2)));
    SecondDerivative dd = second_covariant(d, a);
    CurvatureField r = curvature(d);
    PolyMat am = q_matrix(ctx, a);
    for (int t = 0; t < 8; ++t) {
        int i = static_cast<int>(c.rng.pick(0, ctx.dim - 2));
        int j = static_cast<int>(c.rng.pick(i + 1, ctx.dim - 1));
        QSection anti = ctx.zero_q();
        for (int bb = 0; bb < 3; ++bb) anti[bb] = dd.at(i, j)[bb] - dd.at(j, i)[bb];
        PolyMat lhs = q_matrix(ctx, anti);
        const PolyMat& rij = r.upper(i, j);
        c.require(is_zero(lhs - (rij * am - am * rij)),
                  "antisymmetrized D^2 equals the curvature commutator",
                  Json{{"i", i}, {"j", j}});
        if (c.failed) return;
    }
}

void trace_b_tilde_check(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    RatMat b = weight_matrix_expansion(ctx);
    QuatConnection d = make_connection(ctx, c.rng.one_form(ctx.dim, 1));
    // symmetric-in-slots tensors trace to zero
    SecondDerivative sym;
    sym.dim = ctx.dim;
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j) sym.comp.push_back(ctx.zero_q());
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = i; j < ctx.dim; ++j) {
            QSection v = c.rng.q_section(ctx.dim, 1, 1);
            sym.comp[static_cast<size_t>(i) * ctx.dim + j] = v;
            sym.comp[static_cast<size_t>(j) * ctx.dim + i] = v;
        }
    c.require(is_zero(trace_b_tilde(ctx, b, sym)[0]) && is_zero(trace_b_tilde(ctx, b, sym)[1]) &&
                  is_zero(trace_b_tilde(ctx, b, sym)[2]),
              "symmetric slots contribute zero to the traced weight operator");
    // flat connection: D^2 symmetric, so the trace vanishes
    QSection a = c.rng.q_section(ctx.dim, std::min(c.cfg.degree, 2));
    SecondDerivative dd0 = second_covariant(flat_connection(ctx), a);
    QSection t0 = trace_b_tilde(ctx, b, dd0);
    c.require(is_zero(t0), "flat connection: traced weight of D^2 vanishes");
    // curvature display, polynomial alpha
    SecondDerivative dd = second_covariant(d, a);
    QSection lhs = trace_b_tilde(ctx, b, dd);
    QSection rhs = trace_b_tilde_curvature_form(d, curvature(d), a);
    QSection diff = ctx.zero_q();
    for (int bb = 0; bb < 3; ++bb) diff[bb] = lhs[bb] - rhs[bb];
    c.require(is_zero(diff), "traced weight operator equals the curvature double sum");
}

void weitzenbock(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    // constant nonzero alpha, A = J1: trace eta = -2 |alpha|^2
    PolyVec ca = ctx.zero_vec();
    for (int i = 0; i < ctx.dim; ++i)
        ca[static_cast<size_t>(i)] = Poly::constant(ctx.dim, c.rng.rat());
    QuatConnection dc = make_connection(ctx, ca);
    QSection aj1 = ctx.zero_q();
    aj1[0] = ctx.one();
    WeitzenbockReport repc = weitzenbock_checks(dc, aj1, b, pi_s3);
    c.require(repc.operator_identity, "B~(D^2 A) = 4 D^2 A - 6 D(P^D A), constant alpha");
    c.require(repc.trace_identity, "<trace B~(D^2A), A> = -8 |A|^2 trace(eta), constant alpha");
    c.require(repc.eta_trace_identity, "trace(eta) = -2 |alpha|^2, constant alpha");
    c.require(repc.symmetric_part_vanishes, "symmetric-part cancellation, constant alpha");
    c.require(repc.curvature_display_matches, "curvature display, constant alpha");
    // co-closed, non-closed polynomial alpha: x2 dx1 - x1 dx2 plus rotations
    PolyVec rot = ctx.zero_vec();
    rot[0] = Poly::variable(ctx.dim, 1);
    rot[1] = -Poly::variable(ctx.dim, 0);
    QuatConnection dr = make_connection(ctx, rot);
    QSection a = c.rng.q_section(ctx.dim, 1);
    WeitzenbockReport repr = weitzenbock_checks(dr, a, b, pi_s3);
    c.require(repr.operator_identity, "operator identity, co-closed alpha");
    c.require(repr.trace_identity, "trace identity, co-closed alpha");
    c.require(repr.eta_trace_identity, "trace(eta) = -2 |alpha|^2, co-closed alpha");
    c.require(repr.symmetric_part_vanishes, "symmetric-part cancellation, co-closed alpha");
    c.require(repr.curvature_display_matches, "curvature display, co-closed alpha");
    // trivial case
    QSection cst = ctx.zero_q();
    cst[2] = ctx.one();
    WeitzenbockReport rep0 = weitzenbock_checks(flat_connection(ctx), cst, b, pi_s3);
    c.require(rep0.operator_identity && rep0.trace_identity && rep0.eta_trace_identity,
              "alpha = 0, constant A: all three identities hold at zero");
}

void transform(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    auto units = certified_units();
    QuatConnection flat = flat_connection(ctx);
    RatMat kernel0 = penrose_kernel_affine(flat, pi_s3);

    int total = std::max(20, c.cfg.samples);
    int kernel_members = std::max(10, total / 10);
    int done = 0;
    // constructed kernel members: random rational combinations of the
    // affine kernel basis, checked at random points
    for (int t = 0; t < kernel_members; ++t, ++done) {
        RatMat combo(kernel0.rows(), 1, Rat(0));
        for (int col = 0; col < kernel0.cols(); ++col) {
            Rat w = make_rat(c.rng.pick(-3, 3));
            for (int row = 0; row < kernel0.rows(); ++row)
                combo(row, 0) += w * kernel0(row, col);
        }
        QSection a = affine_q_section(ctx, combo, 0);
        std::vector<Rat> p = c.rng.point(ctx.dim);
        TransformSample s = penrose_transform_sample(flat, a, pi_s3, units, p);
        c.require(s.penrose_vanishes, "constructed member lies in ker P^D");
        c.require(s.residuals_vanish, "constructed member is holomorphic for the certified set");
        c.require(s.agree, "biconditional on a kernel member");
        if (c.failed) return;
    }
    // self-dual connections with arbitrary sections: both directions
    int nonzero_sides = 0;
    for (; done < total; ++done) {
        QuatConnection d = (done % 3 == 0)
                               ? flat
                               : make_connection(ctx, self_dual_alpha(c.rng, ctx));
        QSection a = c.rng.q_section(ctx.dim, std::min(c.cfg.degree, 2));
        std::vector<Rat> p = c.rng.point(ctx.dim);
        TransformSample s = penrose_transform_sample(d, a, pi_s3, units, p);
        c.require(s.agree, "residuals vanish iff P^D A vanishes",
                  Json{{"p", json_point(p)}});
        if (!s.penrose_vanishes) ++nonzero_sides;
        if (c.failed) return;
    }
    c.require(nonzero_sides > 0, "sampled family includes non-members");
}

}  // namespace

void register_penrose(std::vector<Check>& out) {
    out.push_back({"penrose.routes", "P^D A = pi_s3(DA) = (4 DA - B(DA))/6", "penrose", routes});
    out.push_back({"penrose.second_derivative",
                   "(D^2 A)_{X,Y} - (D^2 A)_{Y,X} = [R_{X,Y}, A]; flat case symmetric",
                   "penrose", second_derivative});
    out.push_back({"penrose.trace_b_tilde",
                   "first-slot trace of Id (x) B; symmetric slots cancel; curvature double sum",
                   "penrose", trace_b_tilde_check});
    out.push_back({"penrose.weitzenbock",
                   "B~(D^2A) = 4 D^2A - 6 D(P^D A); trace identities at Scal = 0", "penrose",
                   weitzenbock});
    out.push_back({"penrose.transform",
                   "distinguished section holomorphic iff P^D A = 0 (pointwise certified set)",
                   "penrose", transform});
}

}  // namespace qtwist::checks
