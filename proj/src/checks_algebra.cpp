#include "checks_common.hpp"

#include <cmath>

namespace qtwist::checks {

namespace {

void basis_relations(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    try {
        validate_admissible_basis(ctx);
    } catch (const std::exception& e) {
        c.require(false, e.what());
        return;
    }
    // n = 3 instance as well, independent of the configured n
    try {
        validate_admissible_basis(build_flat_model(3));
    } catch (const std::exception& e) {
        c.require(false, std::string("n=3: ") + e.what());
        return;
    }
    bool rejected = false;
    try {
        build_flat_model(1);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    c.require(rejected, "n < 2 must be rejected");
}

void exterior_calculus(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    // d(x2 dx1) = -dx1 ^ dx2
    PolyVec a = ctx.zero_vec();
    a[0] = Poly::variable(d, 1);
    PolyMat da = exterior_derivative1(a);
    c.require(da(0, 1) == Poly::constant(d, Rat(-1)), "d(x2 dx1)(e1, e2) = -1");
    // d(df) = 0 for f = x1 x3 and for random polynomials
    for (int t = 0; t < 8; ++t) {
        Poly f = (t == 0) ? Poly::variable(d, 0) * Poly::variable(d, 2)
                          : c.rng.poly(d, std::min(c.cfg.degree + 1, 3), 4);
        PolyMat ddf = exterior_derivative1(exterior_derivative0(f));
        c.require(is_zero(ddf), "d(df) = 0", Json{{"f", json_poly(f)}});
    }
    // d(d(alpha)) = 0 for random 1-forms
    for (int t = 0; t < 4; ++t) {
        PolyVec w = c.rng.one_form(d, std::min(c.cfg.degree + 1, 3));
        ThreeForm dda = exterior_derivative2(exterior_derivative1(w));
        c.require(is_zero(dda), "d(d(alpha)) = 0", Json{{"alpha", json_one_form(w)}});
    }
    // d of a constant 1-form
    PolyVec k = ctx.zero_vec();
    for (int i = 0; i < d; ++i) k[static_cast<size_t>(i)] = Poly::constant(d, c.rng.rat());
    c.require(is_zero(exterior_derivative1(k)), "d(constant 1-form) = 0");
}

void codifferential_check(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    PolyVec constant = ctx.zero_vec();
    for (int i = 0; i < d; ++i) constant[static_cast<size_t>(i)] = Poly::constant(d, c.rng.rat());
    c.require(codifferential(constant).is_zero(), "delta(constant) = 0");
    PolyVec x1dx1 = ctx.zero_vec();
    x1dx1[0] = Poly::variable(d, 0);
    c.require(codifferential(x1dx1) == Poly::constant(d, Rat(-1)), "delta(x1 dx1) = -1");
    PolyVec rot = ctx.zero_vec();
    rot[0] = Poly::variable(d, 1);
    rot[1] = -Poly::variable(d, 0);
    c.require(codifferential(rot).is_zero() && !is_zero(exterior_derivative1(rot)),
              "x2 dx1 - x1 dx2 is co-closed but not closed");
}

void ph_projector(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    c.require(p_h_project(ctx, ctx.g) == ctx.g, "P_h(g) = g");
    for (int t = 0; t < 6; ++t) {
        RatMat eta = c.rng.rat_matrix(ctx.dim, ctx.dim);
        RatMat once = p_h_project(ctx, eta);
        c.require(p_h_project(ctx, once) == once, "P_h idempotent");
        c.require(is_q_hermitian(ctx, once), "P_h range is Q-hermitian");
        if (is_q_hermitian(ctx, eta))
            c.require(once == eta, "P_h fixes Q-hermitian forms");
    }
    // P_h of the Kaehler-type 2-form of J1 against the brute-force sum
    RatMat omega1 = ctx.J(0).transpose();  // omega1(X, Y) = g(J1 X, Y)
    RatMat lhs = p_h_project(ctx, omega1);
    RatMat brute(ctx.dim, ctx.dim, Rat(0));
    for (int x = 0; x < ctx.dim; ++x)
        for (int y = 0; y < ctx.dim; ++y) {
            Rat acc = omega1(x, y);
            for (int a = 0; a < 3; ++a) {
                // eta(J_a e_x, J_a e_y) summed entrywise
                Rat term(0);
                for (int p = 0; p < ctx.dim; ++p)
                    for (int q = 0; q < ctx.dim; ++q)
                        if (!is_zero(ctx.J(a)(p, x)) && !is_zero(ctx.J(a)(q, y)))
                            term += ctx.J(a)(p, x) * omega1(p, q) * ctx.J(a)(q, y);
                acc += term;
            }
            brute(x, y) = acc / Rat(4);
        }
    c.require(lhs == brute, "P_h(omega1) equals the basis-pair evaluation of the sum");
}

void q_hermitian_pred(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    c.require(is_q_hermitian(ctx, ctx.g), "g is Q-hermitian");
    RatMat omega1 = ctx.J(0).transpose();
    c.require(!is_q_hermitian(ctx, omega1), "omega1 = g(J1 ., .) is not Q-hermitian");
    for (int t = 0; t < 6; ++t) {
        RatMat f = c.rng.rat_matrix(ctx.dim, ctx.dim);
        c.require(is_q_hermitian(ctx, p_h_project(ctx, f)), "P_h output passes the predicate");
    }
    // polynomial fields are tested per monomial
    PolyMat field = ctx.zero_mat();
    field(0, 1) = Poly::variable(ctx.dim, 0);
    c.require(!is_q_hermitian(ctx, field), "monomial-wise test catches non-hermitian fields");
    c.require(is_q_hermitian(ctx, p_h_project(ctx, field)), "monomial-wise test accepts P_h output");
}

void eval_precision(CheckContext& c) {
    ModelContext ctx = model_for(c.cfg);
    const int d = ctx.dim;
    for (int t = 0; t < 16; ++t) {
        Poly p(d);
        for (int k = 0; k < 5; ++k) {
            Mono m(static_cast<size_t>(d), 0);
            int td = static_cast<int>(c.rng.pick(0, 3));
            for (int e = 0; e < td; ++e) m[static_cast<size_t>(c.rng.pick(0, d - 1))] += 1;
            // coefficients of magnitude up to 2^10
            p.add_term(m, make_rat(c.rng.pick(-1024, 1024), c.rng.pick(1, 64)));
        }
        std::vector<Rat> pt(static_cast<size_t>(d));
        std::vector<double> ptd(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            pt[static_cast<size_t>(i)] = make_rat(c.rng.pick(-1024, 1024), c.rng.pick(1, 32));
            ptd[static_cast<size_t>(i)] = to_double(pt[static_cast<size_t>(i)]);
        }
        double exact = to_double(p.eval(pt));
        double approx = p.eval_double(ptd);
        double denom = std::max(std::abs(exact), 1.0);
        double rel = std::abs(exact - approx) / denom;
        c.require(rel <= std::ldexp(1.0, -40), "rational and double evaluation agree to 2^-40",
                  Json{{"rel_error", rel}});
    }
}

}  // namespace

void register_algebra(std::vector<Check>& out) {
    out.push_back({"algebra.basis_relations",
                   "J_a^2 = -Id, J1 J2 = J3 = -J2 J1, J_a orthogonal, <J_a,J_b> = delta_ab",
                   "algebra", basis_relations});
    out.push_back({"algebra.exterior_calculus", "d(d(omega)) = 0; d(x2 dx1) = -dx1^dx2",
                   "algebra", exterior_calculus});
    out.push_back({"algebra.codifferential", "delta(alpha) = -sum_i d_i(alpha_i)", "algebra",
                   codifferential_check});
    out.push_back({"algebra.ph_projector",
                   "P_h(eta) = 1/4(eta + sum_i eta(J_i., J_i.)) is the idempotent onto "
                   "Q-hermitian forms",
                   "algebra", ph_projector});
    out.push_back({"algebra.q_hermitian", "F Q-hermitian iff F(J_a X, J_a Y) = F(X,Y), a=1,2,3",
                   "algebra", q_hermitian_pred});
    out.push_back({"algebra.eval_precision",
                   "exact evaluation matches double evaluation to relative error 2^-40",
                   "algebra", eval_precision});
}

}  // namespace qtwist::checks
