#include "qtwist/hermtwist.hpp"

namespace qtwist {

namespace {

Rat pair_cov(const ModelContext& ctx, const QuatConnection& d, std::span<const Rat> p,
             const std::vector<Rat>& v) {
    Rat acc(0);
    for (int i = 0; i < ctx.dim; ++i)
        if (!is_zero(v[i])) acc += d.alpha[i].eval(p) * v[i];
    return acc;
}

Rat gdot(const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat acc(0);
    for (size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

std::vector<Rat> mat_apply(const RatMat& m, const std::vector<Rat>& v) {
    std::vector<Rat> r(static_cast<size_t>(m.rows()), Rat(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j)) && !is_zero(v[static_cast<size_t>(j)]))
                r[static_cast<size_t>(i)] += m(i, j) * v[static_cast<size_t>(j)];
    return r;
}

}  // namespace

Rat dg_display(const QuatConnection& d, std::span<const Rat> p, const std::vector<Rat>& x,
               const std::vector<Rat>& y, const std::vector<Rat>& v) {
    const ModelContext& ctx = d.model();
    Rat ax = pair_cov(ctx, d, p, x);
    Rat ay = pair_cov(ctx, d, p, y);
    Rat av = pair_cov(ctx, d, p, v);
    Rat acc = Rat(-2) * ax * gdot(y, v) - ay * gdot(x, v) - av * gdot(x, y);
    for (int a = 0; a < 3; ++a) {
        std::vector<Rat> jy = mat_apply(ctx.J(a), y);
        std::vector<Rat> jv = mat_apply(ctx.J(a), v);
        std::vector<Rat> jx = mat_apply(ctx.J(a), x);
        acc += pair_cov(ctx, d, p, jy) * gdot(jx, v) + pair_cov(ctx, d, p, jv) * gdot(jx, y);
    }
    return acc;
}

Rat dg_first_principles(const QuatConnection& d, std::span<const Rat> p,
                        const std::vector<Rat>& x, const std::vector<Rat>& y,
                        const std::vector<Rat>& v) {
    const ModelContext& ctx = d.model();
    std::vector<Rat> aval(static_cast<size_t>(ctx.dim));
    for (int i = 0; i < ctx.dim; ++i) aval[static_cast<size_t>(i)] = d.alpha[i].eval(p);
    RatMat s = s_alpha(ctx, aval, x);
    return -gdot(mat_apply(s, y), v) - gdot(y, mat_apply(s, v));
}

Rat d_omega_hhh(const QuatConnection& d, const TwistorPoint& z, const std::vector<Rat>& x,
                const std::vector<Rat>& y, const std::vector<Rat>& v) {
    const ModelContext& ctx = d.model();
    RatMat ju = j_matrix(ctx, z.u);
    return dg_display(d, z.p, x, v, mat_apply(ju, y)) +
           dg_display(d, z.p, y, x, mat_apply(ju, v)) +
           dg_display(d, z.p, v, y, mat_apply(ju, x));
}

Rat d_omega_vhh(const QuatConnection& d, const CurvatureField& r, const TwistorPoint& z,
                const Vec3& a, const std::vector<Rat>& x, const std::vector<Rat>& y) {
    const ModelContext& ctx = d.model();
    if (!is_zero(dot(a, z.u)))
        throw std::invalid_argument("d_omega_vhh: a must be tangent to the fiber");
    RatMat am = q_matrix(ctx, a);
    Rat g_axy = gdot(mat_apply(am, x), y);
    // [R^D_{X,Y}, J_u] at p, expanded exactly in the J basis
    RatMat rxy(ctx.dim, ctx.dim, Rat(0));
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j) {
            if (i == j || is_zero(x[i]) || is_zero(y[j])) continue;
            RatMat rij = ctx.eval(r.at(ctx, i, j), z.p);
            rxy = rxy + scale(x[i] * y[j], rij);
        }
    RatMat ju = j_matrix(ctx, z.u);
    Vec3 bracket = q_coords(ctx, rxy * ju - ju * rxy);
    Vec3 ja = q_coords(ctx, ju * am);  // J A for a perpendicular to u
    return g_axy - dot(bracket, ja);
}

Rat torsion_form_horizontal(const QuatConnection& d, const TwistorPoint& z,
                            const std::vector<Rat>& x) {
    const ModelContext& ctx = d.model();
    RatMat ju = j_matrix(ctx, z.u);
    Rat acc(0);
    std::vector<Rat> ek(static_cast<size_t>(ctx.dim), Rat(0));
    for (int k = 0; k < ctx.dim; ++k) {
        std::fill(ek.begin(), ek.end(), Rat(0));
        ek[static_cast<size_t>(k)] = Rat(1);
        acc -= d_omega_hhh(d, z, ek, mat_apply(ju, ek), x);
    }
    // vertical frame pairs contribute d Omega(b, Jb, X~) = 0
    return acc;
}

Rat torsion_form_vertical(const QuatConnection& d, const CurvatureField& r,
                          const TwistorPoint& z, const Vec3& a) {
    const ModelContext& ctx = d.model();
    RatMat ju = j_matrix(ctx, z.u);
    Rat acc(0);
    std::vector<Rat> ek(static_cast<size_t>(ctx.dim), Rat(0));
    for (int k = 0; k < ctx.dim; ++k) {
        std::fill(ek.begin(), ek.end(), Rat(0));
        ek[static_cast<size_t>(k)] = Rat(1);
        // d Omega(X~, JX~, a) = d Omega(a, X~, JX~) by cyclic symmetry
        acc -= d_omega_vhh(d, r, z, a, ek, mat_apply(ju, ek));
    }
    return acc;
}

std::pair<Rat, Rat> sums_identity_sides(const ModelContext& ctx, const RatMat& eta,
                                        const Vec3& u, int i) {
    RatMat ju = j_matrix(ctx, u);
    Rat lhs(0), rhs(0);
    std::vector<Rat> xk(static_cast<size_t>(ctx.dim), Rat(0));
    for (int k = 0; k < ctx.dim; ++k) {
        std::fill(xk.begin(), xk.end(), Rat(0));
        xk[static_cast<size_t>(k)] = Rat(1);
        std::vector<Rat> jxk = mat_apply(ju, xk);
        RatMat re = r_eta(ctx, eta, xk, jxk);
        lhs += (ctx.J(i) * re).trace();
        // eta(J X_k, J_i X_k)
        std::vector<Rat> jixk = mat_apply(ctx.J(i), xk);
        for (int pp = 0; pp < ctx.dim; ++pp)
            for (int qq = 0; qq < ctx.dim; ++qq)
                if (!is_zero(eta(pp, qq)))
                    rhs += jxk[static_cast<size_t>(pp)] * eta(pp, qq) *
                           jixk[static_cast<size_t>(qq)];
    }
    return {lhs, Rat(8 * ctx.n) * rhs};
}

PiScalar chern_pairing_components(const QuatConnection& d, const CurvatureField& r,
                                  const std::vector<Rat>& p, const SpherePoint& sp) {
    const ModelContext& ctx = d.model();
    if (!predicates(d).is_closed)
        throw std::invalid_argument("chern_pairing_components: D must be closed");
    const int nf = ctx.dim + 2;
    RatMat ju = j_matrix(ctx, sp.u);
    // gamma (times pi) and Omega_g over the frame.
    RatMat gamma(nf, nf, Rat(0)), om(nf, nf, Rat(0));
    std::vector<Rat> ek(static_cast<size_t>(ctx.dim), Rat(0));
    for (int k = 0; k < ctx.dim; ++k)
        for (int l = 0; l < ctx.dim; ++l) {
            if (k == l) continue;
            RatMat rkl = ctx.eval(r.at(ctx, k, l), p);
            gamma(k, l) = Rat(1, 4 * ctx.n) * (ju * rkl).trace();
            om(k, l) = ju(l, k);  // g(J e_k, e_l)
        }
    // vertical block in the fiber frame (b1, b2): area form is +1
    gamma(ctx.dim, ctx.dim + 1) = Rat(1, 2);
    gamma(ctx.dim + 1, ctx.dim) = Rat(-1, 2);
    om(ctx.dim, ctx.dim + 1) = Rat(1);
    om(ctx.dim + 1, ctx.dim) = Rat(-1);
    Rat acc(0);
    for (int k = 0; k < nf; ++k)
        for (int l = k + 1; l < nf; ++l) acc += gamma(k, l) * om(k, l);
    return {acc};
}

PiScalar chern_pairing_closed_form(const QuatConnection& d, std::span<const Rat> p) {
    const ModelContext& ctx = d.model();
    Rat a2(0);
    for (int i = 0; i < ctx.dim; ++i) {
        Rat v = d.alpha[i].eval(p);
        a2 += v * v;
    }
    return {Rat(1, 2) - Rat(2) * a2};
}

PiScalar chern_pairing_horizontal(const QuatConnection& d, const CurvatureField& r,
                                  const std::vector<Rat>& p, const Vec3& u) {
    const ModelContext& ctx = d.model();
    RatMat ju = j_matrix(ctx, u);
    Rat acc(0);
    for (int k = 0; k < ctx.dim; ++k) {
        // gamma(X_k~, (J X_k)~) = 1/(4 n pi) tr(J R_{X_k, J X_k})
        std::vector<Rat> ek(static_cast<size_t>(ctx.dim), Rat(0));
        ek[static_cast<size_t>(k)] = Rat(1);
        std::vector<Rat> jek = mat_apply(ju, ek);
        RatMat rk(ctx.dim, ctx.dim, Rat(0));
        for (int i = 0; i < ctx.dim; ++i)
            for (int j = 0; j < ctx.dim; ++j) {
                if (i == j || is_zero(ek[static_cast<size_t>(i)]) ||
                    is_zero(jek[static_cast<size_t>(j)]))
                    continue;
                rk = rk + scale(ek[static_cast<size_t>(i)] * jek[static_cast<size_t>(j)],
                                ctx.eval(r.at(ctx, i, j), p));
            }
        acc += Rat(1, 4 * ctx.n) * (ju * rk).trace();
    }
    return {Rat(1, 2) * acc};
}

}  // namespace qtwist
