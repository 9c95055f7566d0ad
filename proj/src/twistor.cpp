#include "qtwist/twistor.hpp"

#include <stdexcept>

namespace qtwist {

SpherePoint::SpherePoint(Vec3 u_, Vec3 b1_) : u(std::move(u_)), b1(std::move(b1_)) {
    if (dot(u, u) != Rat(1)) throw std::invalid_argument("SpherePoint: |u| != 1");
    if (dot(b1, b1) != Rat(1)) throw std::invalid_argument("SpherePoint: |b1| != 1");
    if (!is_zero(dot(u, b1))) throw std::invalid_argument("SpherePoint: b1 not tangent");
    b2 = cross(u, b1);
}

const std::vector<SpherePoint>& sphere_point_table() {
    static const std::vector<SpherePoint> table = [] {
        auto r = [](long n, long d = 1) { return make_rat(n, d); };
        std::vector<SpherePoint> t;
        // axis points
        t.emplace_back(Vec3{r(1), r(0), r(0)}, Vec3{r(0), r(1), r(0)});
        t.emplace_back(Vec3{r(-1), r(0), r(0)}, Vec3{r(0), r(0), r(1)});
        t.emplace_back(Vec3{r(0), r(1), r(0)}, Vec3{r(0), r(0), r(1)});
        t.emplace_back(Vec3{r(0), r(-1), r(0)}, Vec3{r(1), r(0), r(0)});
        t.emplace_back(Vec3{r(0), r(0), r(1)}, Vec3{r(1), r(0), r(0)});
        t.emplace_back(Vec3{r(0), r(0), r(-1)}, Vec3{r(0), r(1), r(0)});
        // Pythagorean points with rational tangent frames
        t.emplace_back(Vec3{r(3, 5), r(4, 5), r(0)}, Vec3{r(-4, 5), r(3, 5), r(0)});
        t.emplace_back(Vec3{r(-3, 5), r(0), r(4, 5)}, Vec3{r(4, 5), r(0), r(3, 5)});
        t.emplace_back(Vec3{r(0), r(-4, 5), r(3, 5)}, Vec3{r(0), r(3, 5), r(4, 5)});
        t.emplace_back(Vec3{r(4, 5), r(-3, 5), r(0)}, Vec3{r(3, 5), r(4, 5), r(0)});
        t.emplace_back(Vec3{r(1, 3), r(2, 3), r(2, 3)}, Vec3{r(2, 3), r(1, 3), r(-2, 3)});
        t.emplace_back(Vec3{r(2, 3), r(-1, 3), r(2, 3)}, Vec3{r(2, 3), r(2, 3), r(-1, 3)});
        t.emplace_back(Vec3{r(2, 7), r(3, 7), r(6, 7)}, Vec3{r(6, 7), r(2, 7), r(-3, 7)});
        t.emplace_back(Vec3{r(-6, 7), r(2, 7), r(3, 7)}, Vec3{r(3, 7), r(6, 7), r(2, 7)});
        t.emplace_back(Vec3{r(1, 9), r(4, 9), r(8, 9)}, Vec3{r(4, 9), r(7, 9), r(-4, 9)});
        t.emplace_back(Vec3{r(4, 9), r(4, 9), r(7, 9)}, Vec3{r(1, 9), r(-8, 9), r(4, 9)});
        t.emplace_back(Vec3{r(8, 9), r(-1, 9), r(4, 9)}, Vec3{r(4, 9), r(4, 9), r(-7, 9)});
        t.emplace_back(Vec3{r(2, 11), r(6, 11), r(9, 11)}, Vec3{r(6, 11), r(7, 11), r(-6, 11)});
        return t;
    }();
    return table;
}

TwistorPoint::TwistorPoint(std::vector<Rat> p_, Vec3 u_) : p(std::move(p_)), u(std::move(u_)) {
    if (dot(u, u) != Rat(1)) throw std::invalid_argument("TwistorPoint: |u| != 1");
}

TwistorTangent::TwistorTangent(std::vector<Rat> x_, const Vec3& u, Vec3 w_)
    : x(std::move(x_)), w(std::move(w_)) {
    if (!is_zero(dot(u, w))) throw std::invalid_argument("TwistorTangent: W not tangent at u");
}

Vec3 pi_project(const Vec3& u, const Vec3& a) { return a - dot(a, u) * u; }

RatMat j_matrix(const ModelContext& ctx, const Vec3& u) { return q_matrix(ctx, u); }

RatMat pi_project_matrix(const ModelContext& ctx, const Vec3& u, const RatMat& a) {
    RatMat j = j_matrix(ctx, u);
    return scale(Rat(1, 2), a + j * a * j);
}

Vec3 vertical_part(const QuatConnection& d, const TwistorPoint& z, const TwistorTangent& t) {
    RatMat g = gamma_q_at(d, t.x, z.p);
    Vec3 gu{Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gu[i] += g(i, j) * z.u[j];
    return t.w + gu;
}

TwistorTangent horizontal_lift(const QuatConnection& d, const TwistorPoint& z,
                               const std::vector<Rat>& x) {
    RatMat g = gamma_q_at(d, x, z.p);
    Vec3 gu{Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gu[i] += g(i, j) * z.u[j];
    return TwistorTangent(x, z.u, -gu);
}

Vec3 nabla_distinguished(const QuatConnection& d, const QSection& a, const TwistorPoint& z,
                         const TwistorTangent& t) {
    const ModelContext& ctx = d.model();
    // D_X A in Q coordinates at p
    Vec3 da{Rat(0), Rat(0), Rat(0)};
    for (int j = 0; j < ctx.dim; ++j) {
        if (is_zero(t.x[j])) continue;
        QSection dj = covariant_q(d, a, j);
        for (int b = 0; b < 3; ++b) da[b] += t.x[j] * dj[b].eval(z.p);
    }
    Vec3 aval = ctx.eval(a, z.p);
    return pi_project(z.u, da) - dot(z.u, aval) * vertical_part(d, z, t);
}

Vec3 SectionField::value(const TwistorPoint& z) const {
    std::vector<Rat> vars(z.p.begin(), z.p.end());
    vars.push_back(z.u[0]);
    vars.push_back(z.u[1]);
    vars.push_back(z.u[2]);
    return {c[0].eval(vars), c[1].eval(vars), c[2].eval(vars)};
}

SectionField project_section(const ModelContext& ctx, const std::array<Poly, 3>& ambient) {
    const int nv = ctx.dim + 3;
    std::array<Poly, 3> uvar{Poly::variable(nv, ctx.dim), Poly::variable(nv, ctx.dim + 1),
                             Poly::variable(nv, ctx.dim + 2)};
    Poly cu = ambient[0] * uvar[0] + ambient[1] * uvar[1] + ambient[2] * uvar[2];
    SectionField s;
    s.dim = ctx.dim;
    for (int i = 0; i < 3; ++i) s.c[i] = ambient[i] - cu * uvar[i];
    return s;
}

SectionField distinguished_section(const ModelContext& ctx, const QSection& a) {
    const int nv = ctx.dim + 3;
    std::array<Poly, 3> amb{a[0].lift(nv), a[1].lift(nv), a[2].lift(nv)};
    return project_section(ctx, amb);
}

SectionField j_section(const SectionField& s) {
    const int nv = s.nvars();
    std::array<Poly, 3> uvar{Poly::variable(nv, s.dim), Poly::variable(nv, s.dim + 1),
                             Poly::variable(nv, s.dim + 2)};
    SectionField r;
    r.dim = s.dim;
    r.c[0] = uvar[1] * s.c[2] - uvar[2] * s.c[1];
    r.c[1] = uvar[2] * s.c[0] - uvar[0] * s.c[2];
    r.c[2] = uvar[0] * s.c[1] - uvar[1] * s.c[0];
    return r;
}

SectionField scale_section(const Poly& base_fn, const SectionField& s) {
    SectionField r = s;
    Poly f = base_fn.nvars() == s.nvars() ? base_fn : base_fn.lift(s.nvars());
    for (int i = 0; i < 3; ++i) r.c[i] = f * s.c[i];
    return r;
}

Vec3 nabla_section(const QuatConnection& d, const SectionField& s, const TwistorPoint& z,
                   const TwistorTangent& t) {
    const ModelContext& ctx = d.model();
    std::vector<Rat> vars(z.p.begin(), z.p.end());
    vars.push_back(z.u[0]);
    vars.push_back(z.u[1]);
    vars.push_back(z.u[2]);
    // U(s): directional derivative of the ambient formula along (X, W)
    Vec3 us{Rat(0), Rat(0), Rat(0)};
    for (int comp = 0; comp < 3; ++comp) {
        Rat acc(0);
        for (int i = 0; i < ctx.dim; ++i) {
            if (is_zero(t.x[i])) continue;
            acc += t.x[i] * s.c[comp].derivative(i).eval(vars);
        }
        for (int k = 0; k < 3; ++k) {
            if (is_zero(t.w[k])) continue;
            acc += t.w[k] * s.c[comp].derivative(ctx.dim + k).eval(vars);
        }
        us[comp] = std::move(acc);
    }
    // Gamma(X) s
    RatMat g = gamma_q_at(d, t.x, z.p);
    Vec3 sval = s.value(z);
    Vec3 gs{Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gs[i] += g(i, j) * sval[j];
    return pi_project(z.u, us + gs);
}

TwistorTangent j_tangent(const ModelContext& ctx, const TwistorPoint& z,
                         const TwistorTangent& t) {
    RatMat ju = j_matrix(ctx, z.u);
    std::vector<Rat> jx(ctx.dim, Rat(0));
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j) jx[i] += ju(i, j) * t.x[j];
    return TwistorTangent(std::move(jx), z.u, cross(z.u, t.w));
}

Vec3 dbar_section(const QuatConnection& d, const SectionField& s, const TwistorPoint& z,
                  const TwistorTangent& t) {
    const ModelContext& ctx = d.model();
    Vec3 n1 = nabla_section(d, s, z, t);
    Vec3 n2 = nabla_section(d, s, z, j_tangent(ctx, z, t));
    return Rat(1, 2) * (n1 + cross(z.u, n2));
}

Vec3 curvature_nabla(const QuatConnection& d, const CurvatureField& r, const TwistorPoint& z,
                     const TwistorTangent& tu, const TwistorTangent& tv, const Vec3& a) {
    const ModelContext& ctx = d.model();
    // horizontal-horizontal: Pi_J([R_{X_U, X_V}, A])
    Vec3 omega_r{Rat(0), Rat(0), Rat(0)};
    // [R_{X,Y}, A] in coordinates is Omega(X, Y) x a with
    // Omega_i = -1/(2n) tr(J_i R); assemble Omega(X_U, X_V) directly from R.
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j) {
            if (i == j || is_zero(tu.x[i]) || is_zero(tv.x[j])) continue;
            RatMat rij = ctx.eval(r.at(ctx, i, j), z.p);
            for (int bb = 0; bb < 3; ++bb) {
                Rat tr(0);
                for (int pp = 0; pp < ctx.dim; ++pp)
                    for (int qq = 0; qq < ctx.dim; ++qq)
                        if (!is_zero(ctx.J(bb)(pp, qq))) tr += ctx.J(bb)(pp, qq) * rij(qq, pp);
                omega_r[bb] += tu.x[i] * tv.x[j] * Rat(-1, 2 * ctx.n) * tr;
            }
        }
    Vec3 hor = pi_project(z.u, cross(omega_r, a));
    // vertical-vertical: -Omega_p(v(U), v(V)) J A with the area form
    Vec3 vu = vertical_part(d, z, tu);
    Vec3 vv = vertical_part(d, z, tv);
    Rat area = dot(z.u, cross(vu, vv));
    return hor - area * cross(z.u, a);
}

QSection chern_condition_residual(const QuatConnection& d, const CurvatureField& r,
                                  const Vec3& u, int bx, int by, const Vec3& a) {
    const ModelContext& ctx = d.model();
    if (!is_zero(dot(u, a)))
        throw std::invalid_argument("chern_condition_residual: A must be orthogonal to J");
    RatMat ju = j_matrix(ctx, u);
    // R_{J X, J Y} - R_{X, Y} contracted over basis columns of J
    PolyMat big = ctx.zero_mat();
    for (int i = 0; i < ctx.dim; ++i) {
        if (is_zero(ju(i, bx))) continue;
        for (int j = 0; j < ctx.dim; ++j) {
            if (is_zero(ju(j, by)) || i == j) continue;
            PolyMat rij = r.at(ctx, i, j);
            for (int pp = 0; pp < ctx.dim; ++pp)
                for (int qq = 0; qq < ctx.dim; ++qq)
                    if (!rij(pp, qq).is_zero())
                        big(pp, qq) += ju(i, bx) * ju(j, by) * rij(pp, qq);
        }
    }
    big = big - r.at(ctx, bx, by);
    // [big, A], then fiber projection; expand in Q coordinates per entry.
    PolyMat am = ctx.lift(q_matrix(ctx, a));
    PolyMat bracket = big * am - am * big;
    QSection out = ctx.zero_q();
    // coordinates of the bracket in the J basis (exact: bracket lies in Q);
    // <J_b, M> = tr(J_b^T M)/4n = -tr(J_b M)/4n
    for (int bb = 0; bb < 3; ++bb) {
        Poly tr = ctx.zero();
        for (int pp = 0; pp < ctx.dim; ++pp)
            for (int qq = 0; qq < ctx.dim; ++qq)
                if (!is_zero(ctx.J(bb)(pp, qq))) tr += bracket(qq, pp) * ctx.J(bb)(pp, qq);
        out[bb] = Rat(-1, ctx.dim) * tr;
    }
    // verify the expansion reproduces the bracket (values in Q)
    PolyMat recon = ctx.zero_mat();
    for (int bb = 0; bb < 3; ++bb)
        for (int pp = 0; pp < ctx.dim; ++pp)
            for (int qq = 0; qq < ctx.dim; ++qq)
                if (!is_zero(ctx.J(bb)(pp, qq))) recon(pp, qq) += out[bb] * ctx.J(bb)(pp, qq);
    if (!is_zero(recon - bracket))
        throw std::domain_error("chern_condition_residual: bracket not in Q");
    // fiber projection kills the u-component
    Poly ucomp = ctx.zero();
    for (int bb = 0; bb < 3; ++bb) ucomp += out[bb] * u[bb];
    for (int bb = 0; bb < 3; ++bb) out[bb] -= ucomp * u[bb];
    return out;
}

Vec3 nabla_difference_lhs(const QuatConnection& d, const QuatConnection& d_prime,
                          const QSection& a, const TwistorPoint& z, const TwistorTangent& t) {
    return nabla_distinguished(d_prime, a, z, t) - nabla_distinguished(d, a, z, t);
}

Vec3 nabla_difference_rhs(const ModelContext& ctx, const PolyVec& alpha, const QSection& a,
                          const TwistorPoint& z, const TwistorTangent& t) {
    // -2 alpha(J_u X) J(A~), alpha the difference 1-form of the two
    // connections.
    RatMat ju = j_matrix(ctx, z.u);
    Rat ajx(0);
    for (int i = 0; i < ctx.dim; ++i) {
        Rat jx(0);
        for (int j = 0; j < ctx.dim; ++j) jx += ju(i, j) * t.x[j];
        if (!is_zero(jx)) ajx += alpha[static_cast<size_t>(i)].eval(z.p) * jx;
    }
    Vec3 atilde = pi_project(z.u, ctx.eval(a, z.p));
    return Rat(-2) * ajx * cross(z.u, atilde);
}

Vec3 beta_twist_term(const ModelContext& ctx, const PolyVec& beta, const TwistorPoint& z,
                     const TwistorTangent& t, const Vec3& s_val) {
    Rat bx(0);
    for (int i = 0; i < ctx.dim; ++i)
        if (!is_zero(t.x[i])) bx += beta[i].eval(z.p) * t.x[i];
    return bx * cross(z.u, s_val);
}

namespace {

void require_hermitian_twist(const ModelContext& ctx, const PolyVec& beta) {
    if (!is_q_hermitian(ctx, exterior_derivative1(beta)))
        throw std::invalid_argument("beta twist: d(beta) is not Q-hermitian");
}

}  // namespace

Vec3 nabla_twisted(const QuatConnection& d, const PolyVec& beta, const SectionField& s,
                   const TwistorPoint& z, const TwistorTangent& t) {
    require_hermitian_twist(d.model(), beta);
    return nabla_section(d, s, z, t) +
           beta_twist_term(d.model(), beta, z, t, s.value(z));
}

Vec3 beta_tilde(const ModelContext& ctx, const PolyVec& beta, const TwistorPoint& z,
                const TwistorTangent& t, const Vec3& s_val) {
    RatMat ju = j_matrix(ctx, z.u);
    Rat bx(0), bjx(0);
    for (int i = 0; i < ctx.dim; ++i) {
        if (!is_zero(t.x[i])) bx += beta[i].eval(z.p) * t.x[i];
        Rat jx(0);
        for (int j = 0; j < ctx.dim; ++j) jx += ju(i, j) * t.x[j];
        if (!is_zero(jx)) bjx += beta[i].eval(z.p) * jx;
    }
    return Rat(1, 2) * (bx * cross(z.u, s_val) - bjx * s_val);
}

Vec3 curvature_twisted(const QuatConnection& d, const CurvatureField& r, const PolyVec& beta,
                       const TwistorPoint& z, const TwistorTangent& tu,
                       const TwistorTangent& tv, const Vec3& a) {
    const ModelContext& ctx = d.model();
    require_hermitian_twist(ctx, beta);
    Vec3 base = curvature_nabla(d, r, z, tu, tv, a);
    PolyMat db = exterior_derivative1(beta);
    Rat val(0);
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j)
            if (!is_zero(tu.x[i]) && !is_zero(tv.x[j]) && !db(i, j).is_zero())
                val += tu.x[i] * tv.x[j] * db(i, j).eval(z.p);
    return base + val * cross(z.u, a);
}

Vec3 gauge_transformed_nabla(const QuatConnection& d, const SectionField& s, const Poly& rho,
                             const Poly& theta, const TwistorPoint& z,
                             const TwistorTangent& t) {
    const ModelContext& ctx = d.model();
    const int nv = ctx.dim + 3;
    std::vector<Rat> vars(z.p.begin(), z.p.end());
    vars.push_back(z.u[0]);
    vars.push_back(z.u[1]);
    vars.push_back(z.u[2]);
    Poly rho_l = rho.nvars() == nv ? rho : rho.lift(nv);
    Poly theta_l = theta.nvars() == nv ? theta : theta.lift(nv);
    Rat rho_val = rho_l.eval(vars);
    if (sgn(rho_val) <= 0)
        throw std::invalid_argument("gauge_transformed_nabla: rho is not positive at the point");
    auto dfield = [&](const Poly& f, const TwistorTangent& tt) {
        Rat acc(0);
        for (int i = 0; i < ctx.dim; ++i)
            if (!is_zero(tt.x[i])) acc += tt.x[i] * f.derivative(i).eval(vars);
        for (int k = 0; k < 3; ++k)
            if (!is_zero(tt.w[k])) acc += tt.w[k] * f.derivative(ctx.dim + k).eval(vars);
        return acc;
    };
    TwistorTangent jt = j_tangent(ctx, z, t);
    // d^J log rho (U) = -(d rho)(J U) / rho
    Rat coeff = -dfield(rho_l, jt) / rho_val - dfield(theta_l, t);
    return nabla_section(d, s, z, t) + coeff * cross(z.u, s.value(z));
}

PolyMat holomorphicity_residual(const QuatConnection& d, const QSection& a, const Vec3& u,
                                int bx) {
    const ModelContext& ctx = d.model();
    RatMat ju_r = j_matrix(ctx, u);
    PolyMat ju = ctx.lift(ju_r);
    // D_X A and D_{JX} A as matrix-valued fields
    auto dmat = [&](const std::vector<Rat>& x) {
        QSection acc = ctx.zero_q();
        for (int j = 0; j < ctx.dim; ++j) {
            if (is_zero(x[j])) continue;
            QSection dj = covariant_q(d, a, j);
            for (int b = 0; b < 3; ++b) acc[b] += x[j] * dj[b];
        }
        return q_matrix(ctx, acc);
    };
    std::vector<Rat> ex(ctx.dim, Rat(0));
    ex[bx] = Rat(1);
    std::vector<Rat> jx(ctx.dim, Rat(0));
    for (int i = 0; i < ctx.dim; ++i) jx[i] = ju_r(i, bx);
    PolyMat dxa = dmat(ex);
    PolyMat djxa = dmat(jx);
    // <M, J_u> = tr(J_u^T M)/4n = -tr(J_u M)/4n
    auto qdot = [&](const PolyMat& m) {
        Poly tr = ctx.zero();
        for (int pp = 0; pp < ctx.dim; ++pp)
            for (int qq = 0; qq < ctx.dim; ++qq)
                if (!is_zero(ju_r(pp, qq))) tr += m(qq, pp) * ju_r(pp, qq);
        return Rat(-1, ctx.dim) * tr;
    };
    Poly c1 = qdot(djxa);
    Poly c2 = qdot(dxa);
    PolyMat res = djxa - ju * dxa;
    for (int pp = 0; pp < ctx.dim; ++pp) {
        res(pp, pp) -= c2;
        for (int qq = 0; qq < ctx.dim; ++qq) res(pp, qq) -= c1 * ju_r(pp, qq);
    }
    return res;
}

PolyMat holomorphicity_residual_via_tj(const QuatConnection& d, const Bridge& br,
                                       const QSection& a, const Vec3& u, int bx,
                                       std::span<const Rat> p) {
    const ModelContext& ctx = d.model();
    // DA(p) as a real tensor in T*M (x) Q coordinates
    std::vector<GaussRat> coords(static_cast<size_t>(12) * ctx.n);
    for (int i = 0; i < ctx.dim; ++i) {
        QSection di = covariant_q(d, a, i);
        for (int b = 0; b < 3; ++b)
            coords[static_cast<size_t>(i * 3 + b)] = GaussRat(di[b].eval(p));
    }
    EHTensor gamma = br.push(coords);
    EHTensor tj = t_j(u, gamma);
    std::vector<GaussRat> back = br.pull(tj);
    // The result is the complexification of a real tensor; evaluate it at
    // the direction e_{bx} and return the corresponding Q matrix.
    Vec3 val{Rat(0), Rat(0), Rat(0)};
    for (int b = 0; b < 3; ++b) {
        const GaussRat& c = back[static_cast<size_t>(bx * 3 + b)];
        if (!is_zero(c.im))
            throw std::domain_error("holomorphicity_residual_via_tj: non-real pullback");
        val[b] = c.re;
    }
    RatMat m = q_matrix(ctx, val);
    return d.model().lift(m);
}

ThetaSection conjugate_section(const ThetaSection& s) {
    ThetaSection r;
    for (int b = 0; b < 3; ++b) {
        r.a[b] = -s.a[b];
        r.b[b] = s.b[b];
    }
    return r;
}

Vec3 theta_section_value(const ModelContext& ctx, const ThetaSection& s,
                         const TwistorPoint& z) {
    Vec3 av = pi_project(z.u, ctx.eval(s.a, z.p));
    Vec3 bv = pi_project(z.u, ctx.eval(s.b, z.p));
    return av + cross(z.u, bv);
}

}  // namespace qtwist
