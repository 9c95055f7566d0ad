#include "qtwist/penrose.hpp"

namespace qtwist {

TensorField covariant_tensor(const QuatConnection& d, const QSection& a) {
    const ModelContext& ctx = d.model();
    TensorField t(static_cast<size_t>(3) * ctx.dim, ctx.zero());
    for (int i = 0; i < ctx.dim; ++i) {
        QSection di = covariant_q(d, a, i);
        for (int b = 0; b < 3; ++b) t[static_cast<size_t>(i * 3 + b)] = di[b];
    }
    return t;
}

TensorField penrose_operator(const QuatConnection& d, const QSection& a, const RatMat& pi_s3) {
    return apply_weight(pi_s3, covariant_tensor(d, a));
}

TensorField penrose_via_weight(const QuatConnection& d, const QSection& a, const RatMat& b) {
    TensorField da = covariant_tensor(d, a);
    TensorField bda = apply_weight(b, da);
    TensorField out(da.size(), d.model().zero());
    for (size_t k = 0; k < da.size(); ++k)
        out[k] = Rat(1, 6) * (Rat(4) * da[k] - bda[k]);
    return out;
}

Vec3 tensor_at(const TensorField& t, int i, std::span<const Rat> p) {
    return {t[static_cast<size_t>(i * 3)].eval(p), t[static_cast<size_t>(i * 3 + 1)].eval(p),
            t[static_cast<size_t>(i * 3 + 2)].eval(p)};
}

SecondDerivative second_covariant(const QuatConnection& d, const QSection& a) {
    const ModelContext& ctx = d.model();
    const int n = ctx.dim;
    std::vector<QSection> first(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) first[static_cast<size_t>(j)] = covariant_q(d, a, j);
    std::vector<PolyMat> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = s_alpha_endo(d, i);

    SecondDerivative out;
    out.dim = n;
    out.comp.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // D_{e_i}(D_{e_j} A)
            QSection v = covariant_q(d, first[static_cast<size_t>(j)], i);
            // - D_{S_{e_i} e_j} A, with S_{e_i} e_j the polynomial vector
            // field given by column j of S^alpha_{e_i}.
            for (int m = 0; m < n; ++m) {
                const Poly& coeff = s[static_cast<size_t>(i)](m, j);
                if (coeff.is_zero()) continue;
                for (int b = 0; b < 3; ++b)
                    v[b] -= mul_checked(coeff, first[static_cast<size_t>(m)][b],
                                        ctx.degree_bound);
            }
            out.comp.push_back(std::move(v));
        }
    return out;
}

QSection trace_b_tilde(const ModelContext& ctx, const RatMat& b, const SecondDerivative& t) {
    QSection acc = ctx.zero_q();
    for (int i = 0; i < ctx.dim; ++i) {
        // coordinates of T(e_i, .) as an element of T*M (x) Q
        TensorField coords(static_cast<size_t>(3) * ctx.dim, ctx.zero());
        for (int j = 0; j < ctx.dim; ++j)
            for (int bb = 0; bb < 3; ++bb)
                coords[static_cast<size_t>(j * 3 + bb)] = t.at(i, j)[bb];
        TensorField bc = apply_weight(b, coords);
        for (int bb = 0; bb < 3; ++bb) acc[bb] += bc[static_cast<size_t>(i * 3 + bb)];
    }
    return acc;
}

QSection trace_b_tilde_curvature_form(const QuatConnection& d, const CurvatureField& r,
                                      const QSection& a) {
    const ModelContext& ctx = d.model();
    QSection acc = ctx.zero_q();
    PolyMat am = q_matrix(ctx, a);
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = i + 1; j < ctx.dim; ++j) {
            const PolyMat& rij = r.upper(i, j);
            PolyMat ra = rij * am - am * rij;  // [R_{e_i,e_j}, A]
            for (int k = 0; k < 3; ++k) {
                PolyMat jr = ctx.lift(ctx.J(k)) * ra - ra * ctx.lift(ctx.J(k));
                // g([J_k, [R, A]] e_i, e_j) = entry (j, i)
                acc[k] += jr(j, i);
            }
        }
    return acc;
}

Poly q_section_inner(const ModelContext& ctx, const QSection& x, const QSection& y) {
    Poly r = ctx.zero();
    for (int b = 0; b < 3; ++b) r += x[b] * y[b];
    return r;
}

WeitzenbockReport weitzenbock_checks(const QuatConnection& d, const QSection& a,
                                     const RatMat& b, const RatMat& pi_s3) {
    const ModelContext& ctx = d.model();
    const int n = ctx.dim;
    WeitzenbockReport rep;

    SecondDerivative dd = second_covariant(d, a);

    // (i) B~(D^2 A) = 4 D^2 A - 6 D(P^D A) as fields.
    // D(P^D A): the covariant derivative of the T*M (x) Q valued field
    // P^D A, (D_X S)(Y) = D_X(S(Y)) - S(S^alpha_X Y).
    TensorField pa = penrose_operator(d, a, pi_s3);
    bool op_ok = true;
    std::vector<PolyMat> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = s_alpha_endo(d, i);
    for (int i = 0; i < n && op_ok; ++i) {
        // B~ acts on the second slot of (D^2 A)_{e_i, .}
        TensorField coords(static_cast<size_t>(3) * n, ctx.zero());
        for (int j = 0; j < n; ++j)
            for (int bb = 0; bb < 3; ++bb)
                coords[static_cast<size_t>(j * 3 + bb)] = dd.at(i, j)[bb];
        TensorField lhs = apply_weight(b, coords);
        for (int j = 0; j < n && op_ok; ++j) {
            // D_{e_i}(P^D A)(e_j): differentiate the Q-section (P^D A)(e_j)
            // then subtract (P^D A)(S_{e_i} e_j).
            QSection pj{pa[static_cast<size_t>(j * 3)], pa[static_cast<size_t>(j * 3 + 1)],
                        pa[static_cast<size_t>(j * 3 + 2)]};
            QSection dpj = covariant_q(d, pj, i);
            for (int m = 0; m < n; ++m) {
                const Poly& coeff = s[static_cast<size_t>(i)](m, j);
                if (coeff.is_zero()) continue;
                for (int bb = 0; bb < 3; ++bb)
                    dpj[bb] -= mul_checked(
                        coeff, pa[static_cast<size_t>(m * 3 + bb)], ctx.degree_bound);
            }
            for (int bb = 0; bb < 3; ++bb) {
                Poly rhs = Rat(4) * dd.at(i, j)[bb] - Rat(6) * dpj[bb];
                if (lhs[static_cast<size_t>(j * 3 + bb)] != rhs) op_ok = false;
            }
        }
    }
    rep.operator_identity = op_ok;

    // (ii) <trace_g B~(D^2 A), A> = -8 |A|^2 trace_g(eta), pointwise.
    QSection traced = trace_b_tilde(ctx, b, dd);
    Poly lhs2 = q_section_inner(ctx, traced, a);
    PolyMat eta = eta_of(d);
    Poly tr_eta = ctx.zero();
    for (int i = 0; i < n; ++i) tr_eta += eta(i, i);
    Poly rhs2 = Rat(-8) * mul_checked(q_section_inner(ctx, a, a), tr_eta, ctx.degree_bound);
    rep.trace_identity = (lhs2 == rhs2);

    // (iii) trace_g(eta) = -2 |alpha|^2 for co-closed alpha (Scal = 0).
    if (codifferential(d.alpha).is_zero()) {
        Poly alpha2 = ctx.zero();
        for (int i = 0; i < n; ++i)
            alpha2 += mul_checked(d.alpha[i], d.alpha[i], ctx.degree_bound);
        rep.eta_trace_identity = (tr_eta == Rat(-2) * alpha2);
    }

    // Symmetric slots of any T contribute zero to the trace: check with
    // the symmetrization of D^2 A itself.
    SecondDerivative sym;
    sym.dim = n;
    sym.comp.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QSection v = ctx.zero_q();
            for (int bb = 0; bb < 3; ++bb)
                v[bb] = Rat(1, 2) * (dd.at(i, j)[bb] + dd.at(j, i)[bb]);
            sym.comp.push_back(std::move(v));
        }
    rep.symmetric_part_vanishes = is_zero(trace_b_tilde(ctx, b, sym));

    // Curvature display for the traced operator.
    CurvatureField r = curvature(d);
    QSection display = trace_b_tilde_curvature_form(d, r, a);
    QSection diff = ctx.zero_q();
    for (int bb = 0; bb < 3; ++bb) diff[bb] = traced[bb] - display[bb];
    rep.curvature_display_matches = is_zero(diff);

    return rep;
}

RatMat penrose_kernel_affine(const QuatConnection& d, const RatMat& pi_s3) {
    const ModelContext& ctx = d.model();
    const int n = ctx.dim;
    for (const auto& p : d.alpha)
        if (p.degree() > 0)
            throw std::invalid_argument("penrose_kernel_affine: alpha must be constant");
    // Unknowns: (a0 | c_1 .. c_n), each in R^3. P^D A is affine in x;
    // stack the constant part and each linear part.
    const int unknowns = 3 * (n + 1);
    std::vector<RatMat> gammas(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        PolyMat g = gamma_q(d, i);
        RatMat gc(3, 3, Rat(0));
        std::vector<Rat> origin(static_cast<size_t>(n), Rat(0));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) gc(r, c) = g(r, c).eval(origin);
        gammas[static_cast<size_t>(i)] = std::move(gc);
    }
    // DA(e_i) = C_i + Gamma_i a0 + sum_k x_k Gamma_i C_k.
    // Constant block rows: pi_s3 . (coords of C_i + Gamma_i a0) = 0
    // Linear block rows (per k): pi_s3 . (coords of Gamma_i C_k) = 0
    RatMat m(3 * n * (n + 1), unknowns, Rat(0));
    auto put = [&](int row_block, int i, int b, int col, const Rat& v) {
        m(row_block * 3 * n + i * 3 + b, col) += v;
    };
    // helper: column offsets
    auto col_a0 = [](int b) { return b; };
    auto col_c = [](int k, int b) { return 3 * (k + 1) + b; };
    for (int i = 0; i < n; ++i)
        for (int b = 0; b < 3; ++b) {
            // row (0, i, b): constant part of pi_s3(DA)(i, b)
            for (int j = 0; j < n; ++j)
                for (int c = 0; c < 3; ++c) {
                    const Rat& w = pi_s3(i * 3 + b, j * 3 + c);
                    if (is_zero(w)) continue;
                    // coords of DA(e_j)_c constant part: (C_j)_c + (Gamma_j a0)_c
                    put(0, i, b, col_c(j, c), w);
                    for (int cc = 0; cc < 3; ++cc)
                        put(0, i, b, col_a0(cc), w * gammas[static_cast<size_t>(j)](c, cc));
                }
            // rows (1 + k, i, b): coefficient of x_k
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j)
                    for (int c = 0; c < 3; ++c) {
                        const Rat& w = pi_s3(i * 3 + b, j * 3 + c);
                        if (is_zero(w)) continue;
                        for (int cc = 0; cc < 3; ++cc)
                            put(1 + k, i, b, col_c(k, cc),
                                w * gammas[static_cast<size_t>(j)](c, cc));
                    }
        }
    return nullspace(m);
}

QSection affine_q_section(const ModelContext& ctx, const RatMat& basis, int col) {
    QSection a = ctx.zero_q();
    for (int b = 0; b < 3; ++b) {
        a[b] = Poly::constant(ctx.dim, basis(b, col));
        for (int k = 0; k < ctx.dim; ++k) {
            const Rat& v = basis(3 * (k + 1) + b, col);
            if (!is_zero(v)) a[b] += v * Poly::variable(ctx.dim, k);
        }
    }
    return a;
}

TransformSample penrose_transform_sample(const QuatConnection& d, const QSection& a,
                                         const RatMat& pi_s3,
                                         const std::vector<Vec3>& certified_js,
                                         std::span<const Rat> p) {
    const ModelContext& ctx = d.model();
    TransformSample s;
    s.residuals_vanish = true;
    for (const Vec3& u : certified_js) {
        for (int bx = 0; bx < ctx.dim && s.residuals_vanish; ++bx) {
            PolyMat res = holomorphicity_residual(d, a, u, bx);
            RatMat at = ctx.eval(res, p);
            if (!at.all_zero()) s.residuals_vanish = false;
        }
        if (!s.residuals_vanish) break;
    }
    TensorField pa = penrose_operator(d, a, pi_s3);
    s.penrose_vanishes = true;
    for (int i = 0; i < ctx.dim && s.penrose_vanishes; ++i)
        if (!is_zero(tensor_at(pa, i, p))) s.penrose_vanishes = false;
    s.agree = (s.residuals_vanish == s.penrose_vanishes);
    return s;
}

}  // namespace qtwist
