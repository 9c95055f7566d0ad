#include "qtwist/model.hpp"

#include <stdexcept>

namespace qtwist {

namespace {

// 4x4 blocks of right multiplication by -i, -j, -k on H with coordinates
// q = x1 + x2 i + x3 j + x4 k (columns are images of e1..e4).
RatMat right_mult_block(int a) {
    RatMat m(4, 4, Rat(0));
    auto set = [&m](int col, int row, long v) { m(row, col) = Rat(v); };
    switch (a) {
        case 0:  // -R_i : e1 -> -e2, e2 -> e1, e3 -> e4, e4 -> -e3
            set(0, 1, -1);
            set(1, 0, 1);
            set(2, 3, 1);
            set(3, 2, -1);
            break;
        case 1:  // -R_j : e1 -> -e3, e2 -> -e4, e3 -> e1, e4 -> e2
            set(0, 2, -1);
            set(1, 3, -1);
            set(2, 0, 1);
            set(3, 1, 1);
            break;
        case 2:  // -R_k : e1 -> -e4, e2 -> e3, e3 -> -e2, e4 -> e1
            set(0, 3, -1);
            set(1, 2, 1);
            set(2, 1, -1);
            set(3, 0, 1);
            break;
        default:
            throw std::logic_error("right_mult_block: bad index");
    }
    return m;
}

}  // namespace

ModelContext build_flat_model(int n, int degree_bound) {
    if (n < 2) throw std::invalid_argument("build_flat_model: need n >= 2 (dim 4n >= 8)");
    ModelContext ctx;
    ctx.n = n;
    ctx.dim = 4 * n;
    ctx.degree_bound = degree_bound;
    for (int a = 0; a < 3; ++a) {
        RatMat block = right_mult_block(a);
        RatMat j(ctx.dim, ctx.dim, Rat(0));
        for (int s = 0; s < n; ++s)
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) j(4 * s + r, 4 * s + c) = block(r, c);
        ctx.basis.J[a] = std::move(j);
    }
    ctx.g = RatMat::identity(ctx.dim, Rat(1), Rat(0));
    validate_admissible_basis(ctx);
    return ctx;
}

void validate_admissible_basis(const ModelContext& ctx) {
    const int d = ctx.dim;
    RatMat id = RatMat::identity(d, Rat(1), Rat(0));
    for (int a = 0; a < 3; ++a) {
        if (ctx.J(a) * ctx.J(a) + id != RatMat(d, d, Rat(0)))
            throw std::logic_error("admissible basis: J_a^2 != -Id");
        if (ctx.J(a).transpose() * ctx.J(a) != id)
            throw std::logic_error("admissible basis: J_a not orthogonal");
    }
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        if (ctx.J(a) * ctx.J(b) != ctx.J(c))
            throw std::logic_error("admissible basis: J_a J_b != J_c");
        if (ctx.J(b) * ctx.J(a) + ctx.J(c) != RatMat(d, d, Rat(0)))
            throw std::logic_error("admissible basis: J_b J_a != -J_c");
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Rat expect = (a == b) ? Rat(1) : Rat(0);
            if (q_inner(ctx, ctx.J(a), ctx.J(b)) != expect)
                throw std::logic_error("admissible basis: <J_a, J_b> != delta_ab");
        }
}

Rat q_inner(const ModelContext& ctx, const RatMat& a, const RatMat& b) {
    return (a.transpose() * b).trace() / Rat(ctx.dim);
}

Vec3 q_coords(const ModelContext& ctx, const RatMat& m) {
    Vec3 w{q_inner(ctx, ctx.J(0), m), q_inner(ctx, ctx.J(1), m), q_inner(ctx, ctx.J(2), m)};
    if (q_matrix(ctx, w) != m)
        throw std::domain_error("q_coords: matrix does not lie in span{J1,J2,J3}");
    return w;
}

RatMat q_matrix(const ModelContext& ctx, const Vec3& w) {
    RatMat m = scale(w[0], ctx.J(0)) + scale(w[1], ctx.J(1)) + scale(w[2], ctx.J(2));
    return m;
}

PolyMat q_matrix(const ModelContext& ctx, const QSection& a) {
    PolyMat m = ctx.zero_mat();
    for (int s = 0; s < 3; ++s)
        for (int i = 0; i < ctx.dim; ++i)
            for (int j = 0; j < ctx.dim; ++j)
                m(i, j) += a[s] * ctx.J(s)(i, j);
    return m;
}

PolyMat ModelContext::lift(const RatMat& m) const {
    PolyMat r(m.rows(), m.cols(), Poly::zero(dim));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Poly::constant(dim, m(i, j));
    return r;
}

RatMat ModelContext::eval(const PolyMat& m, std::span<const Rat> x) const {
    RatMat r(m.rows(), m.cols(), Rat(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eval(x);
    return r;
}

Vec3 ModelContext::eval(const QSection& a, std::span<const Rat> x) const {
    return {a[0].eval(x), a[1].eval(x), a[2].eval(x)};
}

PolyVec exterior_derivative0(const Poly& f) {
    PolyVec df(f.nvars(), Poly::zero(f.nvars()));
    for (int i = 0; i < f.nvars(); ++i) df[i] = f.derivative(i);
    return df;
}

PolyMat exterior_derivative1(const PolyVec& alpha) {
    int d = static_cast<int>(alpha.size());
    PolyMat r(d, d, Poly::zero(alpha[0].nvars()));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r(i, j) = alpha[j].derivative(i) - alpha[i].derivative(j);
    return r;
}

ThreeForm exterior_derivative2(const PolyMat& omega) {
    ThreeForm r;
    int d = omega.rows();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                Poly v = omega(j, k).derivative(i) - omega(i, k).derivative(j) +
                         omega(i, j).derivative(k);
                if (!v.is_zero()) r[{i, j, k}] = std::move(v);
            }
    return r;
}

Poly codifferential(const PolyVec& alpha) {
    Poly r = Poly::zero(alpha[0].nvars());
    for (int i = 0; i < static_cast<int>(alpha.size()); ++i) r -= alpha[i].derivative(i);
    return r;
}

bool is_zero(const PolyVec& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

bool is_zero(const PolyMat& m) { return m.all_zero(); }

bool is_zero(const ThreeForm& f) {
    for (const auto& [idx, p] : f)
        if (!p.is_zero()) return false;
    return true;
}

bool is_zero(const QSection& a) {
    return a[0].is_zero() && a[1].is_zero() && a[2].is_zero();
}

bool antidifferentiate(const PolyVec& alpha, Poly& f_out) {
    // f(x) = sum_i x_i int_0^1 alpha_i(t x) dt, monomial by monomial.
    int nv = alpha[0].nvars();
    Poly f = Poly::zero(nv);
    for (int i = 0; i < nv; ++i) {
        for (const auto& [m, c] : alpha[i].terms()) {
            Mono e = m;
            e[i] += 1;
            f.add_term(e, c / Rat(mono_degree(m) + 1));
        }
    }
    PolyVec df = exterior_derivative0(f);
    for (int i = 0; i < nv; ++i)
        if (df[i] != alpha[i]) return false;
    f_out = std::move(f);
    return true;
}

RatMat p_h_project(const ModelContext& ctx, const RatMat& eta) {
    RatMat acc = eta;
    for (int a = 0; a < 3; ++a) acc = acc + ctx.J(a).transpose() * eta * ctx.J(a);
    return scale(Rat(1, 4), acc);
}

PolyMat p_h_project(const ModelContext& ctx, const PolyMat& eta) {
    PolyMat acc = eta;
    for (int a = 0; a < 3; ++a) {
        PolyMat ja = ctx.lift(ctx.J(a));
        acc = acc + ja.transpose() * eta * ja;
    }
    PolyMat r = acc;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r(i, j) = Rat(1, 4) * acc(i, j);
    return r;
}

bool is_q_hermitian(const ModelContext& ctx, const RatMat& f) {
    for (int a = 0; a < 3; ++a)
        if (ctx.J(a).transpose() * f * ctx.J(a) != f) return false;
    return true;
}

bool is_q_hermitian(const ModelContext& ctx, const PolyMat& f) {
    for (const auto& [m, coeff] : monomial_matrices(f))
        if (!is_q_hermitian(ctx, coeff)) return false;
    return true;
}

std::map<Mono, RatMat> monomial_matrices(const PolyMat& f) {
    std::map<Mono, RatMat> out;
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j)
            for (const auto& [m, c] : f(i, j).terms()) {
                auto it = out.find(m);
                if (it == out.end())
                    it = out.emplace(m, RatMat(f.rows(), f.cols(), Rat(0))).first;
                it->second(i, j) = c;
            }
    return out;
}

RatMat sym_part(const RatMat& m) { return scale(Rat(1, 2), m + m.transpose()); }
RatMat skew_part(const RatMat& m) { return scale(Rat(1, 2), m - m.transpose()); }

PolyMat sym_part(const PolyMat& m) {
    PolyMat r = m + m.transpose();
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r(i, j) = Rat(1, 2) * r(i, j);
    return r;
}

PolyMat skew_part(const PolyMat& m) {
    PolyMat r = m - m.transpose();
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r(i, j) = Rat(1, 2) * r(i, j);
    return r;
}

}  // namespace qtwist
