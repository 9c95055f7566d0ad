#include "qtwist/ehrep.hpp"

#include <stdexcept>

namespace qtwist {

namespace {

const GaussRat kOne{Rat(1)};
const GaussRat kI = GaussRat::unit_i();

GaussRat gr(long num, long den = 1) { return GaussRat(make_rat(num, den)); }

}  // namespace

GaussRat omega_h(const HVec& v, const HVec& w) { return v[0] * w[1] - v[1] * w[0]; }

HVec q_conj(const HVec& v) { return {-v[1].conj(), v[0].conj()}; }

GaussRat herm_h(const HVec& v, const HVec& w) {
    return v[0] * w[0].conj() + v[1] * w[1].conj();
}

S2H sym_prod(const HVec& a, const HVec& b) {
    return {gr(2) * a[0] * b[0], a[0] * b[1] + a[1] * b[0], gr(2) * a[1] * b[1]};
}

S2H square(const HVec& a) { return {a[0] * a[0], a[0] * a[1], a[1] * a[1]}; }

GaussMat s2h_matrix(const S2H& t) {
    GaussMat m(2, 2);
    m(0, 0) = -t[1];
    m(0, 1) = t[0];
    m(1, 0) = -t[2];
    m(1, 1) = t[1];
    return m;
}

CVec3 j_from_s(const S2H& t) {
    // s1 = (-j2 + i j3)/2, s2 = i j1, s3 = (-j2 - i j3)/2
    return {kI * t[1], gr(-1, 2) * (t[0] + t[2]), kI * gr(1, 2) * (t[0] - t[2])};
}

S2H s_from_j(const CVec3& w) {
    // j1 = -i s2, j2 = -(s1 + s3), j3 = i(s3 - s1)
    return {-w[1] - kI * w[2], -kI * w[0], -w[1] + kI * w[2]};
}

GaussRat herm_s2h(const S2H& x, const S2H& y) {
    return gr(1, 2) * x[0] * y[0].conj() + x[1] * y[1].conj() +
           gr(1, 2) * x[2] * y[2].conj();
}

HVec f_map(const HS2H& t) {
    // F(h0 s1)=0, F(h0 s2)=h0, F(h0 s3)=ht0, F(ht0 s1)=-h0, F(ht0 s2)=-ht0, F(ht0 s3)=0
    HVec r{GaussRat{}, GaussRat{}};
    r[0] = t[1] - t[3];  // h0 coefficient
    r[1] = t[2] - t[4];  // ht0 coefficient
    return r;
}

GaussMat f_matrix() {
    GaussMat m(2, 6);
    m(0, 1) = kOne;
    m(0, 3) = -kOne;
    m(1, 2) = kOne;
    m(1, 4) = -kOne;
    return m;
}

GaussMat f_matrix_cube() {
    // Basis h_b (x) h_c (x) h_d -> index 4 b + 2 c + d. The contraction
    // F(h (x) h1 (x) h2) = omega(h, h1) h2 restricts on h1 h2 + h2 h1 to
    // omega(h, h1) h2 + omega(h, h2) h1.
    GaussMat m(2, 8);
    std::array<HVec, 2> basis{HVec{kOne, GaussRat{}}, HVec{GaussRat{}, kOne}};
    for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) {
                int col = 4 * b + 2 * c + d;
                GaussRat w1 = omega_h(basis[b], basis[c]);
                m(0, col) = m(0, col) + w1 * basis[d][0];
                m(1, col) = m(1, col) + w1 * basis[d][1];
            }
    return m;
}

std::array<GaussMat, 3> sp1_basis_from(const HVec& h) {
    if (herm_h(h, h) != kOne)
        throw std::invalid_argument("sp1_basis_from: spinor is not unit");
    HVec ht = q_conj(h);
    S2H j1s, j2s, j3s;
    S2H mixed = sym_prod(h, ht);
    S2H hh = square(h), tt = square(ht);
    for (int c = 0; c < 3; ++c) {
        j1s[c] = -kI * mixed[c];
        j2s[c] = -(hh[c] + tt[c]);
        j3s[c] = kI * (tt[c] - hh[c]);
    }
    return {s2h_matrix(j1s), s2h_matrix(j2s), s2h_matrix(j3s)};
}

bool EHTensor::is_zero() const {
    for (const auto& v : c)
        if (!qtwist::is_zero(v)) return false;
    return true;
}

S2H EHTensor::apply(const std::vector<GaussRat>& v) const {
    S2H r{GaussRat{}, GaussRat{}, GaussRat{}};
    for (int k = 0; k < 2 * n; ++k)
        for (int s = 0; s < 3; ++s) {
            // functional eps^k (x) h0 picks +v(k, ht0); eps^k (x) ht0 picks -v(k, h0)
            r[s] += at(k, 0, s) * v[static_cast<size_t>(2 * k + 1)] -
                    at(k, 1, s) * v[static_cast<size_t>(2 * k)];
        }
    return r;
}

EHTensor operator-(const EHTensor& a) {
    EHTensor r(a.n);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = -a.c[i];
    return r;
}

EHTensor operator-(const EHTensor& a, const EHTensor& b) {
    EHTensor r(a.n);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

EHTensor embed_eh(int n, int k, const HVec& h) {
    if (herm_h(h, h) != kOne) throw std::invalid_argument("embed_eh: spinor is not unit");
    HVec ht = q_conj(h);
    S2H hh = square(h);
    S2H mixed = sym_prod(ht, h);  // ht h + h ht
    EHTensor g(n);
    for (int b = 0; b < 2; ++b)
        for (int s = 0; s < 3; ++s)
            g.at(k, b, s) = gr(2) * ht[b] * hh[s] - h[b] * mixed[s];
    return g;
}

EHTensor t_j(const Vec3& j, const EHTensor& gamma) {
    Rat unit = j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
    if (unit != Rat(1)) throw std::invalid_argument("t_j: j is not a unit element");
    const int n = gamma.n;
    CVec3 a{GaussRat(j[0]), GaussRat(j[1]), GaussRat(j[2])};
    // 2x2 matrix of j acting on H
    GaussMat jm(2, 2);
    {
        S2H js = s_from_j(a);
        jm = s2h_matrix(js);
    }
    EHTensor out(n);
    std::vector<GaussRat> v(static_cast<size_t>(4 * n));
    for (int k = 0; k < 2 * n; ++k)
        for (int d = 0; d < 2; ++d) {
            std::fill(v.begin(), v.end(), GaussRat{});
            v[static_cast<size_t>(2 * k + d)] = kOne;
            // j v in E (x) H coordinates
            std::vector<GaussRat> jv(static_cast<size_t>(4 * n));
            jv[static_cast<size_t>(2 * k)] = jm(0, d);
            jv[static_cast<size_t>(2 * k + 1)] = jm(1, d);

            CVec3 gjv = j_from_s(gamma.apply(jv));
            CVec3 gv = j_from_s(gamma.apply(v));

            // <gamma(jv), j> with real unit j is the plain dot product.
            GaussRat pr = gjv[0] * a[0] + gjv[1] * a[1] + gjv[2] * a[2];
            CVec3 value;
            for (int t = 0; t < 3; ++t) {
                // Pi_j(gamma(jv)) - (a x gv)  [ = - j o gamma(v) - <gamma(v), j> Id ]
                int u = (t + 1) % 3, w = (t + 2) % 3;
                GaussRat crossed = a[u] * gv[w] - a[w] * gv[u];
                value[t] = gjv[t] - pr * a[t] - crossed;
            }
            S2H vs = s_from_j(value);
            // Reconstruct functional coordinates: value at basis vector
            // eps_k (x) ht0 gives the (k, h0) coefficients, and at
            // eps_k (x) h0 gives minus the (k, ht0) coefficients.
            for (int s = 0; s < 3; ++s) {
                if (d == 1)
                    out.at(k, 0, s) += vs[s];
                else
                    out.at(k, 1, s) -= vs[s];
            }
        }
    return out;
}

GaussMat t_j_matrix(int n, const Vec3& j) {
    GaussMat m(12 * n, 12 * n);
    for (int col = 0; col < 12 * n; ++col) {
        EHTensor e(n);
        e.c[static_cast<size_t>(col)] = kOne;
        EHTensor te = t_j(j, e);
        for (int row = 0; row < 12 * n; ++row) m(row, col) = te.c[static_cast<size_t>(row)];
    }
    return m;
}

RatMat weight_matrix_commutator(const ModelContext& ctx) {
    const int d = ctx.dim;
    RatMat b(3 * d, 3 * d, Rat(0));
    std::vector<Rat> cov(d, Rat(0)), vec(d, Rat(0));
    for (int i = 0; i < d; ++i) {
        std::fill(cov.begin(), cov.end(), Rat(0));
        cov[i] = Rat(1);
        for (int a = 0; a < 3; ++a) {
            // column (i, a): B(dx_i (x) J_a)(e_j) = [S^{dx_i}_{e_j}, J_a]
            for (int j = 0; j < d; ++j) {
                std::fill(vec.begin(), vec.end(), Rat(0));
                vec[j] = Rat(1);
                RatMat s = s_alpha(ctx, cov, vec);
                RatMat comm = s * ctx.J(a) - ctx.J(a) * s;
                Vec3 coords = q_coords(ctx, comm);  // throws if not in Q
                for (int bb = 0; bb < 3; ++bb) b(j * 3 + bb, i * 3 + a) = coords[bb];
            }
        }
    }
    return b;
}

RatMat weight_matrix_expansion(const ModelContext& ctx) {
    const int d = ctx.dim;
    RatMat b(3 * d, 3 * d, Rat(0));
    // B(dx_i (x) J_a)(e_j) = sum_b dx_i([J_b, J_a] e_j) J_b,
    // [J_b, J_a] = 2 eps_{bac} J_c.
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < 3; ++a)
            for (int bb = 0; bb < 3; ++bb)
                for (int cc = 0; cc < 3; ++cc) {
                    int e = epsilon3(bb, a, cc);
                    if (e == 0) continue;
                    for (int j = 0; j < d; ++j) {
                        Rat v = Rat(2 * e) * ctx.J(cc)(i, j);
                        if (!is_zero(v)) b(j * 3 + bb, i * 3 + a) += v;
                    }
                }
    return b;
}

std::pair<RatMat, RatMat> weight_projectors(const RatMat& b) {
    int m = b.rows();
    RatMat id = RatMat::identity(m, Rat(1), Rat(0));
    RatMat pi_s3 = scale(Rat(1, 6), scale(Rat(4), id) - b);
    RatMat pi_h = scale(Rat(1, 6), b + scale(Rat(2), id));
    return {pi_s3, pi_h};
}

std::vector<Poly> apply_weight(const RatMat& b, const std::vector<Poly>& coords) {
    std::vector<Poly> out(coords.size(), Poly::zero(coords[0].nvars()));
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) {
            if (is_zero(b(r, c)) || coords[static_cast<size_t>(c)].is_zero()) continue;
            out[static_cast<size_t>(r)] += coords[static_cast<size_t>(c)] * b(r, c);
        }
    return out;
}

EHTensor Bridge::push(const std::vector<GaussRat>& real_coords) const {
    EHTensor t(n);
    for (int r = 0; r < 12 * n; ++r) {
        GaussRat acc{};
        for (int c = 0; c < 12 * n; ++c)
            acc += to_eh(r, c) * real_coords[static_cast<size_t>(c)];
        t.c[static_cast<size_t>(r)] = acc;
    }
    return t;
}

std::vector<GaussRat> Bridge::pull(const EHTensor& t) const {
    std::vector<GaussRat> out(static_cast<size_t>(12) * n);
    for (int r = 0; r < 12 * n; ++r) {
        GaussRat acc{};
        for (int c = 0; c < 12 * n; ++c) acc += from_eh(r, c) * t.c[static_cast<size_t>(c)];
        out[static_cast<size_t>(r)] = acc;
    }
    return out;
}

Bridge make_bridge(const ModelContext& ctx) {
    const int n = ctx.n;
    const int d = ctx.dim;
    // Complex basis of T^{1,0} with respect to J1, block by block:
    //   u_{2s}   = e_{4s}   + i e_{4s+1},
    //   u_{2s+1} = e_{4s+2} - i e_{4s+3},
    // and J2 u_k carries eps_k (x) ht.
    std::vector<std::vector<GaussRat>> u(static_cast<size_t>(2 * n),
                                         std::vector<GaussRat>(static_cast<size_t>(d)));
    for (int s = 0; s < n; ++s) {
        u[static_cast<size_t>(2 * s)][static_cast<size_t>(4 * s)] = kOne;
        u[static_cast<size_t>(2 * s)][static_cast<size_t>(4 * s + 1)] = kI;
        u[static_cast<size_t>(2 * s + 1)][static_cast<size_t>(4 * s + 2)] = kOne;
        u[static_cast<size_t>(2 * s + 1)][static_cast<size_t>(4 * s + 3)] = -kI;
    }
    auto apply_j = [&](int a, const std::vector<GaussRat>& v) {
        std::vector<GaussRat> r(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            GaussRat acc{};
            for (int j = 0; j < d; ++j) {
                if (is_zero(ctx.J(a)(i, j))) continue;
                acc += GaussRat(ctx.J(a)(i, j)) * v[static_cast<size_t>(j)];
            }
            r[static_cast<size_t>(i)] = acc;
        }
        return r;
    };
    // s-from-j change of basis as a 3x3 matrix on the S^2H index.
    GaussMat cs(3, 3);
    for (int jj = 0; jj < 3; ++jj) {
        CVec3 e{GaussRat{}, GaussRat{}, GaussRat{}};
        e[jj] = kOne;
        S2H s = s_from_j(e);
        for (int ss = 0; ss < 3; ++ss) cs(ss, jj) = s[ss];
    }
    Bridge br;
    br.n = n;
    br.to_eh = GaussMat(12 * n, 12 * n);
    for (int k = 0; k < 2 * n; ++k) {
        std::vector<GaussRat> vh = apply_j(1, u[static_cast<size_t>(k)]);  // J2 u_k
        for (int i = 0; i < d; ++i)
            for (int a = 0; a < 3; ++a)
                for (int ss = 0; ss < 3; ++ss) {
                    // b = h slot: + dx_i(J2 u_k); b = ht slot: - dx_i(u_k)
                    br.to_eh(EHTensor::idx(k, 0, ss), i * 3 + a) +=
                        cs(ss, a) * vh[static_cast<size_t>(i)];
                    br.to_eh(EHTensor::idx(k, 1, ss), i * 3 + a) -=
                        cs(ss, a) * u[static_cast<size_t>(k)][static_cast<size_t>(i)];
                }
    }
    br.from_eh = inverse(br.to_eh);
    return br;
}

GaussMat bridge_form_residual(const ModelContext& ctx, const Bridge& br, int a) {
    const int d = ctx.dim;
    const int m = 12 * ctx.n;
    // real operator: S[i, b] -> -sum_m S[m, b] (J_a)_{m i}
    GaussMat real_op(m, m);
    for (int i = 0; i < d; ++i)
        for (int mm = 0; mm < d; ++mm) {
            if (is_zero(ctx.J(a)(mm, i))) continue;
            for (int b = 0; b < 3; ++b)
                real_op(i * 3 + b, mm * 3 + b) = GaussRat(-ctx.J(a)(mm, i));
        }
    // EH operator: j_a acting on the middle H factor.
    HVec h0{kOne, GaussRat{}};
    GaussMat jm = sp1_basis_from(h0)[static_cast<size_t>(a)];
    GaussMat eh_op(m, m);
    for (int k = 0; k < 2 * ctx.n; ++k)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2)
                for (int ss = 0; ss < 3; ++ss)
                    eh_op(EHTensor::idx(k, b1, ss), EHTensor::idx(k, b2, ss)) = jm(b1, b2);
    return br.to_eh * real_op - eh_op * br.to_eh;
}

GaussMat bridge_q_residual(const ModelContext& ctx, const Bridge& br, int a) {
    const int d = ctx.dim;
    const int m = 12 * ctx.n;
    // real operator: coords_c -> 2 eps_{abc}, i.e. ad(J_a) on the Q index
    GaussMat real_op(m, m);
    for (int i = 0; i < d; ++i)
        for (int b = 0; b < 3; ++b)
            for (int cidx = 0; cidx < 3; ++cidx) {
                int e = epsilon3(b, a, cidx);  // coefficient of J_b in [J_a, J_c]:
                if (e == 0) continue;
                // [J_a, J_c] = 2 eps_{acb'} J_{b'}; coefficient at b: 2 eps_{acb}
                real_op(i * 3 + b, i * 3 + cidx) = gr(2 * epsilon3(a, cidx, b));
            }
    // EH operator: ad(j_a) on the S^2H index, conjugated into s-coordinates.
    GaussMat ad_j(3, 3);
    for (int b = 0; b < 3; ++b)
        for (int cidx = 0; cidx < 3; ++cidx) ad_j(b, cidx) = gr(2 * epsilon3(a, cidx, b));
    GaussMat cs(3, 3), cj(3, 3);
    for (int jj = 0; jj < 3; ++jj) {
        CVec3 e{GaussRat{}, GaussRat{}, GaussRat{}};
        e[jj] = kOne;
        S2H s = s_from_j(e);
        for (int ss = 0; ss < 3; ++ss) cs(ss, jj) = s[ss];
    }
    cj = inverse(cs);
    GaussMat ad_s = cs * ad_j * cj;
    GaussMat eh_op(m, m);
    for (int k = 0; k < 2 * ctx.n; ++k)
        for (int b = 0; b < 2; ++b)
            for (int s1 = 0; s1 < 3; ++s1)
                for (int s2 = 0; s2 < 3; ++s2)
                    eh_op(EHTensor::idx(k, b, s1), EHTensor::idx(k, b, s2)) = ad_s(s1, s2);
    return br.to_eh * real_op - eh_op * br.to_eh;
}

GaussMat s3_fiber_projector() {
    GaussMat f = f_matrix();
    GaussMat k = nullspace(f);  // 6 x 4
    // Gram of the hermitian metric on H (x) S^2H in (b, c) coordinates.
    GaussMat g(6, 6);
    std::array<Rat, 3> diag{Rat(1, 2), Rat(1), Rat(1, 2)};
    for (int b = 0; b < 2; ++b)
        for (int cidx = 0; cidx < 3; ++cidx)
            g(3 * b + cidx, 3 * b + cidx) = GaussRat(diag[static_cast<size_t>(cidx)]);
    GaussMat kh = k.transpose();  // conjugate transpose
    for (int i = 0; i < kh.rows(); ++i)
        for (int j = 0; j < kh.cols(); ++j) kh(i, j) = kh(i, j).conj();
    GaussMat gram = kh * g * k;
    GaussMat p = k * inverse(gram) * kh * g;
    return p;
}

GaussMat abstract_weight(int n) {
    GaussMat p6 = s3_fiber_projector();
    GaussMat id6 = GaussMat::identity(6, kOne);
    GaussMat fiber = scale(gr(4), id6) - scale(gr(6), p6);
    GaussMat b(12 * n, 12 * n);
    // EH index ((k*2)+b)*3+c groups each (b, c) fiber per k.
    for (int k = 0; k < 2 * n; ++k)
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) b(6 * k + r, 6 * k + c) = fiber(r, c);
    return b;
}

GaussMat kernel_intersection(int n, const std::vector<Vec3>& js) {
    if (js.empty()) throw std::invalid_argument("kernel_intersection: empty j list");
    GaussMat stacked = t_j_matrix(n, js[0]);
    for (size_t i = 1; i < js.size(); ++i) stacked = vstack(stacked, t_j_matrix(n, js[i]));
    return nullspace(stacked);
}

GaussMat bridged_eigenspace(const ModelContext& ctx, const Bridge& br, const RatMat& b,
                            int eigenvalue) {
    RatMat shifted = b - RatMat::identity(b.rows(), Rat(eigenvalue), Rat(0));
    RatMat basis = nullspace(shifted);
    GaussMat cb = complexify(basis);
    return br.to_eh * cb;
}

}  // namespace qtwist
