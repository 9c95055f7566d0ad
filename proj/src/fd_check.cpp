#include "qtwist/fd_check.hpp"

#include <cmath>

namespace qtwist {

namespace {

using V3 = std::array<double, 3>;
using Vd = std::vector<double>;

V3 add(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 scl(double s, const V3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dotd(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
V3 crossd(const V3& a, const V3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

V3 to_d(const Vec3& v) { return {to_double(v[0]), to_double(v[1]), to_double(v[2])}; }

// Chart state: coordinates are (x_1..x_dim, sigma, tau) with u(sigma, tau)
// the stereographic parametrization around u0.
struct Chart {
    const QuatConnection* d;
    const SectionField* s;
    const PolyVec* beta;
    int dim;
    V3 u0, b1, b2;

    V3 u_of(double sg, double tu) const {
        double n2 = 1.0 + sg * sg + tu * tu;
        V3 num = add(scl(1.0 - sg * sg - tu * tu, u0), add(scl(2.0 * sg, b1), scl(2.0 * tu, b2)));
        return scl(1.0 / n2, num);
    }
    // d u / d sigma and d u / d tau (analytic); with
    // u = [(1 - s^2 - t^2) u0 + 2 s b1 + 2 t b2] / (1 + s^2 + t^2).
    V3 du_dsigma(double sg, double tu) const {
        double n2 = 1.0 + sg * sg + tu * tu;
        V3 f = add(scl(1.0 - sg * sg - tu * tu, u0), add(scl(2.0 * sg, b1), scl(2.0 * tu, b2)));
        V3 df = add(scl(-2.0 * sg, u0), scl(2.0, b1));
        return scl(1.0 / n2, sub(df, scl(2.0 * sg / n2, f)));
    }
    V3 du_dtau(double sg, double tu) const {
        double n2 = 1.0 + sg * sg + tu * tu;
        V3 f = add(scl(1.0 - sg * sg - tu * tu, u0), add(scl(2.0 * sg, b1), scl(2.0 * tu, b2)));
        V3 df = add(scl(-2.0 * tu, u0), scl(2.0, b2));
        return scl(1.0 / n2, sub(df, scl(2.0 * tu / n2, f)));
    }

    // ambient variables (x, u) for polynomial evaluation
    Vd vars(const Vd& q) const {
        Vd v(q.begin(), q.begin() + dim);
        V3 u = u_of(q[dim], q[dim + 1]);
        v.push_back(u[0]);
        v.push_back(u[1]);
        v.push_back(u[2]);
        return v;
    }

    V3 section_value(const Vd& q) const {
        Vd v = vars(q);
        return {s->c[0].eval_double(v), s->c[1].eval_double(v), s->c[2].eval_double(v)};
    }

    // Gamma(X) w at base point x (double), with Gamma(e_j) from the exact
    // polynomial entries.
    V3 gamma_apply(const Vd& xpt, const Vd& xdir, const V3& w) const {
        V3 out{0, 0, 0};
        const ModelContext& ctx = d->model();
        for (int j = 0; j < dim; ++j) {
            if (xdir[j] == 0.0) continue;
            PolyMat g = gamma_q(*d, j);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    if (g(a, b).is_zero()) continue;
                    out[a] += xdir[j] * g(a, b).eval_double(xpt) * w[b];
                }
        }
        (void)ctx;
        return out;
    }

    // tangent of the coordinate field `dir` at chart point q: (X, W)
    void coord_tangent(const Vd& q, int dir, Vd& x, V3& w) const {
        x.assign(dim, 0.0);
        w = {0, 0, 0};
        if (dir < dim) {
            x[dir] = 1.0;
        } else if (dir == dim) {
            w = du_dsigma(q[dim], q[dim + 1]);
        } else {
            w = du_dtau(q[dim], q[dim + 1]);
        }
    }

    // nabla_{coordinate field dir} s at chart point q, via analytic
    // derivative of the ambient section formula plus Gamma and projection.
    V3 nabla_dir(const Vd& q, int dir) const {
        Vd v = vars(q);
        Vd xdir;
        V3 w;
        coord_tangent(q, dir, xdir, w);
        // U(s): chain rule through the chart
        V3 us{0, 0, 0};
        for (int comp = 0; comp < 3; ++comp) {
            double acc = 0.0;
            for (int i = 0; i < dim; ++i)
                if (xdir[i] != 0.0) acc += xdir[i] * s->c[comp].derivative(i).eval_double(v);
            for (int k = 0; k < 3; ++k)
                if (w[k] != 0.0) acc += w[k] * s->c[comp].derivative(dim + k).eval_double(v);
            us[comp] = acc;
        }
        Vd xpt(q.begin(), q.begin() + dim);
        V3 sval = section_value(q);
        V3 total = add(us, gamma_apply(xpt, xdir, sval));
        if (beta) {
            double bx = 0.0;
            for (int i = 0; i < dim; ++i)
                if (xdir[i] != 0.0) bx += xdir[i] * (*beta)[i].eval_double(xpt);
            V3 u = {v[dim], v[dim + 1], v[dim + 2]};
            total = add(total, scl(bx, crossd(u, sval)));
        }
        V3 u{v[dim], v[dim + 1], v[dim + 2]};
        return sub(total, scl(dotd(total, u), u));
    }

    // Covariant derivative along coordinate direction `dir` of the field
    // q -> nabla_{dir2} s, by Richardson-extrapolated central differences.
    V3 outer_nabla(const Vd& q, int dir, int dir2, double h) const {
        auto diff = [&](double step) {
            Vd qp = q, qm = q;
            qp[dim_index(dir)] += step;
            qm[dim_index(dir)] -= step;
            V3 fp = nabla_dir(qp, dir2);
            V3 fm = nabla_dir(qm, dir2);
            return scl(1.0 / (2.0 * step), sub(fp, fm));
        };
        V3 d1 = diff(h);
        V3 d2 = diff(h / 2.0);
        V3 deriv = scl(1.0 / 3.0, sub(scl(4.0, d2), d1));  // Richardson
        // add Gamma / beta / projection at q for the outer connection
        Vd xdir;
        V3 w;
        coord_tangent(q, dir, xdir, w);
        Vd xpt(q.begin(), q.begin() + dim);
        V3 inner = nabla_dir(q, dir2);
        V3 total = add(deriv, gamma_apply(xpt, xdir, inner));
        if (beta) {
            double bx = 0.0;
            for (int i = 0; i < dim; ++i)
                if (xdir[i] != 0.0) bx += xdir[i] * (*beta)[i].eval_double(xpt);
            Vd v = vars(q);
            V3 u = {v[dim], v[dim + 1], v[dim + 2]};
            total = add(total, scl(bx, crossd(u, inner)));
        }
        Vd v = vars(q);
        V3 u{v[dim], v[dim + 1], v[dim + 2]};
        return sub(total, scl(dotd(total, u), u));
    }

    int dim_index(int dir) const { return dir; }
};

}  // namespace

FdResult fd_curvature_check(const QuatConnection& d, const CurvatureField& r,
                            const SectionField& s, const std::vector<Rat>& p0,
                            const SpherePoint& u0, const FdConfig& cfg,
                            const PolyVec* beta) {
    const ModelContext& ctx = d.model();
    Chart chart;
    chart.d = &d;
    chart.s = &s;
    chart.beta = beta;
    chart.dim = ctx.dim;
    chart.u0 = to_d(u0.u);
    chart.b1 = to_d(u0.b1);
    chart.b2 = to_d(u0.b2);

    std::vector<double> q(static_cast<size_t>(ctx.dim) + 2, 0.0);
    for (int i = 0; i < ctx.dim; ++i) q[static_cast<size_t>(i)] = to_double(p0[i]);
    // chart center: sigma = tau = 0

    V3 lhs = sub(chart.outer_nabla(q, cfg.dir_u, cfg.dir_v, cfg.step),
                 chart.outer_nabla(q, cfg.dir_v, cfg.dir_u, cfg.step));

    // formula side with the exact machinery, evaluated at the center
    TwistorPoint z(p0, u0.u);
    auto tangent_of = [&](int dir) {
        std::vector<Rat> x(ctx.dim, Rat(0));
        Vec3 w = zero3();
        if (dir < ctx.dim) {
            x[dir] = Rat(1);
        } else if (dir == ctx.dim) {
            w = Rat(2) * u0.b1;  // stereographic scaling at the center
        } else {
            w = Rat(2) * u0.b2;
        }
        return TwistorTangent(std::move(x), u0.u, std::move(w));
    };
    TwistorTangent tu = tangent_of(cfg.dir_u);
    TwistorTangent tv = tangent_of(cfg.dir_v);
    Vec3 a = pi_project(u0.u, s.value(z));
    Vec3 rhs_exact = beta ? curvature_twisted(d, r, *beta, z, tu, tv, a)
                          : curvature_nabla(d, r, z, tu, tv, a);

    FdResult res;
    res.fd = lhs;
    res.formula = to_d(rhs_exact);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        num += (res.fd[i] - res.formula[i]) * (res.fd[i] - res.formula[i]);
        den += res.formula[i] * res.formula[i];
    }
    res.rel_error = (den > 1e-30) ? std::sqrt(num / den) : std::sqrt(num);
    return res;
}

}  // namespace qtwist
