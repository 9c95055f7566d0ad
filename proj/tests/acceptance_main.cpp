// Acceptance suite: every criterion prints exactly one PASS/FAIL line and
// the process exits nonzero when anything fails. All tolerances are pinned
// here: exact checks compare with zero tolerance, the finite-difference
// oracle uses relative error 1e-5, and the stated wall-clock budgets are
// asserted with std::chrono.
#include "qtwist/checks.hpp"
#include "qtwist/fd_check.hpp"
#include "qtwist/hermtwist.hpp"
#include "qtwist/penrose.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qtwist;

namespace {

constexpr uint64_t kSeed = 20240809;

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& note = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << idx << ": " << name;
    if (!note.empty()) std::cout << "  [" << note << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Vec3> certified() {
    return {{Rat(1), Rat(0), Rat(0)},
            {Rat(0), Rat(1), Rat(0)},
            {Rat(0), Rat(0), Rat(1)},
            {make_rat(3, 5), make_rat(4, 5), Rat(0)},
            {make_rat(1, 3), make_rat(2, 3), make_rat(2, 3)}};
}

PolyVec self_dual_alpha(Rng& rng, const ModelContext& ctx) {
    RatMat raw = rng.rat_matrix(ctx.dim, ctx.dim);
    RatMat f = p_h_project(ctx, skew_part(raw));
    PolyVec alpha = ctx.zero_vec();
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j)
            if (!is_zero(f(i, j)))
                alpha[static_cast<size_t>(j)] += Rat(1, 2) * f(i, j) * Poly::variable(ctx.dim, i);
    for (int j = 0; j < ctx.dim; ++j)
        alpha[static_cast<size_t>(j)] += Poly::constant(ctx.dim, rng.rat());
    return alpha;
}

// --- criterion 1: weight-operator spectrum, exact, under one second ---
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    ModelContext ctx = build_flat_model(2);
    RatMat b = weight_matrix_commutator(ctx);
    bool ok = (b.rows() == 24);
    RatMat id = RatMat::identity(24, Rat(1), Rat(0));
    ok = ok && ((b + scale(Rat(2), id)) * (b - scale(Rat(4), id))).all_zero();
    ok = ok && rank(b - scale(Rat(4), id)) == 16;
    ok = ok && rank(b + scale(Rat(2), id)) == 8;
    ok = ok && is_zero(b.trace());
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    std::ostringstream note;
    note << "24x24 exact, " << dt << " s";
    report(1, "weight operator spectrum (B+2I)(B-4I) = 0, ranks 16/8, trace 0", ok, note.str());
}

// --- criterion 2: common T_j kernel against the bridged pi_h image ---
void criterion2() {
    ModelContext ctx = build_flat_model(2);
    Bridge br = make_bridge(ctx);
    RatMat b = weight_matrix_expansion(ctx);
    GaussMat inter = kernel_intersection(2, certified());
    GaussMat eig = bridged_eigenspace(ctx, br, b, 4);
    bool ok = (inter.cols() == 4 * ctx.n) && same_column_span(inter, eig);
    std::ostringstream note;
    note << "complex dimension " << inter.cols() << " = 4n";
    report(2, "intersection of ker T_j equals the bridged image of pi_h", ok, note.str());
}

// --- criterion 3: pointwise Penrose transform biconditional ---
void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    ModelContext ctx = build_flat_model(2, 8);
    Rng rng(check_seed(kSeed, "acceptance.penrose_transform"));
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    QuatConnection flat = flat_connection(ctx);
    RatMat ker = penrose_kernel_affine(flat, pi_s3);
    auto units = certified();
    int total = 0, kernel_members = 0;
    bool ok = true;
    // constructed kernel members
    for (int t = 0; t < 12 && ok; ++t) {
        RatMat combo(ker.rows(), 1, Rat(0));
        for (int col = 0; col < ker.cols(); ++col) {
            Rat w = make_rat(rng.pick(-3, 3));
            for (int row = 0; row < ker.rows(); ++row) combo(row, 0) += w * ker(row, col);
        }
        QSection a = affine_q_section(ctx, combo, 0);
        std::vector<Rat> p = rng.point(ctx.dim);
        TransformSample s = penrose_transform_sample(flat, a, pi_s3, units, p);
        ok = ok && s.agree && s.penrose_vanishes && s.residuals_vanish;
        ++total;
        ++kernel_members;
    }
    // mixed family over self-dual connections
    while (total < 100 && ok) {
        QuatConnection d = (total % 3 == 0) ? flat_connection(ctx)
                                            : make_connection(ctx, self_dual_alpha(rng, ctx));
        QSection a = rng.q_section(ctx.dim, 1);
        std::vector<Rat> p = rng.point(ctx.dim);
        TransformSample s = penrose_transform_sample(d, a, pi_s3, units, p);
        ok = ok && s.agree;
        ++total;
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 30.0 && total >= 100 && kernel_members >= 10;
    std::ostringstream note;
    note << total << " samples, " << kernel_members << " kernel members, " << dt << " s";
    report(3, "holomorphicity residuals vanish iff P^D A = 0", ok, note.str());
}

// --- criterion 4: the Chern-condition biconditional over 50 + 50 families ---
void criterion4() {
    ModelContext ctx = build_flat_model(2);
    Rng rng(check_seed(kSeed, "acceptance.chern_condition"));
    auto units = certified();
    bool ok = true;
    int self_dual_done = 0, witnesses = 0;
    for (int t = 0; t < 50 && ok; ++t) {
        PolyVec sd = self_dual_alpha(rng, ctx);
        QuatConnection conn = make_connection(ctx, sd);
        CurvatureField r = curvature(conn);
        for (int tuple = 0; tuple < 3 && ok; ++tuple) {
            const Vec3& u = units[static_cast<size_t>(rng.pick(0, 4))];
            int bx = static_cast<int>(rng.pick(0, ctx.dim - 2));
            int by = static_cast<int>(rng.pick(bx + 1, ctx.dim - 1));
            Vec3 a = pi_project(u, Vec3{rng.rat(), rng.rat(), rng.rat()});
            ok = ok && is_zero(chern_condition_residual(conn, r, u, bx, by, a));
        }
        ++self_dual_done;
    }
    for (int t = 0; t < 50 && ok; ++t) {
        PolyVec alpha = rng.one_form(ctx.dim, 1);
        QuatConnection conn = make_connection(ctx, alpha);
        if (predicates(conn).is_self_dual) {
            --t;
            continue;
        }
        CurvatureField r = curvature(conn);
        bool found = false;
        for (size_t ui = 0; ui < units.size() && !found; ++ui) {
            Vec3 a = pi_project(units[ui], Vec3{rng.rat(), rng.rat(), rng.rat()});
            if (is_zero(a)) continue;
            for (int i = 0; i < ctx.dim && !found; ++i)
                for (int j = i + 1; j < ctx.dim && !found; ++j)
                    if (!is_zero(chern_condition_residual(conn, r, units[ui], i, j, a)))
                        found = true;
        }
        ok = ok && found;
        if (found) ++witnesses;
    }
    std::ostringstream note;
    note << self_dual_done << " self-dual zero-residual, " << witnesses << " witnesses";
    report(4, "Chern condition residual vanishes exactly iff the connection is self-dual", ok,
           note.str());
}

// --- criterion 5: difference formula for the induced connections ---
void criterion5() {
    ModelContext ctx = build_flat_model(2);
    Rng rng(check_seed(kSeed, "acceptance.nabla_difference"));
    const auto& table = sphere_point_table();
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
        PolyVec base = (t % 3 == 2) ? rng.one_form(ctx.dim, 1) : ctx.zero_vec();
        PolyVec alpha = rng.one_form(ctx.dim, 1);
        PolyVec shifted = base;
        for (int i = 0; i < ctx.dim; ++i)
            shifted[static_cast<size_t>(i)] += alpha[static_cast<size_t>(i)];
        QuatConnection conn = make_connection(ctx, base);
        QuatConnection conn2 = make_connection(ctx, shifted);
        const SpherePoint& sp = table[static_cast<size_t>(rng.pick(0, 17))];
        TwistorPoint z(rng.point(ctx.dim), sp.u);
        TwistorTangent tt(rng.point(ctx.dim), sp.u,
                          pi_project(sp.u, Vec3{rng.rat(), rng.rat(), rng.rat()}));
        QSection a = rng.q_section(ctx.dim, 1);
        ok = ok && is_zero(nabla_difference_lhs(conn, conn2, a, z, tt) -
                           nabla_difference_rhs(ctx, alpha, a, z, tt));
    }
    report(5, "(nabla' - nabla) = 2 J(pi* alpha) (x) J on 100 samples", ok);
}

// --- criterion 6: curvature decomposition suite ---
void criterion6() {
    ModelContext ctx = build_flat_model(2);
    Rng rng(check_seed(kSeed, "acceptance.curvature_suite"));
    bool ok = true;
    std::string failed;
    auto expect = [&](bool v, const char* what) {
        if (!v && ok) {
            ok = false;
            failed = what;
        }
    };
    for (int t = 0; t < 3 && ok; ++t) {
        PolyVec alpha = rng.one_form(ctx.dim, 1);
        QuatConnection d = make_connection(ctx, alpha);
        CurvatureField r = curvature(d);
        for (int i = 0; i < ctx.dim; i += 3)
            for (int j = i + 1; j < ctx.dim; j += 2)
                for (int k = j + 1; k < ctx.dim; ++k)
                    expect(is_zero(bianchi_residual(ctx, r, i, j, k)), "Bianchi");
        PolyMat eta = eta_from_ricci(ctx, ricci_contraction(ctx, r));
        auto om_t = omega_forms_trace(d, r);
        auto om_e = omega_forms_eta(ctx, eta);
        for (int a = 0; a < 3; ++a) expect(is_zero(om_t[a] - om_e[a]), "Omega cross-agreement");
        for (int a = 0; a < 3 && ok; ++a)
            for (int i = 0; i < ctx.dim && ok; ++i)
                for (int j = i + 1; j < ctx.dim; ++j)
                    expect(is_zero(curvature_j_bracket_residual(ctx, r, om_t, a, i, j)),
                           "J-bracket relation");
        CurvatureField w = weyl_part(d);
        expect(is_zero(ricci_contraction(ctx, w)), "Ricci(W) = 0");
        for (int a = 0; a < 3 && ok; ++a) {
            PolyMat ja = ctx.lift(ctx.J(a));
            for (int i = 0; i < ctx.dim && ok; ++i)
                for (int j = i + 1; j < ctx.dim; ++j)
                    expect(is_zero(w.upper(i, j) * ja - ja * w.upper(i, j)), "[W, J_a] = 0");
        }
        // eta round trip
        CurvatureField re = r_eta_field(ctx, eta);
        expect(is_zero(eta_from_ricci(ctx, ricci_contraction(ctx, re)) - eta),
               "eta round trip");
        // Ricci change formulas
        auto rep = ricci_change_check(d);
        expect(rep.sym_matches && rep.skew_matches, "Ricci change formulas");
        // trace of S
        for (int j = 0; j < ctx.dim; ++j)
            expect(trace_s_alpha(d, j) == Rat(4 * (ctx.n + 1)) * d.alpha[j],
                   "trace(S_X) = 4(n+1) alpha(X)");
    }
    report(6, "curvature decomposition suite (Bianchi, Omega, Weyl, eta, change, trace)", ok,
           failed);
}

// --- criterion 7: Weitzenbock suite ---
void criterion7() {
    ModelContext ctx = build_flat_model(2, 8);
    Rng rng(check_seed(kSeed, "acceptance.weitzenbock"));
    RatMat b = weight_matrix_expansion(ctx);
    auto [pi_s3, pi_h] = weight_projectors(b);
    bool ok = true;
    std::string failed;
    auto expect = [&](bool v, const char* what) {
        if (!v && ok) {
            ok = false;
            failed = what;
        }
    };
    // co-closed polynomial alpha
    PolyVec rot = ctx.zero_vec();
    rot[0] = Poly::variable(ctx.dim, 1);
    rot[1] = -Poly::variable(ctx.dim, 0);
    WeitzenbockReport r1 = weitzenbock_checks(make_connection(ctx, rot), rng.q_section(ctx.dim, 1),
                                              b, pi_s3);
    expect(r1.operator_identity, "operator identity (co-closed alpha)");
    expect(r1.trace_identity, "trace identity (co-closed alpha)");
    expect(r1.eta_trace_identity, "trace(eta) = -2|alpha|^2 (co-closed alpha)");
    expect(r1.symmetric_part_vanishes, "symmetric-part cancellation");
    expect(r1.curvature_display_matches, "curvature display");
    // constant alpha, A = J1
    PolyVec ca = ctx.zero_vec();
    ca[0] = Poly::constant(ctx.dim, Rat(1));
    ca[5] = Poly::constant(ctx.dim, make_rat(-1, 2));
    QSection aj1 = ctx.zero_q();
    aj1[0] = ctx.one();
    WeitzenbockReport r2 = weitzenbock_checks(make_connection(ctx, ca), aj1, b, pi_s3);
    expect(r2.operator_identity && r2.trace_identity && r2.eta_trace_identity &&
               r2.symmetric_part_vanishes && r2.curvature_display_matches,
           "constant alpha instance");
    report(7, "Weitzenbock suite: B~(D^2A) = 4 D^2A - 6 D(P^D A), traces at Scal = 0", ok,
           failed);
}

// --- criterion 8: hermitian-twistor suite ---
void criterion8() {
    ModelContext ctx = build_flat_model(2);
    Rng rng(check_seed(kSeed, "acceptance.remark_suite"));
    bool ok = true;
    std::string failed;
    auto expect = [&](bool v, const char* what) {
        if (!v && ok) {
            ok = false;
            failed = what;
        }
    };
    const auto& table = sphere_point_table();
    // torsion form for a closed connection
    Poly f = rng.poly(ctx.dim, 2, 3);
    QuatConnection conn = make_connection(ctx, exterior_derivative0(f));
    CurvatureField r = curvature(conn);
    const SpherePoint& sp = table[static_cast<size_t>(rng.pick(0, 17))];
    TwistorPoint z(rng.point(ctx.dim), sp.u);
    for (int k = 0; k < ctx.dim; ++k) {
        std::vector<Rat> ek(static_cast<size_t>(ctx.dim), Rat(0));
        ek[static_cast<size_t>(k)] = Rat(1);
        expect(torsion_form_horizontal(conn, z, ek) == Rat(8) * conn.alpha[k].eval(z.p),
               "t(X~) = 8 alpha(X)");
    }
    expect(is_zero(torsion_form_vertical(conn, r, z, sp.b1)), "t(vertical) = 0");
    expect(is_zero(torsion_form_vertical(conn, r, z, sp.b2)), "t(vertical) = 0");
    // trace identity for arbitrary eta
    for (int t = 0; t < 5; ++t) {
        RatMat eta = rng.rat_matrix(ctx.dim, ctx.dim);
        const SpherePoint& spu = table[static_cast<size_t>(rng.pick(0, 17))];
        for (int i = 0; i < 3; ++i) {
            auto [lhs, rhs] = sums_identity_sides(ctx, eta, spu.u, i);
            expect(lhs == rhs, "trace-sum identity");
        }
    }
    // pairing values in 1/pi arithmetic
    QuatConnection flat = flat_connection(ctx);
    std::vector<Rat> p = rng.point(ctx.dim);
    expect(chern_pairing_components(flat, curvature(flat), p, sp) == PiScalar{make_rat(1, 2)},
           "pairing 1/(2 pi) at alpha = 0");
    PolyVec dx1 = ctx.zero_vec();
    dx1[0] = Poly::constant(ctx.dim, Rat(1));
    QuatConnection c1 = make_connection(ctx, dx1);
    expect(chern_pairing_components(c1, curvature(c1), p, sp) == PiScalar{make_rat(-3, 2)},
           "pairing 1/(2 pi) - 2/pi at alpha = dx1");
    for (int t = 0; t < 5; ++t) {
        PolyVec caf = ctx.zero_vec();
        for (int i = 0; i < ctx.dim; ++i)
            if (rng.pick(0, 2) == 0)
                caf[static_cast<size_t>(i)] = Poly::constant(ctx.dim, make_rat(rng.nonzero(), 6));
        QuatConnection cc = make_connection(ctx, caf);
        expect(chern_pairing_components(cc, curvature(cc), p,
                                        table[static_cast<size_t>(rng.pick(0, 17))]) ==
                   chern_pairing_closed_form(cc, p),
               "assembled pairing equals closed form");
    }
    report(8, "torsion form 8 pi* alpha, trace-sum identity, Chern pairing at Scal = 0", ok,
           failed);
}

// --- criterion 9: finite-difference oracle ---
void criterion9() {
    ModelContext ctx = build_flat_model(2);
    Rng rng(check_seed(kSeed, "acceptance.fd_oracle"));
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        PolyVec alpha = rng.one_form(ctx.dim, 1);
        QuatConnection conn = make_connection(ctx, alpha);
        CurvatureField r = curvature(conn);
        std::array<Poly, 3> amb{rng.poly(ctx.dim + 3, 2, 3), rng.poly(ctx.dim + 3, 2, 3),
                                rng.poly(ctx.dim + 3, 2, 3)};
        SectionField s = project_section(ctx, amb);
        const SpherePoint& sp = sphere_point_table()[static_cast<size_t>(rng.pick(0, 17))];
        std::vector<Rat> p(static_cast<size_t>(ctx.dim));
        for (auto& v : p) v = make_rat(rng.pick(-2, 2), 4);
        FdConfig cfg;
        switch (t % 3) {
            case 0:
                cfg.dir_u = static_cast<int>(rng.pick(0, ctx.dim - 1));
                cfg.dir_v = ctx.dim;
                break;
            case 1:
                cfg.dir_u = ctx.dim;
                cfg.dir_v = ctx.dim + 1;
                break;
            default:
                cfg.dir_u = static_cast<int>(rng.pick(0, ctx.dim - 2));
                cfg.dir_v = static_cast<int>(rng.pick(cfg.dir_u + 1, ctx.dim - 1));
                break;
        }
        FdResult res = fd_curvature_check(conn, r, s, p, sp, cfg);
        worst = std::max(worst, res.rel_error);
        ok = ok && res.rel_error <= 1e-5;
    }
    std::ostringstream note;
    note << "worst relative error " << worst;
    report(9, "loop-derivative curvature matches the component formulas on 20 configurations",
           ok, note.str());
}

// --- criterion 10: full CLI run, timing and byte-identical reruns ---
void criterion10() {
    const char* bin = std::getenv("QTWIST_BIN");
    if (!bin) {
        report(10, "full check run through the CLI", false, "QTWIST_BIN not set");
        return;
    }
    auto run = [&](const std::string& args, std::string& out) {
        std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return -1;
        char buf[8192];
        size_t got;
        out.clear();
        while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
        int status = pclose(pipe);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    auto t0 = std::chrono::steady_clock::now();
    std::string out1, out2;
    int code1 = run("check all --n 2 --seed 42 --format json", out1);
    double dt = seconds_since(t0);
    int code2 = run("check all --n 2 --seed 42 --format json", out2);
    bool ok = (code1 == 0) && (code2 == 0) && (out1 == out2) && dt < 120.0 && !out1.empty();
    std::ostringstream note;
    note << "exit " << code1 << ", " << dt << " s, rerun "
         << ((out1 == out2) ? "byte-identical" : "differs");
    report(10, "qtwist check all --n 2 exits 0 in under two minutes, rerun byte-identical", ok,
           note.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures > 0) {
        std::cout << failures << " criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
