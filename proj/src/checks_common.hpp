// Internal helpers shared by the check suites.
#pragma once

#include "qtwist/checks.hpp"
#include "qtwist/connection.hpp"
#include "qtwist/twistor.hpp"

namespace qtwist::checks {

// Degree bound with headroom for the worst chain of products any check
// performs (second derivatives traced against A: four factors).
inline int bound_for(const SuiteConfig& cfg) { return 4 * std::max(1, cfg.degree) + 2; }

inline ModelContext model_for(const SuiteConfig& cfg) {
    return build_flat_model(cfg.n, bound_for(cfg));
}

// Constant Q-hermitian 2-form with a linear primitive: alpha = 1/2 F_{ij} x_i dx_j.
inline PolyVec self_dual_alpha(Rng& rng, const ModelContext& ctx, bool* nonzero = nullptr) {
    RatMat raw = rng.rat_matrix(ctx.dim, ctx.dim);
    RatMat f = p_h_project(ctx, skew_part(raw));
    PolyVec alpha = ctx.zero_vec();
    bool nz = false;
    for (int i = 0; i < ctx.dim; ++i)
        for (int j = 0; j < ctx.dim; ++j)
            if (!is_zero(f(i, j))) {
                alpha[static_cast<size_t>(j)] += Rat(1, 2) * f(i, j) * Poly::variable(ctx.dim, i);
                nz = true;
            }
    // a closed shift keeps d(alpha) = F
    for (int j = 0; j < ctx.dim; ++j)
        alpha[static_cast<size_t>(j)] += Poly::constant(ctx.dim, rng.rat());
    if (nonzero) *nonzero = nz;
    return alpha;
}

inline PolyVec non_self_dual_alpha(Rng& rng, const ModelContext& ctx) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        PolyVec alpha = rng.one_form(ctx.dim, 1);
        PolyMat da = exterior_derivative1(alpha);
        if (!is_q_hermitian(ctx, da)) return alpha;
    }
    throw std::logic_error("non_self_dual_alpha: sampling failed");
}

// Three basis units plus two generic rational units: the certified J-set.
inline std::vector<Vec3> certified_units() {
    return {{Rat(1), Rat(0), Rat(0)},
            {Rat(0), Rat(1), Rat(0)},
            {Rat(0), Rat(0), Rat(1)},
            {make_rat(3, 5), make_rat(4, 5), Rat(0)},
            {make_rat(1, 3), make_rat(2, 3), make_rat(2, 3)}};
}

inline const SpherePoint& pick_sphere(Rng& rng) {
    const auto& table = sphere_point_table();
    return table[static_cast<size_t>(rng.pick(0, static_cast<long>(table.size()) - 1))];
}

// Random fiber-tangent vector at u.
inline Vec3 tangent_at(Rng& rng, const Vec3& u) {
    Vec3 raw{rng.rat(), rng.rat(), rng.rat()};
    return pi_project(u, raw);
}

}  // namespace qtwist::checks
