// The Penrose operator, the full (non-antisymmetrized) second covariant
// derivative on Q-sections, the weight-operator trace, and the pointwise
// Weitzenbock identities on the flat model (Scal^g = 0).
#pragma once

#include "qtwist/connection.hpp"
#include "qtwist/ehrep.hpp"
#include "qtwist/twistor.hpp"

namespace qtwist {

// DA as a T*M (x) Q valued polynomial field: coordinate (i, a) -> Poly.
using TensorField = std::vector<Poly>;  // size 12n, index i*3 + a

TensorField covariant_tensor(const QuatConnection& d, const QSection& a);

// P^D A = pi_s3(DA); the alternative route (4 DA - B(DA))/6 is exposed for
// the exact two-route comparison.
TensorField penrose_operator(const QuatConnection& d, const QSection& a, const RatMat& pi_s3);
TensorField penrose_via_weight(const QuatConnection& d, const QSection& a, const RatMat& b);

// is_zero(TensorField) is the PolyVec overload from model.hpp.
Vec3 tensor_at(const TensorField& t, int i, std::span<const Rat> p);

// (D^2 A)_{X,Y} = D_X (D_Y A) - D_{S_X Y} A over basis pairs (X, Y).
struct SecondDerivative {
    int dim = 0;
    std::vector<QSection> comp;  // index i * dim + j for (e_i, e_j)

    const QSection& at(int i, int j) const {
        return comp[static_cast<size_t>(i) * dim + j];
    }
};

SecondDerivative second_covariant(const QuatConnection& d, const QSection& a);

// sum_i B(T(e_i, .))(e_i), the first-slot trace through the weight operator.
QSection trace_b_tilde(const ModelContext& ctx, const RatMat& b, const SecondDerivative& t);

// Right side of the curvature expansion of the traced weight operator:
//   sum_{i<j} g([J_k, [R_{e_i,e_j}, A]] e_i, e_j) J_k  summed over k.
QSection trace_b_tilde_curvature_form(const QuatConnection& d, const CurvatureField& r,
                                      const QSection& a);

// <A, B> pointwise with the normalized bundle metric (coordinates dot).
Poly q_section_inner(const ModelContext& ctx, const QSection& x, const QSection& y);

struct WeitzenbockReport {
    bool operator_identity = false;   // B~(D^2 A) = 4 D^2 A - 6 D(P^D A)
    bool trace_identity = false;      // <trace_g B~(D^2A), A> = -8 |A|^2 trace_g(eta)
    bool eta_trace_identity = false;  // trace_g(eta) = -2 |alpha|^2 (co-closed alpha)
    bool symmetric_part_vanishes = false;  // sym slots of D^2 contribute zero
    bool curvature_display_matches = false;
};

WeitzenbockReport weitzenbock_checks(const QuatConnection& d, const QSection& a,
                                     const RatMat& b, const RatMat& pi_s3);

// Affine Penrose-kernel elements A = A0 + sum_k x_k C_k for a constant
// 1-form alpha: exact nullspace of the linear system P^D A = 0. Columns of
// the result are coefficient vectors (a0 | c_1 | ... | c_dim) of length
// 3 (dim + 1).
RatMat penrose_kernel_affine(const QuatConnection& d, const RatMat& pi_s3);
QSection affine_q_section(const ModelContext& ctx, const RatMat& basis, int col);

// Pointwise Penrose-transform biconditional at p: the holomorphicity
// residual vanishes for every J in the certified set iff P^D A vanishes.
struct TransformSample {
    bool residuals_vanish = false;
    bool penrose_vanishes = false;
    bool agree = false;
};

TransformSample penrose_transform_sample(const QuatConnection& d, const QSection& a,
                                         const RatMat& pi_s3,
                                         const std::vector<Vec3>& certified_js,
                                         std::span<const Rat> p);

}  // namespace qtwist
