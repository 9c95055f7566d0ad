// Quaternionic connections D = d + S^alpha on the flat model and the
// pointwise curvature algebra attached to them: the eta/Weyl split of the
// curvature, the Ricci contraction, the Omega_i two-forms and the
// closed/exact/self-dual predicates.
#pragma once

#include "qtwist/model.hpp"

namespace qtwist {

struct QuatConnection {
    const ModelContext* ctx = nullptr;
    PolyVec alpha;  // polynomial 1-form; D = d + S^alpha

    const ModelContext& model() const { return *ctx; }
};

QuatConnection make_connection(const ModelContext& ctx, PolyVec alpha);
QuatConnection flat_connection(const ModelContext& ctx);

// S^alpha_X for covector and vector values at a point:
//   S_X = alpha(X) Id + alpha (x) X - sum_i [ alpha(J_i X) J_i
//                                            + (alpha o J_i) (x) J_i X ].
RatMat s_alpha(const ModelContext& ctx, const std::vector<Rat>& alpha_val,
               const std::vector<Rat>& x);

// S^alpha_{e_j} as a polynomial endomorphism field.
PolyMat s_alpha_endo(const QuatConnection& d, int j);

// alpha(J_a e_j) as a polynomial (covector composed with J_a).
Poly alpha_j(const QuatConnection& d, int a, int j);

// Connection coefficients of D on Q-sections in basis coordinates:
// (D_{e_j} A)_coords = d_j a + Gamma(e_j) a, Gamma antisymmetric 3x3.
PolyMat gamma_q(const QuatConnection& d, int j);
// Gamma contracted with an exact tangent vector at a point.
RatMat gamma_q_at(const QuatConnection& d, const std::vector<Rat>& x,
                  std::span<const Rat> point);

// Covariant derivative of a Q-section along e_j.
QSection covariant_q(const QuatConnection& d, const QSection& a, int j);

// Curvature of D in the constant global frame, R = dS + S ^ S.
// Components are stored for i < j; at(i, j) applies the sign.
struct CurvatureField {
    int dim = 0;
    std::vector<PolyMat> comp;  // index k = pair (i, j), i < j

    static int pair_index(int dim, int i, int j);
    const PolyMat& upper(int i, int j) const;  // requires i < j
    PolyMat at(const ModelContext& ctx, int i, int j) const;
};

CurvatureField curvature(const QuatConnection& d);

// Ricci(R)_{X,Y} = trace { Z -> R_{Z,X} Y }.
PolyMat ricci_contraction(const ModelContext& ctx, const CurvatureField& r);

// First Bianchi sum over a cyclic triple of basis directions.
PolyMat bianchi_residual(const ModelContext& ctx, const CurvatureField& r,
                         int i, int j, int k);

// The curvature attached to a bilinear form eta:
//   R^eta_{X,Y} = (eta(Y,X) - eta(X,Y)) Id - eta_X (x) Y + eta_Y (x) X
//     - sum_i [ (eta(Y,J_iX) - eta(X,J_iY)) J_i
//               + (eta_Y o J_i) (x) J_i X - (eta_X o J_i) (x) J_i Y ].
RatMat r_eta(const ModelContext& ctx, const RatMat& eta, const std::vector<Rat>& x,
             const std::vector<Rat>& y);
CurvatureField r_eta_field(const ModelContext& ctx, const PolyMat& eta);

// eta = 1/(4(n+1)) Ricci^skew + 1/(4n) Ricci^sym
//       - 1/(2n(n+2)) P_h(Ricci^sym).
PolyMat eta_from_ricci(const ModelContext& ctx, const PolyMat& ric);
RatMat eta_from_ricci(const ModelContext& ctx, const RatMat& ric);

PolyMat eta_of(const QuatConnection& d);

// W = R^D - R^eta; Ricci(W) = 0 and [W, J_a] = 0.
CurvatureField weyl_part(const QuatConnection& d);

// Omega_i(X, Y) computed (a) as -1/(2n) tr(J_i R_{X,Y}) and (b) from eta
// as 2 (eta(X, J_i Y) - eta(Y, J_i X)); both as antisymmetric 2-forms.
std::array<PolyMat, 3> omega_forms_trace(const QuatConnection& d, const CurvatureField& r);
std::array<PolyMat, 3> omega_forms_eta(const ModelContext& ctx, const PolyMat& eta);

// Residual of [R_{X,Y}, J_i] = Omega_k(X,Y) J_j - Omega_j(X,Y) J_k
// over basis pairs ((i,j,k) cyclic); identically zero for quaternionic
// curvature tensors.
PolyMat curvature_j_bracket_residual(const ModelContext& ctx, const CurvatureField& r,
                                     const std::array<PolyMat, 3>& omega, int a, int bi,
                                     int bj);

struct ConnectionPredicates {
    bool is_closed = false;     // d alpha = 0
    bool is_exact = false;      // alpha = df (exact antidifferentiation)
    bool is_self_dual = false;  // Ricci(R^D)^skew is Q-hermitian
};

ConnectionPredicates predicates(const QuatConnection& d);

// Both change-of-connection displays for the flat base (Ricci(base) = 0):
//   sym:  4n (T) + 8 P_h(T),  T = alpha (x) alpha
//         - sum_i (alpha o J_i) (x) (alpha o J_i) - (D alpha)^sym
//   skew: -4(n+1) d alpha.
struct RicciChangeReport {
    bool sym_matches = false;
    bool skew_matches = false;
    PolyMat sym_residual;
    PolyMat skew_residual;
};

RicciChangeReport ricci_change_check(const QuatConnection& d);

// trace(S^alpha_X) as a polynomial in the base point for X = e_j.
Poly trace_s_alpha(const QuatConnection& d, int j);

}  // namespace qtwist
