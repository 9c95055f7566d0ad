// The hermitian geometry of Z attached to (g, D): components of d(Omega),
// the torsion 1-form of the almost-hermitian pair, the trace identity for
// R^eta, and the pointwise Chern-form pairing <gamma^D, Omega_g^D> in
// exact arithmetic over multiples of 1/pi.
#pragma once

#include "qtwist/connection.hpp"
#include "qtwist/twistor.hpp"

namespace qtwist {

// Exact element of the one-dimensional module spanned by 1/pi.
struct PiScalar {
    Rat coeff;  // the value is coeff / pi

    friend PiScalar operator+(const PiScalar& a, const PiScalar& b) {
        return {a.coeff + b.coeff};
    }
    friend PiScalar operator-(const PiScalar& a, const PiScalar& b) {
        return {a.coeff - b.coeff};
    }
    friend bool operator==(const PiScalar& a, const PiScalar& b) {
        return a.coeff == b.coeff;
    }
    bool negative() const { return sgn(coeff) < 0; }
    std::string str() const { return to_string(coeff) + "/pi"; }
};

// (D_X g)(Y, V) per the structural display for D = d + S^alpha:
//   -2 a(X) g(Y,V) - a(Y) g(X,V) - a(V) g(X,Y)
//   + sum_i [ a(J_i Y) g(J_i X, V) + a(J_i V) g(J_i X, Y) ].
Rat dg_display(const QuatConnection& d, std::span<const Rat> p, const std::vector<Rat>& x,
               const std::vector<Rat>& y, const std::vector<Rat>& v);

// First-principles derivative (D_X g)(Y,V) = -g(S_X Y, V) - g(Y, S_X V).
Rat dg_first_principles(const QuatConnection& d, std::span<const Rat> p,
                        const std::vector<Rat>& x, const std::vector<Rat>& y,
                        const std::vector<Rat>& v);

// d Omega_g^D on three horizontal lifts:
//   (D_X g)(V, JY) + (D_Y g)(X, JV) + (D_V g)(Y, JX).
Rat d_omega_hhh(const QuatConnection& d, const TwistorPoint& z, const std::vector<Rat>& x,
                const std::vector<Rat>& y, const std::vector<Rat>& v);

// d Omega_g^D (a, X~, Y~) = g(A X, Y) - <[R^D_{X,Y}, J], J A>.
Rat d_omega_vhh(const QuatConnection& d, const CurvatureField& r, const TwistorPoint& z,
                const Vec3& a, const std::vector<Rat>& x, const std::vector<Rat>& y);

// The two remaining components vanish identically.
inline Rat d_omega_vvv() { return Rat(0); }
inline Rat d_omega_vvh() { return Rat(0); }

// Torsion form t(.) = -sum_k d Omega(E_k, J E_k, .) over an orthonormal
// frame (4n horizontal lifts plus the fiber frame of the sphere point).
Rat torsion_form_horizontal(const QuatConnection& d, const TwistorPoint& z,
                            const std::vector<Rat>& x);
Rat torsion_form_vertical(const QuatConnection& d, const CurvatureField& r,
                          const TwistorPoint& z, const Vec3& a);

// sum_k tr(J_i R^eta_{X_k, J X_k}) and 8n sum_k eta(J X_k, J_i X_k), both
// exact, for an arbitrary bilinear value eta.
std::pair<Rat, Rat> sums_identity_sides(const ModelContext& ctx, const RatMat& eta,
                                        const Vec3& u, int i);

// Pointwise pairing <gamma^D, Omega_g^D> assembled from the component
// formulas over the orthonormal frame of the sphere point.
PiScalar chern_pairing_components(const QuatConnection& d, const CurvatureField& r,
                                  const std::vector<Rat>& p, const SpherePoint& sp);

// Closed form at Scal^g = 0 for co-closed alpha: 1/(2 pi) - (2/pi)|alpha|^2.
PiScalar chern_pairing_closed_form(const QuatConnection& d, std::span<const Rat> p);

// Horizontal part shortcut (1/2) sum_k gamma^D(X_k~, (J X_k)~) and the
// internal consistency value trace_g(eta)/pi.
PiScalar chern_pairing_horizontal(const QuatConnection& d, const CurvatureField& r,
                                  const std::vector<Rat>& p, const Vec3& u);

}  // namespace qtwist
