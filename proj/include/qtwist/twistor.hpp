// Twistor fiber geometry over the flat model. Points of the sphere bundle
// Z = R^{4n} x S^2 are (p, u) with J_u = sum u_a J_a; the tangent vertical
// bundle Theta has fiber u-perp inside the Q coordinates, complex structure
// w -> u x w, and the connection induced by D via projection.
//
// Sections of Theta over Z are represented by ambient polynomial triples
// in the 4n + 3 variables (x, u); restriction to |u| = 1 is implicit and
// all derivatives are taken along curves in Z, so the calculus stays exact.
#pragma once

#include "qtwist/connection.hpp"
#include "qtwist/ehrep.hpp"
#include "qtwist/model.hpp"

namespace qtwist {

// Rational point of S^2 with a rational orthonormal tangent frame
// (b2 = u x b1); frames exist for every point in the published table.
struct SpherePoint {
    Vec3 u;
    Vec3 b1;
    Vec3 b2;

    SpherePoint(Vec3 u_, Vec3 b1_);
};

// Six axis points followed by twelve Pythagorean points.
const std::vector<SpherePoint>& sphere_point_table();

struct TwistorPoint {
    std::vector<Rat> p;  // base point in R^{4n}
    Vec3 u;              // unit fiber coordinate

    TwistorPoint(std::vector<Rat> p_, Vec3 u_);
};

// Tangent vector (X, W) at (p, u) with W perpendicular to u.
struct TwistorTangent {
    std::vector<Rat> x;
    Vec3 w;

    TwistorTangent(std::vector<Rat> x_, const Vec3& u, Vec3 w_);
};

// Orthogonal projection Pi_J(A) = A - <A, J> J in fiber coordinates.
Vec3 pi_project(const Vec3& u, const Vec3& a);
// The same projection computed as 1/2 (A + J A J) on matrices.
RatMat pi_project_matrix(const ModelContext& ctx, const Vec3& u, const RatMat& a);

// J_u as a matrix.
RatMat j_matrix(const ModelContext& ctx, const Vec3& u);

// Vertical part of U = (X, W) with respect to the induced connection:
// v(U) = W + Gamma(X) u.
Vec3 vertical_part(const QuatConnection& d, const TwistorPoint& z, const TwistorTangent& t);
// Horizontal lift of X at (p, u): (X, -Gamma(X) u).
TwistorTangent horizontal_lift(const QuatConnection& d, const TwistorPoint& z,
                               const std::vector<Rat>& x);

// nabla_U(A~) = Pi_J(D_X A) - <J, A> v(U) for a distinguished section A~.
Vec3 nabla_distinguished(const QuatConnection& d, const QSection& a, const TwistorPoint& z,
                         const TwistorTangent& t);

// --- polynomial sections of Theta over Z ---

// Ambient R^3-valued polynomial in (x, u); as a section its value at
// (p, u) is the fiber vector of the triple evaluated there. Constructors
// project onto u-perp so the result is a genuine Theta section.
struct SectionField {
    int dim = 0;  // base dimension 4n; polynomials live in 4n + 3 variables
    std::array<Poly, 3> c;

    int nvars() const { return dim + 3; }
    Vec3 value(const TwistorPoint& z) const;
};

// Pi_u(c) for an arbitrary ambient polynomial triple.
SectionField project_section(const ModelContext& ctx, const std::array<Poly, 3>& ambient);
// Distinguished section A~ of a Q-section (lifted to Z variables).
SectionField distinguished_section(const ModelContext& ctx, const QSection& a);
// J s = u x s (again an ambient polynomial formula).
SectionField j_section(const SectionField& s);
// Pullback multiplication by a base function.
SectionField scale_section(const Poly& base_fn, const SectionField& s);

// nabla_U s = Pi_u( U(s) + Gamma(X) s ) at z, U = (X, W).
Vec3 nabla_section(const QuatConnection& d, const SectionField& s, const TwistorPoint& z,
                   const TwistorTangent& t);

// (0,1)-part: dbar_U s = 1/2 ( nabla_U s + J nabla_{JU} s ).
Vec3 dbar_section(const QuatConnection& d, const SectionField& s, const TwistorPoint& z,
                  const TwistorTangent& t);

// J U = (J_u X, u x W).
TwistorTangent j_tangent(const ModelContext& ctx, const TwistorPoint& z,
                         const TwistorTangent& t);

// Curvature of nabla from the component formulas:
//   R(U, V) A = Pi_J([R^D_{X_U, X_V}, A]) - Omega_p(v(U), v(V)) J A,
// with Omega_p the fiber area form u . (b x c).
Vec3 curvature_nabla(const QuatConnection& d, const CurvatureField& r, const TwistorPoint& z,
                     const TwistorTangent& tu, const TwistorTangent& tv, const Vec3& a);

// Residual of Pi_J([R^D_{JX /\ JY - X /\ Y}, A]) as a polynomial field in
// the base point (fixed rational u, X, Y and A perpendicular to u).
QSection chern_condition_residual(const QuatConnection& d, const CurvatureField& r,
                                  const Vec3& u, int bx, int by, const Vec3& a);

// Difference of the connections induced by D and D + S^alpha applied to a
// distinguished section; the closed form is -2 alpha(J_u X) J (A~), for an
// arbitrary base connection D.
Vec3 nabla_difference_lhs(const QuatConnection& d, const QuatConnection& d_prime,
                          const QSection& a, const TwistorPoint& z, const TwistorTangent& t);
Vec3 nabla_difference_rhs(const ModelContext& ctx, const PolyVec& alpha, const QSection& a,
                          const TwistorPoint& z, const TwistorTangent& t);

// beta-twist: nabla^beta = nabla + pi*beta (x) J; the extra (0,1) piece is
// beta~_U(s) = 1/2 ( beta(X) J s - beta(J_u X) s ).
Vec3 beta_twist_term(const ModelContext& ctx, const PolyVec& beta, const TwistorPoint& z,
                     const TwistorTangent& t, const Vec3& s_val);
Vec3 nabla_twisted(const QuatConnection& d, const PolyVec& beta, const SectionField& s,
                   const TwistorPoint& z, const TwistorTangent& t);
Vec3 beta_tilde(const ModelContext& ctx, const PolyVec& beta, const TwistorPoint& z,
                const TwistorTangent& t, const Vec3& s_val);
// Twisted curvature = untwisted + d(beta)(X_U, X_V) J s.
Vec3 curvature_twisted(const QuatConnection& d, const CurvatureField& r, const PolyVec& beta,
                       const TwistorPoint& z, const TwistorTangent& tu,
                       const TwistorTangent& tv, const Vec3& a);

// Gauge transform of a connection on Theta by (rho, theta):
// nabla' = nabla + (d^J log rho - d theta) (x) J, where rho and theta are
// polynomial fields on the chart (rho nonvanishing at the sample point)
// and (d^J f)(U) = -df(J U).
Vec3 gauge_transformed_nabla(const QuatConnection& d, const SectionField& s, const Poly& rho,
                             const Poly& theta, const TwistorPoint& z,
                             const TwistorTangent& t);

// D_{JX}A - <D_{JX}A, J> J - J D_X A - <D_X A, J> Id as a matrix-valued
// polynomial field in the base point (fixed rational u, basis direction bx).
PolyMat holomorphicity_residual(const QuatConnection& d, const QSection& a, const Vec3& u,
                                int bx);

// Same residual expressed through the abstract side: the bridge pullback
// of T_{j(u)} applied to the bridged tensor DA(p).
PolyMat holomorphicity_residual_via_tj(const QuatConnection& d, const Bridge& br,
                                       const QSection& a, const Vec3& u, int bx,
                                       std::span<const Rat> p);

// Sections s = A~ + J B~ and the conjugation s -> sigma_*(s o sigma):
// (A, B) -> (-A, B). Distinguished sections are purely imaginary.
struct ThetaSection {
    QSection a;
    QSection b;
};

ThetaSection conjugate_section(const ThetaSection& s);
Vec3 theta_section_value(const ModelContext& ctx, const ThetaSection& s,
                         const TwistorPoint& z);

}  // namespace qtwist
