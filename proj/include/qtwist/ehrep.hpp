// The Sp(1) E-H formalism over Gaussian rationals: the 2-dimensional
// symplectic space H with its quaternionic structure, the symmetric square
// S^2 H acting on H, the F map cutting out S^3 H inside H (x) S^2 H, the
// T_j operators, the conformal weight operator B on T*M (x) Q, and the
// bridge identifying the complexified concrete side with E* (x) H (x) S^2 H.
//
// Basis conventions (fixed once):
//   H      : h = (1,0), ht = q(h) = (0,1); omega(h, ht) = 1.
//   S^2 H  : s1 = h h, s2 = h ht + ht h, s3 = ht ht   ("s-coordinates").
//   sp(1)  : j1 = -i s2, j2 = -(s1 + s3), j3 = i (s3 - s1)  ("j-coordinates");
//            j-coordinates make the quaternion algebra the cross-product
//            algebra and the hermitian metric the standard dot product.
#pragma once

#include "qtwist/connection.hpp"
#include "qtwist/gauss.hpp"
#include "qtwist/matrix.hpp"
#include "qtwist/model.hpp"

#include <array>

namespace qtwist {

using HVec = std::array<GaussRat, 2>;
using S2H = std::array<GaussRat, 3>;   // s-coordinates
using CVec3 = std::array<GaussRat, 3>; // j-coordinates

GaussRat omega_h(const HVec& v, const HVec& w);  // symplectic form
HVec q_conj(const HVec& v);                      // quaternionic structure, q^2 = -Id
GaussRat herm_h(const HVec& v, const HVec& w);   // <v, w> = omega(v, q w)

// a (x) b + b (x) a in s-coordinates.
S2H sym_prod(const HVec& a, const HVec& b);
// a (x) a in s-coordinates.
S2H square(const HVec& a);

// S^2 H acts on H through h -> omega(h, .): 2x2 matrix of an s-coordinate
// element.
GaussMat s2h_matrix(const S2H& t);

// Change of basis between s- and j-coordinates on S^2 H.
CVec3 j_from_s(const S2H& t);
S2H s_from_j(const CVec3& w);

// Hermitian inner product on S^2 H (carries the 1/2-normalized product of
// H (x) H, so <j_a, j_b> = delta_ab).
GaussRat herm_s2h(const S2H& x, const S2H& y);

// F : H (x) S^2 H -> H,  F(h (x) (h1 h2 + h2 h1)) = omega(h,h1) h2 + omega(h,h2) h1.
// Input indexed by (b, c) -> 3*b + c over the h_b (x) s_c basis.
using HS2H = std::array<GaussRat, 6>;
HVec f_map(const HS2H& t);
GaussMat f_matrix();       // 2x6 on the h_b (x) s_c basis
GaussMat f_matrix_cube();  // 2x8 on the full H (x) H (x) H basis

// sp(1) basis attached to a unit spinor: j1 = -i(h ht + ht h),
// j2 = -(h h + ht ht), j3 = i(ht ht - h h); each as a 2x2 matrix on H.
std::array<GaussMat, 3> sp1_basis_from(const HVec& h);

// Element of E* (x) H (x) S^2 H, dim 12n over the Gaussian rationals.
// The H factor acts as the functional v -> omega(h_b, v_H).
struct EHTensor {
    int n = 0;
    std::vector<GaussRat> c;  // index ((k*2)+b)*3 + s

    explicit EHTensor(int n_) : n(n_), c(static_cast<size_t>(12) * n_) {}
    static int idx(int k, int b, int s) { return (k * 2 + b) * 3 + s; }
    GaussRat& at(int k, int b, int s) { return c[static_cast<size_t>(idx(k, b, s))]; }
    const GaussRat& at(int k, int b, int s) const {
        return c[static_cast<size_t>(idx(k, b, s))];
    }
    bool is_zero() const;

    // gamma(v) in s-coordinates for v in E (x) H (index (k, b) -> 2k + b).
    S2H apply(const std::vector<GaussRat>& v) const;
};

EHTensor operator-(const EHTensor& a);
EHTensor operator-(const EHTensor& a, const EHTensor& b);

// gamma of a decomposable e* (x) h per the embedding of E* (x) H into
// E* (x) H (x) S^2 H: gamma(v) = 2 (e* ht)(v) hh - (e* h)(v) (ht h + h ht).
EHTensor embed_eh(int n, int k, const HVec& h);

// T_j(gamma)(v) = gamma(jv) - <gamma(jv), j> j - j o gamma(v) - <gamma(v), j> Id,
// for j a real unit imaginary quaternion given in j-coordinates.
EHTensor t_j(const Vec3& j, const EHTensor& gamma);
// T_j as a 12n x 12n matrix over the EHTensor coordinates.
GaussMat t_j_matrix(int n, const Vec3& j);

// --- conformal weight operator on the real side ---
// Real coordinates on T*M (x) Q: index i*3 + a for dx_i (x) J_a.

// B(alpha (x) A)(X) = [S^alpha_X, A], assembled column by column.
RatMat weight_matrix_commutator(const ModelContext& ctx);
// Three-term expansion B(alpha (x) A)(X) = sum_a alpha([J_a, A](X)) J_a.
RatMat weight_matrix_expansion(const ModelContext& ctx);

// pi_s3 = (4 Id - B)/6 and pi_h = (B + 2 Id)/6.
std::pair<RatMat, RatMat> weight_projectors(const RatMat& b);

// Apply B to a polynomial tensor field (coordinates (i,a) -> Poly).
std::vector<Poly> apply_weight(const RatMat& b, const std::vector<Poly>& coords);

// --- bridge between the complexified concrete side and E*(x)H(x)S^2H ---

struct Bridge {
    int n = 0;
    GaussMat to_eh;    // 12n x 12n: real (i,a) coordinates -> EH coordinates
    GaussMat from_eh;  // exact inverse

    EHTensor push(const std::vector<GaussRat>& real_coords) const;
    std::vector<GaussRat> pull(const EHTensor& t) const;
};

Bridge make_bridge(const ModelContext& ctx);

// Intertwining residuals (all must vanish):
//   form factor: (beta (x) A) -> (-beta o J_a) (x) A   vs  j_a on the H factor,
//   Q factor:    (beta (x) A) -> beta (x) [J_a, A]     vs  ad(j_a) on S^2 H.
GaussMat bridge_form_residual(const ModelContext& ctx, const Bridge& br, int a);
GaussMat bridge_q_residual(const ModelContext& ctx, const Bridge& br, int a);

// Abstract weight operator 4 pi_H - 2 pi_{S^3}, with pi_{S^3} the hermitian
// projector onto Id_{E*} (x) ker F.
GaussMat abstract_weight(int n);

// Hermitian projector onto ker F inside H (x) S^2 H (6x6).
GaussMat s3_fiber_projector();

// Exact intersection of ker T_j over the given unit j's; returns a matrix
// whose columns span the intersection.
GaussMat kernel_intersection(int n, const std::vector<Vec3>& js);

// Columns spanning bridge(complexified image of pi_h / pi_s3).
GaussMat bridged_eigenspace(const ModelContext& ctx, const Bridge& br, const RatMat& b,
                            int eigenvalue);

}  // namespace qtwist
