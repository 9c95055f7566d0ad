// The flat quaternionic model R^{4n}: standard hypercomplex structure,
// Euclidean metric, polynomial fields and the basic projectors/predicates
// on bilinear forms.
#pragma once

#include "qtwist/matrix.hpp"
#include "qtwist/poly.hpp"
#include "qtwist/rational.hpp"

#include <array>
#include <map>

namespace qtwist {

// Scalar / covector / vector / bilinear fields with polynomial entries.
using PolyVec = std::vector<Poly>;
using PolyMat = Mat<Poly>;

// A section of Q in coefficients with respect to the admissible basis:
// A = a[0] J1 + a[1] J2 + a[2] J3.
using QSection = std::array<Poly, 3>;

struct AdmissibleBasis {
    std::array<RatMat, 3> J;
};

struct ModelContext {
    int n = 0;              // quaternionic dimension, dim M = 4n
    int dim = 0;            // 4n
    int degree_bound = 3;   // maximum polynomial degree for products
    AdmissibleBasis basis;
    RatMat g;               // Euclidean metric (identity)

    int nvars() const { return dim; }
    const RatMat& J(int a) const { return basis.J[a]; }

    Poly zero() const { return Poly::zero(dim); }
    Poly one() const { return Poly::constant(dim, Rat(1)); }
    PolyVec zero_vec() const { return PolyVec(dim, Poly::zero(dim)); }
    PolyMat zero_mat() const { return PolyMat(dim, dim, Poly::zero(dim)); }
    QSection zero_q() const { return {Poly::zero(dim), Poly::zero(dim), Poly::zero(dim)}; }

    PolyMat lift(const RatMat& m) const;   // constant matrix as a field
    RatMat eval(const PolyMat& m, std::span<const Rat> x) const;
    Vec3 eval(const QSection& a, std::span<const Rat> x) const;
};

// J_a = right multiplication by -i, -j, -k on H^n = R^{4n}; this choice
// gives J1 J2 = J3 and [J1, J2] = 2 J3. Rejects n < 2 (dim >= 8).
ModelContext build_flat_model(int n, int degree_bound = 3);

// All admissible-basis invariants: J_a^2 = -Id, J1 J2 = J3 = -J2 J1
// (and cyclic), orthogonality, and <J_a, J_b> = delta_ab in the
// normalized bundle metric. Throws on violation.
void validate_admissible_basis(const ModelContext& ctx);

// Normalized bundle metric on Q-valued matrices: <J_a, J_b> = delta_ab.
Rat q_inner(const ModelContext& ctx, const RatMat& a, const RatMat& b);

// Exact expansion of a matrix lying in span{J1,J2,J3}; throws if the
// reconstruction J(coords) does not reproduce the input.
Vec3 q_coords(const ModelContext& ctx, const RatMat& m);
RatMat q_matrix(const ModelContext& ctx, const Vec3& w);
PolyMat q_matrix(const ModelContext& ctx, const QSection& a);

// --- exterior calculus (flat coordinates) ---

// 3-forms are stored sparsely on strictly increasing index triples.
using ThreeForm = std::map<std::array<int, 3>, Poly>;

PolyVec exterior_derivative0(const Poly& f);               // df
PolyMat exterior_derivative1(const PolyVec& alpha);        // d(alpha), antisymmetric
ThreeForm exterior_derivative2(const PolyMat& omega);      // d of a 2-form
Poly codifferential(const PolyVec& alpha);                 // -sum_i d_i alpha_i

bool is_zero(const PolyVec& v);
bool is_zero(const PolyMat& m);
bool is_zero(const ThreeForm& f);
bool is_zero(const QSection& a);

// Exact primitive of a closed 1-form via the straight-line homotopy from
// the origin; returns false when d(alpha) != 0 (df == alpha fails).
bool antidifferentiate(const PolyVec& alpha, Poly& f_out);

// --- Q-hermitian machinery ---

// P_h(eta) = 1/4 (eta + sum_i eta(J_i ., J_i .)), on values and fields.
RatMat p_h_project(const ModelContext& ctx, const RatMat& eta);
PolyMat p_h_project(const ModelContext& ctx, const PolyMat& eta);

// F(J_a X, J_a Y) = F(X, Y) for a = 1,2,3 (basis pairs suffice).
bool is_q_hermitian(const ModelContext& ctx, const RatMat& f);
// Polynomial fields are tested coefficient-wise per monomial.
bool is_q_hermitian(const ModelContext& ctx, const PolyMat& f);

// Splits a polynomial bilinear field into monomial-coefficient matrices.
std::map<Mono, RatMat> monomial_matrices(const PolyMat& f);

RatMat sym_part(const RatMat& m);
RatMat skew_part(const RatMat& m);
PolyMat sym_part(const PolyMat& m);
PolyMat skew_part(const PolyMat& m);

}  // namespace qtwist
