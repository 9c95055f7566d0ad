// Double-precision finite-difference oracle for the curvature of the
// induced connection on the tangent vertical bundle.
//
// The oracle never reuses the exact curvature formulas: it evaluates the
// connection itself in a stereographic product chart of Z and forms the
// loop derivative  R(U,V)s = nabla_U nabla_V s - nabla_V nabla_U s  of
// commuting coordinate fields with Richardson-extrapolated central
// differences. Agreement with the component formulas is the acceptance
// test for those formulas.
#pragma once

#include "qtwist/twistor.hpp"

#include <array>

namespace qtwist {

struct FdConfig {
    double step = 1e-4;
    // directions: indices into the chart coordinates; 0..4n-1 are base
    // coordinates, 4n and 4n+1 are the two stereographic fiber coordinates.
    int dir_u = 0;
    int dir_v = 1;
};

struct FdResult {
    std::array<double, 3> fd{};       // loop-derivative curvature value
    std::array<double, 3> formula{};  // component-formula curvature value
    double rel_error = 0.0;
};

// Compares the finite-difference curvature of nabla acting on the section
// field s against curvature_nabla at chart center (p0, u0); u0 and its
// tangent frame give the stereographic chart. The optional twist 1-form
// beta adds pi*beta (x) J to the connection (and d beta (x) J to the
// expected curvature).
FdResult fd_curvature_check(const QuatConnection& d, const CurvatureField& r,
                            const SectionField& s, const std::vector<Rat>& p0,
                            const SpherePoint& u0, const FdConfig& cfg,
                            const PolyVec* beta = nullptr);

}  // namespace qtwist
