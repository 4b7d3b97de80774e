#pragma once

#include "diracac/potential.hpp"
#include "diracac/types.hpp"

namespace diracac::oracles {

// exp(M) by Taylor series with scaling and squaring.
CMatrix expm(const CMatrix& m);

// Generator [[a, lambda - b], [-(lambda + b), -a]] of the canonical system
// for constant a, b.
CMatrix constant_generator(const CMatrix& a, const CMatrix& b, Complex lambda);

// (F1(0), F2(0)) stacked as 2m x m for a piecewise-constant potential, by
// products of exp(-G h) over the cells between breakpoints, started from the
// plane wave (-i, 1) e^{i lambda R} at the support radius R. Throws
// InvalidArgument when a cell is not constant.
CMatrix jost_transfer(const MatrixPotential& pot, Complex lambda);

struct ResolventOracleOptions {
  double length = 40.0;   // right end of the discretized interval
  double step = 2e-3;     // box-scheme cell width (refined at breakpoints)
  double epsilon = 1e-2;  // spectral parameter is lambda + i epsilon
};

// Spectral density from the discretized operator: solve (D - z) u = 0 on
// (0, L) by the second-order box scheme with u2(0) = -xi and the outgoing
// condition u1(L) + i u2(L) = 0, for every unit vector xi at once. This gives
// K = R_z(0+, 0)_{11}; the result is (K - K*) / (2 pi i).
CMatrix resolvent_density(const MatrixPotential& pot, double lambda,
                          const ResolventOracleOptions& opts = {});

}  // namespace diracac::oracles
