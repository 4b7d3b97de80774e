#pragma once

#include "diracac/grid.hpp"
#include "diracac/potential.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace diracac {

// Sampled potential file, format "dirac1d-potential v1":
//
//   dirac1d-potential v1
//   m <int>
//   step <real>
//   r_max <real>
//   support_radius <real>
//   nodes <int>
//   <row 0>
//   ...
//
// Each row holds 2*m*m whitespace-separated "re,im" tokens: the entries of
// a(r_i) row-major followed by the entries of b(r_i) row-major. Rows follow
// the uniform grid RadialGrid::uniform(r_max, step). Lines starting with '#'
// are ignored. Loaded matrices are replaced by their Hermitian part, with a
// warning when the defect exceeds 1e-8.
MatrixPotential read_potential(std::istream& in);
MatrixPotential load_potential(const std::string& path);

// Samples pot on grid and writes it in the format above with 17 significant
// digits.
void write_potential(std::ostream& out, const MatrixPotential& pot,
                     const RadialGrid& grid);
void save_potential(const std::string& path, const MatrixPotential& pot,
                    const RadialGrid& grid);

// Random Hermitian step potential: `pieces` steps on random subintervals of
// [0, support] with Hermitian coefficients of operator norm <= amplitude.
MatrixPotential random_step_potential(int m, double support, std::uint64_t seed,
                                      double amplitude = 1.0, int pieces = 4);

// Random Hermitian smooth potential built from C-infinity bumps.
MatrixPotential random_bump_potential(int m, double support, std::uint64_t seed,
                                      double amplitude = 1.0, int pieces = 3);

// Random Hermitian m x m matrix with entries of modulus <= 1 scaled to
// operator norm `norm`.
CMatrix random_hermitian(int m, std::uint64_t seed, double norm = 1.0);

}  // namespace diracac
