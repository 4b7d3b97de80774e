#pragma once

#include "diracac/types.hpp"

namespace diracac::linalg {

// Frobenius norm of M - M*.
double hermitian_defect(const CMatrix& m);

// (M + M*) / 2
CMatrix hermitian_part(const CMatrix& m);

// Smallest eigenvalue of the Hermitian part of M.
double min_eigenvalue(const CMatrix& m);

// |M| = sqrt(M* M). Eigenvalues of M* M are clamped at zero before the root.
CMatrix matrix_abs(const CMatrix& m);

// 2-norm condition number from the singular values.
double condition_number(const CMatrix& m);

// Inverse through a rank-revealing SVD. Throws NearDegenerate when the
// condition number exceeds max_condition.
CMatrix checked_inverse(const CMatrix& m, double max_condition,
                        const char* what = "matrix");

}  // namespace diracac::linalg
