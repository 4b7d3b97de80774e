#include "diracac/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace diracac::linalg {

double hermitian_defect(const CMatrix& m) {
  return (m - m.adjoint()).norm();
}

CMatrix hermitian_part(const CMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CMatrix matrix_abs(const CMatrix& m) {
  const CMatrix gram = hermitian_part(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  RVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() *
         es.eigenvectors().adjoint();
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  const double smallest = sv(sv.size() - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

CMatrix checked_inverse(const CMatrix& m, double max_condition,
                        const char* what) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  const double cond = smallest > 0.0
                          ? sv(0) / smallest
                          : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << what << " is near-degenerate (condition number " << cond << ")";
    throw NearDegenerate(cond, os.str());
  }
  return svd.matrixV() * sv.cwiseInverse().asDiagonal() *
         svd.matrixU().adjoint();
}

}  // namespace diracac::linalg
