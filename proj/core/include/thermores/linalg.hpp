#pragma once

// Dense complex linear algebra used throughout the library. Every object in
// this problem is at most 64x64 (a two-qubit Liouvillian is 16x16), so the
// routines here favour accuracy and simplicity over asymptotic speed.

#include <complex>
#include <initializer_list>
#include <span>

#include <Eigen/Dense>

namespace thermores {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

ComplexMatrix identity(Eigen::Index dim);

/// Kronecker product; `a` indexes the coarse blocks.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors);

/// Largest entrywise modulus.
double max_abs(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
/// The series for the scaled matrix stops once a term falls below 1e-16
/// relative to the partial sum. Throws DimensionError for non-square input.
ComplexMatrix matexp(const ComplexMatrix& m);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
    RealVector values;
    ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};

/// Cyclic complex Jacobi diagonalization. Only the Hermitian part of `m` is
/// used; sweeps stop once the off-diagonal Frobenius norm drops below 1e-12
/// of the matrix norm (absolute floor 1e-14).
HermitianEigen hermitian_eigen(const ComplexMatrix& m);
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Column-stacking vectorization: vec(rho)[i + j*d] = rho(i, j).
/// Under this convention vec(A rho B) = (B^T (x) A) vec(rho).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows);

}  // namespace thermores
