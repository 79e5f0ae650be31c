#pragma once

#include <span>
#include <vector>

#include "thermores/linalg.hpp"

namespace thermores {

/// Pauli operators in the ordered basis {|0>, |1>}. |0> is the energy ground
/// state, sigma_z = diag(+1, -1), sigma_minus |1> = |0>.
namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix plus();   // |1><0|
ComplexMatrix minus();  // |0><1|
}  // namespace pauli

/// Default tolerances for density-matrix validation.
struct ValidationTolerance {
    double symmetrize_below = 1e-10;  // asymmetry silently removed below this
    double hermiticity = 1e-8;
    double trace = 1e-8;
    double positivity = 1e-8;
};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite,
/// with an explicit list of subsystem dimensions whose product is the size.
/// Multi-qubit ordering puts subsystem 0 on the most significant index.
class DensityMatrix {
public:
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const std::vector<int>& dims() const noexcept { return dims_; }
    Eigen::Index dim() const noexcept { return matrix_.rows(); }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

    double purity() const;

    /// |psi><psi| / <psi|psi>.
    static DensityMatrix pure(const ComplexVector& psi, std::vector<int> dims);
    static DensityMatrix maximally_mixed(std::vector<int> dims);

private:
    friend DensityMatrix validate_density(const ComplexMatrix&, std::vector<int>,
                                          const ValidationTolerance&);
    DensityMatrix(ComplexMatrix m, std::vector<int> dims)
        : matrix_(std::move(m)), dims_(std::move(dims)) {}

    ComplexMatrix matrix_;
    std::vector<int> dims_;
};

/// Validates `m` as a density matrix over subsystems `dims`. Asymmetry below
/// tol.symmetrize_below is removed by (m + m^dag)/2. Each failing check raises
/// a ValidationError with its own kind.
DensityMatrix validate_density(const ComplexMatrix& m, std::vector<int> dims,
                               const ValidationTolerance& tol = {});

/// I^{(x) site} (x) op (x) I^{(x) (n - site - 1)} for a 2x2 operator.
ComplexMatrix embed_op(const ComplexMatrix& op, int site, int n);

/// Embeds a 4x4 two-qubit operator acting on (first, second) into n qubits.
/// The sites need not be adjacent or ordered; op's first tensor factor acts
/// on `first`.
ComplexMatrix embed_pair(const ComplexMatrix& op, int first, int second, int n);

/// Reduced state on the subsystems listed in `keep` (kept in ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// Partial trace of an arbitrary (not necessarily positive) operator.
ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, std::span<const int> dims,
                                   std::span<const int> keep);

/// Transposes the indices of one subsystem of a bipartite state.
ComplexMatrix partial_transpose(const DensityMatrix& rho, int subsystem);
ComplexMatrix partial_transpose_matrix(const ComplexMatrix& m, std::span<const int> dims,
                                       int subsystem);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace thermores
