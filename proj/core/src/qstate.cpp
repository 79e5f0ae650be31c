#include "thermores/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "thermores/errors.hpp"

namespace thermores {

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix minus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}
}  // namespace pauli

namespace {

long product(std::span<const int> dims) {
    return std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<>());
}

// Digits of a flat index in the mixed radix `dims`, most significant first.
std::vector<int> digits_of(long index, std::span<const int> dims) {
    std::vector<int> out(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = static_cast<int>(index % dims[k]);
        index /= dims[k];
    }
    return out;
}

long index_of(std::span<const int> digits, std::span<const int> dims) {
    long index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
    return index;
}

void require_dims(const ComplexMatrix& m, std::span<const int> dims, const char* where) {
    if (dims.empty() || std::any_of(dims.begin(), dims.end(), [](int d) { return d < 1; })) {
        throw DimensionError(std::string(where) + ": subsystem dimensions must be positive");
    }
    if (m.rows() != m.cols() || m.rows() != product(dims)) {
        throw DimensionError(std::string(where) + ": matrix size " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()) +
                             " does not match the subsystem dimensions");
    }
}

}  // namespace

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, std::vector<int> dims) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw DomainError("DensityMatrix::pure: zero state vector");
    const ComplexVector unit = psi / norm;
    return validate_density(unit * unit.adjoint(), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<int> dims) {
    const long d = product(dims);
    return validate_density(identity(d) / static_cast<double>(d), std::move(dims));
}

DensityMatrix validate_density(const ComplexMatrix& m, std::vector<int> dims,
                               const ValidationTolerance& tol) {
    using Kind = ValidationError::Kind;
    if (m.rows() != m.cols() || dims.empty() ||
        std::any_of(dims.begin(), dims.end(), [](int d) { return d < 1; }) ||
        m.rows() != product(dims)) {
        throw ValidationError(Kind::Shape, "validate_density: shape does not match dims");
    }
    if (!m.allFinite()) throw ValidationError(Kind::NonFinite, "validate_density: non-finite entries");

    const double asymmetry = max_abs(m - m.adjoint());
    if (asymmetry > tol.hermiticity) {
        throw ValidationError(Kind::Hermiticity,
                              "validate_density: not Hermitian (max |rho - rho^dag| = " +
                                  std::to_string(asymmetry) + ")");
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());

    const double trace = h.trace().real();
    if (std::abs(trace - 1.0) > tol.trace) {
        throw ValidationError(Kind::Trace,
                              "validate_density: trace " + std::to_string(trace) + " is not 1");
    }
    const double min_eig = hermitian_eigenvalues(h).minCoeff();
    if (min_eig < -tol.positivity) {
        throw ValidationError(Kind::Positivity, "validate_density: eigenvalue " +
                                                    std::to_string(min_eig) + " is negative");
    }
    return DensityMatrix(std::move(h), std::move(dims));
}

ComplexMatrix embed_op(const ComplexMatrix& op, int site, int n) {
    if (op.rows() != 2 || op.cols() != 2) throw DimensionError("embed_op: operator must be 2x2");
    if (n < 1 || site < 0 || site >= n) {
        throw DimensionError("embed_op: site " + std::to_string(site) + " out of range for " +
                             std::to_string(n) + " qubits");
    }
    const long left = 1L << site;
    const long right = 1L << (n - site - 1);
    return tensor({identity(left), op, identity(right)});
}

ComplexMatrix embed_pair(const ComplexMatrix& op, int first, int second, int n) {
    if (op.rows() != 4 || op.cols() != 4) throw DimensionError("embed_pair: operator must be 4x4");
    if (n < 2 || first < 0 || second < 0 || first >= n || second >= n || first == second) {
        throw DimensionError("embed_pair: invalid sites");
    }
    const long dim = 1L << n;
    const int shift_a = n - 1 - first;
    const int shift_b = n - 1 - second;
    const long mask = (1L << shift_a) | (1L << shift_b);

    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (long r = 0; r < dim; ++r) {
        const long local_r = 2 * ((r >> shift_a) & 1) + ((r >> shift_b) & 1);
        const long rest = r & ~mask;
        for (long local_c = 0; local_c < 4; ++local_c) {
            const long c = rest | ((local_c >> 1) << shift_a) | ((local_c & 1) << shift_b);
            out(r, c) = op(local_r, local_c);
        }
    }
    return out;
}

ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, std::span<const int> dims,
                                   std::span<const int> keep) {
    require_dims(m, dims, "partial_trace");
    const int count = static_cast<int>(dims.size());
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.empty() || std::adjacent_find(kept.begin(), kept.end()) != kept.end() ||
        kept.front() < 0 || kept.back() >= count) {
        throw DimensionError("partial_trace: invalid set of subsystems to keep");
    }

    std::vector<int> traced;
    for (int k = 0; k < count; ++k)
        if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);

    std::vector<int> kept_dims, traced_dims;
    for (int k : kept) kept_dims.push_back(dims[k]);
    for (int k : traced) traced_dims.push_back(dims[k]);
    const long dk = product(kept_dims);
    const long dt = product(traced_dims);

    std::vector<int> digits(dims.size());
    auto full_index = [&](long kept_index, long traced_index) {
        const auto kd = digits_of(kept_index, kept_dims);
        const auto td = digits_of(traced_index, traced_dims);
        for (std::size_t i = 0; i < kept.size(); ++i) digits[kept[i]] = kd[i];
        for (std::size_t i = 0; i < traced.size(); ++i) digits[traced[i]] = td[i];
        return index_of(digits, dims);
    };

    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (long t = 0; t < dt; ++t) {
        std::vector<long> rows(static_cast<std::size_t>(dk));
        for (long i = 0; i < dk; ++i) rows[i] = full_index(i, t);
        for (long i = 0; i < dk; ++i)
            for (long j = 0; j < dk; ++j) out(i, j) += m(rows[i], rows[j]);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    ComplexMatrix reduced = partial_trace_matrix(rho.matrix(), rho.dims(), keep);
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    std::vector<int> dims;
    for (int k : kept) dims.push_back(rho.dims()[k]);
    return validate_density(reduced, std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
    return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

ComplexMatrix partial_transpose_matrix(const ComplexMatrix& m, std::span<const int> dims,
                                       int subsystem) {
    require_dims(m, dims, "partial_transpose");
    if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) {
        throw DimensionError("partial_transpose: subsystem index out of range");
    }
    const long d = m.rows();
    ComplexMatrix out(d, d);
    for (long r = 0; r < d; ++r) {
        auto rd = digits_of(r, dims);
        for (long c = 0; c < d; ++c) {
            auto cd = digits_of(c, dims);
            std::swap(rd[subsystem], cd[subsystem]);
            out(index_of(rd, dims), index_of(cd, dims)) = m(r, c);
            std::swap(rd[subsystem], cd[subsystem]);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, int subsystem) {
    if (rho.dims().size() != 2) {
        throw DimensionError("partial_transpose: exactly two subsystems are supported, got " +
                             std::to_string(rho.dims().size()));
    }
    return partial_transpose_matrix(rho.matrix(), rho.dims(), subsystem);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("trace_distance: dimension mismatch");
    return 0.5 * hermitian_eigenvalues(a.matrix() - b.matrix()).cwiseAbs().sum();
}

}  // namespace thermores
