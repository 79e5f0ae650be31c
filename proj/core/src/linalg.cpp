#include "thermores/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "thermores/errors.hpp"

namespace thermores {

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors) {
    if (factors.size() == 0) return identity(1);
    auto it = factors.begin();
    ComplexMatrix out = *it;
    for (++it; it != factors.end(); ++it) out = tensor(out, *it);
    return out;
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

namespace {

double one_norm(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

ComplexMatrix matexp(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("matexp: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected square");
    }
    if (!m.allFinite()) throw DomainError("matexp: non-finite entries");

    const Eigen::Index n = m.rows();
    const double norm = one_norm(m);

    // Scale so that ||m / 2^s||_1 <= 1/2; the Taylor tail then shrinks by at
    // least a factor 2k per term.
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const ComplexMatrix scaled = m / std::ldexp(1.0, squarings);

    ComplexMatrix sum = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k < 64; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        sum += term;
        if (one_norm(term) < 1e-16 * std::max(1.0, one_norm(sum))) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("hermitian_eigen: matrix is not square");
    const Eigen::Index n = m.rows();

    ComplexMatrix a = 0.5 * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    auto off_norm = [&a, n] {
        double s = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
        return std::sqrt(s);
    };
    // Quadratic convergence makes a rounding-level target cheap.
    const double target = std::max(4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * a.norm(),
                                   std::numeric_limits<double>::min());

    for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq_abs = std::abs(a(p, q));
                if (apq_abs < 1e-300) continue;
                const cplx phase = a(p, q) / apq_abs;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();

                // Real rotation that annihilates |a_pq| once the phase is removed.
                const double theta = (aqq - app) / (2.0 * apq_abs);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] in the (p, q) plane.
                const cplx gqp = -s * std::conj(phase);
                const cplx gqq = c * std::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + gqp * akq;
                    a(k, q) = s * akp + gqq * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(gqp) * aqk;
                    a(q, k) = s * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + gqp * vkq;
                    v(k, q) = s * vkp + gqq * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigen(m).values; }

ComplexVector vec(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows) {
    if (rows <= 0 || v.size() % rows != 0) throw DimensionError("unvec: length not divisible by rows");
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, v.size() / rows);
}

}  // namespace thermores
