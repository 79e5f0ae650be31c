#pragma once

#include <functional>
#include <vector>

#include "thermores/lindblad.hpp"
#include "thermores/linalg.hpp"
#include "thermores/qstate.hpp"

namespace thermores {

/// A completely positive trace-preserving map given by Kraus operators.
/// Construction checks that the list is nonempty, consistently shaped, and
/// complete: || sum M^dag M - I ||_max <= 1e-12.
class QuantumChannel {
public:
    explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

    static QuantumChannel identity(Eigen::Index dim);

    const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
    Eigen::Index dim_in() const noexcept { return kraus_.front().cols(); }
    Eigen::Index dim_out() const noexcept { return kraus_.front().rows(); }

    /// sum M X M^dag for an arbitrary operator X (no validation).
    ComplexMatrix apply(const ComplexMatrix& x) const;

    /// || sum M^dag M - I ||_max
    double completeness_error() const;

private:
    std::vector<ComplexMatrix> kraus_;
};

/// Generalized amplitude damping parameters: ground-state weight p of the
/// reservoir and damping fraction lam = lambda(t).
struct ThermalChannelParams {
    double p = 1.0;
    double lam = 0.0;

    /// p = pair.ground_weight, lam = damping_fraction(pair, t).
    static ThermalChannelParams from_mode(const ThermalPair& pair, double t);
};

/// M1 = sqrt(p) diag(1, sqrt(1-lam)), M2 = sqrt(p lam) s-,
/// M3 = sqrt(1-p) diag(sqrt(1-lam), 1), M4 = sqrt((1-p) lam) s+.
/// Throws DomainError unless p, lam are in [0, 1].
QuantumChannel gad_kraus(const ThermalChannelParams& params);

/// sum M rho M^dag, validated as a density matrix.
DensityMatrix apply_channel(const QuantumChannel& channel, const DensityMatrix& rho);

/// C = sum_{kl} |k><l| (x) map(|k><l|), input factor first.
ComplexMatrix choi_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map,
                          Eigen::Index dim_in);
ComplexMatrix choi_matrix(const QuantumChannel& channel);

/// Kraus operators from the eigen-decomposition of a Choi matrix. Eigenvalues
/// in [-1e-10, 0) are clipped; anything more negative raises
/// NotCompletelyPositiveError.
QuantumChannel channel_from_choi(const ComplexMatrix& choi, Eigen::Index dim_in,
                                 Eigen::Index dim_out);

/// Frobenius norm of the Choi difference.
double channel_distance(const QuantumChannel& a, const QuantumChannel& b);

/// The map exp(L t) as a Kraus channel.
QuantumChannel lindblad_to_channel(const Liouvillian& L, double t);

/// `second` after `first`.
QuantumChannel compose(const QuantumChannel& first, const QuantumChannel& second);

/// Channel acting independently on two tensor factors.
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

}  // namespace thermores
