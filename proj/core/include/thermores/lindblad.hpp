#pragma once

#include <array>
#include <span>
#include <vector>

#include "thermores/linalg.hpp"
#include "thermores/qstate.hpp"

namespace thermores {

/// One term rate * D[jump] of a Lindblad generator.
struct DissipatorTerm {
    ComplexMatrix jump;
    double rate = 0.0;
};

/// Lindblad generator acting on column-stacked density matrices (see vec()).
class Liouvillian {
public:
    /// Checks that `matrix` is dim^2 x dim^2, finite, and trace preserving.
    Liouvillian(Eigen::Index dim, ComplexMatrix matrix);

    Eigen::Index dim() const noexcept { return dim_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }

    /// L(rho) as a dim x dim matrix.
    ComplexMatrix apply(const ComplexMatrix& rho) const;

private:
    Eigen::Index dim_;
    ComplexMatrix matrix_;
};

/// L = sum_k rate_k (conj(c_k) (x) c_k - 1/2 I (x) c_k^dag c_k - 1/2 (c_k^dag c_k)^T (x) I).
Liouvillian build_liouvillian(std::span<const DissipatorTerm> terms, Eigen::Index dim);

/// Engineered reservoir parameters, in units with hbar = k_B = 1.
struct ReservoirSpec {
    double omega0 = 1.0;       // bare qubit frequency
    double g = 0.0;            // dressing coupling
    double gamma = 1.0;        // system-reservoir rate
    double temperature = 0.0;
};

/// Throws DomainError unless omega0 > 0, g >= 0, gamma > 0, temperature >= 0, all finite.
void require_valid(const ReservoirSpec& spec);

/// Thermal occupation data for one bosonic mode of the reservoir.
struct ThermalPair {
    double nbar = 0.0;           // 1 / (e^{omega/T} - 1); negative for omega < 0
    double ground_weight = 1.0;  // p = (e^{-omega/T} + 1)^{-1}
    double relaxation = 1.0;     // R = |coth(omega / 2T)| = |2 nbar + 1|
    double rate_down = 0.0;      // gamma * p * R
    double rate_up = 0.0;        // gamma * (1 - p) * R
};

/// Thermal data for a mode of frequency `omega`. Boltzmann exponents beyond
/// +-700 saturate to their exact limits; omega == 0 gives p = 1/2 and infinite
/// occupation and rates.
ThermalPair thermal_mode(double omega, double temperature, double gamma);

/// Mode j in {1, 2} has frequency omega0 - g (j = 1) or omega0 + g (j = 2).
double mode_frequency(const ReservoirSpec& spec, int mode);
ThermalPair thermal_pair(const ReservoirSpec& spec, int mode);

/// lambda(t) = 1 - exp(-(rate_up + rate_down) t), i.e. 1 - e^{-gamma R t}.
double damping_fraction(const ThermalPair& pair, double t);

/// 1 - damping_fraction, i.e. exp(-gamma R t), without the cancellation.
double damping_complement(const ThermalPair& pair, double t);

/// Dressed two-qubit basis |0~> = |00>, |1~> = (|01> + i|10>)/sqrt2,
/// |2~> = (i|01> + |10>)/sqrt2, |3~> = |11>, with energies
/// 0, omega0 - g, omega0 + g, 2 omega0.
struct DressedBasis {
    std::array<ComplexVector, 4> states;
    std::array<double, 4> energies;
};

DressedBasis dressed_basis(const ReservoirSpec& spec = {});

/// Unitary whose k-th column is |k~>.
ComplexMatrix dressed_unitary();

/// <k~| rho |k~> for k = 0..3.
std::array<double, 4> dressed_populations(const ComplexMatrix& rho);
std::array<double, 4> dressed_populations(const DensityMatrix& rho);

/// E_1 = (s-^(0) + i sz^(0) s-^(1)) / sqrt2 and E_2 = (s-^(1) + i sz^(1) s-^(0)) / sqrt2.
/// E_1 lowers |1~> -> |0~> and |3~> -> |2~>; E_2 lowers |2~> -> |0~> and |3~> -> |1~>.
struct DressedJumps {
    ComplexMatrix e1;
    ComplexMatrix e2;
};

DressedJumps dressed_jump_ops();

/// Which dressed mode receives the lower frequency omega0 - g. Standard puts
/// it on the mode lowered by E_1 (excited state |1~>); Swapped exchanges them.
enum class ModeOrder { Standard, Swapped };

/// Four-term generator: E_j at rate_down(j), E_j^dag at rate_up(j).
Liouvillian engineered_liouvillian(const ReservoirSpec& spec,
                                   ModeOrder order = ModeOrder::Standard);

/// Single qubit coupled through sigma_- to a mode of frequency `omega`.
Liouvillian thermal_qubit_liouvillian(double omega, double temperature, double gamma);

/// exp(L t) acting on vec(rho).
ComplexMatrix propagator(const Liouvillian& L, double t);

/// unvec(exp(L t) vec(rho0)), validated. t == 0 returns rho0 unchanged.
DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& L, double t);

/// Null vector of L from its eigen-decomposition, Hermitized and trace
/// normalized. Throws DegenerateSteadyStateError unless exactly one eigenvalue
/// has modulus <= 1e-10 (scaled by max(1, max|L|)). Empty `dims` means qubits
/// when the dimension is a power of two, a single subsystem otherwise.
DensityMatrix steady_state(const Liouvillian& L, std::vector<int> dims = {});

/// Dressed-basis populations q_k of the thermal state:
/// q0 = p1 p2, q1 = (1 - p1) p2, q2 = p1 (1 - p2), q3 = (1 - p1)(1 - p2).
std::array<double, 4> gibbs_populations(const ReservoirSpec& spec,
                                        ModeOrder order = ModeOrder::Standard);
DensityMatrix gibbs_dressed(const ReservoirSpec& spec, ModeOrder order = ModeOrder::Standard);

}  // namespace thermores
