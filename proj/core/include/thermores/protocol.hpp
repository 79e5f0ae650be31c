#pragma once

// Density-matrix emulation of the two-part trapped-ion reservoir protocol.
// Each part applies the basis change V to the two system qubits, prepares an
// ancilla in p|0><0| + (1-p)|1><1|, partially swaps it with one system qubit,
// resets (traces out) the ancilla and undoes V. The closing V^dag of the first
// part cancels against the opening V of the second. Gates are ideal unitaries.

#include <optional>
#include <span>
#include <string>

#include "thermores/channel.hpp"
#include "thermores/lindblad.hpp"
#include "thermores/qstate.hpp"

namespace thermores {

/// A labelled unitary; construction checks U^dag U = I within 1e-12.
class GateUnitary {
public:
    GateUnitary(ComplexMatrix matrix, std::string label);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const std::string& label() const noexcept { return label_; }
    ComplexMatrix adjoint() const { return matrix_.adjoint(); }

private:
    ComplexMatrix matrix_;
    std::string label_;
};

/// V = exp(+i pi/4 (s+ s- + s- s+)). V is the identity on |00> and |11> and
/// maps the dressed states onto product states: |1~> -> i|10>, |2~> -> i|01>.
/// Conjugation by V turns E_1 into s- on qubit 0 and E_2 into s- on qubit 1.
GateUnitary basis_change_unitary();

enum class Axis { X, Y, Z };

/// Collective gate exp(i theta (s_a (x) I + I (x) s_a)^2).
GateUnitary sm_gate(Axis axis, double theta);

/// Real rotation on span{|01>, |10>} of (system, ancilla):
///   |1_S 0_A> -> sqrt(1-lam)|1_S 0_A> + sqrt(lam)|0_S 1_A>
///   |0_S 1_A> -> sqrt(1-lam)|0_S 1_A> - sqrt(lam)|1_S 0_A>
/// and the identity on |00>, |11>.
GateUnitary partial_swap(double lam);

/// Same gate with 1 - lam supplied separately. sqrt(1 - lam) still matters
/// after lam itself has rounded to 1. Throws DomainError if the two disagree.
GateUnitary partial_swap(double lam, double keep);

/// Rotation angle of partial_swap(lam), arcsin(sqrt(lam)).
double partial_swap_angle(double lam);

/// Gate duration tau = partial_swap_angle(lam) / coupling for a laser
/// coupling strength Omega. Diagnostic only.
double gate_time(double lam, double coupling);

/// Which system qubit carries each dressed mode after the basis change.
struct ModeWiring {
    int qubit_for_mode1 = 0;
    int qubit_for_mode2 = 1;
};

/// Derived by conjugating E_1, E_2 with V and matching the result against
/// single-qubit s- embeddings. Throws Error if V does not localize them.
ModeWiring mode_wiring();

/// Per-part parameters of the protocol for an effective evolution time.
struct ProtocolConfig {
    ReservoirSpec spec;
    double time = 0.0;
    double p1 = 1.0;
    double p2 = 1.0;
    double lam1 = 0.0;
    double lam2 = 0.0;
    double keep1 = 1.0;  // 1 - lam1, computed without cancellation
    double keep2 = 1.0;  // 1 - lam2

    /// p_j from thermal_pair, lam_j = 1 - exp(-gamma R_j t).
    static ProtocolConfig make(const ReservoirSpec& spec, double time);
};

/// One reservoir part on an n-qubit system: attach `ancilla` as the last
/// subsystem, apply partial_swap(lam) to (target, ancilla), trace the ancilla
/// out. Linear in `x`, which need not be a valid state.
ComplexMatrix reservoir_stage_map(const ComplexMatrix& x, int n_qubits, int target,
                                  const ComplexMatrix& ancilla, double lam,
                                  std::optional<double> keep = std::nullopt);

/// The stage with an explicit ancilla state.
DensityMatrix reservoir_stage(const DensityMatrix& rho, int target, const DensityMatrix& ancilla,
                              double lam);

/// The stage with the thermal ancilla diag(p, 1 - p).
DensityMatrix reservoir_stage(const DensityMatrix& rho, int target, double p, double lam);

/// The Kraus channel of reservoir_stage on an n-qubit system, extracted from
/// the circuit through its Choi matrix.
QuantumChannel stage_channel(int n_qubits, int target, double p, double lam);

/// Discards the last subsystem (the ancilla), as the optical-pumping reset does.
DensityMatrix ancilla_reset_trace(const DensityMatrix& rho_with_ancilla);

enum class StageOrder { R1First, R2First };

struct ProtocolOptions {
    StageOrder order = StageOrder::R1First;
    /// When false, the closing V^dag of the first part and the opening V of the
    /// second are applied explicitly.
    bool cancel_inner_basis_change = true;
};

/// V^dag stage2(stage1(V rho0 V^dag)) V with the wiring from mode_wiring().
DensityMatrix run_protocol(const DensityMatrix& rho0, const ProtocolConfig& cfg,
                           const ProtocolOptions& options = {});

}  // namespace thermores
