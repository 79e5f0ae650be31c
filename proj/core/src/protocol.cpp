#include "thermores/protocol.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "thermores/errors.hpp"

namespace thermores {

namespace {

constexpr double kUnitarityTol = 1e-12;

void require_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

int qubit_count(const DensityMatrix& rho, const char* where) {
    for (int d : rho.dims()) {
        if (d != 2) throw DimensionError(std::string(where) + ": every subsystem must be a qubit");
    }
    return static_cast<int>(rho.dims().size());
}

ComplexMatrix thermal_ancilla(double p) {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = p;
    a(1, 1) = 1.0 - p;
    return a;
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& x) {
    return u * x * u.adjoint();
}

// True when m == z * target for some |z| = 1.
bool equal_up_to_phase(const ComplexMatrix& m, const ComplexMatrix& target) {
    const cplx overlap = (target.adjoint() * m).trace() / (target.adjoint() * target).trace();
    return std::abs(std::abs(overlap) - 1.0) < 1e-12 && max_abs(m - overlap * target) < 1e-12;
}

}  // namespace

GateUnitary::GateUnitary(ComplexMatrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
    if (matrix_.rows() != matrix_.cols()) throw DimensionError("GateUnitary: matrix is not square");
    const double err = max_abs(matrix_.adjoint() * matrix_ - identity(matrix_.rows()));
    if (err > kUnitarityTol) {
        throw DomainError("GateUnitary '" + label_ + "': not unitary (error " +
                          std::to_string(err) + ")");
    }
}

GateUnitary basis_change_unitary() {
    const ComplexMatrix xy = tensor(pauli::plus(), pauli::minus()) +
                             tensor(pauli::minus(), pauli::plus());
    return GateUnitary(matexp(kI * (std::numbers::pi / 4.0) * xy), "basis-change");
}

GateUnitary sm_gate(Axis axis, double theta) {
    ComplexMatrix s;
    switch (axis) {
        case Axis::X: s = pauli::x(); break;
        case Axis::Y: s = pauli::y(); break;
        case Axis::Z: s = pauli::z(); break;
    }
    const ComplexMatrix collective = tensor(s, pauli::identity()) + tensor(pauli::identity(), s);
    return GateUnitary(matexp(kI * theta * (collective * collective)), "sm");
}

double partial_swap_angle(double lam) {
    require_unit_interval(lam, "partial_swap: lambda");
    return std::asin(std::sqrt(lam));
}

GateUnitary partial_swap(double lam) { return partial_swap(lam, 1.0 - lam); }

GateUnitary partial_swap(double lam, double keep) {
    require_unit_interval(lam, "partial_swap: lambda");
    require_unit_interval(keep, "partial_swap: 1 - lambda");
    if (std::abs(lam + keep - 1.0) > 1e-12) throw DomainError("partial_swap: lambda and 1 - lambda disagree");
    const double stay = std::sqrt(keep);
    const double move = std::sqrt(lam);
    // Columns are images of |00>, |01>, |10>, |11> with index 2 s + a.
    ComplexMatrix u = ComplexMatrix::Zero(4, 4);
    u(0, 0) = 1.0;
    u(3, 3) = 1.0;
    u(1, 1) = stay;   // |0_S 1_A> -> sqrt(1-lam)|0_S 1_A>
    u(2, 1) = -move;  //            - sqrt(lam)|1_S 0_A>
    u(2, 2) = stay;   // |1_S 0_A> -> sqrt(1-lam)|1_S 0_A>
    u(1, 2) = move;   //            + sqrt(lam)|0_S 1_A>
    return GateUnitary(std::move(u), "partial-swap");
}

double gate_time(double lam, double coupling) {
    if (!(coupling > 0.0)) throw DomainError("gate_time: coupling must be > 0");
    return partial_swap_angle(lam) / coupling;
}

ModeWiring mode_wiring() {
    static const ModeWiring wiring = [] {
        const ComplexMatrix v = basis_change_unitary().matrix();
        const auto jumps = dressed_jump_ops();
        auto locate = [&v](const ComplexMatrix& e) {
            const ComplexMatrix local = conjugate(v, e);
            for (int q = 0; q < 2; ++q) {
                if (equal_up_to_phase(local, embed_op(pauli::minus(), q, 2))) return q;
            }
            throw Error("mode_wiring: basis change does not map a dressed jump operator onto a "
                        "single-qubit lowering operator");
        };
        ModeWiring w{locate(jumps.e1), locate(jumps.e2)};
        if (w.qubit_for_mode1 == w.qubit_for_mode2) {
            throw Error("mode_wiring: both dressed modes land on the same qubit");
        }
        return w;
    }();
    return wiring;
}

ProtocolConfig ProtocolConfig::make(const ReservoirSpec& spec, double time) {
    require_valid(spec);
    if (!(time >= 0.0) || !std::isfinite(time)) throw DomainError("protocol time must be >= 0");
    const ThermalPair m1 = thermal_pair(spec, 1);
    const ThermalPair m2 = thermal_pair(spec, 2);
    return {spec,
            time,
            m1.ground_weight,
            m2.ground_weight,
            damping_fraction(m1, time),
            damping_fraction(m2, time),
            damping_complement(m1, time),
            damping_complement(m2, time)};
}

ComplexMatrix reservoir_stage_map(const ComplexMatrix& x, int n_qubits, int target,
                                  const ComplexMatrix& ancilla, double lam,
                                  std::optional<double> keep) {
    if (n_qubits < 1 || target < 0 || target >= n_qubits) {
        throw DimensionError("reservoir_stage: target qubit out of range");
    }
    if (x.rows() != (1L << n_qubits) || x.cols() != x.rows()) {
        throw DimensionError("reservoir_stage: operator does not match the qubit count");
    }
    if (ancilla.rows() != 2 || ancilla.cols() != 2) {
        throw DimensionError("reservoir_stage: ancilla must be a qubit");
    }
    const ComplexMatrix gate =
        embed_pair(partial_swap(lam, keep.value_or(1.0 - lam)).matrix(), target, n_qubits, n_qubits + 1);
    const ComplexMatrix joint = conjugate(gate, tensor(x, ancilla));

    const std::vector<int> dims(static_cast<std::size_t>(n_qubits + 1), 2);
    std::vector<int> kept(static_cast<std::size_t>(n_qubits));
    std::iota(kept.begin(), kept.end(), 0);
    return partial_trace_matrix(joint, dims, kept);
}

DensityMatrix reservoir_stage(const DensityMatrix& rho, int target, const DensityMatrix& ancilla,
                              double lam) {
    const int n = qubit_count(rho, "reservoir_stage");
    if (ancilla.dim() != 2) throw DimensionError("reservoir_stage: ancilla must be a qubit");
    return validate_density(reservoir_stage_map(rho.matrix(), n, target, ancilla.matrix(), lam),
                            rho.dims());
}

DensityMatrix reservoir_stage(const DensityMatrix& rho, int target, double p, double lam) {
    require_unit_interval(p, "reservoir_stage: p");
    return reservoir_stage(rho, target, validate_density(thermal_ancilla(p), {2}), lam);
}

QuantumChannel stage_channel(int n_qubits, int target, double p, double lam) {
    require_unit_interval(p, "stage_channel: p");
    const ComplexMatrix ancilla = thermal_ancilla(p);
    const Eigen::Index d = 1L << n_qubits;
    const ComplexMatrix choi = choi_of_map(
        [&](const ComplexMatrix& x) { return reservoir_stage_map(x, n_qubits, target, ancilla, lam); },
        d);
    return channel_from_choi(choi, d, d);
}

DensityMatrix ancilla_reset_trace(const DensityMatrix& rho_with_ancilla) {
    const int count = static_cast<int>(rho_with_ancilla.dims().size());
    if (count < 2) throw DimensionError("ancilla_reset_trace: need a system and an ancilla");
    std::vector<int> keep(static_cast<std::size_t>(count - 1));
    std::iota(keep.begin(), keep.end(), 0);
    return partial_trace(rho_with_ancilla, keep);
}

DensityMatrix run_protocol(const DensityMatrix& rho0, const ProtocolConfig& cfg,
                           const ProtocolOptions& options) {
    if (rho0.dims() != std::vector<int>{2, 2}) {
        throw DimensionError("run_protocol: the protocol acts on two qubits");
    }
    require_unit_interval(cfg.p1, "run_protocol: p1");
    require_unit_interval(cfg.p2, "run_protocol: p2");
    require_unit_interval(cfg.lam1, "run_protocol: lambda1");
    require_unit_interval(cfg.lam2, "run_protocol: lambda2");

    const ComplexMatrix v = basis_change_unitary().matrix();
    const ModeWiring wiring = mode_wiring();

    struct Part {
        int qubit;
        double p;
        double lam;
        double keep;
    };
    Part first{wiring.qubit_for_mode1, cfg.p1, cfg.lam1, cfg.keep1};
    Part second{wiring.qubit_for_mode2, cfg.p2, cfg.lam2, cfg.keep2};
    if (options.order == StageOrder::R2First) std::swap(first, second);

    ComplexMatrix x = conjugate(v, rho0.matrix());
    x = reservoir_stage_map(x, 2, first.qubit, thermal_ancilla(first.p), first.lam, first.keep);
    if (!options.cancel_inner_basis_change) {
        x = conjugate(v.adjoint(), x);
        x = conjugate(v, x);
    }
    x = reservoir_stage_map(x, 2, second.qubit, thermal_ancilla(second.p), second.lam, second.keep);
    x = conjugate(v.adjoint(), x);
    return validate_density(x, rho0.dims());
}

}  // namespace thermores
