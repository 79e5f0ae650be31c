#include "thermores/lindblad.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "thermores/errors.hpp"

namespace thermores {

namespace {

constexpr double kExponentLimit = 700.0;

double null_threshold(const ComplexMatrix& m) { return 1e-10 * std::max(1.0, max_abs(m)); }

}  // namespace

Liouvillian::Liouvillian(Eigen::Index dim, ComplexMatrix matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
    if (dim_ < 1 || matrix_.rows() != dim_ * dim_ || matrix_.cols() != dim_ * dim_) {
        throw DimensionError("Liouvillian: matrix must be " + std::to_string(dim_ * dim_) +
                             " square");
    }
    if (!matrix_.allFinite()) throw DomainError("Liouvillian: non-finite entries");

    // d tr(rho)/dt = vec(I)^T L vec(rho) must vanish for every rho.
    Eigen::RowVectorXcd trace_row = Eigen::RowVectorXcd::Zero(matrix_.cols());
    for (Eigen::Index i = 0; i < dim_; ++i) trace_row += matrix_.row(i + i * dim_);
    if (trace_row.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, max_abs(matrix_))) {
        throw DomainError("Liouvillian: generator is not trace preserving");
    }
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) throw DimensionError("Liouvillian::apply: shape");
    return unvec(matrix_ * vec(rho), dim_);
}

Liouvillian build_liouvillian(std::span<const DissipatorTerm> terms, Eigen::Index dim) {
    const Eigen::Index d2 = dim * dim;
    const ComplexMatrix id = identity(dim);
    ComplexMatrix L = ComplexMatrix::Zero(d2, d2);
    for (const auto& term : terms) {
        if (term.jump.rows() != dim || term.jump.cols() != dim) {
            throw DimensionError("build_liouvillian: jump operator is not " + std::to_string(dim) +
                                 "x" + std::to_string(dim));
        }
        if (!(term.rate >= 0.0) || !std::isfinite(term.rate)) {
            throw DomainError("build_liouvillian: rate must be finite and nonnegative");
        }
        if (term.rate == 0.0) continue;
        const ComplexMatrix& c = term.jump;
        const ComplexMatrix cdc = c.adjoint() * c;
        L += term.rate * (tensor(c.conjugate(), c) - 0.5 * tensor(id, cdc) -
                          0.5 * tensor(cdc.transpose(), id));
    }
    return Liouvillian(dim, std::move(L));
}

void require_valid(const ReservoirSpec& spec) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(spec.omega0) || spec.omega0 <= 0.0) throw DomainError("omega0 must be > 0");
    if (!finite(spec.g) || spec.g < 0.0) throw DomainError("g must be >= 0");
    if (!finite(spec.gamma) || spec.gamma <= 0.0) throw DomainError("gamma must be > 0");
    if (!finite(spec.temperature) || spec.temperature < 0.0) {
        throw DomainError("temperature must be >= 0");
    }
}

ThermalPair thermal_mode(double omega, double temperature, double gamma) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    ThermalPair out;
    if (omega == 0.0) {
        out.nbar = inf;
        out.ground_weight = 0.5;
        out.relaxation = inf;
    } else {
        const double x = temperature > 0.0 ? omega / temperature : std::copysign(inf, omega);
        if (x > kExponentLimit) {
            out = {0.0, 1.0, 1.0, 0.0, 0.0};
        } else if (x < -kExponentLimit) {
            out = {-1.0, 0.0, 1.0, 0.0, 0.0};
        } else {
            out.nbar = 1.0 / std::expm1(x);
            out.ground_weight = 1.0 / (std::exp(-x) + 1.0);
            out.relaxation = std::abs(1.0 / std::tanh(0.5 * x));
        }
    }
    out.rate_down = gamma * out.ground_weight * out.relaxation;
    out.rate_up = gamma * (1.0 - out.ground_weight) * out.relaxation;
    return out;
}

double mode_frequency(const ReservoirSpec& spec, int mode) {
    if (mode != 1 && mode != 2) throw DomainError("mode must be 1 or 2");
    return mode == 1 ? spec.omega0 - spec.g : spec.omega0 + spec.g;
}

ThermalPair thermal_pair(const ReservoirSpec& spec, int mode) {
    require_valid(spec);
    return thermal_mode(mode_frequency(spec, mode), spec.temperature, spec.gamma);
}

double damping_fraction(const ThermalPair& pair, double t) {
    if (!(t >= 0.0)) throw DomainError("damping_fraction: t must be >= 0");
    const double total = pair.rate_up + pair.rate_down;
    if (t == 0.0) return 0.0;
    if (std::isinf(total)) return 1.0;
    return -std::expm1(-total * t);
}

double damping_complement(const ThermalPair& pair, double t) {
    if (!(t >= 0.0)) throw DomainError("damping_complement: t must be >= 0");
    const double total = pair.rate_up + pair.rate_down;
    if (t == 0.0) return 1.0;
    if (std::isinf(total)) return 0.0;
    return std::exp(-total * t);
}

DressedBasis dressed_basis(const ReservoirSpec& spec) {
    const double r = 1.0 / std::sqrt(2.0);
    DressedBasis b;
    for (auto& s : b.states) s = ComplexVector::Zero(4);
    b.states[0](0) = 1.0;
    b.states[1](1) = r;
    b.states[1](2) = kI * r;
    b.states[2](1) = kI * r;
    b.states[2](2) = r;
    b.states[3](3) = 1.0;
    b.energies = {0.0, spec.omega0 - spec.g, spec.omega0 + spec.g, 2.0 * spec.omega0};
    return b;
}

ComplexMatrix dressed_unitary() {
    const auto basis = dressed_basis();
    ComplexMatrix u(4, 4);
    for (int k = 0; k < 4; ++k) u.col(k) = basis.states[k];
    return u;
}

std::array<double, 4> dressed_populations(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("dressed_populations: need 4x4");
    const auto basis = dressed_basis();
    std::array<double, 4> q{};
    for (int k = 0; k < 4; ++k) {
        q[k] = (basis.states[k].adjoint() * rho * basis.states[k])(0, 0).real();
    }
    return q;
}

std::array<double, 4> dressed_populations(const DensityMatrix& rho) {
    return dressed_populations(rho.matrix());
}

DressedJumps dressed_jump_ops() {
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix sm = pauli::minus();
    const ComplexMatrix sz = pauli::z();
    const ComplexMatrix id = pauli::identity();
    return {r * (tensor(sm, id) + kI * tensor(sz, sm)),
            r * (tensor(id, sm) + kI * tensor(sm, sz))};
}

Liouvillian engineered_liouvillian(const ReservoirSpec& spec, ModeOrder order) {
    require_valid(spec);
    const auto jumps = dressed_jump_ops();
    const int mode_e1 = order == ModeOrder::Standard ? 1 : 2;
    const int mode_e2 = order == ModeOrder::Standard ? 2 : 1;
    const ThermalPair a = thermal_pair(spec, mode_e1);
    const ThermalPair b = thermal_pair(spec, mode_e2);
    if (!std::isfinite(a.rate_down + a.rate_up + b.rate_down + b.rate_up)) {
        throw DomainError("engineered_liouvillian: a mode frequency is zero (g == omega0), "
                          "so its thermal rates diverge");
    }
    const std::array<DissipatorTerm, 4> terms{{
        {jumps.e1, a.rate_down},
        {jumps.e1.adjoint(), a.rate_up},
        {jumps.e2, b.rate_down},
        {jumps.e2.adjoint(), b.rate_up},
    }};
    return build_liouvillian(terms, 4);
}

Liouvillian thermal_qubit_liouvillian(double omega, double temperature, double gamma) {
    const ThermalPair pair = thermal_mode(omega, temperature, gamma);
    if (!std::isfinite(pair.rate_down + pair.rate_up)) {
        throw DomainError("thermal_qubit_liouvillian: divergent rates at zero frequency");
    }
    const std::array<DissipatorTerm, 2> terms{{
        {pauli::minus(), pair.rate_down},
        {pauli::plus(), pair.rate_up},
    }};
    return build_liouvillian(terms, 2);
}

ComplexMatrix propagator(const Liouvillian& L, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("propagator: t must be finite and >= 0");
    return matexp(L.matrix() * t);
}

DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& L, double t) {
    if (rho0.dim() != L.dim()) throw DimensionError("evolve: state and Liouvillian dimensions differ");
    if (t == 0.0) return rho0;
    const ComplexVector out = propagator(L, t) * vec(rho0.matrix());
    return validate_density(unvec(out, L.dim()), rho0.dims());
}

DensityMatrix steady_state(const Liouvillian& L, std::vector<int> dims) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(L.matrix(), /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) throw Error("steady_state: eigen-decomposition failed");

    const double threshold = null_threshold(L.matrix());
    const auto& values = solver.eigenvalues();
    int multiplicity = 0;
    Eigen::Index best = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        if (std::abs(values(k)) <= threshold) ++multiplicity;
        if (std::abs(values(k)) < std::abs(values(best))) best = k;
    }
    if (multiplicity != 1) {
        throw DegenerateSteadyStateError(
            multiplicity, "steady_state: " + std::to_string(multiplicity) +
                              " eigenvalues within " + std::to_string(threshold) + " of zero");
    }

    // The eigenvector carries an arbitrary phase; dividing by the trace fixes it.
    ComplexMatrix rho = unvec(solver.eigenvectors().col(best), L.dim());
    const cplx trace = rho.trace();
    if (std::abs(trace) < 1e-12) throw Error("steady_state: null vector is traceless");
    rho /= trace;
    rho = 0.5 * (rho + rho.adjoint());

    const double residual = max_abs(L.apply(rho));
    if (residual > threshold) {
        throw Error("steady_state: residual " + std::to_string(residual) + " exceeds tolerance");
    }
    if (!dims.empty()) return validate_density(rho, std::move(dims));
    if (L.dim() > 0 && (L.dim() & (L.dim() - 1)) == 0) {
        for (Eigen::Index d = L.dim(); d > 1; d /= 2) dims.push_back(2);
    } else {
        dims.push_back(static_cast<int>(L.dim()));
    }
    return validate_density(rho, std::move(dims));
}

std::array<double, 4> gibbs_populations(const ReservoirSpec& spec, ModeOrder order) {
    require_valid(spec);
    const int mode_e1 = order == ModeOrder::Standard ? 1 : 2;
    const int mode_e2 = order == ModeOrder::Standard ? 2 : 1;
    const double p1 = thermal_pair(spec, mode_e1).ground_weight;
    const double p2 = thermal_pair(spec, mode_e2).ground_weight;
    return {p1 * p2, (1.0 - p1) * p2, p1 * (1.0 - p2), (1.0 - p1) * (1.0 - p2)};
}

DensityMatrix gibbs_dressed(const ReservoirSpec& spec, ModeOrder order) {
    const auto q = gibbs_populations(spec, order);
    const auto basis = dressed_basis(spec);
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) rho += q[k] * basis.states[k] * basis.states[k].adjoint();
    return validate_density(rho, {2, 2});
}

}  // namespace thermores
