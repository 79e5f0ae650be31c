#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace thermores {
namespace {

using testing::basis_ket;
using testing::random_density;

ThermalChannelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {u(rng), u(rng)};
}

double choi_min_eigenvalue(const QuantumChannel& ch) {
    return hermitian_eigenvalues(choi_matrix(ch)).minCoeff();
}

TEST(GadKraus, CompletenessAndPositivity) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto ch = gad_kraus(random_params(rng));
        EXPECT_LE(ch.completeness_error(), 1e-12);
        EXPECT_GT(choi_min_eigenvalue(ch), -1e-10);
    }
    for (double p : {0.0, 1.0})
        for (double lam : {0.0, 1.0}) EXPECT_LE(gad_kraus({p, lam}).completeness_error(), 1e-15);
}

TEST(GadKraus, ZeroDampingIsIdentity) {
    std::mt19937_64 rng(42);
    const auto ch = gad_kraus({0.37, 0.0});
    EXPECT_LT(channel_distance(ch, QuantumChannel::identity(2)), 1e-15);
    const auto rho = random_density(rng, {2});
    EXPECT_LT(max_abs(apply_channel(ch, rho).matrix() - rho.matrix()), 1e-15);
}

TEST(GadKraus, FullDampingForgetsTheInput) {
    std::mt19937_64 rng(43);
    for (double p : {0.0, 0.2, 0.73, 1.0}) {
        ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
        expected(0, 0) = p;
        expected(1, 1) = 1.0 - p;
        for (int trial = 0; trial < 10; ++trial) {
            const auto out = apply_channel(gad_kraus({p, 1.0}), random_density(rng, {2}));
            EXPECT_LT(max_abs(out.matrix() - expected), 1e-15);
        }
    }
}

TEST(GadKraus, RejectsOutOfRangeParameters) {
    EXPECT_THROW(gad_kraus({1.1, 0.5}), DomainError);
    EXPECT_THROW(gad_kraus({0.5, -0.01}), DomainError);
    EXPECT_THROW(gad_kraus({std::nan(""), 0.5}), DomainError);
}

TEST(GadKraus, ThermalFixedPoint) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        const auto params = random_params(rng);
        ComplexMatrix fixed = ComplexMatrix::Zero(2, 2);
        fixed(0, 0) = params.p;
        fixed(1, 1) = 1.0 - params.p;
        EXPECT_LT(max_abs(gad_kraus(params).apply(fixed) - fixed), 1e-12);
    }
}

TEST(GadKraus, SemigroupAtFixedTemperature) {
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double p = u(rng), l1 = u(rng), l2 = u(rng);
        const auto two_steps = compose(gad_kraus({p, l1}), gad_kraus({p, l2}));
        const auto one_step = gad_kraus({p, 1.0 - (1.0 - l1) * (1.0 - l2)});
        EXPECT_LT(channel_distance(two_steps, one_step), 1e-10);
    }
}

TEST(ApplyChannel, Basics) {
    std::mt19937_64 rng(46);
    const auto rho = random_density(rng, {2, 2});
    EXPECT_LT(max_abs(apply_channel(QuantumChannel::identity(4), rho).matrix() - rho.matrix()), 1e-15);

    const auto excited = DensityMatrix::pure(basis_ket(2, 1), {2});
    const auto ground = DensityMatrix::pure(basis_ket(2, 0), {2});
    EXPECT_LT(trace_distance(apply_channel(gad_kraus({1.0, 1.0}), excited), ground), 1e-15);

    EXPECT_THROW(apply_channel(gad_kraus({1.0, 1.0}), rho), DimensionError);
}

TEST(ApplyChannel, MatchesThermalLindbladEvolution) {
    // omega = T = gamma = t = 1: p = 0.7311, lambda = 0.8851.
    const auto pair = thermal_mode(1.0, 1.0, 1.0);
    const auto params = ThermalChannelParams::from_mode(pair, 1.0);
    EXPECT_NEAR(params.p, 0.731058578630004879, 1e-15);
    EXPECT_NEAR(params.lam, 0.885129906830493711, 1e-15);

    const auto excited = DensityMatrix::pure(basis_ket(2, 1), {2});
    const auto via_kraus = apply_channel(gad_kraus(params), excited);
    const auto via_lindblad = evolve(excited, thermal_qubit_liouvillian(1.0, 1.0, 1.0), 1.0);
    EXPECT_LT(max_abs(via_kraus.matrix() - via_lindblad.matrix()), 1e-10);
}

TEST(ChoiMatrix, IdentityChannelIsMaximallyEntangledProjector) {
    const ComplexMatrix c = choi_matrix(QuantumChannel::identity(2));
    ComplexVector omega = ComplexVector::Zero(4);
    omega(0) = omega(3) = 1.0;  // sum_k |k>|k>
    EXPECT_LT(max_abs(c - omega * omega.adjoint()), 1e-15);
    const auto eig = hermitian_eigenvalues(c);
    EXPECT_NEAR(eig(3), 2.0, 1e-14);
    EXPECT_NEAR(eig.head(3).cwiseAbs().maxCoeff(), 0.0, 1e-14);
}

TEST(ChoiMatrix, TraceEqualsInputDimension) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        EXPECT_NEAR(choi_matrix(gad_kraus(random_params(rng))).trace().real(), 2.0, 1e-14);
    }
}

TEST(ChannelDistance, InvariantUnderKrausRemixing) {
    std::mt19937_64 rng(48);
    for (int trial = 0; trial < 20; ++trial) {
        const auto ch = gad_kraus(random_params(rng));
        const ComplexMatrix w = testing::random_unitary(rng, 4);
        std::vector<ComplexMatrix> remixed(4, ComplexMatrix::Zero(2, 2));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) remixed[i] += w(i, j) * ch.kraus()[j];
        const QuantumChannel other(remixed);
        EXPECT_LT(channel_distance(ch, other), 1e-13);
        EXPECT_GT(max_abs(other.kraus()[0] - ch.kraus()[0]), 1e-3);
    }
    EXPECT_EQ(channel_distance(gad_kraus({0.3, 0.4}), gad_kraus({0.3, 0.4})), 0.0);
    EXPECT_THROW(channel_distance(QuantumChannel::identity(2), QuantumChannel::identity(4)),
                 DimensionError);
}

TEST(QuantumChannel, RejectsIncompleteKraus) {
    EXPECT_THROW(QuantumChannel({pauli::minus()}), DomainError);
    EXPECT_THROW(QuantumChannel(std::vector<ComplexMatrix>{}), DimensionError);
}

TEST(ChannelFromChoi, RoundTripAndRejectsNonCP) {
    std::mt19937_64 rng(49);
    const auto ch = gad_kraus(random_params(rng));
    const auto back = channel_from_choi(choi_matrix(ch), 2, 2);
    EXPECT_LT(channel_distance(ch, back), 1e-12);

    // The transpose map has a Choi matrix (the swap) with eigenvalue -1.
    EXPECT_THROW(channel_from_choi(choi_of_map([](const ComplexMatrix& x) {
                                       return ComplexMatrix(x.transpose());
                                   },
                                               2),
                                   2, 2),
                 NotCompletelyPositiveError);
}

TEST(LindbladToChannel, ZeroTimeIsIdentity) {
    const auto ch = lindblad_to_channel(thermal_qubit_liouvillian(1.0, 0.5, 1.0), 0.0);
    EXPECT_LT(channel_distance(ch, QuantumChannel::identity(2)), 1e-12);
}

TEST(LindbladToChannel, EqualsGeneralizedAmplitudeDamping) {
    for (double T : {0.0, 0.3, 1.0, 4.0}) {
        for (double t : {0.05, 0.5, 2.0}) {
            const auto pair = thermal_mode(1.0, T, 1.0);
            const auto from_lindblad = lindblad_to_channel(thermal_qubit_liouvillian(1.0, T, 1.0), t);
            EXPECT_LT(channel_distance(from_lindblad,
                                       gad_kraus(ThermalChannelParams::from_mode(pair, t))),
                      1e-10)
                << "T=" << T << " t=" << t;
            EXPECT_LE(from_lindblad.completeness_error(), 1e-12);
        }
    }
}

TEST(LindbladToChannel, Semigroup) {
    const auto L = engineered_liouvillian({1.0, 0.4, 1.0, 0.9});
    const auto split = compose(lindblad_to_channel(L, 0.3), lindblad_to_channel(L, 1.1));
    EXPECT_LT(channel_distance(split, lindblad_to_channel(L, 1.4)), 1e-10);
}

TEST(ChannelTensor, ActsFactorwise) {
    std::mt19937_64 rng(50);
    const auto a = gad_kraus(random_params(rng));
    const auto b = gad_kraus(random_params(rng));
    const auto ra = random_density(rng, {2}), rb = random_density(rng, {2});
    const ComplexMatrix out = tensor(a, b).apply(tensor(ra.matrix(), rb.matrix()));
    EXPECT_LT(max_abs(out - tensor(a.apply(ra.matrix()), b.apply(rb.matrix()))), 1e-14);
}

}  // namespace
}  // namespace thermores
