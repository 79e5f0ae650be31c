#include "thermores/channel.hpp"

#include <cmath>
#include <string>

#include "thermores/errors.hpp"

namespace thermores {

namespace {
constexpr double kCompletenessTol = 1e-12;
constexpr double kChoiClip = 1e-10;
}  // namespace

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw DimensionError("QuantumChannel: empty Kraus list");
    for (const auto& m : kraus_) {
        if (m.rows() != kraus_.front().rows() || m.cols() != kraus_.front().cols()) {
            throw DimensionError("QuantumChannel: Kraus operators differ in shape");
        }
        if (!m.allFinite()) throw DomainError("QuantumChannel: non-finite Kraus entries");
    }
    const double err = completeness_error();
    if (err > kCompletenessTol) {
        throw DomainError("QuantumChannel: completeness violated by " + std::to_string(err));
    }
}

QuantumChannel QuantumChannel::identity(Eigen::Index dim) {
    return QuantumChannel({thermores::identity(dim)});
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& x) const {
    if (x.rows() != dim_in() || x.cols() != dim_in()) {
        throw DimensionError("QuantumChannel::apply: input is not " + std::to_string(dim_in()) +
                             " square");
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_out(), dim_out());
    for (const auto& m : kraus_) out += m * x * m.adjoint();
    return out;
}

double QuantumChannel::completeness_error() const {
    ComplexMatrix sum = ComplexMatrix::Zero(dim_in(), dim_in());
    for (const auto& m : kraus_) sum += m.adjoint() * m;
    return max_abs(sum - thermores::identity(dim_in()));
}

ThermalChannelParams ThermalChannelParams::from_mode(const ThermalPair& pair, double t) {
    return {pair.ground_weight, damping_fraction(pair, t)};
}

QuantumChannel gad_kraus(const ThermalChannelParams& params) {
    const double p = params.p;
    const double lam = params.lam;
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("gad_kraus: p must lie in [0, 1]");
    if (!(lam >= 0.0 && lam <= 1.0)) throw DomainError("gad_kraus: lambda must lie in [0, 1]");

    const double keep = std::sqrt(1.0 - lam);
    ComplexMatrix m1 = ComplexMatrix::Zero(2, 2);
    m1(0, 0) = 1.0;
    m1(1, 1) = keep;
    ComplexMatrix m3 = ComplexMatrix::Zero(2, 2);
    m3(0, 0) = keep;
    m3(1, 1) = 1.0;

    return QuantumChannel({
        std::sqrt(p) * m1,
        std::sqrt(p * lam) * pauli::minus(),
        std::sqrt(1.0 - p) * m3,
        std::sqrt((1.0 - p) * lam) * pauli::plus(),
    });
}

DensityMatrix apply_channel(const QuantumChannel& channel, const DensityMatrix& rho) {
    if (rho.dim() != channel.dim_in()) throw DimensionError("apply_channel: dimension mismatch");
    std::vector<int> dims = rho.dims();
    if (channel.dim_out() != channel.dim_in()) dims = {static_cast<int>(channel.dim_out())};
    return validate_density(channel.apply(rho.matrix()), std::move(dims));
}

ComplexMatrix choi_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map,
                          Eigen::Index dim_in) {
    ComplexMatrix choi;
    for (Eigen::Index k = 0; k < dim_in; ++k) {
        for (Eigen::Index l = 0; l < dim_in; ++l) {
            ComplexMatrix unit = ComplexMatrix::Zero(dim_in, dim_in);
            unit(k, l) = 1.0;
            const ComplexMatrix image = map(unit);
            if (choi.size() == 0) {
                choi = ComplexMatrix::Zero(dim_in * image.rows(), dim_in * image.rows());
            }
            choi.block(k * image.rows(), l * image.rows(), image.rows(), image.cols()) = image;
        }
    }
    return choi;
}

ComplexMatrix choi_matrix(const QuantumChannel& channel) {
    return choi_of_map([&channel](const ComplexMatrix& x) { return channel.apply(x); },
                       channel.dim_in());
}

QuantumChannel channel_from_choi(const ComplexMatrix& choi, Eigen::Index dim_in,
                                 Eigen::Index dim_out) {
    if (choi.rows() != dim_in * dim_out || choi.cols() != dim_in * dim_out) {
        throw DimensionError("channel_from_choi: Choi matrix has the wrong size");
    }
    const auto eig = hermitian_eigen(choi);
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
        const double mu = eig.values(j);
        if (mu < -kChoiClip) {
            throw NotCompletelyPositiveError("channel_from_choi: Choi eigenvalue " +
                                             std::to_string(mu) + " below -1e-10");
        }
        if (mu <= 0.0) continue;
        // Column k of the Kraus operator is the k-th block of the eigenvector.
        ComplexMatrix m(dim_out, dim_in);
        for (Eigen::Index k = 0; k < dim_in; ++k)
            m.col(k) = std::sqrt(mu) * eig.vectors.col(j).segment(k * dim_out, dim_out);
        kraus.push_back(std::move(m));
    }
    return QuantumChannel(std::move(kraus));
}

double channel_distance(const QuantumChannel& a, const QuantumChannel& b) {
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
        throw DimensionError("channel_distance: channels act on different spaces");
    }
    return (choi_matrix(a) - choi_matrix(b)).norm();
}

QuantumChannel lindblad_to_channel(const Liouvillian& L, double t) {
    const ComplexMatrix s = propagator(L, t);
    const Eigen::Index d = L.dim();
    const ComplexMatrix choi =
        choi_of_map([&](const ComplexMatrix& x) { return unvec(s * vec(x), d); }, d);
    return channel_from_choi(choi, d, d);
}

QuantumChannel compose(const QuantumChannel& first, const QuantumChannel& second) {
    if (first.dim_out() != second.dim_in()) throw DimensionError("compose: dimension mismatch");
    std::vector<ComplexMatrix> kraus;
    for (const auto& b : second.kraus())
        for (const auto& a : first.kraus()) kraus.push_back(b * a);
    return QuantumChannel(std::move(kraus));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
    std::vector<ComplexMatrix> kraus;
    for (const auto& ka : a.kraus())
        for (const auto& kb : b.kraus()) kraus.push_back(tensor(ka, kb));
    return QuantumChannel(std::move(kraus));
}

}  // namespace thermores
