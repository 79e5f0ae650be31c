#include "thermores/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "thermores/errors.hpp"

namespace thermores {

double negativity(const DensityMatrix& rho) {
    if (rho.dims() != std::vector<int>{2, 2}) throw DimensionError("negativity: need a two-qubit state");
    const RealVector eig = hermitian_eigenvalues(partial_transpose(rho, 0));
    double sum = 0.0;
    for (Eigen::Index k = 0; k < eig.size(); ++k)
        if (eig(k) < 0.0) sum -= eig(k);
    return sum;
}

double witness_w(const DensityMatrix& rho, int n) {
    if (n < 1 || rho.dim() != (1L << n)) {
        throw DimensionError("witness_w: state is not an " + std::to_string(n) + "-qubit state");
    }
    const std::array<ComplexMatrix, 3> axes{pauli::x(), pauli::y(), pauli::z()};
    double w = 0.0;
    for (const auto& s : axes) {
        ComplexMatrix j = ComplexMatrix::Zero(rho.dim(), rho.dim());
        for (int i = 0; i < n; ++i) j += 0.5 * embed_op(s, i, n);
        const double mean = (rho.matrix() * j).trace().real();
        const double second = (rho.matrix() * j * j).trace().real();
        w += second - mean * mean;
    }
    return w;
}

bool witness_violated(double w, int n) { return w < 0.5 * n - 1e-12; }

namespace {

double grid_value(double lo, double hi, int n, int i) {
    if (n == 1) return lo;
    if (i == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

double SweepGrid::temperature(int i) const { return grid_value(t_min, t_max, n_t, i); }
double SweepGrid::coupling(int j) const { return grid_value(g_min, g_max, n_g, j); }

void require_valid(const SweepGrid& grid) {
    auto bad = [](double lo, double hi) {
        return !std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || lo > hi;
    };
    if (bad(grid.t_min, grid.t_max)) throw DomainError("sweep grid: invalid temperature range");
    if (bad(grid.g_min, grid.g_max)) throw DomainError("sweep grid: invalid coupling range");
    if (grid.n_t < 1 || grid.n_g < 1) throw DomainError("sweep grid: counts must be >= 1");
}

SweepRow evaluate_point(const ReservoirSpec& spec) {
    const DensityMatrix rho = gibbs_dressed(spec);
    SweepRow row;
    row.temperature = spec.temperature;
    row.g = spec.g;
    row.q = gibbs_populations(spec);
    row.negativity = negativity(rho);
    row.witness = witness_w(rho, 2);
    row.witness_violated = witness_violated(row.witness, 2);
    return row;
}

std::vector<SweepRow> sweep_phase_diagram(const SweepGrid& grid, const ReservoirSpec& base,
                                          unsigned threads) {
    require_valid(grid);
    require_valid(base);
    std::vector<SweepRow> rows(grid.size());

    auto work = [&](std::size_t k) {
        ReservoirSpec spec = base;
        spec.temperature = grid.temperature(static_cast<int>(k / grid.n_g));
        spec.g = grid.coupling(static_cast<int>(k % grid.n_g));
        rows[k] = evaluate_point(spec);
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows.size()));
    if (threads <= 1) {
        for (std::size_t k = 0; k < rows.size(); ++k) work(k);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < rows.size() && !failed; k = next++) {
                    try {
                        work(k);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace thermores
