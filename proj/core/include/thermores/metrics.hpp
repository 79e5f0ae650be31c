#pragma once

#include <array>
#include <vector>

#include "thermores/lindblad.hpp"
#include "thermores/qstate.hpp"

namespace thermores {

/// Sum of |negative eigenvalues| of the partial transpose of a two-qubit state.
double negativity(const DensityMatrix& rho);

/// W = sum_{a=x,y,z} Var(J_a) with J_a = (1/2) sum_i s_a^(i). Separable n-qubit
/// states have W >= n/2; W < n/2 certifies entanglement.
double witness_w(const DensityMatrix& rho, int n);

/// W < n/2 by more than 1e-12, so product states that sit on the bound up to
/// rounding are not reported.
bool witness_violated(double w, int n);

/// Uniform (temperature, coupling) grid with inclusive endpoints.
struct SweepGrid {
    double t_min = 0.0;
    double t_max = 0.0;
    int n_t = 1;
    double g_min = 0.0;
    double g_max = 0.0;
    int n_g = 1;

    double temperature(int i) const;
    double coupling(int j) const;
    std::size_t size() const { return static_cast<std::size_t>(n_t) * static_cast<std::size_t>(n_g); }
};

/// Throws DomainError on reversed bounds, negative values, or counts < 1.
void require_valid(const SweepGrid& grid);

struct SweepRow {
    double temperature = 0.0;
    double g = 0.0;
    std::array<double, 4> q{};  // dressed populations
    double negativity = 0.0;
    double witness = 0.0;
    bool witness_violated = false;  // witness_violated(witness, 2)
};

/// Thermal-state observables at one grid point.
SweepRow evaluate_point(const ReservoirSpec& spec);

/// Rows in temperature-major order (temperature outer, g inner). `threads`
/// workers evaluate points concurrently (0 picks the hardware concurrency);
/// the output does not depend on the thread count.
std::vector<SweepRow> sweep_phase_diagram(const SweepGrid& grid, const ReservoirSpec& base,
                                          unsigned threads = 0);

}  // namespace thermores
