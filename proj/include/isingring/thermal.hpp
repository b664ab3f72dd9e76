#pragma once

#include "isingring/hamiltonian.hpp"
#include "isingring/sweep.hpp"

#include <span>

namespace isingring {

/// Gibbs-state parameters; temperature in energy units (k_B = 1), strictly positive.
struct ThermalParams {
    IsingParams ising;
    double temperature = 1.0;

    void validate() const;
};

/// rho(T) = sum_i w_i |e_i><e_i| with w_i proportional to exp(-(E_i - E_min) / T).
DensityMatrix gibbs_state(const ThermalParams& p);

/// Same, from a precomputed eigensystem (energies already include the energy scale).
/// Any orthonormal basis of a degenerate eigenspace gives the same state.
DensityMatrix gibbs_state(const EigenSystem& system, int num_qubits, double temperature);

/// Rows (lambda, temperature, concurrence of `pair`) in row-major order
/// (lambda outer, temperature inner). A temperature of 0 selects the ground state.
SweepResult thermal_sweep(int num_qubits, std::span<const double> lambda_grid, std::span<const double> temperature_grid,
                          std::pair<int, int> pair, int threads = 0, double energy_scale = 1.0);

}  // namespace isingring
