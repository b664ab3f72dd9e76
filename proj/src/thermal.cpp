#include "isingring/thermal.hpp"

#include "isingring/entanglement.hpp"
#include "isingring/errors.hpp"

#include <cmath>
#include <string>

namespace isingring {

void ThermalParams::validate() const {
    ising.validate();
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw InvalidInput("temperature must be positive and finite, got " + std::to_string(temperature));
    }
}

DensityMatrix gibbs_state(const EigenSystem& system, int num_qubits, double temperature) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) throw InvalidInput("temperature must be positive");
    const RVector& e = system.eigenvalues;
    const double e_min = e.minCoeff();
    RVector w = (-(e.array() - e_min) / temperature).exp().matrix();
    w /= w.sum();
    const CMatrix& v = system.eigenvectors;
    CMatrix rho = v * w.asDiagonal() * v.adjoint();
    rho = (rho + rho.adjoint()) / 2.0;
    return DensityMatrix(num_qubits, std::move(rho));
}

DensityMatrix gibbs_state(const ThermalParams& p) {
    p.validate();
    return gibbs_state(ising_eigensystem(p.ising), p.ising.num_qubits, p.temperature);
}

SweepResult thermal_sweep(int num_qubits, std::span<const double> lambda_grid, std::span<const double> temperature_grid,
                          std::pair<int, int> pair, int threads, double energy_scale) {
    if (lambda_grid.empty() || temperature_grid.empty()) throw InvalidInput("thermal sweep needs non-empty grids");
    for (double t : temperature_grid) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("temperatures must be non-negative and finite");
    }
    const auto [i, j] = pair;
    if (i < 1 || j < 1 || i > num_qubits || j > num_qubits || i == j) {
        throw InvalidInput("pair must name two distinct qubits in 1..N");
    }
    SweepResult result;
    result.columns = {"lambda", "temperature", "concurrence"};
    const std::size_t nt = temperature_grid.size();
    result.rows.resize(lambda_grid.size() * nt);
    parallel_for(lambda_grid.size(), threads, [&](std::size_t a) {
        const IsingParams ising{num_qubits, lambda_grid[a], energy_scale};
        const EigenSystem system = ising_eigensystem(ising);
        for (std::size_t b = 0; b < nt; ++b) {
            const double t = temperature_grid[b];
            const double c = t == 0.0 ? pair_concurrence(ground_state(ising), i, j)
                                      : pair_concurrence(gibbs_state(system, num_qubits, t), i, j);
            result.rows[a * nt + b] = {lambda_grid[a], t, MeasureValue::checked(MeasureKind::concurrence, c).value};
        }
    });
    return result;
}

}  // namespace isingring
