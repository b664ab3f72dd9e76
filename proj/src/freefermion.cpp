#include "isingring/freefermion.hpp"

#include "isingring/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace isingring {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSpecialMomentumTolerance = 1e-12;

bool is_zero_momentum(double q) { return std::abs(q) < kSpecialMomentumTolerance; }
bool is_pi_momentum(double q) { return std::abs(q - std::numbers::pi) < kSpecialMomentumTolerance; }

struct Level {
    double energy;
    int parity;
};

}  // namespace

MomentumSector momentum_values(int num_qubits, FermionSector sector) {
    if (num_qubits < 2) throw InvalidInput("momentum grid needs N >= 2");
    MomentumSector out{sector, {}};
    out.q_values.reserve(static_cast<std::size_t>(num_qubits));
    for (int l = 0; l < num_qubits; ++l) {
        const double numerator = sector == FermionSector::cyclic ? 2.0 * l : 2.0 * l + 1.0;
        double q = std::numbers::pi * numerator / num_qubits;
        if (q >= kTwoPi) q -= kTwoPi;
        out.q_values.push_back(q);
    }
    return out;
}

BlockEigenData block_eigenvalues(double q, double lambda) {
    if (!(q >= 0.0 && q < kTwoPi)) throw InvalidInput("momentum must lie in [0, 2pi)");
    if (!std::isfinite(lambda)) throw InvalidInput("lambda must be finite");
    BlockEigenData out;
    out.q = q;
    if (is_zero_momentum(q) || is_pi_momentum(q)) {
        const double c = is_zero_momentum(q) ? 1.0 : -1.0;
        out.eigenvalues = {-1.0, -2.0 * lambda * c + 1.0};
        out.occupations = {0, 1};
        return out;
    }
    const double c = std::cos(q);
    const double s = std::sin(q);
    const double root = std::sqrt((lambda - 1.0) * (lambda - 1.0) + 2.0 * lambda * (1.0 - c));
    const double a3 = 2.0 * (-lambda * c + root);
    const double a4 = 2.0 * (-lambda * c - root);
    out.eigenvalues = {-2.0 * lambda * c, -2.0 * lambda * c, a3, a4};
    // The a3/a4 states mix zero and two fermions; both count as even.
    out.occupations = {1, 1, 0, 0};
    for (double a : {a3, a4}) {
        Complex d, e;
        if (std::abs(a + 2.0) < 1e-12) {
            d = 1.0;
            e = 0.0;
        } else {
            const double ratio = 2.0 * lambda * s / (a + 2.0);
            e = 1.0 / std::sqrt(1.0 + ratio * ratio);
            d = Complex(0.0, -ratio) * e;
        }
        out.empty_amplitudes.push_back(d);
        out.pair_amplitudes.push_back(e);
    }
    return out;
}

CMatrix block_matrix(double q, double lambda) {
    if (!(q >= 0.0 && q < kTwoPi)) throw InvalidInput("momentum must lie in [0, 2pi)");
    if (is_zero_momentum(q) || is_pi_momentum(q)) {
        const double c = is_zero_momentum(q) ? 1.0 : -1.0;
        CMatrix m = CMatrix::Zero(2, 2);
        m(0, 0) = -1.0;
        m(1, 1) = -2.0 * lambda * c + 1.0;
        return m;
    }
    const double c = std::cos(q);
    const double s = std::sin(q);
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = -2.0 * lambda * c;
    m(1, 1) = -2.0 * lambda * c;
    m(2, 2) = -2.0;
    m(2, 3) = Complex(0.0, -2.0 * lambda * s);
    m(3, 2) = Complex(0.0, 2.0 * lambda * s);
    m(3, 3) = 2.0 - 4.0 * lambda * c;
    return m;
}

std::vector<double> assemble_sector_spectrum(int num_qubits, double lambda, FermionSector sector) {
    if (num_qubits > kMaxDenseQubits) {
        throw ResourceLimit("free-fermion enumeration limited to N <= " + std::to_string(kMaxDenseQubits));
    }
    const MomentumSector grid = momentum_values(num_qubits, sector);

    // One block per unpaired momentum, one per pair (q, 2pi - q) with q < pi.
    std::vector<BlockEigenData> blocks;
    int covered = 0;
    for (double q : grid.q_values) {
        if (is_zero_momentum(q) || is_pi_momentum(q)) {
            blocks.push_back(block_eigenvalues(q, lambda));
            covered += 1;
        } else if (q < std::numbers::pi) {
            blocks.push_back(block_eigenvalues(q, lambda));
            covered += 2;
        }
    }
    if (covered != num_qubits) throw InternalConsistency("momentum blocks do not cover the grid");

    std::vector<Level> combos{{0.0, 0}};
    for (const auto& block : blocks) {
        std::vector<Level> next;
        next.reserve(combos.size() * block.eigenvalues.size());
        for (const auto& partial : combos) {
            for (std::size_t k = 0; k < block.eigenvalues.size(); ++k) {
                next.push_back({partial.energy + block.eigenvalues[k], (partial.parity + block.occupations[k]) % 2});
            }
        }
        combos = std::move(next);
    }

    const int wanted = sector == FermionSector::cyclic ? 1 : 0;
    std::vector<double> energies;
    for (const auto& c : combos) {
        if (c.parity == wanted) energies.push_back(c.energy);
    }
    if (energies.size() != dim_of(num_qubits) / 2) {
        throw InternalConsistency("sector assembled " + std::to_string(energies.size()) + " levels, expected " +
                                  std::to_string(dim_of(num_qubits) / 2));
    }
    std::sort(energies.begin(), energies.end());
    return energies;
}

std::vector<double> assemble_spectrum(int num_qubits, double lambda) {
    auto energies = assemble_sector_spectrum(num_qubits, lambda, FermionSector::cyclic);
    const auto even = assemble_sector_spectrum(num_qubits, lambda, FermionSector::anticyclic);
    energies.insert(energies.end(), even.begin(), even.end());
    if (energies.size() != dim_of(num_qubits)) throw InternalConsistency("assembled spectrum has the wrong size");
    std::sort(energies.begin(), energies.end());
    return energies;
}

}  // namespace isingring
