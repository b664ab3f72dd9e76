#pragma once

// Spectrum of the Ising ring from its Jordan-Wigner free-fermion form.
//
// Fermion number parity splits the Hilbert space. Odd fermion number pairs
// with cyclic fermion boundary conditions, q = 2 pi l / N; even fermion
// number with anticyclic ones, q = pi (2l + 1) / N. Momenta q and 2pi - q form
// 4x4 blocks H_q; q = 0 and q = pi are 2x2 blocks. Many-body energies are sums
// of one eigenvalue per block, kept only when the block fermion numbers add up
// to the sector's parity.

#include "isingring/qcore.hpp"

#include <vector>

namespace isingring {

enum class FermionSector {
    cyclic,      // odd fermion number
    anticyclic,  // even fermion number
};

struct MomentumSector {
    FermionSector sector;
    std::vector<double> q_values;  // in [0, 2 pi), ascending in l
};

MomentumSector momentum_values(int num_qubits, FermionSector sector);

/// Eigendata of one momentum block.
struct BlockEigenData {
    double q = 0.0;
    /// Paired q: {a1, a2, a3, a4}; q = 0 or pi: {-1, -2 lambda cos q + 1}.
    std::vector<double> eigenvalues;
    /// Fermion-number parity (0 or 1) of each eigenvector.
    std::vector<int> occupations;
    /// Coefficients on the empty and doubly occupied pair states
    /// (d_j, e_j) for a3 and a4; empty for the two-level blocks.
    std::vector<Complex> empty_amplitudes;
    std::vector<Complex> pair_amplitudes;
};

/// q must lie in [0, 2 pi). q within 1e-12 of 0 or pi is treated as the
/// unpaired special case.
BlockEigenData block_eigenvalues(double q, double lambda);

/// The block as a matrix: 4x4 in the basis {eta_q^+|0>, eta_{2pi-q}^+|0>, |0>,
/// eta_{2pi-q}^+ eta_q^+|0>}, or 2x2 in {|0>, eta_q^+|0>} for q = 0, pi.
CMatrix block_matrix(double q, double lambda);

/// Energies of one parity sector (2^(N-1) values, ascending), energy_scale 1.
std::vector<double> assemble_sector_spectrum(int num_qubits, double lambda, FermionSector sector);

/// Union of both sectors, ascending; exactly 2^N entries.
std::vector<double> assemble_spectrum(int num_qubits, double lambda);

}  // namespace isingring
