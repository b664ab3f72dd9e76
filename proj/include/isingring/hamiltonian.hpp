#pragma once

// Transverse-field Ising ring
//
//   H = E * ( -lambda * sum_n X_n X_{n+1} + sum_n Z_n ),   X_{N+1} = X_1,
//
// with Z|1> = +|1>, so the field term acts on a basis state with K qubits up
// as (2K - N). For N = 2 both bonds (1,2) and (2,1) are summed.

#include "isingring/qcore.hpp"

#include <span>
#include <vector>

namespace isingring {

struct IsingParams {
    int num_qubits = 3;
    double lambda = 0.0;
    double energy_scale = 1.0;

    /// Throws InvalidInput unless N >= 2, lambda finite and E > 0.
    void validate() const;
};

CMatrix build_hamiltonian(const IsingParams& p);

/// H|psi> without forming H.
StateVector apply_hamiltonian(const IsingParams& p, const StateVector& psi);

/// (-1)^K for every basis index.
std::vector<int> parity_operator(int num_qubits);

/// Relabelling of qubit positions: qubit p is carried to target(p).
class QubitPermutation {
public:
    QubitPermutation(int num_qubits, std::vector<int> targets);

    int num_qubits() const { return static_cast<int>(targets_.size()); }
    int target(int position) const { return targets_[static_cast<std::size_t>(position - 1)]; }
    std::size_t map_index(std::size_t index) const;

    StateVector apply(const StateVector& psi) const;
    CMatrix matrix() const;

private:
    std::vector<int> targets_;
};

/// n -> n+1 (mod N)
QubitPermutation translation_operator(int num_qubits);
/// n -> N - n + 1
QubitPermutation inversion_operator(int num_qubits);

/// Full eigensystem, computed per parity sector and merged in ascending order.
EigenSystem ising_eigensystem(const IsingParams& p);
/// Ascending spectrum.
RVector ising_spectrum(const IsingParams& p);

/// Eigenpairs restricted to one parity sector, expressed in the full basis.
struct SectorEigenSystem {
    int parity;  // +1 even, -1 odd
    EigenSystem system;
};
SectorEigenSystem sector_eigensystem(const IsingParams& p, int parity);

struct LevelCrossing {
    double lambda;     // interpolated crossing point
    int lower_level;   // ascending level indices at the grid point before the crossing
    int upper_level;
};

struct SpectrumTable {
    int num_qubits = 0;
    std::vector<double> lambda_grid;
    std::vector<std::vector<double>> levels;  // levels[k] ascending, length 2^N
    std::vector<LevelCrossing> crossings;
};

struct SweepOptions {
    bool detect_crossings = true;
    int threads = 0;  // 0 = hardware concurrency
};

/// Levels for every grid point. Crossings are found by continuing each level
/// along the grid through maximal eigenvector overlap and reporting pairs of
/// continued branches whose energy order flips.
SpectrumTable spectrum_sweep(int num_qubits, std::span<const double> lambda_grid, SweepOptions options = {});

/// Levels closer than this are treated as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Lowest eigenvector. If the lowest level is degenerate, the unique member
/// of the even-parity sector is returned (the large-lambda GHZ-like branch).
StateVector ground_state(const IsingParams& p);
double ground_energy(const IsingParams& p);

}  // namespace isingring
