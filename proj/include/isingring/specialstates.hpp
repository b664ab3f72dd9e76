#pragma once

// Closed-form states of the Ising ring:
//  * the lambda -> infinity ground state (uniform superposition of even-weight
//    basis states, a GHZ state in the X eigenbasis);
//  * the X-state, the zero-energy eigenstate at lambda = 1 for odd N = 2n + 1,
//    whose amplitude on an even set S of up qubits is (-1)^(sum of ring
//    distances over pairs in S);
//  * its decomposition over a block O of n neighbouring qubits into mutually
//    orthogonal vectors alpha_c on the complement, and the local unitary that
//    turns the X-state into n Bell pairs.

#include "isingring/hamiltonian.hpp"

#include <span>
#include <vector>

namespace isingring {

/// Shortest arc between positions i and j on an N-ring.
int ring_distance(int i, int j, int num_qubits);

/// Ring geometry of an odd ring N = 2n + 1.
struct RingGeometry {
    int num_qubits;
    int half;  // n

    static RingGeometry odd(int num_qubits);
    /// Every contiguous block (with wrap-around) of `size` positions, starting at 1..N.
    std::vector<std::vector<int>> contiguous_blocks(int size) const;
};

/// True when `block` lists distinct positions stepping by +1 around the ring.
bool is_contiguous_block(std::span<const int> block, int num_qubits);

/// Sum of ring distances over unordered pairs of up qubits of a basis index.
int pair_distance_sum(std::size_t index, int num_qubits);

StateVector ghz_limit_state(int num_qubits);

/// (|0...0> + |1...1>) / sqrt 2
StateVector standard_ghz_state(int num_qubits);

/// Rotates every qubit from the X eigenbasis to the Z basis (Hadamard) and
/// returns |<GHZ|H^(x)N psi>|^2.
double ghz_equivalence_check(const StateVector& psi);

/// Normalized X-state, with amplitude +1/2^n on |0...0>. Throws InvalidInput for even N.
StateVector xstate(int num_qubits);

/// max |rho_block - I / 2^k| entrywise for a contiguous block of k <= n qubits
/// of an N = 2n + 1 qubit state.
double verify_block_mixedness(const StateVector& psi, std::span<const int> block);

/// Decomposition X = sum_c |c>_O (x) |alpha_c> of the un-normalized X-state
/// over a block O of n neighbouring qubits.
struct AlphaFamily {
    int num_qubits = 0;
    std::vector<int> region;       // O, in the order given
    std::vector<int> complement;   // the other n + 1 positions, ascending
    std::vector<StateVector> vectors;  // indexed by the n-bit configuration of O (region[0] most significant)

    /// Matrix of inner products <alpha_a|alpha_b>.
    CMatrix gram() const;
    /// max |gram - 2^n I|
    double gram_deviation() const;
    /// sum_c |c>_O (x) |alpha_c>, in the original qubit order (un-normalized).
    StateVector reassemble() const;
};

AlphaFamily alpha_family(int num_qubits, std::span<const int> region);

/// Unitary on the complement qubits sending alpha_c / 2^(n/2) to |c>|0>; the
/// remaining columns map a Gram-Schmidt completion (residual computational basis
/// vectors in index order) onto |c>|1> in increasing c.
CMatrix bob_extraction_unitary(int num_qubits, std::span<const int> region);

/// Result of applying 1_O (x) U_B to the X-state.
struct BellExtraction {
    StateVector state;      // reordered as (O, complement)
    double fidelity = 0.0;  // with sum_c |c>|c>|0> / 2^(n/2)
};

BellExtraction extract_bell_pairs(int num_qubits, std::span<const int> region);

/// n Bell pairs followed by |0>: sum_c |c>_A |c>_B |0> / 2^(n/2) with A the first n qubits.
StateVector bell_pair_target(int half);

struct TrackPoint {
    double lambda;
    double energy;
    StateVector state;
};

/// Follows the X-state level along `lambda_grid` (which must contain 1 within
/// 1e-12): start at lambda = 1 from the projection of xstate(N) on its
/// eigenspace, then step outwards choosing the eigenspace with the largest
/// projection of the previous state. Throws TrackingFailure when the two best
/// eigenspaces are within 1e-6 of each other.
std::vector<TrackPoint> xstate_track(int num_qubits, std::span<const double> lambda_grid);

}  // namespace isingring
