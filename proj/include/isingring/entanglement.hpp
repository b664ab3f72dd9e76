#pragma once

#include "isingring/qcore.hpp"

#include <string_view>

namespace isingring {

enum class MeasureKind { concurrence, tangle, three_tangle, entropy };

std::string_view to_string(MeasureKind kind);

/// A measure value checked against the range of its kind:
/// concurrence, tangle and three-tangle in [0, 1], entropy >= 0.
struct MeasureValue {
    MeasureKind kind;
    double value;

    static MeasureValue checked(MeasureKind kind, double value);
};

/// (Y (x) Y) rho^* (Y (x) Y) for a two-qubit state.
DensityMatrix spin_flip(const DensityMatrix& rho);

/// Wootters concurrence of a two-qubit state. The spectrum of rho * rho~ is
/// taken from the Hermitian matrix sqrt(rho) rho~ sqrt(rho).
double concurrence(const DensityMatrix& rho);

/// 4 det(rho_A) of the single-qubit marginal at `qubit`.
double tangle(const StateVector& psi, int qubit);

/// C_{A|BC} - C_AB^2 - C_AC^2 anchored at `anchor` of a three-qubit pure state.
double three_tangle(const StateVector& psi, int anchor = 1);

/// -sum p ln p over the spectrum (natural log, 0 ln 0 = 0).
double von_neumann_entropy(const DensityMatrix& rho);

/// Concurrence of the pair (i, j) in a pure state.
double pair_concurrence(const StateVector& psi, int i, int j);
/// Concurrence of the pair (i, j) in a mixed state.
double pair_concurrence(const DensityMatrix& rho, int i, int j);

}  // namespace isingring
