#pragma once

// Basis indexing, pure and mixed qubit states, partial traces and dense
// Hermitian eigendecomposition.
//
// Qubit positions are 1-based. Qubit 1 is the most significant bit of a basis
// index, so the ket |b_1 b_2 ... b_N> has index sum_k b_k 2^(N-k).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace isingring {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest register the dense routines accept (2^14 x 2^14 matrices).
inline constexpr int kMaxDenseQubits = 14;

/// 2^n as a size.
inline std::size_t dim_of(int num_qubits) { return std::size_t{1} << num_qubits; }

/// Bit mask of qubit `position` (1-based) in an N-qubit basis index.
inline std::size_t qubit_mask(int position, int num_qubits) {
    return std::size_t{1} << (num_qubits - position);
}

std::size_t basis_index(std::span<const int> bits);
std::vector<int> basis_bits(std::size_t index, int num_qubits);

/// Number of qubits up (set bits) in a basis index.
inline int hamming_weight(std::size_t index) { return __builtin_popcountll(index); }

/// Amplitudes over the 2^N computational basis. Normalization is not enforced
/// (un-normalized vectors appear as intermediate objects); use normalized().
class StateVector {
public:
    StateVector(int num_qubits, CVector amplitudes);

    static StateVector basis(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const CVector& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

    double norm() const { return amplitudes_.norm(); }
    StateVector normalized() const;

private:
    int num_qubits_;
    CVector amplitudes_;
};

/// <a|b>
Complex inner(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 / (<a|a><b|b>)
double fidelity(const StateVector& a, const StateVector& b);

/// Tensor product a (x) b; qubits of `a` come first.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Hermitian, unit-trace matrix over num_qubits qubits. Construction checks
/// Hermiticity (1e-12 entrywise) and the trace (1e-10); positivity is checked
/// by consumers that diagonalize it (see checked_eigenvalues).
class DensityMatrix {
public:
    DensityMatrix(int num_qubits, CMatrix elements);

    static DensityMatrix from_pure(const StateVector& psi);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(elements_.rows()); }
    const CMatrix& elements() const { return elements_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return elements_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    double trace() const { return elements_.trace().real(); }

private:
    int num_qubits_;
    CMatrix elements_;
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kNegativeEigenvalueTolerance = 1e-10;

/// Reduced state on `keep` (1-based, distinct, in the order given; keep[0]
/// becomes the most significant qubit of the result).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
/// Same for the projector |psi><psi| without forming it.
DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep);

/// Amplitudes of psi reshaped to (kept configuration) x (traced configuration),
/// so that partial_trace(psi, keep) = M M^dagger.
CMatrix marginal_factor(const StateVector& psi, std::span<const int> keep);

struct EigenSystem {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // column k belongs to eigenvalues[k]
};

/// Dense Hermitian eigendecomposition. Throws InvalidInput unless the matrix
/// is square and Hermitian within 1e-10. Real-valued input is routed through
/// the real symmetric solver.
EigenSystem hermitian_eig(const CMatrix& h);
RVector hermitian_eigenvalues(const CMatrix& h);

/// Eigenvalues of a density matrix with [-1e-10, 0) clipped to zero.
/// Throws NumericalFailure for anything more negative.
RVector checked_eigenvalues(const DensityMatrix& rho);
RVector clip_negative_dust(RVector values);

/// Apply a 2^k x 2^k operator acting on the qubits `positions` (1-based,
/// positions[0] is the operator's most significant qubit).
StateVector apply_operator(const StateVector& psi, std::span<const int> positions, const CMatrix& op);
StateVector apply_single_qubit(const StateVector& psi, int position, const Eigen::Matrix2cd& u);

/// Reorder qubits: qubit `order[k]` of psi becomes qubit k+1 of the result.
StateVector reorder_qubits(const StateVector& psi, std::span<const int> order);

/// Largest |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

namespace pauli {
Eigen::Matrix2cd x();
Eigen::Matrix2cd y();
Eigen::Matrix2cd z();
Eigen::Matrix2cd hadamard();
}  // namespace pauli

}  // namespace isingring
