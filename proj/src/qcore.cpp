#include "isingring/qcore.hpp"

#include "isingring/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isingring {

namespace {

void require_register_size(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) {
        throw InvalidInput("qubit count must be in 1..30, got " + std::to_string(num_qubits));
    }
}

// Validates 1-based distinct positions and returns their masks.
std::vector<std::size_t> position_masks(std::span<const int> positions, int num_qubits) {
    std::vector<std::size_t> masks;
    masks.reserve(positions.size());
    std::size_t seen = 0;
    for (int p : positions) {
        if (p < 1 || p > num_qubits) {
            throw InvalidInput("qubit position " + std::to_string(p) + " outside 1.." +
                               std::to_string(num_qubits));
        }
        const std::size_t m = qubit_mask(p, num_qubits);
        if (seen & m) throw InvalidInput("qubit position " + std::to_string(p) + " repeated");
        seen |= m;
        masks.push_back(m);
    }
    return masks;
}

// Spreads the bits of `local` (most significant first) onto `masks`.
std::size_t scatter(std::size_t local, const std::vector<std::size_t>& masks) {
    std::size_t out = 0;
    const std::size_t k = masks.size();
    for (std::size_t b = 0; b < k; ++b) {
        if (local & (std::size_t{1} << (k - 1 - b))) out |= masks[b];
    }
    return out;
}

// full[kept][rest] -> index into the full register.
struct SplitIndex {
    std::size_t kept_dim;
    std::size_t rest_dim;
    std::vector<std::size_t> full;

    std::size_t at(std::size_t kept, std::size_t rest) const { return full[kept * rest_dim + rest]; }
};

SplitIndex split_register(int num_qubits, std::span<const int> keep) {
    if (keep.empty()) throw InvalidInput("partial trace needs at least one kept qubit");
    const auto keep_masks = position_masks(keep, num_qubits);
    std::vector<std::size_t> rest_masks;
    std::size_t kept_all = 0;
    for (auto m : keep_masks) kept_all |= m;
    for (int p = 1; p <= num_qubits; ++p) {
        const auto m = qubit_mask(p, num_qubits);
        if (!(kept_all & m)) rest_masks.push_back(m);
    }
    SplitIndex s{std::size_t{1} << keep_masks.size(), std::size_t{1} << rest_masks.size(), {}};
    s.full.resize(s.kept_dim * s.rest_dim);
    std::vector<std::size_t> rest_offsets(s.rest_dim);
    for (std::size_t r = 0; r < s.rest_dim; ++r) rest_offsets[r] = scatter(r, rest_masks);
    for (std::size_t k = 0; k < s.kept_dim; ++k) {
        const std::size_t base = scatter(k, keep_masks);
        for (std::size_t r = 0; r < s.rest_dim; ++r) s.full[k * s.rest_dim + r] = base | rest_offsets[r];
    }
    return s;
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

void require_hermitian(const CMatrix& h) {
    if (h.rows() != h.cols()) throw InvalidInput("matrix is not square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (h.size() > 0 && (h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw InvalidInput("matrix is not Hermitian within 1e-10");
    }
}

bool is_real(const CMatrix& h) { return h.size() == 0 || h.imag().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

std::size_t basis_index(std::span<const int> bits) {
    if (bits.empty() || bits.size() > 62) throw InvalidInput("bit string length must be in 1..62");
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw InvalidInput("basis digit " + std::to_string(b) + " is not 0 or 1");
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    return index;
}

std::vector<int> basis_bits(std::size_t index, int num_qubits) {
    std::vector<int> bits(static_cast<std::size_t>(num_qubits));
    for (int p = 1; p <= num_qubits; ++p) bits[p - 1] = (index & qubit_mask(p, num_qubits)) ? 1 : 0;
    return bits;
}

StateVector::StateVector(int num_qubits, CVector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    require_register_size(num_qubits);
    if (static_cast<std::size_t>(amplitudes_.size()) != dim_of(num_qubits)) {
        throw InvalidInput("state vector length " + std::to_string(amplitudes_.size()) +
                           " is not 2^" + std::to_string(num_qubits));
    }
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
    require_register_size(num_qubits);
    if (index >= dim_of(num_qubits)) throw InvalidInput("basis index out of range");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(num_qubits, std::move(v));
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw InvalidInput("cannot normalize the zero vector");
    return StateVector(num_qubits_, amplitudes_ / n);
}

Complex inner(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) throw InvalidInput("inner product of different registers");
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner(a, b)) / (a.amplitudes().squaredNorm() * b.amplitudes().squaredNorm());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const auto db = static_cast<Eigen::Index>(b.dim());
    CVector out(static_cast<Eigen::Index>(a.dim()) * db);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dim()); ++i) {
        out.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
    }
    return StateVector(a.num_qubits() + b.num_qubits(), std::move(out));
}

DensityMatrix::DensityMatrix(int num_qubits, CMatrix elements)
    : num_qubits_(num_qubits), elements_(std::move(elements)) {
    require_register_size(num_qubits);
    const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
    if (elements_.rows() != d || elements_.cols() != d) {
        throw InvalidInput("density matrix must be 2^" + std::to_string(num_qubits) + " square");
    }
    if ((elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
        throw InvalidInput("density matrix is not Hermitian within 1e-12");
    }
    if (std::abs(elements_.trace() - Complex(1.0)) > kTraceTolerance) {
        throw InvalidInput("density matrix trace differs from 1 by more than 1e-10");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    const CVector& a = psi.amplitudes();
    return DensityMatrix(psi.num_qubits(), hermitian_part(a * a.adjoint()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    const auto s = split_register(rho.num_qubits(), keep);
    const CMatrix& full = rho.elements();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(s.kept_dim), static_cast<Eigen::Index>(s.kept_dim));
    for (std::size_t a = 0; a < s.kept_dim; ++a) {
        for (std::size_t b = 0; b < s.kept_dim; ++b) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < s.rest_dim; ++r) {
                acc += full(static_cast<Eigen::Index>(s.at(a, r)), static_cast<Eigen::Index>(s.at(b, r)));
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    }
    return DensityMatrix(static_cast<int>(keep.size()), hermitian_part(out));
}

CMatrix marginal_factor(const StateVector& psi, std::span<const int> keep) {
    const auto s = split_register(psi.num_qubits(), keep);
    CMatrix m(static_cast<Eigen::Index>(s.kept_dim), static_cast<Eigen::Index>(s.rest_dim));
    for (std::size_t k = 0; k < s.kept_dim; ++k) {
        for (std::size_t r = 0; r < s.rest_dim; ++r) {
            m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r)) = psi[s.at(k, r)];
        }
    }
    return m;
}

DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep) {
    const CMatrix m = marginal_factor(psi, keep);
    return DensityMatrix(static_cast<int>(keep.size()), hermitian_part(m * m.adjoint()));
}

EigenSystem hermitian_eig(const CMatrix& h) {
    require_hermitian(h);
    if (is_real(h)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
        if (solver.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge");
        return {solver.eigenvalues(), solver.eigenvectors().cast<Complex>()};
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalFailure("Hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector hermitian_eigenvalues(const CMatrix& h) {
    require_hermitian(h);
    if (is_real(h)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real(), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge");
        return solver.eigenvalues();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalFailure("Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

RVector clip_negative_dust(RVector values) {
    for (auto& v : values) {
        if (v < -kNegativeEigenvalueTolerance) {
            throw NumericalFailure("eigenvalue " + std::to_string(v) + " below -1e-10");
        }
        if (v < 0.0) v = 0.0;
    }
    return values;
}

RVector checked_eigenvalues(const DensityMatrix& rho) {
    return clip_negative_dust(hermitian_eigenvalues(rho.elements()));
}

StateVector apply_operator(const StateVector& psi, std::span<const int> positions, const CMatrix& op) {
    const int n = psi.num_qubits();
    const auto masks = position_masks(positions, n);
    const std::size_t local_dim = std::size_t{1} << masks.size();
    if (static_cast<std::size_t>(op.rows()) != local_dim || static_cast<std::size_t>(op.cols()) != local_dim) {
        throw InvalidInput("operator dimension does not match the number of target qubits");
    }
    std::size_t touched = 0;
    for (auto m : masks) touched |= m;
    std::vector<std::size_t> offsets(local_dim);
    for (std::size_t k = 0; k < local_dim; ++k) offsets[k] = scatter(k, masks);

    CVector out(static_cast<Eigen::Index>(psi.dim()));
    CVector local(static_cast<Eigen::Index>(local_dim));
    for (std::size_t base = 0; base < psi.dim(); ++base) {
        if (base & touched) continue;
        for (std::size_t k = 0; k < local_dim; ++k) local[static_cast<Eigen::Index>(k)] = psi[base | offsets[k]];
        const CVector mapped = op * local;
        for (std::size_t k = 0; k < local_dim; ++k) {
            out[static_cast<Eigen::Index>(base | offsets[k])] = mapped[static_cast<Eigen::Index>(k)];
        }
    }
    return StateVector(n, std::move(out));
}

StateVector apply_single_qubit(const StateVector& psi, int position, const Eigen::Matrix2cd& u) {
    const int pos[1] = {position};
    return apply_operator(psi, pos, CMatrix(u));
}

StateVector reorder_qubits(const StateVector& psi, std::span<const int> order) {
    const int n = psi.num_qubits();
    if (static_cast<int>(order.size()) != n) throw InvalidInput("reorder needs a full permutation of the qubits");
    const auto source = position_masks(order, n);
    CVector out(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        std::size_t j = 0;
        for (int k = 0; k < n; ++k) {
            if (i & source[static_cast<std::size_t>(k)]) j |= qubit_mask(k + 1, n);
        }
        out[static_cast<Eigen::Index>(j)] = psi[i];
    }
    return StateVector(n, std::move(out));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix shapes differ");
    return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

namespace pauli {

Eigen::Matrix2cd x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd y() {
    Eigen::Matrix2cd m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

// Qubit up |1> is the +1 eigenstate.
Eigen::Matrix2cd z() {
    Eigen::Matrix2cd m;
    m << -1, 0, 0, 1;
    return m;
}

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

}  // namespace pauli

}  // namespace isingring
