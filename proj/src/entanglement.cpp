#include "isingring/entanglement.hpp"

#include "isingring/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isingring {

namespace {

void require_two_qubits(const DensityMatrix& rho) {
    if (rho.num_qubits() != 2) {
        throw InvalidInput("two-qubit state required, got " + std::to_string(rho.num_qubits()) + " qubits");
    }
}

CMatrix yy() {
    const Eigen::Matrix2cd y = pauli::y();
    CMatrix out(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) out(2 * a + c, 2 * b + d) = y(a, b) * y(c, d);
    return out;
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

// With rho = W W^dagger, the square roots of the eigenvalues of rho rho~ (equivalently of
// sqrt(rho) rho~ sqrt(rho)) are the singular values of W^T (Y x Y) W.
double concurrence_from_factor(const CMatrix& w) {
    const CMatrix a = w.transpose() * yy() * w;
    Eigen::JacobiSVD<CMatrix> svd(a);
    RVector s = RVector::Zero(4);
    const RVector& sv = svd.singularValues();
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(4, sv.size()); ++k) s[k] = sv[k];
    std::sort(s.begin(), s.end(), std::greater<>());
    return clamp_unit(s[0] - s[1] - s[2] - s[3]);
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::concurrence: return "concurrence";
        case MeasureKind::tangle: return "tangle";
        case MeasureKind::three_tangle: return "three_tangle";
        case MeasureKind::entropy: return "entropy";
    }
    return "unknown";
}

MeasureValue MeasureValue::checked(MeasureKind kind, double value) {
    const bool unit = kind != MeasureKind::entropy;
    if (!std::isfinite(value) || value < 0.0 || (unit && value > 1.0)) {
        throw NumericalFailure(std::string(to_string(kind)) + " value " + std::to_string(value) + " out of range");
    }
    return {kind, value};
}

DensityMatrix spin_flip(const DensityMatrix& rho) {
    require_two_qubits(rho);
    const CMatrix f = yy();
    const CMatrix flipped = f * rho.elements().conjugate() * f;
    return DensityMatrix(2, (flipped + flipped.adjoint()) / 2.0);
}

double concurrence(const DensityMatrix& rho) {
    require_two_qubits(rho);
    const EigenSystem es = hermitian_eig(rho.elements());
    const RVector p = clip_negative_dust(es.eigenvalues);
    return concurrence_from_factor(es.eigenvectors * p.cwiseSqrt().asDiagonal());
}

double tangle(const StateVector& psi, int qubit) {
    const int keep[1] = {qubit};
    const DensityMatrix a = partial_trace(psi, keep);
    const double det = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
    return clamp_unit(4.0 * det);
}

double three_tangle(const StateVector& psi, int anchor) {
    if (psi.num_qubits() != 3) throw InvalidInput("three-tangle needs exactly 3 qubits");
    if (anchor < 1 || anchor > 3) throw InvalidInput("anchor qubit must be 1, 2 or 3");
    double value = tangle(psi, anchor);
    for (int other = 1; other <= 3; ++other) {
        if (other == anchor) continue;
        const double c = pair_concurrence(psi, anchor, other);
        value -= c * c;
    }
    return value;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const RVector p = checked_eigenvalues(rho);
    double s = 0.0;
    for (double v : p) {
        if (v > 0.0) s -= v * std::log(v);
    }
    return std::max(s, 0.0);
}

double pair_concurrence(const StateVector& psi, int i, int j) {
    const int keep[2] = {i, j};
    // Validates the pair and the normalization.
    (void)partial_trace(psi, keep);
    return concurrence_from_factor(marginal_factor(psi, keep));
}

double pair_concurrence(const DensityMatrix& rho, int i, int j) {
    const int keep[2] = {i, j};
    return concurrence(partial_trace(rho, keep));
}

}  // namespace isingring
