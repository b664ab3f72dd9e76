#pragma once

// Reference constructions that share no code with the library: Kronecker
// products of Pauli matrices, Gaussian random states and Haar-ish unitaries.

#include "isingring/qcore.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using isingring::CMatrix;
using isingring::Complex;
using isingring::CVector;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline CMatrix sx() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

// Z|0> = -|0>, Z|1> = +|1>
inline CMatrix sz() {
    CMatrix m(2, 2);
    m << -1, 0, 0, 1;
    return m;
}

inline CMatrix sy() {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

/// Single-site operators placed at 1-based positions, identity elsewhere.
inline CMatrix embed(int n, const std::vector<std::pair<int, CMatrix>>& ops) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int p = 1; p <= n; ++p) {
        CMatrix factor = CMatrix::Identity(2, 2);
        for (const auto& [pos, op] : ops)
            if (pos == p) factor = op * factor;
        out = kron(out, factor);
    }
    return out;
}

/// E(-lambda sum X_n X_{n+1} + sum Z_n), cyclic, built from Kronecker products.
inline CMatrix ising(int n, double lambda, double scale = 1.0) {
    const auto d = static_cast<Eigen::Index>(1) << n;
    CMatrix h = CMatrix::Zero(d, d);
    for (int p = 1; p <= n; ++p) {
        h += embed(n, {{p, sz()}});
        const int next = p % n + 1;
        h -= lambda * embed(n, {{p, sx()}, {next, sx()}});
    }
    return scale * h;
}

inline CVector random_vector(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CVector v(d);
    for (Eigen::Index k = 0; k < d; ++k) v[k] = Complex(g(rng), g(rng));
    return v / v.norm();
}

inline CMatrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<CMatrix> qr(m);
    return qr.householderQ() * CMatrix::Identity(d, d);
}

/// Random mixed state of rank `rank`.
inline CMatrix random_density(Eigen::Index d, int rank, std::mt19937_64& rng) {
    CMatrix rho = CMatrix::Zero(d, d);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    double total = 0.0;
    for (int r = 0; r < rank; ++r) {
        const double w = u(rng);
        const CVector v = random_vector(d, rng);
        rho += w * v * v.adjoint();
        total += w;
    }
    rho /= total;
    return (rho + rho.adjoint()) / 2.0;
}

/// Sorted real eigenvalues through Eigen's complex solver directly.
inline std::vector<double> eigenvalues(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    std::vector<double> out(es.eigenvalues().begin(), es.eigenvalues().end());
    return out;
}

/// Wootters concurrence via the non-Hermitian product rho * rho~.
inline double wootters(const CMatrix& rho) {
    const CMatrix yy = kron(sy(), sy());
    const CMatrix tilde = yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<CMatrix> es(rho * tilde);
    std::vector<double> s;
    for (Eigen::Index k = 0; k < 4; ++k) s.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[k].real())));
    std::sort(s.rbegin(), s.rend());
    return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

}  // namespace oracle
