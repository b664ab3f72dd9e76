#include "isingring/entanglement.hpp"
#include "isingring/errors.hpp"
#include "isingring/thermal.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace isingring;

namespace {

// exp(-H/T)/Z straight from the oracle eigendecomposition, without any shift.
CMatrix gibbs_oracle(int n, double l, double t) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(oracle::ising(n, l));
    RVector w = (-es.eigenvalues().array() / t).exp().matrix();
    w /= w.sum();
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_SUITE("thermal") {
    TEST_CASE("temperature must be positive") {
        CHECK_THROWS_AS(gibbs_state(ThermalParams{{3, 1.0, 1.0}, 0.0}), InvalidInput);
        CHECK_THROWS_AS(gibbs_state(ThermalParams{{3, 1.0, 1.0}, -1.0}), InvalidInput);
        const double lg[] = {1.0}, tg[] = {-0.5};
        CHECK_THROWS_AS(thermal_sweep(3, lg, tg, {1, 2}), InvalidInput);
        const double ok[] = {1.0};
        CHECK_THROWS_AS(thermal_sweep(3, lg, ok, {1, 1}), InvalidInput);
    }

    TEST_CASE("Gibbs state matches the unshifted oracle") {
        for (double t : {0.3, 1.0, 5.0})
            CHECK(max_abs_diff(gibbs_state(ThermalParams{{4, 0.8, 1.0}, t}).elements(), gibbs_oracle(4, 0.8, t)) < 1e-12);
    }

    TEST_CASE("high temperature approaches the maximally mixed state") {
        const DensityMatrix rho = gibbs_state(ThermalParams{{3, 1.0, 1.0}, 1e6});
        CHECK(max_abs_diff(rho.elements(), CMatrix::Identity(8, 8) / 8.0) < 1e-5);
        CHECK(pair_concurrence(rho, 1, 2) < 1e-5);
    }

    TEST_CASE("low temperature approaches the ground projector") {
        const DensityMatrix rho = gibbs_state(ThermalParams{{3, 1.0, 1.0}, 1e-3});
        const StateVector g = ground_state({3, 1.0, 1.0});
        const double f = (g.amplitudes().adjoint() * rho.elements() * g.amplitudes())(0, 0).real();
        CHECK(f >= 1.0 - 1e-6);
    }

    TEST_CASE("small temperature does not overflow") {
        const DensityMatrix rho = gibbs_state(ThermalParams{{6, 2.0, 10.0}, 1e-4});
        CHECK(std::isfinite(rho.trace()));
        CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("finite temperature degrades the concurrence") {
        const double ground = pair_concurrence(ground_state({3, 1.0, 1.0}), 1, 2);
        const double warm = pair_concurrence(gibbs_state(ThermalParams{{3, 1.0, 1.0}, 1.0}), 1, 2);
        CHECK(warm < ground);
    }

    TEST_CASE("sweep cells") {
        const double l1[] = {1.0}, big[] = {1e6};
        CHECK(thermal_sweep(3, l1, big, {1, 2}).rows[0][2] < 1e-5);
        const double l0[] = {0.0}, temps[] = {0.0, 0.1, 1.0, 10.0};
        for (const auto& row : thermal_sweep(3, l0, temps, {1, 2}).rows) CHECK(row[2] == 0.0);
    }

    TEST_CASE("sweep layout and the zero-temperature column") {
        const auto lg = linspace(0.0, 3.0, 20);
        const auto tg = linspace(0.01, 3.0, 20);
        const SweepResult r = thermal_sweep(3, lg, tg, {1, 2}, 2);
        REQUIRE(r.rows.size() == 400);
        CHECK(r.columns == std::vector<std::string>{"lambda", "temperature", "concurrence"});
        CHECK(r.rows[21][0] == lg[1]);
        CHECK(r.rows[21][1] == tg[1]);
        std::size_t best = 0;
        for (std::size_t k = 0; k < r.rows.size(); ++k)
            if (r.rows[k][2] > r.rows[best][2]) best = k;
        CHECK(r.rows[best][1] == tg[0]);
        CHECK(std::abs(r.rows[best][0] - 1.0) < 0.5);

        const double t0[] = {0.0, 0.01};
        const double one[] = {0.7};
        const auto cells = thermal_sweep(3, one, t0, {1, 2}).rows;
        CHECK(std::abs(cells[0][2] - cells[1][2]) < 1e-3);
    }

    TEST_CASE("property: trace, commutation and pair symmetry") {
        for (double l : linspace(0.0, 3.0, 7))
            for (double t : {0.05, 0.5, 2.0}) {
                const DensityMatrix rho = gibbs_state(ThermalParams{{3, l, 1.0}, t});
                CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
                const CMatrix h = build_hamiltonian({3, l, 1.0});
                CHECK((h * rho.elements() - rho.elements() * h).cwiseAbs().maxCoeff() < 1e-9);
                const double c12 = pair_concurrence(rho, 1, 2);
                CHECK(std::abs(pair_concurrence(rho, 1, 3) - c12) < 1e-9);
                CHECK(std::abs(pair_concurrence(rho, 2, 3) - c12) < 1e-9);
            }
    }

    TEST_CASE("property: concurrence is non-increasing in temperature") {
        double previous = 1.0;
        for (double t : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            const double c = pair_concurrence(gibbs_state(ThermalParams{{3, 1.0, 1.0}, t}), 1, 2);
            CHECK(c <= previous + 1e-9);
            previous = c;
        }
    }

    TEST_CASE("property: any basis of a degenerate eigenspace gives the same state") {
        // N=3 has the doubly degenerate levels lambda +- 1; rotate within each pair.
        const IsingParams p{3, 0.6, 1.0};
        EigenSystem es = ising_eigensystem(p);
        std::mt19937_64 rng(8);
        EigenSystem rotated = es;
        for (Eigen::Index k = 0; k + 1 < es.eigenvalues.size();) {
            Eigen::Index end = k + 1;
            while (end < es.eigenvalues.size() && es.eigenvalues[end] - es.eigenvalues[k] < 1e-9) ++end;
            if (end - k > 1) {
                const CMatrix u = oracle::random_unitary(end - k, rng);
                rotated.eigenvectors.middleCols(k, end - k) = es.eigenvectors.middleCols(k, end - k) * u;
            }
            k = end;
        }
        CHECK(max_abs_diff(rotated.eigenvectors, es.eigenvectors) > 1e-3);
        CHECK(max_abs_diff(gibbs_state(es, 3, 0.7).elements(), gibbs_state(rotated, 3, 0.7).elements()) < 1e-12);
    }
}
