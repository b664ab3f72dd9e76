// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include "isingring/entanglement.hpp"
#include "isingring/freefermion.hpp"
#include "isingring/hamiltonian.hpp"
#include "isingring/specialstates.hpp"
#include "isingring/sweep.hpp"
#include "isingring/thermal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef ISINGRING_CLI
#error "ISINGRING_CLI must name the command-line binary"
#endif

using namespace isingring;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int count_near_zero(const RVector& e, double tol) {
    int n = 0;
    for (double v : e) n += std::abs(v) < tol;
    return n;
}

// ---------------------------------------------------------------------------

Outcome three_qubit_closed_forms() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (double l : linspace(0.0, 5.0, 50)) {
        const double a = std::sqrt(1 + l + l * l), b = std::sqrt(1 - l + l * l);
        std::vector<double> closed = {l + 1, l + 1, l - 1, l - 1, 1 - l - 2 * a, 1 - l + 2 * a, -1 - l - 2 * b, -1 - l + 2 * b};
        std::sort(closed.begin(), closed.end());
        const RVector e = ising_spectrum({3, l, 1.0});
        for (int k = 0; k < 8; ++k) worst = std::max(worst, std::abs(e[k] - closed[static_cast<std::size_t>(k)]));
    }
    const double t = seconds_since(start);
    return {worst < 1e-10 && t < 1.0, "max deviation " + num(worst) + ", runtime " + num(t) + " s"};
}

Outcome oracle_equivalence() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (int n = 2; n <= 10; ++n)
        for (double l : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            const auto ff = assemble_spectrum(n, l);
            const RVector dense = ising_spectrum({n, l, 1.0});
            for (std::size_t k = 0; k < ff.size(); ++k)
                worst = std::max(worst, std::abs(ff[k] - dense[static_cast<Eigen::Index>(k)]));
        }
    const double t = seconds_since(start);
    return {worst < 1e-8 && t < 120.0, "max deviation " + num(worst) + ", runtime " + num(t) + " s"};
}

Outcome level_crossing() {
    const int three = count_near_zero(ising_spectrum({3, 1.0, 1.0}), 1e-9);
    bool ok = three == 3;
    std::string detail = "N=3 zeros " + std::to_string(three);
    for (int n : {5, 7, 9}) {
        const int zeros = count_near_zero(ising_spectrum({n, 1.0, 1.0}), 1e-9);
        const int need = (1 << ((n - 1) / 2)) + 1;
        ok = ok && zeros >= need;
        detail += ", N=" + std::to_string(n) + " zeros " + std::to_string(zeros) + " (need " + std::to_string(need) + ")";
    }
    return {ok, detail};
}

Outcome xstate_zero_energy() {
    double worst = 0.0;
    for (int n : {3, 5, 7, 9, 11}) worst = std::max(worst, apply_hamiltonian({n, 1.0, 1.0}, xstate(n)).norm());
    return {worst < 1e-9, "max residual " + num(worst)};
}

Outcome block_marginals() {
    double dev = 0.0, ent = 0.0;
    int blocks = 0;
    for (int n : {5, 7, 9}) {
        const StateVector x = xstate(n);
        const auto ring = RingGeometry::odd(n);
        for (int k = 1; k <= ring.half; ++k)
            for (const auto& block : ring.contiguous_blocks(k)) {
                ++blocks;
                dev = std::max(dev, verify_block_mixedness(x, block));
                ent = std::max(ent, std::abs(von_neumann_entropy(partial_trace(x, block)) - k * std::log(2.0)));
            }
    }
    return {dev < 1e-10 && ent < 1e-9,
            std::to_string(blocks) + " blocks, max deviation " + num(dev) + ", max entropy error " + num(ent)};
}

Outcome alpha_family_and_bell() {
    double gram = 0.0, loss = 0.0;
    for (int n : {3, 5, 7}) {
        std::vector<int> region;
        for (int p = 1; p <= (n - 1) / 2; ++p) region.push_back(p);
        gram = std::max(gram, alpha_family(n, region).gram_deviation());
        loss = std::max(loss, 1.0 - extract_bell_pairs(n, region).fidelity);
    }
    return {gram < 1e-9 && loss <= 1e-9, "max Gram deviation " + num(gram) + ", max 1 - fidelity " + num(loss)};
}

Outcome ghz_limit() {
    double worst_c = 0.0, worst_t = 1.0, worst_f = 0.0;
    for (int n : {3, 5, 7}) {
        const StateVector g = ghz_limit_state(n);
        for (int i = 1; i <= n; ++i) {
            worst_t = std::min(worst_t, tangle(g, i));
            for (int j = i + 1; j <= n; ++j) worst_c = std::max(worst_c, pair_concurrence(g, i, j));
        }
        worst_f = std::max(worst_f, std::abs(ghz_equivalence_check(g) - 1.0));
    }
    return {worst_c < 1e-10 && worst_t > 1 - 1e-10 && worst_f < 1e-10,
            "max concurrence " + num(worst_c) + ", min tangle " + num(worst_t) + ", max |F - 1| " + num(worst_f)};
}

Outcome fig2_shape() {
    const auto grid = linspace(0.0, 10.0, 300);
    std::vector<double> c, t;
    for (double l : grid) {
        const StateVector g = ground_state({3, l, 1.0});
        c.push_back(pair_concurrence(g, 1, 2));
        t.push_back(tangle(g, 1));
    }
    const auto peak = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
    const StateVector far = ground_state({3, 50.0, 1.0});
    const double c50 = pair_concurrence(far, 1, 2);
    const double tau50 = three_tangle(far);
    double worst_drop = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) worst_drop = std::max(worst_drop, t[k - 1] - t[k]);
    const bool ok = c[0] < 1e-10 && grid[peak] >= 0.7 && grid[peak] <= 1.5 && c50 < 0.05 && worst_drop <= 1e-9 &&
                    tau50 > 0.95;
    return {ok, "C(0) " + num(c[0]) + ", argmax " + num(grid[peak]) + ", C(50) " + num(c50) + ", largest tangle drop " +
                    num(worst_drop) + ", three-tangle(50) " + num(tau50)};
}

Outcome fig3_properties() {
    const EigenSystem es = ising_eigensystem({3, 1.0, 1.0});
    double previous = 2.0;
    bool monotone = true;
    std::string series;
    for (double temp : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        const double c = pair_concurrence(gibbs_state(es, 3, temp), 1, 2);
        monotone = monotone && c <= previous;
        previous = c;
        series += num(c) + " ";
    }
    const double hot = pair_concurrence(gibbs_state(es, 3, 1e6), 1, 2);

    double asym = 0.0;
    std::vector<double> temps = {0.1, 0.5, 1.0, 2.0, 4.0, 1e6};
    for (double temp : linspace(0.01, 3.0, 20)) temps.push_back(temp);
    for (double l : linspace(0.0, 3.0, 20)) {
        const EigenSystem sys = ising_eigensystem({3, l, 1.0});
        for (double temp : temps) {
            const DensityMatrix rho = gibbs_state(sys, 3, temp);
            const double c12 = pair_concurrence(rho, 1, 2);
            asym = std::max({asym, std::abs(pair_concurrence(rho, 1, 3) - c12), std::abs(pair_concurrence(rho, 2, 3) - c12)});
        }
    }
    return {monotone && hot < 1e-5 && asym < 1e-9,
            "C(T) " + series + "| C(1e6) " + num(hot) + ", max pair asymmetry " + num(asym)};
}

Outcome fig6_properties() {
    const StateVector g = ground_state({7, 1.0, 1.0});
    const double c1 = pair_concurrence(g, 1, 2), c2 = pair_concurrence(g, 1, 3), c3 = pair_concurrence(g, 1, 4);
    const auto grid = linspace(0.0, 5.0, 200);
    std::vector<double> d1, d2;
    for (double l : grid) {
        const StateVector s = ground_state({7, l, 1.0});
        d1.push_back(pair_concurrence(s, 1, 2));
        d2.push_back(pair_concurrence(s, 1, 3));
    }
    const double peak1 = grid[static_cast<std::size_t>(std::max_element(d1.begin(), d1.end()) - d1.begin())];
    const double peak2 = grid[static_cast<std::size_t>(std::max_element(d2.begin(), d2.end()) - d2.begin())];
    return {c1 > c2 && c2 > c3 && peak2 > peak1,
            "C(d=1,2,3) " + num(c1) + " " + num(c2) + " " + num(c3) + ", argmax d=1 " + num(peak1) + ", d=2 " + num(peak2)};
}

Outcome monogamy() {
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> g;
    double worst = 1.0;
    for (int t = 0; t < 1000; ++t) {
        CVector v(8);
        for (int k = 0; k < 8; ++k) v[k] = Complex(g(rng), g(rng));
        const StateVector psi(3, v / v.norm());
        for (int anchor = 1; anchor <= 3; ++anchor) worst = std::min(worst, three_tangle(psi, anchor));
    }
    return {worst >= -1e-9, "smallest residual tangle " + num(worst)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "isingring_acceptance";
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"spectrum", "spectrum -n 4 --lambda-max 3 --lambda-steps 31 --crossings"},
        {"spectrum_json", "spectrum -n 3 --lambda-steps 11 --format json"},
        {"ground", "ground-entanglement -n 5 --lambda-max 4 --lambda-steps 21"},
        {"distances", "ground-entanglement -n 7 --distances --lambda-max 3 --lambda-steps 7"},
        {"tangle", "ground-entanglement -n 3 --measure tangle --lambda-steps 9"},
        {"three_tangle", "ground-entanglement -n 3 --measure three-tangle --lambda-steps 9"},
        {"thermal", "thermal -n 3 --lambda-steps 10 --temp-min 0 --temp-max 3 --temp-steps 10"},
        {"xstate", "xstate-verify -n 7"},
        {"crosscheck", "crosscheck --n-min 2 --n-max 8 --lambdas 0,0.5,1,2"},
    };
    std::string failures;
    for (const auto& [name, args] : commands) {
        std::string first;
        for (int run = 0; run < 2; ++run) {
            const fs::path out = dir / (name + "_" + std::to_string(run));
            const std::string cmd = std::string("\"") + ISINGRING_CLI + "\" " + args + " --out \"" + out.string() + "\"";
            if (std::system(cmd.c_str()) != 0) {
                failures += name + "(exit) ";
                break;
            }
            const std::string content = slurp(out);
            if (run == 0) {
                first = content;
            } else if (content != first || content.empty()) {
                failures += name + " ";
            }
        }
    }
    return {failures.empty(), failures.empty() ? std::to_string(commands.size()) + " commands byte-identical"
                                               : "mismatch: " + failures};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"three-qubit closed-form spectrum", three_qubit_closed_forms},
        {"free-fermion / dense oracle equivalence", oracle_equivalence},
        {"zero-energy level crossing at lambda = 1", level_crossing},
        {"X-state zero energy", xstate_zero_energy},
        {"X-state block marginals and entropy", block_marginals},
        {"alpha family Gram matrix and Bell extraction", alpha_family_and_bell},
        {"GHZ limit", ghz_limit},
        {"ground-state entanglement shape (N = 3)", fig2_shape},
        {"thermal concurrence properties", fig3_properties},
        {"distance-resolved concurrence (N = 7)", fig6_properties},
        {"monogamy of 1000 random states", monogamy},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.passed;
        std::printf("%s  %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
