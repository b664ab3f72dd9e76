#include "isingring/hamiltonian.hpp"

#include "isingring/errors.hpp"
#include "isingring/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace isingring {

namespace {

void require_dense_size(int num_qubits) {
    if (num_qubits > kMaxDenseQubits) {
        throw ResourceLimit("dense Ising ring limited to N <= " + std::to_string(kMaxDenseQubits) +
                            ", got " + std::to_string(num_qubits));
    }
}

// Bond masks (n, n+1 mod N); N = 2 yields the same bond twice.
std::vector<std::size_t> bond_masks(int n) {
    std::vector<std::size_t> out;
    for (int site = 1; site <= n; ++site) {
        out.push_back(qubit_mask(site, n) | qubit_mask(site % n + 1, n));
    }
    return out;
}

double field_energy(std::size_t index, int n) { return 2.0 * hamming_weight(index) - n; }

struct Sector {
    std::vector<std::size_t> states;   // full-register indices with the requested parity
    std::vector<std::size_t> position; // full index -> position in `states` (unused for the other parity)
};

Sector make_sector(int n, int parity) {
    Sector s;
    const std::size_t d = dim_of(n);
    s.position.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        const int sign = (hamming_weight(i) % 2 == 0) ? 1 : -1;
        if (sign == parity) {
            s.position[i] = s.states.size();
            s.states.push_back(i);
        }
    }
    return s;
}

CMatrix sector_matrix(const IsingParams& p, const Sector& s) {
    const int n = p.num_qubits;
    const auto m = static_cast<Eigen::Index>(s.states.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    const auto bonds = bond_masks(n);
    for (Eigen::Index c = 0; c < m; ++c) {
        const std::size_t i = s.states[static_cast<std::size_t>(c)];
        h(c, c) += p.energy_scale * field_energy(i, n);
        for (auto b : bonds) {
            h(static_cast<Eigen::Index>(s.position[i ^ b]), c) += -p.lambda * p.energy_scale;
        }
    }
    return h.cast<Complex>();
}

}  // namespace

void IsingParams::validate() const {
    if (num_qubits < 2) throw InvalidInput("Ising ring needs N >= 2, got " + std::to_string(num_qubits));
    if (!std::isfinite(lambda)) throw InvalidInput("lambda must be finite");
    if (!(energy_scale > 0.0) || !std::isfinite(energy_scale)) throw InvalidInput("energy scale must be positive");
}

CMatrix build_hamiltonian(const IsingParams& p) {
    p.validate();
    require_dense_size(p.num_qubits);
    const int n = p.num_qubits;
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    const auto bonds = bond_masks(n);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        h(i, i) += p.energy_scale * field_energy(ui, n);
        for (auto b : bonds) h(static_cast<Eigen::Index>(ui ^ b), i) += -p.lambda * p.energy_scale;
    }
    return h.cast<Complex>();
}

StateVector apply_hamiltonian(const IsingParams& p, const StateVector& psi) {
    p.validate();
    if (psi.num_qubits() != p.num_qubits) throw InvalidInput("state and Hamiltonian sizes differ");
    const int n = p.num_qubits;
    const auto bonds = bond_masks(n);
    CVector out = CVector::Zero(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const Complex a = psi[i];
        if (a == Complex(0.0)) continue;
        out[static_cast<Eigen::Index>(i)] += p.energy_scale * field_energy(i, n) * a;
        for (auto b : bonds) out[static_cast<Eigen::Index>(i ^ b)] += -p.lambda * p.energy_scale * a;
    }
    return StateVector(n, std::move(out));
}

std::vector<int> parity_operator(int num_qubits) {
    if (num_qubits < 2) throw InvalidInput("parity operator needs N >= 2");
    require_dense_size(num_qubits);
    std::vector<int> diag(dim_of(num_qubits));
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = (hamming_weight(i) % 2 == 0) ? 1 : -1;
    return diag;
}

QubitPermutation::QubitPermutation(int num_qubits, std::vector<int> targets) : targets_(std::move(targets)) {
    if (num_qubits < 1 || static_cast<int>(targets_.size()) != num_qubits) {
        throw InvalidInput("qubit permutation needs one target per qubit");
    }
    std::vector<int> sorted = targets_;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < num_qubits; ++k) {
        if (sorted[static_cast<std::size_t>(k)] != k + 1) throw InvalidInput("targets are not a permutation of 1..N");
    }
}

std::size_t QubitPermutation::map_index(std::size_t index) const {
    const int n = num_qubits();
    std::size_t out = 0;
    for (int p = 1; p <= n; ++p) {
        if (index & qubit_mask(p, n)) out |= qubit_mask(target(p), n);
    }
    return out;
}

StateVector QubitPermutation::apply(const StateVector& psi) const {
    if (psi.num_qubits() != num_qubits()) throw InvalidInput("permutation and state sizes differ");
    CVector out(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) out[static_cast<Eigen::Index>(map_index(i))] = psi[i];
    return StateVector(psi.num_qubits(), std::move(out));
}

CMatrix QubitPermutation::matrix() const {
    require_dense_size(num_qubits());
    const std::size_t d = dim_of(num_qubits());
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) m(static_cast<Eigen::Index>(map_index(i)), static_cast<Eigen::Index>(i)) = 1.0;
    return m;
}

QubitPermutation translation_operator(int num_qubits) {
    if (num_qubits < 2) throw InvalidInput("translation needs N >= 2");
    std::vector<int> t(static_cast<std::size_t>(num_qubits));
    for (int p = 1; p <= num_qubits; ++p) t[static_cast<std::size_t>(p - 1)] = p % num_qubits + 1;
    return QubitPermutation(num_qubits, std::move(t));
}

QubitPermutation inversion_operator(int num_qubits) {
    if (num_qubits < 2) throw InvalidInput("inversion needs N >= 2");
    std::vector<int> t(static_cast<std::size_t>(num_qubits));
    for (int p = 1; p <= num_qubits; ++p) t[static_cast<std::size_t>(p - 1)] = num_qubits - p + 1;
    return QubitPermutation(num_qubits, std::move(t));
}

SectorEigenSystem sector_eigensystem(const IsingParams& p, int parity) {
    p.validate();
    require_dense_size(p.num_qubits);
    if (parity != 1 && parity != -1) throw InvalidInput("parity must be +1 or -1");
    const Sector s = make_sector(p.num_qubits, parity);
    EigenSystem local = hermitian_eig(sector_matrix(p, s));
    const auto d = static_cast<Eigen::Index>(dim_of(p.num_qubits));
    CMatrix full = CMatrix::Zero(d, local.eigenvectors.cols());
    for (std::size_t r = 0; r < s.states.size(); ++r) {
        full.row(static_cast<Eigen::Index>(s.states[r])) = local.eigenvectors.row(static_cast<Eigen::Index>(r));
    }
    return {parity, {std::move(local.eigenvalues), std::move(full)}};
}

EigenSystem ising_eigensystem(const IsingParams& p) {
    const auto even = sector_eigensystem(p, 1);
    const auto odd = sector_eigensystem(p, -1);
    const Eigen::Index ne = even.system.eigenvalues.size();
    const Eigen::Index no = odd.system.eigenvalues.size();
    EigenSystem out{RVector(ne + no), CMatrix(even.system.eigenvectors.rows(), ne + no)};
    Eigen::Index a = 0, b = 0;
    for (Eigen::Index k = 0; k < ne + no; ++k) {
        const bool take_even = b >= no || (a < ne && even.system.eigenvalues[a] <= odd.system.eigenvalues[b]);
        if (take_even) {
            out.eigenvalues[k] = even.system.eigenvalues[a];
            out.eigenvectors.col(k) = even.system.eigenvectors.col(a++);
        } else {
            out.eigenvalues[k] = odd.system.eigenvalues[b];
            out.eigenvectors.col(k) = odd.system.eigenvectors.col(b++);
        }
    }
    return out;
}

RVector ising_spectrum(const IsingParams& p) {
    p.validate();
    require_dense_size(p.num_qubits);
    const RVector even = hermitian_eigenvalues(sector_matrix(p, make_sector(p.num_qubits, 1)));
    const RVector odd = hermitian_eigenvalues(sector_matrix(p, make_sector(p.num_qubits, -1)));
    RVector out(even.size() + odd.size());
    out << even, odd;
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Branch b of the previous grid point continues as level assignment[b].
std::vector<int> continue_branches(const CMatrix& previous, const CMatrix& current) {
    const Eigen::Index d = previous.cols();
    const Eigen::MatrixXd overlap = (previous.adjoint() * current).cwiseAbs2();
    std::vector<std::pair<double, Eigen::Index>> entries;
    entries.reserve(static_cast<std::size_t>(d * d));
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            if (overlap(i, j) > 1e-14) entries.emplace_back(overlap(i, j), i * d + j);
        }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<int> assignment(static_cast<std::size_t>(d), -1);
    std::vector<char> used(static_cast<std::size_t>(d), 0);
    for (const auto& [w, key] : entries) {
        const auto i = static_cast<std::size_t>(key / d);
        const auto j = static_cast<std::size_t>(key % d);
        if (assignment[i] >= 0 || used[j]) continue;
        assignment[i] = static_cast<int>(j);
        used[j] = 1;
    }
    // Whatever is left (numerically orthogonal leftovers) is paired in order.
    std::size_t next = 0;
    for (auto& a : assignment) {
        if (a >= 0) continue;
        while (used[next]) ++next;
        a = static_cast<int>(next);
        used[next] = 1;
    }
    return assignment;
}

struct PairState {
    signed char sign = 0;  // last significant sign of E_a - E_b
    double lambda = 0.0;   // where it was observed
    double diff = 0.0;
    int level_a = 0, level_b = 0;
    double touch_lambda = 0.0;  // last grid point where the two were degenerate
    bool touched = false;
};

}  // namespace

SpectrumTable spectrum_sweep(int num_qubits, std::span<const double> lambda_grid, SweepOptions options) {
    if (lambda_grid.empty()) throw InvalidInput("lambda grid is empty");
    for (std::size_t k = 1; k < lambda_grid.size(); ++k) {
        if (!(lambda_grid[k] > lambda_grid[k - 1])) throw InvalidInput("lambda grid must be strictly ascending");
    }
    IsingParams{num_qubits, lambda_grid.front(), 1.0}.validate();
    require_dense_size(num_qubits);

    SpectrumTable table;
    table.num_qubits = num_qubits;
    table.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
    table.levels.resize(lambda_grid.size());

    if (!options.detect_crossings) {
        parallel_for(lambda_grid.size(), options.threads, [&](std::size_t k) {
            const RVector e = ising_spectrum({num_qubits, lambda_grid[k], 1.0});
            table.levels[k].assign(e.begin(), e.end());
        });
        return table;
    }

    const auto d = static_cast<std::size_t>(dim_of(num_qubits));
    std::vector<int> branch_level(d);
    std::iota(branch_level.begin(), branch_level.end(), 0);
    std::vector<PairState> pairs(d * (d - 1) / 2);
    CMatrix previous;

    const std::size_t batch = std::max<std::size_t>(1, resolve_threads(options.threads));
    for (std::size_t start = 0; start < lambda_grid.size(); start += batch) {
        const std::size_t stop = std::min(lambda_grid.size(), start + batch);
        std::vector<EigenSystem> systems(stop - start);
        parallel_for(stop - start, options.threads, [&](std::size_t j) {
            systems[j] = ising_eigensystem({num_qubits, lambda_grid[start + j], 1.0});
        });
        for (std::size_t k = start; k < stop; ++k) {
            EigenSystem& sys = systems[k - start];
            table.levels[k].assign(sys.eigenvalues.begin(), sys.eigenvalues.end());
            if (k > 0) {
                const auto step = continue_branches(previous, sys.eigenvectors);
                for (auto& level : branch_level) level = step[static_cast<std::size_t>(level)];
            }
            std::size_t slot = 0;
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t b = a + 1; b < d; ++b, ++slot) {
                    PairState& st = pairs[slot];
                    const int la = branch_level[a], lb = branch_level[b];
                    const double diff = sys.eigenvalues[la] - sys.eigenvalues[lb];
                    if (std::abs(diff) <= kDegeneracyTolerance) {
                        st.touched = true;
                        st.touch_lambda = lambda_grid[k];
                        continue;
                    }
                    const signed char sign = diff > 0 ? 1 : -1;
                    if (st.sign != 0 && sign != st.sign) {
                        const double at = st.touched
                                              ? st.touch_lambda
                                              : st.lambda + (lambda_grid[k] - st.lambda) * st.diff / (st.diff - diff);
                        table.crossings.push_back({at, std::min(st.level_a, st.level_b), std::max(st.level_a, st.level_b)});
                    }
                    st = PairState{sign, lambda_grid[k], diff, la, lb, 0.0, false};
                }
            }
            previous = std::move(sys.eigenvectors);
        }
    }
    std::stable_sort(table.crossings.begin(), table.crossings.end(), [](const auto& x, const auto& y) {
        return x.lambda < y.lambda || (x.lambda == y.lambda && x.lower_level < y.lower_level);
    });
    return table;
}

StateVector ground_state(const IsingParams& p) {
    const auto even = sector_eigensystem(p, 1);
    const auto odd = sector_eigensystem(p, -1);
    const double e_min = std::min(even.system.eigenvalues[0], odd.system.eigenvalues[0]);
    auto count_near = [&](const RVector& e) {
        int c = 0;
        for (double v : e) c += (v - e_min <= kDegeneracyTolerance) ? 1 : 0;
        return c;
    };
    const int even_count = count_near(even.system.eigenvalues);
    const int odd_count = count_near(odd.system.eigenvalues);
    if (even_count + odd_count == 1) {
        const CMatrix& v = even_count == 1 ? even.system.eigenvectors : odd.system.eigenvectors;
        return StateVector(p.num_qubits, v.col(0));
    }
    if (even_count != 1) {
        throw ConventionViolation("lowest level of the N=" + std::to_string(p.num_qubits) +
                                  " ring is degenerate with " + std::to_string(even_count) +
                                  " even-parity members; no unique even ground state");
    }
    return StateVector(p.num_qubits, even.system.eigenvectors.col(0));
}

double ground_energy(const IsingParams& p) { return ising_spectrum(p)[0]; }

}  // namespace isingring
