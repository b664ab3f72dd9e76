#include "isingring/specialstates.hpp"

#include "isingring/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isingring {

namespace {

int half_of_odd_ring(int num_qubits) {
    if (num_qubits < 3 || num_qubits % 2 == 0) {
        throw InvalidInput("an odd ring with N >= 3 is required, got N = " + std::to_string(num_qubits));
    }
    return (num_qubits - 1) / 2;
}

std::vector<int> up_positions(std::size_t index, int num_qubits) {
    std::vector<int> out;
    for (int p = 1; p <= num_qubits; ++p) {
        if (index & qubit_mask(p, num_qubits)) out.push_back(p);
    }
    return out;
}

int internal_distance(const std::vector<int>& ups, int num_qubits) {
    int total = 0;
    for (std::size_t a = 0; a < ups.size(); ++a)
        for (std::size_t b = a + 1; b < ups.size(); ++b) total += ring_distance(ups[a], ups[b], num_qubits);
    return total;
}

int cross_distance(const std::vector<int>& left, const std::vector<int>& right, int num_qubits) {
    int total = 0;
    for (int a : left)
        for (int b : right) total += ring_distance(a, b, num_qubits);
    return total;
}

// Positions of `region` whose bit is set in the local configuration (region[0] most significant).
std::vector<int> selected(std::size_t config, const std::vector<int>& region) {
    std::vector<int> out;
    const std::size_t k = region.size();
    for (std::size_t b = 0; b < k; ++b) {
        if (config & (std::size_t{1} << (k - 1 - b))) out.push_back(region[b]);
    }
    return out;
}

std::size_t full_index(const std::vector<int>& ups, int num_qubits) {
    std::size_t index = 0;
    for (int p : ups) index |= qubit_mask(p, num_qubits);
    return index;
}

void require_region(std::span<const int> region, int num_qubits, int half) {
    if (static_cast<int>(region.size()) != half) {
        throw InvalidInput("region must hold n = " + std::to_string(half) + " positions, got " +
                           std::to_string(region.size()));
    }
    if (!is_contiguous_block(region, num_qubits)) throw InvalidInput("region is not contiguous on the ring");
}

}  // namespace

int ring_distance(int i, int j, int num_qubits) {
    if (num_qubits < 1 || i < 1 || j < 1 || i > num_qubits || j > num_qubits) {
        throw InvalidInput("ring positions must lie in 1..N");
    }
    const int d = std::abs(i - j);
    return std::min(d, num_qubits - d);
}

RingGeometry RingGeometry::odd(int num_qubits) { return {num_qubits, half_of_odd_ring(num_qubits)}; }

std::vector<std::vector<int>> RingGeometry::contiguous_blocks(int size) const {
    if (size < 1 || size > num_qubits) throw InvalidInput("block size must lie in 1..N");
    std::vector<std::vector<int>> out;
    for (int start = 1; start <= num_qubits; ++start) {
        std::vector<int> block;
        for (int k = 0; k < size; ++k) block.push_back((start - 1 + k) % num_qubits + 1);
        out.push_back(std::move(block));
    }
    return out;
}

bool is_contiguous_block(std::span<const int> block, int num_qubits) {
    if (block.empty() || static_cast<int>(block.size()) > num_qubits) return false;
    for (int p : block) {
        if (p < 1 || p > num_qubits) return false;
    }
    for (std::size_t k = 1; k < block.size(); ++k) {
        if (block[k] != block[k - 1] % num_qubits + 1) return false;
    }
    return true;
}

int pair_distance_sum(std::size_t index, int num_qubits) {
    return internal_distance(up_positions(index, num_qubits), num_qubits);
}

StateVector ghz_limit_state(int num_qubits) {
    if (num_qubits < 2) throw InvalidInput("GHZ-limit state needs N >= 2");
    const std::size_t d = dim_of(num_qubits);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d / 2));
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        if (hamming_weight(i) % 2 == 0) v[static_cast<Eigen::Index>(i)] = amp;
    }
    return StateVector(num_qubits, std::move(v));
}

StateVector standard_ghz_state(int num_qubits) {
    const std::size_t d = dim_of(num_qubits);
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
    v[0] = v[static_cast<Eigen::Index>(d - 1)] = 1.0 / std::sqrt(2.0);
    return StateVector(num_qubits, std::move(v));
}

double ghz_equivalence_check(const StateVector& psi) {
    StateVector rotated = psi.normalized();
    for (int p = 1; p <= psi.num_qubits(); ++p) rotated = apply_single_qubit(rotated, p, pauli::hadamard());
    return std::norm(inner(standard_ghz_state(psi.num_qubits()), rotated));
}

StateVector xstate(int num_qubits) {
    const int half = half_of_odd_ring(num_qubits);
    if (num_qubits > 30) throw ResourceLimit("X-state too large");
    const std::size_t d = dim_of(num_qubits);
    const double amp = std::ldexp(1.0, -half);
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        if (hamming_weight(i) % 2 != 0) continue;
        v[static_cast<Eigen::Index>(i)] = (pair_distance_sum(i, num_qubits) % 2 == 0) ? amp : -amp;
    }
    return StateVector(num_qubits, std::move(v));
}

double verify_block_mixedness(const StateVector& psi, std::span<const int> block) {
    const int half = half_of_odd_ring(psi.num_qubits());
    if (!is_contiguous_block(block, psi.num_qubits())) throw InvalidInput("block is not contiguous on the ring");
    if (static_cast<int>(block.size()) > half) {
        throw InvalidInput("block larger than n = " + std::to_string(half));
    }
    const DensityMatrix rho = partial_trace(psi, block);
    const auto k = static_cast<Eigen::Index>(rho.dim());
    return max_abs_diff(rho.elements(), CMatrix::Identity(k, k) / static_cast<double>(k));
}

CMatrix AlphaFamily::gram() const {
    const auto m = static_cast<Eigen::Index>(vectors.size());
    CMatrix g(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) g(a, b) = inner(vectors[static_cast<std::size_t>(a)], vectors[static_cast<std::size_t>(b)]);
    return g;
}

double AlphaFamily::gram_deviation() const {
    const auto m = static_cast<Eigen::Index>(vectors.size());
    return max_abs_diff(gram(), CMatrix::Identity(m, m) * std::ldexp(1.0, static_cast<int>(region.size())));
}

StateVector AlphaFamily::reassemble() const {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
    for (std::size_t c = 0; c < vectors.size(); ++c) {
        const auto in = selected(c, region);
        for (std::size_t r = 0; r < vectors[c].dim(); ++r) {
            auto ups = in;
            const auto out = selected(r, complement);
            ups.insert(ups.end(), out.begin(), out.end());
            v[static_cast<Eigen::Index>(full_index(ups, num_qubits))] += vectors[c][r];
        }
    }
    return StateVector(num_qubits, std::move(v));
}

AlphaFamily alpha_family(int num_qubits, std::span<const int> region) {
    const int half = half_of_odd_ring(num_qubits);
    require_region(region, num_qubits, half);
    AlphaFamily family;
    family.num_qubits = num_qubits;
    family.region.assign(region.begin(), region.end());
    for (int p = 1; p <= num_qubits; ++p) {
        if (std::find(region.begin(), region.end(), p) == region.end()) family.complement.push_back(p);
    }
    const std::size_t configs = std::size_t{1} << half;
    const std::size_t rest_dim = std::size_t{1} << (half + 1);
    for (std::size_t c = 0; c < configs; ++c) {
        const auto in = selected(c, family.region);
        const int d_in = internal_distance(in, num_qubits);
        CVector alpha = CVector::Zero(static_cast<Eigen::Index>(rest_dim));
        for (std::size_t r = 0; r < rest_dim; ++r) {
            const auto out = selected(r, family.complement);
            if ((in.size() + out.size()) % 2 != 0) continue;
            const int phase = d_in + internal_distance(out, num_qubits) + cross_distance(in, out, num_qubits);
            alpha[static_cast<Eigen::Index>(r)] = (phase % 2 == 0) ? 1.0 : -1.0;
        }
        family.vectors.emplace_back(half + 1, std::move(alpha));
    }
    return family;
}

CMatrix bob_extraction_unitary(int num_qubits, std::span<const int> region) {
    const AlphaFamily family = alpha_family(num_qubits, region);
    const double deviation = family.gram_deviation();
    if (deviation > 1e-9) {
        throw InternalConsistency("alpha family is not orthogonal (Gram deviation " + std::to_string(deviation) + ")");
    }
    const std::size_t half = family.region.size();
    const auto m = static_cast<Eigen::Index>(std::size_t{1} << (half + 1));

    CMatrix source(m, m);
    CMatrix target = CMatrix::Zero(m, m);
    Eigen::Index filled = 0;
    for (std::size_t c = 0; c < family.vectors.size(); ++c, ++filled) {
        source.col(filled) = family.vectors[c].amplitudes() / std::sqrt(static_cast<double>(1 << half));
        target(static_cast<Eigen::Index>(c << 1), filled) = 1.0;
    }
    // Gram-Schmidt (two passes) over computational basis vectors in index order.
    Eigen::Index spare = 0;
    for (Eigen::Index idx = 0; idx < m && filled < m; ++idx) {
        CVector v = CVector::Zero(m);
        v[idx] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            v -= source.leftCols(filled) * (source.leftCols(filled).adjoint() * v);
        }
        const double norm = v.norm();
        if (norm < 1e-3) continue;
        source.col(filled) = v / norm;
        target((spare << 1) | 1, filled) = 1.0;
        ++spare;
        ++filled;
    }
    if (filled != m) throw InternalConsistency("orthonormal completion of the alpha family failed");
    return target * source.adjoint();
}

StateVector bell_pair_target(int half) {
    if (half < 1) throw InvalidInput("need at least one Bell pair");
    const int n = 2 * half + 1;
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim_of(n)));
    const double amp = std::pow(2.0, -half / 2.0);
    for (std::size_t c = 0; c < (std::size_t{1} << half); ++c) {
        v[static_cast<Eigen::Index>((c << (half + 1)) | (c << 1))] = amp;
    }
    return StateVector(n, std::move(v));
}

BellExtraction extract_bell_pairs(int num_qubits, std::span<const int> region) {
    const AlphaFamily family = alpha_family(num_qubits, region);
    const CMatrix u = bob_extraction_unitary(num_qubits, region);
    const StateVector after = apply_operator(xstate(num_qubits), family.complement, u);
    std::vector<int> order = family.region;
    order.insert(order.end(), family.complement.begin(), family.complement.end());
    StateVector reordered = reorder_qubits(after, order);
    const double f = fidelity(reordered, bell_pair_target(static_cast<int>(family.region.size())));
    return {std::move(reordered), f};
}

std::vector<TrackPoint> xstate_track(int num_qubits, std::span<const double> lambda_grid) {
    half_of_odd_ring(num_qubits);
    std::size_t start = lambda_grid.size();
    for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
        if (k > 0 && !(lambda_grid[k] > lambda_grid[k - 1])) throw InvalidInput("lambda grid must be ascending");
        if (std::abs(lambda_grid[k] - 1.0) <= 1e-12) start = k;
    }
    if (start == lambda_grid.size()) throw InvalidInput("lambda grid must contain lambda = 1");

    // Even-parity sector only.
    auto step = [&](double lambda, const StateVector& previous) {
        const auto sector = sector_eigensystem({num_qubits, lambda, 1.0}, 1);
        const RVector& e = sector.system.eigenvalues;
        const CMatrix& v = sector.system.eigenvectors;
        const CVector projections = v.adjoint() * previous.amplitudes();
        double best = -1.0, second = -1.0;
        Eigen::Index best_begin = 0, best_end = 0;
        for (Eigen::Index begin = 0; begin < e.size();) {
            Eigen::Index end = begin + 1;
            while (end < e.size() && e[end] - e[end - 1] <= kDegeneracyTolerance) ++end;
            const double w = projections.segment(begin, end - begin).squaredNorm();
            if (w > best) {
                second = best;
                best = w;
                best_begin = begin;
                best_end = end;
            } else if (w > second) {
                second = w;
            }
            begin = end;
        }
        if (second >= best - 1e-6) {
            throw TrackingFailure("X-state continuation ambiguous at lambda = " + std::to_string(lambda) +
                                  ": overlaps " + std::to_string(best) + " and " + std::to_string(second));
        }
        const Eigen::Index width = best_end - best_begin;
        CVector state = v.middleCols(best_begin, width) * projections.segment(best_begin, width);
        state /= state.norm();
        const double energy = e.segment(best_begin, width).mean();
        return TrackPoint{lambda, energy, StateVector(num_qubits, std::move(state))};
    };

    std::vector<TrackPoint> out(lambda_grid.size(), TrackPoint{0.0, 0.0, StateVector::basis(1, 0)});
    out[start] = step(lambda_grid[start], xstate(num_qubits));
    for (std::size_t k = start + 1; k < lambda_grid.size(); ++k) out[k] = step(lambda_grid[k], out[k - 1].state);
    for (std::size_t k = start; k-- > 0;) out[k] = step(lambda_grid[k], out[k + 1].state);
    return out;
}

}  // namespace isingring
