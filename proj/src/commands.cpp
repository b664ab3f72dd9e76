#include "isingring/commands.hpp"

#include "isingring/entanglement.hpp"
#include "isingring/errors.hpp"
#include "isingring/freefermion.hpp"
#include "isingring/hamiltonian.hpp"
#include "isingring/specialstates.hpp"
#include "isingring/sweep.hpp"
#include "isingring/thermal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#ifndef ISINGRING_VERSION
#define ISINGRING_VERSION "0.0.0"
#endif

namespace isingring {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;

struct GridFlags {
    double min = 0.0;
    double max = 3.0;
    int steps = 31;

    std::vector<double> values() const { return linspace(min, max, steps); }
    std::string describe() const { return format_number(min) + ":" + format_number(max) + ":" + std::to_string(steps); }
};

struct CommonFlags {
    int qubits = 3;
    std::string out;
    std::string format = "csv";
    double tolerance = 1e-9;
    int threads = 0;
    std::string command_line;
};

void require_dense(int n, int limit = kMaxDenseQubits) {
    if (n < 2) throw InvalidInput("--qubits must be at least 2");
    if (n > limit) {
        throw ResourceLimit("N = " + std::to_string(n) + " exceeds the dense limit of " + std::to_string(limit) +
                            " qubits");
    }
}

std::pair<int, int> parse_pair(const std::string& text, int n) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InvalidInput("--pair expects i,j");
    int i = 0, j = 0;
    try {
        std::size_t used = 0;
        i = std::stoi(text.substr(0, comma), &used);
        if (used != comma) throw InvalidInput("bad --pair");
        const std::string rest = text.substr(comma + 1);
        j = std::stoi(rest, &used);
        if (used != rest.size()) throw InvalidInput("bad --pair");
    } catch (const std::logic_error&) {
        throw InvalidInput("--pair expects two integers i,j, got '" + text + "'");
    }
    if (i < 1 || j < 1 || i > n || j > n || i == j) throw InvalidInput("--pair must name two distinct qubits in 1..N");
    return {i, j};
}

void emit(const CommonFlags& flags, const std::string& text) {
    if (flags.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(flags.out, std::ios::binary | std::ios::trunc);
    if (!file) throw InvalidInput("cannot open output file '" + flags.out + "'");
    file << text;
    if (!file) throw InvalidInput("failed writing '" + flags.out + "'");
}

void emit(const CommonFlags& flags, const SweepResult& result) {
    std::ostringstream text;
    if (flags.format == "json") {
        write_json(text, result);
    } else {
        write_csv(text, result);
    }
    emit(flags, text.str());
}

void base_metadata(SweepResult& r, const CommonFlags& flags, const std::string& command) {
    r.add_metadata("tool", std::string("isingring ") + ISINGRING_VERSION);
    r.add_metadata("command", flags.command_line);
    r.add_metadata("subcommand", command);
}

// Command line as recorded in output metadata, without --out and --threads.
std::string recorded_command_line(int argc, char** argv) {
    std::string line = "isingring";
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--out" || arg == "-o" || arg == "--threads") {
            ++k;
            continue;
        }
        if (arg.rfind("--out=", 0) == 0 || arg.rfind("--threads=", 0) == 0) continue;
        line += ' ';
        line += arg;
    }
    return line;
}

// ---- spectrum ----------------------------------------------------------------

int cmd_spectrum(const CommonFlags& flags, const GridFlags& lambda, bool crossings) {
    require_dense(flags.qubits);
    const auto grid = lambda.values();
    const SpectrumTable table = spectrum_sweep(flags.qubits, grid, {crossings, flags.threads});

    SweepResult r;
    base_metadata(r, flags, "spectrum");
    r.add_metadata("N", std::to_string(flags.qubits));
    r.add_metadata("lambda_grid", lambda.describe());
    if (crossings) {
        r.add_metadata("crossings", std::to_string(table.crossings.size()));
        for (const auto& c : table.crossings) {
            r.add_metadata("crossing", format_number(c.lambda) + " " + std::to_string(c.lower_level) + " " +
                                           std::to_string(c.upper_level));
        }
    }
    r.columns = {"lambda", "level", "energy"};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        for (std::size_t l = 0; l < table.levels[k].size(); ++l) {
            r.rows.push_back({grid[k], static_cast<double>(l), table.levels[k][l]});
        }
    }
    emit(flags, r);
    return kExitOk;
}

// ---- ground-entanglement -----------------------------------------------------

int cmd_ground_entanglement(const CommonFlags& flags, const GridFlags& lambda, const std::string& measure,
                            const std::vector<std::string>& pair_texts, bool distances) {
    const int n = flags.qubits;
    require_dense(n);
    if (measure == "three-tangle" && n != 3) throw InvalidInput("three-tangle is defined for N = 3 only");
    const auto grid = lambda.values();

    std::vector<std::pair<int, int>> pairs;
    if (distances) {
        for (int d = 1; d <= n / 2; ++d) pairs.emplace_back(1, 1 + d);
    } else if (!pair_texts.empty()) {
        for (const auto& t : pair_texts) pairs.push_back(parse_pair(t, n));
    } else {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    }

    SweepResult r;
    base_metadata(r, flags, "ground-entanglement");
    r.add_metadata("N", std::to_string(n));
    r.add_metadata("lambda_grid", lambda.describe());
    r.add_metadata("measure", measure);

    std::vector<std::vector<std::vector<double>>> blocks(grid.size());
    parallel_for(grid.size(), flags.threads, [&](std::size_t k) {
        const double l = grid[k];
        const StateVector psi = ground_state({n, l, 1.0});
        auto& rows = blocks[k];
        if (measure == "concurrence") {
            for (const auto& [i, j] : pairs) {
                const double c = MeasureValue::checked(MeasureKind::concurrence, pair_concurrence(psi, i, j)).value;
                rows.push_back({l, static_cast<double>(i), static_cast<double>(j), c});
            }
        } else if (measure == "tangle") {
            for (int q = 1; q <= n; ++q) {
                rows.push_back({l, static_cast<double>(q), MeasureValue::checked(MeasureKind::tangle, tangle(psi, q)).value});
            }
        } else {
            const double t = std::clamp(three_tangle(psi), 0.0, 1.0);
            rows.push_back({l, MeasureValue::checked(MeasureKind::three_tangle, t).value});
        }
    });

    if (measure == "concurrence") {
        r.columns = {"lambda", "i", "j", "concurrence"};
    } else if (measure == "tangle") {
        r.columns = {"lambda", "qubit", "tangle"};
    } else {
        r.columns = {"lambda", "three_tangle"};
    }
    for (auto& rows : blocks)
        for (auto& row : rows) r.rows.push_back(std::move(row));
    emit(flags, r);
    return kExitOk;
}

// ---- thermal -----------------------------------------------------------------

int cmd_thermal(const CommonFlags& flags, const GridFlags& lambda, const GridFlags& temperature,
                const std::string& pair_text) {
    require_dense(flags.qubits);
    const auto pair = parse_pair(pair_text, flags.qubits);
    if (temperature.min < 0.0) throw InvalidInput("temperatures must be non-negative");
    const auto lgrid = lambda.values();
    const auto tgrid = temperature.values();

    SweepResult r = thermal_sweep(flags.qubits, lgrid, tgrid, pair, flags.threads);
    SweepResult out;
    base_metadata(out, flags, "thermal");
    out.add_metadata("N", std::to_string(flags.qubits));
    out.add_metadata("lambda_grid", lambda.describe());
    out.add_metadata("temperature_grid", temperature.describe());
    out.add_metadata("pair", std::to_string(pair.first) + "," + std::to_string(pair.second));
    out.columns = std::move(r.columns);
    out.rows = std::move(r.rows);
    emit(flags, out);
    return kExitOk;
}

// ---- xstate-verify -----------------------------------------------------------

int cmd_xstate_verify(const CommonFlags& flags) {
    const int n = flags.qubits;
    if (n < 3 || n % 2 == 0) throw InvalidInput("xstate-verify needs an odd N >= 3, got " + std::to_string(n));
    require_dense(n, 13);
    const int half = (n - 1) / 2;

    const StateVector x = xstate(n);
    const double residual = apply_hamiltonian({n, 1.0, 1.0}, x).norm();
    bool passed = residual <= flags.tolerance;

    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    double worst_block = 0.0;
    const RingGeometry ring = RingGeometry::odd(n);
    for (int k = 1; k <= half; ++k) {
        for (const auto& block : ring.contiguous_blocks(k)) {
            const double dev = verify_block_mixedness(x, block);
            worst_block = std::max(worst_block, dev);
            blocks.push_back({{"start", block.front()}, {"size", k}, {"deviation", dev}});
        }
    }
    passed = passed && worst_block <= flags.tolerance;

    std::vector<int> region(static_cast<std::size_t>(half));
    for (int k = 0; k < half; ++k) region[static_cast<std::size_t>(k)] = k + 1;
    const double gram = alpha_family(n, region).gram_deviation();
    passed = passed && gram <= flags.tolerance;
    const double bell = extract_bell_pairs(n, region).fidelity;
    passed = passed && 1.0 - bell <= flags.tolerance;

    nlohmann::ordered_json report;
    report["tool"] = std::string("isingring ") + ISINGRING_VERSION;
    report["command"] = flags.command_line;
    report["N"] = n;
    report["n"] = half;
    report["tolerance"] = flags.tolerance;
    report["residual_zero_energy"] = residual;
    report["block_deviations"] = std::move(blocks);
    report["gram_deviation"] = gram;
    report["bell_fidelity"] = bell;
    report["passed"] = passed;
    emit(flags, report.dump(2) + "\n");
    if (!passed) std::cerr << "xstate-verify: tolerance " << flags.tolerance << " violated\n";
    return passed ? kExitOk : kExitVerification;
}

// ---- crosscheck --------------------------------------------------------------

std::vector<double> three_qubit_closed_form(double l) {
    const double a = std::sqrt(1.0 + l + l * l);
    const double b = std::sqrt(1.0 - l + l * l);
    std::vector<double> e = {l + 1, l + 1, l - 1, l - 1, 1 - l - 2 * a, 1 - l + 2 * a, -1 - l - 2 * b, -1 - l + 2 * b};
    std::sort(e.begin(), e.end());
    return e;
}

int cmd_crosscheck(const CommonFlags& flags, int n_min, int n_max, const std::vector<double>& lambdas,
                   double tolerance) {
    if (n_min < 2 || n_max < n_min) throw InvalidInput("crosscheck needs 2 <= --n-min <= --n-max");
    require_dense(n_max, 12);
    if (lambdas.empty()) throw InvalidInput("crosscheck needs at least one lambda");
    for (double l : lambdas) {
        if (!std::isfinite(l)) throw InvalidInput("lambda values must be finite");
    }

    struct Task {
        int n;
        double lambda;
    };
    std::vector<Task> tasks;
    for (int n = n_min; n <= n_max; ++n)
        for (double l : lambdas) tasks.push_back({n, l});

    std::vector<std::vector<double>> rows(tasks.size());
    parallel_for(tasks.size(), flags.threads, [&](std::size_t k) {
        const auto [n, l] = tasks[k];
        const RVector dense = ising_spectrum({n, l, 1.0});
        const std::vector<double> ff = assemble_spectrum(n, l);
        double dev = 0.0;
        for (std::size_t s = 0; s < ff.size(); ++s) dev = std::max(dev, std::abs(dense[static_cast<Eigen::Index>(s)] - ff[s]));
        double reference = -1.0;
        if (n == 3) {
            const auto closed = three_qubit_closed_form(l);
            reference = 0.0;
            for (std::size_t s = 0; s < closed.size(); ++s) {
                reference = std::max(reference, std::abs(dense[static_cast<Eigen::Index>(s)] - closed[s]));
            }
        } else if (n == 5) {
            const double pi = std::numbers::pi;
            // eta_0^+ eta_{2pi/5}^+ eta_{4pi/5}^+ |0>, with eta_0^+|0> at -2 lambda + 1 in the q = 0 block.
            const double example = 1.0 - 2.0 * l - 2.0 * l * std::cos(2 * pi / 5) - 2.0 * l * std::cos(4 * pi / 5);
            reference = (dense.array() - example).abs().minCoeff();
        }
        rows[k] = {static_cast<double>(n), l, dev, reference};
    });

    bool passed = true;
    for (const auto& row : rows) passed = passed && row[2] <= tolerance && row[3] <= tolerance;

    SweepResult r;
    base_metadata(r, flags, "crosscheck");
    r.add_metadata("N_range", std::to_string(n_min) + ":" + std::to_string(n_max));
    std::string lambda_list;
    for (double l : lambdas) lambda_list += (lambda_list.empty() ? "" : ",") + format_number(l);
    r.add_metadata("lambdas", lambda_list);
    r.add_metadata("tolerance", format_number(tolerance));
    r.add_metadata("passed", passed ? "true" : "false");
    r.columns = {"N", "lambda", "max_deviation", "reference_deviation"};
    r.rows = std::move(rows);
    emit(flags, r);
    if (!passed) std::cerr << "crosscheck: deviation above " << tolerance << "\n";
    return passed ? kExitOk : kExitVerification;
}

void add_common(CLI::App* sub, CommonFlags& flags, bool with_format = true) {
    sub->add_option("-n,--qubits", flags.qubits, "Number of qubits N")->capture_default_str();
    sub->add_option("-o,--out", flags.out, "Output file (default: standard output)");
    if (with_format) {
        sub->add_option("--format", flags.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    }
    sub->add_option("--threads", flags.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
}

void add_lambda_grid(CLI::App* sub, GridFlags& grid) {
    sub->add_option("--lambda-min", grid.min, "Smallest lambda")->capture_default_str();
    sub->add_option("--lambda-max", grid.max, "Largest lambda")->capture_default_str();
    sub->add_option("--lambda-steps", grid.steps, "Number of lambda grid points")->capture_default_str();
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Exact spectra, entanglement and special states of the transverse-field Ising ring"};
    app.set_version_flag("--version", std::string(ISINGRING_VERSION));
    app.require_subcommand(1);

    CommonFlags flags;
    flags.command_line = recorded_command_line(argc, argv);
    GridFlags lambda;
    GridFlags temperature{0.1, 4.0, 40};
    bool crossings = false;
    std::string measure = "concurrence";
    std::vector<std::string> pairs;
    bool distances = false;
    std::string pair = "1,2";
    int n_min = 2, n_max = 10;
    std::vector<double> lambdas = {0.0, 0.5, 1.0, 2.0, 5.0};
    double crosscheck_tolerance = 1e-8;

    auto* spectrum = app.add_subcommand("spectrum", "Ascending energy levels over a lambda grid");
    add_common(spectrum, flags);
    add_lambda_grid(spectrum, lambda);
    spectrum->add_flag("--crossings", crossings, "Report level crossings as metadata lines");

    auto* ground = app.add_subcommand("ground-entanglement", "Ground-state entanglement over a lambda grid");
    add_common(ground, flags);
    add_lambda_grid(ground, lambda);
    ground->add_option("--measure", measure, "Entanglement measure")
        ->check(CLI::IsMember({"concurrence", "tangle", "three-tangle"}))
        ->capture_default_str();
    ground->add_option("--pair", pairs, "Qubit pair i,j (repeatable; default: all pairs)");
    ground->add_flag("--distances", distances, "Pairs (1, 1+d) for d = 1..N/2");

    auto* thermal = app.add_subcommand("thermal", "Pair concurrence of the Gibbs state over lambda and temperature");
    add_common(thermal, flags);
    add_lambda_grid(thermal, lambda);
    thermal->add_option("--temp-min", temperature.min, "Smallest temperature")->capture_default_str();
    thermal->add_option("--temp-max", temperature.max, "Largest temperature")->capture_default_str();
    thermal->add_option("--temp-steps", temperature.steps, "Number of temperature grid points")->capture_default_str();
    thermal->add_option("--pair", pair, "Qubit pair i,j")->capture_default_str();

    auto* xverify = app.add_subcommand("xstate-verify", "Check the zero-energy X-state and its Bell-pair extraction");
    add_common(xverify, flags, false);
    xverify->add_option("--tolerance", flags.tolerance, "Largest accepted deviation")->capture_default_str();

    auto* cross = app.add_subcommand("crosscheck", "Compare dense and free-fermion spectra");
    add_common(cross, flags);
    cross->add_option("--n-min", n_min, "Smallest N")->capture_default_str();
    cross->add_option("--n-max", n_max, "Largest N")->capture_default_str();
    cross->add_option("--lambdas", lambdas, "Comma-separated lambda values")->delimiter(',');
    cross->add_option("--tolerance", crosscheck_tolerance, "Largest accepted deviation")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*spectrum) return cmd_spectrum(flags, lambda, crossings);
        if (*ground) return cmd_ground_entanglement(flags, lambda, measure, pairs, distances);
        if (*thermal) return cmd_thermal(flags, lambda, temperature, pair);
        if (*xverify) return cmd_xstate_verify(flags);
        if (*cross) return cmd_crosscheck(flags, n_min, n_max, lambdas, crosscheck_tolerance);
    } catch (const InvalidInput& e) {
        std::cerr << "error: invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ResourceLimit& e) {
        std::cerr << "error: resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitInvalid;
}

}  // namespace isingring
