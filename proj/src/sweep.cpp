#include "isingring/sweep.hpp"

#include "isingring/errors.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace isingring {

std::vector<double> linspace(double min, double max, int steps) {
    if (steps < 1) throw InvalidInput("grid needs at least one step");
    if (!std::isfinite(min) || !std::isfinite(max)) throw InvalidInput("grid bounds must be finite");
    if (steps > 1 && !(max > min)) throw InvalidInput("grid maximum must exceed its minimum");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid[0] = min;
        return grid;
    }
    const double h = (max - min) / (steps - 1);
    for (int k = 0; k < steps; ++k) grid[static_cast<std::size_t>(k)] = min + h * k;
    grid.back() = max;
    return grid;
}

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& out, const SweepResult& result) {
    for (const auto& [key, value] : result.metadata) out << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < result.columns.size(); ++c) out << (c ? "," : "") << result.columns[c];
    out << '\n';
    for (const auto& row : result.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const SweepResult& result) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : result.metadata) meta[key] = value;
    doc["metadata"] = meta;
    doc["columns"] = result.columns;
    doc["rows"] = result.rows;
    out << doc.dump(2) << '\n';
}

std::size_t resolve_threads(int requested) {
    if (requested > 0) return static_cast<std::size_t>(requested);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(resolve_threads(threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace isingring
