#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace isingring {

/// Tabular output of a sweep: one row per grid point, in row-major grid order.
struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Ordered key/value pairs written as `# key: value` header lines.
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_metadata(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

/// Inclusive linear grid. steps == 1 yields {min}.
std::vector<double> linspace(double min, double max, int steps);

/// Shortest round-trip text for a double: 17 significant digits.
std::string format_number(double value);

/// `# key: value` lines, then the column header, then rows; '\n' line endings.
void write_csv(std::ostream& out, const SweepResult& result);
/// {"metadata": {...}, "columns": [...], "rows": [[...]]}
void write_json(std::ostream& out, const SweepResult& result);

/// 0 selects the hardware concurrency (at least 1).
std::size_t resolve_threads(int requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to per-index slots; the call returns after all indices finish and
/// rethrows the first exception raised by any worker.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace isingring
