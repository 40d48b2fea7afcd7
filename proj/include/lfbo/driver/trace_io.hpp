#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lfbo/driver/bo.hpp"
#include "lfbo/driver/equivalence.hpp"

namespace lfbo::driver {

/// Regret values below this are reported as this floor in log10 columns.
inline constexpr double kLogRegretFloor = 1e-12;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// `seed,iteration,x_0..x_{d-1},y,incumbent,regret`
void write_trace_csv(std::ostream& os, const RegretTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const RegretTrace& trace);
RegretTrace read_trace_csv(const std::filesystem::path& path, const std::string& method = {});

struct SummaryRow {
    std::string method;
    std::size_t iteration;
    std::size_t n_seeds;
    double mean_regret;
    double median_regret;
    /// log10 of max(mean regret, floor).
    double log10_mean_regret;
    /// log10 of max(median regret, floor).
    double log10_median_regret;
};

double median(std::vector<double> v);

/// Per-iteration statistics over seeds. Traces are ordered by seed before
/// aggregation so the result depends only on the set of traces.
std::vector<SummaryRow> summarize(std::vector<RegretTrace> traces);

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

/// `method,n,seed,l1_error`
void write_equivalence_csv(const std::filesystem::path& path, const EquivalenceReport& report);

}  // namespace lfbo::driver
