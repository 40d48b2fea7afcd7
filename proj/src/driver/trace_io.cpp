#include "lfbo/driver/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "lfbo/core/errors.hpp"

namespace lfbo::driver {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    return cells;
}

double parse_double(const std::string& s, std::size_t row) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw ParseError("bad number '" + s + "' on line " + std::to_string(row), row);
    return v;
}

std::uint64_t parse_u64(const std::string& s, std::size_t row) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("bad integer '" + s + "' on line " + std::to_string(row), row);
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write '" + path.string() + "'");
    return os;
}

double log_floor(double v) { return std::log10(std::max(v, kLogRegretFloor)); }

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& os, const RegretTrace& trace) {
    const std::size_t d = trace.records.empty() ? 0 : trace.records.front().x.size();
    os << "seed,iteration";
    for (std::size_t k = 0; k < d; ++k) os << ",x_" << k;
    os << ",y,incumbent,regret\n";
    for (const auto& r : trace.records) {
        os << trace.seed << ',' << r.iteration;
        for (double v : r.x) os << ',' << format_double(v);
        os << ',' << format_double(r.y) << ',' << format_double(r.incumbent) << ',' << format_double(r.regret)
           << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& path, const RegretTrace& trace) {
    auto os = open_out(path);
    write_trace_csv(os, trace);
}

RegretTrace read_trace_csv(const std::filesystem::path& path, const std::string& method) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty trace file", 1);
    const auto header = split(line);
    if (header.size() < 5 || header[0] != "seed" || header[1] != "iteration" || header.back() != "regret")
        throw ParseError("unexpected trace header", 1);
    const std::size_t d = header.size() - 5;
    RegretTrace trace;
    trace.method = method;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != header.size()) throw ParseError("wrong cell count on line " + std::to_string(row), row);
        trace.seed = parse_u64(c[0], row);
        TraceRecord r;
        r.iteration = parse_u64(c[1], row);
        for (std::size_t k = 0; k < d; ++k) r.x.push_back(parse_double(c[2 + k], row));
        r.y = parse_double(c[2 + d], row);
        r.incumbent = parse_double(c[3 + d], row);
        r.regret = parse_double(c[4 + d], row);
        r.raw_regret = r.regret;
        trace.records.push_back(std::move(r));
    }
    return trace;
}

double median(std::vector<double> v) {
    if (v.empty()) throw EmptyDatasetError("median of an empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<SummaryRow> summarize(std::vector<RegretTrace> traces) {
    std::stable_sort(traces.begin(), traces.end(), [](const RegretTrace& a, const RegretTrace& b) {
        return a.method != b.method ? a.method < b.method : a.seed < b.seed;
    });
    std::map<std::string, std::vector<const RegretTrace*>> by_method;
    for (const auto& t : traces) by_method[t.method].push_back(&t);
    std::vector<SummaryRow> rows;
    for (const auto& [method, group] : by_method) {
        std::size_t len = 0;
        for (const auto* t : group) len = std::max(len, t->records.size());
        for (std::size_t i = 0; i < len; ++i) {
            std::vector<double> vals;
            for (const auto* t : group)
                if (i < t->records.size()) vals.push_back(t->records[i].regret);
            double sum = 0.0;
            for (double v : vals) sum += v;
            const double mean = sum / static_cast<double>(vals.size());
            const double med = median(vals);
            rows.push_back({method, i + 1, vals.size(), mean, med, log_floor(mean), log_floor(med)});
        }
    }
    return rows;
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
    auto os = open_out(path);
    os << "method,iteration,n_seeds,mean_regret,median_regret,log10_mean_regret,log10_median_regret\n";
    for (const auto& r : rows)
        os << r.method << ',' << r.iteration << ',' << r.n_seeds << ',' << format_double(r.mean_regret) << ','
           << format_double(r.median_regret) << ',' << format_double(r.log10_mean_regret) << ','
           << format_double(r.log10_median_regret) << '\n';
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open summary '" + path.string() + "'");
    std::string line;
    std::getline(in, line);
    std::vector<SummaryRow> rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != 7) throw ParseError("wrong cell count on line " + std::to_string(row), row);
        rows.push_back({c[0], parse_u64(c[1], row), parse_u64(c[2], row), parse_double(c[3], row),
                        parse_double(c[4], row), parse_double(c[5], row), parse_double(c[6], row)});
    }
    return rows;
}

void write_equivalence_csv(const std::filesystem::path& path, const EquivalenceReport& report) {
    auto os = open_out(path);
    os << "method,n,seed,l1_error\n";
    for (const auto& r : report.rows)
        os << r.label() << ',' << r.n << ',' << r.seed << ',' << format_double(r.l1_error) << '\n';
}

}  // namespace lfbo::driver
