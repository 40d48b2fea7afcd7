#include "lfbo/benchmarks/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lfbo/core/errors.hpp"

namespace lfbo::benchmarks {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::vector<int> config_key(const Point& x) {
    std::vector<int> key;
    key.reserve(x.size());
    for (double v : x) key.push_back(static_cast<int>(v));
    return key;
}

}  // namespace

TabularBenchmark::TabularBenchmark(SearchSpace space, std::vector<std::string> columns, std::string outcome,
                                   std::map<std::vector<int>, std::vector<double>> table)
    : space_(std::move(space)), columns_(std::move(columns)), outcome_(std::move(outcome)), table_(std::move(table)) {
    best_ = -std::numeric_limits<double>::infinity();
    for (const auto& [key, values] : table_) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        if (mean > best_) {
            best_ = mean;
            best_config_.assign(key.begin(), key.end());
        }
    }
}

const std::vector<double>& TabularBenchmark::samples(const Point& x) const {
    space_.validate(x);
    const auto it = table_.find(config_key(x));
    if (it == table_.end()) throw SchemaError("configuration is not tabulated");
    return it->second;
}

double TabularBenchmark::evaluate(const Point& x, std::mt19937_64& rng) const {
    const auto& s = samples(x);
    if (s.size() == 1) return s.front();
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    return s[pick(rng)];
}

Objective TabularBenchmark::objective(const std::string& name) const {
    return {name, space_, [self = *this](const Point& x, std::mt19937_64& rng) { return self.evaluate(x, rng); },
            best_};
}

TabularBenchmark load_tabular(const std::filesystem::path& path, const TabularSchema& schema) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tabular benchmark '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("tabular benchmark is empty", 1);
    auto header = split_csv(line);
    if (header.size() < 2) throw ParseError("header needs configuration columns and an outcome column", 1);
    const std::size_t n_cfg = header.size() - 1;
    if (!schema.category_counts.empty() && schema.category_counts.size() != n_cfg)
        throw SchemaError("schema declares " + std::to_string(schema.category_counts.size()) +
                          " configuration columns, file has " + std::to_string(n_cfg));

    std::map<std::vector<int>, std::vector<double>> table;
    std::vector<int> max_code(n_cfg, -1);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw ParseError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                 " cells, expected " + std::to_string(header.size()),
                             row);
        std::vector<int> key(n_cfg);
        for (std::size_t c = 0; c < n_cfg; ++c) {
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(cells[c], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != cells[c].size())
                throw ParseError("row " + std::to_string(row) + ": configuration cell '" + cells[c] +
                                     "' is not an integer code",
                                 row);
            if (v < 0 || (!schema.category_counts.empty() && static_cast<std::size_t>(v) >= schema.category_counts[c]))
                throw SchemaError("row " + std::to_string(row) + ": code " + std::to_string(v) + " of column '" +
                                  header[c] + "' is outside the declared space");
            key[c] = static_cast<int>(v);
            max_code[c] = std::max(max_code[c], key[c]);
        }
        char* end = nullptr;
        const double y = std::strtod(cells.back().c_str(), &end);
        if (cells.back().empty() || *end != '\0' || !std::isfinite(y))
            throw ParseError("row " + std::to_string(row) + ": outcome '" + cells.back() + "' is not a finite number",
                             row);
        table[key].push_back(schema.minimize ? 0.0 - y : y);
    }
    if (table.empty()) throw ParseError("tabular benchmark has no rows", row);

    std::vector<std::size_t> counts = schema.category_counts;
    if (counts.empty())
        for (int m : max_code) counts.push_back(static_cast<std::size_t>(std::max(m + 1, 2)));
    double total = 1.0;
    for (auto c : counts) total *= static_cast<double>(c);
    if (static_cast<double>(table.size()) != total)
        throw SchemaError("table covers " + std::to_string(table.size()) + " of " +
                          std::to_string(static_cast<long long>(total)) + " configurations in the declared space");

    std::vector<std::string> columns(header.begin(), header.end() - 1);
    return TabularBenchmark(SearchSpace::categorical(counts), std::move(columns), header.back(), std::move(table));
}

}  // namespace lfbo::benchmarks
