#pragma once

// File formats: series CSV, partition JSON, chi-matrix CSV, threshold-scan CSV
// and experiment-results CSV. Numbers are written with 17 significant digits
// and parsed without locale dependence.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aiblock/core.hpp"
#include "aiblock/eco.hpp"
#include "aiblock/experiments.hpp"

namespace aiblock::io {

inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

inline double parse_number(std::string_view cell, std::size_t line_no) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw InputError("line " + std::to_string(line_no) + ": non-numeric cell '" +
                         std::string(cell) + "'");
    return value;
}

}  // namespace detail

/// Comma-separated, header row of variable names, one numeric row per time step.
inline SeriesMatrix read_series_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> names;
    while (names.empty() && std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        for (auto cell : detail::split(line)) {
            if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"')
                cell = cell.substr(1, cell.size() - 2);
            if (cell.empty()) throw InputError("empty column name in header");
            names.emplace_back(cell);
        }
    }
    if (names.empty()) throw InputError("CSV has no header row");

    std::vector<double> flat;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split(line);
        if (cells.size() != names.size())
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(names.size()) + " cells, got " + std::to_string(cells.size()));
        for (auto cell : cells) flat.push_back(detail::parse_number(cell, line_no));
        ++rows;
    }
    if (rows == 0) throw InputError("CSV has no data rows");
    Matrix values(rows, names.size());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < names.size(); ++j) values(i, j) = flat[i * names.size() + j];
    return SeriesMatrix(std::move(values), std::move(names));
}

inline SeriesMatrix read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_series_csv(in);
}

inline void write_series_csv(std::ostream& out, const SeriesMatrix& series) {
    const auto& names = series.names();
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
    out << '\n';
    const Matrix& x = series.values();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) out << (j ? "," : "") << format_double(x(i, j));
        out << '\n';
    }
}

/// {"clusters": [[name, ...], ...]} in canonical order.
inline nlohmann::json partition_to_json(const Partition& partition, const std::vector<std::string>& names) {
    if (names.size() != partition.dimension())
        throw DimensionMismatch("partition and name list sizes differ");
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& g : partition.groups()) {
        nlohmann::json group = nlohmann::json::array();
        for (Index j : g) group.push_back(names[j]);
        clusters.push_back(std::move(group));
    }
    return {{"clusters", std::move(clusters)}};
}

inline Partition partition_from_json(const nlohmann::json& doc, const std::vector<std::string>& names) {
    if (!doc.is_object() || !doc.contains("clusters") || !doc["clusters"].is_array())
        throw InputError("partition JSON needs a \"clusters\" array");
    std::map<std::string, Index> lookup;
    for (Index j = 0; j < names.size(); ++j) lookup[names[j]] = j;
    std::vector<IndexSet> groups;
    for (const auto& g : doc["clusters"]) {
        if (!g.is_array()) throw InputError("each cluster must be an array of names");
        IndexSet group;
        for (const auto& name : g) {
            if (!name.is_string()) throw InputError("cluster members must be names");
            const auto it = lookup.find(name.get<std::string>());
            if (it == lookup.end()) throw InputError("unknown variable '" + name.get<std::string>() + "'");
            group.push_back(it->second);
        }
        groups.push_back(std::move(group));
    }
    return canonicalize(std::move(groups), names.size());
}

/// Header of names, then the full symmetric matrix. `clip` clamps to [0, 1].
inline void write_chi_csv(std::ostream& out, const ChiMatrix& chi, const std::vector<std::string>& names,
                          bool clip = false) {
    const Index d = chi.dimension();
    if (names.size() != d) throw DimensionMismatch("chi matrix and name list sizes differ");
    for (Index j = 0; j < d; ++j) out << (j ? "," : "") << names[j];
    out << '\n';
    for (Index a = 0; a < d; ++a) {
        for (Index b = 0; b < d; ++b) {
            const double v = clip ? std::clamp(chi(a, b), 0.0, 1.0) : chi(a, b);
            out << (b ? "," : "") << format_double(v);
        }
        out << '\n';
    }
}

inline void write_scan_csv(std::ostream& out, const ThresholdScan& scan) {
    out << "tau,seco,n_clusters,selected\n";
    for (Index i = 0; i < scan.grid.size(); ++i)
        out << format_double(scan.grid[i]) << ',' << format_double(scan.secos[i]) << ','
            << scan.partitions[i].size() << ',' << (i == scan.selected_index ? 1 : 0) << '\n';
}

/// Wall-clock seconds vary run to run, so they are written only on request.
inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing = false) {
    out << "experiment,framework,grid_param,grid_value,algorithm,recovery_rate,mean_seco";
    if (timing) out << ",seconds";
    out << '\n';
    for (const auto& r : rows) {
        const char* param = r.framework == Framework::F1 ? "m" : r.framework == Framework::F2 ? "k" : "tau";
        out << to_string(r.experiment) << ',' << to_string(r.framework) << ',' << param << ','
            << format_double(r.grid_value) << ',' << to_string(r.algorithm) << ','
            << format_double(r.recovery_rate) << ',' << (r.mean_seco ? format_double(*r.mean_seco) : "");
        if (timing) out << ',' << format_double(r.seconds);
        out << '\n';
    }
}

}  // namespace aiblock::io
