// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kexpr {

namespace {

double parse_double(const std::string& field, std::size_t line)
{
    std::size_t b = field.find_first_not_of(" \t");
    std::size_t e = field.find_last_not_of(" \t\r");
    if (b == std::string::npos) {
        throw DataError("line " + std::to_string(line) + ": empty numeric field");
    }
    const char* first = field.data() + b;
    const char* last = field.data() + e + 1;
    double v = 0.0;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last) {
        throw DataError("line " + std::to_string(line) + ": not a number: '" + field + "'");
    }
    return v;
}

std::string opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); }

// Reads one record, joining physical lines while a quoted field is open.
bool next_record(std::istream& in, std::string& record)
{
    record.clear();
    std::string line;
    bool open = false;
    bool any = false;
    while (std::getline(in, line)) {
        any = true;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!record.empty() || open) {
            record += '\n';
        }
        record += line;
        for (char c : line) {
            if (c == '"') {
                open = !open;
            }
        }
        if (!open) {
            return true;
        }
    }
    return any;
}

} // namespace

std::vector<std::string> split_csv_record(std::string_view line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

std::string quote_csv(std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

Dataset read_dataset(std::istream& in, const std::optional<std::string>& target)
{
    std::string record;
    if (!next_record(in, record)) {
        throw DataError("dataset is empty");
    }
    if (record.size() >= 3 && static_cast<unsigned char>(record[0]) == 0xEF) {
        record.erase(0, 3); // UTF-8 byte order mark
    }
    auto header = split_csv_record(record);
    for (auto& h : header) {
        const auto b = h.find_first_not_of(" \t");
        const auto e = h.find_last_not_of(" \t");
        h = b == std::string::npos ? std::string() : h.substr(b, e - b + 1);
    }
    if (header.size() < 2) {
        throw DataError("dataset needs at least one input column and a target column");
    }
    std::size_t target_col = header.size() - 1;
    if (target) {
        auto it = std::find(header.begin(), header.end(), *target);
        if (it == header.end()) {
            throw DataError("target column '" + *target + "' not found");
        }
        target_col = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<std::vector<double>> rows;
    std::size_t line = 1;
    while (next_record(in, record)) {
        ++line;
        if (record.empty() || record[0] == '#') {
            continue;
        }
        const auto fields = split_csv_record(record);
        if (fields.size() != header.size()) {
            throw DataError("line " + std::to_string(line) + ": expected " + std::to_string(header.size())
                            + " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            row.push_back(parse_double(f, line));
        }
        rows.push_back(std::move(row));
    }

    Dataset data;
    data.target_name = header[target_col];
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c != target_col) {
            data.variables.push_back(header[c]);
        }
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    data.inputs.resize(n, static_cast<Eigen::Index>(data.variables.size()));
    data.target.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index j = 0;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == target_col) {
                data.target(i) = rows[static_cast<std::size_t>(i)][c];
            } else {
                data.inputs(i, j++) = rows[static_cast<std::size_t>(i)][c];
            }
        }
    }
    data.validate();
    return data;
}

Dataset load_dataset(const std::filesystem::path& path, const std::optional<std::string>& target)
{
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot read dataset " + path.string());
    }
    return read_dataset(in, target);
}

void write_dataset(std::ostream& out, const Dataset& data)
{
    for (const auto& v : data.variables) {
        out << quote_csv(v) << ',';
    }
    out << quote_csv(data.target_name) << '\n';
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        for (Eigen::Index j = 0; j < data.inputs.cols(); ++j) {
            out << format_real(data.inputs(i, j)) << ',';
        }
        out << format_real(data.target(i)) << '\n';
    }
}

void write_stats(std::ostream& out, std::span<const StatsRow> rows)
{
    out << "gen,best_err,mean_err,worst_err,best_size,front_size,archive_size\n";
    for (const auto& r : rows) {
        out << r.generation << ',' << format_real(r.best_error) << ',' << format_real(r.mean_error) << ','
            << format_real(r.worst_error) << ',' << r.best_size << ',' << opt(r.front_size) << ','
            << opt(r.archive_size) << '\n';
    }
}

void write_front(std::ostream& out, std::span<const FrontPoint> front)
{
    out << "error,size,infix,karva,run,seed\n";
    for (const auto& p : front) {
        out << format_real(p.objectives.error) << ',' << p.objectives.size << ',' << quote_csv(p.expression) << ','
            << quote_csv(p.karva) << ',' << p.run << ',' << p.seed << '\n';
    }
}

std::vector<FrontPoint> read_front(std::istream& in)
{
    std::string record;
    if (!next_record(in, record)) {
        throw DataError("front file is empty");
    }
    std::vector<FrontPoint> out;
    std::size_t line = 1;
    while (next_record(in, record)) {
        ++line;
        if (record.empty()) {
            continue;
        }
        const auto f = split_csv_record(record);
        if (f.size() != 6) {
            throw DataError("line " + std::to_string(line) + ": front records have 6 fields");
        }
        FrontPoint p;
        p.objectives.error = parse_double(f[0], line);
        p.objectives.size = static_cast<std::size_t>(std::stoull(f[1]));
        p.objectives.valid = std::isfinite(p.objectives.error);
        p.expression = f[2];
        p.karva = f[3];
        p.run = static_cast<std::size_t>(std::stoull(f[4]));
        p.seed = std::stoull(f[5]);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<FrontPoint> front_points(const RunResult& result, std::size_t run)
{
    std::vector<FrontPoint> out;
    const bool single = result.algorithm == Algorithm::Gep;
    const auto& members = single ? std::vector<Individual> { result.best } : result.front;
    for (const auto& ind : members) {
        out.push_back({ ind.objectives, result.infix(ind), run, result.seed, result.karva(ind) });
    }
    return out;
}

void write_predictions(std::ostream& out, const Dataset& test, Eigen::Index first_row, const Prediction& p)
{
    out << "row,target,prediction,residual,valid\n";
    for (Eigen::Index i = 0; i < test.rows(); ++i) {
        out << first_row + i << ',' << format_real(test.target(i)) << ',';
        if (p.valid(i)) {
            out << format_real(p.predictions(i)) << ',' << format_real(p.residuals(i)) << ",1\n";
        } else {
            out << ",,0\n";
        }
    }
    out << "# test_rrse=" << format_real(p.test_rrse) << " invalid_rows=" << p.invalid_rows << '\n';
}

} // namespace kexpr
