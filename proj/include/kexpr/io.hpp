// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kexpr/engine.hpp"

namespace kexpr {

/// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> split_csv_record(std::string_view line);
std::string quote_csv(std::string_view field);

/// Header row of names, numeric rows; the target is the named column or the
/// last one.
Dataset read_dataset(std::istream& in, const std::optional<std::string>& target = std::nullopt);
Dataset load_dataset(const std::filesystem::path& path, const std::optional<std::string>& target = std::nullopt);
void write_dataset(std::ostream& out, const Dataset& data);

void write_stats(std::ostream& out, std::span<const StatsRow> rows);

/// front.csv: error,size,infix,karva,run,seed
void write_front(std::ostream& out, std::span<const FrontPoint> front);
std::vector<FrontPoint> read_front(std::istream& in);

/// Front records of a finished run, sorted by error.
std::vector<FrontPoint> front_points(const RunResult& result, std::size_t run);

/// row,target,prediction,residual,valid followed by a "# test_rrse=" footer.
void write_predictions(std::ostream& out, const Dataset& test, Eigen::Index first_row, const Prediction& p);

} // namespace kexpr
