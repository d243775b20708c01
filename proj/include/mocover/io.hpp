#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mocover/geometry.hpp"
#include "mocover/metrics.hpp"

namespace mocover {

/// JSON array of {depth, cell_index[], center[], radius[]} records in key order.
std::string covering_to_json(const BoxCollection& covering);

/// Inverse of covering_to_json. The root region is reconstructed from the
/// first record unless given; an empty array needs `root`.
BoxCollection covering_from_json(std::string_view text, const std::optional<HyperBox>& root = {});

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// depth,box_count,diameter,eval_count[,hausdorff_to_reference]
std::string report_to_csv(const RunReport& report);
RunReport report_from_csv(std::string_view text);

/// x1,...,xn,residual
std::string residual_field_to_csv(const ResidualField& field);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mocover
