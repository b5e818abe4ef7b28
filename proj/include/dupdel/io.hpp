#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace dupdel::io {

// Every CSV artifact starts with this line; JSON artifacts carry a matching
// "schema_version" field. Bump both together on any schema change.
inline constexpr std::string_view kCsvSchemaLine = "# dupdel-schema v1";
inline constexpr int kJsonSchemaVersion = 1;

// Relative output paths are resolved against this directory when it is set.
inline constexpr const char* kOutputDirEnvVar = "DUPDEL_OUT_DIR";

// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

std::filesystem::path resolve_output_path(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames into place, so a failed run
// never leaves a partial artifact at the target path. Parent directories are
// created as needed. Throws std::runtime_error on any filesystem failure.
void atomic_write_text(const std::filesystem::path& path, std::string_view content);

}  // namespace dupdel::io
