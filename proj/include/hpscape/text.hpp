#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hpscape::text {

/// Shortest decimal that round-trips to the same double.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::optional<double> parse_double(std::string_view s);

[[nodiscard]] std::string_view trim(std::string_view s);

/// Splits one CSV record. Supports double-quoted fields with "" escapes.
/// Returns nullopt on an unterminated quote.
[[nodiscard]] std::optional<std::vector<std::string>> split_csv(std::string_view line);

/// Quotes a field only when it contains a separator, quote or newline.
[[nodiscard]] std::string csv_field(std::string_view s);

[[nodiscard]] std::string read_file(const std::string& path);

/// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace hpscape::text
