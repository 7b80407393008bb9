#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qlevy::cli {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// CSV field, quoted when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

/// Emits one CSV row from already formatted fields.
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

/// Pretty JSON with sorted keys and doubles at 17 significant digits;
/// non-finite doubles become null.
void write_json(std::ostream& os, const nlohmann::json& value);

} // namespace qlevy::cli
