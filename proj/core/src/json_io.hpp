#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace redweyl::io {

using json = nlohmann::json;

// "%.17g". dump() writes non-finite values as null.
std::string format_double(double v);

// JSON text with keys in lexicographic order and floats via format_double.
std::string dump(const json& j, int indent = 2);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

// RFC 4180: fields containing a comma, quote, CR or LF are quoted, records end
// in CRLF.
std::string csv_field(std::string_view field);
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace redweyl::io
