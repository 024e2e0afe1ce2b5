#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

namespace veritas::app {

// Reader for the TOML subset the config file uses: [table] and [a.b]
// headers, bare or quoted keys (dotted keys allowed), basic and literal
// strings, integers, floats, booleans, and arrays of those (which may span
// lines). Comments start with '#'. Redefining a key is an error.
//
// Returns a JSON object tree; throws ValidationError naming the line.
nlohmann::ordered_json parse_toml(std::string_view text, std::string_view source = "<config>");
nlohmann::ordered_json load_toml(const std::filesystem::path& path);

}  // namespace veritas::app
