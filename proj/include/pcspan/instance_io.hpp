#pragma once

#include "pcspan/model.hpp"
#include "pcspan/reductions.hpp"
#include "pcspan/scaling.hpp"

#include <string>
#include <string_view>

namespace pcspan {

// Parsers report ParseError with a JSON pointer to the offending field (or line:column for syntax errors).
PcsInstance parse_pcs(std::string_view text);
RcsInstance parse_rcs(std::string_view text);
HopsetInstance parse_hopset(std::string_view text);

// Parse, validate, and reject demands without a feasible walk.
PcsInstance load_pcs(const std::string& path);
RcsInstance load_rcs(const std::string& path);
HopsetInstance load_hopset(const std::string& path);

std::string to_json(const PcsInstance& instance);
std::string to_json(const ScaledInstance& scaled);
std::string to_json(const RcsInstance& rcs);
std::string to_json(const HopsetInstance& hs);

// Optional top-level boolean, false when absent.
bool read_flag(std::string_view text, const std::string& key);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pcspan
