#pragma once

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace kgspectral {

/// Shortest decimal form that re-parses to the same double. Keeps CSV
/// output byte-deterministic and lossless.
std::string format_double(double value);

/// Strip leading and trailing whitespace.
std::string trim(const std::string& text);

/// Parse a flat key=value stream: one pair per line, blank lines and
/// #-comment lines skipped, inline comments not supported. Duplicate keys
/// keep the last value. Throws ConfigError on malformed lines.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// parse_key_values over a file; ConfigError if the file cannot be read.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// A real number, either plain decimal or a power written base^exponent
/// (so step sizes can be given exactly as 2^-10). Throws ConfigError.
double parse_real(const std::string& text);

long long parse_integer(const std::string& text);

/// true/false, yes/no, on/off, 1/0.
bool parse_flag(const std::string& text);

/// Inclusive integer range "a..b", or a single integer meaning a..a.
std::pair<int, int> parse_range(const std::string& text);

/// Comma-separated reals; the empty string is an empty list.
std::vector<double> parse_real_list(const std::string& text);

/// Split on commas. Our CSV files never quote fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace kgspectral
