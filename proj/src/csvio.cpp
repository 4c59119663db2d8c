#include "kgspectral/csvio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kgspectral/errors.hpp"

namespace kgspectral {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& text) {
    const char* ws = " \t\r\n";
    const std::size_t first = text.find_first_not_of(ws);
    if (first == std::string::npos) return {};
    const std::size_t last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got \"" +
                              body + "\"");
        const std::string key = trim(body.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        pairs[key] = trim(body.substr(eq + 1));
    }
    return pairs;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file \"" + path + "\"");
    return parse_key_values(in);
}

namespace {

double parse_plain_real(const std::string& text) {
    const std::string body = trim(text);
    double value = 0.0;
    const char* begin = body.data();
    const char* end = begin + body.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError("not a number: \"" + text + "\"");
    return value;
}

}  // namespace

double parse_real(const std::string& text) {
    const std::string body = trim(text);
    const std::size_t caret = body.find('^');
    if (caret == std::string::npos) return parse_plain_real(body);
    const double base = parse_plain_real(body.substr(0, caret));
    const long long exponent = parse_integer(body.substr(caret + 1));
    return std::pow(base, static_cast<double>(exponent));
}

long long parse_integer(const std::string& text) {
    const std::string body = trim(text);
    long long value = 0;
    const char* begin = body.data();
    const char* end = begin + body.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError("not an integer: \"" + text + "\"");
    return value;
}

bool parse_flag(const std::string& text) {
    const std::string body = trim(text);
    if (body == "true" || body == "yes" || body == "on" || body == "1") return true;
    if (body == "false" || body == "no" || body == "off" || body == "0") return false;
    throw ConfigError("not a flag: \"" + text + "\"");
}

std::pair<int, int> parse_range(const std::string& text) {
    const std::string body = trim(text);
    const std::size_t dots = body.find("..");
    if (dots == std::string::npos) {
        const int single = static_cast<int>(parse_integer(body));
        return {single, single};
    }
    const int lo = static_cast<int>(parse_integer(body.substr(0, dots)));
    const int hi = static_cast<int>(parse_integer(body.substr(dots + 2)));
    if (lo > hi) throw ConfigError("empty range: \"" + text + "\"");
    return {lo, hi};
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> values;
    if (trim(text).empty()) return values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) values.push_back(parse_real(item));
    return values;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace kgspectral
