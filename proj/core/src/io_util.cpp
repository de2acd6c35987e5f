#include "nodenet/io_util.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nodenet/errors.hpp"

namespace nodenet {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw InputError("cannot open file for writing: " + path.string());
    return out;
}

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ifstream in(path, mode);
    if (!in) throw InputError("cannot open file: " + path.string());
    return in;
}

std::string format_header(std::string_view kind, int version) {
    return "# " + std::string(kind) + " v" + std::to_string(version);
}

bool consume_format_header(std::string_view line, std::string_view kind, int version) {
    if (!line.starts_with("#")) return false;
    std::string_view body = line.substr(1);
    while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
    while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.remove_suffix(1);
    auto space = body.find(' ');
    if (space == std::string_view::npos) return true;  // plain comment
    std::string_view got_kind = body.substr(0, space);
    std::string_view got_ver = body.substr(space + 1);
    if (got_ver.size() < 2 || got_ver.front() != 'v') return true;  // plain comment
    if (got_kind != kind)
        throw InputError("artifact format mismatch: expected '" + std::string(kind) +
                         "', file declares '" + std::string(got_kind) + "'");
    int v = 0;
    auto [p, ec] = std::from_chars(got_ver.data() + 1, got_ver.data() + got_ver.size(), v);
    if (ec == std::errc{} && p == got_ver.data() + got_ver.size() && v != version)
        throw InputError("artifact version mismatch for '" + std::string(kind) +
                         "': expected v" + std::to_string(version) + ", file declares v" +
                         std::to_string(v));
    return true;
}

std::vector<std::string> split_line(std::string_view line, char delimiter) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

bool parse_finite_double(std::string_view cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [p, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || p != last) return false;
    return std::isfinite(out);
}

}  // namespace nodenet
