#include "fsde/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "fsde/errors.hpp"

namespace fsde {

std::string format_double(double value)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw IoError("failed to format double");
    return std::string(buf, end);
}

void write_path_csv(std::ostream& out, const SamplePath& path)
{
    out << 't';
    for (std::size_t c = 0; c < path.dim(); ++c) out << ",x" << (c + 1);
    out << '\n';
    for (std::size_t i = 0; i < path.size(); ++i) {
        out << format_double(path.grid()[i]);
        for (std::size_t c = 0; c < path.dim(); ++c) out << ',' << format_double(path(i, c));
        out << '\n';
    }
}

std::string path_to_csv(const SamplePath& path)
{
    std::ostringstream out;
    write_path_csv(out, path);
    return out.str();
}

namespace {

double parse_double(std::string_view token, std::size_t line)
{
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw IoError("bad number '" + std::string(token) + "' on line " + std::to_string(line));
    }
    return value;
}

}  // namespace

SamplePath read_path_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != 't') throw IoError("missing CSV header");
    const auto dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    if (dim == 0) throw IoError("CSV path needs at least one value column");

    std::vector<double> times;
    std::vector<double> flat;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string_view rest(line);
        std::size_t fields = 0;
        while (true) {
            const auto comma = rest.find(',');
            const double v = parse_double(rest.substr(0, comma), lineno);
            if (fields == 0) times.push_back(v);
            else flat.push_back(v);
            ++fields;
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields != dim + 1) throw IoError("wrong field count on line " + std::to_string(lineno));
    }
    Matrix values(static_cast<Eigen::Index>(times.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (std::size_t c = 0; c < dim; ++c) {
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = flat[i * dim + c];
        }
    }
    return SamplePath(TimeGrid::from_nodes(std::move(times)), std::move(values));
}

void write_file_atomic(const std::filesystem::path& target, std::string_view content)
{
    namespace fs = std::filesystem;
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("rename to " + target.string() + " failed: " + ec.message());
}

}  // namespace fsde
