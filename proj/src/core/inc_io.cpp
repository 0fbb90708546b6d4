#include "inc_io.hpp"

#include <fstream>
#include <sstream>

namespace pc {

std::string to_inc_text(const IncidenceSystem& sys) {
    std::ostringstream out;
    out << "planecode v1\n";
    out << "points " << sys.num_points() << "\n";
    out << "lines " << sys.num_lines() << "\n";
    for (const auto& ln : sys.lines()) {
        for (std::size_t i = 0; i < ln.size(); ++i) {
            if (i) out << ' ';
            out << ln[i];
        }
        out << '\n';
    }
    return out.str();
}

IncidenceSystem from_inc_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header != "planecode v1")
        fail(Error::Kind::parse, ".inc: missing 'planecode v1' header");

    auto expect_count = [&](const std::string& keyword) {
        std::string line;
        if (!std::getline(in, line)) fail(Error::Kind::parse, ".inc: truncated header");
        std::istringstream ls(line);
        std::string word;
        long long value = -1;
        if (!(ls >> word >> value) || word != keyword || value < 0)
            fail(Error::Kind::parse, ".inc: expected '" + keyword + " <count>'");
        std::string extra;
        if (ls >> extra) fail(Error::Kind::parse, ".inc: trailing tokens after " + keyword);
        return value;
    };
    long long v = expect_count("points");
    long long b = expect_count("lines");
    if (v > 2000000) fail(Error::Kind::parse, ".inc: point count too large");

    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(b));
    std::string row;
    for (long long i = 0; i < b; ++i) {
        if (!std::getline(in, row)) fail(Error::Kind::parse, ".inc: fewer line rows than declared");
        std::istringstream rs(row);
        Line ln;
        long long x;
        while (rs >> x) {
            if (x < 0 || x >= v) fail(Error::Kind::parse, ".inc: point index out of range");
            if (!ln.empty() && x <= ln.back())
                fail(Error::Kind::parse, ".inc: line row not strictly ascending");
            ln.push_back(static_cast<int>(x));
        }
        if (!rs.eof()) fail(Error::Kind::parse, ".inc: bad token in line row");
        lines.push_back(std::move(ln));
    }
    while (std::getline(in, row)) {
        if (!row.empty()) fail(Error::Kind::parse, ".inc: trailing content after line rows");
    }
    try {
        return IncidenceSystem::make(static_cast<int>(v), std::move(lines));
    } catch (const Error& e) {
        fail(Error::Kind::parse, std::string(".inc: ") + e.what());
    }
}

void write_inc_file(const IncidenceSystem& sys, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Error::Kind::io, "cannot open for writing: " + path);
    out << to_inc_text(sys);
    if (!out) fail(Error::Kind::io, "write failed: " + path);
}

IncidenceSystem read_inc_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Error::Kind::io, "cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_inc_text(buf.str());
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string fingerprint(const IncidenceSystem& sys) {
    std::string text = to_inc_text(sys);
    std::uint64_t h = fnv1a64(text.data(), text.size());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace pc
