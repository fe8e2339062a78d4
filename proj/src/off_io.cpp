#include "hedra/off_io.h"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hedra/errors.h"

namespace hedra {
namespace {

// Splits text into (1-based line number, content) pairs with comments
// stripped; blank lines are dropped.
std::vector<std::pair<int, std::string>> meaningful_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        if (!blank) out.emplace_back(line_no, line);
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

double parse_real(const std::string& tok, int line_no, const char* what) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + tok.size())
        throw ParseError(line_no, std::string("expected a ") + what + ", got '" + tok + "'");
    return v;
}

long parse_count(const std::string& tok, int line_no, const char* what) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end != begin + tok.size() || v < 0)
        throw ParseError(line_no, std::string("expected a nonnegative ") + what + ", got '" + tok + "'");
    return v;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Polyhedron read_off(const std::string& text) {
    auto lines = meaningful_lines(text);
    std::size_t at = 0;
    auto next_line = [&]() -> const std::pair<int, std::string>& {
        if (at >= lines.size()) {
            int last = lines.empty() ? 1 : lines.back().first;
            throw ParseError(last, "unexpected end of file");
        }
        return lines[at++];
    };

    {
        const auto& [no, header] = next_line();
        auto toks = tokens_of(header);
        if (toks.size() != 1 || toks[0] != "OFF")
            throw ParseError(no, "expected header line 'OFF'");
    }

    long nv = 0, nf = 0;
    {
        const auto& [no, counts] = next_line();
        auto toks = tokens_of(counts);
        if (toks.size() != 3) throw ParseError(no, "expected counts line 'V F E'");
        nv = parse_count(toks[0], no, "vertex count");
        nf = parse_count(toks[1], no, "face count");
        parse_count(toks[2], no, "edge count");  // value ignored
    }

    Polyhedron p;
    p.vertices.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        const auto& [no, line] = next_line();
        auto toks = tokens_of(line);
        if (toks.size() != 3)
            throw ParseError(no, "expected 3 coordinates, got " + std::to_string(toks.size()));
        p.vertices.push_back({parse_real(toks[0], no, "coordinate"),
                              parse_real(toks[1], no, "coordinate"),
                              parse_real(toks[2], no, "coordinate")});
    }

    p.faces.reserve(static_cast<std::size_t>(nf));
    for (long i = 0; i < nf; ++i) {
        const auto& [no, line] = next_line();
        auto toks = tokens_of(line);
        if (toks.empty()) throw ParseError(no, "empty face line");
        long k = parse_count(toks[0], no, "face size");
        if (k < 3) throw ParseError(no, "face must have at least 3 vertices");
        if (static_cast<long>(toks.size()) != k + 1)
            throw ParseError(no, "face line promises " + std::to_string(k) + " indices, has " +
                                     std::to_string(toks.size() - 1));
        std::vector<int> face;
        face.reserve(static_cast<std::size_t>(k));
        for (long j = 1; j <= k; ++j) {
            long idx = parse_count(toks[static_cast<std::size_t>(j)], no, "vertex index");
            if (idx >= nv)
                throw ParseError(no, "vertex index " + std::to_string(idx) + " out of range (V = " +
                                         std::to_string(nv) + ")");
            face.push_back(static_cast<int>(idx));
        }
        p.faces.push_back(std::move(face));
    }

    if (at != lines.size()) throw ParseError(lines[at].first, "trailing content after last face");

    require_valid(p);
    return p;
}

std::string write_off(const Polyhedron& p) {
    std::size_t edges = 0;
    for (const auto& f : p.faces) edges += f.size();
    edges /= 2;

    std::string out = "OFF\n";
    out += std::to_string(p.vertices.size());
    out += ' ';
    out += std::to_string(p.faces.size());
    out += ' ';
    out += std::to_string(edges);
    out += '\n';
    for (const auto& v : p.vertices) {
        out += format_real(v.x);
        out += ' ';
        out += format_real(v.y);
        out += ' ';
        out += format_real(v.z);
        out += '\n';
    }
    for (const auto& f : p.faces) {
        out += std::to_string(f.size());
        for (int i : f) {
            out += ' ';
            out += std::to_string(i);
        }
        out += '\n';
    }
    return out;
}

CombinatorialType read_type(const std::string& text) {
    auto lines = meaningful_lines(text);
    CombinatorialType t;
    std::unordered_map<std::string, int> label_of;
    for (const auto& [no, line] : lines) {
        auto toks = tokens_of(line);
        if (toks.size() < 3)
            throw ParseError(no, "face needs at least 3 vertex labels, got " +
                                     std::to_string(toks.size()));
        std::vector<int> face;
        face.reserve(toks.size());
        for (const auto& tok : toks) {
            auto [it, fresh] = label_of.try_emplace(tok, static_cast<int>(label_of.size()));
            (void)fresh;
            face.push_back(it->second);
        }
        t.faces.push_back(std::move(face));
    }
    require_valid_type(t);
    return t;
}

std::string write_type(const CombinatorialType& t) {
    std::string out;
    for (const auto& f : t.faces) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(f[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace hedra
