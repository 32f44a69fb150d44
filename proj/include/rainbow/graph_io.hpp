#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

// Text format:
//   # comment lines anywhere
//   n m k
//   u v c      (exactly m lines)

namespace detail {

inline bool read_fields(const std::string& line, std::size_t line_no, std::int64_t (&out)[3])
{
    std::istringstream in(line);
    for (auto& x : out) {
        if (!(in >> x)) {
            throw GraphError("line " + std::to_string(line_no) + ": expected three integers");
        }
    }
    std::string rest;
    if (in >> rest) {
        throw GraphError("line " + std::to_string(line_no) + ": trailing text '" + rest + "'");
    }
    return true;
}

inline bool is_blank_or_comment(const std::string& line)
{
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

} // namespace detail

inline ColouredGraph load_graph(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::int64_t n = 0, m = 0, k = 0;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;

    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        std::int64_t f[3];
        detail::read_fields(line, line_no, f);
        if (!have_header) {
            if (f[0] < 0 || f[1] < 0 || f[2] < 0 || f[0] > UINT32_MAX || f[1] > UINT32_MAX ||
                f[2] > UINT32_MAX) {
                throw GraphError("line " + std::to_string(line_no) + ": header values out of range");
            }
            n = f[0];
            m = f[1];
            k = f[2];
            have_header = true;
            edges.reserve(static_cast<std::size_t>(m));
            continue;
        }
        if (static_cast<std::int64_t>(edges.size()) == m) {
            throw GraphError("line " + std::to_string(line_no) + ": more than " + std::to_string(m) +
                             " edge lines");
        }
        auto [u, v, c] = f;
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw GraphError("line " + std::to_string(line_no) + ": vertex outside [0, " +
                             std::to_string(n) + ")");
        }
        if (c < 0 || c >= k) {
            throw GraphError("line " + std::to_string(line_no) + ": colour " + std::to_string(c) +
                             " outside [0, " + std::to_string(k) + ")");
        }
        if (u == v) {
            throw GraphError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                             std::to_string(u));
        }
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Colour>(c)});
        edge_lines.push_back(line_no);
    }
    if (!have_header) {
        throw GraphError("missing header line 'n m k'");
    }
    if (static_cast<std::int64_t>(edges.size()) != m) {
        throw GraphError("expected " + std::to_string(m) + " edge lines, found " +
                         std::to_string(edges.size()));
    }

    // Report duplicates and colour clashes against the line that introduced them.
    {
        std::vector<std::pair<std::pair<Vertex, Vertex>, std::size_t>> keyed;
        keyed.reserve(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto a = std::min(edges[i].u, edges[i].v), b = std::max(edges[i].u, edges[i].v);
            keyed.push_back({{a, b}, i});
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 1; i < keyed.size(); ++i) {
            if (keyed[i].first == keyed[i - 1].first) {
                throw GraphError("line " + std::to_string(edge_lines[keyed[i].second]) +
                                 ": duplicate edge (" + std::to_string(keyed[i].first.first) + ", " +
                                 std::to_string(keyed[i].first.second) + ")");
            }
        }
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(2 * edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            for (auto x : {edges[i].u, edges[i].v}) {
                auto key = static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(k) + edges[i].colour;
                if (!seen.insert(key).second) {
                    throw GraphError("line " + std::to_string(edge_lines[i]) +
                                     ": improper colouring: vertex " + std::to_string(x) +
                                     " has colour " + std::to_string(edges[i].colour) + " on two edges");
                }
            }
        }
    }
    return ColouredGraph(static_cast<std::size_t>(n), static_cast<std::size_t>(k), std::move(edges));
}

inline ColouredGraph load_graph_string(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return load_graph(in);
}

inline ColouredGraph load_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw GraphError("cannot open '" + path + "'");
    }
    return load_graph(in);
}

/// Canonical text form; edges sorted by (min endpoint, max endpoint).
/// Each entry of `comments` becomes one leading '#' line.
inline std::string serialize_graph(const ColouredGraph& g, const std::vector<std::string>& comments = {})
{
    std::ostringstream out;
    for (const auto& c : comments) {
        out << "# " << c << '\n';
    }
    out << g.vertex_count() << ' ' << g.edge_count() << ' ' << g.colour_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v << ' ' << e.colour << '\n';
    }
    return out.str();
}

} // namespace rainbow
