#pragma once

// Instance generators.
//
// Hypercube encoding: vertex S is the bitmask of a subset of {1..m}, bit i-1
// standing for element i. The edge between S and S \ {i} gets colour i-1, so
// colours are 0-indexed coordinates. Q_m has 2^m vertices and m 2^(m-1)
// edges (half of n log2 n).

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

inline ColouredGraph gen_hypercube(unsigned m)
{
    if (m < 1 || m > 24) {
        throw std::invalid_argument("hypercube dimension must lie in [1, 24]");
    }
    const std::uint32_t n = 1u << m;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m) * (n / 2));
    for (std::uint32_t s = 0; s < n; ++s) {
        for (unsigned i = 0; i < m; ++i) {
            if (!(s & (1u << i))) {
                edges.push_back({s, s | (1u << i), i});
            }
        }
    }
    return ColouredGraph(n, m, std::move(edges));
}

enum class ColouringRule { greedy, fanned };

inline const char* to_string(ColouringRule r) { return r == ColouringRule::greedy ? "greedy" : "fanned"; }

namespace detail {

using VertexPair = std::pair<Vertex, Vertex>;

// First-fit in edge order: the smallest colour free at both ends.
inline ColouredGraph greedy_colouring(std::size_t n, const std::vector<VertexPair>& pairs)
{
    std::vector<std::vector<char>> used(n);
    std::vector<Edge> edges;
    std::size_t k = 0;
    for (auto [u, v] : pairs) {
        Colour c = 0;
        while ((c < used[u].size() && used[u][c]) || (c < used[v].size() && used[v][c])) {
            ++c;
        }
        for (auto x : {u, v}) {
            if (used[x].size() <= c) {
                used[x].resize(c + 1, 0);
            }
            used[x][c] = 1;
        }
        k = std::max<std::size_t>(k, c + 1);
        edges.push_back({u, v, c});
    }
    return ColouredGraph(n, k, std::move(edges));
}

// Misra-Gries fan recolouring with Delta + 1 colours.
class FanColourer {
public:
    FanColourer(std::size_t n, const std::vector<VertexPair>& pairs)
        : n_(n), colour_(n * n, -1)
    {
        std::vector<std::size_t> deg(n, 0);
        for (auto [u, v] : pairs) {
            ++deg[u];
            ++deg[v];
        }
        std::size_t delta = 0;
        for (auto d : deg) {
            delta = std::max(delta, d);
        }
        palette_ = static_cast<int>(delta + 1);
        at_.assign(n, std::vector<int>(palette_, -1));
        for (auto [u, v] : pairs) {
            colour_edge(u, v);
        }
    }

    ColouredGraph graph(const std::vector<VertexPair>& pairs) const
    {
        std::vector<Edge> edges;
        std::size_t k = 0;
        for (auto [u, v] : pairs) {
            auto c = static_cast<Colour>(get(u, v));
            k = std::max<std::size_t>(k, c + 1);
            edges.push_back({u, v, c});
        }
        return ColouredGraph(n_, k, std::move(edges));
    }

private:
    int get(Vertex u, Vertex v) const { return colour_[static_cast<std::size_t>(u) * n_ + v]; }
    bool free_at(Vertex x, int c) const { return at_[x][c] < 0; }
    int first_free(Vertex x) const
    {
        int c = 0;
        while (!free_at(x, c)) {
            ++c;
        }
        return c;
    }
    void set(Vertex u, Vertex v, int c)
    {
        colour_[static_cast<std::size_t>(u) * n_ + v] = c;
        colour_[static_cast<std::size_t>(v) * n_ + u] = c;
        at_[u][c] = static_cast<int>(v);
        at_[v][c] = static_cast<int>(u);
    }
    void unset(Vertex u, Vertex v)
    {
        const int c = get(u, v);
        if (c < 0) {
            return;
        }
        colour_[static_cast<std::size_t>(u) * n_ + v] = -1;
        colour_[static_cast<std::size_t>(v) * n_ + u] = -1;
        at_[u][c] = -1;
        at_[v][c] = -1;
    }

    bool is_fan_prefix(Vertex u, const std::vector<Vertex>& fan, std::size_t last) const
    {
        for (std::size_t i = 1; i <= last; ++i) {
            const int c = get(u, fan[i]);
            if (c < 0 || !free_at(fan[i - 1], c)) {
                return false;
            }
        }
        return true;
    }

    void colour_edge(Vertex u, Vertex v)
    {
        std::vector<Vertex> fan{v};
        std::vector<char> in_fan(n_, 0);
        in_fan[v] = 1;
        for (bool grew = true; grew;) {
            grew = false;
            for (int c = 0; c < palette_; ++c) {
                const int w = at_[u][c];
                if (w >= 0 && !in_fan[w] && free_at(fan.back(), c)) {
                    fan.push_back(static_cast<Vertex>(w));
                    in_fan[w] = 1;
                    grew = true;
                    break;
                }
            }
        }
        const int c = first_free(u);
        const int d = first_free(fan.back());
        if (c != d) {
            invert_path(u, c, d);
        }
        std::size_t w = 0;
        while (!(free_at(fan[w], d) && is_fan_prefix(u, fan, w))) {
            ++w;
        }
        std::vector<int> shifted(w);
        for (std::size_t i = 0; i < w; ++i) {
            shifted[i] = get(u, fan[i + 1]);
        }
        for (std::size_t i = 1; i <= w; ++i) {
            unset(u, fan[i]);
        }
        for (std::size_t i = 0; i < w; ++i) {
            set(u, fan[i], shifted[i]);
        }
        set(u, fan[w], d);
    }

    // Swaps c and d along the maximal path from u whose edges alternate d, c, d, ...
    void invert_path(Vertex u, int c, int d)
    {
        std::vector<std::pair<Vertex, Vertex>> path;
        Vertex x = u;
        int want = d;
        while (at_[x][want] >= 0) {
            const auto y = static_cast<Vertex>(at_[x][want]);
            path.push_back({x, y});
            x = y;
            want = want == d ? c : d;
        }
        std::vector<int> old;
        for (auto [a, b] : path) {
            old.push_back(get(a, b));
            unset(a, b);
        }
        for (std::size_t i = 0; i < path.size(); ++i) {
            set(path[i].first, path[i].second, old[i] == c ? d : c);
        }
    }

    std::size_t n_;
    int palette_ = 1;
    std::vector<int> colour_;
    std::vector<std::vector<int>> at_;
};

} // namespace detail

/// G(n, p) sample, pairs visited in lexicographic order, then properly
/// coloured by first-fit (greedy) or by fan recolouring (at most Delta + 1
/// colours).
inline ColouredGraph gen_random_proper(std::size_t n, double p, ColouringRule rule, std::uint64_t seed)
{
    if (!(p > 0 && p <= 1)) {
        throw std::invalid_argument("edge probability must lie in (0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::vector<detail::VertexPair> pairs;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) {
                pairs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
            }
        }
    }
    if (rule == ColouringRule::greedy) {
        return detail::greedy_colouring(n, pairs);
    }
    return detail::FanColourer(n, pairs).graph(pairs);
}

/// K_n with every edge its own colour.
inline ColouredGraph gen_rainbow_complete(std::size_t n)
{
    if (n < 2) {
        throw std::invalid_argument("rainbow-complete graph needs n >= 2");
    }
    std::vector<Edge> edges;
    Colour c = 0;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            edges.push_back({u, v, c++});
        }
    }
    const auto k = edges.size();
    return ColouredGraph(n, k, std::move(edges));
}

/// K_n (n even) coloured by the round-robin 1-factorization: in round r,
/// vertex n-1 meets r and (r + i) meets (r - i) mod (n - 1).
inline ColouredGraph gen_one_factorized_complete(std::size_t n)
{
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("one-factorization needs an even n >= 2");
    }
    const auto q = static_cast<Vertex>(n - 1);
    std::vector<Edge> edges;
    auto add = [&](Vertex a, Vertex b, Colour c) { edges.push_back({std::min(a, b), std::max(a, b), c}); };
    for (Vertex r = 0; r < q; ++r) {
        add(q, r, r);
        for (Vertex i = 1; i < n / 2; ++i) {
            add((r + i) % q, (r + q - i) % q, r);
        }
    }
    return ColouredGraph(n, q, std::move(edges));
}

enum class GeneratorKind { hypercube, random_proper, rainbow_complete, one_factorized_complete };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::rainbow_complete;
    unsigned m = 0;
    std::size_t n = 0;
    double p = 1;
    ColouringRule rule = ColouringRule::greedy;
    std::uint64_t seed = 0;
};

inline ColouredGraph generate(const GeneratorSpec& s)
{
    switch (s.kind) {
    case GeneratorKind::hypercube: return gen_hypercube(s.m);
    case GeneratorKind::random_proper: return gen_random_proper(s.n, s.p, s.rule, s.seed);
    case GeneratorKind::rainbow_complete: return gen_rainbow_complete(s.n);
    case GeneratorKind::one_factorized_complete: return gen_one_factorized_complete(s.n);
    }
    throw std::invalid_argument("unknown generator");
}

} // namespace rainbow
