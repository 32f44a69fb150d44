#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace rainbow {

/// Dinic max-flow on a small dense-ish network. Capacities are 128-bit so the
/// density network's m*n*q source arcs never overflow.
class MaxFlow {
public:
    using Capacity = __int128;

    explicit MaxFlow(std::size_t nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

    void add_arc(std::size_t from, std::size_t to, Capacity cap, Capacity reverse_cap = 0)
    {
        arcs_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(arcs_.size() - 1);
        arcs_.push_back({from, head_[to], reverse_cap});
        head_[to] = static_cast<int>(arcs_.size() - 1);
    }

    Capacity run(std::size_t source, std::size_t sink)
    {
        Capacity total = 0;
        while (bfs(source, sink)) {
            std::copy(head_.begin(), head_.end(), iter_.begin());
            while (auto pushed = dfs(source, sink, std::numeric_limits<Capacity>::max())) {
                total += pushed;
            }
        }
        return total;
    }

    /// Nodes reachable from `source` in the residual network after run():
    /// the source side of the inclusion-minimal minimum cut.
    std::vector<char> source_side(std::size_t source) const
    {
        std::vector<char> seen(head_.size(), 0);
        std::vector<std::size_t> stack{source};
        seen[source] = 1;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (int a = head_[x]; a != -1; a = arcs_[a].next) {
                if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = 1;
                    stack.push_back(arcs_[a].to);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        std::size_t to;
        int next;
        Capacity cap;
    };

    bool bfs(std::size_t source, std::size_t sink)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[source] = 0;
        q.push(source);
        while (!q.empty()) {
            auto x = q.front();
            q.pop();
            for (int a = head_[x]; a != -1; a = arcs_[a].next) {
                if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[x] + 1;
                    q.push(arcs_[a].to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    Capacity dfs(std::size_t x, std::size_t sink, Capacity limit)
    {
        if (x == sink) {
            return limit;
        }
        for (int& a = iter_[x]; a != -1; a = arcs_[a].next) {
            auto& arc = arcs_[a];
            if (arc.cap > 0 && level_[arc.to] == level_[x] + 1) {
                if (auto got = dfs(arc.to, sink, std::min(limit, arc.cap))) {
                    arc.cap -= got;
                    arcs_[a ^ 1].cap += got;
                    return got;
                }
            }
        }
        return 0;
    }

    std::vector<Arc> arcs_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

} // namespace rainbow
