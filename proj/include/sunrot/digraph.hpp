#pragma once

// Small exact-arithmetic digraph toolkit shared by the covering-graph
// analysis: Tarjan components, Karp minimum/maximum mean cycle with an
// explicit witness cycle, and brute-force simple-cycle enumeration used as
// an oracle on small graphs.

#include "sunrot/rational.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sunrot {

struct DiEdge {
    int from, to;
    long long w;
};

struct Digraph {
    int n = 0;
    std::vector<DiEdge> edges;
    std::vector<std::vector<int>> out;  // edge indices per vertex

    explicit Digraph(int n_) : n(n_), out(n_) {}
    void add_edge(int u, int v, long long w) {
        out.at(u).push_back(static_cast<int>(edges.size()));
        edges.push_back({u, v, w});
    }
};

// Component id per vertex plus component count. Ids are assigned in
// completion order (every edge goes from a higher or equal id to a lower
// or equal one... no ordering promise is made beyond determinism).
inline std::pair<std::vector<int>, int> tarjan_scc(const Digraph& g) {
    std::vector<int> idx(g.n, -1), low(g.n, 0), comp(g.n, -1);
    std::vector<char> on_stack(g.n, 0);
    std::vector<int> stk;
    int next_index = 0, next_comp = 0;

    struct Frame {
        int v;
        size_t ei;
    };
    for (int root = 0; root < g.n; ++root) {
        if (idx[root] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        idx[root] = low[root] = next_index++;
        stk.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.ei < g.out[f.v].size()) {
                int to = g.edges[g.out[f.v][f.ei++]].to;
                if (idx[to] == -1) {
                    idx[to] = low[to] = next_index++;
                    stk.push_back(to);
                    on_stack[to] = 1;
                    call.push_back({to, 0});
                } else if (on_stack[to]) {
                    low[f.v] = std::min(low[f.v], idx[to]);
                }
            } else {
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == idx[v]) {
                    for (;;) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[w] = 0;
                        comp[w] = next_comp;
                        if (w == v) break;
                    }
                    ++next_comp;
                }
            }
        }
    }
    return {comp, next_comp};
}

struct MeanCycle {
    Rat mean;
    std::vector<int> cycle;  // closed: front() == back()
};

// Karp's minimum (or maximum) mean cycle over the subgraph induced by
// `inside`, which must be strongly connected (true for a Tarjan component).
// Returns nullopt when the subgraph has no edge, hence no cycle. The witness
// cycle is recovered from shortest-path potentials for the reduced weights:
// every cycle of the tight subgraph attains the optimum mean.
inline std::optional<MeanCycle> mean_cycle(const Digraph& g,
                                           const std::vector<char>& inside,
                                           bool maximize) {
    std::vector<int> verts;
    for (int v = 0; v < g.n; ++v)
        if (inside[v]) verts.push_back(v);
    std::vector<int> pos(g.n, -1);
    for (size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    std::vector<std::pair<int, std::pair<int, long long>>> es;  // (to,(from,w))
    for (const auto& e : g.edges)
        if (inside[e.from] && inside[e.to])
            es.push_back({pos[e.to], {pos[e.from], maximize ? -e.w : e.w}});
    int n = static_cast<int>(verts.size());
    if (n == 0 || es.empty()) return std::nullopt;

    constexpr long long NONE = std::numeric_limits<long long>::min();
    std::vector<std::vector<long long>> d(
        n + 1, std::vector<long long>(n, NONE));
    d[0][0] = 0;  // source: verts[0]; strong connectivity reaches every cycle
    for (int k = 1; k <= n; ++k)
        for (const auto& [to, fw] : es) {
            auto [from, w] = fw;
            if (d[k - 1][from] == NONE) continue;
            long long cand = d[k - 1][from] + w;
            if (d[k][to] == NONE || cand < d[k][to]) d[k][to] = cand;
        }

    std::optional<Rat> best;
    for (int v = 0; v < n; ++v) {
        if (d[n][v] == NONE) continue;
        std::optional<Rat> worst;
        for (int k = 0; k < n; ++k) {
            if (d[k][v] == NONE) continue;
            Rat cand(d[n][v] - d[k][v], static_cast<long long>(n - k));
            if (!worst || cand > *worst) worst = cand;
        }
        if (worst && (!best || *worst < *best)) best = *worst;
    }
    if (!best) return std::nullopt;  // no cycle through the subgraph
    Rat lambda = *best;

    // Shortest-path potentials for the reduced weights w - lambda: no cycle
    // is negative, so n rounds of relaxation reach a fixed point.
    std::vector<Rat> phi(n, Rat(0));
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        for (const auto& [to, fw] : es) {
            auto [from, w] = fw;
            Rat cand = phi[from] + Rat(w) - lambda;
            if (cand < phi[to]) {
                phi[to] = cand;
                changed = true;
            }
        }
        if (!changed) break;
        if (round == n)
            throw std::logic_error("mean cycle potentials failed to settle");
    }

    // Any cycle made of tight edges has mean exactly lambda.
    std::vector<std::vector<int>> tight(n);
    for (const auto& [to, fw] : es) {
        auto [from, w] = fw;
        if (phi[from] + Rat(w) - lambda == phi[to]) tight[from].push_back(to);
    }
    std::vector<int> color(n, 0), path;
    std::vector<size_t> it(n, 0);
    std::vector<int> cyc;
    for (int s = 0; s < n && cyc.empty(); ++s) {
        if (color[s] != 0) continue;
        path.clear();
        path.push_back(s);
        color[s] = 1;
        while (!path.empty() && cyc.empty()) {
            int v = path.back();
            if (it[v] < tight[v].size()) {
                int to = tight[v][it[v]++];
                if (color[to] == 1) {
                    auto at = std::find(path.begin(), path.end(), to);
                    cyc.assign(at, path.end());
                    cyc.push_back(to);
                } else if (color[to] == 0) {
                    color[to] = 1;
                    path.push_back(to);
                }
            } else {
                color[v] = 2;
                path.pop_back();
            }
        }
    }
    if (cyc.empty())
        throw std::logic_error("tight subgraph lost the optimal cycle");
    MeanCycle res;
    res.mean = maximize ? -lambda : lambda;
    for (int v : cyc) res.cycle.push_back(verts[v]);
    return res;
}

// Every simple cycle (distinct vertices, closed vertex list) of the
// subgraph induced by `inside`. Refuses graphs with more than max_verts
// inside vertices: this is an oracle for small cases only.
inline std::vector<std::vector<int>> simple_cycles(
    const Digraph& g, const std::vector<char>& inside, int max_verts = 12) {
    std::vector<int> verts;
    for (int v = 0; v < g.n; ++v)
        if (inside[v]) verts.push_back(v);
    if (static_cast<int>(verts.size()) > max_verts)
        throw std::domain_error("cycle enumeration refused: too many vertices");
    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<char> used(g.n, 0);

    // Cycles are reported with their smallest vertex first; the DFS never
    // descends below the start vertex, so each cycle appears exactly once.
    auto dfs = [&](auto&& self, int start, int v) -> void {
        for (int ei : g.out[v]) {
            int to = g.edges[ei].to;
            if (!inside[to] || to < start) continue;
            if (to == start) {
                auto c = path;
                c.push_back(start);
                cycles.push_back(std::move(c));
                continue;
            }
            if (used[to]) continue;
            used[to] = 1;
            path.push_back(to);
            self(self, start, to);
            path.pop_back();
            used[to] = 0;
        }
    };
    for (int s : verts) {
        path.assign(1, s);
        used[s] = 1;
        dfs(dfs, s, s);
        used[s] = 0;
    }
    return cycles;
}

}  // namespace sunrot
