// Copyright 2026 The Mevscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>

#include <mevscope/hunter/hunter.hpp>

namespace mevscope::hunter {

using lifter::AssetId;
using registry::ActionType;

namespace {

    struct Edge {
        std::size_t action;
        std::size_t from;
        std::size_t to;
    };

    struct AssetGraph {
        std::vector<Edge> edges;  // in action order
        std::size_t vertices{0};
    };

    AssetGraph swap_graph(const lifter::TransactionActions& tx) {
        AssetGraph g;
        std::map<AssetId, std::size_t> ids;
        const auto id_of = [&](const AssetId& a) {
            const auto [it, inserted] = ids.emplace(a, ids.size());
            return it->second;
        };
        for (std::size_t i = 0; i < tx.actions.size(); ++i) {
            const auto& a = tx.actions[i];
            if (a.type != ActionType::kSwap) continue;
            const auto* in = a.in_param();
            const auto* out = a.out_param();
            if (in == nullptr || out == nullptr) continue;
            const auto from = id_of(in->asset);
            const auto to = id_of(out->asset);
            g.edges.push_back({i, from, to});
        }
        g.vertices = ids.size();
        return g;
    }

    //! Every edge on one closed trail: balanced degrees and one connected component.
    bool is_eulerian(const AssetGraph& g) {
        if (g.edges.size() < 2) return false;
        std::vector<int> balance(g.vertices, 0);
        std::vector<std::size_t> parent(g.vertices);
        for (std::size_t v = 0; v < g.vertices; ++v) parent[v] = v;
        const auto find = [&](std::size_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& e : g.edges) {
            ++balance[e.from];
            --balance[e.to];
            parent[find(e.from)] = find(e.to);
        }
        if (std::any_of(balance.begin(), balance.end(), [](int b) { return b != 0; })) return false;
        const auto root = find(g.edges.front().from);
        return std::all_of(g.edges.begin(), g.edges.end(), [&](const Edge& e) { return find(e.from) == root; });
    }

    //! Hierholzer's algorithm; the circuit is rotated to open with the first swap.
    std::vector<std::size_t> euler_circuit(const AssetGraph& g) {
        std::vector<std::vector<std::size_t>> out(g.vertices);
        for (std::size_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].from].push_back(e);
        for (auto& adj : out) std::reverse(adj.begin(), adj.end());  // pop_back yields lowest first

        std::vector<std::size_t> circuit;
        std::vector<std::pair<std::size_t, std::optional<std::size_t>>> stack{{g.edges.front().from, std::nullopt}};
        while (!stack.empty()) {
            auto& [v, via] = stack.back();
            if (!out[v].empty()) {
                const auto e = out[v].back();
                out[v].pop_back();
                stack.emplace_back(g.edges[e].to, e);
            } else {
                if (via) circuit.push_back(*via);
                stack.pop_back();
            }
        }
        std::reverse(circuit.begin(), circuit.end());
        const auto first = std::find(circuit.begin(), circuit.end(), std::size_t{0});
        std::rotate(circuit.begin(), first, circuit.end());
        std::vector<std::size_t> actions;
        for (const auto e : circuit) actions.push_back(g.edges[e].action);
        return actions;
    }

    //! First directed cycle found by depth-first search in edge order.
    std::optional<std::vector<std::size_t>> simple_cycle(const AssetGraph& g) {
        std::vector<std::vector<std::size_t>> out(g.vertices);
        for (std::size_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].from].push_back(e);
        enum class Mark { kWhite, kGrey, kBlack };
        std::vector<Mark> mark(g.vertices, Mark::kWhite);
        std::vector<std::size_t> path_edges;

        std::optional<std::vector<std::size_t>> found;
        const auto visit = [&](auto&& self, std::size_t v) -> bool {
            mark[v] = Mark::kGrey;
            for (const auto e : out[v]) {
                const auto w = g.edges[e].to;
                if (mark[w] == Mark::kGrey) {
                    std::vector<std::size_t> cycle{e};
                    for (auto it = path_edges.rbegin(); it != path_edges.rend() && g.edges[cycle.back()].from != w; ++it) {
                        cycle.push_back(*it);
                    }
                    std::reverse(cycle.begin(), cycle.end());
                    std::vector<std::size_t> actions;
                    for (const auto c : cycle) actions.push_back(g.edges[c].action);
                    found = std::move(actions);
                    return true;
                }
                if (mark[w] == Mark::kWhite) {
                    path_edges.push_back(e);
                    if (self(self, w)) return true;
                    path_edges.pop_back();
                }
            }
            mark[v] = Mark::kBlack;
            return false;
        };
        for (const auto& e : g.edges) {
            if (mark[e.from] == Mark::kWhite && visit(visit, e.from)) break;
        }
        return found;
    }

}  // namespace

std::vector<SwapCycle> detect_swap_cycles(const lifter::TransactionActions& tx) {
    const auto g = swap_graph(tx);
    if (g.edges.size() < 2) return {};
    if (is_eulerian(g)) return {SwapCycle{euler_circuit(g), true}};
    if (auto cycle = simple_cycle(g)) return {SwapCycle{std::move(*cycle), false}};
    return {};
}

}  // namespace mevscope::hunter
