#include "switchsched/matching.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace switchsched::matching {

namespace {

std::vector<int> sorted_edge_order(const BipartiteMultigraph& g) {
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ea = g.edges[a];
        const auto& eb = g.edges[b];
        if (ea.left != eb.left) return ea.left < eb.left;
        if (ea.right != eb.right) return ea.right < eb.right;
        if (ea.id != eb.id) return ea.id < eb.id;
        return a < b;
    });
    return order;
}

void check_endpoints(const BipartiteMultigraph& g) {
    for (const auto& e : g.edges)
        if (e.left < 0 || e.left >= g.left || e.right < 0 || e.right >= g.right)
            throw std::invalid_argument("edge endpoint out of range");
}

}  // namespace

Matching max_cardinality_matching(const BipartiteMultigraph& g) {
    check_endpoints(g);
    const int kUnmatched = -1;
    std::vector<std::vector<int>> adj(g.left);  // edge indices, deterministic order
    for (int e : sorted_edge_order(g)) adj[g.edges[e].left].push_back(e);

    std::vector<int> match_l(g.left, kUnmatched);   // left -> edge
    std::vector<int> match_r(g.right, kUnmatched);  // right -> edge
    std::vector<int> layer(g.left);
    const int kInfLayer = std::numeric_limits<int>::max();

    auto bfs = [&]() {
        std::queue<int> q;
        for (int l = 0; l < g.left; ++l) {
            if (match_l[l] == kUnmatched) {
                layer[l] = 0;
                q.push(l);
            } else {
                layer[l] = kInfLayer;
            }
        }
        bool found = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int e : adj[l]) {
                int r = g.edges[e].right;
                int back = match_r[r];
                if (back == kUnmatched) {
                    found = true;
                } else {
                    int l2 = g.edges[back].left;
                    if (layer[l2] == kInfLayer) {
                        layer[l2] = layer[l] + 1;
                        q.push(l2);
                    }
                }
            }
        }
        return found;
    };

    std::function<bool(int)> dfs = [&](int l) -> bool {
        for (int e : adj[l]) {
            int r = g.edges[e].right;
            int back = match_r[r];
            if (back == kUnmatched ||
                (layer[g.edges[back].left] == layer[l] + 1 && dfs(g.edges[back].left))) {
                match_l[l] = e;
                match_r[r] = e;
                return true;
            }
        }
        layer[l] = std::numeric_limits<int>::max();
        return false;
    };

    while (bfs()) {
        for (int l = 0; l < g.left; ++l)
            if (match_l[l] == kUnmatched) dfs(l);
    }

    Matching result;
    for (int l = 0; l < g.left; ++l)
        if (match_l[l] != kUnmatched) result.push_back(match_l[l]);
    std::sort(result.begin(), result.end());
    return result;
}

Matching max_weight_matching(const BipartiteMultigraph& g, const std::vector<double>& weight) {
    check_endpoints(g);
    if (weight.size() != g.edges.size())
        throw std::invalid_argument("weight vector size mismatch");
    for (double w : weight)
        if (!(w >= 0.0) || w == std::numeric_limits<double>::infinity())
            throw std::invalid_argument("weights must be finite and nonnegative");
    if (g.edges.empty()) return {};

    // Best parallel edge per pair; zero profit elsewhere models "leave
    // unmatched", so the square assignment below solves the unrestricted
    // maximum-weight matching.
    int n = std::max(g.left, g.right);
    std::vector<std::vector<double>> profit(n + 1, std::vector<double>(n + 1, 0.0));
    std::vector<std::vector<int>> pick(n, std::vector<int>(n, -1));
    for (int e : sorted_edge_order(g)) {
        const auto& ed = g.edges[e];
        double w = weight[e];
        int& slot = pick[ed.left][ed.right];
        if (slot == -1 || w > weight[slot]) {
            slot = e;
            profit[ed.left + 1][ed.right + 1] = w;
        }
    }

    // Hungarian algorithm on cost = -profit (1-based potentials form).
    const double kBig = std::numeric_limits<double>::max();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> way(n + 1, 0), assigned_row_of_col(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        assigned_row_of_col[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kBig);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = assigned_row_of_col[j0], j1 = 0;
            double delta = kBig;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = -profit[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[assigned_row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (assigned_row_of_col[j0] != 0);
        do {
            int j1 = way[j0];
            assigned_row_of_col[j0] = assigned_row_of_col[j1];
            j0 = j1;
        } while (j0);
    }

    Matching result;
    for (int j = 1; j <= n; ++j) {
        int i = assigned_row_of_col[j];
        if (i == 0) continue;
        int l = i - 1, r = j - 1;
        if (l < g.left && r < g.right && pick[l][r] != -1 && weight[pick[l][r]] > 0.0)
            result.push_back(pick[l][r]);
    }
    std::sort(result.begin(), result.end());
    return result;
}

MatchingSet edge_color_bipartite(const BipartiteMultigraph& g) {
    check_endpoints(g);
    MatchingSet out;
    if (g.edges.empty()) return out;

    std::vector<int> deg_l(g.left, 0), deg_r(g.right, 0);
    for (const auto& e : g.edges) {
        ++deg_l[e.left];
        ++deg_r[e.right];
    }
    int delta = 0;
    for (int d : deg_l) delta = std::max(delta, d);
    for (int d : deg_r) delta = std::max(delta, d);

    // slot[v][c] = edge currently colored c at v, or -1
    std::vector<std::vector<int>> slot_l(g.left, std::vector<int>(delta, -1));
    std::vector<std::vector<int>> slot_r(g.right, std::vector<int>(delta, -1));
    std::vector<int> color(g.edges.size(), -1);

    auto first_free = [&](const std::vector<int>& slots) {
        for (int c = 0; c < static_cast<int>(slots.size()); ++c)
            if (slots[c] == -1) return c;
        return -1;
    };

    for (int e : sorted_edge_order(g)) {
        int u = g.edges[e].left, v = g.edges[e].right;
        int a = first_free(slot_l[u]);
        int b = first_free(slot_r[v]);
        if (a != b && slot_r[v][a] != -1) {
            // Swap colors a and b along the alternating chain starting at v.
            // The chain cannot reach u (a parity argument: it would have to
            // arrive on color a, which is free at u), so a ends free at both.
            std::vector<int> chain;
            int cur = v;
            bool on_right = true;
            int want = a;
            while (true) {
                int f = on_right ? slot_r[cur][want] : slot_l[cur][want];
                if (f == -1) break;
                chain.push_back(f);
                cur = on_right ? g.edges[f].left : g.edges[f].right;
                on_right = !on_right;
                want = want == a ? b : a;
            }
            for (int f : chain) {
                slot_l[g.edges[f].left][color[f]] = -1;
                slot_r[g.edges[f].right][color[f]] = -1;
            }
            for (int f : chain) {
                color[f] = color[f] == a ? b : a;
                slot_l[g.edges[f].left][color[f]] = f;
                slot_r[g.edges[f].right][color[f]] = f;
            }
        } else if (a != b) {
            // a is free at v as well; use it directly.
        }
        color[e] = a;
        slot_l[u][a] = e;
        slot_r[v][a] = e;
    }

    out.matchings.assign(delta, {});
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        out.matchings[color[e]].push_back(e);
    for (auto& m : out.matchings) std::sort(m.begin(), m.end());
    return out;
}

UnitExpansion expand_to_unit_graph(const BipartiteMultigraph& g,
                                   const std::vector<long long>& left_capacity,
                                   const std::vector<long long>& right_capacity) {
    check_endpoints(g);
    if (static_cast<int>(left_capacity.size()) != g.left ||
        static_cast<int>(right_capacity.size()) != g.right)
        throw std::invalid_argument("capacity vector size mismatch");
    UnitExpansion out;
    std::vector<int> first_l(g.left), first_r(g.right);
    for (int v = 0; v < g.left; ++v) {
        if (left_capacity[v] < 1) throw std::invalid_argument("capacity must be positive");
        first_l[v] = static_cast<int>(out.left_origin.size());
        for (long long c = 0; c < left_capacity[v]; ++c) out.left_origin.push_back(v);
    }
    for (int v = 0; v < g.right; ++v) {
        if (right_capacity[v] < 1) throw std::invalid_argument("capacity must be positive");
        first_r[v] = static_cast<int>(out.right_origin.size());
        for (long long c = 0; c < right_capacity[v]; ++c) out.right_origin.push_back(v);
    }
    out.graph.left = static_cast<int>(out.left_origin.size());
    out.graph.right = static_cast<int>(out.right_origin.size());
    std::vector<long long> next_l(g.left, 0), next_r(g.right, 0);
    for (const auto& e : g.edges) {  // input order drives the round-robin
        int lc = first_l[e.left] + static_cast<int>(next_l[e.left]++ % left_capacity[e.left]);
        int rc = first_r[e.right] + static_cast<int>(next_r[e.right]++ % right_capacity[e.right]);
        out.graph.add_edge(lc, rc, e.id);
    }
    return out;
}

}  // namespace switchsched::matching
