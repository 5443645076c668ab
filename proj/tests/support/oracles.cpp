#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace oracles {

using switchsched::Side;

namespace {

struct SearchSpace {
    const Instance* inst = nullptr;
    std::vector<std::vector<long long>> candidates;  // per flow, sorted
    std::vector<int> order;                          // flows, earliest release first
};

SearchSpace make_space(const Instance& inst) {
    SearchSpace s;
    s.inst = &inst;
    const int n = static_cast<int>(inst.flows.size());
    // A left-shifted optimal schedule places each flow within (number of
    // flows sharing one of its ports) rounds of release: every earlier round
    // must be blocked, and each blocker blocks one round only.
    for (int f = 0; f < n; ++f) {
        long long sharing = 0;
        for (int g = 0; g < n; ++g)
            if (g != f &&
                (inst.flows[g].src == inst.flows[f].src || inst.flows[g].dst == inst.flows[f].dst))
                ++sharing;
        std::vector<long long> cand;
        for (long long t = inst.flows[f].release; t <= inst.flows[f].release + sharing; ++t)
            cand.push_back(t);
        s.candidates.push_back(std::move(cand));
    }
    s.order.resize(n);
    std::iota(s.order.begin(), s.order.end(), 0);
    std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
        return inst.flows[a].release < inst.flows[b].release;
    });
    return s;
}

// Depth-first search over assignments with incremental load tracking and a
// simple remaining-cost bound for the total-response variant.
template <class Cost>
void search(const SearchSpace& s, size_t depth, std::map<std::pair<int, long long>, long long>& load,
            long long partial, long long& best, Cost&& cost_of) {
    const Instance& inst = *s.inst;
    // every unassigned flow still adds at least one round of response
    if (partial + static_cast<long long>(s.order.size() - depth) >= best) return;
    if (depth == s.order.size()) {
        best = partial;
        return;
    }
    int f = s.order[depth];
    const auto& fl = inst.flows[f];
    int pin = inst.sw.flat({Side::Input, fl.src});
    int pout = inst.sw.flat({Side::Output, fl.dst});
    for (long long t : s.candidates[f]) {
        auto in_key = std::make_pair(pin, t);
        auto out_key = std::make_pair(pout, t);
        if (load[in_key] + fl.demand > inst.sw.capacity_in[fl.src]) continue;
        if (load[out_key] + fl.demand > inst.sw.capacity_out[fl.dst]) continue;
        load[in_key] += fl.demand;
        load[out_key] += fl.demand;
        search(s, depth + 1, load, cost_of(partial, f, t), best, cost_of);
        load[in_key] -= fl.demand;
        load[out_key] -= fl.demand;
    }
}

}  // namespace

long long brute_min_total_response(const Instance& inst) {
    if (inst.flows.empty()) return 0;
    SearchSpace s = make_space(inst);
    long long best = 0;
    for (size_t f = 0; f < inst.flows.size(); ++f)
        best += s.candidates[f].back() + 1 - inst.flows[f].release;
    ++best;
    std::map<std::pair<int, long long>, long long> load;
    auto cost = [&](long long partial, int f, long long t) {
        return partial + (t + 1 - inst.flows[f].release);
    };
    search(s, 0, load, 0, best, cost);
    return best;
}

long long brute_min_max_response(const Instance& inst) {
    if (inst.flows.empty()) return 0;
    // Least rho admitting a window-feasible exact schedule.
    long long hi = 1;
    SearchSpace s = make_space(inst);
    for (size_t f = 0; f < inst.flows.size(); ++f)
        hi = std::max<long long>(hi, static_cast<long long>(s.candidates[f].size()));
    for (long long rho = 1; rho <= hi; ++rho)
        if (brute_window_schedulable(inst, rho)) return rho;
    return hi;
}

bool brute_tcfs_schedulable(const switchsched::mrt::TcfsInstance& inst) {
    const int n = static_cast<int>(inst.flows.size());
    std::map<std::pair<int, long long>, long long> load;
    std::function<bool(int)> go = [&](int f) -> bool {
        if (f == n) return true;
        const auto& fl = inst.flows[f];
        int pin = inst.sw.flat({Side::Input, fl.src});
        int pout = inst.sw.flat({Side::Output, fl.dst});
        for (long long t : fl.active) {
            auto in_key = std::make_pair(pin, t);
            auto out_key = std::make_pair(pout, t);
            if (load[in_key] + fl.demand > inst.sw.capacity_in[fl.src]) continue;
            if (load[out_key] + fl.demand > inst.sw.capacity_out[fl.dst]) continue;
            load[in_key] += fl.demand;
            load[out_key] += fl.demand;
            if (go(f + 1)) return true;
            load[in_key] -= fl.demand;
            load[out_key] -= fl.demand;
        }
        return false;
    };
    return go(0);
}

bool brute_window_schedulable(const Instance& inst, long long rho) {
    switchsched::mrt::TcfsInstance tcfs =
        switchsched::mrt::TcfsInstance::from_release_windows(inst, rho);
    return brute_tcfs_schedulable(tcfs);
}

bool rtt_satisfiable(const switchsched::gen::RttInstance& rtt) {
    rtt.validate();
    const int m = rtt.teachers();
    // Coverage forces |classes| lessons into |hours| available rounds, one
    // per round, so teacher i realizes a bijection hours -> classes.
    std::vector<std::vector<int>> hour_perm(m);  // chosen class per hour slot
    std::set<std::pair<int, int>> busy;          // (class, hour)
    std::function<bool(int)> go = [&](int i) -> bool {
        if (i == m) return true;
        std::vector<int> cls = rtt.classes[i];
        std::sort(cls.begin(), cls.end());
        do {
            bool ok = true;
            for (size_t k = 0; k < cls.size() && ok; ++k)
                if (busy.count({cls[k], rtt.hours[i][k]})) ok = false;
            if (ok) {
                for (size_t k = 0; k < cls.size(); ++k) busy.insert({cls[k], rtt.hours[i][k]});
                if (go(i + 1)) return true;
                for (size_t k = 0; k < cls.size(); ++k) busy.erase({cls[k], rtt.hours[i][k]});
            }
        } while (std::next_permutation(cls.begin(), cls.end()));
        return false;
    };
    return go(0);
}

long long brute_max_matching_size(const switchsched::matching::BipartiteMultigraph& g) {
    long long best = 0;
    std::vector<char> used_l(g.left, 0), used_r(g.right, 0);
    std::function<void(size_t, long long)> go = [&](size_t e, long long size) {
        best = std::max(best, size);
        if (e == g.edges.size()) return;
        go(e + 1, size);
        const auto& ed = g.edges[e];
        if (!used_l[ed.left] && !used_r[ed.right]) {
            used_l[ed.left] = used_r[ed.right] = 1;
            go(e + 1, size + 1);
            used_l[ed.left] = used_r[ed.right] = 0;
        }
    };
    go(0, 0);
    return best;
}

double brute_max_matching_weight(const switchsched::matching::BipartiteMultigraph& g,
                                 const std::vector<double>& weight) {
    double best = 0.0;
    std::vector<char> used_l(g.left, 0), used_r(g.right, 0);
    std::function<void(size_t, double)> go = [&](size_t e, double w) {
        best = std::max(best, w);
        if (e == g.edges.size()) return;
        go(e + 1, w);
        const auto& ed = g.edges[e];
        if (!used_l[ed.left] && !used_r[ed.right]) {
            used_l[ed.left] = used_r[ed.right] = 1;
            go(e + 1, w + weight[e]);
            used_l[ed.left] = used_r[ed.right] = 0;
        }
    };
    go(0, 0.0);
    return best;
}

}  // namespace oracles
