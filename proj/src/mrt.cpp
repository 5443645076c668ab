#include "switchsched/mrt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <stdexcept>

namespace switchsched::mrt {

namespace {
constexpr double kIntTol = 1e-7;
}

long long TcfsInstance::d_max() const {
    long long d = 0;
    for (const auto& f : flows) d = std::max(d, f.demand);
    return d;
}

std::vector<long long> TcfsInstance::all_rounds() const {
    std::set<long long> rounds;
    for (const auto& f : flows) rounds.insert(f.active.begin(), f.active.end());
    return {rounds.begin(), rounds.end()};
}

void TcfsInstance::validate() const {
    sw.validate();
    std::set<std::string> ids;
    for (const auto& f : flows) {
        if (!ids.insert(f.id).second) throw std::invalid_argument("duplicate flow id: " + f.id);
        if (f.src < 0 || f.src >= sw.inputs || f.dst < 0 || f.dst >= sw.outputs)
            throw std::invalid_argument("flow " + f.id + ": endpoint out of range");
        if (f.demand < 1 || f.demand > std::min(sw.capacity_in[f.src], sw.capacity_out[f.dst]))
            throw std::invalid_argument("flow " + f.id + ": demand out of range");
        if (f.active.empty()) throw std::invalid_argument("flow " + f.id + ": empty active set");
        for (size_t k = 0; k < f.active.size(); ++k) {
            if (f.active[k] < 0) throw std::invalid_argument("flow " + f.id + ": negative round");
            if (k > 0 && f.active[k] <= f.active[k - 1])
                throw std::invalid_argument("flow " + f.id + ": active set not sorted/unique");
        }
    }
}

TcfsInstance TcfsInstance::from_release_windows(const Instance& inst, long long rho) {
    if (rho < 1) throw std::invalid_argument("response window must be positive");
    TcfsInstance out;
    out.sw = inst.sw;
    for (const auto& f : inst.flows) {
        TcfsFlow tf{f.id, f.src, f.dst, f.demand, {}};
        for (long long t = f.release; t < f.release + rho; ++t) tf.active.push_back(t);
        out.flows.push_back(std::move(tf));
    }
    return out;
}

TcfsInstance TcfsInstance::from_active_sets(const Instance& inst) {
    TcfsInstance out;
    out.sw = inst.sw;
    for (const auto& f : inst.flows) {
        if (!f.active) throw std::invalid_argument("flow " + f.id + " carries no active set");
        out.flows.push_back(TcfsFlow{f.id, f.src, f.dst, f.demand, *f.active});
    }
    return out;
}

TcfsLp build_tcfs_lp(const TcfsInstance& inst) {
    TcfsLp out;
    const int n = static_cast<int>(inst.flows.size());
    out.var.resize(n);
    std::map<std::pair<int, long long>, std::vector<std::pair<int, long long>>> port_round;
    for (int f = 0; f < n; ++f) {
        const auto& fl = inst.flows[f];
        for (size_t k = 0; k < fl.active.size(); ++k) {
            int col = out.model.add_variable(0.0);
            out.var[f].push_back(col);
            long long t = fl.active[k];
            port_round[{inst.sw.flat({Side::Input, fl.src}), t}].emplace_back(col, fl.demand);
            port_round[{inst.sw.flat({Side::Output, fl.dst}), t}].emplace_back(col, fl.demand);
        }
    }
    for (const auto& [key, terms] : port_round) {
        long long cap = inst.sw.capacity(inst.sw.unflat(key.first));
        int row = out.model.add_row(lp::Relation::LessEq, static_cast<double>(cap));
        out.capacity_row_key.push_back(key);
        for (const auto& [col, d] : terms)
            out.model.add_term(row, col, static_cast<double>(d));
    }
    out.capacity_rows = out.model.num_rows();
    for (int f = 0; f < n; ++f) {
        int row = out.model.add_row(lp::Relation::Equal, 1.0);
        for (int col : out.var[f]) out.model.add_term(row, col, 1.0);
    }
    return out;
}

RoundedAssignment karp_round(const TcfsInstance& inst, const TcfsFraction& frac) {
    inst.validate();
    const int n = static_cast<int>(inst.flows.size());
    if (static_cast<int>(frac.x.size()) != n)
        throw std::invalid_argument("fraction does not cover the instance");
    const long long dmax = std::max<long long>(inst.d_max(), 1);
    const double delta = 2.0 * static_cast<double>(dmax);

    struct VarState {
        double x = 0.0;
        int fixed = -1;  // -1 fractional, else 0/1
    };
    std::vector<std::vector<VarState>> state(n);
    for (int f = 0; f < n; ++f) {
        if (frac.x[f].size() != inst.flows[f].active.size())
            throw std::invalid_argument("fraction shape mismatch for flow " + inst.flows[f].id);
        double sum = 0.0;
        for (double v : frac.x[f]) {
            if (v < -1e-7 || v > 1.0 + 1e-7)
                throw std::invalid_argument("fraction outside [0,1]");
            state[f].push_back({v, -1});
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-6)
            throw std::invalid_argument("fraction rows must sum to one");
    }

    // Active capacity rows, keyed by (flat port, round).
    std::map<std::pair<int, long long>, std::vector<std::pair<int, int>>> row_vars;
    for (int f = 0; f < n; ++f)
        for (size_t k = 0; k < inst.flows[f].active.size(); ++k) {
            long long t = inst.flows[f].active[k];
            row_vars[{inst.sw.flat({Side::Input, inst.flows[f].src}), t}].emplace_back(f, k);
            row_vars[{inst.sw.flat({Side::Output, inst.flows[f].dst}), t}].emplace_back(f, k);
        }
    std::set<std::pair<int, long long>> active_rows;
    for (const auto& [key, vars] : row_vars) active_rows.insert(key);

    auto fix_integrals = [&]() {
        int changed = 0;
        for (int f = 0; f < n; ++f) {
            int one_at = -1;
            for (size_t k = 0; k < state[f].size(); ++k) {
                auto& vs = state[f][k];
                if (vs.fixed >= 0) {
                    if (vs.fixed == 1) one_at = static_cast<int>(k);
                    continue;
                }
                if (vs.x <= kIntTol) {
                    vs.fixed = 0;
                    vs.x = 0.0;
                    ++changed;
                } else if (vs.x >= 1.0 - kIntTol) {
                    vs.fixed = 1;
                    vs.x = 1.0;
                    one_at = static_cast<int>(k);
                    ++changed;
                }
            }
            if (one_at >= 0) {
                for (auto& vs : state[f])
                    if (vs.fixed < 0) {
                        vs.fixed = 0;
                        vs.x = 0.0;
                        ++changed;
                    }
            }
        }
        return changed;
    };

    auto drop_safe_rows = [&]() {
        int dropped = 0;
        for (auto it = active_rows.begin(); it != active_rows.end();) {
            long long cap = inst.sw.capacity(inst.sw.unflat(it->first));
            double load = 0.0, frac_sum = 0.0;
            for (const auto& [f, k] : row_vars[*it]) {
                const auto& vs = state[f][k];
                double d = static_cast<double>(inst.flows[f].demand);
                load += d * vs.x;
                if (vs.fixed < 0) frac_sum += d;
            }
            bool frac_slack = std::fabs(load - std::llround(load)) > kIntTol;
            double slack = static_cast<double>(cap) - load;
            // After any 0/1 completion the row's load stays strictly below
            // load + frac_sum, so it can never be violated by 2 d_max.
            if (frac_sum + (frac_slack ? 1.0 : 0.0) <= slack + delta + 1e-9) {
                it = active_rows.erase(it);
                ++dropped;
            } else {
                ++it;
            }
        }
        return dropped;
    };

    auto count_fractional = [&]() {
        int c = 0;
        for (int f = 0; f < n; ++f)
            for (const auto& vs : state[f])
                if (vs.fixed < 0) ++c;
        return c;
    };

    int total_vars = 0;
    for (const auto& fl : inst.flows) total_vars += static_cast<int>(fl.active.size());
    fix_integrals();
    drop_safe_rows();
    int guard = 0;
    while (count_fractional() > 0) {
        if (++guard > total_vars + static_cast<int>(row_vars.size()) + 4)
            throw std::runtime_error("rounding failed to make progress (basis bug)");
        // Re-solve the reduced system for a fresh vertex.
        lp::LpModel model;
        std::map<std::pair<int, int>, int> col_of;
        for (int f = 0; f < n; ++f)
            for (size_t k = 0; k < state[f].size(); ++k)
                if (state[f][k].fixed < 0)
                    col_of[{f, static_cast<int>(k)}] = model.add_variable(0.0, 1.0);
        for (int f = 0; f < n; ++f) {
            bool any = false;
            for (const auto& vs : state[f]) any = any || vs.fixed < 0;
            if (!any) continue;
            int row = model.add_row(lp::Relation::Equal, 1.0);
            for (size_t k = 0; k < state[f].size(); ++k)
                if (state[f][k].fixed < 0)
                    model.add_term(row, col_of[{f, static_cast<int>(k)}], 1.0);
        }
        for (const auto& key : active_rows) {
            double fixed_load = 0.0;
            bool any = false;
            for (const auto& [f, k] : row_vars[key]) {
                if (state[f][k].fixed == 1)
                    fixed_load += static_cast<double>(inst.flows[f].demand);
                any = any || state[f][k].fixed < 0;
            }
            if (!any) continue;
            long long cap = inst.sw.capacity(inst.sw.unflat(key.first));
            int row = model.add_row(lp::Relation::LessEq, static_cast<double>(cap) - fixed_load);
            for (const auto& [f, k] : row_vars[key])
                if (state[f][k].fixed < 0)
                    model.add_term(row, col_of[{f, k}],
                                   static_cast<double>(inst.flows[f].demand));
        }
        lp::BasicSolution sol = lp::solve_min(model);
        if (sol.status != lp::Status::Optimal)
            throw std::runtime_error("reduced rounding system unsolvable (internal bug)");
        for (const auto& [key, col] : col_of) state[key.first][key.second].x = sol.x[col];
        int changed = fix_integrals();
        changed += drop_safe_rows();
        if (changed == 0)
            throw std::runtime_error("rounding failed to make progress (basis bug)");
    }

    RoundedAssignment out;
    out.d_max = inst.d_max();
    for (int f = 0; f < n; ++f) {
        int one_at = -1;
        for (size_t k = 0; k < state[f].size(); ++k) {
            if (state[f][k].fixed == 1) {
                if (one_at >= 0)
                    throw std::logic_error("flow rounded into two rounds: " + inst.flows[f].id);
                one_at = static_cast<int>(k);
            }
        }
        if (one_at < 0)
            throw std::logic_error("flow left unassigned by rounding: " + inst.flows[f].id);
        out.round_of[inst.flows[f].id] = inst.flows[f].active[one_at];
    }

    std::map<std::pair<int, long long>, long long> load;
    for (int f = 0; f < n; ++f) {
        long long t = out.round_of.at(inst.flows[f].id);
        load[{inst.sw.flat({Side::Input, inst.flows[f].src}), t}] += inst.flows[f].demand;
        load[{inst.sw.flat({Side::Output, inst.flows[f].dst}), t}] += inst.flows[f].demand;
    }
    for (const auto& [key, used] : load) {
        long long cap = inst.sw.capacity(inst.sw.unflat(key.first));
        if (used > cap)
            out.overloads.push_back({inst.sw.unflat(key.first), key.second, used - cap});
        out.max_overload = std::max(out.max_overload, used - cap);
    }
    out.max_overload = std::max<long long>(out.max_overload, 0);
    if (out.max_overload > 2 * dmax - 1)
        throw std::logic_error("rounded overload exceeded 2 d_max - 1");
    return out;
}

TcfsOutcome solve_tcfs(const TcfsInstance& inst) {
    inst.validate();
    TcfsOutcome out;
    if (inst.flows.empty()) {
        out.feasible = true;
        out.assignment = RoundedAssignment{};
        return out;
    }
    TcfsLp tl = build_tcfs_lp(inst);
    lp::BasicSolution sol = lp::solve_min(tl.model);
    if (sol.status == lp::Status::Infeasible) return out;
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("relaxation solve failed: " + sol.note);
    TcfsFraction frac;
    frac.x.resize(inst.flows.size());
    for (size_t f = 0; f < inst.flows.size(); ++f)
        for (int col : tl.var[f]) frac.x[f].push_back(sol.x[col]);
    out.feasible = true;
    out.assignment = karp_round(inst, frac);
    return out;
}

IntegralSchedule fifo_schedule(const Instance& inst) {
    std::vector<int> order(inst.flows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (inst.flows[a].release != inst.flows[b].release)
            return inst.flows[a].release < inst.flows[b].release;
        return inst.flows[a].id < inst.flows[b].id;
    });
    std::map<std::pair<int, long long>, long long> load;
    IntegralSchedule sched;
    for (int f : order) {
        const auto& fl = inst.flows[f];
        int pin = inst.sw.flat({Side::Input, fl.src});
        int pout = inst.sw.flat({Side::Output, fl.dst});
        long long cin = inst.sw.capacity_in[fl.src], cout = inst.sw.capacity_out[fl.dst];
        long long t = fl.release;
        while (load[{pin, t}] + fl.demand > cin || load[{pout, t}] + fl.demand > cout) ++t;
        load[{pin, t}] += fl.demand;
        load[{pout, t}] += fl.demand;
        sched.assignment[fl.id] = t;
    }
    return sched;
}

namespace {

// Necessary condition for the window relaxation at a given rho: flows whose
// whole window sits inside an interval must fit the interval's capacity.
bool volume_feasible(const Instance& inst, long long rho) {
    auto by_port = inst.flows_by_port();
    long long max_t = 0;
    for (const auto& f : inst.flows) max_t = std::max(max_t, f.release + rho - 1);
    for (int p = 0; p < inst.sw.total_ports(); ++p) {
        if (by_port[p].empty()) continue;
        long long cap = inst.sw.capacity(inst.sw.unflat(p));
        // volume of flows forced into [t1, t2]: release >= t1 and release + rho - 1 <= t2
        std::vector<std::pair<long long, long long>> rel;  // (release, demand)
        for (int f : by_port[p]) rel.emplace_back(inst.flows[f].release, inst.flows[f].demand);
        std::sort(rel.begin(), rel.end());
        std::vector<long long> prefix(rel.size() + 1, 0);
        for (size_t i = 0; i < rel.size(); ++i) prefix[i + 1] = prefix[i] + rel[i].second;
        std::vector<long long> starts;
        for (const auto& [r, d] : rel) starts.push_back(r);
        for (size_t i = 0; i < rel.size(); ++i) {
            long long t1 = rel[i].first;
            for (size_t j = i; j < rel.size(); ++j) {
                long long t2 = rel[j].first + rho - 1;
                // forced volume: releases in [t1, t2 - rho + 1]
                long long hi_release = t2 - rho + 1;
                auto lo = std::lower_bound(starts.begin(), starts.end(), t1) - starts.begin();
                auto hi = std::upper_bound(starts.begin(), starts.end(), hi_release) -
                          starts.begin();
                if (hi <= lo) continue;
                long long volume = prefix[hi] - prefix[lo];
                if (volume > cap * (t2 - t1 + 1)) return false;
            }
        }
    }
    return true;
}

// Dinic max-flow; used for a single-commodity relaxation of the window LP.
class MaxFlow {
  public:
    explicit MaxFlow(int nodes) : head_(nodes, -1) {}

    void add_edge(int from, int to, long long cap) {
        edges_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    long long run(int s, int t) {
        long long total = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            long long f;
            while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) total += f;
        }
        return total;
    }

  private:
    struct Edge {
        int to, next;
        long long cap;
    };
    std::vector<Edge> edges_;
    std::vector<int> head_, iter_, level_;

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::vector<int> queue{s};
        level_[s] = 0;
        for (size_t q = 0; q < queue.size(); ++q) {
            int u = queue[q];
            for (int e = head_[u]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    queue.push_back(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    long long dfs(int u, int t, long long limit) {
        if (u == t) return limit;
        for (int& e = iter_[u]; e != -1; e = edges_[e].next) {
            int v = edges_[e].to;
            if (edges_[e].cap <= 0 || level_[v] != level_[u] + 1) continue;
            long long pushed = dfs(v, t, std::min(limit, edges_[e].cap));
            if (pushed > 0) {
                edges_[e].cap -= pushed;
                edges_[e ^ 1].cap += pushed;
                return pushed;
            }
        }
        return 0;
    }
};

// Single-commodity relaxation: every flow ships d_e units through its two
// port-round nodes, but units merged at an input may leave toward any output
// that some flow pairs with there. Infeasibility of this relaxation therefore
// certifies infeasibility of the window LP; feasibility decides nothing.
bool flow_relaxation_feasible(const TcfsInstance& inst) {
    std::map<std::pair<int, long long>, int> in_node, out_node;
    std::set<std::tuple<int, int, long long>> pair_arcs;
    long long total_demand = 0;
    for (const auto& f : inst.flows) {
        total_demand += f.demand;
        for (long long t : f.active) {
            in_node.emplace(std::make_pair(f.src, t), 0);
            out_node.emplace(std::make_pair(f.dst, t), 0);
            pair_arcs.insert({f.src, f.dst, t});
        }
    }
    // ids: S, T, then flows, then split port-round nodes (two per entry)
    int next = 2 + static_cast<int>(inst.flows.size());
    for (auto& [key, id] : in_node) {
        id = next;
        next += 2;
    }
    for (auto& [key, id] : out_node) {
        id = next;
        next += 2;
    }
    MaxFlow net(next);
    const int kSource = 0, kSink = 1;
    for (auto& [key, id] : in_node)
        net.add_edge(id, id + 1, inst.sw.capacity_in[key.first]);
    for (auto& [key, id] : out_node) {
        net.add_edge(id, id + 1, inst.sw.capacity_out[key.first]);
        net.add_edge(id + 1, kSink, inst.sw.capacity_out[key.first]);
    }
    for (size_t f = 0; f < inst.flows.size(); ++f) {
        const auto& fl = inst.flows[f];
        int fid = 2 + static_cast<int>(f);
        net.add_edge(kSource, fid, fl.demand);
        for (long long t : fl.active)
            net.add_edge(fid, in_node.at({fl.src, t}), fl.demand);
    }
    for (const auto& [p, q, t] : pair_arcs)
        net.add_edge(in_node.at({p, t}) + 1, out_node.at({q, t}),
                     std::numeric_limits<long long>::max() / 4);
    return net.run(kSource, kSink) >= total_demand;
}

// Earliest-fit in deadline order inside the windows; success is an integral
// certificate of relaxation feasibility, so no LP is needed.
bool edf_window_schedulable(const Instance& inst, long long rho) {
    std::vector<int> order(inst.flows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        long long da = inst.flows[a].release + rho, db = inst.flows[b].release + rho;
        if (da != db) return da < db;
        return inst.flows[a].id < inst.flows[b].id;
    });
    std::map<std::pair<int, long long>, long long> load;
    for (int f : order) {
        const auto& fl = inst.flows[f];
        int pin = inst.sw.flat({Side::Input, fl.src});
        int pout = inst.sw.flat({Side::Output, fl.dst});
        bool placed = false;
        for (long long t = fl.release; t < fl.release + rho; ++t) {
            if (load[{pin, t}] + fl.demand > inst.sw.capacity_in[fl.src]) continue;
            if (load[{pout, t}] + fl.demand > inst.sw.capacity_out[fl.dst]) continue;
            load[{pin, t}] += fl.demand;
            load[{pout, t}] += fl.demand;
            placed = true;
            break;
        }
        if (!placed) return false;
    }
    return true;
}

bool lp_window_feasible(const Instance& inst, long long rho) {
    if (edf_window_schedulable(inst, rho)) return true;
    TcfsInstance tcfs = TcfsInstance::from_release_windows(inst, rho);
    if (!flow_relaxation_feasible(tcfs)) return false;
    TcfsLp tl = build_tcfs_lp(tcfs);
    // Assignment rows are structural; capacity rows join on violation, with
    // the rows already overloaded under a uniform window spread seeded in.
    lp::LpModel reordered;
    reordered.cost = tl.model.cost;
    reordered.upper = tl.model.upper;
    for (int r = tl.capacity_rows; r < tl.model.num_rows(); ++r)
        reordered.rows.push_back(tl.model.rows[r]);
    int eager = reordered.num_rows();
    for (int r = 0; r < tl.capacity_rows; ++r) reordered.rows.push_back(tl.model.rows[r]);

    std::map<std::pair<int, long long>, double> uniform_load;
    for (const auto& f : tcfs.flows) {
        double share = static_cast<double>(f.demand) / static_cast<double>(f.active.size());
        for (long long t : f.active) {
            uniform_load[{tcfs.sw.flat({Side::Input, f.src}), t}] += share;
            uniform_load[{tcfs.sw.flat({Side::Output, f.dst}), t}] += share;
        }
    }
    std::vector<int> seeds;
    for (int r = 0; r < tl.capacity_rows; ++r) {
        auto key = tl.capacity_row_key[r];
        auto it = uniform_load.find(key);
        if (it != uniform_load.end() &&
            it->second >= static_cast<double>(tcfs.sw.capacity(tcfs.sw.unflat(key.first))) - 1e-9)
            seeds.push_back(eager + r);
    }
    lp::BasicSolution sol = lp::solve_min_lazy(reordered, eager, seeds);
    if (sol.status == lp::Status::Optimal) return true;
    if (sol.status == lp::Status::Infeasible) return false;
    throw std::runtime_error("window feasibility probe failed: " + sol.note);
}

}  // namespace

long long min_feasible_rho(const Instance& inst, long long max_response_hint) {
    inst.validate();
    if (inst.flows.empty()) return 1;
    long long hi;
    if (max_response_hint > 0) {
        hi = max_response_hint;
    } else {
        hi = response_metrics(inst, fifo_schedule(inst)).maximum;
    }
    long long lo = 1;
    while (lo < hi && !volume_feasible(inst, lo)) ++lo;
    while (lo < hi &&
           !flow_relaxation_feasible(TcfsInstance::from_release_windows(inst, lo)))
        ++lo;
    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (lp_window_feasible(inst, mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

MrtResult solve_mrt(const Instance& inst, bool augment_check) {
    inst.validate();
    MrtResult result;
    if (inst.flows.empty()) {
        result.rho_star = 1;
        return result;
    }
    result.rho_star = min_feasible_rho(inst);
    TcfsInstance tcfs = TcfsInstance::from_release_windows(inst, result.rho_star);
    TcfsOutcome outcome = solve_tcfs(tcfs);
    if (!outcome.feasible)
        throw std::logic_error("window relaxation infeasible at its own threshold");
    result.assignment = *outcome.assignment;

    if (augment_check) {
        long long dmax = inst.d_max();
        Instance windowed = inst;
        for (auto& f : windowed.flows) {
            std::vector<long long> act;
            for (long long t = f.release; t < f.release + result.rho_star; ++t) act.push_back(t);
            f.active = std::move(act);
        }
        IntegralSchedule sched;
        sched.assignment = result.assignment.round_of;
        auto verdict = validate_schedule(windowed, sched, 2 * dmax - 1);
        if (!verdict.valid())
            throw std::logic_error("rounded schedule failed augmented validation: " +
                                   verdict.violations.front().describe());
        if (!lp_window_feasible(inst, result.rho_star + 1))
            throw std::logic_error("feasibility is not monotone above rho_star");
        if (result.rho_star > 1 && lp_window_feasible(inst, result.rho_star - 1))
            throw std::logic_error("rho_star is not the least feasible window");
    }
    return result;
}

}  // namespace switchsched::mrt
