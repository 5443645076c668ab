#include "switchsched/art.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "switchsched/matching.hpp"
#include "switchsched/mrt.hpp"

namespace switchsched::art {

namespace {

constexpr double kIntTol = 1e-7;

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

void check_horizon(const Instance& inst, long long horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    for (const auto& f : inst.flows)
        if (f.release + ceil_div(f.demand, inst.kappa(f)) > horizon)
            throw std::invalid_argument("horizon too small: flow " + f.id +
                                        " cannot be completed before it ends");
}

// Shared builder. window_limit[f] (if nonempty) truncates flow f's variable
// range below the horizon; block_rounds > 1 aggregates capacity rows over
// blocks of that many rounds with right side block * c_p.
ArtLp build_impl(const Instance& inst, long long horizon, int block_rounds,
                 const std::vector<long long>& window_limit, double half_term_scale) {
    check_horizon(inst, horizon);
    ArtLp out;
    const int n = static_cast<int>(inst.flows.size());
    out.base.resize(n);
    out.end.resize(n);
    out.first_var.resize(n);
    for (int f = 0; f < n; ++f) {
        const auto& fl = inst.flows[f];
        long long end = horizon;
        if (!window_limit.empty()) end = std::min(end, window_limit[f]);
        end = std::max(end, fl.release + ceil_div(fl.demand, inst.kappa(fl)));
        end = std::min(end, horizon);
        out.base[f] = fl.release;
        out.end[f] = end;
        out.first_var[f] = out.model.num_vars();
        double inv_d = 1.0 / static_cast<double>(fl.demand);
        double half = half_term_scale > 0.0
                          ? half_term_scale
                          : 1.0 / (2.0 * static_cast<double>(inst.kappa(fl)));
        for (long long t = fl.release; t < end; ++t)
            out.model.add_variable(static_cast<double>(t - fl.release) * inv_d + half);
    }
    for (int f = 0; f < n; ++f) {
        int row = out.model.add_row(lp::Relation::GreaterEq,
                                    static_cast<double>(inst.flows[f].demand));
        for (int v = out.first_var[f]; v < out.first_var[f] + (out.end[f] - out.base[f]); ++v)
            out.model.add_term(row, v, 1.0);
    }
    out.request_rows = out.model.num_rows();

    long long max_end = 0;
    for (int f = 0; f < n; ++f) max_end = std::max(max_end, out.end[f]);
    auto by_port = inst.flows_by_port();
    for (int p = 0; p < inst.sw.total_ports(); ++p) {
        if (by_port[p].empty()) continue;
        long long cap = inst.sw.capacity(inst.sw.unflat(p));
        for (long long t0 = 0; t0 < max_end; t0 += block_rounds) {
            long long t1 = std::min<long long>(t0 + block_rounds, max_end);
            int row = -1;
            for (int f : by_port[p]) {
                long long lo = std::max(out.base[f], t0);
                long long hi = std::min(out.end[f], t1);
                for (long long t = lo; t < hi; ++t) {
                    if (row < 0) {
                        row = out.model.add_row(lp::Relation::LessEq,
                                                static_cast<double>(block_rounds * cap));
                        out.capacity_row_key.emplace_back(p, t0);
                    }
                    out.model.add_term(row, out.var(f, t), 1.0);
                }
            }
        }
    }
    return out;
}

}  // namespace

ArtLp build_art_lp(const Instance& inst, long long horizon) {
    return build_impl(inst, horizon, 1, {}, 0.0);
}

ArtLp build_lp0(const Instance& inst, long long horizon) {
    return build_impl(inst, horizon, 4, {}, 0.5);
}

double art_lower_bound(const Instance& inst) {
    if (inst.flows.empty()) return 0.0;
    const long long horizon = inst.default_horizon();
    const int n = static_cast<int>(inst.flows.size());

    // Every optimal solution schedules flow e within a window after r_e: any
    // round before its last positive round must saturate src or dst, and the
    // total volume through a port bounds how many rounds can be saturated.
    std::vector<long long> vol(inst.sw.total_ports(), 0);
    for (const auto& f : inst.flows) {
        vol[inst.sw.flat({Side::Input, f.src})] += f.demand;
        vol[inst.sw.flat({Side::Output, f.dst})] += f.demand;
    }
    std::vector<long long> limit(n);
    for (int f = 0; f < n; ++f) {
        const auto& fl = inst.flows[f];
        long long cs = inst.sw.capacity_in[fl.src], cd = inst.sw.capacity_out[fl.dst];
        long long w = ceil_div(vol[inst.sw.flat({Side::Input, fl.src})], cs) +
                      ceil_div(vol[inst.sw.flat({Side::Output, fl.dst})], cd) + 1;
        limit[f] = fl.release + w;
    }
    ArtLp artlp = build_impl(inst, horizon, 1, limit, 0.0);
    // Seed the cut pool with each port's water-filling busy period: capacity
    // can only bind while the per-port queue (arrivals minus c_p per round)
    // is nonempty, and it usually binds throughout that stretch.
    std::vector<long long> drain(inst.sw.total_ports(), -1);
    {
        long long max_r = inst.max_release();
        std::vector<std::vector<long long>> arrivals(inst.sw.total_ports());
        for (auto& a : arrivals) a.assign(max_r + 1, 0);
        for (const auto& f : inst.flows) {
            arrivals[inst.sw.flat({Side::Input, f.src})][f.release] += f.demand;
            arrivals[inst.sw.flat({Side::Output, f.dst})][f.release] += f.demand;
        }
        for (int p = 0; p < inst.sw.total_ports(); ++p) {
            long long cap = inst.sw.capacity(inst.sw.unflat(p));
            long long queue = 0, t = 0;
            while (t <= max_r || queue > 0) {
                if (t <= max_r) queue += arrivals[p][t];
                queue = std::max<long long>(queue - cap, 0);
                drain[p] = t;
                ++t;
            }
        }
    }
    std::vector<int> seeds;
    for (int r = 0; r < static_cast<int>(artlp.capacity_row_key.size()); ++r) {
        auto [port, t0] = artlp.capacity_row_key[r];
        if (t0 <= drain[port]) seeds.push_back(artlp.request_rows + r);
    }
    lp::BasicSolution sol = lp::solve_min_lazy(artlp.model, artlp.request_rows, seeds);
    if (sol.status == lp::Status::Infeasible)
        throw std::logic_error("relaxation infeasible at the serial horizon");
    if (sol.status != lp::Status::Optimal)
        throw std::runtime_error("LP solve failed: " + sol.note);
    return sol.objective;
}

double pseudo_cost(const Instance& inst, const std::vector<long long>& round_of) {
    double cost = 0.0;
    for (size_t f = 0; f < inst.flows.size(); ++f) {
        const auto& fl = inst.flows[f];
        cost += static_cast<double>(round_of[f] - fl.release) +
                static_cast<double>(fl.demand) * 0.5;
    }
    return cost;
}

long long measured_backlog(const Instance& inst, const std::vector<long long>& round_of) {
    if (inst.flows.empty()) return 0;
    long long max_round = 0;
    for (long long t : round_of) max_round = std::max(max_round, t);
    auto by_port = inst.flows_by_port();
    long long best = 0;
    std::vector<long long> load(max_round + 1);
    for (int p = 0; p < inst.sw.total_ports(); ++p) {
        if (by_port[p].empty()) continue;
        std::fill(load.begin(), load.end(), 0);
        for (int f : by_port[p]) load[round_of[f]] += inst.flows[f].demand;
        long long cap = inst.sw.capacity(inst.sw.unflat(p));
        long long run = 0;  // max-suffix of load - cap
        for (long long t = 0; t <= max_round; ++t) {
            run = std::max<long long>(run, 0) + load[t] - cap;
            best = std::max(best, run);
        }
    }
    return std::max<long long>(best, 0);
}

PseudoSchedule iterative_round(const Instance& inst, long long horizon, RoundingTrace* trace) {
    const int n = static_cast<int>(inst.flows.size());
    PseudoSchedule pseudo;
    pseudo.round_of.assign(n, -1);
    if (n == 0) return pseudo;

    // Sparse view of the current LP's variables, carried between levels.
    struct Var {
        int flow;
        long long round;
        double value;  // previous level's solution
    };

    ArtLp lp0 = build_lp0(inst, horizon);
    std::vector<int> remaining(n);
    for (int f = 0; f < n; ++f) remaining[f] = f;

    // Level 0 uses the dense LP(0); later levels rebuild from supports.
    std::vector<Var> vars;
    lp::LpModel model = lp0.model;
    std::vector<std::pair<int, long long>> var_key;  // column -> (flow, round)
    for (int f = 0; f < n; ++f)
        for (long long t = lp0.base[f]; t < lp0.end[f]; ++t) var_key.emplace_back(f, t);
    int capacity_row_begin = lp0.request_rows;

    auto by_port = inst.flows_by_port();
    const int max_levels = 64;
    for (int level = 0; level < max_levels; ++level) {
        lp::BasicSolution sol = lp::solve_min(model);
        if (sol.status == lp::Status::Infeasible)
            throw std::logic_error(level == 0 ? "LP(0) infeasible at the given horizon"
                                              : "relaxed LP became infeasible (internal bug)");
        if (sol.status != lp::Status::Optimal)
            throw std::runtime_error("LP solve failed during rounding: " + sol.note);

        // Collect per-flow values.
        std::vector<std::vector<std::pair<long long, double>>> values(n);
        for (int c = 0; c < static_cast<int>(var_key.size()); ++c)
            if (sol.x[c] > kIntTol) values[var_key[c].first].emplace_back(var_key[c].second, sol.x[c]);

        TraceIteration it;
        it.level = level;
        it.remaining = remaining;
        it.values = values;
        for (int r = capacity_row_begin; r < model.num_rows(); ++r) {
            const auto& row = model.rows[r];
            double lhs = 0.0;
            for (const auto& [v, c] : row.terms) lhs += c * sol.x[v];
            if (std::fabs(lhs - row.rhs) <= 1e-7 * (1.0 + std::fabs(row.rhs)))
                ++it.tight_capacity_rows;
        }

        // Fix flows whose variables all sit at 0 or d_e.
        std::vector<int> still;
        for (int f : remaining) {
            double d = static_cast<double>(inst.flows[f].demand);
            int at_demand = -1;
            bool integral = true;
            for (const auto& [t, v] : values[f]) {
                if (std::fabs(v - d) <= kIntTol) {
                    if (at_demand >= 0) integral = false;
                    at_demand = static_cast<int>(t);
                } else if (v > kIntTol) {
                    integral = false;
                }
            }
            if (integral && at_demand >= 0) {
                pseudo.round_of[f] = at_demand;
                it.fixed.emplace_back(f, at_demand);
            } else {
                still.push_back(f);
            }
        }
        if (still.empty()) {
            if (trace) trace->iterations.push_back(std::move(it));
            break;
        }
        if (it.fixed.empty())
            throw std::runtime_error("iterative rounding made no progress (non-vertex solution?)");
        remaining = std::move(still);

        // Next LP: supports of the remaining flows, grouped per port until
        // each group's carried value first reaches 4 c_p; the final group per
        // port may stay smaller. Right side is the group's carried value.
        lp::LpModel next;
        std::vector<std::pair<int, long long>> next_key;
        std::map<std::pair<int, long long>, int> col_of;
        for (int f : remaining) {
            const auto& fl = inst.flows[f];
            double inv_d = 1.0 / static_cast<double>(fl.demand);
            for (const auto& [t, v] : values[f]) {
                int col = next.add_variable(static_cast<double>(t - fl.release) * inv_d + 0.5);
                next_key.emplace_back(f, t);
                col_of[{f, t}] = col;
            }
        }
        std::vector<char> is_remaining(n, 0);
        for (int f : remaining) is_remaining[f] = 1;
        for (int f : remaining) {
            int row = next.add_row(lp::Relation::GreaterEq,
                                   static_cast<double>(inst.flows[f].demand));
            for (const auto& [t, v] : values[f]) next.add_term(row, col_of[{f, t}], 1.0);
        }
        int next_capacity_begin = next.num_rows();
        for (int p = 0; p < inst.sw.total_ports(); ++p) {
            std::vector<std::pair<long long, int>> port_vars;  // (round, flow)
            for (int f : by_port[p])
                if (is_remaining[f])
                    for (const auto& [t, v] : values[f]) port_vars.emplace_back(t, f);
            if (port_vars.empty()) continue;
            std::sort(port_vars.begin(), port_vars.end(), [&](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return inst.flows[a.second].id < inst.flows[b.second].id;
            });
            double cap4 = 4.0 * static_cast<double>(inst.sw.capacity(inst.sw.unflat(p)));
            size_t i = 0;
            while (i < port_vars.size()) {
                double size = 0.0;
                int row = next.add_row(lp::Relation::LessEq, 0.0);
                int count = 0;
                while (i < port_vars.size() && size < cap4 - 1e-9) {
                    auto [t, f] = port_vars[i];
                    double v = 0.0;
                    for (const auto& [tt, vv] : values[f])
                        if (tt == t) v = vv;
                    next.add_term(row, col_of[{f, t}], 1.0);
                    size += v;
                    ++count;
                    ++i;
                }
                next.rows[row].rhs = size;
                if (trace) {
                    TraceGroup tg;
                    tg.port = inst.sw.unflat(p);
                    tg.size = size;
                    tg.vars = count;
                    tg.last_of_port = i >= port_vars.size();
                    it.groups.push_back(tg);
                }
            }
        }
        if (trace) trace->iterations.push_back(std::move(it));
        model = std::move(next);
        var_key = std::move(next_key);
        capacity_row_begin = next_capacity_begin;
        if (level + 1 >= max_levels)
            throw std::runtime_error("iterative rounding exceeded the level cap");
    }

    for (int f = 0; f < n; ++f) {
        if (pseudo.round_of[f] < 0)
            throw std::logic_error("rounding finished with an unassigned flow");
        if (pseudo.round_of[f] < inst.flows[f].release)
            throw std::logic_error("rounding assigned a flow before its release");
    }
    pseudo.backlog = measured_backlog(inst, pseudo.round_of);
    return pseudo;
}

ArtResult pseudo_to_schedule(const Instance& inst, const PseudoSchedule& pseudo,
                             long long augmentation) {
    if (augmentation < 1) throw std::invalid_argument("augmentation must be >= 1");
    const int n = static_cast<int>(inst.flows.size());
    if (static_cast<int>(pseudo.round_of.size()) != n)
        throw std::invalid_argument("pseudo-schedule does not cover the instance");
    for (const auto& f : inst.flows)
        if (f.demand != 1)
            throw std::invalid_argument("schedule extraction requires unit demands");

    ArtResult result;
    result.augmentation = augmentation;
    result.lp_lower_bound = art_lower_bound(inst);
    result.pseudo = pseudo;
    if (n == 0) {
        result.window_length = 1;
        return result;
    }

    const long long backlog = measured_backlog(inst, pseudo.round_of);
    result.pseudo.backlog = backlog;
    const long long h = std::max<long long>(1, ceil_div(backlog, augmentation));
    result.window_length = h;

    long long max_round = 0;
    for (long long t : pseudo.round_of) max_round = std::max(max_round, t);
    const long long windows = max_round / h + 1;
    const long long per_round = 1 + augmentation;

    std::vector<std::vector<int>> window_flows(windows);
    for (int f = 0; f < n; ++f) window_flows[pseudo.round_of[f] / h].push_back(f);

    for (long long j = 0; j < windows; ++j) {
        auto& wf = window_flows[j];
        if (wf.empty()) continue;
        std::sort(wf.begin(), wf.end(), [&](int a, int b) {
            if (pseudo.round_of[a] != pseudo.round_of[b])
                return pseudo.round_of[a] < pseudo.round_of[b];
            return inst.flows[a].id < inst.flows[b].id;
        });
        matching::BipartiteMultigraph g;
        g.left = inst.sw.inputs;
        g.right = inst.sw.outputs;
        for (int f : wf) g.add_edge(inst.flows[f].src, inst.flows[f].dst, f);
        auto expansion =
            matching::expand_to_unit_graph(g, inst.sw.capacity_in, inst.sw.capacity_out);
        auto colors = matching::edge_color_bipartite(expansion.graph);
        long long d = static_cast<long long>(colors.matchings.size());
        result.color_count = std::max(result.color_count, d);
        if (d > per_round * h) {
            std::ostringstream os;
            os << "cannot pack " << d << " matchings into " << h << " rounds at capacity factor "
               << (1 + augmentation) << " (measured backlog " << backlog << ")";
            throw std::runtime_error(os.str());
        }
        for (long long k = 0; k < d; ++k) {
            long long round = (j + 1) * h + k / per_round;
            for (int edge : colors.matchings[k]) {
                int f = static_cast<int>(expansion.graph.edges[edge].id);
                result.schedule.assignment[inst.flows[f].id] = round;
            }
        }
    }

    for (int f = 0; f < n; ++f)
        if (result.schedule.assignment.at(inst.flows[f].id) < inst.flows[f].release)
            throw std::logic_error("extraction scheduled a flow before its release");
    auto verdict = validate_schedule_scaled(inst, result.schedule,
                                            1.0 + static_cast<double>(augmentation), 0);
    if (!verdict.valid())
        throw std::logic_error("extracted schedule violates the augmented capacity: " +
                               verdict.violations.front().describe());
    return result;
}

ArtResult solve_art(const Instance& inst, long long augmentation, RoundingTrace* trace) {
    PseudoSchedule pseudo = iterative_round(inst, inst.default_horizon(), trace);
    return pseudo_to_schedule(inst, pseudo, augmentation);
}

}  // namespace switchsched::art
