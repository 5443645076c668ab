#include "switchsched/sim.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "switchsched/art.hpp"
#include "switchsched/mrt.hpp"
#include "switchsched/rng.hpp"

namespace switchsched::sim {

Instance poisson_workload(const WorkloadConfig& cfg) {
    if (cfg.ports < 1 || cfg.rounds < 1 || cfg.mean_arrivals < 0)
        throw std::invalid_argument("bad workload configuration");
    Rng rng(cfg.seed);
    Instance inst;
    inst.sw = uniform_switch(cfg.ports, cfg.ports, 1);
    long long next_id = 0;
    for (long long t = 0; t < cfg.rounds; ++t) {
        long long k = rng.poisson(cfg.mean_arrivals);
        for (long long i = 0; i < k; ++i) {
            FlowRequest f;
            f.id = std::to_string(next_id++);
            f.src = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(cfg.ports)));
            f.dst = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(cfg.ports)));
            f.release = t;
            inst.flows.push_back(std::move(f));
        }
    }
    inst.validate();
    return inst;
}

InstanceBounds compute_bounds(const Instance& inst, long long max_response_hint) {
    InstanceBounds b;
    b.lp_avg_total = art::art_lower_bound(inst);
    b.rho_star = mrt::min_feasible_rho(inst, max_response_hint);
    return b;
}

TrialResult run_trial(const Instance& inst, const WorkloadConfig& cfg, online::Policy policy,
                      const InstanceBounds* bounds, bool timing) {
    TrialResult row;
    row.policy = policy;
    row.m = cfg.ports;
    row.M = cfg.mean_arrivals;
    row.T = cfg.rounds;
    row.seed = cfg.seed;
    row.flows = static_cast<long long>(inst.flows.size());

    auto start = std::chrono::steady_clock::now();
    online::RunResult run = online::run_policy(inst, policy);
    if (run.schedule.assignment.size() != inst.flows.size())
        throw std::logic_error("trial lost flows between generation and scheduling");
    if (!inst.flows.empty()) {
        ResponseReport report = response_metrics(inst, run.schedule);
        row.avg_response = report.average;
        row.max_response = report.maximum;
        if (bounds) {
            double n = static_cast<double>(inst.flows.size());
            row.lp_avg_bound = bounds->lp_avg_total / n;
            row.lp_max_bound = static_cast<double>(bounds->rho_star);
            if (bounds->lp_avg_total > 0.0)
                row.avg_ratio = static_cast<double>(report.total) / bounds->lp_avg_total;
            row.max_ratio =
                static_cast<double>(report.maximum) / static_cast<double>(bounds->rho_star);
        }
    }
    if (timing) {
        auto end = std::chrono::steady_clock::now();
        row.runtime_ms = std::chrono::duration<double, std::milli>(end - start).count();
    }
    return row;
}

std::vector<SummaryRow> aggregate(const std::vector<TrialResult>& rows) {
    if (rows.empty()) throw std::invalid_argument("nothing to aggregate");
    std::map<std::tuple<std::string, int, double, long long>, SummaryRow> groups;
    std::map<std::tuple<std::string, int, double, long long>, std::array<int, 4>> present;
    for (const auto& r : rows) {
        auto key = std::make_tuple(std::string(online::to_string(r.policy)), r.m, r.M, r.T);
        auto& g = groups[key];
        auto& p = present[key];
        g.policy = online::to_string(r.policy);
        g.m = r.m;
        g.M = r.M;
        g.T = r.T;
        ++g.trials;
        g.avg_response += r.avg_response;
        g.max_response += static_cast<double>(r.max_response);
        g.runtime_ms += r.runtime_ms;
        if (r.lp_avg_bound) {
            g.lp_avg_bound = g.lp_avg_bound.value_or(0.0) + *r.lp_avg_bound;
            ++p[0];
        }
        if (r.lp_max_bound) {
            g.lp_max_bound = g.lp_max_bound.value_or(0.0) + *r.lp_max_bound;
            ++p[1];
        }
        if (r.avg_ratio) {
            g.avg_ratio = g.avg_ratio.value_or(0.0) + *r.avg_ratio;
            ++p[2];
        }
        if (r.max_ratio) {
            g.max_ratio = g.max_ratio.value_or(0.0) + *r.max_ratio;
            ++p[3];
        }
    }
    std::vector<SummaryRow> out;
    for (auto& [key, g] : groups) {
        auto& p = present[key];
        g.avg_response /= g.trials;
        g.max_response /= g.trials;
        g.runtime_ms /= g.trials;
        if (g.lp_avg_bound) *g.lp_avg_bound /= p[0];
        if (g.lp_max_bound) *g.lp_max_bound /= p[1];
        if (g.avg_ratio) *g.avg_ratio /= p[2];
        if (g.max_ratio) *g.max_ratio /= p[3];
        out.push_back(g);
    }
    return out;
}

const char* const kResultsHeader =
    "policy,m,M,T,seed,avg_response,max_response,lp_avg_bound,lp_max_bound,avg_ratio,max_ratio,"
    "runtime_ms";

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string fmt_m(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void write_results_csv(std::ostream& os, const std::vector<TrialResult>& rows) {
    os << kResultsHeader << "\n";
    for (const auto& r : rows) {
        os << online::to_string(r.policy) << ',' << r.m << ',' << fmt_m(r.M) << ',' << r.T << ','
           << r.seed << ',' << fmt(r.avg_response) << ',' << r.max_response << ','
           << fmt_opt(r.lp_avg_bound) << ',' << fmt_opt(r.lp_max_bound) << ','
           << fmt_opt(r.avg_ratio) << ',' << fmt_opt(r.max_ratio) << ',' << fmt(r.runtime_ms)
           << "\n";
    }
}

std::vector<TrialResult> read_results_csv(std::istream& is) {
    std::vector<TrialResult> rows;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty results file");
    if (split_csv_line(line) != split_csv_line(kResultsHeader))
        throw std::runtime_error("unexpected results header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 12) throw std::runtime_error("malformed results row");
        TrialResult r;
        auto policy = online::parse_policy(f[0]);
        if (!policy) throw std::runtime_error("unknown policy in results: " + f[0]);
        r.policy = *policy;
        r.m = std::stoi(f[1]);
        r.M = std::stod(f[2]);
        r.T = std::stoll(f[3]);
        r.seed = std::stoull(f[4]);
        r.avg_response = std::stod(f[5]);
        r.max_response = std::stoll(f[6]);
        if (!f[7].empty()) r.lp_avg_bound = std::stod(f[7]);
        if (!f[8].empty()) r.lp_max_bound = std::stod(f[8]);
        if (!f[9].empty()) r.avg_ratio = std::stod(f[9]);
        if (!f[10].empty()) r.max_ratio = std::stod(f[10]);
        r.runtime_ms = std::stod(f[11]);
        rows.push_back(r);
    }
    return rows;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
    os << "policy,m,M,T,trials,avg_response,max_response,lp_avg_bound,lp_max_bound,avg_ratio,"
          "max_ratio,runtime_ms\n";
    for (const auto& r : rows) {
        os << r.policy << ',' << r.m << ',' << fmt_m(r.M) << ',' << r.T << ',' << r.trials << ','
           << fmt(r.avg_response) << ',' << fmt(r.max_response) << ','
           << fmt_opt(r.lp_avg_bound) << ',' << fmt_opt(r.lp_max_bound) << ','
           << fmt_opt(r.avg_ratio) << ',' << fmt_opt(r.max_ratio) << ',' << fmt(r.runtime_ms)
           << "\n";
    }
}

}  // namespace switchsched::sim
