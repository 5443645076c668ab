#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "switchsched/art.hpp"
#include "switchsched/gen.hpp"
#include "switchsched/json_io.hpp"
#include "switchsched/mrt.hpp"
#include "switchsched/online.hpp"
#include "switchsched/sim.hpp"

namespace {

using nlohmann::json;
using namespace switchsched;

int worker_count() {
    if (const char* env = std::getenv("SWITCHSCHED_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs jobs [0, count) on a bounded pool; results land by index, so output
// order never depends on scheduling.
template <class Fn>
void parallel_for(int count, Fn&& fn) {
    int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::mutex mu;
    int next = 0;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                int job;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= count) return;
                    job = next++;
                }
                fn(job);
            }
        });
    for (auto& t : pool) t.join();
}

std::vector<online::Policy> parse_policies(const std::string& arg) {
    if (arg == "all") return online::all_policies();
    auto p = online::parse_policy(arg);
    if (!p) throw CLI::ValidationError("--policy", "unknown policy: " + arg);
    return {*p};
}

void dump_lp(const lp::LpModel& model, const std::string& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    lp::write_lp_format(model, os);
}

int cmd_gen(const std::string& rtt_path, int m, int m_prime, int n, long long d_max,
            long long cap_max, long long horizon, std::uint64_t seed, const std::string& out) {
    Instance inst;
    if (!rtt_path.empty()) {
        gen::RttInstance rtt = gen::rtt_from_json(read_file(rtt_path));
        inst = gen::rtt_reduce(rtt).instance;
    } else {
        inst = gen::random_instance(m, m_prime < 0 ? m : m_prime, n, d_max, horizon, seed, cap_max);
    }
    save_instance(inst, out);
    return 0;
}

int cmd_solve_art(const std::string& in, long long augment, const std::string& out_schedule,
                  const std::string& out_summary, const std::string& trace_path,
                  const std::string& lp_dump) {
    Instance inst = load_instance(in);
    if (!lp_dump.empty()) dump_lp(art::build_art_lp(inst, inst.default_horizon()).model, lp_dump);
    art::RoundingTrace trace;
    art::ArtResult result = art::solve_art(inst, augment, &trace);

    if (!trace_path.empty()) {
        std::ofstream os(trace_path, std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open for writing: " + trace_path);
        for (const auto& it : trace.iterations) {
            json j;
            j["iteration"] = it.level;
            j["remaining"] = it.remaining.size();
            json fixed = json::array();
            for (const auto& [f, t] : it.fixed)
                fixed.push_back({{"id", inst.flows[f].id}, {"round", t}});
            j["fixed"] = std::move(fixed);
            j["tight_rows"] = it.tight_capacity_rows;
            json groups = json::array();
            for (const auto& g : it.groups)
                groups.push_back({{"port", to_string(g.port)}, {"size", g.size}, {"vars", g.vars}});
            j["groups"] = std::move(groups);
            os << j.dump() << "\n";
        }
    }
    if (!out_schedule.empty()) save_schedule(result.schedule, out_schedule);
    ResponseReport report =
        inst.flows.empty() ? ResponseReport{} : response_metrics(inst, result.schedule);
    json summary;
    summary["lp_lower_bound"] = result.lp_lower_bound;
    summary["backlog"] = result.pseudo.backlog;
    summary["window_length"] = result.window_length;
    summary["color_count"] = result.color_count;
    summary["augmentation"] = result.augmentation;
    summary["capacity_factor"] = 1 + result.augmentation;
    summary["total_response"] = report.total;
    summary["avg_response"] = report.average;
    summary["max_response"] = report.maximum;
    std::string text = summary.dump(2) + "\n";
    if (!out_summary.empty())
        write_file(out_summary, text);
    else
        std::cout << text;
    return 0;
}

int cmd_solve_mrt(const std::string& in, bool augment_check, const std::string& out_schedule,
                  const std::string& out_summary, const std::string& lp_dump) {
    Instance inst = load_instance(in);
    mrt::MrtResult result = mrt::solve_mrt(inst, augment_check);
    if (!lp_dump.empty()) {
        mrt::TcfsInstance tcfs = mrt::TcfsInstance::from_release_windows(inst, result.rho_star);
        dump_lp(mrt::build_tcfs_lp(tcfs).model, lp_dump);
    }
    if (!out_schedule.empty()) {
        IntegralSchedule sched;
        sched.assignment = result.assignment.round_of;
        save_schedule(sched, out_schedule);
    }
    json overloads = json::array();
    for (const auto& o : result.assignment.overloads)
        overloads.push_back(
            {{"port", to_string(o.port)}, {"round", o.round}, {"amount", o.amount}});
    json summary;
    summary["rho_star"] = result.rho_star;
    summary["d_max"] = result.assignment.d_max;
    summary["max_overload"] = result.assignment.max_overload;
    summary["overload_budget"] = 2 * result.assignment.d_max - 1;
    summary["overloads"] = std::move(overloads);
    std::string text = summary.dump(2) + "\n";
    if (!out_summary.empty())
        write_file(out_summary, text);
    else
        std::cout << text;
    return 0;
}

int cmd_bound(const std::string& in, bool avg, bool max, const std::string& out,
              const std::string& lp_dump) {
    Instance inst = load_instance(in);
    if (!lp_dump.empty()) dump_lp(art::build_art_lp(inst, inst.default_horizon()).model, lp_dump);
    json j;
    if (avg) {
        double total = art::art_lower_bound(inst);
        j["lp_avg_total"] = total;
        j["lp_avg_bound"] =
            inst.flows.empty() ? 0.0 : total / static_cast<double>(inst.flows.size());
    }
    if (max) j["lp_max_bound"] = mrt::min_feasible_rho(inst);
    std::string text = j.dump(2) + "\n";
    if (!out.empty())
        write_file(out, text);
    else
        std::cout << text;
    return 0;
}

int cmd_simulate(int m, double rate, long long horizon, const std::string& policy_arg, int seeds,
                 std::uint64_t seed_base, bool lp_bounds, bool timing, const std::string& out,
                 const std::string& decision_log) {
    std::vector<online::Policy> policies = parse_policies(policy_arg);
    std::vector<sim::TrialResult> rows(policies.size() * static_cast<size_t>(seeds));
    std::ofstream log;
    if (!decision_log.empty()) {
        log.open(decision_log, std::ios::trunc);
        if (!log) throw std::runtime_error("cannot open for writing: " + decision_log);
        log << "round,policy,scheduled\n";
    }

    parallel_for(seeds, [&](int s) {
        sim::WorkloadConfig cfg;
        cfg.ports = m;
        cfg.mean_arrivals = rate;
        cfg.rounds = horizon;
        cfg.seed = seed_base + static_cast<std::uint64_t>(s);
        Instance inst = sim::poisson_workload(cfg);
        std::vector<sim::TrialResult> local(policies.size());
        for (size_t p = 0; p < policies.size(); ++p)
            local[p] = sim::run_trial(inst, cfg, policies[p], nullptr, timing);
        if (lp_bounds && !inst.flows.empty()) {
            long long hint = local[0].max_response;
            for (const auto& r : local) hint = std::min(hint, r.max_response);
            sim::InstanceBounds bounds = sim::compute_bounds(inst, hint);
            for (size_t p = 0; p < policies.size(); ++p)
                local[p] = sim::run_trial(inst, cfg, policies[p], &bounds, timing);
        }
        for (size_t p = 0; p < policies.size(); ++p)
            rows[p * static_cast<size_t>(seeds) + static_cast<size_t>(s)] = local[p];
    });

    if (!decision_log.empty()) {
        // Replay serially so the log is ordered and deterministic.
        for (int s = 0; s < seeds; ++s) {
            sim::WorkloadConfig cfg;
            cfg.ports = m;
            cfg.mean_arrivals = rate;
            cfg.rounds = horizon;
            cfg.seed = seed_base + static_cast<std::uint64_t>(s);
            Instance inst = sim::poisson_workload(cfg);
            for (auto policy : policies) {
                std::vector<online::StepLog> steps;
                online::run_policy(inst, policy, &steps);
                for (const auto& st : steps) {
                    log << st.round << ',' << online::to_string(policy) << ',';
                    for (size_t i = 0; i < st.scheduled.size(); ++i)
                        log << (i ? ";" : "") << st.scheduled[i];
                    log << "\n";
                }
            }
        }
    }

    std::ostringstream os;
    sim::write_results_csv(os, rows);
    if (!out.empty())
        write_file(out, os.str());
    else
        std::cout << os.str();
    return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<sim::TrialResult> rows;
    for (const auto& path : inputs) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open for reading: " + path);
        auto part = sim::read_results_csv(is);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::ostringstream os;
    sim::write_summary_csv(os, sim::aggregate(rows));
    if (!out.empty())
        write_file(out, os.str());
    else
        std::cout << os.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flow scheduling on a capacitated switch: bounds, offline solvers, online "
                 "policies, and a discrete-round simulator"};
    app.require_subcommand(1);

    // gen
    auto* g = app.add_subcommand("gen", "Generate an instance (random, or from a timetable file)");
    int g_m = 4, g_mprime = -1, g_n = 8;
    long long g_dmax = 1, g_capmax = 1, g_horizon = 4;
    std::uint64_t g_seed = 0;
    std::string g_rtt, g_out = "instance.json";
    g->add_option("--m", g_m, "input ports");
    g->add_option("--m-prime", g_mprime, "output ports (defaults to --m)");
    g->add_option("--n", g_n, "number of flows");
    g->add_option("--dmax", g_dmax, "maximum demand");
    g->add_option("--cap-max", g_capmax, "maximum port capacity");
    g->add_option("--horizon", g_horizon, "releases drawn from [0, horizon)");
    g->add_option("--seed", g_seed, "random seed");
    g->add_option("--rtt", g_rtt, "timetable JSON to reduce instead of sampling");
    g->add_option("--out", g_out, "output instance path");

    // solve-art
    auto* sa = app.add_subcommand("solve-art", "Average response time pipeline with capacity factor 1+c");
    std::string sa_in, sa_sched = "schedule.json", sa_summary, sa_trace, sa_lp;
    long long sa_c = 1;
    sa->add_option("--in", sa_in, "instance JSON")->required();
    sa->add_option("--augment", sa_c, "augmentation c (factor 1+c)");
    sa->add_option("--out-schedule", sa_sched, "schedule output path");
    sa->add_option("--out-summary", sa_summary, "summary JSON path (default stdout)");
    sa->add_option("--trace", sa_trace, "rounding trace (JSON lines)");
    sa->add_option("--lp-dump", sa_lp, "write the relaxation in LP text format");

    // solve-mrt
    auto* sm = app.add_subcommand("solve-mrt", "Minimize maximum response time with additive overload");
    std::string sm_in, sm_sched = "schedule.json", sm_summary, sm_lp;
    bool sm_nocheck = false;
    sm->add_option("--in", sm_in, "instance JSON")->required();
    sm->add_option("--out-schedule", sm_sched, "schedule output path");
    sm->add_option("--out-summary", sm_summary, "summary JSON path (default stdout)");
    sm->add_option("--lp-dump", sm_lp, "write the window relaxation in LP text format");
    sm->add_flag("--no-augment-check", sm_nocheck, "skip output re-validation");

    // bound
    auto* b = app.add_subcommand("bound", "Relaxation lower bounds only");
    std::string b_in, b_out, b_lp;
    bool b_avg = false, b_max = false;
    b->add_option("--in", b_in, "instance JSON")->required();
    b->add_flag("--avg", b_avg, "average response bound");
    b->add_flag("--max", b_max, "maximum response bound");
    b->add_option("--out", b_out, "output JSON path (default stdout)");
    b->add_option("--lp-dump", b_lp, "write the relaxation in LP text format");

    // simulate
    auto* si = app.add_subcommand("simulate", "Poisson workloads under the online policies");
    int si_m = 16, si_seeds = 10;
    double si_rate = 8;
    long long si_horizon = 10;
    std::uint64_t si_seed_base = 0;
    bool si_bounds = false, si_timing = false;
    std::string si_policy = "all", si_out, si_log;
    si->add_option("--m", si_m, "ports per side");
    si->add_option("--rate", si_rate, "mean arrivals per round (M)");
    si->add_option("--horizon", si_horizon, "generation rounds (T)");
    si->add_option("--policy", si_policy, "maxcard|minrtime|maxweight|all");
    si->add_option("--seeds", si_seeds, "number of seeds (0..seeds-1 offset from base)");
    si->add_option("--seed-base", si_seed_base, "first seed");
    si->add_flag("--lp-bounds", si_bounds, "also compute relaxation bounds per instance");
    si->add_flag("--timing", si_timing, "record wall-clock runtime (breaks reproducibility)");
    si->add_option("--out", si_out, "results CSV path (default stdout)");
    si->add_option("--decision-log", si_log, "per-round decision log CSV");

    // report
    auto* r = app.add_subcommand("report", "Aggregate results CSVs into per-(policy,M,T) means");
    std::vector<std::string> r_in;
    std::string r_out;
    r->add_option("--in", r_in, "results CSV files")->required()->expected(-1);
    r->add_option("--out", r_out, "summary CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed())
            return cmd_gen(g_rtt, g_m, g_mprime, g_n, g_dmax, g_capmax, g_horizon, g_seed, g_out);
        if (sa->parsed())
            return cmd_solve_art(sa_in, sa_c, sa_sched, sa_summary, sa_trace, sa_lp);
        if (sm->parsed()) return cmd_solve_mrt(sm_in, !sm_nocheck, sm_sched, sm_summary, sm_lp);
        if (b->parsed()) return cmd_bound(b_in, b_avg || !b_max, b_max || !b_avg, b_out, b_lp);
        if (si->parsed())
            return cmd_simulate(si_m, si_rate, si_horizon, si_policy, si_seeds, si_seed_base,
                                si_bounds, si_timing, si_out, si_log);
        if (r->parsed()) return cmd_report(r_in, r_out);
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        std::cerr << err.dump() << std::endl;
        return 1;
    }
    return 0;
}
