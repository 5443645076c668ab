#include "switchsched/online.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "switchsched/matching.hpp"
#include "switchsched/mrt.hpp"

namespace switchsched::online {

const char* to_string(Policy p) {
    switch (p) {
        case Policy::MaxCard: return "maxcard";
        case Policy::MinRTime: return "minrtime";
        case Policy::MaxWeight: return "maxweight";
    }
    return "?";
}

std::optional<Policy> parse_policy(std::string_view name) {
    if (name == "maxcard") return Policy::MaxCard;
    if (name == "minrtime") return Policy::MinRTime;
    if (name == "maxweight") return Policy::MaxWeight;
    return std::nullopt;
}

InstanceSource::InstanceSource(const Instance& inst) : inst_(inst) {
    inst_.validate();
    order_.resize(inst_.flows.size());
    for (size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
        if (inst_.flows[a].release != inst_.flows[b].release)
            return inst_.flows[a].release < inst_.flows[b].release;
        return inst_.flows[a].id < inst_.flows[b].id;
    });
    last_release_ = inst_.max_release();
}

std::vector<FlowRequest> InstanceSource::release(long long round) {
    std::vector<FlowRequest> out;
    while (next_ < order_.size() && inst_.flows[order_[next_]].release == round)
        out.push_back(inst_.flows[order_[next_++]]);
    return out;
}

bool InstanceSource::exhausted(long long round) const {
    return next_ >= order_.size() && round > last_release_;
}

std::vector<size_t> policy_step(const SwitchSpec& sw, const std::vector<FlowRequest>& pending,
                                long long round, Policy policy) {
    if (pending.empty()) return {};
    for (const auto& f : pending) {
        if (f.demand != 1) throw std::invalid_argument("online policies require unit demands");
        if (f.release > round) throw std::invalid_argument("pending flow not yet released");
    }
    matching::BipartiteMultigraph g;
    g.left = sw.inputs;
    g.right = sw.outputs;
    for (size_t i = 0; i < pending.size(); ++i)
        g.add_edge(pending[i].src, pending[i].dst, static_cast<long long>(i));

    bool expanded = false;
    matching::UnitExpansion exp;
    const matching::BipartiteMultigraph* graph = &g;
    for (long long c : sw.capacity_in) expanded = expanded || c > 1;
    for (long long c : sw.capacity_out) expanded = expanded || c > 1;
    if (expanded) {
        exp = matching::expand_to_unit_graph(g, sw.capacity_in, sw.capacity_out);
        graph = &exp.graph;
    }

    matching::Matching selected;
    if (policy == Policy::MaxCard) {
        selected = matching::max_cardinality_matching(*graph);
    } else {
        std::vector<double> w(pending.size());
        if (policy == Policy::MinRTime) {
            // Age plus one: among equal ages this prefers scheduling more
            // flows and keeps fresh flows eligible.
            for (size_t i = 0; i < pending.size(); ++i)
                w[i] = static_cast<double>(round - pending[i].release + 1);
        } else {
            std::vector<long long> queue_in(sw.inputs, 0), queue_out(sw.outputs, 0);
            for (const auto& f : pending) {
                ++queue_in[f.src];
                ++queue_out[f.dst];
            }
            for (size_t i = 0; i < pending.size(); ++i)
                w[i] = static_cast<double>(queue_in[pending[i].src] + queue_out[pending[i].dst]);
        }
        std::vector<double> edge_w(graph->edges.size());
        for (size_t e = 0; e < graph->edges.size(); ++e)
            edge_w[e] = w[static_cast<size_t>(graph->edges[e].id)];
        selected = matching::max_weight_matching(*graph, edge_w);
    }

    std::vector<size_t> out;
    for (int e : selected) out.push_back(static_cast<size_t>(graph->edges[e].id));
    std::sort(out.begin(), out.end());
    return out;
}

RunResult run_policy(FlowSource& source, Policy policy, std::vector<StepLog>* log) {
    RunResult result;
    result.trace.sw = source.spec();
    std::vector<FlowRequest> pending;
    long long round = 0;
    int starved_rounds = 0;
    for (;;) {
        if (source.exhausted(round) && pending.empty()) break;
        for (auto& f : source.release(round)) {
            result.trace.flows.push_back(f);
            pending.push_back(std::move(f));
        }
        std::vector<size_t> chosen = policy_step(source.spec(), pending, round, policy);
        if (!pending.empty() && chosen.empty()) {
            if (++starved_rounds > 2)
                throw std::logic_error("policy keeps idling with a nonempty backlog");
        } else {
            starved_rounds = 0;
        }
        std::vector<std::string> ids;
        for (size_t i : chosen) {
            result.schedule.assignment[pending[i].id] = round;
            ids.push_back(pending[i].id);
        }
        if (log) log->push_back({round, ids});
        source.observe(round, ids);
        std::vector<FlowRequest> rest;
        size_t k = 0;
        for (size_t i = 0; i < pending.size(); ++i) {
            if (k < chosen.size() && chosen[k] == i)
                ++k;
            else
                rest.push_back(std::move(pending[i]));
        }
        pending = std::move(rest);
        ++round;
        if (round > (1ll << 40)) throw std::logic_error("online run did not terminate");
    }
    result.rounds = round;
    result.trace.validate();
    return result;
}

RunResult run_policy(const Instance& inst, Policy policy, std::vector<StepLog>* log) {
    InstanceSource source(inst);
    return run_policy(source, policy, log);
}

AmrtResult a_mrt_run(const Instance& stream) {
    stream.validate();
    AmrtResult result;
    result.trace = stream;
    if (stream.flows.empty()) return result;

    std::vector<int> order(stream.flows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (stream.flows[a].release != stream.flows[b].release)
            return stream.flows[a].release < stream.flows[b].release;
        return stream.flows[a].id < stream.flows[b].id;
    });

    long long rho = 1;
    long long boundary_start = 0;
    size_t next = 0;
    std::vector<std::pair<long long, long long>> batch_spans;  // [first, last] committed rounds
    while (next < order.size()) {
        long long checkpoint = boundary_start + rho;
        std::vector<int> batch;
        while (next < order.size() && stream.flows[order[next]].release < checkpoint)
            batch.push_back(order[next++]);
        if (!batch.empty()) {
            long long min_release = stream.flows[batch.front()].release;
            // Escalate the guess until the batch fits inside shifted windows
            // of length rho; a batch alone always fits once rho covers its
            // serial length, so this terminates.
            for (;;) {
                long long shift = checkpoint - min_release;
                mrt::TcfsInstance tcfs;
                tcfs.sw = stream.sw;
                for (int f : batch) {
                    const auto& fl = stream.flows[f];
                    mrt::TcfsFlow tf{fl.id, fl.src, fl.dst, fl.demand, {}};
                    for (long long t = fl.release + shift; t < fl.release + shift + rho; ++t)
                        tf.active.push_back(t);
                    tcfs.flows.push_back(std::move(tf));
                }
                mrt::TcfsOutcome outcome = mrt::solve_tcfs(tcfs);
                if (outcome.feasible) {
                    long long hi = checkpoint;
                    for (const auto& [id, t] : outcome.assignment->round_of) {
                        result.schedule.assignment[id] = t;
                        hi = std::max(hi, t);
                    }
                    batch_spans.emplace_back(checkpoint, hi);  // committed from the boundary on
                    break;
                }
                ++rho;
            }
        }
        result.checkpoints.emplace_back(checkpoint, rho);
        boundary_start = checkpoint;
    }
    result.final_rho = rho;

    // Overlap instrumentation: batches with committed, unfinished flows.
    std::map<long long, int> delta;
    for (const auto& [lo, hi] : batch_spans) {
        ++delta[lo];
        --delta[hi + 1];
    }
    int depth = 0;
    for (const auto& [t, d] : delta) {
        depth += d;
        result.max_batch_overlap = std::max(result.max_batch_overlap, depth);
    }
    return result;
}

}  // namespace switchsched::online
