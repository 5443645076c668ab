#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace switchsched {

enum class Side { Input, Output };

struct PortId {
    Side side = Side::Input;
    int index = 0;

    bool operator==(const PortId& o) const { return side == o.side && index == o.index; }
    bool operator<(const PortId& o) const {
        if (side != o.side) return side == Side::Input;
        return index < o.index;
    }
};

std::string to_string(const PortId& p);

// Switch geometry and per-port capacities (demand units per round).
struct SwitchSpec {
    int inputs = 0;
    int outputs = 0;
    std::vector<long long> capacity_in;   // size == inputs, all >= 1
    std::vector<long long> capacity_out;  // size == outputs, all >= 1

    long long capacity(PortId p) const;
    int total_ports() const { return inputs + outputs; }
    // Flat port numbering: inputs first, then outputs.
    int flat(PortId p) const { return p.side == Side::Input ? p.index : inputs + p.index; }
    PortId unflat(int f) const {
        return f < inputs ? PortId{Side::Input, f} : PortId{Side::Output, f - inputs};
    }
    void validate() const;  // throws std::invalid_argument
};

SwitchSpec uniform_switch(int m, int m_prime, long long capacity = 1);

struct FlowRequest {
    std::string id;
    int src = 0;  // input port index
    int dst = 0;  // output port index
    long long demand = 1;
    long long release = 0;
    // Admissible rounds; only used by the time-constrained pipeline. When
    // present it is nonempty, sorted, deduplicated, and >= release throughout.
    std::optional<std::vector<long long>> active;
};

struct Instance {
    SwitchSpec sw;
    std::vector<FlowRequest> flows;

    long long kappa(const FlowRequest& f) const {
        return std::min(sw.capacity_in[f.src], sw.capacity_out[f.dst]);
    }
    long long d_max() const;
    long long max_release() const;
    // max release + sum of ceil(d_e / kappa_e); always admits a serial schedule.
    long long default_horizon() const;
    // flat port -> indices of incident flows, in instance order.
    std::vector<std::vector<int>> flows_by_port() const;
    void validate() const;  // throws std::invalid_argument
};

// One execution round per flow.
struct IntegralSchedule {
    std::map<std::string, long long> assignment;
};

struct FlowResponse {
    std::string id;
    long long completion = 0;  // t_e + 1
    long long response = 0;    // completion - release
};

struct ResponseReport {
    std::vector<FlowResponse> per_flow;  // instance order
    long long total = 0;
    double average = 0.0;
    long long maximum = 0;
};

struct Violation {
    enum class Kind { BeforeRelease, OutsideActive, PortOverload };
    Kind kind = Kind::BeforeRelease;
    std::string flow_id;  // for flow-level violations
    PortId port{};        // for overloads
    long long round = 0;
    long long load = 0;
    long long limit = 0;
    std::string describe() const;
};

struct ValidationVerdict {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

// Checks coverage, release/active membership and per-(port, round) loads
// against capacity + capacity_bonus. Unknown ids, missing flows and negative
// rounds throw; soft constraint violations are reported in the verdict.
ValidationVerdict validate_schedule(const Instance& inst, const IntegralSchedule& sched,
                                    long long capacity_bonus);

// Same checks with a per-port budget of floor(factor * c_p) + additive_bonus.
// Used for resource-augmented outputs whose budget scales with capacity.
ValidationVerdict validate_schedule_scaled(const Instance& inst, const IntegralSchedule& sched,
                                           double capacity_factor, long long additive_bonus);

// Throws on coverage mismatch or a flow scheduled before release.
ResponseReport response_metrics(const Instance& inst, const IntegralSchedule& sched);

}  // namespace switchsched
