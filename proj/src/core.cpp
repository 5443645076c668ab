#include "switchsched/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace switchsched {

std::string to_string(const PortId& p) {
    std::ostringstream os;
    os << (p.side == Side::Input ? "in" : "out") << p.index;
    return os.str();
}

long long SwitchSpec::capacity(PortId p) const {
    return p.side == Side::Input ? capacity_in.at(p.index) : capacity_out.at(p.index);
}

void SwitchSpec::validate() const {
    if (inputs < 0 || outputs < 0) throw std::invalid_argument("negative port count");
    if (static_cast<int>(capacity_in.size()) != inputs ||
        static_cast<int>(capacity_out.size()) != outputs)
        throw std::invalid_argument("capacity vector size does not match port count");
    for (long long c : capacity_in)
        if (c < 1) throw std::invalid_argument("input capacity must be >= 1");
    for (long long c : capacity_out)
        if (c < 1) throw std::invalid_argument("output capacity must be >= 1");
}

SwitchSpec uniform_switch(int m, int m_prime, long long capacity) {
    SwitchSpec sw;
    sw.inputs = m;
    sw.outputs = m_prime;
    sw.capacity_in.assign(m, capacity);
    sw.capacity_out.assign(m_prime, capacity);
    return sw;
}

long long Instance::d_max() const {
    long long d = 0;
    for (const auto& f : flows) d = std::max(d, f.demand);
    return d;
}

long long Instance::max_release() const {
    long long r = 0;
    for (const auto& f : flows) r = std::max(r, f.release);
    return r;
}

long long Instance::default_horizon() const {
    long long h = max_release();
    for (const auto& f : flows) h += (f.demand + kappa(f) - 1) / kappa(f);
    return std::max<long long>(h, 1);
}

std::vector<std::vector<int>> Instance::flows_by_port() const {
    std::vector<std::vector<int>> by_port(sw.total_ports());
    for (int i = 0; i < static_cast<int>(flows.size()); ++i) {
        by_port[sw.flat({Side::Input, flows[i].src})].push_back(i);
        by_port[sw.flat({Side::Output, flows[i].dst})].push_back(i);
    }
    return by_port;
}

void Instance::validate() const {
    sw.validate();
    std::unordered_set<std::string> ids;
    for (const auto& f : flows) {
        if (!ids.insert(f.id).second) throw std::invalid_argument("duplicate flow id: " + f.id);
        if (f.src < 0 || f.src >= sw.inputs) throw std::invalid_argument("flow " + f.id + ": bad src");
        if (f.dst < 0 || f.dst >= sw.outputs) throw std::invalid_argument("flow " + f.id + ": bad dst");
        if (f.demand < 1) throw std::invalid_argument("flow " + f.id + ": demand must be >= 1");
        if (f.demand > kappa(f))
            throw std::invalid_argument("flow " + f.id + ": demand exceeds min endpoint capacity");
        if (f.release < 0) throw std::invalid_argument("flow " + f.id + ": negative release");
        if (f.active) {
            if (f.active->empty()) throw std::invalid_argument("flow " + f.id + ": empty active set");
            long long prev = -1;
            for (long long t : *f.active) {
                if (t < f.release)
                    throw std::invalid_argument("flow " + f.id + ": active round before release");
                if (t <= prev)
                    throw std::invalid_argument("flow " + f.id + ": active set not sorted/unique");
                prev = t;
            }
        }
    }
}

std::string Violation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::BeforeRelease:
            os << "flow " << flow_id << " scheduled at round " << round << " before its release";
            break;
        case Kind::OutsideActive:
            os << "flow " << flow_id << " scheduled at round " << round << " outside its active set";
            break;
        case Kind::PortOverload:
            os << "port " << to_string(port) << " at round " << round << ": load " << load
               << " exceeds " << limit;
            break;
    }
    return os.str();
}

namespace {

ValidationVerdict validate_impl(const Instance& inst, const IntegralSchedule& sched,
                                const std::vector<long long>& limit_per_flat_port) {
    std::unordered_set<std::string> known;
    for (const auto& f : inst.flows) known.insert(f.id);
    for (const auto& [id, round] : sched.assignment) {
        if (!known.count(id)) throw std::invalid_argument("schedule names unknown flow id: " + id);
        if (round < 0) throw std::invalid_argument("flow " + id + ": negative round");
    }
    if (sched.assignment.size() != inst.flows.size())
        throw std::invalid_argument("schedule does not cover every flow exactly once");

    ValidationVerdict verdict;
    std::map<std::pair<int, long long>, long long> load;  // (flat port, round) -> demand
    for (const auto& f : inst.flows) {
        long long t = sched.assignment.at(f.id);
        if (t < f.release)
            verdict.violations.push_back({Violation::Kind::BeforeRelease, f.id, {}, t, 0, 0});
        if (f.active && !std::binary_search(f.active->begin(), f.active->end(), t))
            verdict.violations.push_back({Violation::Kind::OutsideActive, f.id, {}, t, 0, 0});
        load[{inst.sw.flat({Side::Input, f.src}), t}] += f.demand;
        load[{inst.sw.flat({Side::Output, f.dst}), t}] += f.demand;
    }
    for (const auto& [key, used] : load) {
        long long limit = limit_per_flat_port[key.first];
        if (used > limit) {
            Violation v;
            v.kind = Violation::Kind::PortOverload;
            v.port = inst.sw.unflat(key.first);
            v.round = key.second;
            v.load = used;
            v.limit = limit;
            verdict.violations.push_back(v);
        }
    }
    return verdict;
}

}  // namespace

ValidationVerdict validate_schedule(const Instance& inst, const IntegralSchedule& sched,
                                    long long capacity_bonus) {
    if (capacity_bonus < 0) throw std::invalid_argument("capacity bonus must be nonnegative");
    std::vector<long long> limits(inst.sw.total_ports());
    for (int p = 0; p < inst.sw.total_ports(); ++p)
        limits[p] = inst.sw.capacity(inst.sw.unflat(p)) + capacity_bonus;
    return validate_impl(inst, sched, limits);
}

ValidationVerdict validate_schedule_scaled(const Instance& inst, const IntegralSchedule& sched,
                                           double capacity_factor, long long additive_bonus) {
    if (capacity_factor < 1.0 || additive_bonus < 0)
        throw std::invalid_argument("augmented budget must dominate the base capacity");
    std::vector<long long> limits(inst.sw.total_ports());
    for (int p = 0; p < inst.sw.total_ports(); ++p) {
        long long c = inst.sw.capacity(inst.sw.unflat(p));
        limits[p] = static_cast<long long>(std::floor(capacity_factor * static_cast<double>(c) +
                                                      1e-9)) +
                    additive_bonus;
    }
    return validate_impl(inst, sched, limits);
}

ResponseReport response_metrics(const Instance& inst, const IntegralSchedule& sched) {
    if (sched.assignment.size() != inst.flows.size())
        throw std::invalid_argument("schedule does not cover every flow exactly once");
    ResponseReport report;
    for (const auto& f : inst.flows) {
        auto it = sched.assignment.find(f.id);
        if (it == sched.assignment.end())
            throw std::invalid_argument("schedule missing flow id: " + f.id);
        long long t = it->second;
        if (t < f.release)
            throw std::invalid_argument("flow " + f.id + " scheduled before release; response undefined");
        FlowResponse r;
        r.id = f.id;
        r.completion = t + 1;
        r.response = r.completion - f.release;
        report.total += r.response;
        report.maximum = std::max(report.maximum, r.response);
        report.per_flow.push_back(std::move(r));
    }
    report.average = inst.flows.empty()
                         ? 0.0
                         : static_cast<double>(report.total) / static_cast<double>(inst.flows.size());
    return report;
}

}  // namespace switchsched
