#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "switchsched/core.hpp"
#include "switchsched/mrt.hpp"
#include "switchsched/online.hpp"

namespace switchsched::gen {

// Uniform random instance: capacities in [1, cap_max], demands in
// [1, min(d_max, kappa)], releases in [0, horizon). Deterministic per seed.
Instance random_instance(int m, int m_prime, int n, long long d_max, long long horizon,
                         std::uint64_t seed, long long cap_max = 1);

// Random time-constrained instance: each flow's active set is a nonempty
// random subset of [0, rounds).
mrt::TcfsInstance random_tcfs(int m, int m_prime, int n, long long d_max, long long rounds,
                              std::uint64_t seed, long long cap_max = 1);

// Restricted timetable instance. hours[i] is a subset of {1,2,3} with at
// least two entries; classes[i] lists the |hours[i]| classes teacher i must
// meet. Satisfiability additionally requires every lesson to sit in one of
// the teacher's hours.
struct RttInstance {
    std::vector<std::vector<int>> hours;
    std::vector<std::vector<int>> classes;

    int teachers() const { return static_cast<int>(hours.size()); }
    int class_count() const;
    void validate() const;
};

std::string rtt_to_json(const RttInstance& rtt);
RttInstance rtt_from_json(const std::string& text);

struct RttReduction {
    Instance instance;   // unit capacities and demands
    long long rho = 3;   // schedulable within this response bound iff satisfiable
};

// The timetable-to-scheduling gadget: solid flows from the class lists,
// releases at each teacher's first hour, blocker triples that pin every
// class port after round 3, and per-teacher gadgets that occupy the teacher
// port in its missing hour. Rounds are zero-indexed.
RttReduction rtt_reduce(const RttInstance& rtt);

// Adversaries emit flows as a deterministic function of the observed
// matchings; used to realize the online lower bounds against any policy.
class AdaptiveAdversary : public online::FlowSource {};

// Two solid flows (in0->out0, in0->out1) per round for T rounds; afterwards
// one flow per round from a fresh input toward whichever output holds the
// larger backlog, through round M-1. Requires M >= 4T.
std::unique_ptr<AdaptiveAdversary> gadget_avg_lower(long long T, long long M);

// Four solid flows over two inputs in round 0; in round 1 a fresh input
// sends one flow to each output left unserved in round 0.
std::unique_ptr<AdaptiveAdversary> gadget_max_lower();

}  // namespace switchsched::gen
