#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "switchsched/core.hpp"

namespace switchsched::online {

enum class Policy { MaxCard, MinRTime, MaxWeight };

const char* to_string(Policy p);
std::optional<Policy> parse_policy(std::string_view name);
inline const std::vector<Policy>& all_policies() {
    static const std::vector<Policy> k{Policy::MaxCard, Policy::MinRTime, Policy::MaxWeight};
    return k;
}

// Reveals flows at their release rounds; adversaries implement this too and
// may adapt to the observed matchings.
class FlowSource {
  public:
    virtual ~FlowSource() = default;
    virtual const SwitchSpec& spec() const = 0;
    virtual std::vector<FlowRequest> release(long long round) = 0;
    virtual void observe(long long round, const std::vector<std::string>& scheduled_ids) = 0;
    virtual bool exhausted(long long round) const = 0;
};

class InstanceSource : public FlowSource {
  public:
    explicit InstanceSource(const Instance& inst);
    const SwitchSpec& spec() const override { return inst_.sw; }
    std::vector<FlowRequest> release(long long round) override;
    void observe(long long, const std::vector<std::string>&) override {}
    bool exhausted(long long round) const override;

  private:
    Instance inst_;
    std::vector<int> order_;  // flow indices sorted by release
    size_t next_ = 0;
    long long last_release_ = 0;
};

// One round of the given policy on the pending (released, unscheduled) unit
// flows. Returns indices into `pending`. Capacities above one are honored by
// matching over round-robin port copies.
std::vector<size_t> policy_step(const SwitchSpec& sw, const std::vector<FlowRequest>& pending,
                                long long round, Policy policy);

struct StepLog {
    long long round = 0;
    std::vector<std::string> scheduled;
};

struct RunResult {
    Instance trace;  // every flow the source released
    IntegralSchedule schedule;
    long long rounds = 0;
};

RunResult run_policy(FlowSource& source, Policy policy, std::vector<StepLog>* log = nullptr);
RunResult run_policy(const Instance& inst, Policy policy, std::vector<StepLog>* log = nullptr);

struct AmrtResult {
    Instance trace;
    IntegralSchedule schedule;
    long long final_rho = 1;
    int max_batch_overlap = 0;
    std::vector<std::pair<long long, long long>> checkpoints;  // (round, rho used)
};

// Batched online scheduler: at each boundary of the guessed rho, the flows
// that arrived since the previous boundary are scheduled offline inside
// shifted windows of length rho, escalating rho until the batch fits. The
// guess never decreases; every flow finishes within twice the final rho of
// its release, and committed batches overlap pairwise at most.
AmrtResult a_mrt_run(const Instance& stream);

}  // namespace switchsched::online
