#include "switchsched/gen.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "switchsched/rng.hpp"

namespace switchsched::gen {

using nlohmann::json;

Instance random_instance(int m, int m_prime, int n, long long d_max, long long horizon,
                         std::uint64_t seed, long long cap_max) {
    if (m < 1 || m_prime < 1 || n < 0 || d_max < 1 || horizon < 1 || cap_max < 1)
        throw std::invalid_argument("generator parameters must be positive");
    Rng rng(seed);
    Instance inst;
    inst.sw.inputs = m;
    inst.sw.outputs = m_prime;
    for (int i = 0; i < m; ++i) inst.sw.capacity_in.push_back(rng.uniform_int(1, cap_max));
    for (int j = 0; j < m_prime; ++j) inst.sw.capacity_out.push_back(rng.uniform_int(1, cap_max));
    for (int k = 0; k < n; ++k) {
        FlowRequest f;
        f.id = std::to_string(k);
        f.src = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(m)));
        f.dst = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(m_prime)));
        long long kappa = std::min(inst.sw.capacity_in[f.src], inst.sw.capacity_out[f.dst]);
        f.demand = rng.uniform_int(1, std::min(d_max, kappa));
        f.release = rng.uniform_int(0, horizon - 1);
        inst.flows.push_back(std::move(f));
    }
    inst.validate();
    return inst;
}

mrt::TcfsInstance random_tcfs(int m, int m_prime, int n, long long d_max, long long rounds,
                              std::uint64_t seed, long long cap_max) {
    if (rounds < 1) throw std::invalid_argument("rounds must be positive");
    Rng rng(seed);
    mrt::TcfsInstance inst;
    inst.sw.inputs = m;
    inst.sw.outputs = m_prime;
    for (int i = 0; i < m; ++i) inst.sw.capacity_in.push_back(rng.uniform_int(1, cap_max));
    for (int j = 0; j < m_prime; ++j) inst.sw.capacity_out.push_back(rng.uniform_int(1, cap_max));
    for (int k = 0; k < n; ++k) {
        mrt::TcfsFlow f;
        f.id = std::to_string(k);
        f.src = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(m)));
        f.dst = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(m_prime)));
        long long kappa = std::min(inst.sw.capacity_in[f.src], inst.sw.capacity_out[f.dst]);
        f.demand = rng.uniform_int(1, std::min(d_max, kappa));
        for (long long t = 0; t < rounds; ++t)
            if (rng.uniform(2) == 0) f.active.push_back(t);
        if (f.active.empty()) f.active.push_back(rng.uniform_int(0, rounds - 1));
        inst.flows.push_back(std::move(f));
    }
    inst.validate();
    return inst;
}

int RttInstance::class_count() const {
    int m = 0;
    for (const auto& g : classes)
        for (int j : g) m = std::max(m, j + 1);
    return m;
}

void RttInstance::validate() const {
    if (hours.size() != classes.size())
        throw std::invalid_argument("hours/classes length mismatch");
    for (size_t i = 0; i < hours.size(); ++i) {
        if (hours[i].size() < 2) throw std::invalid_argument("each teacher needs >= 2 hours");
        std::set<int> hs(hours[i].begin(), hours[i].end());
        if (hs.size() != hours[i].size()) throw std::invalid_argument("duplicate hour");
        for (int h : hs)
            if (h < 1 || h > 3) throw std::invalid_argument("hours must lie in {1,2,3}");
        std::set<int> cs(classes[i].begin(), classes[i].end());
        if (cs.size() != classes[i].size()) throw std::invalid_argument("duplicate class");
        for (int c : cs)
            if (c < 0) throw std::invalid_argument("negative class index");
        if (classes[i].size() != hours[i].size())
            throw std::invalid_argument("|classes| must equal |hours| per teacher");
    }
}

std::string rtt_to_json(const RttInstance& rtt) {
    json j;
    j["T"] = rtt.hours;
    j["g"] = rtt.classes;
    return j.dump(2) + "\n";
}

RttInstance rtt_from_json(const std::string& text) {
    json j = json::parse(text);
    RttInstance rtt;
    rtt.hours = j.at("T").get<std::vector<std::vector<int>>>();
    rtt.classes = j.at("g").get<std::vector<std::vector<int>>>();
    rtt.validate();
    return rtt;
}

RttReduction rtt_reduce(const RttInstance& rtt) {
    rtt.validate();
    const int m = rtt.teachers();
    const int mc = rtt.class_count();

    RttReduction out;
    Instance& inst = out.instance;

    // Outputs: the classes, then one extra output per gadget teacher.
    // Inputs: the teachers, then three blockers per class, then three
    // dotted inputs per gadget teacher.
    std::vector<int> gadget_output(m, -1);
    int outputs = mc;
    for (int i = 0; i < m; ++i) {
        std::set<int> hs(rtt.hours[i].begin(), rtt.hours[i].end());
        bool needs_gadget = hs == std::set<int>{1, 3} || hs == std::set<int>{1, 2};
        if (needs_gadget) gadget_output[i] = outputs++;
    }
    int inputs = m + 3 * mc;
    std::vector<int> dotted_input(m, -1);
    for (int i = 0; i < m; ++i)
        if (gadget_output[i] >= 0) {
            dotted_input[i] = inputs;
            inputs += 3;
        }
    inst.sw = uniform_switch(inputs, outputs, 1);

    // Solid flows: teacher i to each of its classes, released at the
    // teacher's earliest hour (shifted to zero-indexed rounds).
    for (int i = 0; i < m; ++i) {
        long long h0 = *std::min_element(rtt.hours[i].begin(), rtt.hours[i].end());
        std::vector<int> cls = rtt.classes[i];
        std::sort(cls.begin(), cls.end());
        for (int j : cls) {
            FlowRequest f;
            f.id = "solid_" + std::to_string(i) + "_" + std::to_string(j);
            f.src = i;
            f.dst = j;
            f.release = h0 - 1;
            inst.flows.push_back(std::move(f));
        }
    }
    // Blocker triples: occupy every class output from round 3 on, so solid
    // flows can only use rounds 0..2.
    for (int j = 0; j < mc; ++j)
        for (int k = 0; k < 3; ++k) {
            FlowRequest f;
            f.id = "blk_" + std::to_string(j) + "_" + std::to_string(k);
            f.src = m + 3 * j + k;
            f.dst = j;
            f.release = 3;
            inst.flows.push_back(std::move(f));
        }
    // Teacher gadgets: a dashed flow that must run immediately (its output
    // is pinned by three dotted flows right after), occupying the teacher
    // port in the hour missing from its availability.
    for (int i = 0; i < m; ++i) {
        if (gadget_output[i] < 0) continue;
        std::set<int> hs(rtt.hours[i].begin(), rtt.hours[i].end());
        long long dash_release = hs == std::set<int>{1, 3} ? 1 : 2;  // blocked hour - 1
        FlowRequest dash;
        dash.id = "dash_" + std::to_string(i);
        dash.src = i;
        dash.dst = gadget_output[i];
        dash.release = dash_release;
        inst.flows.push_back(std::move(dash));
        for (int k = 0; k < 3; ++k) {
            FlowRequest dot;
            dot.id = "dot_" + std::to_string(i) + "_" + std::to_string(k);
            dot.src = dotted_input[i] + k;
            dot.dst = gadget_output[i];
            dot.release = dash_release + 1;
            inst.flows.push_back(std::move(dot));
        }
    }
    inst.validate();
    out.rho = 3;
    return out;
}

namespace {

class AvgLowerAdversary : public AdaptiveAdversary {
  public:
    AvgLowerAdversary(long long T, long long M) : T_(T), M_(M) {
        if (T < 1) throw std::invalid_argument("T must be positive");
        if (M < 4 * T) throw std::invalid_argument("need M >= 4T");
        sw_ = uniform_switch(2, 2, 1);  // inputs {0: solid, 1: dashed}, outputs {0, 1}
    }

    const SwitchSpec& spec() const override { return sw_; }

    std::vector<FlowRequest> release(long long round) override {
        std::vector<FlowRequest> out;
        if (round < T_) {
            for (int side = 0; side < 2; ++side) {
                FlowRequest f;
                f.id = "s" + std::to_string(2 * round + side);
                f.src = 0;
                f.dst = side;
                f.release = round;
                pending_per_output_[side].insert(f.id);
                out.push_back(std::move(f));
            }
        } else if (round < M_) {
            if (target_ < 0) {
                // One inspection after the solid phase: hit the more
                // backlogged output (ties toward output 1, matching the
                // construction's orientation).
                target_ = pending_per_output_[1].size() >= pending_per_output_[0].size() ? 1 : 0;
            }
            FlowRequest f;
            f.id = "d" + std::to_string(round - T_);
            f.src = 1;
            f.dst = target_;
            f.release = round;
            out.push_back(std::move(f));
        }
        return out;
    }

    void observe(long long, const std::vector<std::string>& scheduled) override {
        for (const auto& id : scheduled) {
            pending_per_output_[0].erase(id);
            pending_per_output_[1].erase(id);
        }
    }

    bool exhausted(long long round) const override { return round >= M_; }

  private:
    long long T_, M_;
    SwitchSpec sw_;
    std::set<std::string> pending_per_output_[2];
    int target_ = -1;
};

class MaxLowerAdversary : public AdaptiveAdversary {
  public:
    MaxLowerAdversary() {
        sw_ = uniform_switch(3, 4, 1);  // inputs {0,1: solid, 2: dashed}, outputs {0..3}
    }

    const SwitchSpec& spec() const override { return sw_; }

    std::vector<FlowRequest> release(long long round) override {
        std::vector<FlowRequest> out;
        if (round == 0) {
            int k = 0;
            for (int src = 0; src < 2; ++src)
                for (int dst = 2 * src; dst < 2 * src + 2; ++dst) {
                    FlowRequest f;
                    f.id = "s" + std::to_string(k++);
                    f.src = src;
                    f.dst = dst;
                    f.release = 0;
                    unserved_.insert(f.dst);
                    out.push_back(std::move(f));
                }
        } else if (round == 1) {
            // One dashed flow per solid input, toward an output that input
            // left unserved in round 0 (lowest index on ties).
            for (int src = 0; src < 2; ++src) {
                int dst = 2 * src;  // fallback if everything was served
                for (int cand = 2 * src; cand < 2 * src + 2; ++cand)
                    if (unserved_.count(cand)) {
                        dst = cand;
                        break;
                    }
                FlowRequest f;
                f.id = "d" + std::to_string(src);
                f.src = 2;
                f.dst = dst;
                f.release = 1;
                out.push_back(std::move(f));
            }
        }
        return out;
    }

    void observe(long long round, const std::vector<std::string>& scheduled) override {
        if (round != 0) return;
        for (const auto& id : scheduled) {
            if (id.size() == 2 && id[0] == 's') {
                int k = id[1] - '0';
                int dst = (k / 2) * 2 + k % 2;
                unserved_.erase(dst);
            }
        }
    }

    bool exhausted(long long round) const override { return round >= 2; }

  private:
    SwitchSpec sw_;
    std::set<int> unserved_;
};

}  // namespace

std::unique_ptr<AdaptiveAdversary> gadget_avg_lower(long long T, long long M) {
    return std::make_unique<AvgLowerAdversary>(T, M);
}

std::unique_ptr<AdaptiveAdversary> gadget_max_lower() {
    return std::make_unique<MaxLowerAdversary>();
}

}  // namespace switchsched::gen
