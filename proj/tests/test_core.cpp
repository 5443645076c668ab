#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "switchsched/core.hpp"
#include "switchsched/gen.hpp"
#include "switchsched/json_io.hpp"
#include "switchsched/rng.hpp"

using namespace switchsched;

namespace {

Instance one_by_one(long long cap = 1) {
    Instance inst;
    inst.sw = uniform_switch(1, 1, cap);
    inst.flows.push_back({"a", 0, 0, 1, 0, std::nullopt});
    return inst;
}

}  // namespace

TEST_CASE("single feasible flow validates") {
    Instance inst = one_by_one();
    IntegralSchedule sched;
    sched.assignment["a"] = 0;
    CHECK(validate_schedule(inst, sched, 0).valid());
}

TEST_CASE("capacity pigeonhole and bonus absorption") {
    Instance inst = one_by_one();
    inst.flows.push_back({"b", 0, 0, 1, 0, std::nullopt});
    IntegralSchedule sched;
    sched.assignment["a"] = 0;
    sched.assignment["b"] = 0;
    auto verdict = validate_schedule(inst, sched, 0);
    REQUIRE_FALSE(verdict.valid());
    // both the shared input and shared output overload
    CHECK(verdict.violations.size() == 2);
    CHECK(verdict.violations[0].kind == Violation::Kind::PortOverload);
    CHECK(verdict.violations[0].round == 0);
    CHECK(validate_schedule(inst, sched, 1).valid());
}

TEST_CASE("release and active membership are enforced") {
    Instance inst = one_by_one();
    inst.flows[0].release = 2;
    inst.flows[0].active = std::vector<long long>{2, 4};
    IntegralSchedule sched;
    sched.assignment["a"] = 3;
    auto verdict = validate_schedule(inst, sched, 0);
    REQUIRE(verdict.violations.size() == 1);
    CHECK(verdict.violations[0].kind == Violation::Kind::OutsideActive);
    sched.assignment["a"] = 1;
    verdict = validate_schedule(inst, sched, 0);
    CHECK(verdict.violations.size() == 2);  // before release and outside active
}

TEST_CASE("validator errors on malformed schedules") {
    Instance inst = one_by_one();
    IntegralSchedule sched;
    sched.assignment["zz"] = 0;
    CHECK_THROWS_AS(validate_schedule(inst, sched, 0), std::invalid_argument);
    sched.assignment.clear();
    sched.assignment["a"] = -1;
    CHECK_THROWS_AS(validate_schedule(inst, sched, 0), std::invalid_argument);
}

TEST_CASE("bonus monotonicity on random instances") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Instance inst = gen::random_instance(3, 3, 6, 2, 4, seed, 2);
        Rng rng(seed + 1000);
        IntegralSchedule sched;
        for (const auto& f : inst.flows)
            sched.assignment[f.id] = f.release + static_cast<long long>(rng.uniform(3));
        for (long long bonus = 0; bonus < 4; ++bonus) {
            if (validate_schedule(inst, sched, bonus).valid()) {
                CHECK(validate_schedule(inst, sched, bonus + 1).valid());
                CHECK(validate_schedule(inst, sched, bonus + 3).valid());
            }
        }
    }
}

TEST_CASE("response metrics arithmetic") {
    Instance inst = one_by_one();
    IntegralSchedule sched;
    sched.assignment["a"] = 0;
    auto report = response_metrics(inst, sched);
    CHECK(report.per_flow[0].response == 1);

    inst.flows[0].release = 2;
    sched.assignment["a"] = 4;
    report = response_metrics(inst, sched);
    CHECK(report.per_flow[0].response == 3);
}

TEST_CASE("two-flow aggregates") {
    Instance inst = one_by_one();
    inst.flows.push_back({"b", 0, 0, 1, 0, std::nullopt});
    IntegralSchedule sched;
    sched.assignment["a"] = 0;
    sched.assignment["b"] = 1;
    auto report = response_metrics(inst, sched);
    CHECK(report.total == 3);
    CHECK(report.average == doctest::Approx(1.5));
    CHECK(report.maximum == 2);
}

TEST_CASE("negative response is an error, never clamped") {
    Instance inst = one_by_one();
    inst.flows[0].release = 3;
    IntegralSchedule sched;
    sched.assignment["a"] = 2;
    CHECK_THROWS_AS(response_metrics(inst, sched), std::invalid_argument);
}

TEST_CASE("metrics are invariant under flow reordering") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Instance inst = gen::random_instance(3, 4, 7, 2, 5, seed, 2);
        IntegralSchedule sched;
        for (const auto& f : inst.flows) sched.assignment[f.id] = f.release + 2;
        auto a = response_metrics(inst, sched);
        Instance shuffled = inst;
        std::reverse(shuffled.flows.begin(), shuffled.flows.end());
        auto b = response_metrics(shuffled, sched);
        CHECK(a.total == b.total);
        CHECK(a.maximum == b.maximum);
        CHECK(a.average == doctest::Approx(b.average));
    }
}

TEST_CASE("per-flow response at least one in valid schedules") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Instance inst = gen::random_instance(2, 2, 5, 3, 4, seed, 3);
        IntegralSchedule sched;
        for (const auto& f : inst.flows) sched.assignment[f.id] = f.release;
        auto report = response_metrics(inst, sched);
        for (const auto& r : report.per_flow) CHECK(r.response >= 1);
    }
}

TEST_CASE("instance json round trip is canonical") {
    Instance inst = gen::random_instance(3, 2, 5, 2, 4, 7, 2);
    inst.flows[1].active = std::vector<long long>{inst.flows[1].release,
                                                  inst.flows[1].release + 2};
    std::string text = instance_to_json(inst);
    Instance back = instance_from_json(text);
    CHECK(instance_to_json(back) == text);
    CHECK(back.flows.size() == inst.flows.size());
    CHECK(back.flows[1].active == inst.flows[1].active);
    CHECK(text.find("\"m\"") != std::string::npos);
    CHECK(text.find("\"m_prime\"") != std::string::npos);
    CHECK(text.find("\"capacities_in\"") != std::string::npos);
}

TEST_CASE("schedule json round trip") {
    IntegralSchedule sched;
    sched.assignment["a"] = 3;
    sched.assignment["b"] = 0;
    std::string text = schedule_to_json(sched);
    CHECK(schedule_from_json(text).assignment == sched.assignment);
    CHECK(text.find("\"assignments\"") != std::string::npos);
}

TEST_CASE("instance validation rejects bad data") {
    Instance inst = one_by_one();
    inst.flows[0].demand = 2;  // exceeds kappa
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
    inst = one_by_one();
    inst.flows.push_back({"a", 0, 0, 1, 0, std::nullopt});  // duplicate id
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
    inst = one_by_one();
    inst.flows[0].active = std::vector<long long>{};  // empty active
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}
