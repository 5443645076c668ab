#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "switchsched/art.hpp"
#include "switchsched/gen.hpp"
#include "switchsched/lp.hpp"

using namespace switchsched;

namespace {

Instance unit_pair_conflict() {  // two unit flows on one unit port pair
    Instance inst;
    inst.sw = uniform_switch(1, 1, 1);
    inst.flows.push_back({"a", 0, 0, 1, 0, std::nullopt});
    inst.flows.push_back({"b", 0, 0, 1, 0, std::nullopt});
    return inst;
}

Instance single_unit() {
    Instance inst;
    inst.sw = uniform_switch(1, 1, 1);
    inst.flows.push_back({"a", 0, 0, 1, 0, std::nullopt});
    return inst;
}

double solve_value(const art::ArtLp& m) {
    auto sol = lp::solve_min(m.model);
    REQUIRE(sol.status == lp::Status::Optimal);
    return sol.objective;
}

// Direct interval scan: max over ports and [t1,t2] of volume - cap * length.
long long scan_backlog(const Instance& inst, const std::vector<long long>& rounds) {
    long long max_t = 0;
    for (long long t : rounds) max_t = std::max(max_t, t);
    long long best = 0;
    for (int p = 0; p < inst.sw.total_ports(); ++p) {
        PortId port = inst.sw.unflat(p);
        long long cap = inst.sw.capacity(port);
        for (long long t1 = 0; t1 <= max_t; ++t1)
            for (long long t2 = t1; t2 <= max_t; ++t2) {
                long long vol = 0;
                for (size_t f = 0; f < inst.flows.size(); ++f) {
                    bool incident = (port.side == Side::Input && inst.flows[f].src == port.index) ||
                                    (port.side == Side::Output && inst.flows[f].dst == port.index);
                    if (incident && rounds[f] >= t1 && rounds[f] <= t2)
                        vol += inst.flows[f].demand;
                }
                best = std::max(best, vol - cap * (t2 - t1 + 1));
            }
    }
    return std::max<long long>(best, 0);
}

}  // namespace

TEST_CASE("single unit flow relaxes to one half") {
    Instance inst = single_unit();
    CHECK(solve_value(art::build_art_lp(inst, inst.default_horizon())) == doctest::Approx(0.5));
    CHECK(art::art_lower_bound(inst) == doctest::Approx(0.5));
    CHECK(solve_value(art::build_lp0(inst, inst.default_horizon())) == doctest::Approx(0.5));
}

TEST_CASE("empty instance has zero bound") {
    Instance inst;
    inst.sw = uniform_switch(2, 2, 1);
    CHECK(art::art_lower_bound(inst) == doctest::Approx(0.0));
}

TEST_CASE("conflicting pair: per-round value 2 bounds the integral 3") {
    Instance inst = unit_pair_conflict();
    double v = solve_value(art::build_art_lp(inst, inst.default_horizon()));
    CHECK(v == doctest::Approx(2.0));
    CHECK(art::art_lower_bound(inst) == doctest::Approx(2.0));
    CHECK(oracles::brute_min_total_response(inst) == 3);
    // the block relaxation only loosens it
    double v0 = solve_value(art::build_lp0(inst, inst.default_horizon()));
    CHECK(v0 <= 2.0 + 1e-9);
}

TEST_CASE("parallel flows decompose into independent halves") {
    Instance inst;
    inst.sw = uniform_switch(4, 4, 1);
    for (int i = 0; i < 4; ++i)
        inst.flows.push_back({std::to_string(i), i, i, 1, 0, std::nullopt});
    CHECK(art::art_lower_bound(inst) == doctest::Approx(2.0));  // n/2
}

TEST_CASE("horizon too small is an explicit error") {
    Instance inst = single_unit();
    inst.flows[0].release = 5;
    CHECK_THROWS_AS(art::build_art_lp(inst, 3), std::invalid_argument);
}

TEST_CASE("block relaxation never exceeds the per-round value at unit capacity") {
    // The two objectives only agree when kappa = 1; with larger capacities
    // the block LP's 1/2 constant exceeds 1/(2 kappa) and the chain breaks.
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Instance inst = gen::random_instance(3, 3, 6, 1, 4, seed, 1);
        long long h = inst.default_horizon();
        double per_round = solve_value(art::build_art_lp(inst, h));
        double block = solve_value(art::build_lp0(inst, h));
        CHECK(block <= per_round + 1e-6);
    }
}

TEST_CASE("windowed bound equals the full relaxation") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Instance inst = gen::random_instance(3, 3, 7, 2, 5, seed + 40, 2);
        double full = solve_value(art::build_art_lp(inst, inst.default_horizon()));
        CHECK(art::art_lower_bound(inst) == doctest::Approx(full).epsilon(1e-7));
    }
}

TEST_CASE("lower bound is sound against brute force") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Instance inst = gen::random_instance(2 + seed % 3, 2 + seed % 2, 5, 1, 4, seed, 1);
        CHECK(static_cast<double>(oracles::brute_min_total_response(inst)) >=
              art::art_lower_bound(inst) - 1e-6);
    }
}

TEST_CASE("one flow rounds in a single iteration") {
    Instance inst = single_unit();
    art::RoundingTrace trace;
    auto pseudo = art::iterative_round(inst, inst.default_horizon(), &trace);
    CHECK(trace.iterations.size() == 1);
    CHECK(pseudo.round_of[0] == 0);
    CHECK(pseudo.backlog == 0);
}

TEST_CASE("conflicting pair honors the relaxation contract") {
    Instance inst = unit_pair_conflict();
    long long h = inst.default_horizon();
    art::RoundingTrace trace;
    auto pseudo = art::iterative_round(inst, h, &trace);
    double lp0 = solve_value(art::build_lp0(inst, h));
    CHECK(art::pseudo_cost(inst, pseudo.round_of) <= lp0 + 1e-6);
    CHECK(pseudo.backlog <= 10 * (1 + 1));  // 10 c_p (ceil(log2 2) + 1)
    for (size_t f = 0; f < inst.flows.size(); ++f)
        CHECK(pseudo.round_of[f] >= inst.flows[f].release);
    CHECK(pseudo.backlog == scan_backlog(inst, pseudo.round_of));
}

TEST_CASE("rounding contract on random unit instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Instance inst = gen::random_instance(3, 3, 8, 1, 5, seed + 77, 1);
        long long h = inst.default_horizon();
        long long n = static_cast<long long>(inst.flows.size());
        long long log_term =
            static_cast<long long>(std::ceil(std::log2(std::max<long long>(n, 1)))) + 1;
        art::RoundingTrace trace;
        auto pseudo = art::iterative_round(inst, h, &trace);

        CHECK(static_cast<long long>(trace.iterations.size()) <= log_term);
        double lp0 = solve_value(art::build_lp0(inst, h));
        CHECK(art::pseudo_cost(inst, pseudo.round_of) <= lp0 + 1e-6);
        CHECK(pseudo.backlog == scan_backlog(inst, pseudo.round_of));
        // interval bound with the constructive constant
        for (int p = 0; p < inst.sw.total_ports(); ++p) {
            PortId port = inst.sw.unflat(p);
            long long cap = inst.sw.capacity(port);
            for (long long t1 = 0; t1 < h; ++t1)
                for (long long t2 = t1; t2 < h; ++t2) {
                    long long vol = 0;
                    for (size_t f = 0; f < inst.flows.size(); ++f) {
                        bool inc =
                            (port.side == Side::Input && inst.flows[f].src == port.index) ||
                            (port.side == Side::Output && inst.flows[f].dst == port.index);
                        if (inc && pseudo.round_of[f] >= t1 && pseudo.round_of[f] <= t2) ++vol;
                    }
                    CHECK(vol <= cap * (t2 - t1 + 1) + 10 * cap * log_term);
                }
        }
        // halving of the surviving flow set
        for (size_t i = 1; i < trace.iterations.size(); ++i) {
            size_t prev = trace.iterations[i - 1].remaining.size();
            size_t cur = trace.iterations[i].remaining.size();
            CHECK(cur <= (prev + 1) / 2);
        }
        // groups built at levels >= 1 reach 4 c_p except possibly per-port tails
        for (const auto& it : trace.iterations)
            for (const auto& g : it.groups)
                if (!g.last_of_port)
                    CHECK(g.size >= 4.0 * inst.sw.capacity(g.port) - 1e-6);
    }
}

TEST_CASE("extraction: capacity-feasible pseudo needs one window") {
    Instance inst;
    inst.sw = uniform_switch(2, 2, 1);
    inst.flows.push_back({"a", 0, 0, 1, 0, std::nullopt});
    inst.flows.push_back({"b", 1, 1, 1, 0, std::nullopt});
    art::PseudoSchedule pseudo;
    pseudo.round_of = {0, 0};
    pseudo.backlog = 0;
    auto result = art::pseudo_to_schedule(inst, pseudo, 1);
    CHECK(result.window_length == 1);
    for (const auto& [id, t] : result.schedule.assignment) CHECK(t <= 2);  // delay <= 2h
    CHECK(validate_schedule_scaled(inst, result.schedule, 2.0, 0).valid());
}

TEST_CASE("extraction packs an overloaded toy at factor two") {
    // six unit flows stacked on a unit pair within two rounds
    Instance inst;
    inst.sw = uniform_switch(1, 1, 1);
    for (int i = 0; i < 6; ++i)
        inst.flows.push_back({std::to_string(i), 0, 0, 1, 0, std::nullopt});
    art::PseudoSchedule pseudo;
    pseudo.round_of = {0, 0, 0, 1, 1, 0};
    auto result = art::pseudo_to_schedule(inst, pseudo, 1);
    CHECK(result.pseudo.backlog == 4);  // recomputed, not trusted
    CHECK(result.window_length == 4);
    CHECK(validate_schedule_scaled(inst, result.schedule, 2.0, 0).valid());
    auto report = response_metrics(inst, result.schedule);
    CHECK(static_cast<double>(report.total) <=
          result.lp_lower_bound +
              static_cast<double>(inst.flows.size()) *
                  (2.0 * static_cast<double>(result.window_length) +
                   static_cast<double>(result.pseudo.backlog)));
}

TEST_CASE("full pipeline at c in {1,2} on random unit instances") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Instance inst = gen::random_instance(3, 3, 10, 1, 4, seed + 11, 1);
        for (long long c : {1ll, 2ll}) {
            auto result = art::solve_art(inst, c);
            CHECK(validate_schedule_scaled(inst, result.schedule, 1.0 + static_cast<double>(c), 0)
                      .valid());
            auto report = response_metrics(inst, result.schedule);  // throws if before release
            CHECK(static_cast<double>(report.total) <=
                  result.lp_lower_bound +
                      static_cast<double>(inst.flows.size()) *
                          (2.0 * static_cast<double>(result.window_length) +
                           static_cast<double>(result.pseudo.backlog)));
        }
    }
}

TEST_CASE("extraction requires unit demands") {
    Instance inst;
    inst.sw = uniform_switch(1, 1, 2);
    inst.flows.push_back({"a", 0, 0, 2, 0, std::nullopt});
    art::PseudoSchedule pseudo;
    pseudo.round_of = {0};
    CHECK_THROWS_AS(art::pseudo_to_schedule(inst, pseudo, 1), std::invalid_argument);
}

TEST_CASE("empty instance yields a zero-cost result") {
    Instance inst;
    inst.sw = uniform_switch(2, 2, 1);
    auto result = art::solve_art(inst, 1);
    CHECK(result.schedule.assignment.empty());
    CHECK(result.lp_lower_bound == doctest::Approx(0.0));
}
