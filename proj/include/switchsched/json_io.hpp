#pragma once

#include <string>

#include "switchsched/core.hpp"

namespace switchsched {

// Canonical instance format:
//   {"m":int,"m_prime":int,"capacities_in":[int],"capacities_out":[int],
//    "flows":[{"id":str,"src":int,"dst":int,"demand":int,"release":int,"active":[int]?}]}
// Schedule format: {"assignments":[{"id":str,"round":int}]}
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

std::string schedule_to_json(const IntegralSchedule& sched);
IntegralSchedule schedule_from_json(const std::string& text);
void save_schedule(const IntegralSchedule& sched, const std::string& path);
IntegralSchedule load_schedule(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace switchsched
