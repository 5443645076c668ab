#include "switchsched/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace switchsched {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["m"] = inst.sw.inputs;
    j["m_prime"] = inst.sw.outputs;
    j["capacities_in"] = inst.sw.capacity_in;
    j["capacities_out"] = inst.sw.capacity_out;
    json flows = json::array();
    for (const auto& f : inst.flows) {
        json jf;
        jf["id"] = f.id;
        jf["src"] = f.src;
        jf["dst"] = f.dst;
        jf["demand"] = f.demand;
        jf["release"] = f.release;
        if (f.active) jf["active"] = *f.active;
        flows.push_back(std::move(jf));
    }
    j["flows"] = std::move(flows);
    return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    json j = json::parse(text);
    Instance inst;
    inst.sw.inputs = j.at("m").get<int>();
    inst.sw.outputs = j.at("m_prime").get<int>();
    inst.sw.capacity_in = j.at("capacities_in").get<std::vector<long long>>();
    inst.sw.capacity_out = j.at("capacities_out").get<std::vector<long long>>();
    for (const auto& jf : j.at("flows")) {
        FlowRequest f;
        f.id = jf.at("id").get<std::string>();
        f.src = jf.at("src").get<int>();
        f.dst = jf.at("dst").get<int>();
        f.demand = jf.at("demand").get<long long>();
        f.release = jf.at("release").get<long long>();
        if (jf.contains("active")) f.active = jf.at("active").get<std::vector<long long>>();
        inst.flows.push_back(std::move(f));
    }
    inst.validate();
    return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
    write_file(path, instance_to_json(inst));
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

std::string schedule_to_json(const IntegralSchedule& sched) {
    json arr = json::array();
    for (const auto& [id, round] : sched.assignment) {
        json a;
        a["id"] = id;
        a["round"] = round;
        arr.push_back(std::move(a));
    }
    json j;
    j["assignments"] = std::move(arr);
    return j.dump(2) + "\n";
}

IntegralSchedule schedule_from_json(const std::string& text) {
    json j = json::parse(text);
    IntegralSchedule sched;
    for (const auto& a : j.at("assignments")) {
        std::string id = a.at("id").get<std::string>();
        long long round = a.at("round").get<long long>();
        if (!sched.assignment.emplace(id, round).second)
            throw std::invalid_argument("duplicate assignment for flow id: " + id);
    }
    return sched;
}

void save_schedule(const IntegralSchedule& sched, const std::string& path) {
    write_file(path, schedule_to_json(sched));
}

IntegralSchedule load_schedule(const std::string& path) {
    return schedule_from_json(read_file(path));
}

}  // namespace switchsched
