#include "kfb/report.hpp"

#include <sstream>

#include <json.hpp>

namespace kfb {

std::string Report::text() const {
    std::ostringstream os;
    os << "command: " << command_ << "\n";
    for (const auto& [k, v] : inputs_) os << "input " << k << " = " << v << "\n";
    for (const auto& l : lines_) os << l.key << " = " << l.value << " [" << l.tag << "]\n";
    return os.str();
}

std::string Report::json() const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    for (const auto& [k, v] : inputs_) j["input." + k] = v;
    for (const auto& l : lines_) {
        j[l.key] = l.value;
        j[l.key + "#provenance"] = l.tag;
    }
    return j.dump(2) + "\n";
}

} // namespace kfb
