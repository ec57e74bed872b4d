#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kfb {

// One result line; every line carries exactly one provenance tag:
// "computed", "trivial", or "cited(...)" (possibly suffixed "+computed").
struct ReportLine {
    std::string key;
    std::string value;
    std::string tag;
};

class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void input(const std::string& key, const std::string& value) {
        inputs_.emplace_back(key, value);
    }
    void line(const std::string& key, const std::string& value, const std::string& tag) {
        lines_.push_back({key, value, tag});
    }

    const std::string& command() const { return command_; }
    const std::vector<std::pair<std::string, std::string>>& inputs() const { return inputs_; }
    const std::vector<ReportLine>& lines() const { return lines_; }

    std::string text() const;
    // Flat object: command, input.<key>, <key>, <key>#provenance.
    std::string json() const;

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<ReportLine> lines_;
};

} // namespace kfb
