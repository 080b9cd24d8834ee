#pragma once

#include <string>
#include <vector>

namespace qinduct {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string title;
    std::vector<CheckResult> checks;

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, detail});
    }
    void merge(const Report& o) {
        for (const auto& c : o.checks) checks.push_back(c);
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    size_t failures() const {
        size_t n = 0;
        for (const auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }
};

}  // namespace qinduct
