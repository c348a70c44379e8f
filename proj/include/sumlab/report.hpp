#ifndef SUMLAB_REPORT_HPP
#define SUMLAB_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sumlab/common.hpp"

namespace sumlab {

/// One verified assertion: an observed quantity against its claimed bound.
struct Check {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double bound = 0.0;
};

/// A CSV-exportable trace: named columns plus rows of doubles.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Structured result of an experiment: named scalar values, pass/fail
// checks, and traces for plotting.  Everything in here is deterministic
// for a fixed seed; wall-clock time lives outside the report.
struct Report {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> values;
    std::vector<Table> tables;
    std::vector<std::string> notes;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void check_le(const std::string& what, double observed, double bound) {
        checks.push_back({what, observed <= bound, observed, bound});
    }

    void check_true(const std::string& what, bool ok) {
        checks.push_back({what, ok, ok ? 1.0 : 0.0, 1.0});
    }

    void value(const std::string& key, double v) { values.emplace_back(key, v); }
};

} // namespace sumlab

#endif
