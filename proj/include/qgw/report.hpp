#pragma once
//
// Certification reports: named axioms with residuals and thresholds.
//

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace qgw {

enum class Verdict { Pass, Fail, Error };

const char* to_string(Verdict v);

struct Check {
    std::string axiom;
    std::string anchor;
    double residual = 0.0;
    double threshold = 0.0;
    /// Not evaluated because an earlier axiom failed; counts as a failure.
    bool skipped = false;

    bool passed() const { return !skipped && residual <= threshold; }
};

struct Report {
    std::string command;
    double tolerance = 0.0;
    std::vector<Check> checks;
    /// Named scalar outputs (dimensions, ranks) carried along for display.
    std::vector<std::pair<std::string, double>> values;
    std::string error;

    Check& add(std::string axiom, std::string anchor, double residual, double threshold);
    Check& skip(std::string axiom, std::string anchor, double threshold);
    void value(std::string name, double v) { values.emplace_back(std::move(name), v); }
    /// Appends the other report's checks with a prefix on the axiom name.
    void merge(const Report& other, const std::string& prefix);

    Verdict verdict() const;
    bool passed() const { return verdict() == Verdict::Pass; }
    /// First failing check, or nullptr.
    const Check* first_failure() const;
    const Check* find(const std::string& axiom) const;
};

}  // namespace qgw
