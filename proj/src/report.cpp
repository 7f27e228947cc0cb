#include "qgw/report.hpp"

namespace qgw {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Error: return "error";
    }
    return "error";
}

Check& Report::add(std::string axiom, std::string anchor, double residual, double threshold) {
    checks.push_back(Check{std::move(axiom), std::move(anchor), residual, threshold, false});
    return checks.back();
}

Check& Report::skip(std::string axiom, std::string anchor, double threshold) {
    checks.push_back(Check{std::move(axiom), std::move(anchor), std::numeric_limits<double>::infinity(), threshold, true});
    return checks.back();
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (Check c : other.checks) {
        c.axiom = prefix + c.axiom;
        checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : other.values) values.emplace_back(prefix + k, v);
    if (error.empty() && !other.error.empty()) error = other.error;
}

Verdict Report::verdict() const {
    if (!error.empty()) return Verdict::Error;
    for (const auto& c : checks)
        if (!c.passed()) return Verdict::Fail;
    return Verdict::Pass;
}

const Check* Report::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed()) return &c;
    return nullptr;
}

const Check* Report::find(const std::string& axiom) const {
    for (const auto& c : checks)
        if (c.axiom == axiom) return &c;
    return nullptr;
}

}  // namespace qgw
