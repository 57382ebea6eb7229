#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "rcm/number.hpp"

namespace rcm {

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Outcome of an identity or inequality check over a batch of instances.
/// Serializes as {"identity", "instances", "max_abs_deviation", "pass", ...}.
struct Report {
    std::string identity;
    std::size_t instances = 0;
    bool pass = true;
    /// Conjecture scans: findings are reported but never gate.
    bool informational = false;
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json details = nlohmann::json::object();
    std::vector<nlohmann::json> witnesses;

    Report() = default;
    explicit Report(std::string id) : identity(std::move(id)) {}

    void note_deviation(const Rational& d) {
        Rational a = abs(d);
        if (!has_exact_ || a > max_exact_) max_exact_ = a;
        has_exact_ = true;
    }
    void note_deviation(double d) {
        d = std::fabs(d);
        if (!has_float_ || d > max_float_ || std::isnan(d)) max_float_ = d;
        has_float_ = true;
    }

    void fail(nlohmann::json witness) {
        pass = false;
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
    }
    void note(nlohmann::json finding) {
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(finding));
    }

    std::string max_abs_deviation() const {
        if (has_exact_ && !has_float_) return max_exact_.get_str();
        if (has_float_ && !has_exact_) return format_double(max_float_);
        if (has_exact_ && has_float_) return format_double(std::max(max_exact_.get_d(), max_float_));
        return "0";
    }

    bool gating_pass() const { return informational || pass; }

    static constexpr std::size_t kMaxWitnesses = 20;

private:
    bool has_exact_ = false;
    bool has_float_ = false;
    Rational max_exact_;
    double max_float_ = 0.0;
};

inline void to_json(nlohmann::json& j, const Report& r) {
    j = nlohmann::json{{"identity", r.identity},
                       {"instances", r.instances},
                       {"max_abs_deviation", r.max_abs_deviation()},
                       {"pass", r.pass}};
    if (r.informational) j["informational"] = true;
    if (!r.parameters.empty()) j["parameters"] = r.parameters;
    if (!r.details.empty()) j["details"] = r.details;
    if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
}

} // namespace rcm
