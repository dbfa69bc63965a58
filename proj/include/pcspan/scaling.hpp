#pragma once

#include "pcspan/model.hpp"

#include <string>
#include <vector>

namespace pcspan {

struct ScaledInstance {
    PcsInstance base;
    Rational delta;
    Rational theta;
    int hop_bound = 0;
    std::vector<std::int64_t> units;  // d_e with (d_e - 1) * delta < l_e <= d_e * delta

    // The base instance with every length replaced by d_e * delta.
    PcsInstance scaled() const;
};

Rational compute_delta(const PcsInstance& instance, const Rational& theta, int* hop_bound_out = nullptr);
ScaledInstance scale_instance(const PcsInstance& instance, const Rational& theta);
ScaledInstance scale_with_delta(const PcsInstance& instance, const Rational& delta, const Rational& theta);
std::int64_t scaled_units(const Rational& length, const Rational& delta);

// Label range for entry 0 in units of delta: t-[0] and t+[0].
std::int64_t scaled_lower_bound(const ScaledInstance& scaled);
std::int64_t scaled_upper_bound(const ScaledInstance& scaled);

struct ScalingViolation {
    std::size_t walk = 0;
    std::string what;
};

// Checks RES <= ScaledRes and ScaledRes[0] <= RES[0] + theta * Bdgt_min for each walk.
std::vector<ScalingViolation> check_scaling_claims(const ScaledInstance& scaled, const std::vector<Walk>& walks);

}  // namespace pcspan
