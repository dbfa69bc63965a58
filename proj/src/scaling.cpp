#include "pcspan/scaling.hpp"

#include "pcspan/errors.hpp"

#include <algorithm>

namespace pcspan {

PcsInstance ScaledInstance::scaled() const {
    PcsInstance out = base;
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
        out.edges[e].r.length = Rational(units[e]) * delta;
    }
    return out;
}

Rational compute_delta(const PcsInstance& instance, const Rational& theta, int* hop_bound_out) {
    if (theta <= 0) throw ParameterError("theta must be positive");
    const Rational bmin = budget_min(instance);
    if (bmin == 0) throw DivisionUndefinedError("Bdgt_min is 0; delta is undefined");
    const int hops = hop_bound(instance);
    if (hop_bound_out) *hop_bound_out = hops;
    return theta * bmin / hops;
}

std::int64_t scaled_units(const Rational& length, const Rational& delta) {
    return ceil_to_int(length / delta);
}

ScaledInstance scale_with_delta(const PcsInstance& instance, const Rational& delta, const Rational& theta) {
    if (delta <= 0) throw ParameterError("delta must be positive");
    ScaledInstance out;
    out.base = instance;
    out.delta = delta;
    out.theta = theta;
    out.units.reserve(instance.edges.size());
    for (const auto& e : instance.edges) out.units.push_back(scaled_units(e.r.length, delta));
    return out;
}

ScaledInstance scale_instance(const PcsInstance& instance, const Rational& theta) {
    int hops = 0;
    const Rational delta = compute_delta(instance, theta, &hops);
    ScaledInstance out = scale_with_delta(instance, delta, theta);
    out.hop_bound = hops;
    return out;
}

std::int64_t scaled_lower_bound(const ScaledInstance& scaled) {
    std::int64_t min_units = 0;
    for (auto d : scaled.units) min_units = std::min(min_units, d);
    return min_units * std::max(scaled.hop_bound, 1);
}

std::int64_t scaled_upper_bound(const ScaledInstance& scaled) {
    const Rational top = budget_max(scaled.base) * (1 + scaled.theta) / scaled.delta;
    return ceil_to_int(top) - scaled_lower_bound(scaled);
}

std::vector<ScalingViolation> check_scaling_claims(const ScaledInstance& scaled, const std::vector<Walk>& walks) {
    std::vector<ScalingViolation> out;
    const PcsInstance scaled_graph = scaled.scaled();
    const Rational slack = scaled.theta * budget_min(scaled.base);
    for (std::size_t w = 0; w < walks.size(); ++w) {
        const ResourceVector res = walk_resource(walks[w], scaled.base);
        const ResourceVector sres = walk_resource(walks[w], scaled_graph);
        if (!dominated_by(res, sres)) {
            out.push_back({w, "RES is not dominated by ScaledRes"});
        }
        if (sres.length > res.length + slack) {
            out.push_back({w, "ScaledRes[0] exceeds RES[0] + theta * Bdgt_min"});
        }
    }
    return out;
}

}  // namespace pcspan
