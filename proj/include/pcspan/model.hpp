#pragma once

#include "pcspan/rational.hpp"

#include <cstdint>
#include <vector>

namespace pcspan {

// Entry 0 (length) is rational; entries 1..m are integers stored in `res`.
struct ResourceVector {
    Rational length;
    std::vector<std::int64_t> res;

    ResourceVector() = default;
    ResourceVector(Rational len, std::vector<std::int64_t> entries)
        : length(std::move(len)), res(std::move(entries)) {}

    static ResourceVector zero(int m) { return ResourceVector(0, std::vector<std::int64_t>(m, 0)); }

    int m() const { return static_cast<int>(res.size()); }
    ResourceVector& operator+=(const ResourceVector& other);
    friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) { return a += b; }
    friend bool operator==(const ResourceVector&, const ResourceVector&) = default;
};

// Componentwise a <= b.
bool dominated_by(const ResourceVector& a, const ResourceVector& b);

struct Edge {
    int u = 0;
    int v = 0;
    Rational cost;
    ResourceVector r;
};

struct Demand {
    int s = 0;
    int t = 0;
    ResourceVector budget;
};

// Resource indices 1..packing are packing, packing+1..m covering.
struct PcsInstance {
    int n = 0;
    int m = 0;
    std::int64_t tau = 0;
    int packing = 0;
    int covering = 0;
    std::vector<Edge> edges;
    std::vector<Demand> demands;

    bool is_packing(int res_index) const { return res_index < packing; }  // 0-based into res
    std::vector<std::vector<int>> out_edges() const;
    std::vector<std::vector<int>> in_edges() const;
};

// Throws InfeasibleInstanceError on a broken invariant (ranges, negative cycle).
void validate_structure(const PcsInstance& instance);

bool has_negative_cycle(const PcsInstance& instance);

struct Walk {
    int start = 0;
    std::vector<int> edges;

    friend bool operator==(const Walk&, const Walk&) = default;
};

int walk_end(const Walk& walk, const PcsInstance& instance);
std::vector<int> walk_vertices(const Walk& walk, const PcsInstance& instance);
bool walk_visits(const Walk& walk, const PcsInstance& instance, int vertex);
Walk concat(const Walk& a, const Walk& b);

ResourceVector walk_resource(const Walk& walk, const PcsInstance& instance);
bool is_feasible(const Walk& walk, const Demand& demand, const PcsInstance& instance);
bool is_theta_feasible(const Walk& walk, const Demand& demand, const PcsInstance& instance,
                       const Rational& theta);

// Entry-0 bound under theta relaxation: B0 * (1 + theta * sign(B0)).
Rational theta_length_bound(const Rational& budget_length, const Rational& theta);
bool within_budget(const ResourceVector& used, const ResourceVector& budget,
                   const Rational* theta = nullptr);

struct ConditionNumbers {
    Rational eta;
    Rational xi;
};

ConditionNumbers condition_numbers(const PcsInstance& instance);
Rational budget_min(const PcsInstance& instance);  // min |B0|
Rational budget_max(const PcsInstance& instance);  // max |B0|

// Smallest H such that every demand has a feasible walk with fewer than H edges.
// The hop search is capped at cap_factor * n^2 * |configs|.
int hop_bound(const PcsInstance& instance, int cap_factor = 2);

// Indexing of the clamped resource-1..m configurations.
class ConfigSpace {
public:
    explicit ConfigSpace(const PcsInstance& instance);

    std::int64_t size() const { return size_; }
    int m() const { return m_; }
    std::int64_t index(const std::vector<std::int64_t>& config) const;
    std::vector<std::int64_t> decode(std::int64_t index) const;
    // Adds an edge's consumption with the covering clamp; false if a packing entry exceeds tau.
    bool step(const std::vector<std::int64_t>& config, const std::vector<std::int64_t>& delta,
              std::vector<std::int64_t>& out) const;
    std::int64_t clamp_entry(int i, std::int64_t value) const;

private:
    int m_;
    int packing_;
    std::int64_t tau_;
    std::int64_t size_;
};

}  // namespace pcspan
