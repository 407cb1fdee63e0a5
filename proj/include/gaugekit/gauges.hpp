#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaugekit/metrics.hpp"

namespace gaugekit {

inline constexpr std::size_t kMaxGaugeMembers = 4096;

// A finite filtered family of pseudometrics on one point set.
//
// Filteredness is checked on construction by locating a top member that
// pointwise dominates every other member; a finite family is filtered exactly
// when such a member exists. Members may record the seed members whose
// pointwise maximum they are (`components`); basic members list themselves.
class Gauge {
public:
    explicit Gauge(std::vector<MetricTable> members, std::vector<std::vector<std::size_t>> components = {});

    struct trusted_top_t {};
    static constexpr trusted_top_t trusted_top{};

    // For constructions whose top member dominates by construction; skips the
    // O(members * n^2) dominance scan.
    Gauge(std::vector<MetricTable> members, std::size_t top, trusted_top_t,
          std::vector<std::vector<std::size_t>> components = {});

    const SpacePtr& space() const noexcept { return members_.front().space(); }
    std::size_t size() const noexcept { return members_.size(); }
    std::size_t point_count() const noexcept { return members_.front().size(); }

    const std::vector<MetricTable>& members() const noexcept { return members_; }
    const MetricTable& member(std::size_t k) const { return members_.at(k); }
    const MetricTable& member(std::string_view id) const { return members_[index_of(id)]; }
    std::size_t index_of(std::string_view id) const;
    std::optional<std::size_t> find(std::string_view id) const;

    const MetricTable& top() const noexcept { return members_[top_]; }
    std::size_t top_index() const noexcept { return top_; }

    // Lowest-index member dominating both a and b.
    std::size_t dominating(std::size_t a, std::size_t b) const;

    const std::vector<std::size_t>& components(std::size_t k) const { return components_.at(k); }

private:
    void check_ids_and_components();

    std::vector<MetricTable> members_;
    std::vector<std::vector<std::size_t>> components_;
    std::size_t top_ = 0;
};

// Seeds plus the pointwise maxima of all their finite subfamilies, with
// exact-duplicate tables removed (first occurrence wins). Maxima are named
// "max(a,b,...)" after their seeds in seed order. Throws SizeError past
// kMaxGaugeMembers.
Gauge generate_gauge(std::vector<MetricTable> seeds);

struct SeparationReport {
    bool separated = true;
    std::optional<std::pair<PointIndex, PointIndex>> witness;
};

// Fails iff two distinct points are within `slack` in every member.
SeparationReport is_separated(const Gauge& g, double slack = 0.0);

struct Quotient {
    SpacePtr space;
    Gauge gauge;
    // projection[i] is the quotient index of original point i.
    std::vector<PointIndex> projection;
    std::vector<Subset> classes;
};

// Identifies points at distance 0 in every member. Each class is named after
// its first point.
Quotient separated_quotient(const Gauge& g);

// Restriction of every member to a subset (a new point set in subset order).
Gauge restrict_gauge(const Gauge& g, const Subset& s);

// Gauge on a space of m-tuples of base points. components[t] lists, for tuple
// t, the base indices of its m coordinates. Members are
// d_B(x,y) = max_{a in B} d(x_a, y_a) for every base member d and nonempty
// B of {0..m-1}, then generated to filtered closure.
Gauge pointwise_gauge(const Gauge& base, std::size_t index_count, const SpacePtr& tuples,
                      const std::vector<std::vector<PointIndex>>& components);

}  // namespace gaugekit
