#include "gaugekit/gauges.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "gaugekit/error.hpp"

namespace gaugekit {

namespace {

std::size_t hash_values(const std::vector<double>& v)
{
    std::size_t h = v.size();
    for (double x : v) h ^= std::hash<double>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> parent;
};

}  // namespace

Gauge::Gauge(std::vector<MetricTable> members, std::vector<std::vector<std::size_t>> components)
    : members_(std::move(members)), components_(std::move(components))
{
    check_ids_and_components();
    if (members_.size() == 1) return;

    const auto n = point_count();
    std::vector<double> upper(n * n, 0.0);
    for (const auto& m : members_)
        for (PointIndex i = 0; i < n; ++i)
            for (PointIndex j = 0; j < n; ++j) upper[i * n + j] = std::max(upper[i * n + j], m(i, j));

    for (std::size_t k = 0; k < members_.size(); ++k) {
        const auto& m = members_[k];
        bool equal = true;
        for (PointIndex i = 0; i < n && equal; ++i)
            for (PointIndex j = 0; j < n; ++j)
                if (m(i, j) != upper[i * n + j]) {
                    equal = false;
                    break;
                }
        if (equal) {
            top_ = k;
            return;
        }
    }
    throw InputError("gauge is not filtered: no member dominates all others");
}

Gauge::Gauge(std::vector<MetricTable> members, std::size_t top, trusted_top_t,
             std::vector<std::vector<std::size_t>> components)
    : members_(std::move(members)), components_(std::move(components)), top_(top)
{
    check_ids_and_components();
    if (top_ >= members_.size()) throw InputError("top member index out of range");
}

void Gauge::check_ids_and_components()
{
    if (members_.empty()) throw InputError("gauge has no members");
    if (members_.size() > kMaxGaugeMembers)
        throw SizeError("gauge has " + std::to_string(members_.size()) + " members; the cap is " +
                        std::to_string(kMaxGaugeMembers));
    for (std::size_t k = 0; k < members_.size(); ++k) {
        if (!same_space(*members_[k].space(), *members_.front().space()))
            throw InputError("gauge member '" + members_[k].id() + "' lives on a different point set");
        for (std::size_t j = 0; j < k; ++j)
            if (members_[j].id() == members_[k].id())
                throw InputError("duplicate gauge member id '" + members_[k].id() + "'");
    }
    if (components_.empty()) {
        components_.resize(members_.size());
        for (std::size_t k = 0; k < members_.size(); ++k) components_[k] = {k};
    }
    if (components_.size() != members_.size()) throw InputError("component list does not match member count");
    for (const auto& c : components_)
        for (auto k : c)
            if (k >= members_.size()) throw InputError("component index out of range");
}

std::size_t Gauge::index_of(std::string_view id) const
{
    if (auto k = find(id)) return *k;
    throw InputError("unknown gauge member '" + std::string(id) + "'");
}

std::optional<std::size_t> Gauge::find(std::string_view id) const
{
    for (std::size_t k = 0; k < members_.size(); ++k)
        if (members_[k].id() == id) return k;
    return std::nullopt;
}

std::size_t Gauge::dominating(std::size_t a, std::size_t b) const
{
    const auto& ma = member(a);
    const auto& mb = member(b);
    for (std::size_t k = 0; k < members_.size(); ++k)
        if (dominates(members_[k], ma) && dominates(members_[k], mb)) return k;
    return top_;
}

Gauge generate_gauge(std::vector<MetricTable> seeds)
{
    if (seeds.empty()) throw InputError("cannot generate a gauge from no seeds");
    for (const auto& s : seeds)
        if (!same_space(*s.space(), *seeds.front().space()))
            throw InputError("seed '" + s.id() + "' lives on a different point set");

    std::vector<MetricTable> members;
    for (auto& s : seeds) {
        bool dup = false;
        for (const auto& m : members) {
            if (tables_equal(m, s)) {
                dup = true;
                break;
            }
            if (m.id() == s.id()) throw InputError("duplicate seed id '" + s.id() + "'");
        }
        if (!dup) members.push_back(std::move(s));
    }
    if (members.size() == 1) return Gauge(std::move(members));

    const auto seed_count = members.size();
    std::vector<std::vector<std::size_t>> comps(seed_count);
    for (std::size_t k = 0; k < seed_count; ++k) comps[k] = {k};

    std::vector<std::vector<double>> cache;
    std::unordered_multimap<std::size_t, std::size_t> by_hash;
    for (std::size_t k = 0; k < members.size(); ++k) {
        cache.push_back(members[k].dense_values());
        by_hash.emplace(hash_values(cache.back()), k);
    }

    const auto n = members.front().size();
    for (std::size_t k = 1; k < members.size(); ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<double> v(n * n);
            for (std::size_t e = 0; e < v.size(); ++e) v[e] = std::max(cache[j][e], cache[k][e]);
            const auto h = hash_values(v);
            auto [lo, hi] = by_hash.equal_range(h);
            if (std::any_of(lo, hi, [&](const auto& entry) { return cache[entry.second] == v; })) continue;

            if (members.size() >= kMaxGaugeMembers)
                throw SizeError("gauge closure exceeds " + std::to_string(kMaxGaugeMembers) + " members");

            std::vector<std::size_t> c;
            std::set_union(comps[j].begin(), comps[j].end(), comps[k].begin(), comps[k].end(),
                           std::back_inserter(c));
            std::string id = "max(";
            for (std::size_t q = 0; q < c.size(); ++q) id += (q ? "," : "") + members[c[q]].id();
            id += ")";
            members.emplace_back(std::move(id), members.front().space(), v);
            comps.push_back(std::move(c));
            by_hash.emplace(h, members.size() - 1);
            cache.push_back(std::move(v));
        }
    }
    return Gauge(std::move(members), std::move(comps));
}

SeparationReport is_separated(const Gauge& g, double slack)
{
    const auto& top = g.top();
    const auto n = g.point_count();
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = i + 1; j < n; ++j)
            if (top(i, j) <= slack) return {false, std::make_pair(i, j)};
    return {};
}

Quotient separated_quotient(const Gauge& g)
{
    const auto n = g.point_count();
    const auto& top = g.top();
    UnionFind uf(n);
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = i + 1; j < n; ++j)
            if (top(i, j) == 0.0) uf.unite(i, j);

    std::vector<PointIndex> projection(n);
    std::vector<Subset> classes;
    std::vector<std::size_t> class_of_root(n, n);
    for (PointIndex i = 0; i < n; ++i) {
        const auto r = uf.find(i);
        if (class_of_root[r] == n) {
            class_of_root[r] = classes.size();
            classes.emplace_back();
        }
        projection[i] = class_of_root[r];
        classes[projection[i]].push_back(i);
    }

    std::vector<Point> pts;
    pts.reserve(classes.size());
    for (const auto& c : classes) pts.push_back(g.space()->point(c.front()));
    auto space = make_space(std::move(pts), g.space()->resolution());

    const auto q = classes.size();
    std::vector<MetricTable> members;
    for (const auto& d : g.members()) {
        for (PointIndex i = 0; i < n; ++i)
            for (PointIndex j = 0; j < n; ++j) {
                const double rep = d(classes[projection[i]].front(), classes[projection[j]].front());
                if (std::abs(d(i, j) - rep) > kRoundoff)
                    throw InputError("metric '" + d.id() + "' is not well defined on the quotient at ('" +
                                     g.space()->id(i) + "','" + g.space()->id(j) + "')");
            }
        std::vector<double> v(q * q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < q; ++b) v[a * q + b] = d(classes[a].front(), classes[b].front());
        members.emplace_back(d.id(), space, std::move(v));
    }
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t k = 0; k < g.size(); ++k) comps.push_back(g.components(k));
    Gauge qg(std::move(members), g.top_index(), Gauge::trusted_top, std::move(comps));
    return Quotient{std::move(space), std::move(qg), std::move(projection), std::move(classes)};
}

Gauge restrict_gauge(const Gauge& g, const Subset& s)
{
    if (s.empty()) throw InputError("restriction to an empty subset");
    std::vector<Point> pts;
    for (auto i : s) {
        if (i >= g.point_count()) throw InputError("restriction subset names an unknown point");
        pts.push_back(g.space()->point(i));
    }
    auto space = make_space(std::move(pts), g.space()->resolution());
    const auto m = s.size();
    std::vector<MetricTable> members;
    for (const auto& d : g.members()) {
        std::vector<double> v(m * m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) v[a * m + b] = d(s[a], s[b]);
        members.emplace_back(d.id(), space, std::move(v));
    }
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t k = 0; k < g.size(); ++k) comps.push_back(g.components(k));
    return Gauge(std::move(members), g.top_index(), Gauge::trusted_top, std::move(comps));
}

Gauge pointwise_gauge(const Gauge& base, std::size_t index_count, const SpacePtr& tuples,
                      const std::vector<std::vector<PointIndex>>& components)
{
    if (index_count == 0) throw InputError("tuple space needs at least one index");
    if (index_count > 12) throw SizeError("pointwise gauge supports at most 12 indices");
    if (components.size() != tuples->size())
        throw InputError("tuple component table has " + std::to_string(components.size()) + " rows, expected " +
                         std::to_string(tuples->size()));
    for (std::size_t t = 0; t < components.size(); ++t) {
        if (components[t].size() != index_count)
            throw InputError("tuple '" + tuples->id(t) + "' has " + std::to_string(components[t].size()) +
                             " components, expected " + std::to_string(index_count));
        for (auto c : components[t])
            if (c >= base.point_count())
                throw InputError("tuple '" + tuples->id(t) + "' names an unknown base point");
    }

    const auto n = tuples->size();
    std::vector<MetricTable> seeds;
    for (const auto& d : base.members()) {
        for (unsigned mask = 1; mask < (1u << index_count); ++mask) {
            std::string id = d.id() + "[";
            bool first = true;
            for (std::size_t a = 0; a < index_count; ++a)
                if (mask & (1u << a)) {
                    id += (first ? "" : ",") + std::to_string(a);
                    first = false;
                }
            id += "]";
            std::vector<double> v(n * n, 0.0);
            for (PointIndex s = 0; s < n; ++s)
                for (PointIndex t = 0; t < n; ++t) {
                    double acc = 0.0;
                    for (std::size_t a = 0; a < index_count; ++a)
                        if (mask & (1u << a)) acc = std::max(acc, d(components[s][a], components[t][a]));
                    v[s * n + t] = acc;
                }
            seeds.emplace_back(std::move(id), tuples, std::move(v));
        }
    }
    return generate_gauge(std::move(seeds));
}

}  // namespace gaugekit
