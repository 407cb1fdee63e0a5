#include "gaugekit/relations.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "gaugekit/error.hpp"

namespace gaugekit {

namespace {

void check_subset(const Subset& s, std::size_t n)
{
    for (auto i : s)
        if (i >= n) throw InputError("subset names an unknown point");
}

void check_map(const MapTable& f, const Gauge& source, const Gauge& target)
{
    if (!same_space(*f.domain(), *source.space())) throw InputError("map domain does not match the source gauge");
    if (!same_space(*f.codomain(), *target.space())) throw InputError("map codomain does not match the target gauge");
}

std::vector<double> member_floors(const Gauge& g)
{
    std::vector<double> out;
    out.reserve(g.size());
    for (const auto& d : g.members()) out.push_back(min_positive_distance(d));
    return out;
}

bool admissible(double delta, double floor)
{
    if (delta == kUnbounded) return true;
    return delta > 0.0 && delta > floor + kRoundoff;
}

struct DeltaSearch {
    double delta = kUnbounded;
    PointIndex x = 0;
    PointIndex x_prime = 0;
};

// Shared driver: `search(dX, dY, eps)` returns the largest admissible delta
// for one source member together with the closest violating pair.
template <typename Search>
ContinuityReport run_continuity(const Gauge& source, const Gauge& target, const ToleranceProfile& tol,
                                Search search)
{
    ContinuityReport report;
    const auto floors = member_floors(source);
    for (const auto& dy : target.members()) {
        for (double eps : tol.epsilon_grid()) {
            std::optional<std::size_t> best;
            DeltaSearch best_search;
            std::optional<std::size_t> closest;
            DeltaSearch closest_search;
            for (std::size_t k = 0; k < source.size(); ++k) {
                const auto s = search(source.member(k), dy, eps);
                if (admissible(s.delta, floors[k])) {
                    if (!best || s.delta > best_search.delta) {
                        best = k;
                        best_search = s;
                    }
                } else if (!closest || s.delta - floors[k] > closest_search.delta - floors[*closest]) {
                    closest = k;
                    closest_search = s;
                }
            }
            if (best) {
                report.certificates.push_back(
                    {dy.id(), eps, source.member(*best).id(), best_search.delta, floors[*best]});
                continue;
            }
            report.continuous = false;
            report.failure = ContinuityFailure{dy.id(),
                                               eps,
                                               source.member(*closest).id(),
                                               closest_search.delta,
                                               floors[*closest],
                                               closest_search.x,
                                               closest_search.x_prime};
            return report;
        }
    }
    return report;
}

}  // namespace

MapTable::MapTable(SpacePtr domain, SpacePtr codomain, std::vector<PointIndex> assignment)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment))
{
    if (!domain_ || !codomain_) throw InputError("map needs a domain and a codomain");
    if (assignment_.size() != domain_->size())
        throw InputError("map assigns " + std::to_string(assignment_.size()) + " points, domain has " +
                         std::to_string(domain_->size()));
    for (PointIndex x = 0; x < assignment_.size(); ++x)
        if (assignment_[x] >= codomain_->size())
            throw InputError("map sends '" + domain_->id(x) + "' outside the codomain");
}

Subset MapTable::image(const Subset& a) const
{
    Subset out;
    for (auto x : a) out.push_back(assignment_.at(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double set_distance(const MetricTable& d, const Subset& a, const Subset& b)
{
    if (a.empty() || b.empty()) throw InputError("set distance needs nonempty subsets");
    check_subset(a, d.size());
    check_subset(b, d.size());
    double best = kUnbounded;
    for (auto x : a)
        for (auto y : b) best = std::min(best, d(x, y));
    return best;
}

bool near(const Gauge& g, const Subset& a, const Subset& b, double slack)
{
    if (a.empty() || b.empty()) return false;
    for (const auto& d : g.members())
        if (set_distance(d, a, b) > slack) return false;
    return true;
}

EquivalenceReport topologically_equivalent(const Gauge& first, const Gauge& second, const ToleranceProfile& tol)
{
    if (!same_space(*first.space(), *second.space()))
        throw InputError("topological equivalence needs gauges on the same point set");
    EquivalenceReport report;
    const auto n = first.point_count();
    const Gauge* sides[2] = {&first, &second};
    for (int side = 0; side < 2; ++side) {
        const auto& balls = *sides[side];
        const auto& other = *sides[1 - side];
        for (PointIndex x = 0; x < n; ++x) {
            for (const auto& d : balls.members()) {
                for (double eps : tol.epsilon_grid()) {
                    ++report.balls_checked;
                    bool contained = false;
                    for (const auto& dp : other.members()) {
                        double radius = kUnbounded;
                        for (PointIndex y = 0; y < n; ++y)
                            if (d(x, y) >= eps) radius = std::min(radius, dp(x, y));
                        if (radius > 0.0) {
                            contained = true;
                            break;
                        }
                    }
                    if (!contained) {
                        report.equivalent = false;
                        report.witness = BallWitness{side, d.id(), x, eps};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

ContinuityReport check_continuity(const MapTable& f, const Gauge& source, const Gauge& target, PointIndex x,
                                  const ToleranceProfile& tol)
{
    check_map(f, source, target);
    if (x >= source.point_count()) throw InputError("continuity point out of range");
    const auto n = source.point_count();
    return run_continuity(source, target, tol, [&](const MetricTable& dx, const MetricTable& dy, double eps) {
        DeltaSearch s{kUnbounded, x, x};
        const auto fx = f(x);
        for (PointIndex xp = 0; xp < n; ++xp) {
            if (dy(fx, f(xp)) < eps) continue;
            const double v = dx(x, xp);
            if (v < s.delta) {
                s.delta = v;
                s.x_prime = xp;
            }
        }
        return s;
    });
}

ContinuityReport check_uniform_continuity(const MapTable& f, const Gauge& source, const Gauge& target,
                                          const ToleranceProfile& tol)
{
    check_map(f, source, target);
    const auto n = source.point_count();
    return run_continuity(source, target, tol, [&](const MetricTable& dx, const MetricTable& dy, double eps) {
        DeltaSearch s;
        for (PointIndex a = 0; a < n; ++a) {
            const auto fa = f(a);
            for (PointIndex b = a + 1; b < n; ++b) {
                if (dy(fa, f(b)) < eps) continue;
                const double v = dx(a, b);
                if (v < s.delta) s = {v, a, b};
            }
        }
        return s;
    });
}

bool implication_holds_at(const MapTable& f, const MetricTable& source, const MetricTable& target, PointIndex x,
                          double delta, double eps)
{
    for (PointIndex xp = 0; xp < source.size(); ++xp)
        if (source(x, xp) < delta && !(target(f(x), f(xp)) < eps)) return false;
    return true;
}

bool implication_holds(const MapTable& f, const MetricTable& source, const MetricTable& target, double delta,
                       double eps)
{
    for (PointIndex x = 0; x < source.size(); ++x)
        if (!implication_holds_at(f, source, target, x, delta, eps)) return false;
    return true;
}

ProximityReport check_proximal_continuity(const MapTable& f, const Gauge& source, const Gauge& target, double slack,
                                          const std::optional<std::vector<std::pair<Subset, Subset>>>& family)
{
    check_map(f, source, target);
    ProximityReport report;
    if (family) {
        for (const auto& [a, b] : *family) {
            ++report.pairs_checked;
            if (near(source, a, b, slack) && !near(target, f.image(a), f.image(b), slack)) {
                report.preserved = false;
                report.witness = std::make_pair(a, b);
                return report;
            }
        }
        return report;
    }

    const auto n = source.point_count();
    if (n > kMaxExhaustiveProximity)
        throw InputError("exhaustive proximity search is limited to " + std::to_string(kMaxExhaustiveProximity) +
                         " points; supply a subset-pair family");

    // A ≈ B iff some a in A, b in B are within slack in the top member, so
    // the pair search reduces to per-A neighbourhood masks.
    std::vector<std::uint32_t> near_x(n, 0), near_image(n, 0);
    const auto& tx = source.top();
    const auto& ty = target.top();
    for (PointIndex a = 0; a < n; ++a)
        for (PointIndex b = 0; b < n; ++b) {
            if (tx(a, b) <= slack) near_x[a] |= 1u << b;
            if (ty(f(a), f(b)) <= slack) near_image[a] |= 1u << b;
        }

    const std::uint32_t all = (1u << n) - 1;
    for (std::uint32_t a_mask = 1; a_mask <= all; ++a_mask) {
        std::uint32_t nx = 0, ny = 0;
        for (std::uint32_t rest = a_mask; rest; rest &= rest - 1) {
            const auto a = static_cast<std::size_t>(std::countr_zero(rest));
            nx |= near_x[a];
            ny |= near_image[a];
        }
        report.pairs_checked += all;
        // Any violating B contains a point of nx outside ny; a singleton suffices.
        const std::uint32_t bad = nx & ~ny;
        if (bad) {
            Subset a_set, b_set{static_cast<PointIndex>(std::countr_zero(bad))};
            for (std::uint32_t rest = a_mask; rest; rest &= rest - 1)
                a_set.push_back(static_cast<PointIndex>(std::countr_zero(rest)));
            report.preserved = false;
            report.witness = std::make_pair(std::move(a_set), std::move(b_set));
            return report;
        }
    }
    return report;
}

SequenceReport sequence_status(const std::vector<PointIndex>& entries, const Gauge& g, double slack)
{
    if (entries.empty()) throw InputError("sequence is empty");
    check_subset(entries, g.point_count());
    const auto& top = g.top();
    const auto len = entries.size();

    SequenceReport report;
    std::size_t from = 0;
    if (len >= 2) {
        std::vector<double> suffix_max(len, 0.0);
        for (std::size_t i = len - 1; i-- > 0;) {
            double m = suffix_max[i + 1];
            for (std::size_t j = i + 1; j < len; ++j) m = std::max(m, top(entries[i], entries[j]));
            suffix_max[i] = m;
        }
        std::optional<std::size_t> found;
        for (std::size_t i = 0; i + 1 < len; ++i)
            if (suffix_max[i] <= slack) {
                found = i;
                break;
            }
        if (!found) return report;
        from = *found;
    }
    report.cauchy_from = from;
    for (PointIndex p = 0; p < g.point_count(); ++p) {
        bool close = true;
        for (std::size_t j = from; j < len && close; ++j) close = top(p, entries[j]) <= slack;
        if (close) report.limits.push_back(p);
    }
    return report;
}

std::vector<double> make_distance_function(const MetricTable& d, const Subset& a, std::optional<double> clamp)
{
    auto out = distances_to_set(d, a);
    if (clamp) {
        if (!(*clamp > 0.0)) throw InputError("distance-function clamp must be positive");
        for (auto& v : out) v = std::min(v, *clamp);
    }
    return out;
}

}  // namespace gaugekit
