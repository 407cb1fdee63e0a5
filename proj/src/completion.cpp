#include "gaugekit/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "gaugekit/error.hpp"

namespace gaugekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const CauchyViolation& v, const PointSet& space)
{
    std::ostringstream out;
    out << to_string(v.axiom) << " fails for member '" << v.member << "'";
    if (!v.other_member.empty()) out << " against '" << v.other_member << "'";
    out << " at ('" << space.id(v.x) << "','" << space.id(v.y) << "') by " << v.excess;
    return out.str();
}

std::vector<std::vector<bool>> dominance_matrix(const Gauge& g)
{
    const auto m = g.size();
    std::vector<std::vector<bool>> le(m, std::vector<bool>(m, false));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) le[a][b] = a == b || dominates(g.member(b), g.member(a));
    return le;
}

}  // namespace

const std::vector<double>& CauchyPoint::profile(std::string_view member) const
{
    auto it = profiles.find(member);
    if (it == profiles.end())
        throw InputError("Cauchy point '" + label + "' has no profile for member '" + std::string(member) + "'");
    return it->second;
}

std::string_view to_string(CauchyAxiom axiom)
{
    switch (axiom) {
    case CauchyAxiom::nonnegativity: return "nonnegativity";
    case CauchyAxiom::triangle_a: return "triangle A";
    case CauchyAxiom::triangle_b: return "triangle B";
    case CauchyAxiom::locatedness: return "locatedness";
    case CauchyAxiom::monotonicity: return "monotonicity";
    }
    return "?";
}

CauchyPoint represent_point(const Gauge& g, PointIndex z)
{
    if (z >= g.point_count()) throw InputError("represented point out of range");
    CauchyPoint xi{g.space()->id(z), g.space(), {}};
    for (const auto& d : g.members()) xi.profiles.emplace(d.id(), d.row(z));
    return xi;
}

CauchyReport validate_cauchy_point(const Gauge& g, const CauchyPoint& xi, double slack, std::size_t max_witnesses)
{
    const auto n = g.point_count();
    if (xi.space && !same_space(*xi.space, *g.space()))
        throw InputError("Cauchy point '" + xi.label + "' lives on a different point set");
    std::vector<const std::vector<double>*> prof;
    for (const auto& d : g.members()) {
        const auto& p = xi.profile(d.id());
        if (p.size() != n)
            throw InputError("profile '" + d.id() + "' of '" + xi.label + "' has " + std::to_string(p.size()) +
                             " values, expected " + std::to_string(n));
        prof.push_back(&p);
    }

    CauchyReport report;
    auto file = [&](CauchyAxiom axiom, const std::string& member, const std::string& other, PointIndex x,
                    PointIndex y, double excess) {
        if (!(excess <= kRoundoff)) {
            if (report.violations.size() < max_witnesses)
                report.violations.push_back({axiom, member, other, x, y, excess});
            else if (report.violations.empty())
                report.violations.push_back({axiom, member, other, x, y, excess});
        } else if (excess > 0.0) {
            ++report.roundoff_count;
        }
    };

    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& d = g.member(k);
        const auto& p = *prof[k];
        double lowest = kInf;
        PointIndex arg = 0;
        for (PointIndex x = 0; x < n; ++x) {
            if (p[x] < 0.0 || !std::isfinite(p[x])) file(CauchyAxiom::nonnegativity, d.id(), {}, x, x, -p[x]);
            if (p[x] < lowest) {
                lowest = p[x];
                arg = x;
            }
            for (PointIndex y = 0; y < n; ++y) {
                const double dxy = d(x, y);
                const double a = p[x] - (dxy + p[y]);
                if (a > 0.0) file(CauchyAxiom::triangle_a, d.id(), {}, x, y, a);
                if (y > x) {
                    const double b = dxy - (p[x] + p[y]);
                    if (b > 0.0) file(CauchyAxiom::triangle_b, d.id(), {}, x, y, b);
                }
            }
        }
        if (lowest > slack) report.violations.push_back({CauchyAxiom::locatedness, d.id(), {}, arg, arg, lowest - slack});
    }

    if (g.size() > 1) {
        const auto le = dominance_matrix(g);
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b < g.size(); ++b) {
                if (a == b || !le[a][b]) continue;
                for (PointIndex x = 0; x < n; ++x) {
                    const double excess = (*prof[a])[x] - (*prof[b])[x];
                    if (excess > 0.0) file(CauchyAxiom::monotonicity, g.member(a).id(), g.member(b).id(), x, x, excess);
                }
            }
    }
    return report;
}

std::optional<PointIndex> find_representative(const CauchyPoint& xi, double slack)
{
    if (xi.profiles.empty()) throw InputError("Cauchy point '" + xi.label + "' has no profiles");
    const auto n = xi.profiles.begin()->second.size();
    for (const auto& [member, p] : xi.profiles)
        if (p.size() != n) throw InputError("profiles of '" + xi.label + "' disagree in length");
    for (PointIndex z = 0; z < n; ++z) {
        bool ok = true;
        for (const auto& [member, p] : xi.profiles)
            if (p[z] > slack) {
                ok = false;
                break;
            }
        if (ok) return z;
    }
    return std::nullopt;
}

double hat_distance(std::string_view member, const CauchyPoint& xi, const CauchyPoint& zeta)
{
    if (xi.space && zeta.space && !same_space(*xi.space, *zeta.space))
        throw InputError("Cauchy points '" + xi.label + "' and '" + zeta.label + "' live on different point sets");
    const auto& a = xi.profile(member);
    const auto& b = zeta.profile(member);
    if (a.size() != b.size() || a.empty())
        throw InputError("Cauchy points '" + xi.label + "' and '" + zeta.label + "' have mismatched profiles");
    double best = kInf;
    for (std::size_t x = 0; x < a.size(); ++x) best = std::min(best, a[x] + b[x]);
    return best;
}

CauchyPoint deleted_point_profile(const Gauge& ambient, PointIndex y, const Gauge& sub)
{
    if (y >= ambient.point_count()) throw InputError("deleted point out of range");
    const auto& amb = *ambient.space();
    const auto& space = *sub.space();
    if (space.find(amb.id(y)))
        throw InputError("subspace still contains the deleted point '" + amb.id(y) + "'");
    std::vector<PointIndex> ambient_index;
    for (PointIndex z = 0; z < space.size(); ++z) {
        auto k = amb.find(space.id(z));
        if (!k) throw InputError("subspace point '" + space.id(z) + "' is not in the ambient space");
        ambient_index.push_back(*k);
    }
    CauchyPoint xi{amb.id(y), sub.space(), {}};
    for (const auto& d : sub.members()) {
        const auto& ad = ambient.member(d.id());
        std::vector<double> p(space.size());
        for (PointIndex z = 0; z < space.size(); ++z) p[z] = ad(y, ambient_index[z]);
        xi.profiles.emplace(d.id(), std::move(p));
    }
    return xi;
}

CompletedSpace complete_space(const Gauge& g, const std::vector<CauchyPoint>& candidates, double slack,
                              std::optional<double> locate_slack)
{
    const auto& space = *g.space();
    const auto n = space.size();
    const double located = std::max(slack, locate_slack.value_or(slack));

    for (const auto& c : candidates) {
        const auto report = validate_cauchy_point(g, c, located, 1);
        if (!report.valid())
            throw InputError("candidate '" + c.label + "' is not a Cauchy point: " +
                             describe(report.violations.front(), space));
    }

    std::map<std::string, std::string, std::less<>> absorbed;
    std::vector<const CauchyPoint*> added;
    std::set<std::string, std::less<>> labels;
    for (const auto& c : candidates) {
        if (auto rep = find_representative(c, slack)) {
            absorbed[c.label] = space.id(*rep);
            continue;
        }
        const CauchyPoint* twin = nullptr;
        for (const auto* e : added) {
            bool close = true;
            bool same = true;
            for (const auto& d : g.members()) {
                const auto& a = c.profile(d.id());
                const auto& b = e->profile(d.id());
                for (PointIndex z = 0; z < n && same; ++z) same = std::abs(a[z] - b[z]) <= slack;
                if (close && hat_distance(d.id(), c, *e) > slack) close = false;
            }
            close = close || same;
            if (close) {
                twin = e;
                break;
            }
        }
        if (twin) {
            absorbed[c.label] = twin->label;
            continue;
        }
        if (space.find(c.label) || !labels.insert(c.label).second)
            throw InputError("candidate label '" + c.label + "' collides with an existing point");
        added.push_back(&c);
    }

    std::vector<Point> pts = space.points();
    for (const auto* c : added) pts.push_back(Point{c->label, std::nullopt});
    auto big = make_space(std::move(pts), space.resolution());
    const auto total = big->size();

    std::vector<MetricTable> tables;
    for (const auto& d : g.members()) {
        std::vector<double> v(total * total, 0.0);
        for (PointIndex i = 0; i < n; ++i)
            for (PointIndex j = 0; j < n; ++j) v[i * total + j] = d(i, j);
        for (std::size_t a = 0; a < added.size(); ++a) {
            const auto& p = added[a]->profile(d.id());
            const auto row = n + a;
            for (PointIndex z = 0; z < n; ++z) v[row * total + z] = v[z * total + row] = p[z];
            for (std::size_t b = 0; b < a; ++b) {
                const auto col = n + b;
                v[row * total + col] = v[col * total + row] = hat_distance(d.id(), *added[a], *added[b]);
            }
        }
        MetricTable t(d.id(), big, std::move(v));
        const auto check = validate_metric(t, 1);
        if (!check.valid()) {
            const auto& w = check.violations.front();
            throw InputError("completed metric '" + d.id() + "' fails " + std::string(to_string(w.axiom)) + " at ('" +
                             big->id(w.i) + "','" + big->id(w.j) + "','" + big->id(w.k) + "')");
        }
        tables.push_back(std::move(t));
    }

    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t k = 0; k < g.size(); ++k) comps.push_back(g.components(k));
    std::optional<Gauge> completed;
    try {
        completed.emplace(tables, comps);
    } catch (const InputError&) {
        // Monotonicity holds only up to roundoff; fall back to explicit closure.
        completed.emplace(generate_gauge(tables));
    }

    auto quotient = separated_quotient(*completed);
    CompletedSpace out{quotient.space, std::move(quotient.gauge), {}, {}, std::move(absorbed)};
    for (PointIndex i = 0; i < n; ++i) out.embedding[space.id(i)] = quotient.space->id(quotient.projection[i]);
    for (const auto* c : added) out.adjoined.push_back(c->label);
    return out;
}

CauchyPoint cauchy_from_partial(const Gauge& g, const PartialProfileMap& partial, double slack, std::string label)
{
    const auto n = g.point_count();
    const auto& space = *g.space();
    for (const auto& [member, p] : partial) {
        if (!g.find(member)) throw InputError("partial profile for unknown member '" + member + "'");
        if (p.domain.empty()) throw InputError("partial profile '" + member + "' has an empty domain");
        if (p.domain.size() != p.values.size())
            throw InputError("partial profile '" + member + "' has mismatched domain and values");
        for (auto a : p.domain)
            if (a >= n) throw InputError("partial profile '" + member + "' names an unknown point");
        for (double v : p.values)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw InputError("partial profile '" + member + "' has a negative or non-finite value");
    }
    std::vector<const PartialProfile*> parts;
    for (const auto& d : g.members()) {
        auto it = partial.find(d.id());
        if (it == partial.end()) throw InputError("no partial profile for member '" + d.id() + "'");
        parts.push_back(&it->second);
    }

    auto fail = [&](int condition, const std::string& member, PointIndex x, PointIndex y, double excess) {
        std::ostringstream out;
        out << "hypothesis " << condition << " fails for member '" << member << "' at ('" << space.id(x) << "','"
            << space.id(y) << "') by " << excess;
        throw HypothesisError(out.str());
    };

    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& d = g.member(k);
        const auto& p = *parts[k];
        double lowest = kInf;
        PointIndex arg = 0;
        for (std::size_t i = 0; i < p.domain.size(); ++i) {
            if (p.values[i] < lowest) {
                lowest = p.values[i];
                arg = p.domain[i];
            }
            for (std::size_t j = 0; j < p.domain.size(); ++j) {
                const double dxy = d(p.domain[i], p.domain[j]);
                const double a = p.values[i] - (dxy + p.values[j]);
                if (a > kRoundoff) fail(1, d.id(), p.domain[i], p.domain[j], a);
                const double b = dxy - (p.values[i] + p.values[j]);
                if (b > kRoundoff) fail(2, d.id(), p.domain[i], p.domain[j], b);
            }
        }
        if (lowest > slack) fail(3, d.id(), arg, arg, lowest - slack);
    }

    if (g.size() > 1) {
        const auto le = dominance_matrix(g);
        std::vector<std::vector<double>> full(g.size(), std::vector<double>(n, kInf));
        std::vector<std::vector<bool>> in(g.size(), std::vector<bool>(n, false));
        for (std::size_t k = 0; k < g.size(); ++k)
            for (std::size_t i = 0; i < parts[k]->domain.size(); ++i) {
                in[k][parts[k]->domain[i]] = true;
                full[k][parts[k]->domain[i]] = parts[k]->values[i];
            }
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = a + 1; b < g.size(); ++b) {
                bool found = false;
                for (std::size_t c = 0; c < g.size() && !found; ++c) {
                    if (!le[a][c] || !le[b][c]) continue;
                    bool ok = true;
                    for (PointIndex x = 0; x < n && ok; ++x) {
                        if (!in[c][x]) continue;
                        ok = in[a][x] && in[b][x] && full[c][x] + kRoundoff >= std::max(full[a][x], full[b][x]);
                    }
                    found = ok;
                }
                if (!found) {
                    throw HypothesisError("hypothesis 4 fails: no member dominates '" + g.member(a).id() + "' and '" +
                                          g.member(b).id() + "' on a common smaller domain");
                }
            }
    }

    CauchyPoint out{std::move(label), g.space(), {}};
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& d = g.member(k);
        const auto& p = *parts[k];
        std::vector<double> z(n, kInf);
        for (PointIndex x = 0; x < n; ++x)
            for (std::size_t i = 0; i < p.domain.size(); ++i) z[x] = std::min(z[x], d(x, p.domain[i]) + p.values[i]);
        out.profiles.emplace(d.id(), std::move(z));
    }
    return out;
}

}  // namespace gaugekit
