#include "gaugekit/compactify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace gaugekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_subsets(const SpacePtr& space, const std::vector<Subset>& subsets, const char* what)
{
    if (!space) throw InputError(std::string(what) + " has no point set");
    if (subsets.empty()) throw InputError(std::string(what) + " is empty");
    for (const auto& s : subsets) {
        if (s.empty()) throw InputError(std::string(what) + " contains an empty set");
        for (auto i : s)
            if (i >= space->size()) throw InputError(std::string(what) + " names an unknown point");
    }
}

std::vector<bool> membership(const Subset& s, std::size_t n)
{
    std::vector<bool> in(n, false);
    for (auto i : s) in[i] = true;
    return in;
}

std::size_t count(const std::vector<bool>& in) { return static_cast<std::size_t>(std::count(in.begin(), in.end(), true)); }

// true iff every point of `inner` is in `outer`.
bool contained(const std::vector<bool>& inner, const std::vector<bool>& outer)
{
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (inner[i] && !outer[i]) return false;
    return true;
}

Subset complement(const Subset& s, std::size_t n)
{
    const auto in = membership(s, n);
    Subset out;
    for (PointIndex i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

void check_dict_space(const FunctionDict& dict, const PointSet& space, const char* what)
{
    if (!same_space(*dict.space(), space))
        throw InputError(std::string(what) + " and the function dictionary live on different point sets");
}

// Entries (by index) no point satisfies together: the first prefix that
// empties the candidate set, then pruned greedily.
template <typename Close>
std::vector<std::size_t> violating_family(std::size_t n, std::size_t m, Close close)
{
    std::vector<std::size_t> family;
    std::vector<bool> alive(n, true);
    for (std::size_t k = 0; k < m; ++k) {
        bool shrank = false, any = false;
        for (PointIndex y = 0; y < n; ++y) {
            if (alive[y] && !close(k, y)) {
                alive[y] = false;
                shrank = true;
            }
            any = any || alive[y];
        }
        if (shrank) family.push_back(k);
        if (!any) break;
    }
    auto empty_with = [&](const std::vector<std::size_t>& fam) {
        for (PointIndex y = 0; y < n; ++y) {
            bool ok = true;
            for (auto k : fam)
                if (!close(k, y)) {
                    ok = false;
                    break;
                }
            if (ok) return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < family.size();) {
        auto trial = family;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (!trial.empty() && empty_with(trial))
            family = std::move(trial);
        else
            ++i;
    }
    return family;
}

std::vector<std::string> family_ids(const FunctionDict& dict, const std::vector<std::size_t>& family)
{
    std::vector<std::string> out;
    for (auto k : family) out.push_back(dict.entry(k).id);
    return out;
}

std::string join(const std::vector<std::string>& ids)
{
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i];
    return out;
}

std::vector<Interval> datum_intervals(const EvaluationDatum& datum, const FunctionDict& dict)
{
    if (datum.size() != dict.size()) throw InputError("evaluation datum does not cover the dictionary exactly");
    std::vector<Interval> out;
    for (const auto& e : dict.entries()) {
        auto it = datum.find(e.id);
        if (it == datum.end()) throw InputError("evaluation datum has no interval for '" + e.id + "'");
        const auto& j = it->second;
        if (!(j.lo <= j.hi) || j.lo < 0.0 || j.hi > 1.0)
            throw InputError("interval for '" + e.id + "' is not a closed subinterval of [0,1]");
        out.push_back(j);
    }
    return out;
}

EvaluationDatum to_datum(const FunctionDict& dict, const std::vector<Interval>& intervals)
{
    EvaluationDatum out;
    for (std::size_t k = 0; k < dict.size(); ++k) out.emplace(dict.entry(k).id, intervals[k]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// One-point compactification
// ---------------------------------------------------------------------------

void check_chain(const ExhaustionChain& chain)
{
    check_subsets(chain.space, chain.subsets, "exhaustion chain");
    const auto n = chain.space->size();
    std::vector<bool> previous(n, false);
    std::size_t previous_size = 0;
    for (const auto& s : chain.subsets) {
        const auto in = membership(s, n);
        const auto size = count(in);
        if (size != s.size()) throw InputError("exhaustion chain member repeats a point");
        if (size == n) throw InputError("exhaustion chain member covers the whole space");
        if (!contained(previous, in) || size == previous_size)
            throw InputError("exhaustion chain is not strictly increasing");
        previous = in;
        previous_size = size;
    }
}

std::string one_point_member_id(std::string_view base, std::size_t j)
{
    return std::string(base) + "|K" + std::to_string(j);
}

Gauge one_point_gauge(const Gauge& g, const ExhaustionChain& chain)
{
    check_chain(chain);
    if (!same_space(*chain.space, *g.space())) throw InputError("exhaustion chain lives on a different point set");
    const auto n = g.point_count();
    std::vector<MetricTable> seeds;
    for (const auto& d : g.members())
        for (std::size_t j = 0; j < chain.subsets.size(); ++j)
            seeds.push_back(collapse(d, complement(chain.subsets[j], n)).renamed(one_point_member_id(d.id(), j + 1)));
    return generate_gauge(std::move(seeds));
}

CauchyPoint infinity_profile(const Gauge& g, const ExhaustionChain& chain)
{
    const auto gauge = one_point_gauge(g, chain);
    const auto n = g.point_count();
    std::map<std::string, std::vector<double>, std::less<>> basic;
    for (const auto& d : g.members())
        for (std::size_t j = 0; j < chain.subsets.size(); ++j)
            basic.emplace(one_point_member_id(d.id(), j + 1), distances_to_set(d, complement(chain.subsets[j], n)));

    CauchyPoint xi{"infinity", gauge.space(), {}};
    for (std::size_t k = 0; k < gauge.size(); ++k) {
        std::vector<double> p(n, 0.0);
        for (auto c : gauge.components(k)) {
            const auto& part = basic.at(gauge.member(c).id());
            for (PointIndex x = 0; x < n; ++x) p[x] = std::max(p[x], part[x]);
        }
        xi.profiles.emplace(gauge.member(k).id(), std::move(p));
    }
    return xi;
}

// ---------------------------------------------------------------------------
// Function dictionaries
// ---------------------------------------------------------------------------

FunctionDict::FunctionDict(SpacePtr space) : space_(std::move(space))
{
    if (!space_) throw InputError("function dictionary needs a point set");
}

std::size_t FunctionDict::index_of(std::string_view id) const
{
    if (auto k = find(id)) return *k;
    throw InputError("unknown dictionary entry '" + std::string(id) + "'");
}

std::optional<std::size_t> FunctionDict::find(std::string_view id) const
{
    auto it = index_.find(id);
    if (it == index_.end() || it->second >= entries_.size() || entries_[it->second].id != id) return std::nullopt;
    return it->second;
}

void FunctionDict::check_new_id(const std::string& id) const
{
    if (id.empty()) throw InputError("dictionary ids must be nonempty");
    if (id == kStackId) throw InputError("dictionary id '" + id + "' is reserved");
    if (index_.count(id)) throw InputError("duplicate dictionary id '" + id + "'");
}

std::size_t FunctionDict::add(std::string id, std::vector<double> values)
{
    check_new_id(id);
    if (values.size() != space_->size())
        throw InputError("function '" + id + "' has " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(space_->size()));
    for (std::size_t x = 0; x < values.size(); ++x)
        if (!(values[x] >= 0.0 && values[x] <= 1.0))
            throw InputError("function '" + id + "' leaves [0,1] at '" + space_->id(x) + "'");
    const auto k = entries_.size();
    index_.emplace(id, k);
    entries_.push_back({std::move(id), std::move(values)});
    return k;
}

std::size_t FunctionDict::add_composite(std::string id, const std::vector<std::string>& parts)
{
    check_new_id(id);
    if (parts.size() < 2) throw InputError("composite '" + id + "' needs at least two entries");
    std::vector<std::size_t> idx;
    for (const auto& p : parts) idx.push_back(index_of(p));
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw InputError("composite '" + id + "' repeats an entry");
    index_.emplace(id, std::numeric_limits<std::size_t>::max());
    composites_.push_back({std::move(id), std::move(idx)});
    return composites_.size() - 1;
}

DictReport validate_dict(const FunctionDict& dict, const Gauge& g, const ToleranceProfile& tol)
{
    check_dict_space(dict, *g.space(), "base gauge");
    DictReport report;
    const auto n = g.point_count();
    for (const auto& e : dict.entries()) {
        std::vector<double> distinct = e.values;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<Point> pts;
        for (std::size_t k = 0; k < distinct.size(); ++k)
            pts.push_back(Point{"v" + std::to_string(k), std::vector<double>{distinct[k]}});
        auto values = make_space(std::move(pts));
        std::vector<PointIndex> assignment(n);
        for (PointIndex x = 0; x < n; ++x)
            assignment[x] = static_cast<PointIndex>(
                std::lower_bound(distinct.begin(), distinct.end(), e.values[x]) - distinct.begin());
        const MapTable f(g.space(), values, std::move(assignment));
        const Gauge line({coordinate_metric(values, CoordinateKind::euclidean)});
        for (PointIndex x = 0; x < n; ++x) {
            auto r = check_continuity(f, g, line, x, tol);
            if (!r.continuous) {
                report.valid = false;
                report.entry = e.id;
                report.point = x;
                report.failure = std::move(r.failure);
                return report;
            }
        }
    }
    return report;
}

Gauge stone_cech_gauge(const Gauge& g, const FunctionDict& dict)
{
    check_dict_space(dict, *g.space(), "base gauge");
    if (dict.size() == 0) throw InputError("function dictionary is empty");
    const auto n = dict.space()->size();
    const auto m = dict.size();

    std::vector<MetricTable> members;
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t k = 0; k < m; ++k) {
        members.push_back(MetricTable::embedded(dict.entry(k).id, dict.space(), dict.entry(k).values, 1,
                                                CoordinateKind::chebyshev));
        comps.push_back({k});
    }
    auto stacked = [&](const std::vector<std::size_t>& parts, std::string id) {
        std::vector<double> coords(n * parts.size());
        for (PointIndex x = 0; x < n; ++x)
            for (std::size_t i = 0; i < parts.size(); ++i) coords[x * parts.size() + i] = dict.entry(parts[i]).values[x];
        members.push_back(
            MetricTable::embedded(std::move(id), dict.space(), std::move(coords), parts.size(), CoordinateKind::chebyshev));
        comps.push_back(parts);
    };
    for (const auto& c : dict.composites()) stacked(c.parts, c.id);
    if (m == 1) return Gauge(std::move(members), 0, Gauge::trusted_top, std::move(comps));

    std::vector<std::size_t> all(m);
    for (std::size_t k = 0; k < m; ++k) all[k] = k;
    stacked(all, std::string(kStackId));
    const auto top = members.size() - 1;
    return Gauge(std::move(members), top, Gauge::trusted_top, std::move(comps));
}

Evaluation evaluate_point(const CauchyPoint& xi, const FunctionDict& dict, std::string_view entry,
                          const ToleranceProfile& tol)
{
    if (xi.space) check_dict_space(dict, *xi.space, "Cauchy point");
    const auto& phi = dict.values(entry);
    const auto& profile = xi.profile(entry);
    if (profile.size() != phi.size())
        throw InputError("profile '" + std::string(entry) + "' of '" + xi.label + "' has the wrong length");

    std::vector<double> levels = tol.epsilon_grid();
    if (levels.empty() || tol.slack() < levels.back()) levels.push_back(tol.slack());

    Evaluation out;
    std::optional<std::size_t> tightest;
    for (double eps : levels) {
        double lo = kInf, hi = -kInf;
        for (PointIndex x = 0; x < phi.size(); ++x)
            if (profile[x] <= eps) {
                lo = std::min(lo, phi[x]);
                hi = std::max(hi, phi[x]);
            }
        if (lo > hi) {
            std::ostringstream msg;
            msg << "'" << xi.label << "' is not located for '" << entry << "': no point has profile <= " << eps;
            throw LocatednessError(msg.str());
        }
        out.trace.push_back({eps, lo, hi});
        if (!tightest || hi - lo <= out.trace[*tightest].hi - out.trace[*tightest].lo) tightest = out.trace.size() - 1;
    }
    const auto& b = out.trace[*tightest];
    out.value = Interval{b.lo, b.hi}.midpoint();
    return out;
}

CauchyPoint cauchy_from_evaluation(const std::map<std::string, double, std::less<>>& values, const FunctionDict& dict,
                                   double slack, std::string label)
{
    const auto n = dict.space()->size();
    const auto m = dict.size();
    if (m == 0) throw InputError("function dictionary is empty");
    std::vector<double> v(m);
    for (std::size_t k = 0; k < m; ++k) {
        auto it = values.find(dict.entry(k).id);
        if (it == values.end()) throw InputError("no value for dictionary entry '" + dict.entry(k).id + "'");
        if (!(it->second >= 0.0 && it->second <= 1.0))
            throw InputError("value for '" + dict.entry(k).id + "' is outside [0,1]");
        v[k] = it->second;
    }
    if (values.size() != m) throw InputError("values name entries outside the dictionary");

    CauchyPoint xi{std::move(label), dict.space(), {}};
    std::vector<std::vector<double>> single(m, std::vector<double>(n));
    for (std::size_t k = 0; k < m; ++k)
        for (PointIndex y = 0; y < n; ++y) single[k][y] = std::abs(dict.entry(k).values[y] - v[k]);

    auto stacked = [&](const std::vector<std::size_t>& parts) {
        std::vector<double> p(n, 0.0);
        for (auto k : parts)
            for (PointIndex y = 0; y < n; ++y) p[y] = std::max(p[y], single[k][y]);
        return p;
    };
    for (const auto& c : dict.composites()) xi.profiles.emplace(c.id, stacked(c.parts));
    std::vector<double> top;
    if (m > 1) {
        std::vector<std::size_t> all(m);
        for (std::size_t k = 0; k < m; ++k) all[k] = k;
        top = stacked(all);
    } else {
        top = single.front();
    }

    if (*std::min_element(top.begin(), top.end()) > slack) {
        const auto family = family_ids(dict, violating_family(n, m, [&](std::size_t k, PointIndex y) {
                                           return single[k][y] <= slack;
                                       }));
        throw InvalidEvaluationError("evaluation '" + xi.label + "' is not located at slack " +
                                         std::to_string(slack) + "; no point approximates {" + join(family) + "}",
                                     family);
    }
    if (m > 1) xi.profiles.emplace(std::string(kStackId), std::move(top));
    for (std::size_t k = 0; k < m; ++k) xi.profiles.emplace(dict.entry(k).id, std::move(single[k]));
    return xi;
}

// ---------------------------------------------------------------------------
// Evaluation data
// ---------------------------------------------------------------------------

EvaluationDatum point_datum(const FunctionDict& dict, PointIndex x)
{
    if (x >= dict.space()->size()) throw InputError("point out of range");
    EvaluationDatum out;
    for (const auto& e : dict.entries()) out.emplace(e.id, Interval{e.values[x], e.values[x]});
    return out;
}

std::map<std::string, double, std::less<>> midpoints(const EvaluationDatum& datum)
{
    std::map<std::string, double, std::less<>> out;
    for (const auto& [id, j] : datum) out.emplace(id, j.midpoint());
    return out;
}

DatumReport validate_datum(const EvaluationDatum& datum, const FunctionDict& dict, double slack)
{
    const auto intervals = datum_intervals(datum, dict);
    const auto n = dict.space()->size();
    auto close = [&](std::size_t k, PointIndex y) { return intervals[k].distance(dict.entry(k).values[y]) <= slack; };
    DatumReport report;
    for (PointIndex y = 0; y < n; ++y) {
        bool ok = true;
        for (std::size_t k = 0; k < dict.size() && ok; ++k) ok = close(k, y);
        if (ok) {
            report.witness = y;
            return report;
        }
    }
    report.valid = false;
    report.violating_family = family_ids(dict, violating_family(n, dict.size(), close));
    return report;
}

EvaluationDatum refine_datum(const EvaluationDatum& datum, const FunctionDict& dict, double width_tol, double slack)
{
    if (!(width_tol >= 0.0)) throw InputError("width tolerance must be nonnegative");
    auto J = datum_intervals(datum, dict);
    const auto m = dict.size();
    const auto n = dict.space()->size();
    auto value = [&](std::size_t k, PointIndex x) { return dict.entry(k).values[x]; };

    Subset alive;
    for (PointIndex x = 0; x < n; ++x) {
        bool ok = true;
        for (std::size_t k = 0; k < m && ok; ++k) ok = J[k].distance(value(k, x)) <= slack;
        if (ok) alive.push_back(x);
    }
    if (alive.empty()) throw InputError("evaluation datum to refine is not valid");

    auto uniform = [&] {
        for (std::size_t k = 0; k < m; ++k)
            for (auto x : alive)
                if (value(k, x) != value(k, alive.front())) return false;
        return true;
    };

    bool changed = true;
    for (;;) {
        if (changed && uniform()) {
            for (std::size_t k = 0; k < m; ++k) {
                const double v = std::clamp(value(k, alive.front()), J[k].lo, J[k].hi);
                J[k] = {v, v};
            }
            break;
        }
        std::size_t widest = 0;
        for (std::size_t k = 1; k < m; ++k)
            if (J[k].width() > J[widest].width()) widest = k;
        if (J[widest].width() <= width_tol) break;

        const auto& j = J[widest];
        const double mid = j.midpoint();
        Interval lower{j.lo, mid}, upper{mid, j.hi};
        if (!(mid > j.lo && mid < j.hi)) {
            lower = {j.lo, j.lo};
            upper = {j.hi, j.hi};
        }
        Subset keep;
        for (auto x : alive)
            if (lower.distance(value(widest, x)) <= slack) keep.push_back(x);
        Interval chosen = lower;
        if (keep.empty()) {
            for (auto x : alive)
                if (upper.distance(value(widest, x)) <= slack) keep.push_back(x);
            chosen = upper;
        }
        if (keep.empty()) throw std::logic_error("bisection lost every consistent point");
        changed = keep.size() != alive.size();
        alive = std::move(keep);
        J[widest] = chosen;
    }
    return to_datum(dict, J);
}

void check_chain(const TailChain& chain)
{
    check_subsets(chain.space, chain.subsets, "tail chain");
    const auto n = chain.space->size();
    std::vector<bool> previous(n, true);
    std::size_t previous_size = n + 1;
    for (const auto& s : chain.subsets) {
        const auto in = membership(s, n);
        const auto size = count(in);
        if (size != s.size()) throw InputError("tail chain member repeats a point");
        if (!contained(in, previous) || size == previous_size)
            throw InputError("tail chain is not strictly decreasing");
        previous = in;
        previous_size = size;
    }
}

EvaluationDatum tail_datum(const TailChain& chain, const FunctionDict& dict)
{
    check_chain(chain);
    check_dict_space(dict, *chain.space, "tail chain");
    EvaluationDatum out;
    for (const auto& e : dict.entries()) {
        double a = -kInf, b = kInf;
        for (const auto& c : chain.subsets) {
            double lo = kInf, hi = -kInf;
            for (auto x : c) {
                lo = std::min(lo, e.values[x]);
                hi = std::max(hi, e.values[x]);
            }
            a = std::max(a, lo);
            b = std::min(b, hi);
        }
        out.emplace(e.id, Interval{a, b});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Extension maps
// ---------------------------------------------------------------------------

std::string extension_function_id(std::string_view member, std::string_view target_point)
{
    return "psi[" + std::string(member) + "," + std::string(target_point) + "]";
}

void register_extension_functions(FunctionDict& dict, const MapTable& g, const Gauge& target)
{
    check_dict_space(dict, *g.domain(), "map domain");
    if (!same_space(*g.codomain(), *target.space())) throw InputError("map codomain does not match the target gauge");
    const auto n = dict.space()->size();
    for (const auto& d : target.members())
        for (PointIndex y = 0; y < target.point_count(); ++y) {
            auto id = extension_function_id(d.id(), target.space()->id(y));
            if (dict.find(id)) continue;
            std::vector<double> values(n);
            for (PointIndex x = 0; x < n; ++x) values[x] = std::min(d(g(x), y), 1.0);
            dict.add(std::move(id), std::move(values));
        }
}

ExtensionResult extend_map(const MapTable& g, const Gauge& target, const CauchyPoint& xi, const FunctionDict& dict,
                           double slack, const ToleranceProfile& eval_tol)
{
    check_dict_space(dict, *g.domain(), "map domain");
    if (!same_space(*g.codomain(), *target.space())) throw InputError("map codomain does not match the target gauge");
    const auto& ys = *target.space();

    PartialProfileMap partial;
    for (const auto& d : target.members()) {
        PartialProfile p;
        for (PointIndex y = 0; y < ys.size(); ++y) {
            const auto id = extension_function_id(d.id(), ys.id(y));
            if (!dict.find(id)) throw InputError("dictionary lacks the extension function '" + id + "'");
            const double v = evaluate_point(xi, dict, id, eval_tol).value;
            if (v < 1.0) {
                p.domain.push_back(y);
                p.values.push_back(v);
            }
        }
        if (p.domain.empty())
            throw TargetNotReachableError("'" + xi.label + "' is at clamped distance 1 from every target point in '" +
                                          d.id() + "'");
        partial.emplace(d.id(), std::move(p));
    }

    auto zeta = cauchy_from_partial(target, partial, slack, "extension of " + xi.label);
    if (auto rep = find_representative(zeta, slack)) return {*rep, std::move(zeta)};

    PointIndex best = 0;
    double best_value = kInf;
    for (PointIndex y = 0; y < ys.size(); ++y) {
        double worst = 0.0;
        for (const auto& [member, p] : zeta.profiles) worst = std::max(worst, p[y]);
        if (worst < best_value) {
            best_value = worst;
            best = y;
        }
    }
    std::ostringstream msg;
    msg << "no target point within slack " << slack << " of the extension of '" << xi.label << "'; best candidate '"
        << ys.id(best) << "' at " << best_value;
    throw CompletenessSlackError(msg.str());
}

std::size_t compose_dict(FunctionDict& dict, const std::map<double, double>& outer, std::string_view entry,
                         std::string id)
{
    const auto& phi = dict.values(entry);
    std::vector<double> values(phi.size());
    for (PointIndex x = 0; x < phi.size(); ++x) {
        auto it = outer.find(phi[x]);
        if (it == outer.end()) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "outer function has no value at " << phi[x] << " (entry '" << entry << "')";
            throw InputError(msg.str());
        }
        values[x] = it->second;
    }
    return dict.add(std::move(id), std::move(values));
}

std::size_t compose_dict(FunctionDict& dict, const std::function<double(double)>& outer, std::string_view entry,
                         std::string id)
{
    const auto& phi = dict.values(entry);
    std::vector<double> values(phi.size());
    for (PointIndex x = 0; x < phi.size(); ++x) values[x] = outer(phi[x]);
    return dict.add(std::move(id), std::move(values));
}

// ---------------------------------------------------------------------------
// Ultrafilters
// ---------------------------------------------------------------------------

bool is_ultrafilter(std::size_t n, const std::vector<std::uint32_t>& family)
{
    if (n > 5) throw SizeError("ultrafilter check supports at most 5 base points");
    const std::uint32_t full = (1u << n) - 1;
    std::vector<bool> in(std::size_t{1} << n, false);
    for (auto s : family) {
        if (s > full) throw InputError("family member is not a subset of the base set");
        in[s] = true;
    }
    if (!in[full] || in[0]) return false;
    for (std::uint32_t a = 0; a <= full; ++a) {
        if (!in[a]) {
            if (!in[full & ~a]) return false;
            continue;
        }
        for (std::uint32_t b = 0; b <= full; ++b) {
            if ((b & a) == a && !in[b]) return false;
            if (in[b] && !in[a & b]) return false;
        }
    }
    return true;
}

std::vector<Ultrafilter> enumerate_ultrafilters(std::size_t n)
{
    if (n > kMaxUltrafilterBase)
        throw SizeError("ultrafilter enumeration supports at most " + std::to_string(kMaxUltrafilterBase) +
                        " points");
    const std::size_t subsets = std::size_t{1} << n;
    const std::uint64_t families = std::uint64_t{1} << subsets;
    std::vector<Ultrafilter> out;
    std::vector<std::uint32_t> family;
    for (std::uint64_t f = 0; f < families; ++f) {
        family.clear();
        for (std::uint32_t s = 0; s < subsets; ++s)
            if (f >> s & 1u) family.push_back(s);
        if (is_ultrafilter(n, family)) out.push_back({n, family});
    }
    return out;
}

std::optional<std::size_t> principal_point(const Ultrafilter& u)
{
    const std::uint32_t full = (1u << u.n) - 1;
    for (std::size_t i = 0; i < u.n; ++i) {
        std::vector<std::uint32_t> expected;
        for (std::uint32_t s = 0; s <= full; ++s)
            if (s >> i & 1u) expected.push_back(s);
        if (expected == u.member_sets) return i;
    }
    return std::nullopt;
}

}  // namespace gaugekit
