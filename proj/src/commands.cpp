#include "gaugekit/commands.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "gaugekit/compactify.hpp"
#include "gaugekit/completion.hpp"
#include "gaugekit/corpus.hpp"
#include "gaugekit/covers.hpp"
#include "gaugekit/error.hpp"
#include "gaugekit/relations.hpp"

namespace gaugekit {

namespace {

// Full axiom checks above this many points are skipped for metrics built by
// the coordinate constructors (cubic cost).
constexpr std::size_t kRecheckLimit = 2000;

struct Options {
    std::string file;
    std::optional<double> slack;
    std::optional<double> locate_slack;
    std::string eps_grid;
    std::optional<double> width_tol;
    std::string out;

    std::string first, second;
    std::string map;
    std::string at;
    std::string datum;
    std::string chain;
    std::vector<std::string> entries;
    std::size_t count = 0;

    std::string kind;
    std::size_t n = 10, m = 5;
    double spacing = 1.0, lo = 0.0, hi = 1.0;
    std::string map_kind;
    std::optional<double> exhaustion;
};

class Builder {
public:
    explicit Builder(const std::vector<std::string>& args) { body_["command"] = args; }

    template <typename... T>
    void line(const T&... parts)
    {
        ((text_ << parts), ...);
        text_ << '\n';
    }
    void fail() { failed_ = true; }
    json& body() { return body_; }

    Report finish()
    {
        body_["verdict"] = failed_ ? "fail" : "pass";
        line(failed_ ? "verdict: FAIL" : "verdict: PASS");
        return {failed_ ? kExitPropertyFailure : kExitPass, text_.str(), std::move(body_)};
    }

private:
    std::ostringstream text_;
    json body_;
    bool failed_ = false;
};

std::vector<double> parse_grid(const std::string& s)
{
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("bad --eps-grid entry '" + item + "'");
        }
    }
    return out;
}

std::vector<std::string> split_ids(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

ToleranceProfile tolerance(const Bundle& b, const Options& o)
{
    const double slack = o.slack.value_or(b.tolerances.slack());
    auto grid = o.eps_grid.empty() ? b.tolerances.epsilon_grid() : parse_grid(o.eps_grid);
    return ToleranceProfile(slack, std::move(grid));
}

ToleranceProfile require_grid(const Bundle& b, const Options& o)
{
    auto tol = tolerance(b, o);
    if (tol.epsilon_grid().empty()) throw InputError("no epsilon grid: pass --eps-grid or set tolerances.epsilon_grid");
    return tol;
}

json ids_json(const Subset& s, const PointSet& space)
{
    json out = json::array();
    for (auto i : s) out.push_back(space.id(i));
    return out;
}

json delta_json(double delta) { return delta == kUnbounded ? json(nullptr) : json(delta); }

std::string delta_text(double delta)
{
    if (delta == kUnbounded) return "unbounded";
    std::ostringstream s;
    s << delta;
    return s.str();
}

Gauge gauge_from_ids(const Bundle& b, const std::string& list, std::size_t fallback)
{
    auto ids = split_ids(list);
    if (ids.empty()) {
        if (b.metrics.size() <= fallback) throw InputError("the file has too few metrics for a default gauge");
        ids.push_back(b.metrics[fallback].id());
    }
    std::vector<MetricTable> seeds;
    for (const auto& id : ids) seeds.push_back(b.metric(id));
    return generate_gauge(std::move(seeds));
}

const ExhaustionChain& exhaustion_chain(const Bundle& b, const std::string& id)
{
    auto it = b.exhaustion_chains.find(id);
    if (it == b.exhaustion_chains.end()) throw InputError("unknown exhaustion chain '" + id + "'");
    return it->second;
}

const TailChain& tail_chain(const Bundle& b, const std::string& id)
{
    auto it = b.tail_chains.find(id);
    if (it == b.tail_chains.end()) throw InputError("unknown tail chain '" + id + "'");
    return it->second;
}

// Entries the stored datum leaves out get the whole interval [0,1].
EvaluationDatum full_datum(const EvaluationDatum& partial, const FunctionDict& dict)
{
    EvaluationDatum out;
    for (const auto& e : dict.entries()) {
        auto it = partial.find(e.id);
        out.emplace(e.id, it == partial.end() ? Interval{0.0, 1.0} : it->second);
    }
    for (const auto& [id, j] : partial)
        if (!dict.find(id)) throw InputError("datum names unknown function '" + id + "'");
    return out;
}

json datum_json(const EvaluationDatum& d)
{
    json out = json::object();
    for (const auto& [id, j] : d) out[id] = {j.lo, j.hi};
    return out;
}

json continuity_json(const ContinuityReport& r, const PointSet& source)
{
    json certs = json::array();
    for (const auto& c : r.certificates)
        certs.push_back({{"target_member", c.target_member},
                         {"epsilon", c.epsilon},
                         {"source_member", c.source_member},
                         {"delta", delta_json(c.delta)},
                         {"floor", delta_json(c.floor)}});
    json out{{"continuous", r.continuous}, {"certificates", std::move(certs)}};
    if (r.failure) {
        const auto& f = *r.failure;
        out["failure"] = {{"target_member", f.target_member}, {"epsilon", f.epsilon},
                          {"source_member", f.source_member}, {"best_delta", delta_json(f.best_delta)},
                          {"floor", delta_json(f.floor)},     {"x", source.id(f.x)},
                          {"x_prime", source.id(f.x_prime)}};
    }
    return out;
}

void describe_continuity(Builder& out, const ContinuityReport& r, const PointSet& source)
{
    for (const auto& c : r.certificates)
        out.line("  ", c.target_member, " eps=", c.epsilon, ": ", c.source_member, " delta=", delta_text(c.delta),
                 " (floor ", delta_text(c.floor), ")");
    if (r.failure) {
        const auto& f = *r.failure;
        out.line("  FAIL ", f.target_member, " eps=", f.epsilon, ": no delta above the floor ", delta_text(f.floor),
                 " works; closest ", f.source_member, " delta=", delta_text(f.best_delta), " violated by ('",
                 source.id(f.x), "','", source.id(f.x_prime), "')");
    }
}

// ---------------------------------------------------------------------------

Report cmd_validate(Builder& out, const Options& o)
{
    const auto b = load_space_file(o.file, {false, false});
    const auto& space = *b.space;
    const auto tol = tolerance(b, o);
    out.line("space: ", space.size(), " points, ", b.metrics.size(), " metrics");

    bool metrics_ok = true;
    json metrics = json::array();
    for (std::size_t k = 0; k < b.metrics.size(); ++k) {
        const auto& t = b.metrics[k];
        json m{{"id", t.id()}};
        if (space.size() > kRecheckLimit && b.metric_specs[k].at("kind") != "table") {
            m["checked"] = false;
            out.line("metric '", t.id(), "': built by a constructor, not rechecked above ", kRecheckLimit, " points");
            metrics.push_back(std::move(m));
            continue;
        }
        const auto r = validate_metric(t, 8);
        m["checked"] = true;
        m["valid"] = r.valid();
        m["violation_count"] = r.violation_count;
        m["roundoff_count"] = r.roundoff_count;
        json ws = json::array();
        for (const auto& v : r.violations) {
            ws.push_back({{"axiom", to_string(v.axiom)},
                          {"points", {space.id(v.i), space.id(v.j), space.id(v.k)}},
                          {"excess", v.excess}});
        }
        m["violations"] = std::move(ws);
        if (r.valid()) {
            out.line("metric '", t.id(), "': valid (", r.roundoff_count, " roundoff-level excesses)");
        } else {
            metrics_ok = false;
            const auto& v = r.violations.front();
            out.line("metric '", t.id(), "': INVALID, ", r.violation_count, " violations; first: ", to_string(v.axiom),
                     " at ('", space.id(v.i), "','", space.id(v.j), "','", space.id(v.k), "') by ", v.excess);
        }
        metrics.push_back(std::move(m));
    }
    out.body()["metrics"] = std::move(metrics);
    if (!metrics_ok) {
        out.fail();
        return out.finish();
    }
    if (b.gauge_ids.empty()) return out.finish();

    std::vector<MetricTable> seeds;
    for (const auto& id : b.gauge_ids) seeds.push_back(b.metric(id));
    const auto g = generate_gauge(std::move(seeds));
    const auto sep = is_separated(g, tol.slack());
    json gj{{"members", g.size()}, {"top", g.top().id()}, {"separated", sep.separated}};
    if (sep.witness) gj["inseparable_pair"] = {space.id(sep.witness->first), space.id(sep.witness->second)};
    out.body()["gauge"] = gj;
    out.line("gauge: ", g.size(), " members, top '", g.top().id(), "', ",
             sep.separated ? "separated" : "not separated");

    if (b.functions->size() > 0 && !tol.epsilon_grid().empty() && space.size() <= kRecheckLimit) {
        const auto r = validate_dict(*b.functions, g, tol);
        out.body()["functions"] = {{"continuous", r.valid}};
        if (!r.valid) {
            out.fail();
            out.body()["functions"]["entry"] = *r.entry;
            out.body()["functions"]["point"] = space.id(*r.point);
            out.line("function '", *r.entry, "': not continuous at '", space.id(*r.point), "'");
        } else {
            out.line("functions: ", b.functions->size(), " entries continuous on the grid");
        }
    }

    json cps = json::array();
    for (const auto& xi : b.cauchy_points) {
        const auto r = validate_cauchy_point(g, xi, tol.slack(), 8);
        json c{{"label", xi.label}, {"valid", r.valid()}};
        if (!r.valid()) {
            out.fail();
            const auto& v = r.violations.front();
            c["witness"] = {{"axiom", to_string(v.axiom)}, {"member", v.member}, {"x", space.id(v.x)},
                            {"y", space.id(v.y)}, {"excess", v.excess}};
            out.line("cauchy point '", xi.label, "': INVALID, ", to_string(v.axiom), " for '", v.member, "' at ('",
                     space.id(v.x), "','", space.id(v.y), "')");
        } else {
            out.line("cauchy point '", xi.label, "': valid at slack ", tol.slack());
        }
        cps.push_back(std::move(c));
    }
    if (!cps.empty()) out.body()["cauchy_points"] = std::move(cps);

    json data = json::object();
    for (const auto& [id, d] : b.data) {
        const auto r = validate_datum(full_datum(d, *b.functions), *b.functions, tol.slack());
        data[id] = {{"valid", r.valid}, {"violating_family", r.violating_family}};
        if (r.witness) data[id]["witness"] = space.id(*r.witness);
        if (!r.valid) out.fail();
        out.line("datum '", id, "': ", r.valid ? "valid" : "INVALID");
    }
    if (!data.empty()) out.body()["data"] = std::move(data);
    return out.finish();
}

Report cmd_equiv(Builder& out, const Options& o)
{
    const auto b = load_space_file(o.file);
    const auto tol = require_grid(b, o);
    const auto first = gauge_from_ids(b, o.first, 0);
    const auto second = gauge_from_ids(b, o.second, 1);
    const auto r = topologically_equivalent(first, second, tol);
    out.body()["equivalent"] = r.equivalent;
    out.body()["balls_checked"] = r.balls_checked;
    out.line("first gauge top '", first.top().id(), "', second gauge top '", second.top().id(), "'");
    out.line("balls checked: ", r.balls_checked);
    if (r.witness) {
        out.fail();
        const auto& w = *r.witness;
        const auto& center = b.space->id(w.center);
        out.body()["witness"] = {{"gauge", w.gauge == 0 ? "first" : "second"},
                                 {"member", w.member},
                                 {"center", center},
                                 {"radius", w.radius}};
        out.line("witness: ball of '", w.member, "' (", w.gauge == 0 ? "first" : "second", " gauge) at '", center,
                 "' radius ", w.radius, " contains no ball of the other gauge");
    }
    return out.finish();
}

Report cmd_continuity(Builder& out, const Options& o, bool uniform)
{
    const auto b = load_space_file(o.file);
    const auto tol = require_grid(b, o);
    const auto& m = b.map(o.map);
    const auto& source = b.require_gauge();
    const auto& target = m.target->require_gauge();
    ContinuityReport r;
    if (uniform) {
        r = check_uniform_continuity(m.table, source, target, tol);
        out.line("uniform continuity of '", o.map, "': ", r.continuous ? "certified" : "fails");
    } else if (!o.at.empty()) {
        const auto x = b.space->index_of(o.at);
        r = check_continuity(m.table, source, target, x, tol);
        out.body()["point"] = o.at;
        out.line("continuity of '", o.map, "' at '", o.at, "': ", r.continuous ? "certified" : "fails");
    } else {
        for (PointIndex x = 0; x < b.space->size(); ++x) {
            r = check_continuity(m.table, source, target, x, tol);
            if (!r.continuous) {
                out.body()["point"] = b.space->id(x);
                break;
            }
        }
        out.line("continuity of '", o.map, "' at every point: ", r.continuous ? "certified" : "fails");
    }
    out.body()["continuity"] = continuity_json(r, *b.space);
    describe_continuity(out, r, *b.space);
    if (!r.continuous) out.fail();
    return out.finish();
}

Report cmd_cover(Builder& out, const Options& o)
{
    const auto b = load_space_file(o.file);
    const auto tol = require_grid(b, o);
    const auto& g = b.require_gauge();
    json members = json::array();
    for (const auto& d : g.members()) {
        json row = json::array();
        std::ostringstream counts;
        for (double eps : tol.epsilon_grid()) {
            const auto cert = greedy_net(d, eps);
            if (!verify_cover(d, cert).covered) {
                out.fail();
                out.line("cover of '", d.id(), "' at ", eps, " does not verify");
            }
            row.push_back({{"epsilon", eps}, {"count", cert.centers.size()}, {"centers", ids_json(cert.centers, *b.space)}});
            counts << " N(" << eps << ")=" << cert.centers.size();
        }
        members.push_back({{"member", d.id()}, {"covers", std::move(row)}});
        out.line("'", d.id(), "':", counts.str());
    }
    out.body()["profile"] = std::move(members);
    return out.finish();
}

Report cmd_complete(Builder& out, const Options& o)
{
    const auto b = load_space_file(o.file);
    const auto& g = b.require_gauge();
    const auto& space = *b.space;
    const double slack = o.slack.value_or(b.tolerances.slack());
    const double located = std::max(slack, o.locate_slack.value_or(slack));
    for (const auto& xi : b.cauchy_points) {
        const auto r = validate_cauchy_point(g, xi, located, 1);
        if (!r.valid()) {
            const auto& v = r.violations.front();
            out.body()["invalid_candidate"] = {{"label", xi.label}, {"axiom", to_string(v.axiom)}, {"member", v.member},
                                               {"x", space.id(v.x)}, {"y", space.id(v.y)}, {"excess", v.excess}};
            out.line("candidate '", xi.label, "' is not a Cauchy point: ", to_string(v.axiom), " for '", v.member,
                     "' at ('", space.id(v.x), "','", space.id(v.y), "')");
            out.fail();
            return out.finish();
        }
    }
    const auto c = complete_space(g, b.cauchy_points, slack, located);
    const auto sep = is_separated(c.gauge, 0.0);
    out.body()["adjoined"] = c.adjoined;
    out.body()["absorbed"] = c.absorbed;
    out.body()["embedding"] = c.embedding;
    out.body()["points"] = c.space->ids();
    out.body()["separated"] = sep.separated;
    json tables = json::object();
    if (c.space->size() <= 64)
        for (const auto& d : c.gauge.members()) tables[d.id()] = d.rows();
    out.body()["tables"] = std::move(tables);
    out.line("completed space: ", c.space->size(), " points (", c.adjoined.size(), " adjoined, ", c.absorbed.size(),
             " absorbed), gauge of ", c.gauge.size(), " members, ", sep.separated ? "separated" : "not separated");
    for (const auto& [label, rep] : c.absorbed) out.line("  '", label, "' represented by '", rep, "'");
    if (!sep.separated) out.fail();
    return out.finish();
}

Report cmd_onepoint(Builder& out, const Options& o)
{
    const auto b = load_space_file(o.file);
    const auto tol = require_grid(b, o);
    const auto& g = b.require_gauge();
    const auto& space = *b.space;
    const auto& chain = exhaustion_chain(b, o.chain);
    const auto og = one_point_gauge(g, chain);
    const auto n = space.size();

    json members = json::array();
    for (const auto& d : og.members()) {
        const auto r = validate_metric(d, 1);
        members.push_back({{"id", d.id()}, {"valid", r.valid()}});
        if (!r.valid()) {
            out.fail();
            out.line("member '", d.id(), "' fails ", to_string(r.violations.front().axiom));
        }
    }
    out.body()["members"] = std::move(members);
    out.line("one-point gauge: ", og.size(), " members");

    json balls = json::array(), covers = json::array();
    std::size_t ball_checks = 0;
    for (const auto& d : g.members()) {
        for (std::size_t j = 0; j < chain.subsets.size(); ++j) {
            const auto& k = chain.subsets[j];
            const auto& dk = og.member(one_point_member_id(d.id(), j + 1));
            Subset outside;
            std::vector<bool> in(n, false);
            for (auto x : k) in[x] = true;
            for (PointIndex x = 0; x < n; ++x)
                if (!in[x]) outside.push_back(x);
            const auto to_out = distances_to_set(d, outside);
            const auto restricted = restrict_to(d, k);
            for (double eps : tol.epsilon_grid()) {
                for (PointIndex x = 0; x < n; ++x) {
                    if (to_out[x] < eps) continue;
                    ++ball_checks;
                    if (ball(dk, x, eps) != ball(d, x, eps)) {
                        out.fail();
                        balls.push_back({{"member", dk.id()}, {"center", space.id(x)}, {"epsilon", eps}});
                        out.line("ball of '", dk.id(), "' at '", space.id(x), "' radius ", eps, " differs from '",
                                 d.id(), "'");
                    }
                }
                const auto nk = greedy_net(dk, eps).centers.size();
                const auto nr = greedy_net(restricted, eps).centers.size();
                const bool ok = nk <= nr + 1;
                covers.push_back({{"member", dk.id()}, {"epsilon", eps}, {"count", nk}, {"restricted_count", nr},
                                  {"holds", ok}});
                if (!ok) {
                    out.fail();
                    out.line("N('", dk.id(), "',", eps, ")=", nk, " exceeds N(restricted)+1=", nr + 1);
                }
            }
        }
    }
    out.body()["ball_mismatches"] = std::move(balls);
    out.body()["ball_checks"] = ball_checks;
    out.body()["cover_bounds"] = std::move(covers);
    out.line("interior ball checks: ", ball_checks);

    const auto inf = infinity_profile(g, chain);
    const auto r = validate_cauchy_point(og, inf, tol.slack(), 1);
    out.body()["infinity_valid"] = r.valid();
    Subset reps;
    for (PointIndex x = 0; x < n; ++x) {
        bool close = true;
        for (const auto& [member, p] : inf.profiles) close = close && p[x] <= tol.slack();
        if (close) reps.push_back(x);
    }
    out.body()["infinity_representatives"] = ids_json(reps, space);
    out.line("infinity profile: ", r.valid() ? "valid" : "INVALID", " at slack ", tol.slack(), ", ", reps.size(),
             " representatives");
    if (!r.valid()) out.fail();
    return out.finish();
}

// The evaluation requested by --at / --datum / --chain, refined to width_tol.
std::map<std::string, double, std::less<>> requested_values(const Bundle& b, const FunctionDict& dict,
                                                            const Options& o, double slack, Builder& out)
{
    const int given = !o.at.empty() + !o.datum.empty() + !o.chain.empty();
    if (given != 1) throw InputError("give exactly one of --at, --datum, --chain");
    if (!o.at.empty()) return midpoints(point_datum(dict, b.space->index_of(o.at)));

    EvaluationDatum datum;
    if (!o.datum.empty()) {
        auto it = b.data.find(o.datum);
        if (it == b.data.end()) throw InputError("unknown datum '" + o.datum + "'");
        datum = full_datum(it->second, dict);
    } else {
        datum = tail_datum(tail_chain(b, o.chain), dict);
    }
    const auto check = validate_datum(datum, dict, slack);
    if (!check.valid) {
        out.body()["violating_family"] = check.violating_family;
        std::string fam;
        for (const auto& id : check.violating_family) fam += (fam.empty() ? "" : ", ") + id;
        throw LocatednessError("datum is not valid at slack; no point approximates {" + fam + "}");
    }
    const auto refined = refine_datum(datum, dict, o.width_tol.value_or(0.0), slack);
    return midpoints(refined);
}

Report cmd_refine(Builder& out, const Options& o)
{
    const auto b = load_space_file(o.file);
    const double slack = o.slack.value_or(b.tolerances.slack());
    const auto& dict = *b.functions;
    if (dict.size() == 0) throw InputError("the space file has no functions");

    EvaluationDatum datum;
    if (!o.datum.empty()) {
        auto it = b.data.find(o.datum);
        if (it == b.data.end()) throw InputError("unknown datum '" + o.datum + "'");
        datum = full_datum(it->second, dict);
    } else if (!o.chain.empty()) {
        datum = tail_datum(tail_chain(b, o.chain), dict);
    } else {
        throw InputError("give --datum or --chain");
    }
    out.body()["input"] = datum_json(datum);
    const auto check = validate_datum(datum, dict, slack);
    if (!check.valid) {
        out.body()["violating_family"] = check.violating_family;
        std::string fam;
        for (const auto& id : check.violating_family) fam += (fam.empty() ? "" : ", ") + id;
        out.line("datum is not valid at slack ", slack, ": no point approximates {", fam, "}");
        out.fail();
        return out.finish();
    }
    const double width_tol = o.width_tol.value_or(0.0);
    const auto refined = refine_datum(datum, dict, width_tol, slack);
    out.body()["refined"] = datum_json(refined);
    out.body()["width_tol"] = width_tol;
    for (const auto& [id, j] : refined) out.line("  ", id, ": [", j.lo, ", ", j.hi, "]");
    const auto after = validate_datum(refined, dict, slack);
    if (after.witness) out.body()["witness"] = b.space->id(*after.witness);
    out.line("refined datum ", after.valid ? "valid" : "INVALID",
             after.witness ? ", realized by '" + b.space->id(*after.witness) + "'" : std::string());
    if (!after.valid) out.fail();
    return out.finish();
}

Report cmd_evaluate(Builder& out, const Options& o)
{
    const auto b = load_space_file(o.file);
    const auto tol = tolerance(b, o);
    const auto& dict = *b.functions;
    if (dict.size() == 0) throw InputError("the space file has no functions");
    const auto values = requested_values(b, dict, o, tol.slack(), out);
    const auto xi = cauchy_from_evaluation(values, dict, tol.slack());

    std::vector<std::string> entries = o.entries;
    if (entries.empty())
        for (const auto& e : dict.entries()) entries.push_back(e.id);
    json results = json::array();
    for (const auto& id : entries) {
        const auto ev = evaluate_point(xi, dict, id, tol);
        json trace = json::array();
        for (const auto& br : ev.trace) trace.push_back({{"epsilon", br.epsilon}, {"lo", br.lo}, {"hi", br.hi}});
        results.push_back({{"entry", id}, {"value", ev.value}, {"brackets", std::move(trace)}});
        out.line("  ", id, " = ", ev.value);
    }
    out.body()["evaluations"] = std::move(results);
    return out.finish();
}

Report cmd_extend(Builder& out, const Options& o)
{
    const auto b = load_space_file(o.file);
    const double slack = o.slack.value_or(b.tolerances.slack());
    const auto& m = b.map(o.map);
    const auto& target = m.target->require_gauge();
    FunctionDict dict = *b.functions;
    register_extension_functions(dict, m.table, target);

    const auto values = requested_values(b, dict, o, 0.0, out);
    const auto xi = cauchy_from_evaluation(values, dict, 0.0);
    const auto r = extend_map(m.table, target, xi, dict, slack);
    const auto& ys = *m.target->space;
    out.body()["point"] = ys.id(r.point);
    if (ys.point(r.point).coords) out.body()["coords"] = *ys.point(r.point).coords;
    out.line("extension lands on '", ys.id(r.point), "'");
    if (!o.at.empty()) {
        const auto gx = m.table(b.space->index_of(o.at));
        json dist = json::object();
        for (const auto& d : target.members()) {
            dist[d.id()] = d(r.point, gx);
            if (d(r.point, gx) > slack) out.fail();
        }
        out.body()["expected"] = ys.id(gx);
        out.body()["distance_to_expected"] = std::move(dist);
        out.line("g('", o.at, "') = '", ys.id(gx), "'");
    }
    return out.finish();
}

Report cmd_ultrafilters(Builder& out, const Options& o)
{
    const auto us = enumerate_ultrafilters(o.count);
    json list = json::array();
    for (const auto& u : us) {
        json sets = json::array();
        for (auto s : u.member_sets) {
            json members = json::array();
            for (std::size_t i = 0; i < u.n; ++i)
                if (s >> i & 1u) members.push_back(i + 1);
            sets.push_back(std::move(members));
        }
        const auto p = principal_point(u);
        list.push_back({{"sets", std::move(sets)}, {"principal", p ? json(*p + 1) : json(nullptr)}});
        if (p)
            out.line("  principal at ", *p + 1, " (", u.member_sets.size(), " sets)");
        else
            out.line("  NON-PRINCIPAL ultrafilter with ", u.member_sets.size(), " sets");
        if (!p) out.fail();
    }
    out.body()["ultrafilters"] = std::move(list);
    out.body()["count"] = us.size();
    out.line(us.size(), " ultrafilters on {1..", o.count, "}");
    if (us.size() != o.count) out.fail();
    return out.finish();
}

Report cmd_corpus(Builder& out, const Options& o)
{
    json doc;
    if (o.kind == "interval")
        doc = corpus::interval(o.n, o.lo, o.hi);
    else if (o.kind == "grid_plane")
        doc = corpus::grid_plane(o.n, o.spacing);
    else if (o.kind == "circle")
        doc = corpus::circle(o.n);
    else if (o.kind == "cylinder")
        doc = corpus::cylinder(o.n, o.m);
    else if (o.kind == "discrete")
        doc = corpus::discrete(o.n);
    else
        throw InputError("unknown corpus kind '" + o.kind + "'");
    if (o.exhaustion) corpus::add_symmetric_exhaustion(doc, *o.exhaustion);
    if (!o.map_kind.empty()) corpus::add_interval_map(doc, o.map_kind);

    const auto bundle = load_space(doc);
    const auto text = save_space(bundle);
    if (o.out.empty()) {
        Report r{kExitPass, text, json::object()};
        return r;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw InputError("cannot write '" + o.out + "'");
    file << text;
    out.body()["written"] = o.out;
    out.body()["points"] = bundle.space->size();
    out.line("wrote ", bundle.space->size(), "-point ", o.kind, " space to ", o.out);
    return out.finish();
}

}  // namespace

Report run_command(const std::vector<std::string>& args)
{
    Options o;
    CLI::App app{"Finite gauge spaces: metrics, completion and compactification"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* c, bool needs_file = true) {
        if (needs_file) c->add_option("file", o.file, "space file")->required();
        c->add_option("--slack", o.slack, "how close to zero counts as zero");
        c->add_option("--eps-grid", o.eps_grid, "comma-separated decreasing epsilon grid");
        c->add_option("--width-tol", o.width_tol, "interval width at which refinement stops");
        c->add_option("--out", o.out, "write the JSON report here");
    };
    auto source = [&](CLI::App* c) {
        c->add_option("--at", o.at, "a sample point id");
        c->add_option("--datum", o.datum, "an evaluation datum id");
        c->add_option("--chain", o.chain, "a tail chain id");
    };

    auto* validate = app.add_subcommand("validate", "check every metric, the gauge, functions, Cauchy points, data");
    common(validate);
    auto* equiv = app.add_subcommand("equiv", "topological equivalence of two gauges");
    common(equiv);
    equiv->add_option("--first", o.first, "comma-separated metric ids (default: first metric)");
    equiv->add_option("--second", o.second, "comma-separated metric ids (default: second metric)");
    auto* continuity = app.add_subcommand("continuity", "pointwise continuity of a map");
    common(continuity);
    continuity->add_option("--map", o.map, "map id")->required();
    continuity->add_option("--at", o.at, "point id (default: every point)");
    auto* ucontinuity = app.add_subcommand("ucontinuity", "uniform continuity of a map");
    common(ucontinuity);
    ucontinuity->add_option("--map", o.map, "map id")->required();
    auto* cover = app.add_subcommand("cover", "greedy eps-net cover profile");
    common(cover);
    auto* complete = app.add_subcommand("complete", "adjoin the file's Cauchy points");
    common(complete);
    complete->add_option("--locate-slack", o.locate_slack, "locatedness allowance for candidates (default: --slack)");
    auto* onepoint = app.add_subcommand("onepoint", "one-point compactification checks");
    common(onepoint);
    onepoint->add_option("--chain", o.chain, "exhaustion chain id")->required();
    auto* refine = app.add_subcommand("stonecech-refine", "refine an evaluation datum");
    common(refine);
    refine->add_option("--datum", o.datum, "an evaluation datum id");
    refine->add_option("--chain", o.chain, "a tail chain id");
    auto* evaluate = app.add_subcommand("stonecech-evaluate", "evaluate dictionary entries at a Stone-Čech point");
    common(evaluate);
    source(evaluate);
    evaluate->add_option("--entry", o.entries, "entries to evaluate (default: all)");
    auto* extend = app.add_subcommand("extend", "extend a map to a Stone-Čech point");
    common(extend);
    source(extend);
    extend->add_option("--map", o.map, "map id")->required();
    auto* ultra = app.add_subcommand("ultrafilters", "enumerate ultrafilters on {1..n}");
    ultra->add_option("n", o.count, "base set size (at most 4)")->required();
    ultra->add_option("--out", o.out, "write the JSON report here");
    auto* corpus_cmd = app.add_subcommand("corpus", "generate a space file");
    corpus_cmd->add_option("kind", o.kind, "interval | grid_plane | circle | cylinder | discrete")->required();
    corpus_cmd->add_option("--n", o.n, "points (per side for grid_plane)");
    corpus_cmd->add_option("--m", o.m, "heights for cylinder");
    corpus_cmd->add_option("--spacing", o.spacing, "grid spacing");
    corpus_cmd->add_option("--lo", o.lo, "interval start");
    corpus_cmd->add_option("--hi", o.hi, "interval end");
    corpus_cmd->add_option("--map", o.map_kind, "add an interval map: square | half");
    corpus_cmd->add_option("--exhaustion", o.exhaustion, "add a symmetric exhaustion chain with this step");
    corpus_cmd->add_option("--out", o.out, "write the space file here");

    Builder out(args);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {kExitPass, app.help(), json::object()};
    } catch (const CLI::ParseError& e) {
        return {kExitInputError, std::string("usage error: ") + e.what() + "\n" + app.help(),
                json{{"command", args}, {"verdict", "error"}, {"error", e.what()}}};
    }

    const auto* sub = app.get_subcommands().front();
    const auto name = sub->get_name();
    Report report;
    try {
        if (name == "validate")
            report = cmd_validate(out, o);
        else if (name == "equiv")
            report = cmd_equiv(out, o);
        else if (name == "continuity")
            report = cmd_continuity(out, o, false);
        else if (name == "ucontinuity")
            report = cmd_continuity(out, o, true);
        else if (name == "cover")
            report = cmd_cover(out, o);
        else if (name == "complete")
            report = cmd_complete(out, o);
        else if (name == "onepoint")
            report = cmd_onepoint(out, o);
        else if (name == "stonecech-refine")
            report = cmd_refine(out, o);
        else if (name == "stonecech-evaluate")
            report = cmd_evaluate(out, o);
        else if (name == "extend")
            report = cmd_extend(out, o);
        else if (name == "ultrafilters")
            report = cmd_ultrafilters(out, o);
        else
            report = cmd_corpus(out, o);
    } catch (const InputError& e) {
        out.body()["error"] = e.what();
        out.body()["verdict"] = "error";
        report = {kExitInputError, std::string("input error: ") + e.what() + "\n", std::move(out.body())};
    } catch (const PropertyError& e) {
        out.line("FAIL: ", e.what());
        out.fail();
        out.body()["error"] = e.what();
        report = out.finish();
    }

    if (!o.out.empty() && name != "corpus") {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) return {kExitInputError, "input error: cannot write '" + o.out + "'\n", report.body};
        file << canonical_dump(report.body);
    }
    return report;
}

}  // namespace gaugekit
