#include "gaugekit/bundle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gaugekit/error.hpp"

namespace gaugekit {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw InputError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

const json* optional_field(const json& obj, const char* key) { return obj.contains(key) ? &obj.at(key) : nullptr; }

std::string as_string(const json& v, const std::string& where)
{
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

double as_real(const json& v, const std::string& where)
{
    if (!v.is_number()) fail(where, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where, "expected a finite number");
    return x;
}

std::size_t as_index(const json& v, const std::string& where)
{
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(where, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

const json& as_array(const json& v, const std::string& where)
{
    if (!v.is_array()) fail(where, "expected an array");
    return v;
}

std::vector<double> as_reals(const json& v, const std::string& where)
{
    std::vector<double> out;
    for (std::size_t i = 0; i < as_array(v, where).size(); ++i)
        out.push_back(as_real(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Subset as_subset(const json& v, const PointSet& space, const std::string& where)
{
    Subset out;
    std::set<PointIndex> seen;
    for (std::size_t i = 0; i < as_array(v, where).size(); ++i) {
        const auto here = where + "[" + std::to_string(i) + "]";
        const auto id = as_string(v[i], here);
        auto k = space.find(id);
        if (!k) fail(here, "unknown point '" + id + "'");
        if (!seen.insert(*k).second) fail(here, "repeated point '" + id + "'");
        out.push_back(*k);
    }
    return out;
}

json subset_json(const Subset& s, const PointSet& space)
{
    json out = json::array();
    for (auto i : s) out.push_back(space.id(i));
    return out;
}

std::size_t metric_index(const std::vector<MetricTable>& built, const std::string& id, const std::string& where)
{
    for (std::size_t k = 0; k < built.size(); ++k)
        if (built[k].id() == id) return k;
    fail(where, "unknown metric '" + id + "' (metrics may only refer to earlier entries)");
}

std::vector<MetricTable> axis_tables(const json& spec, const SpacePtr& space, const std::string& where)
{
    std::vector<MetricTable> out;
    const auto& axes = as_array(field(spec, "axes", where), where + ".axes");
    if (axes.empty()) fail(where + ".axes", "expected at least one axis");
    for (std::size_t i = 0; i < axes.size(); ++i)
        out.push_back(coordinate_projection(space, as_index(axes[i], where + ".axes[" + std::to_string(i) + "]")));
    return out;
}

void write_json(std::string& out, const json& v, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (v.type()) {
    case json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + json(it.key()).dump() + ": ";
            write_json(out, it.value(), indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        bool flat = true;
        for (const auto& e : v)
            if (e.is_structured()) flat = false;
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                write_json(out, v[i], indent + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            write_json(out, v[i], indent + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case json::value_t::number_float: {
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw InputError("cannot serialize a non-finite number");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
        out += buf;
        return;
    }
    default:
        out += v.dump();
    }
}

}  // namespace

const MetricTable& Bundle::metric(std::string_view id) const
{
    for (const auto& m : metrics)
        if (m.id() == id) return m;
    throw InputError("unknown metric '" + std::string(id) + "'");
}

const Gauge& Bundle::require_gauge() const
{
    if (!gauge) throw InputError("the space file defines no gauge");
    return *gauge;
}

const MapEntry& Bundle::map(std::string_view id) const
{
    auto it = maps.find(id);
    if (it == maps.end()) throw InputError("unknown map '" + std::string(id) + "'");
    return it->second;
}

MetricTable build_metric(const json& spec, const SpacePtr& space, const std::vector<MetricTable>& built)
{
    const std::string where = "metric";
    const auto kind = as_string(field(spec, "kind", where), where + ".kind");
    auto ref = [&](const char* key) -> const MetricTable& {
        return built[metric_index(built, as_string(field(spec, key, where), where + "." + key), where + "." + key)];
    };

    std::optional<MetricTable> t;
    if (kind == "euclidean" || kind == "taxicab" || kind == "chebyshev") {
        t = coordinate_metric(space, parse_coordinate_kind(kind));
    } else if (kind == "discrete") {
        const auto* c = optional_field(spec, "c");
        t = discrete_metric(space, c ? as_real(*c, where + ".c") : 1.0);
    } else if (kind == "indiscrete") {
        t = indiscrete_metric(space);
    } else if (kind == "truncate") {
        t = truncate(ref("of"), as_real(field(spec, "c", where), where + ".c"));
    } else if (kind == "max") {
        const auto& of = as_array(field(spec, "of", where), where + ".of");
        std::vector<MetricTable> parts;
        for (std::size_t i = 0; i < of.size(); ++i) {
            const auto here = where + ".of[" + std::to_string(i) + "]";
            parts.push_back(built[metric_index(built, as_string(of[i], here), here)]);
        }
        if (parts.empty()) fail(where + ".of", "expected at least one metric");
        t = pointwise_max(parts);
    } else if (kind == "partition") {
        const auto& blocks = as_array(field(spec, "blocks", where), where + ".blocks");
        std::vector<Subset> bs;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            bs.push_back(as_subset(blocks[i], *space, where + ".blocks[" + std::to_string(i) + "]"));
        t = partition_metric(space, bs);
    } else if (kind == "collapse") {
        t = collapse(ref("of"), as_subset(field(spec, "set", where), *space, where + ".set"));
    } else if (kind == "coordinate") {
        t = coordinate_projection(space, as_index(field(spec, "axis", where), where + ".axis"));
    } else if (kind == "sup_family") {
        t = sup_family(axis_tables(spec, space, where));
    } else if (kind == "weighted_sum") {
        t = weighted_sum(axis_tables(spec, space, where));
    } else if (kind == "table") {
        const auto& rows = as_array(field(spec, "rows", where), where + ".rows");
        std::vector<std::vector<double>> values;
        for (std::size_t i = 0; i < rows.size(); ++i) values.push_back(as_reals(rows[i], where + ".rows[" + std::to_string(i) + "]"));
        t = MetricTable::from_rows("table", space, values);
    } else {
        fail(where + ".kind", "unknown metric kind '" + kind + "'");
    }
    if (const auto* id = optional_field(spec, "id")) return t->renamed(as_string(*id, where + ".id"));
    return *t;
}

Bundle load_space(const json& doc, const LoadOptions& options)
{
    const std::string root = "space";
    if (!doc.is_object()) fail(root, "expected an object");
    const auto version = as_index(field(doc, "schema_version", root), root + ".schema_version");
    if (version != static_cast<std::size_t>(kSchemaVersion))
        fail(root + ".schema_version", "unsupported version " + std::to_string(version));

    Bundle b;
    std::optional<double> resolution;
    if (const auto* r = optional_field(doc, "resolution")) resolution = as_real(*r, root + ".resolution");

    std::vector<Point> pts;
    const auto& points = as_array(field(doc, "points", root), root + ".points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto here = root + ".points[" + std::to_string(i) + "]";
        Point p{as_string(field(points[i], "id", here), here + ".id"), std::nullopt};
        if (const auto* c = optional_field(points[i], "coords")) p.coords = as_reals(*c, here + ".coords");
        pts.push_back(std::move(p));
    }
    try {
        b.space = make_space(std::move(pts), resolution);
    } catch (const InputError& e) {
        fail(root + ".points", e.what());
    }
    const auto& space = *b.space;

    if (const auto* metrics = optional_field(doc, "metrics")) {
        for (std::size_t i = 0; i < as_array(*metrics, root + ".metrics").size(); ++i) {
            const auto here = root + ".metrics[" + std::to_string(i) + "]";
            json spec = (*metrics)[i];
            MetricTable t = [&] {
                try {
                    return build_metric(spec, b.space, b.metrics);
                } catch (const InputError& e) {
                    fail(here, e.what());
                }
            }();
            for (const auto& m : b.metrics)
                if (m.id() == t.id()) fail(here, "duplicate metric id '" + t.id() + "'");
            if (options.validate_tables && spec.at("kind") == "table") {
                const auto report = validate_metric(t, 1);
                if (!report.valid()) {
                    const auto& w = report.violations.front();
                    fail(here, "'" + t.id() + "' fails " + std::string(to_string(w.axiom)) + " at ('" + space.id(w.i) +
                                   "','" + space.id(w.j) + "','" + space.id(w.k) + "')");
                }
            }
            spec["id"] = t.id();
            b.metric_specs.push_back(std::move(spec));
            b.metrics.push_back(std::move(t));
        }
    }

    if (const auto* g = optional_field(doc, "gauge")) {
        for (std::size_t i = 0; i < as_array(*g, root + ".gauge").size(); ++i) {
            const auto here = root + ".gauge[" + std::to_string(i) + "]";
            const auto id = as_string((*g)[i], here);
            metric_index(b.metrics, id, here);
            b.gauge_ids.push_back(id);
        }
    } else {
        for (const auto& m : b.metrics) b.gauge_ids.push_back(m.id());
    }
    if (options.build_gauge && !b.gauge_ids.empty()) {
        std::vector<MetricTable> seeds;
        for (const auto& id : b.gauge_ids) seeds.push_back(b.metric(id));
        try {
            b.gauge = generate_gauge(std::move(seeds));
        } catch (const InputError& e) {
            fail(root + ".gauge", e.what());
        }
    }

    b.functions = std::make_shared<FunctionDict>(b.space);
    if (const auto* fs = optional_field(doc, "functions")) {
        for (std::size_t i = 0; i < as_array(*fs, root + ".functions").size(); ++i) {
            const auto here = root + ".functions[" + std::to_string(i) + "]";
            try {
                b.functions->add(as_string(field((*fs)[i], "id", here), here + ".id"),
                                 as_reals(field((*fs)[i], "values", here), here + ".values"));
            } catch (const InputError& e) {
                fail(here, e.what());
            }
        }
    }
    if (const auto* cs = optional_field(doc, "composites")) {
        for (std::size_t i = 0; i < as_array(*cs, root + ".composites").size(); ++i) {
            const auto here = root + ".composites[" + std::to_string(i) + "]";
            const auto& parts = as_array(field((*cs)[i], "parts", here), here + ".parts");
            std::vector<std::string> ids;
            for (std::size_t k = 0; k < parts.size(); ++k)
                ids.push_back(as_string(parts[k], here + ".parts[" + std::to_string(k) + "]"));
            try {
                b.functions->add_composite(as_string(field((*cs)[i], "id", here), here + ".id"), ids);
            } catch (const InputError& e) {
                fail(here, e.what());
            }
        }
    }

    if (const auto* chains = optional_field(doc, "chains")) {
        for (std::size_t i = 0; i < as_array(*chains, root + ".chains").size(); ++i) {
            const auto here = root + ".chains[" + std::to_string(i) + "]";
            const auto& c = (*chains)[i];
            const auto id = as_string(field(c, "id", here), here + ".id");
            const auto kind = as_string(field(c, "kind", here), here + ".kind");
            const auto& subsets = as_array(field(c, "subsets", here), here + ".subsets");
            std::vector<Subset> ss;
            for (std::size_t k = 0; k < subsets.size(); ++k)
                ss.push_back(as_subset(subsets[k], space, here + ".subsets[" + std::to_string(k) + "]"));
            if (b.exhaustion_chains.count(id) || b.tail_chains.count(id)) fail(here, "duplicate chain id '" + id + "'");
            try {
                if (kind == "exhaustion") {
                    ExhaustionChain chain{b.space, std::move(ss)};
                    check_chain(chain);
                    b.exhaustion_chains.emplace(id, std::move(chain));
                } else if (kind == "tail") {
                    TailChain chain{b.space, std::move(ss)};
                    check_chain(chain);
                    b.tail_chains.emplace(id, std::move(chain));
                } else {
                    fail(here + ".kind", "unknown chain kind '" + kind + "'");
                }
            } catch (const InputError& e) {
                fail(here, e.what());
            }
        }
    }

    if (const auto* maps = optional_field(doc, "maps")) {
        for (std::size_t i = 0; i < as_array(*maps, root + ".maps").size(); ++i) {
            const auto here = root + ".maps[" + std::to_string(i) + "]";
            const auto& m = (*maps)[i];
            const auto id = as_string(field(m, "id", here), here + ".id");
            if (b.maps.count(id)) fail(here, "duplicate map id '" + id + "'");
            std::shared_ptr<const Bundle> target;
            try {
                target = std::make_shared<const Bundle>(load_space(field(m, "target", here), options));
            } catch (const InputError& e) {
                fail(here + ".target", e.what());
            }
            const auto& assignment = as_array(field(m, "assignment", here), here + ".assignment");
            if (assignment.size() != space.size())
                fail(here + ".assignment", "expected " + std::to_string(space.size()) + " entries");
            std::vector<PointIndex> image;
            for (std::size_t k = 0; k < assignment.size(); ++k) {
                const auto at = here + ".assignment[" + std::to_string(k) + "]";
                const auto y = as_string(assignment[k], at);
                auto idx = target->space->find(y);
                if (!idx) fail(at, "unknown target point '" + y + "'");
                image.push_back(*idx);
            }
            b.maps.emplace(id, MapEntry{target, MapTable(b.space, target->space, std::move(image))});
        }
    }

    if (const auto* data = optional_field(doc, "data")) {
        for (std::size_t i = 0; i < as_array(*data, root + ".data").size(); ++i) {
            const auto here = root + ".data[" + std::to_string(i) + "]";
            const auto id = as_string(field((*data)[i], "id", here), here + ".id");
            const auto& intervals = field((*data)[i], "intervals", here);
            if (!intervals.is_object()) fail(here + ".intervals", "expected an object");
            EvaluationDatum datum;
            for (auto it = intervals.begin(); it != intervals.end(); ++it) {
                const auto at = here + ".intervals." + it.key();
                if (!b.functions->find(it.key())) fail(at, "unknown function '" + it.key() + "'");
                const auto v = as_reals(it.value(), at);
                if (v.size() != 2 || !(v[0] <= v[1]) || v[0] < 0.0 || v[1] > 1.0)
                    fail(at, "expected [lo, hi] with 0 <= lo <= hi <= 1");
                datum.emplace(it.key(), Interval{v[0], v[1]});
            }
            if (!b.data.emplace(id, std::move(datum)).second) fail(here, "duplicate datum id '" + id + "'");
        }
    }

    if (const auto* cps = optional_field(doc, "cauchy_points")) {
        for (std::size_t i = 0; i < as_array(*cps, root + ".cauchy_points").size(); ++i) {
            const auto here = root + ".cauchy_points[" + std::to_string(i) + "]";
            CauchyPoint xi{as_string(field((*cps)[i], "label", here), here + ".label"), b.space, {}};
            const auto& profiles = field((*cps)[i], "profiles", here);
            if (!profiles.is_object()) fail(here + ".profiles", "expected an object");
            for (auto it = profiles.begin(); it != profiles.end(); ++it) {
                auto v = as_reals(it.value(), here + ".profiles." + it.key());
                if (v.size() != space.size())
                    fail(here + ".profiles." + it.key(), "expected " + std::to_string(space.size()) + " values");
                xi.profiles.emplace(it.key(), std::move(v));
            }
            b.cauchy_points.push_back(std::move(xi));
        }
    }

    if (const auto* tol = optional_field(doc, "tolerances")) {
        const auto here = root + ".tolerances";
        const auto* s = optional_field(*tol, "slack");
        const auto* g = optional_field(*tol, "epsilon_grid");
        try {
            b.tolerances = ToleranceProfile(s ? as_real(*s, here + ".slack") : 0.0,
                                            g ? as_reals(*g, here + ".epsilon_grid") : std::vector<double>{});
        } catch (const InputError& e) {
            fail(here, e.what());
        }
    }
    return b;
}

Bundle load_space_file(const std::string& path, const LoadOptions& options)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    try {
        return load_space(doc, options);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

json to_json(const Bundle& b)
{
    const auto& space = *b.space;
    json doc;
    doc["schema_version"] = kSchemaVersion;
    if (auto r = space.resolution()) doc["resolution"] = *r;

    json points = json::array();
    for (const auto& p : space.points()) {
        json q{{"id", p.id}};
        if (p.coords) q["coords"] = *p.coords;
        points.push_back(std::move(q));
    }
    doc["points"] = std::move(points);
    doc["metrics"] = b.metric_specs;
    doc["gauge"] = b.gauge_ids;

    if (b.functions && b.functions->size() > 0) {
        json fs = json::array();
        for (const auto& e : b.functions->entries()) fs.push_back({{"id", e.id}, {"values", e.values}});
        doc["functions"] = std::move(fs);
        if (!b.functions->composites().empty()) {
            json cs = json::array();
            for (const auto& c : b.functions->composites()) {
                json parts = json::array();
                for (auto k : c.parts) parts.push_back(b.functions->entry(k).id);
                cs.push_back({{"id", c.id}, {"parts", std::move(parts)}});
            }
            doc["composites"] = std::move(cs);
        }
    }

    if (!b.exhaustion_chains.empty() || !b.tail_chains.empty()) {
        json chains = json::array();
        auto emit = [&](const std::string& id, const char* kind, const std::vector<Subset>& subsets) {
            json ss = json::array();
            for (const auto& s : subsets) ss.push_back(subset_json(s, space));
            chains.push_back({{"id", id}, {"kind", kind}, {"subsets", std::move(ss)}});
        };
        for (const auto& [id, c] : b.exhaustion_chains) emit(id, "exhaustion", c.subsets);
        for (const auto& [id, c] : b.tail_chains) emit(id, "tail", c.subsets);
        doc["chains"] = std::move(chains);
    }

    if (!b.maps.empty()) {
        json maps = json::array();
        for (const auto& [id, m] : b.maps) {
            json assignment = json::array();
            for (auto y : m.table.assignment()) assignment.push_back(m.target->space->id(y));
            maps.push_back({{"id", id}, {"target", to_json(*m.target)}, {"assignment", std::move(assignment)}});
        }
        doc["maps"] = std::move(maps);
    }

    if (!b.data.empty()) {
        json data = json::array();
        for (const auto& [id, d] : b.data) {
            json intervals = json::object();
            for (const auto& [entry, j] : d) intervals[entry] = {j.lo, j.hi};
            data.push_back({{"id", id}, {"intervals", std::move(intervals)}});
        }
        doc["data"] = std::move(data);
    }

    if (!b.cauchy_points.empty()) {
        json cps = json::array();
        for (const auto& xi : b.cauchy_points) {
            json profiles = json::object();
            for (const auto& [member, p] : xi.profiles) profiles[member] = p;
            cps.push_back({{"label", xi.label}, {"profiles", std::move(profiles)}});
        }
        doc["cauchy_points"] = std::move(cps);
    }

    doc["tolerances"] = {{"slack", b.tolerances.slack()}, {"epsilon_grid", b.tolerances.epsilon_grid()}};
    return doc;
}

std::string canonical_dump(const json& value)
{
    std::string out;
    write_json(out, value, 0);
    out += "\n";
    return out;
}

std::string save_space(const Bundle& bundle) { return canonical_dump(to_json(bundle)); }

void save_space_file(const Bundle& bundle, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << save_space(bundle);
}

}  // namespace gaugekit
