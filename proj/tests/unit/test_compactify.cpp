#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaugekit/compactify.hpp"
#include "gaugekit/covers.hpp"
#include "gaugekit/error.hpp"
#include "../oracles.hpp"
#include "../support.hpp"

using namespace gaugekit;
using namespace testing_support;

namespace {

Subset window(const PointSet& s, double radius)
{
    Subset out;
    for (PointIndex i = 0; i < s.size(); ++i)
        if (std::abs((*s.point(i).coords)[0]) <= radius) out.push_back(i);
    return out;
}

std::vector<double> values_of(const PointSet& s, double (*h)(double))
{
    std::vector<double> out;
    for (const auto& p : s.points()) out.push_back(h((*p.coords)[0]));
    return out;
}

// (0,1) sampled at 1/n, and the map t -> (cos 2 pi t, sin 2 pi t) onto an
// n-point circle.
struct CircleWrap {
    SpacePtr line;
    SpacePtr circle;
    Gauge base;
    Gauge target;
    MapTable g;
};

CircleWrap circle_wrap(std::size_t n)
{
    std::vector<Point> ts, cs;
    for (std::size_t i = 1; i < n; ++i) ts.push_back({"t" + std::to_string(i), std::vector<double>{double(i) / n}});
    for (std::size_t k = 0; k < n; ++k) {
        const double a = 2 * std::numbers::pi * double(k) / n;
        cs.push_back({"c" + std::to_string(k), std::vector<double>{std::cos(a), std::sin(a)}});
    }
    auto line = make_space(ts);
    auto circle = make_space(cs);
    std::vector<PointIndex> assignment;
    for (std::size_t i = 1; i < n; ++i) assignment.push_back(i);
    return {line, circle, Gauge({coordinate_metric(line, CoordinateKind::euclidean)}),
            Gauge({coordinate_metric(circle, CoordinateKind::euclidean)}), MapTable(line, circle, assignment)};
}

}  // namespace

TEST_CASE("one-point gauge on the integer line")
{
    auto s = integer_line(-10, 10);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    ExhaustionChain chain{s, {window(*s, 5)}};
    auto og = one_point_gauge(g, chain);
    REQUIRE(og.size() == 1);
    const auto& dk = og.member(one_point_member_id(g.member(0).id(), 1));
    CHECK(validate_metric(dk).valid());
    CHECK(dk(s->index_of("x-10"), s->index_of("x10")) == 0.0);
    CHECK(dk(s->index_of("x0"), s->index_of("x10")) == 6.0);
    const auto zero = s->index_of("x0");
    for (double eps : {6.0, 4.0, 1.5, 0.5}) CHECK(ball(dk, zero, eps) == ball(g.member(0), zero, eps));
    CHECK(ball(dk, zero, 6.5) != ball(g.member(0), zero, 6.5));

    auto xi = infinity_profile(g, chain);
    const auto& p = xi.profile(dk.id());
    CHECK(p[zero] == 6.0);
    CHECK(p[s->index_of("x8")] == 0.0);
    CHECK(validate_cauchy_point(og, xi, 0.0).valid());
    auto rep = find_representative(xi, 0.0);
    REQUIRE(rep);
    CHECK(std::abs((*s->point(*rep).coords)[0]) > 5);
}

TEST_CASE("one-point gauge over a chain and several metrics")
{
    auto s = integer_line(-12, 12);
    auto d = coordinate_metric(s, CoordinateKind::euclidean);
    auto big = pointwise_max(d, discrete_metric(s, 3.0));
    auto g = generate_gauge({d, big});
    ExhaustionChain chain{s, {window(*s, 3), window(*s, 6), window(*s, 9)}};
    auto og = one_point_gauge(g, chain);
    for (const auto& m : og.members()) CHECK(validate_metric(m).valid());

    for (const auto& a : g.members())
        for (const auto& b : g.members()) {
            if (!dominates(a, b)) continue;
            for (std::size_t j = 1; j <= 3; ++j)
                for (std::size_t i = 1; i <= j; ++i)
                    CHECK(dominates(og.member(one_point_member_id(a.id(), j)), og.member(one_point_member_id(b.id(), i))));
        }

    auto xi = infinity_profile(g, chain);
    CHECK(validate_cauchy_point(og, xi, 0.0).valid());
    const auto outer = window(*s, 9);
    for (PointIndex x = 0; x < s->size(); ++x) {
        bool zero_everywhere = true;
        for (const auto& [member, p] : xi.profiles) zero_everywhere = zero_everywhere && p[x] == 0.0;
        const bool inside = std::find(outer.begin(), outer.end(), x) != outer.end();
        CHECK(zero_everywhere == !inside);
    }

    for (double eps : {4.0, 2.0, 1.0, 0.5})
        for (std::size_t j = 1; j <= 3; ++j) {
            const auto& k = chain.subsets[j - 1];
            auto dk = og.member(one_point_member_id(d.id(), j));
            CHECK(greedy_net(dk, eps).centers.size() <= greedy_net(restrict_to(d, k), eps).centers.size() + 1);
        }
}

TEST_CASE("exhaustion chains are checked")
{
    auto s = integer_line(-3, 3);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    CHECK_THROWS_AS(one_point_gauge(g, {s, {window(*s, 2), window(*s, 1)}}), InputError);
    CHECK_THROWS_AS(one_point_gauge(g, {s, {window(*s, 3)}}), InputError);
    CHECK_THROWS_AS(one_point_gauge(g, {s, {}}), InputError);
    CHECK_THROWS_AS(one_point_gauge(g, {s, {window(*s, 1), window(*s, 1)}}), InputError);
}

TEST_CASE("function dictionaries")
{
    auto s = integer_line(0, 3);
    FunctionDict dict(s);
    dict.add("a", {0, 0.5, 1, 1});
    dict.add("b", {1, 0.5, 0, 0});
    CHECK_THROWS_AS(dict.add("a", {0, 0, 0, 0}), InputError);
    CHECK_THROWS_AS(dict.add("c", {0, 0, 0, 2}), InputError);
    CHECK_THROWS_AS(dict.add("c", {0, 0, 0}), InputError);
    CHECK_THROWS_AS(dict.add(std::string(kStackId), {0, 0, 0, 0}), InputError);
    CHECK_THROWS_AS(dict.add_composite("ab", {"a"}), InputError);
    CHECK_THROWS_AS(dict.add_composite("ab", {"a", "a"}), InputError);
    CHECK_THROWS_AS(dict.add_composite("ab", {"a", "zz"}), InputError);
    dict.add_composite("ab", {"a", "b"});
    CHECK_THROWS_AS(dict.add("ab", {0, 0, 0, 0}), InputError);
    CHECK(dict.size() == 2);
    CHECK_FALSE(dict.find("ab").has_value());

    compose_dict(dict, [](double t) { return t; }, "a", "id(a)");
    CHECK(dict.values("id(a)") == dict.values("a"));
    compose_dict(dict, std::map<double, double>{{0.0, 0.0}, {0.5, 0.25}, {1.0, 1.0}}, "b", "sq(b)");
    CHECK(dict.values("sq(b)") == std::vector<double>{1, 0.25, 0, 0});
    CHECK_THROWS_AS(compose_dict(dict, std::map<double, double>{{0.0, 0.0}}, "b", "bad"), InputError);
}

TEST_CASE("dictionary continuity")
{
    std::vector<std::vector<double>> coords;
    for (int i = -20; i <= 20; ++i) coords.push_back({i * 0.05});
    auto s = with_coords(coords);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    ToleranceProfile tol(0.0, {0.5, 0.25});
    FunctionDict smooth(s);
    smooth.add("clamp", values_of(*s, [](double x) { return std::min(std::abs(x), 1.0); }));
    CHECK(validate_dict(smooth, g, tol).valid);
    FunctionDict step(s);
    step.add("smooth", values_of(*s, [](double x) { return (x + 1) / 2; }));
    step.add("step", values_of(*s, [](double x) { return x > 0 ? 1.0 : 0.0; }));
    auto r = validate_dict(step, g, tol);
    CHECK_FALSE(r.valid);
    CHECK(*r.entry == "step");
}

TEST_CASE("Stone-Čech gauge members")
{
    std::vector<std::vector<double>> coords{{0}, {0.5}, {2}, {3}, {-0.25}};
    auto s = with_coords(coords);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    FunctionDict dict(s);
    dict.add("phi", values_of(*s, [](double x) { return std::min(std::abs(x), 1.0); }));
    auto single = stone_cech_gauge(g, dict);
    CHECK(single.size() == 1);
    CHECK(single.member("phi")(0, 1) == 0.5);
    CHECK(single.member("phi")(2, 3) == 0.0);

    dict.add("psi", values_of(*s, [](double x) { return (std::sin(x) + 1) / 2; }));
    dict.add("chi", values_of(*s, [](double x) { return x * x / 9; }));
    dict.add_composite("phi+psi", {"phi", "psi"});
    auto sc = stone_cech_gauge(g, dict);
    CHECK(sc.size() == 5);
    CHECK(sc.top().id() == kStackId);
    for (PointIndex i = 0; i < 5; ++i)
        for (PointIndex j = 0; j < 5; ++j) {
            CHECK(sc.member("phi+psi")(i, j) == std::max(sc.member("phi")(i, j), sc.member("psi")(i, j)));
            CHECK(sc.top()(i, j) ==
                  std::max({sc.member("phi")(i, j), sc.member("psi")(i, j), sc.member("chi")(i, j)}));
        }
    for (const auto& m : sc.members()) {
        CHECK(validate_metric(m).valid());
        CHECK(dominates(sc.top(), m));
    }
}

TEST_CASE("Stone-Čech gauge with clamped distance functions is equivalent to the base")
{
    auto s = integer_line(0, 12);
    auto d = coordinate_metric(s, CoordinateKind::euclidean);
    Gauge g({d});
    FunctionDict dict(s);
    for (PointIndex x = 0; x < s->size(); ++x) {
        auto row = d.row(x);
        for (auto& v : row) v = std::min(v, 1.0);
        dict.add("near(" + s->id(x) + ")", row);
    }
    ToleranceProfile tol(0.0, {1.0, 0.5, 0.25});
    CHECK(topologically_equivalent(g, stone_cech_gauge(g, dict), tol).equivalent);
    const auto sc = stone_cech_gauge(g, dict);
    for (const auto& m : sc.members())
        for (PointIndex i = 0; i < s->size(); ++i)
            for (PointIndex j = 0; j < s->size(); ++j) CHECK(m(i, j) <= 1.0);
}

TEST_CASE("evaluation at points")
{
    auto s = integer_line(0, 6);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    FunctionDict dict(s);
    dict.add("low", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    dict.add("high", {0.1, 0.3, 0.5, 0.6, 0.6, 0.9, 1.0});
    auto sc = stone_cech_gauge(g, dict);
    ToleranceProfile tol(0.0, {0.5, 0.2, 0.1});
    for (PointIndex x = 0; x < s->size(); ++x) {
        auto xc = represent_point(sc, x);
        const double low = evaluate_point(xc, dict, "low", tol).value;
        const double high = evaluate_point(xc, dict, "high", tol).value;
        CHECK(low == dict.values("low")[x]);
        CHECK(high == dict.values("high")[x]);
        CHECK(low <= high);
        auto trace = evaluate_point(xc, dict, "high", tol).trace;
        for (std::size_t k = 0; k < trace.size(); ++k) {
            CHECK(trace[k].hi - trace[k].lo <= 2 * trace[k].epsilon + 1e-12);
            if (k > 0) {
                CHECK(trace[k].lo >= trace[k - 1].lo);
                CHECK(trace[k].hi <= trace[k - 1].hi);
            }
        }
    }

    auto two = labeled(2);
    FunctionDict tiny(two);
    tiny.add("phi", {0.1, 0.5});
    CauchyPoint xi{"hand", two, {{"phi", {0.2, 0.2}}}};
    auto e = evaluate_point(xi, tiny, "phi", ToleranceProfile(0.2, {0.5, 0.2}));
    CHECK(e.value == doctest::Approx(0.3));
    CHECK(e.trace.back().lo == 0.1);
    CHECK(e.trace.back().hi == 0.5);
    CHECK_THROWS_AS(evaluate_point(xi, tiny, "phi", ToleranceProfile(0.0, {0.5, 0.1})), LocatednessError);
}

TEST_CASE("Cauchy points from evaluations")
{
    auto s = integer_line(0, 4);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    FunctionDict dict(s);
    dict.add("a", {0.0, 0.25, 0.5, 0.75, 1.0});
    dict.add("b", {1.0, 0.0, 1.0, 0.0, 1.0});
    dict.add_composite("ab", {"a", "b"});
    auto sc = stone_cech_gauge(g, dict);
    for (PointIndex x = 0; x < s->size(); ++x) {
        std::map<std::string, double, std::less<>> vals{{"a", dict.values("a")[x]}, {"b", dict.values("b")[x]}};
        auto xi = cauchy_from_evaluation(vals, dict, 0.0);
        auto xc = represent_point(sc, x);
        for (const auto& m : sc.members()) CHECK(xi.profile(m.id()) == xc.profile(m.id()));
        CHECK(validate_cauchy_point(sc, xi, 0.0).valid());
        ToleranceProfile tol(0.0, {0.5});
        CHECK(evaluate_point(xi, dict, "a", tol).value == vals["a"]);
        CHECK(evaluate_point(xi, dict, "b", tol).value == vals["b"]);
    }

    std::map<std::string, double, std::less<>> off{{"a", 0.25}, {"b", 1.0}};
    try {
        cauchy_from_evaluation(off, dict, 0.0);
        FAIL("expected an invalid evaluation");
    } catch (const InvalidEvaluationError& e) {
        CHECK(e.family() == std::vector<std::string>{"a", "b"});
    }
    CHECK_NOTHROW(cauchy_from_evaluation(off, dict, 0.25));

    FunctionDict zero(s);
    zero.add("z", {0, 0, 0, 0, 0});
    CHECK_THROWS_AS(cauchy_from_evaluation({{"z", 1.0}}, zero, 0.0), InvalidEvaluationError);
    CHECK_THROWS_AS(cauchy_from_evaluation({{"z", 1.5}}, zero, 0.0), InputError);
    CHECK_THROWS_AS(cauchy_from_evaluation({}, zero, 0.0), InputError);
}

TEST_CASE("evaluation data validity")
{
    auto s = integer_line(0, 4);
    FunctionDict dict(s);
    dict.add("phi", {0.3, 0.4, 0.5, 0.6, 0.7});
    dict.add("flip", {0.7, 0.6, 0.5, 0.4, 0.3});
    for (PointIndex x = 0; x < 5; ++x) CHECK(validate_datum(point_datum(dict, x), dict, 0.0).valid);
    EvaluationDatum wide{{"phi", {0, 1}}, {"flip", {0, 1}}};
    auto w = validate_datum(wide, dict, 0.0);
    CHECK(w.valid);
    CHECK(*w.witness == 0);
    EvaluationDatum low{{"phi", {0, 0.1}}, {"flip", {0, 0.1}}};
    auto r = validate_datum(low, dict, 0.0);
    CHECK_FALSE(r.valid);
    CHECK(r.violating_family == std::vector<std::string>{"phi"});
    EvaluationDatum split{{"phi", {0.3, 0.4}}, {"flip", {0.3, 0.4}}};
    auto sr = validate_datum(split, dict, 0.0);
    CHECK_FALSE(sr.valid);
    CHECK(sr.violating_family.size() == 2);
    CHECK(validate_datum(split, dict, 0.1).valid);
    CHECK_THROWS_AS(validate_datum(EvaluationDatum{{"phi", {0, 1}}}, dict, 0.0), InputError);
    CHECK_THROWS_AS(validate_datum(EvaluationDatum{{"phi", {0.5, 0.2}}, {"flip", {0, 1}}}, dict, 0.0), InputError);
}

TEST_CASE("refinement")
{
    auto s = labeled(2);
    FunctionDict one(s);
    one.add("phi", {0.2, 0.8});
    auto r = refine_datum({{"phi", {0, 1}}}, one, 0.0);
    CHECK(r.at("phi").lo == 0.2);
    CHECK(r.at("phi").hi == 0.2);

    auto line = integer_line(0, 5);
    FunctionDict dict(line);
    dict.add("a", {0.1, 0.9, 0.4, 0.4, 0.65, 0.3});
    dict.add("b", {0.5, 0.5, 0.2, 0.7, 0.1, 0.95});
    for (PointIndex x = 0; x < 6; ++x) {
        auto pd = point_datum(dict, x);
        auto refined = refine_datum(pd, dict, 0.0);
        for (const auto& [id, j] : pd) {
            CHECK(refined.at(id).lo == j.lo);
            CHECK(refined.at(id).hi == j.hi);
        }
    }

    EvaluationDatum start{{"a", {0.3, 1.0}}, {"b", {0.0, 1.0}}};
    auto coarse = refine_datum(start, dict, 0.2);
    for (const auto& [id, j] : coarse) {
        CHECK(j.width() <= 0.2);
        CHECK(j.lo >= start.at(id).lo);
        CHECK(j.hi <= start.at(id).hi);
    }
    CHECK(validate_datum(coarse, dict, 0.0).valid);
    auto fine = refine_datum(coarse, dict, 0.0);
    auto values = midpoints(fine);
    auto xi = cauchy_from_evaluation(values, dict, 0.0);
    CHECK(validate_cauchy_point(stone_cech_gauge(Gauge({discrete_metric(line)}), dict), xi, 0.0).valid());

    std::vector<std::vector<double>> table{dict.values("a"), dict.values("b")};
    auto expected = oracle::refinement_limit(table, {{0.3, 1.0}, {0.0, 1.0}});
    auto direct = midpoints(refine_datum(start, dict, 0.0));
    CHECK(direct.at("a") == expected[0]);
    CHECK(direct.at("b") == expected[1]);

    EvaluationDatum impossible{{"a", {0.0, 0.05}}, {"b", {0.0, 1.0}}};
    CHECK_THROWS_AS(refine_datum(impossible, dict, 0.0), InputError);
    CHECK_THROWS_AS(refine_datum(start, dict, -1.0), InputError);
}

TEST_CASE("tail data")
{
    std::vector<std::vector<double>> coords;
    for (int x = 1; x <= 100; ++x) coords.push_back({double(x)});
    auto s = with_coords(coords);
    FunctionDict dict(s);
    dict.add("inv", values_of(*s, [](double x) { return std::min(1.0, 1.0 / x); }));
    TailChain tails{s, {}};
    for (int z : {0, 50, 90, 99}) {
        Subset c;
        for (PointIndex i = 0; i < 100; ++i)
            if (i + 1 > static_cast<PointIndex>(z)) c.push_back(i);
        tails.subsets.push_back(c);
    }
    auto j = tail_datum(tails, dict);
    CHECK(j.at("inv").lo == 0.01);
    CHECK(j.at("inv").hi == 0.01);
    CHECK(validate_datum(j, dict, 0.0).valid);

    std::vector<std::vector<double>> dense;
    for (int i = 0; i <= 1000; ++i) dense.push_back({i * 0.05});
    auto ds = with_coords(dense);
    FunctionDict wave(ds);
    wave.add("sin", values_of(*ds, [](double x) { return (1 + std::sin(x)) / 2; }));
    TailChain coarse{ds, {}};
    for (double z : {0.0, 10.0, 20.0}) {
        Subset c;
        for (PointIndex i = 0; i < ds->size(); ++i)
            if ((*ds->point(i).coords)[0] > z) c.push_back(i);
        coarse.subsets.push_back(c);
    }
    auto jw = tail_datum(coarse, wave);
    CHECK(jw.at("sin").lo < jw.at("sin").hi);
    CHECK(validate_datum(jw, wave, 0.0).valid);

    std::vector<std::vector<double>> grid;
    for (int x = 0; x < 10; ++x)
        for (int y = 0; y < 2; ++y) grid.push_back({double(x), double(y)});
    auto gs = with_coords(grid);
    FunctionDict plane(gs);
    plane.add("height", values_of(*gs, [](double) { return 0.0; }));
    std::vector<double> h;
    for (const auto& p : gs->points()) h.push_back((*p.coords)[1]);
    plane.add("y", h);
    auto line_tail = [&](double y0) {
        TailChain t{gs, {}};
        for (int z : {0, 4, 8}) {
            Subset c;
            for (PointIndex i = 0; i < gs->size(); ++i) {
                const auto& c2 = *gs->point(i).coords;
                if (c2[1] == y0 && c2[0] >= z) c.push_back(i);
            }
            t.subsets.push_back(c);
        }
        return tail_datum(t, plane);
    };
    auto bottom = line_tail(0.0);
    auto top = line_tail(1.0);
    CHECK(bottom.at("y").hi == 0.0);
    CHECK(top.at("y").lo == 1.0);

    CHECK_THROWS_AS(tail_datum(TailChain{s, {{0, 1}, {0, 1}}}, dict), InputError);
    CHECK_THROWS_AS(tail_datum(TailChain{s, {{0}, {0, 1}}}, dict), InputError);
}

TEST_CASE("extension to represented points")
{
    auto w = circle_wrap(100);
    FunctionDict dict(w.line);
    register_extension_functions(dict, w.g, w.target);
    CHECK(dict.size() == 100);
    CHECK(dict.find(extension_function_id(w.target.member(0).id(), "c3")).has_value());
    register_extension_functions(dict, w.g, w.target);
    CHECK(dict.size() == 100);
    auto sc = stone_cech_gauge(w.base, dict);
    for (PointIndex x = 0; x < w.line->size(); x += 7) {
        auto r = extend_map(w.g, w.target, represent_point(sc, x), dict, 0.0);
        CHECK(r.point == w.g(x));
    }

    auto s = integer_line(0, 5);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    std::vector<PointIndex> ident{0, 1, 2, 3, 4, 5};
    MapTable id(s, s, ident);
    FunctionDict idd(s);
    register_extension_functions(idd, id, g);
    auto isc = stone_cech_gauge(g, idd);
    for (PointIndex x = 0; x < 6; ++x) CHECK(extend_map(id, g, represent_point(isc, x), idd, 0.0).point == x);

    FunctionDict missing(s);
    missing.add("other", {0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(extend_map(id, g, represent_point(stone_cech_gauge(g, missing), 0), missing, 0.0), InputError);
}

TEST_CASE("extension of the tail point of (0,1) lands near the gap")
{
    auto w = circle_wrap(100);
    FunctionDict dict(w.line);
    register_extension_functions(dict, w.g, w.target);
    TailChain tails{w.line, {}};
    for (double z : {0.5, 0.9, 0.97, 0.98}) {
        Subset c;
        for (PointIndex i = 0; i < w.line->size(); ++i)
            if ((*w.line->point(i).coords)[0] > z + 1e-9) c.push_back(i);
        tails.subsets.push_back(c);
    }
    auto refined = refine_datum(tail_datum(tails, dict), dict, 0.0);
    auto xi = cauchy_from_evaluation(midpoints(refined), dict, 0.0);
    auto r = extend_map(w.g, w.target, xi, dict, 0.0);
    const auto& c = *w.circle->point(r.point).coords;
    CHECK(std::hypot(c[0] - 1.0, c[1]) <= 2 * 2 * std::numbers::pi * 0.01);
}

TEST_CASE("extension is stable under reordering the target")
{
    auto w = circle_wrap(40);
    std::vector<Point> reversed(w.circle->points().rbegin(), w.circle->points().rend());
    auto rc = make_space(reversed);
    std::vector<PointIndex> assignment;
    for (PointIndex x = 0; x < w.line->size(); ++x) assignment.push_back(39 - w.g(x));
    MapTable rg(w.line, rc, assignment);
    Gauge rt({coordinate_metric(rc, CoordinateKind::euclidean)});

    FunctionDict dict(w.line);
    dict.add("ramp", values_of(*w.line, [](double t) { return t; }));
    register_extension_functions(dict, w.g, w.target);
    register_extension_functions(dict, rg, rt);
    auto sc = stone_cech_gauge(w.base, dict);
    const double slack = 0.2;
    for (PointIndex x = 0; x < w.line->size(); x += 5) {
        EvaluationDatum j;
        for (const auto& e : dict.entries()) {
            const double v = e.values[x];
            j.emplace(e.id, Interval{std::max(0.0, v - 0.05), std::min(1.0, v + 0.05)});
        }
        auto xi = cauchy_from_evaluation(midpoints(j), dict, 0.05);
        auto a = extend_map(w.g, w.target, xi, dict, slack, ToleranceProfile(0.05, {}));
        auto b = extend_map(rg, rt, xi, dict, slack, ToleranceProfile(0.05, {}));
        const auto& ca = *w.circle->point(a.point).coords;
        const auto& cb = *rc->point(b.point).coords;
        CHECK(std::hypot(ca[0] - cb[0], ca[1] - cb[1]) <= 2 * slack + 1e-12);
    }
    (void)sc;
}

TEST_CASE("extension errors")
{
    auto two = with_coords({{0.0}, {5.0}});
    Gauge tg({coordinate_metric(two, CoordinateKind::euclidean)});
    MapTable swap(two, two, {0, 1});
    FunctionDict dict(two);
    register_extension_functions(dict, swap, tg);
    const auto& member = tg.member(0).id();
    CauchyPoint crossed{"crossed", two, {}};
    crossed.profiles.emplace(extension_function_id(member, "p0"), std::vector<double>{1.0, 0.0});
    crossed.profiles.emplace(extension_function_id(member, "p1"), std::vector<double>{0.0, 1.0});
    CHECK_THROWS_AS(extend_map(swap, tg, crossed, dict, 0.0), TargetNotReachableError);

    auto holed = with_coords({{0.0}, {0.1}, {0.3}, {0.4}});
    Gauge hg({coordinate_metric(holed, CoordinateKind::euclidean)});
    MapTable id(holed, holed, {0, 1, 2, 3});
    FunctionDict hd(holed);
    register_extension_functions(hd, id, hg);
    CauchyPoint gap{"gap", holed, {}};
    for (const auto& e : hd.entries()) gap.profiles.emplace(e.id, std::vector<double>{0.2, 0.1, 0.1, 0.2});
    try {
        extend_map(id, hg, gap, hd, 0.05, ToleranceProfile(0.1, {}));
        FAIL("expected the hole to be unlocatable at this slack");
    } catch (const HypothesisError& e) {
        CHECK(std::string(e.what()).find("hypothesis 3") != std::string::npos);
    }
    auto r = extend_map(id, hg, gap, hd, 0.1, ToleranceProfile(0.1, {}));
    CHECK((r.point == 1 || r.point == 2));
}

TEST_CASE("ultrafilters on small sets are principal")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        auto us = enumerate_ultrafilters(n);
        CHECK(us.size() == n);
        std::set<std::size_t> points;
        for (const auto& u : us) {
            auto p = principal_point(u);
            REQUIRE(p);
            points.insert(*p);
        }
        CHECK(points.size() == n);
        CHECK(oracle::ultrafilters(n).size() == n);
    }
    CHECK_THROWS_AS(enumerate_ultrafilters(5), SizeError);
    CHECK_FALSE(is_ultrafilter(2, {3}));
    CHECK(is_ultrafilter(2, {1, 3}));
    CHECK_FALSE(principal_point(Ultrafilter{2, {3}}).has_value());
}
