#include <doctest.h>

#include <cmath>
#include <random>

#include "gaugekit/completion.hpp"
#include "gaugekit/error.hpp"
#include "../oracles.hpp"
#include "../support.hpp"

using namespace gaugekit;
using namespace testing_support;

namespace {

Subset without(std::size_t n, const Subset& removed)
{
    Subset keep;
    for (PointIndex i = 0; i < n; ++i)
        if (std::find(removed.begin(), removed.end(), i) == removed.end()) keep.push_back(i);
    return keep;
}

bool has_violation(const CauchyReport& r, CauchyAxiom axiom)
{
    for (const auto& v : r.violations)
        if (v.axiom == axiom) return true;
    return false;
}

}  // namespace

TEST_CASE("represented points")
{
    auto s = labeled(3);
    Gauge g({table("d", s, {{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}})});
    for (PointIndex z = 0; z < 3; ++z) {
        auto zhat = represent_point(g, z);
        CHECK(zhat.profile("d") == g.member(0).row(z));
        CHECK(validate_cauchy_point(g, zhat, 0.0).valid());
        CHECK(find_representative(zhat, 0.0) == z);
        for (PointIndex w = 0; w < 3; ++w) CHECK(hat_distance("d", zhat, represent_point(g, w)) == g.member(0)(z, w));
    }
    CHECK_THROWS_AS(represent_point(g, 3), InputError);

    Gauge twins({table("d", s, {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}})});
    CHECK(find_representative(represent_point(twins, 1), 0.0) == 0);
}

TEST_CASE("cauchy axioms")
{
    auto two = labeled(2);
    Gauge g({discrete_metric(two)});
    CauchyPoint zero{"zero", two, {{g.member(0).id(), {0.0, 0.0}}}};
    auto r = validate_cauchy_point(g, zero, 0.0);
    CHECK(has_violation(r, CauchyAxiom::triangle_b));

    CauchyPoint far{"far", two, {{g.member(0).id(), {3.0, 1.0}}}};
    auto fr = validate_cauchy_point(g, far, 0.0);
    CHECK(has_violation(fr, CauchyAxiom::triangle_a));
    CHECK(has_violation(fr, CauchyAxiom::locatedness));

    CauchyPoint missing{"missing", two, {}};
    CHECK_THROWS_AS(validate_cauchy_point(g, missing, 0.0), InputError);

    // Monotonicity across dominance.
    auto line = integer_line(0, 3);
    auto d = coordinate_metric(line, CoordinateKind::euclidean);
    auto big = pointwise_max(d, discrete_metric(line, 2.0));
    auto mg = generate_gauge({d, big});
    auto xi = represent_point(mg, 1);
    CHECK(validate_cauchy_point(mg, xi, 0.0).valid());
    auto swapped = xi;
    swapped.profiles[d.id()] = {2.0, 0.0, 2.0, 2.0};
    swapped.profiles[big.id()] = {1.0, 0.0, 1.0, 2.0};
    auto mr = validate_cauchy_point(mg, swapped, 0.0);
    CHECK(has_violation(mr, CauchyAxiom::monotonicity));
}

TEST_CASE("deleted point profiles")
{
    auto s = integer_line(0, 2);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    auto sub = restrict_gauge(g, {0, 2});
    auto xi = deleted_point_profile(g, 1, sub);
    CHECK(xi.profile(g.member(0).id()) == std::vector<double>{1.0, 1.0});
    CHECK(xi.label == "x1");
    CHECK_THROWS_AS(deleted_point_profile(g, 1, g), InputError);

    std::vector<std::vector<double>> grid;
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) grid.push_back({0.1 * i, 0.1 * j});
    auto plane = with_coords(grid);
    Gauge pg({coordinate_metric(plane, CoordinateKind::euclidean)});
    const PointIndex origin = 24;
    REQUIRE((*plane->point(origin).coords)[0] == 0.0);
    auto keep = without(plane->size(), {origin});
    auto psub = restrict_gauge(pg, keep);
    auto hole = deleted_point_profile(pg, origin, psub);
    const auto& p = hole.profile(pg.member(0).id());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        const auto& c = *plane->point(keep[k]).coords;
        CHECK(p[k] == doctest::Approx(std::hypot(c[0], c[1])).epsilon(1e-15));
    }
    CHECK_FALSE(validate_cauchy_point(psub, hole, 0.05).valid());
    CHECK(validate_cauchy_point(psub, hole, 0.1 + 1e-12).valid());
    CHECK_FALSE(find_representative(hole, 0.0).has_value());
    auto rep = find_representative(hole, 0.1 + 1e-12);
    REQUIRE(rep);
    CHECK(p[*rep] == doctest::Approx(0.1));
}

TEST_CASE("hat distance")
{
    auto s = integer_line(0, 10);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    auto keep = without(11, {3, 7});
    auto sub = restrict_gauge(g, keep);
    auto a = deleted_point_profile(g, 3, sub);
    auto b = deleted_point_profile(g, 7, sub);
    const auto id = g.member(0).id();
    CHECK(hat_distance(id, a, b) == 4.0);
    CHECK(hat_distance(id, a, a) <= 2.0);
    auto zhat = represent_point(sub, 0);
    CHECK(hat_distance(id, zhat, zhat) == 0.0);
    CHECK(hat_distance(id, zhat, a) == a.profile(id)[0]);
    CHECK_THROWS_AS(hat_distance(id, zhat, represent_point(g, 0)), InputError);

    std::vector<CauchyPoint> pts{a, b, zhat, represent_point(sub, 5), represent_point(sub, 8)};
    for (const auto& p : pts)
        for (const auto& q : pts) {
            CHECK(hat_distance(id, p, q) == hat_distance(id, q, p));
            for (const auto& r : pts)
                CHECK(hat_distance(id, p, r) <= hat_distance(id, p, q) + hat_distance(id, q, r) + 1e-12);
        }
}

TEST_CASE("completing the integer line restores the deleted points")
{
    auto s = integer_line(0, 10);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    auto keep = without(11, {3, 7});
    auto sub = restrict_gauge(g, keep);
    auto done = complete_space(sub, {deleted_point_profile(g, 3, sub), deleted_point_profile(g, 7, sub)}, 0.0, 1.0);
    REQUIRE(done.space->size() == 11);
    CHECK(done.adjoined == std::vector<std::string>{"x3", "x7"});
    const auto& t = done.gauge.member(g.member(0).id());
    for (PointIndex i = 0; i < 11; ++i)
        for (PointIndex j = 0; j < 11; ++j) {
            const auto a = s->index_of(done.space->id(i));
            const auto b = s->index_of(done.space->id(j));
            CHECK(t(i, j) == g.member(0)(a, b));
        }
    CHECK(is_separated(done.gauge).separated);
    CHECK_THROWS_AS(complete_space(sub, {deleted_point_profile(g, 3, sub)}, 0.0), InputError);
}

TEST_CASE("a single completion never shrinks distances between deleted points")
{
    std::mt19937_64 rng(41);
    for (int round = 0; round < 10; ++round) {
        auto pts = oracle::random_points(rng, 16, 2);
        auto s = with_coords(pts);
        Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
        Subset removed{2, 5, 11};
        auto sub = restrict_gauge(g, without(16, removed));
        std::vector<CauchyPoint> holes;
        for (auto y : removed) holes.push_back(deleted_point_profile(g, y, sub));
        auto done = complete_space(sub, holes, 0.0, 100.0);
        REQUIRE(done.space->size() == 16);
        const auto& t = done.gauge.member(0);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
                const auto i = done.space->index_of(s->id(removed[a]));
                const auto j = done.space->index_of(s->id(removed[b]));
                CHECK(t(i, j) >= g.member(0)(removed[a], removed[b]) - 1e-12);
            }
    }
}

TEST_CASE("completion of spaces without holes")
{
    auto s = with_coords({{0, 0}, {1, 0}, {0, 2}, {3, 3}});
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    std::vector<CauchyPoint> all;
    for (PointIndex z = 0; z < 4; ++z) all.push_back(represent_point(g, z));
    auto done = complete_space(g, all, 0.0);
    CHECK(done.space->size() == 4);
    CHECK(done.adjoined.empty());
    CHECK(done.absorbed.size() == 4);
    for (PointIndex i = 0; i < 4; ++i) {
        CHECK(done.embedding.at(s->id(i)) == s->id(i));
        for (PointIndex j = 0; j < 4; ++j) CHECK(done.gauge.member(0)(i, j) == g.member(0)(i, j));
    }

    auto three = labeled(3);
    auto flat = complete_space(Gauge({indiscrete_metric(three)}), {}, 0.0);
    CHECK(flat.space->size() == 1);
    CHECK(flat.embedding.at("p2") == "p0");
}

TEST_CASE("duplicate candidates are absorbed by the first")
{
    auto s = integer_line(0, 4);
    Gauge g({coordinate_metric(s, CoordinateKind::euclidean)});
    auto sub = restrict_gauge(g, {0, 1, 3, 4});
    auto hole = deleted_point_profile(g, 2, sub);
    auto copy = hole;
    copy.label = "again";
    auto done = complete_space(sub, {hole, copy}, 0.0, 1.0);
    CHECK(done.adjoined == std::vector<std::string>{"x2"});
    CHECK(done.absorbed.at("again") == "x2");
}

TEST_CASE("invalid candidates are rejected naming the axiom")
{
    auto two = labeled(2);
    Gauge g({discrete_metric(two)});
    CauchyPoint zero{"zero", two, {{g.member(0).id(), {0.0, 0.0}}}};
    try {
        complete_space(g, {zero}, 0.0);
        FAIL("expected an input error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("triangle B") != std::string::npos);
    }
}

TEST_CASE("cauchy points from partial data")
{
    auto s = integer_line(0, 5);
    auto d = coordinate_metric(s, CoordinateKind::euclidean);
    Gauge g({d});
    auto zhat = represent_point(g, 2);

    PartialProfileMap whole{{d.id(), {{0, 1, 2, 3, 4, 5}, zhat.profile(d.id())}}};
    CHECK(cauchy_from_partial(g, whole, 0.0).profile(d.id()) == zhat.profile(d.id()));

    PartialProfileMap some{{d.id(), {{1, 2, 5}, {1, 0, 3}}}};
    CHECK(cauchy_from_partial(g, some, 0.0).profile(d.id()) == zhat.profile(d.id()));

    // Four points with hand-built data: zeta(x) = min_a (d(x,a) + xi(a)).
    auto four = labeled(4);
    auto t = table("t", four, {{0, 2, 3, 4}, {2, 0, 1, 2}, {3, 1, 0, 1}, {4, 2, 1, 0}});
    Gauge tg({t});
    PartialProfileMap toy{{"t", {{1, 3}, {0.5, 1.5}}}};
    auto z = cauchy_from_partial(tg, toy, 0.5).profile("t");
    const std::vector<double> xi_a{0.5, 1.5};
    const Subset dom{1, 3};
    for (PointIndex x = 0; x < 4; ++x) {
        double expected = std::min(t(x, dom[0]) + xi_a[0], t(x, dom[1]) + xi_a[1]);
        CHECK(z[x] == expected);
    }
    CHECK(z[0] == 2.5);
    CHECK(z[2] == 1.5);
    CHECK(validate_cauchy_point(tg, cauchy_from_partial(tg, toy, 0.5), 0.5).valid());

    PartialProfileMap bad_a{{"t", {{1, 3}, {0.0, 3.0}}}};
    CHECK_THROWS_AS(cauchy_from_partial(tg, bad_a, 1.0), HypothesisError);
    PartialProfileMap bad_b{{"t", {{0, 3}, {1.0, 1.0}}}};
    CHECK_THROWS_AS(cauchy_from_partial(tg, bad_b, 1.0), HypothesisError);
    PartialProfileMap not_located{{"t", {{1, 3}, {0.5, 1.5}}}};
    CHECK_THROWS_AS(cauchy_from_partial(tg, not_located, 0.1), HypothesisError);
    CHECK_THROWS_AS(cauchy_from_partial(tg, {}, 0.0), InputError);

    auto big = pointwise_max(d, discrete_metric(s, 2.0));
    auto mg = generate_gauge({d, big});
    REQUIRE(mg.size() == 2);
    PartialProfileMap split{{d.id(), {{0, 1}, {1, 0}}}, {big.id(), {{4}, {0}}}};
    CHECK_THROWS_AS(cauchy_from_partial(mg, split, 0.0), HypothesisError);
}
