#include <doctest.h>

#include <random>

#include "gaugekit/compactify.hpp"
#include "gaugekit/covers.hpp"
#include "gaugekit/error.hpp"
#include "../oracles.hpp"
#include "../support.hpp"

using namespace gaugekit;
using namespace testing_support;

namespace {

// Minimum number of strict eps-balls centered at sorted sample points on a
// line covering all of them: sweep from the left, centering each ball at
// the rightmost point still within reach of the first uncovered point.
std::size_t line_minimum_cover(const std::vector<double>& xs, double eps)
{
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t c = i;
        while (c + 1 < xs.size() && xs[c + 1] - xs[i] < eps) ++c;
        ++count;
        while (i < xs.size() && xs[i] - xs[c] < eps) ++i;
    }
    return count;
}

}  // namespace

TEST_CASE("greedy nets on discrete and indiscrete metrics")
{
    auto s = labeled(7);
    CHECK(greedy_net(discrete_metric(s), 0.5).centers.size() == 7);
    for (double eps : {0.1, 1.0, 10.0}) CHECK(greedy_net(indiscrete_metric(s), eps).centers == Subset{0});
    CHECK_THROWS_AS(greedy_net(discrete_metric(s), 0.0), InputError);
}

TEST_CASE("greedy net on the unit interval is within one of the minimum")
{
    std::vector<std::vector<double>> coords;
    std::vector<double> xs;
    for (int i = 0; i <= 100; ++i) {
        xs.push_back(i * 0.01);
        coords.push_back({i * 0.01});
    }
    auto d = coordinate_metric(with_coords(coords), CoordinateKind::euclidean);
    auto cert = greedy_net(d, 0.26);
    CHECK(verify_cover(d, cert).covered);
    const auto best = line_minimum_cover(xs, 0.26);
    CHECK(cert.centers.size() >= best);
    CHECK(cert.centers.size() <= best + 1);
}

TEST_CASE("line sweep agrees with exhaustive search on small samples")
{
    std::mt19937_64 rng(23);
    for (int round = 0; round < 20; ++round) {
        auto pts = oracle::random_points(rng, 12, 1, 3.0);
        std::sort(pts.begin(), pts.end());
        std::vector<double> xs;
        for (const auto& p : pts) xs.push_back(p[0]);
        CHECK(line_minimum_cover(xs, 0.7) == oracle::minimum_cover(oracle::euclidean(pts), 0.7));
    }
}

TEST_CASE("verify_cover")
{
    auto line = integer_line(0, 5);
    auto d = coordinate_metric(line, CoordinateKind::euclidean);
    CoverCertificate all{d.id(), 0.5, {0, 1, 2, 3, 4, 5}};
    CHECK(verify_cover(d, all).covered);
    CoverCertificate none{d.id(), 0.5, {}};
    auto r = verify_cover(d, none);
    CHECK_FALSE(r.covered);
    CHECK(*r.uncovered == 0);
    CoverCertificate sparse{d.id(), 1.5, {0, 3}};
    CHECK(*verify_cover(d, sparse).uncovered == 5);
    CHECK_THROWS_AS(verify_cover(d, CoverCertificate{"other", 1.0, {0}}), InputError);
}

TEST_CASE("greedy nets always verify and grow as eps shrinks")
{
    std::mt19937_64 rng(29);
    for (int round = 0; round < 20; ++round) {
        auto pts = oracle::random_points(rng, 30, 2, 5.0);
        auto d = coordinate_metric(with_coords(pts), CoordinateKind::euclidean);
        std::size_t previous = 0;
        for (double eps : {8.0, 4.0, 2.0, 1.0, 0.5}) {
            auto cert = greedy_net(d, eps);
            CHECK(verify_cover(d, cert).covered);
            CHECK(cert.centers.size() >= previous);
            previous = cert.centers.size();
        }
    }
}

TEST_CASE("minimum cover numbers respect dominance and small-scale truncation")
{
    std::mt19937_64 rng(31);
    for (int round = 0; round < 10; ++round) {
        auto pts = oracle::random_points(rng, 12, 2, 3.0);
        auto s = with_coords(pts);
        auto e = coordinate_metric(s, CoordinateKind::euclidean);
        auto t = coordinate_metric(s, CoordinateKind::taxicab);
        for (double eps : {1.5, 0.75, 0.5}) {
            CHECK(oracle::minimum_cover(t.rows(), eps) >= oracle::minimum_cover(e.rows(), eps));
            CHECK(oracle::minimum_cover(t.rows(), 2 * eps) >= oracle::minimum_cover(e.rows(), 2 * eps));
            CHECK(oracle::minimum_cover(truncate(e, 1.5).rows(), eps) == oracle::minimum_cover(e.rows(), eps));
            CHECK(greedy_net(truncate(e, 1.5), eps).centers.size() >= oracle::minimum_cover(e.rows(), eps));
        }
    }
}

TEST_CASE("cover profiles")
{
    auto six = labeled(6);
    Gauge pg({partition_metric(six, {{0, 1}, {2, 3}, {4, 5}})});
    ToleranceProfile tol(0.0, {0.5});
    auto p = cover_profile(pg, tol);
    CHECK(p.at(0, 0) == 3);

    auto ip = cover_profile(Gauge({indiscrete_metric(six)}), ToleranceProfile(0.0, {2.0, 0.5, 0.01}));
    for (std::size_t k = 0; k < 3; ++k) CHECK(ip.at(0, k) == 1);

    auto line = integer_line(-20, 20);
    Gauge g({coordinate_metric(line, CoordinateKind::euclidean)});
    Subset window;
    for (PointIndex i = 10; i <= 30; ++i) window.push_back(i);
    ExhaustionChain chain{line, {window}};
    auto og = one_point_gauge(g, chain);
    auto dk = og.member(one_point_member_id(g.member(0).id(), 1));
    auto restricted = restrict_to(g.member(0), window);
    for (double eps : {4.0, 2.0, 1.0, 0.5})
        CHECK(greedy_net(dk, eps).centers.size() <= greedy_net(restricted, eps).centers.size() + 1);
}
