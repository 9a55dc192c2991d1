#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "louvre/router.hpp"
#include "louvre/schedule.hpp"
#include "test_support.hpp"

using namespace louvre;

namespace {

CouplerGraph scheme_graph(const CodeSpec& c, Scheme s) {
    Schedule sched = s == Scheme::Regular  ? build_regular(c)
                     : s == Scheme::L7     ? build_louvre7(c)
                                           : build_louvre8(c);
    return extract_coupler_graph(c, sched);
}

}  // namespace

TEST_CASE("a nearest-neighbor code routes entirely on the base tier") {
    // the grid-embedded toric code whose eight unit couplers all have length 1
    CodeSpec c = testsup::make_code("toricnn", 3, 3, "1+y", "1+x");
    CouplerGraph g = scheme_graph(c, Scheme::Regular);
    Placement p = place_first_tier(g);
    CHECK(p.deferred.empty());
    CHECK(p.direct.size() == g.couplers.size());

    RoutingResult r = route_multitier(g, 1);
    CHECK(r.report.tiers == 1);
    CHECK(r.report.avg_length == 0);
    CHECK(r.report.bumps_per_coupler == 0);
    CHECK(r.report.tsvs_per_coupler == 0);
    CHECK(r.paths.empty());
    CHECK(validate_routing(g, r.paths));
}

TEST_CASE("placement splits couplers exactly by unit length") {
    CouplerGraph g = scheme_graph(testsup::bb72(), Scheme::L8);
    Placement p = place_first_tier(g);
    std::size_t short_count = 0;
    for (const CouplerInfo& e : g.couplers) short_count += e.is_short();
    CHECK(p.direct.size() == short_count);
    CHECK(p.deferred.size() == g.couplers.size() - short_count);
    for (int e : p.direct) CHECK(g.couplers[std::size_t(e)].length == 1);
    for (int e : p.deferred) CHECK(g.couplers[std::size_t(e)].length > 1);
}

TEST_CASE("every long coupler routes and validates for the flagship codes") {
    for (const CodeSpec& c : {testsup::bb18(), testsup::bb72()}) {
        CAPTURE(c.name);
        int tiers_regular = 0, tiers_l7 = 0, tiers_l8 = 0;
        for (Scheme s : {Scheme::Regular, Scheme::L7, Scheme::L8}) {
            CouplerGraph g = scheme_graph(c, s);
            RoutingResult r = route_multitier(g, 1);
            CHECK(r.paths.size() == r.placement.deferred.size());
            CHECK(validate_routing(g, r.paths));
            CHECK(r.report.tiers >= 2);  // all these schemes keep long couplers
            CHECK(r.report.avg_length > 0);
            CHECK(r.report.tsvs_per_coupler > 0);
            (s == Scheme::Regular ? tiers_regular : s == Scheme::L7 ? tiers_l7 : tiers_l8) =
                r.report.tiers;
        }
        CHECK(tiers_l7 <= tiers_regular);
        CHECK(tiers_l8 <= tiers_l7 + 1);
    }
}

TEST_CASE("tier benefit is monotone across the larger codes") {
    for (const CodeSpec& c : {testsup::gb7289(), testsup::gb96(), testsup::gb128()}) {
        CAPTURE(c.name);
        int tiers[3] = {0, 0, 0};
        Scheme order[3] = {Scheme::Regular, Scheme::L7, Scheme::L8};
        for (int i = 0; i < 3; ++i) {
            CouplerGraph g = scheme_graph(c, order[i]);
            RoutingResult r = route_multitier(g, 1);
            CHECK(validate_routing(g, r.paths));
            tiers[i] = r.report.tiers;
        }
        CHECK(tiers[1] <= tiers[0]);
        CHECK(tiers[2] <= tiers[1] + 1);
    }
}

TEST_CASE("routing is reproducible for a fixed seed") {
    CouplerGraph g = scheme_graph(testsup::bb72(), Scheme::L7);
    RoutingResult a = route_multitier(g, 42);
    RoutingResult b = route_multitier(g, 42);
    CHECK(routing_dump(g, a) == routing_dump(g, b));
    CHECK(a.report.tiers == b.report.tiers);
    CHECK(a.report.avg_length == b.report.avg_length);
    CHECK(a.report.bumps_per_coupler == b.report.bumps_per_coupler);
    CHECK(a.report.tsvs_per_coupler == b.report.tsvs_per_coupler);
}

TEST_CASE("tsv shares add up to the reported total") {
    CouplerGraph g = scheme_graph(testsup::bb18(), Scheme::Regular);
    RoutingResult r = route_multitier(g, 9);
    double total = 0;
    for (const RoutedPath& p : r.paths) {
        CHECK(p.tsv_share >= 0);
        CHECK(p.bumps <= 10);
        total += p.tsv_share;
    }
    CHECK(std::abs(total - r.report.tsvs_per_coupler * double(r.paths.size())) < 1e-9);
}

TEST_CASE("overlapping paths fail validation") {
    CodeSpec c = testsup::toric33();
    int a0 = site_index(c, QubitId{0, 0, Role::X}), a1 = site_index(c, QubitId{2, 0, Role::X});
    int b0 = site_index(c, QubitId{0, 1, Role::X}), b1 = site_index(c, QubitId{2, 1, Role::X});
    CouplerGraph g = couplers_to_graph(c, {{a0, a1}, {b0, b1}}, c.n_total());
    REQUIRE(place_first_tier(g).deferred.size() == 2);

    RoutedPath p1;
    p1.coupler = 0;
    p1.tier = 2;
    p1.cells = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {4, 0, 0}};
    RoutedPath p2;
    p2.coupler = 1;
    p2.tier = 2;
    p2.cells = {{0, 2, 0}, {1, 2, 0}, {2, 2, 0}, {2, 1, 0}, {2, 0, 0},
                {3, 0, 0}, {3, 1, 0}, {3, 2, 0}, {4, 2, 0}};
    CHECK(!validate_routing(g, {p1, p2}));

    // rerouting the second path around the first makes the pair legal
    p2.cells = {{0, 2, 0}, {1, 2, 0}, {2, 2, 0}, {3, 2, 0}, {4, 2, 0}};
    CHECK(validate_routing(g, {p1, p2}));
}

TEST_CASE("exceeding the layer-switch cap fails validation") {
    CodeSpec c = testsup::toric33();
    int a0 = site_index(c, QubitId{0, 0, Role::X}), a1 = site_index(c, QubitId{2, 0, Role::X});
    CouplerGraph g = couplers_to_graph(c, {{a0, a1}}, c.n_total());

    RoutedPath p;
    p.coupler = 0;
    p.tier = 2;
    p.cells = {{0, 0, 0}};
    for (int i = 0; i < 12; ++i) p.cells.push_back({0, 0, (i + 1) % 2});
    for (int col : {1, 2, 3, 4}) p.cells.push_back({col, 0, 0});
    p.bumps = 12;
    CHECK(!validate_routing(g, {p}));              // cap is ten switches
    CHECK(!validate_routing(g, {{0, 2, p.cells, 2, 0.0}}));  // and counts must match
}

TEST_CASE("paths must cover exactly the long couplers") {
    CouplerGraph g = scheme_graph(testsup::bb18(), Scheme::L7);
    RoutingResult r = route_multitier(g, 1);
    REQUIRE(validate_routing(g, r.paths));

    std::vector<RoutedPath> missing(r.paths.begin(), r.paths.end() - 1);
    CHECK(!validate_routing(g, missing));

    std::vector<RoutedPath> doubled = r.paths;
    doubled.push_back(r.paths.front());
    CHECK(!validate_routing(g, doubled));
}
