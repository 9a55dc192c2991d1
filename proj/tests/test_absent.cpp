#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "louvre/absent.hpp"
#include "louvre/verify.hpp"
#include "test_support.hpp"

using namespace louvre;

namespace {

// One absent L data qubit plus the three X-checks that contained it: marking
// only the data qubit absent leaves weight-5 truncated checks that no longer
// commute, so the checks have to go with it.
std::vector<QubitId> bb18_hole() {
    return {{0, 0, Role::L}, {0, 0, Role::X}, {0, 1, Role::X}, {1, 1, Role::X}};
}

}  // namespace

TEST_CASE("an absent data qubit with live checks is rejected by name") {
    CodeSpec c = testsup::bb18();
    AbsentSpec bad{{{0, 0, Role::L}}, AbsentStrategy::Padding};
    CHECK_THROWS_AS(adapt_absent_sites(c, build_louvre7(c), bad), TrackError);
    try {
        adapt_absent_sites(c, build_louvre7(c), bad);
    } catch (const TrackError& e) {
        std::string msg = e.what();
        CHECK(msg.find("L(0,0)") != std::string::npos);
        CHECK(msg.find("anticommuting") != std::string::npos);
    }
    // Dropping the broken checks as well restores a commuting deformed code.
    CHECK_NOTHROW(validate_absent(c, bb18_hole()));
}

TEST_CASE("empty absent map leaves the schedule unchanged") {
    CodeSpec c = testsup::bb18();
    Schedule s = build_louvre7(c);
    AdaptedSchedule out = adapt_absent_sites(c, s, {});
    CHECK(to_instruction_table(out.schedule) == to_instruction_table(s));
    CHECK(out.absent.strategy == AbsentStrategy::None);
    CHECK(out.extra_couplers.empty());
}

TEST_CASE("absent sites need a strategy") {
    CodeSpec c = testsup::bb18();
    AbsentSpec spec{bb18_hole(), AbsentStrategy::None};
    CHECK_THROWS_AS(adapt_absent_sites(c, build_louvre7(c), spec), TrackError);
}

TEST_CASE("both strategies keep every scheme verifiable") {
    CodeSpec c = testsup::bb18();
    for (AbsentStrategy strat : {AbsentStrategy::Padding, AbsentStrategy::ExtraCouplers}) {
        AbsentSpec spec{bb18_hole(), strat};
        for (const Schedule& s : {build_regular(c), build_louvre7(c), build_louvre8(c)}) {
            VerificationReport rep = verify_schedule(c, s, spec);
            INFO(scheme_name(s.scheme), " strategy=", int(strat));
            CHECK(rep.verified);
            CHECK(rep.determinism.ran);
            CHECK(rep.determinism.passed);
            CHECK(rep.restoration.ran);
            CHECK(rep.restoration.passed);
        }
    }
}

TEST_CASE("padding inserts one explicit swap at the absent data site") {
    CodeSpec c = testsup::bb18();
    AbsentSpec spec{bb18_hole(), AbsentStrategy::Padding};
    ExpandedRound round = expand_single_round(c, build_louvre7(c), spec);
    int l_site = site_index(c, QubitId{0, 0, Role::L});

    // Layer 5 is the joint routing layer of the depth-7 schedule.
    const LayerOps& routing = round.layers[4];
    int pure = 0, at_hole = 0;
    for (const TwoQubitOp& op : routing.ops)
        if (op.kind == GateKind::SWAP) {
            ++pure;
            if (op.control_site == l_site || op.target_site == l_site) ++at_hole;
        }
    CHECK(round.layers.size() == 7);
    CHECK(routing.ops.size() == std::size_t(2 * c.units()));
    CHECK(pure == 4);  // one per absent qubit: each partner still rides along
    CHECK(at_hole == 1);

    // Phase 3: the displaced Z-ancilla gates through the padding site's couplers.
    int z_qubit = site_index(c, QubitId{0, 0, Role::Z});
    int seen = 0;
    for (std::size_t li = 5; li < round.layers.size(); ++li)
        for (const TwoQubitOp& op : round.layers[li].ops)
            if (op.control_qubit == z_qubit || op.target_qubit == z_qubit) {
                int at = op.control_qubit == z_qubit ? op.control_site : op.target_site;
                CHECK(at == l_site);
                ++seen;
            }
    CHECK(seen == 2);
}

TEST_CASE("the static closure pins the hole's swap partners") {
    CodeSpec c = testsup::bb18();
    Tracker tr(c, {bb18_hole(), AbsentStrategy::ExtraCouplers});
    tr.compute_static(build_louvre7(c));
    std::set<std::string> want{"R(0,0)", "Z(0,0)", "R(0,1)", "R(1,1)"}, got;
    for (int q = 0; q < c.n_total(); ++q)
        if (tr.is_static(q)) got.insert(qubit_name(qubit_at_canonical_site(c, q)));
    CHECK(got == want);
}

TEST_CASE("the static strategy adds exactly two couplers at the stranded ancilla") {
    CodeSpec c = testsup::bb18();
    AdaptedSchedule out =
        adapt_absent_sites(c, build_louvre7(c), {bb18_hole(), AbsentStrategy::ExtraCouplers});

    int z_site = site_index(c, QubitId{0, 0, Role::Z});
    std::set<int> static_sites{site_index(c, QubitId{0, 0, Role::R}),
                               site_index(c, QubitId{0, 1, Role::R}),
                               site_index(c, QubitId{1, 1, Role::R}), z_site};
    std::vector<const CouplerInfo*> at_anc;
    for (const CouplerInfo& e : out.extra_couplers) {
        // every added edge serves some pinned qubit
        CHECK((static_sites.count(e.site_a) || static_sites.count(e.site_b)));
        if (e.site_a == z_site || e.site_b == z_site) at_anc.push_back(&e);
    }
    REQUIRE(at_anc.size() == 2);
    std::set<int> partners;
    for (const CouplerInfo* e : at_anc) {
        CHECK(e->length == 1);
        partners.insert(e->site_a == z_site ? e->site_b : e->site_a);
    }
    // the ancilla's two home-staying partners from the tail of the round
    CHECK(partners == std::set<int>{site_index(c, QubitId{0, 0, Role::R}),
                                    site_index(c, QubitId{0, 1, Role::R})});

    AdaptedSchedule pad =
        adapt_absent_sites(c, build_louvre7(c), {bb18_hole(), AbsentStrategy::Padding});
    CHECK(pad.extra_couplers.empty());
}

TEST_CASE("absent ancillas never gate") {
    CodeSpec c = testsup::bb18();
    std::set<int> absent_anc{site_index(c, QubitId{0, 0, Role::X}),
                             site_index(c, QubitId{0, 1, Role::X}),
                             site_index(c, QubitId{1, 1, Role::X})};
    for (AbsentStrategy strat : {AbsentStrategy::Padding, AbsentStrategy::ExtraCouplers}) {
        ExpandedRound round = expand_single_round(c, build_louvre7(c), {bb18_hole(), strat});
        for (const LayerOps& layer : round.layers)
            for (const TwoQubitOp& op : layer.ops) {
                bool touches = absent_anc.count(op.control_qubit) || absent_anc.count(op.target_qubit);
                if (!touches) continue;
                // padding qubits may ride swaps but never join a CNOT
                CHECK(op.kind == GateKind::SWAP);
                CHECK(strat == AbsentStrategy::Padding);
            }
    }
}
