#pragma once
// Adapting a schedule to a chip with absent (defective) qubit sites. Padding
// keeps the global motion intact by swapping through the absent qubits; the
// extra-coupler strategy pins the affected qubits in place and reports the
// additional edges the chip needs for their stranded interactions.

#include "louvre/metrics.hpp"
#include "louvre/schedule.hpp"
#include "louvre/tracker.hpp"

#include <set>
#include <string>
#include <vector>

namespace louvre {

inline std::string qubit_name(const QubitId& q) {
    return std::string(role_name(q.role)) + "(" + std::to_string(q.i) + "," +
           std::to_string(q.j) + ")";
}

// The deformed code must keep its surviving checks commuting: an absent check
// drops a whole row, while an absent data qubit is excluded from every
// surviving support and can flip an X/Z overlap parity from even to odd.
// Only pairs whose overlap contains an absent data qubit can flip, so those
// are the pairs examined.
inline void validate_absent(const CodeSpec& c, const std::vector<QubitId>& sites) {
    std::set<int> gone_data;
    std::vector<char> gone_x(c.units(), 0), gone_z(c.units(), 0);
    for (const QubitId& q : sites) {
        if (q.role == Role::X) gone_x[check_index(c, q.i, q.j)] = 1;
        else if (q.role == Role::Z) gone_z[check_index(c, q.i, q.j)] = 1;
        else gone_data.insert(data_index(c, q));
    }
    for (const QubitId& q : sites) {
        if (q.role == Role::X || q.role == Role::Z) continue;
        std::vector<QubitId> xs, zs;
        for (const Monomial& t : (q.role == Role::L ? c.A.terms : c.B.terms)) {
            QubitId u{mod(q.i + t.a, c.m), mod(q.j + t.b, c.l), Role::X};
            if (!gone_x[check_index(c, u.i, u.j)]) xs.push_back(u);
        }
        for (const Monomial& t : (q.role == Role::R ? c.A.terms : c.B.terms)) {
            QubitId u{mod(q.i - t.a, c.m), mod(q.j - t.b, c.l), Role::Z};
            if (!gone_z[check_index(c, u.i, u.j)]) zs.push_back(u);
        }
        for (const QubitId& xc : xs)
            for (const QubitId& zc : zs) {
                std::set<int> xsup;
                for (const QubitId& d : stabilizer_support(c, Role::X, xc.i, xc.j)) {
                    int di = data_index(c, d);
                    if (!gone_data.count(di)) xsup.insert(di);
                }
                int shared = 0;
                for (const QubitId& d : stabilizer_support(c, Role::Z, zc.i, zc.j))
                    if (xsup.count(data_index(c, d))) ++shared;
                if (shared % 2)
                    throw TrackError("absent data qubit " + qubit_name(q) + " leaves checks " +
                                     qubit_name(xc) + " and " + qubit_name(zc) +
                                     " anticommuting; mark the broken checks absent as well");
            }
    }
}

// Result of adapting a schedule: the instruction rows stay global, the absent
// spec rides along for expansion and verification, and the extra-coupler
// strategy lists the edges to add (empty for padding, whose swaps reuse the
// existing couplers).
struct AdaptedSchedule {
    Schedule schedule;
    AbsentSpec absent;
    std::vector<CouplerInfo> extra_couplers;
};

inline AdaptedSchedule adapt_absent_sites(const CodeSpec& c, const Schedule& s,
                                          const AbsentSpec& map) {
    AdaptedSchedule out{s, map, {}};
    if (map.sites.empty()) {
        out.absent.strategy = AbsentStrategy::None;
        return out;
    }
    if (map.strategy == AbsentStrategy::None)
        throw TrackError("absent sites need an adaptation strategy (padding or extra couplers)");
    validate_absent(c, map.sites);
    if (map.strategy == AbsentStrategy::ExtraCouplers) {
        std::set<Coupler> base = extract_couplers(expand_single_round(c, s));
        std::set<Coupler> got = extract_couplers(expand_single_round(c, s, map));
        for (const Coupler& e : got)
            if (!base.count(e)) {
                CouplerInfo info;
                info.site_a = e.a;
                info.site_b = e.b;
                info.pos_a = site_position(c, e.a);
                info.pos_b = site_position(c, e.b);
                info.length = coupler_length(c, e);
                out.extra_couplers.push_back(info);
            }
    }
    return out;
}

}  // namespace louvre
