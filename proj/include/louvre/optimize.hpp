#pragma once
// Ordering search for coupler-reusing schedules.  A parametric generator
// emits mirrored three-phase instruction tables; a translation-orbit census
// scores each candidate by total coupler length; the best candidate that
// passes full verification wins.
#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "louvre/metrics.hpp"
#include "louvre/schedule.hpp"
#include "louvre/tracker.hpp"
#include "louvre/verify.hpp"

namespace louvre {

namespace detail {

// Everything that pins one candidate table.  The split polynomial's terms are
// visited in `order`: X does order[0:h] in phase 1 and the rest in phase 3,
// Z mirrors both blocks in reverse with the same gate kinds.  Phase 2 runs the
// middle polynomial (permuted by `middle`, flagged terms as CXSWAP) in s+1
// chunks per class, separated by s joint SWAP layers on the shuttle term.
// When s is odd, phase 3 opens with a joint shuttle layer: the class whose
// mirrored block begins with the shuttle does its CNOT there (fused with the
// return swap or not), the other class swaps back without a CNOT.
struct OrderParams {
    int s = 0;
    std::vector<int> order;
    int h = 1;
    unsigned split_flags = 0;
    std::vector<int> middle;
    unsigned middle_flags = 0;
    int shuttle = 0;
    std::vector<int> chunk_x, chunk_z;  // s+1 middle chunk sizes per class
    bool opener_plain = false;
};

inline std::optional<Schedule> assemble_ordered(const CodeSpec& c, const OrderParams& p,
                                                Scheme tag) {
    SplitPlan sp = make_split(c);
    auto split_cell = [&](int idx, GateKind k) { return gate_cell(sp.split_poly, idx, k); };
    auto flag_kind = [](unsigned mask, int idx) {
        return (mask >> idx) & 1 ? GateKind::CXSWAP : GateKind::CNOT;
    };
    std::vector<Cell> xp1, xp3;
    for (int t = 0; t < int(p.order.size()); ++t)
        (t < p.h ? xp1 : xp3).push_back(split_cell(p.order[t], flag_kind(p.split_flags, p.order[t])));
    std::vector<Cell> zp1(xp3.rbegin(), xp3.rend()), zp3(xp1.rbegin(), xp1.rend());

    bool opener = p.s & 1;
    Cell x_open, z_open;
    if (opener) {
        GateKind k = p.opener_plain ? GateKind::CNOT : GateKind::CXSWAP;
        Cell swap_back = split_cell(p.shuttle, GateKind::SWAP);
        if (!zp3.empty() && zp3.front().term.idx == p.shuttle) {
            zp3.erase(zp3.begin());
            z_open = split_cell(p.shuttle, k);
            x_open = swap_back;
        } else if (!xp3.empty() && xp3.front().term.idx == p.shuttle) {
            xp3.erase(xp3.begin());
            x_open = split_cell(p.shuttle, k);
            z_open = swap_back;
        } else {
            return std::nullopt;  // shuttle not adjacent to phase 3
        }
    }

    std::vector<Cell> mid;
    for (int i : p.middle) mid.push_back(gate_cell(sp.middle_poly, i, flag_kind(p.middle_flags, i)));

    RowBuilder rb;
    rb.block(1, int(std::max(xp1.size(), zp1.size())), xp1, zp1, true);
    Cell shuttle_swap = split_cell(p.shuttle, GateKind::SWAP);
    int xo = 0, zo = 0;
    for (int w = 0; w <= p.s; ++w) {
        std::vector<Cell> cx(mid.begin() + xo, mid.begin() + xo + p.chunk_x[w]);
        std::vector<Cell> cz(mid.begin() + zo, mid.begin() + zo + p.chunk_z[w]);
        xo += p.chunk_x[w];
        zo += p.chunk_z[w];
        rb.block(2, int(std::max(cx.size(), cz.size())), cx, cz, false);
        if (w < p.s) rb.layer(2, shuttle_swap, shuttle_swap);
    }
    if (opener) rb.layer(3, x_open, z_open);
    rb.block(3, int(std::max(xp3.size(), zp3.size())), xp3, zp3, false);

    Schedule s;
    s.scheme = tag;
    s.phase = rb.phase;
    s.x_row = rb.x;
    s.z_row = rb.z;
    for (auto& [cls, row] : {std::pair<char, std::vector<Cell>*>{'X', &xp1}, {'Z', &zp1}})
        for (auto it = row->rbegin(); it != row->rend(); ++it)
            if (it->kind == GateKind::CXSWAP) s.init.push_back({cls, it->term});
    return s;
}

// Tie-break ordering among equal-score candidates: the Z row read first, then
// the X row, then the fictional-swap list.  Within a layer, idles sort before
// gates and plain CNOTs before routing kinds, so the least-routed
// earliest-reading table wins.
inline std::string tie_cell(const Cell& c) {
    if (c.idle) return "-";
    char kind = c.kind == GateKind::CNOT ? '.' : c.kind == GateKind::SWAP ? 's' : 'x';
    return std::string(1, c.term.poly) + std::to_string(c.term.idx + 1) + kind;
}

inline std::string tie_key(const Schedule& s) {
    std::string k = "Z:";
    for (const Cell& c : s.z_row) k += "|" + tie_cell(c);
    k += "\nX:";
    for (const Cell& c : s.x_row) k += "|" + tie_cell(c);
    k += "\n";
    for (const FictionalSwap& f : s.init)
        k += std::string(1, f.cls) + ":" + f.term.poly + std::to_string(f.term.idx + 1) + ",";
    return k;
}

}  // namespace detail

// ---- translation-orbit coupler census ---------------------------------------
//
// A schedule acts identically on every check, so every coupler it uses comes
// in a family of l*m torus translates and the full set is determined by one
// X/Z check pair.  The tracker state collapses to four displacement vectors
// (one per qubit role); a swap on a term exchanges the ancilla role's offset
// with the partner sublattice's.  Two same-layer gates contend for a site
// exactly when two touched representative sites share a (row, col) parity.

struct CouplerCensus {
    long long total_length = 0;
    int coupler_count = 0;
};

namespace detail {

struct TermGeom {
    GridVec anc_to_data;  // home displacement from ancilla to its partner
    int data_role;
};

struct CensusContext {
    const CodeSpec* code;
    GridPos anc_home[2];                // X, Z check (0,0) positions
    std::vector<TermGeom> geom[2][2];   // [class][poly]
};

inline CensusContext make_census_context(const CodeSpec& c) {
    CensusContext ctx;
    ctx.code = &c;
    for (int cls = 0; cls < 2; ++cls) {
        Role anc = cls ? Role::Z : Role::X;
        QubitId anc_id{0, 0, anc};
        ctx.anc_home[cls] = qubit_position(c, anc_id);
        for (int pi = 0; pi < 2; ++pi) {
            for (const Monomial& t : (pi ? c.B : c.A).terms) {
                QubitId d = support_qubit(c, anc, anc_id, pi ? 'B' : 'A', t);
                GridPos dp = qubit_position(c, d);
                ctx.geom[cls][pi].push_back(
                    {GridVec{dp.col - ctx.anc_home[cls].col, dp.row - ctx.anc_home[cls].row},
                     int(d.role)});
            }
        }
    }
    return ctx;
}

// nullopt = some layer has two gates contending for one site.
inline std::optional<CouplerCensus> run_census(const CensusContext& ctx, const Schedule& s) {
    const CodeSpec& c = *ctx.code;
    const int C = c.grid_cols(), R = c.grid_rows();
    GridVec off[4] = {};  // per-role displacement from home, indexed by Role
    const int anc_role[2] = {int(Role::X), int(Role::Z)};
    auto apply_swap = [&](int cls, const TermGeom& g) {
        GridVec oa = off[anc_role[cls]], od = off[g.data_role];
        off[anc_role[cls]] = g.anc_to_data + od;
        off[g.data_role] = oa - g.anc_to_data;
    };
    auto geom_of = [&](int cls, const TermRef& t) -> const TermGeom& {
        return ctx.geom[cls][t.poly == 'B'][std::size_t(t.idx)];
    };
    for (const FictionalSwap& f : s.init) apply_swap(f.cls == 'Z', geom_of(f.cls == 'Z', f.term));

    std::vector<std::uint64_t> keys;
    for (int layer = 0; layer < s.depth(); ++layer) {
        int par[4], np = 0;
        const TermGeom* swaps[2];
        int swap_cls[2], nsw = 0;
        for (int cls = 0; cls < 2; ++cls) {
            const Cell& cell = s.cell(cls ? 'Z' : 'X', layer);
            if (cell.idle) continue;
            const TermGeom& g = geom_of(cls, cell.term);
            GridPos ah = ctx.anc_home[cls];
            GridVec oa = off[anc_role[cls]], od = off[g.data_role];
            int ac = mod(ah.col + oa.dc, C), ar = mod(ah.row + oa.dr, R);
            int dc = mod(ah.col + g.anc_to_data.dc + od.dc, C);
            int dr = mod(ah.row + g.anc_to_data.dr + od.dr, R);
            int pa = (ar & 1) * 2 + (ac & 1), pd = (dr & 1) * 2 + (dc & 1);
            par[np++] = pa;
            par[np++] = pd;
            // every two-qubit gate occupies its coupler, pure swaps included
            int wc = mod(dc - ac, C), wr = mod(dr - ar, R);
            auto key = [](int p, int vc, int vr) {
                return (std::uint64_t(p) << 24) | (std::uint64_t(vc) << 12) | std::uint64_t(vr);
            };
            keys.push_back(std::min(key(pa, wc, wr), key(pd, mod(-wc, C), mod(-wr, R))));
            if (cell.kind != GateKind::CNOT) {
                swaps[nsw] = &g;
                swap_cls[nsw++] = cls;
            }
        }
        for (int i = 0; i < np; ++i)
            for (int j = i + 1; j < np; ++j)
                if (par[i] == par[j]) return std::nullopt;
        for (int i = 0; i < nsw; ++i) apply_swap(swap_cls[i], *swaps[i]);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    CouplerCensus out;
    for (std::uint64_t k : keys) {
        GridVec w{int((k >> 12) & 0xfff), int(k & 0xfff)};
        out.total_length += std::int64_t(torus_l1(c, w)) * c.units();
        out.coupler_count += c.units();
    }
    return out;
}

}  // namespace detail

inline std::optional<CouplerCensus> coupler_census(const CodeSpec& c, const Schedule& s) {
    return detail::run_census(detail::make_census_context(c), s);
}

// ---- exhaustive search -------------------------------------------------------

struct SearchLimits {
    std::int64_t budget_ms = 60'000;
    bool cxswap_only = false;  // force every interaction cell to CXSWAP
};

struct SearchOutcome {
    bool feasible = false;
    Schedule schedule;       // meaningful iff feasible
    MetricsReport metrics;   // of the winner
    long long candidates = 0;
    long long contended = 0;     // skipped for same-layer site contention
    int verify_rejects = 0;      // census-optimal candidates failing verification
    bool exhausted = true;       // full space enumerated within budget
    long long best_total = -1;   // best census total seen (gap report when infeasible)
    int best_count = 0;
};

// Minimizes total coupler length, then coupler count, then serialized table
// order; only candidates passing the full verifier are returned.  The
// enumeration is a fixed nested order, so results are deterministic whenever
// the space is exhausted within budget.
inline SearchOutcome optimize_search(const CodeSpec& c, Scheme scheme, SearchLimits lim = {}) {
    using clock = std::chrono::steady_clock;
    if (scheme != Scheme::L7R && scheme != Scheme::L8R)
        throw std::invalid_argument("ordering search supports schemes l7r and l8r only");
    const auto deadline = clock::now() + std::chrono::milliseconds(lim.budget_ms);
    const detail::CensusContext ctx = detail::make_census_context(c);
    const detail::SplitPlan sp = detail::make_split(c);
    const int ns = sp.n_split, nm = sp.n_middle;
    const Scheme tag = lim.cxswap_only ? Scheme::CxswapOnly : scheme;

    std::vector<unsigned> fmasks, gmasks;
    if (lim.cxswap_only) {
        fmasks = {(1u << ns) - 1};
        gmasks = {(1u << nm) - 1};
    } else {
        for (unsigned f = 0; f < (1u << ns); ++f) fmasks.push_back(f);
        // phase-2 routing layers must come in odd number for restorability
        for (unsigned g = 0; g < (1u << nm); ++g)
            if (std::popcount(g) & 1) gmasks.push_back(g);
    }
    const int s_lo = scheme == Scheme::L7R ? 0 : 1;
    const int s_hi = scheme == Scheme::L7R ? 0 : 2;
    std::vector<std::vector<std::vector<int>>> comps_by_s(std::size_t(s_hi) + 1);
    for (int s = s_lo; s <= s_hi; ++s) {
        std::vector<int> cur(std::size_t(s) + 1, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == s) {
                cur[std::size_t(pos)] = left;
                comps_by_s[std::size_t(s)].push_back(cur);
                return;
            }
            for (int take = 0; take <= left; ++take) {
                cur[std::size_t(pos)] = take;
                self(self, pos + 1, left - take);
            }
        };
        rec(rec, 0, nm);
    }

    struct Score {
        long long total;
        int count;
        bool operator<(const Score& o) const {
            return total != o.total ? total < o.total : count < o.count;
        }
        bool operator<=(const Score& o) const { return !(o < *this); }
        bool operator==(const Score& o) const { return total == o.total && count == o.count; }
    };

    SearchOutcome out;
    std::optional<Score> floor;  // score levels already proven unverifiable
    while (true) {
        std::optional<Score> best;
        std::map<std::string, detail::OrderParams> ties;
        bool ran_out = false;
        long long scanned = 0;

        auto visit = [&](const detail::OrderParams& p) -> bool {
            if ((scanned & 63) == 0 && clock::now() > deadline) {
                ran_out = true;
                return false;
            }
            ++scanned;
            std::optional<Schedule> sched = detail::assemble_ordered(c, p, tag);
            if (!sched) return true;
            std::optional<CouplerCensus> cen = detail::run_census(ctx, *sched);
            if (!cen) {
                ++out.contended;
                return true;
            }
            Score k{cen->total_length, cen->coupler_count};
            if (out.best_total < 0 || k < Score{out.best_total, out.best_count}) {
                out.best_total = k.total;
                out.best_count = k.count;
            }
            if (floor && k <= *floor) return true;
            if (!best || k < *best) {
                best = k;
                ties.clear();
            }
            if (k == *best) {
                ties.emplace(detail::tie_key(*sched), p);
                if (ties.size() > 1024) ties.erase(std::prev(ties.end()));
            }
            return true;
        };

        std::vector<int> order(static_cast<std::size_t>(ns));
        std::iota(order.begin(), order.end(), 0);
        bool abort = false;
        do {
            for (int h = 1; h < ns && !abort; ++h) {
                for (unsigned f : fmasks) {
                    std::vector<int> mid(static_cast<std::size_t>(nm));
                    std::iota(mid.begin(), mid.end(), 0);
                    do {
                        for (unsigned g : gmasks) {
                            for (int s = s_lo; s <= s_hi && !abort; ++s) {
                                detail::OrderParams p;
                                p.s = s;
                                p.order = order;
                                p.h = h;
                                p.split_flags = f;
                                p.middle = mid;
                                p.middle_flags = g;
                                if (s == 0) {
                                    p.chunk_x = p.chunk_z = {nm};
                                    abort = !visit(p);
                                    continue;
                                }
                                std::vector<int> shuttles;
                                if (s & 1) shuttles = {order[std::size_t(h) - 1], order[std::size_t(h)]};
                                else for (int r = 0; r < ns; ++r) shuttles.push_back(r);
                                for (int r : shuttles) {
                                    p.shuttle = r;
                                    for (const auto& cx : comps_by_s[std::size_t(s)]) {
                                        p.chunk_x = cx;
                                        for (const auto& cz : comps_by_s[std::size_t(s)]) {
                                            p.chunk_z = cz;
                                            for (int op = 0; op < ((s & 1) ? 2 : 1) && !abort; ++op) {
                                                p.opener_plain = op;
                                                abort = !visit(p);
                                            }
                                            if (abort) break;
                                        }
                                        if (abort) break;
                                    }
                                    if (abort) break;
                                }
                            }
                            if (abort) break;
                        }
                        if (abort) break;
                    } while (std::next_permutation(mid.begin(), mid.end()));
                    if (abort) break;
                }
            }
        } while (!abort && std::next_permutation(order.begin(), order.end()));

        out.candidates += scanned;
        if (ran_out) out.exhausted = false;
        if (!best) return out;
        for (const auto& [text, p] : ties) {
            Schedule sched = *detail::assemble_ordered(c, p, tag);
            if (verify_schedule(c, sched).verified) {
                out.feasible = true;
                out.schedule = sched;
                out.metrics = metrics_report(c, sched);
                return out;
            }
            ++out.verify_rejects;
        }
        if (ran_out) return out;
        floor = best;  // every candidate at this level failed; lift and rescan
    }
}

inline Schedule optimize_ordering(const CodeSpec& c, Scheme scheme, SearchLimits lim = {}) {
    SearchOutcome o = optimize_search(c, scheme, lim);
    if (!o.feasible)
        throw std::runtime_error("ordering search found no verifiable schedule within budget" +
                                 (o.best_total >= 0 ? " (best census total " +
                                                          std::to_string(o.best_total) + ")"
                                                    : std::string()));
    return o.schedule;
}

}  // namespace louvre
