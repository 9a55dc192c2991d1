#pragma once
// Schedule verification: a combinatorial commutation check on gate ordering
// plus an exact stabilizer-simulation oracle that replays rounds on grid
// sites, checks measurement determinism, matches every single-qubit fault
// against the check matrices, and confirms logical operators survive a round.
#include <string>
#include <vector>

#include "json.hpp"
#include "louvre/code.hpp"
#include "louvre/schedule.hpp"
#include "louvre/tableau.hpp"
#include "louvre/tracker.hpp"

namespace louvre {

// ---- combinatorial commutation check ---------------------------------------
// An X-check and a Z-check overlap on an even number of data qubits. The
// round measures both as intended only if, for every such pair, the number
// of shared qubits whose X-class gate fires before their Z-class gate is
// even; otherwise each ancilla's measured operator drags in the other
// ancilla and both outcomes turn random.

struct CommutationViolation {
    int x_check = 0, z_check = 0;
    int x_first = 0;       // shared data qubits hit by the X class first
    int shared = 0;        // total shared data qubits
    bool collision = false;  // some shared qubit is gated by both classes at once
};

struct CommutationResult {
    bool commutes = false;
    bool coverage = false;  // every term fired exactly once per class
    int pairs_checked = 0;
    std::vector<CommutationViolation> violations;  // capped at 16
};

inline CommutationResult verify_commutation(const CodeSpec& c, const Schedule& s) {
    CommutationResult res;
    res.coverage = s.covers_all_terms(c);
    if (!res.coverage) return res;

    // Layer at which each class's CNOT for a given term fires.
    auto fire_layer = [&](char cls, char poly, int idx) {
        for (int t = 0; t < s.depth(); ++t) {
            const Cell& cl = s.cell(cls, t);
            if (!cl.idle && cl.kind != GateKind::SWAP && cl.term.poly == poly && cl.term.idx == idx)
                return t;
        }
        return -1;
    };
    std::vector<int> tx_a(c.A.size()), tx_b(c.B.size()), tz_a(c.A.size()), tz_b(c.B.size());
    for (int i = 0; i < c.A.size(); ++i) tx_a[i] = fire_layer('X', 'A', i);
    for (int i = 0; i < c.B.size(); ++i) tx_b[i] = fire_layer('X', 'B', i);
    for (int i = 0; i < c.A.size(); ++i) tz_a[i] = fire_layer('Z', 'A', i);
    for (int i = 0; i < c.B.size(); ++i) tz_b[i] = fire_layer('Z', 'B', i);

    // Per data qubit: which checks touch it and when.
    struct Touch {
        int check, layer;
    };
    std::vector<std::vector<Touch>> by_x(c.n_data()), by_z(c.n_data());
    for (int j = 0; j < c.l; ++j)
        for (int i = 0; i < c.m; ++i) {
            int u = check_index(c, i, j);
            QubitId xa{i, j, Role::X}, za{i, j, Role::Z};
            for (int t = 0; t < c.A.size(); ++t) {
                by_x[data_index(c, support_qubit(c, Role::X, xa, 'A', c.A.terms[t]))].push_back(
                    {u, tx_a[t]});
                by_z[data_index(c, support_qubit(c, Role::Z, za, 'A', c.A.terms[t]))].push_back(
                    {u, tz_a[t]});
            }
            for (int t = 0; t < c.B.size(); ++t) {
                by_x[data_index(c, support_qubit(c, Role::X, xa, 'B', c.B.terms[t]))].push_back(
                    {u, tx_b[t]});
                by_z[data_index(c, support_qubit(c, Role::Z, za, 'B', c.B.terms[t]))].push_back(
                    {u, tz_b[t]});
            }
        }

    // Join on data qubits, accumulate per-(X-check, Z-check) counts.
    int n = c.units();
    std::vector<int> x_first(std::size_t(n) * n, 0), shared(std::size_t(n) * n, 0);
    std::vector<std::uint8_t> collide(std::size_t(n) * n, 0);
    for (int d = 0; d < c.n_data(); ++d)
        for (const Touch& tx : by_x[d])
            for (const Touch& tz : by_z[d]) {
                std::size_t key = std::size_t(tx.check) * n + tz.check;
                shared[key]++;
                if (tx.layer < tz.layer) x_first[key]++;
                else if (tx.layer == tz.layer) collide[key] = 1;
            }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            std::size_t key = std::size_t(u) * n + v;
            if (!shared[key]) continue;
            res.pairs_checked++;
            if (x_first[key] % 2 != 0 || collide[key]) {
                if (res.violations.size() < 16)
                    res.violations.push_back({u, v, x_first[key], shared[key], collide[key] != 0});
            }
        }
    res.commutes = res.violations.empty();
    return res;
}

// ---- tableau round replay ---------------------------------------------------

struct RecordedOp {
    enum class Type { ResetZ, ResetX, Gate, MeasureZ, MeasureX };
    Type type = Type::Gate;
    GateKind kind = GateKind::CNOT;  // gates only
    int a = -1, b = -1;              // sites: control/target for gates, site for the rest
    int check = -1;                  // measurements: check index
    char cls = 0;                    // measurements: 'X' or 'Z'
};

struct RoundRecord {
    std::vector<RecordedOp> ops;        // execution order
    std::vector<int> start_config;      // qubit -> site before the round
    std::vector<int> end_config;        // qubit -> site after the round
    std::vector<MeasureResult> outcomes;  // parallel to measurement ops
};

// Plays one round on the tableau: reset ancillas at their current sites,
// apply the expanded gate layers, measure ancillas where they ended up.
inline RoundRecord run_tableau_round(const CodeSpec& c, Tracker& tr, Tableau& tab,
                                     const Schedule& s) {
    RoundRecord rec;
    rec.start_config = tr.configuration();
    auto each_ancilla = [&](auto&& f) {
        for (char cls : {'X', 'Z'})
            for (int j = 0; j < c.l; ++j)
                for (int i = 0; i < c.m; ++i) {
                    int q = site_index(c, QubitId{i, j, cls == 'X' ? Role::X : Role::Z});
                    if (tr.is_absent(q)) continue;
                    f(cls, check_index(c, i, j), q);
                }
    };
    each_ancilla([&](char cls, int, int q) {
        int site = tr.site_of(q);
        if (cls == 'X') {
            tab.reset_x(site);
            rec.ops.push_back({RecordedOp::Type::ResetX, GateKind::CNOT, site, -1, -1, 0});
        } else {
            tab.reset(site);
            rec.ops.push_back({RecordedOp::Type::ResetZ, GateKind::CNOT, site, -1, -1, 0});
        }
    });
    ExpandedRound round = tr.expand(s);
    for (const LayerOps& layer : round.layers)
        for (const TwoQubitOp& op : layer.ops) {
            switch (op.kind) {
                case GateKind::CNOT: tab.cx(op.control_site, op.target_site); break;
                case GateKind::SWAP: tab.swap_qubits(op.control_site, op.target_site); break;
                case GateKind::CXSWAP: tab.cxswap(op.control_site, op.target_site); break;
            }
            rec.ops.push_back(
                {RecordedOp::Type::Gate, op.kind, op.control_site, op.target_site, -1, 0});
        }
    each_ancilla([&](char cls, int check, int q) {
        int site = tr.site_of(q);
        MeasureResult m = cls == 'X' ? tab.measure_x(site, 0) : tab.measure(site, 0);
        rec.ops.push_back({cls == 'X' ? RecordedOp::Type::MeasureX : RecordedOp::Type::MeasureZ,
                           GateKind::CNOT, site, -1, check, cls});
        rec.outcomes.push_back(m);
    });
    rec.end_config = tr.configuration();
    return rec;
}

// ---- Pauli-frame propagation through a recorded round ------------------------

struct Frame {
    std::vector<std::uint8_t> x, z;  // per site
    explicit Frame(int n_sites) : x(std::size_t(n_sites), 0), z(std::size_t(n_sites), 0) {}
};

struct FrameFlips {
    // Measurement flips in recording order, plus split by class for matching.
    std::vector<std::pair<char, int>> flipped;  // (class, check index)
};

inline FrameFlips propagate_frame(Frame& f, const std::vector<RecordedOp>& ops) {
    FrameFlips out;
    for (const RecordedOp& op : ops) {
        switch (op.type) {
            case RecordedOp::Type::ResetZ:
            case RecordedOp::Type::ResetX:
                f.x[std::size_t(op.a)] = 0;
                f.z[std::size_t(op.a)] = 0;
                break;
            case RecordedOp::Type::Gate: {
                std::size_t cidx = std::size_t(op.a), tidx = std::size_t(op.b);
                if (op.kind != GateKind::SWAP) {
                    f.x[tidx] ^= f.x[cidx];
                    f.z[cidx] ^= f.z[tidx];
                }
                if (op.kind != GateKind::CNOT) {
                    std::swap(f.x[cidx], f.x[tidx]);
                    std::swap(f.z[cidx], f.z[tidx]);
                }
                break;
            }
            case RecordedOp::Type::MeasureZ:
                if (f.x[std::size_t(op.a)]) out.flipped.push_back({'Z', op.check});
                break;
            case RecordedOp::Type::MeasureX:
                if (f.z[std::size_t(op.a)]) out.flipped.push_back({'X', op.check});
                break;
        }
    }
    return out;
}

// ---- verification report ----------------------------------------------------

struct StageResult {
    bool ran = false;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::string code_name;
    std::string scheme;
    bool reversed_rounds = false;  // rounds alternate forward/reversed
    CommutationResult commutation;
    StageResult determinism, dictionary, logicals, restoration;
    bool verified = false;
};

namespace detail {

inline void stage_fail(StageResult& st, const std::string& msg) {
    st.passed = false;
    if (st.detail.empty()) st.detail = msg;
}

// Greedy check that a single round leaves a data-supported Pauli frame intact:
// no measurement flips, no residue on ancillas, same data support afterwards.
inline bool frame_survives(const CodeSpec& c, const RoundRecord& rec,
                           const std::vector<std::uint8_t>& support, bool x_type,
                           std::string& why) {
    Frame f(c.n_total());
    for (int q = 0; q < c.n_total(); ++q)
        if (support[std::size_t(q)]) {
            int site = rec.start_config[std::size_t(q)];
            (x_type ? f.x : f.z)[std::size_t(site)] = 1;
        }
    FrameFlips flips = propagate_frame(f, rec.ops);
    if (!flips.flipped.empty()) {
        why = "operator flipped " + std::to_string(flips.flipped.size()) + " measurement(s)";
        return false;
    }
    for (int q = 0; q < c.n_total(); ++q) {
        int site = rec.end_config[std::size_t(q)];
        std::uint8_t want = support[std::size_t(q)];
        if ((x_type ? f.x : f.z)[std::size_t(site)] != want ||
            (x_type ? f.z : f.x)[std::size_t(site)] != 0) {
            QubitId id = qubit_at_canonical_site(c, q);
            why = std::string("support changed at ") + role_name(id.role) + "(" +
                  std::to_string(id.i) + "," + std::to_string(id.j) + ")";
            return false;
        }
    }
    return true;
}

}  // namespace detail

// Full verification. Commutation, fault dictionary and logical preservation
// run only without absent sites (they compare against the unmodified check
// matrices); determinism and restoration run always.
inline VerificationReport verify_schedule(const CodeSpec& c, const Schedule& s,
                                          const AbsentSpec& absent = {}) {
    using detail::stage_fail;
    VerificationReport rep;
    rep.code_name = c.name;
    rep.scheme = scheme_name(s.scheme);
    bool plain = absent.strategy == AbsentStrategy::None;

    if (plain) rep.commutation = verify_commutation(c, s);

    Tracker tr(c, absent);
    tr.compute_static(s);
    tr.apply_fictional(s.init);
    std::vector<int> home = tr.configuration();
    Tableau tab(c.n_total());

    // Round 1 prepares the code state: outcomes may be random (forced to +1).
    run_tableau_round(c, tr, tab, s);
    rep.reversed_rounds = !tr.configuration_is(home);
    Schedule second = rep.reversed_rounds ? reversed_round(s) : s;

    RoundRecord r2 = run_tableau_round(c, tr, tab, second);

    rep.restoration.ran = true;
    rep.restoration.passed = tr.configuration_is(home);
    if (!rep.restoration.passed)
        rep.restoration.detail = "configuration not restored after a round pair";

    RoundRecord r3 = run_tableau_round(c, tr, tab, s);

    rep.determinism.ran = true;
    rep.determinism.passed = true;
    auto check_round = [&](const RoundRecord& rec, const char* label) {
        int random = 0, flipped = 0;
        for (const MeasureResult& m : rec.outcomes) {
            if (!m.deterministic) ++random;
            else if (m.outcome != 0) ++flipped;
        }
        if (random || flipped)
            stage_fail(rep.determinism, std::string(label) + ": " + std::to_string(random) +
                                            " random and " + std::to_string(flipped) +
                                            " flipped outcomes");
    };
    check_round(r2, "round 2");
    check_round(r3, "round 3");

    if (plain) {
        CheckMatrices h = check_matrices(c);

        // Single-fault dictionary: an X (Z) error on a data qubit must flip
        // exactly the Z-checks (X-checks) whose stabilizer contains it.
        rep.dictionary.ran = true;
        rep.dictionary.passed = true;
        for (int q = 0; q < c.n_total() && rep.dictionary.passed; ++q) {
            QubitId id = qubit_at_canonical_site(c, q);
            if (id.role != Role::L && id.role != Role::R) continue;
            int col = data_index(c, id);
            for (bool x_fault : {true, false}) {
                Frame f(c.n_total());
                int site = r2.start_config[std::size_t(q)];
                (x_fault ? f.x : f.z)[std::size_t(site)] = 1;
                FrameFlips flips = propagate_frame(f, r2.ops);
                const BitMatrix& hm = x_fault ? h.Hz : h.Hx;
                char want_cls = x_fault ? 'Z' : 'X';
                std::vector<std::uint8_t> got(std::size_t(c.units()), 0);
                bool wrong_class = false;
                for (auto& [cls, check] : flips.flipped) {
                    if (cls != want_cls) wrong_class = true;
                    else got[std::size_t(check)] ^= 1;
                }
                bool match = !wrong_class;
                for (int v = 0; v < c.units() && match; ++v)
                    if (got[std::size_t(v)] != (hm.get(v, col) ? 1 : 0)) match = false;
                if (!match) {
                    stage_fail(rep.dictionary,
                               std::string(x_fault ? "X" : "Z") + " fault on " +
                                   role_name(id.role) + "(" + std::to_string(id.i) + "," +
                                   std::to_string(id.j) + ") maps to the wrong syndrome");
                    break;
                }
            }
        }

        // Logical preservation: every operator commuting with one check side
        // (stabilizers included) must pass through a round untouched.
        rep.logicals.ran = true;
        rep.logicals.passed = true;
        auto run_side = [&](const BitMatrix& hm, bool x_type, const char* label) {
            for (const std::vector<std::uint64_t>& packed : hm.null_space_basis()) {
                std::vector<std::uint8_t> support(std::size_t(c.n_total()), 0);
                for (int d = 0; d < c.n_data(); ++d)
                    if ((packed[std::size_t(d >> 6)] >> (d & 63)) & 1) {
                        // Data column d back to its canonical qubit index.
                        int i = d % c.m, j = (d % (c.l * c.m)) / c.m;
                        Role r = d < c.l * c.m ? Role::R : Role::L;
                        support[std::size_t(site_index(c, QubitId{i, j, r}))] = 1;
                    }
                std::string why;
                if (!detail::frame_survives(c, r2, support, x_type, why)) {
                    stage_fail(rep.logicals, std::string(label) + " operator not preserved: " + why);
                    return;
                }
            }
        };
        run_side(h.Hz, true, "X-type");
        if (rep.logicals.passed) run_side(h.Hx, false, "Z-type");
    }

    rep.verified = rep.determinism.passed && rep.restoration.passed &&
                   (!plain || (rep.commutation.commutes && rep.dictionary.passed &&
                               rep.logicals.passed));
    return rep;
}

// Position bookkeeping only: does a round (or a forward+reversed pair)
// restore the configuration reached after fictional initialization?
inline bool verify_restoration(const CodeSpec& c, const Schedule& s) {
    Tracker tr(c);
    tr.apply_fictional(s.init);
    std::vector<int> home = tr.configuration();
    tr.expand(s);
    if (tr.configuration_is(home)) return true;
    tr.expand(reversed_round(s));
    return tr.configuration_is(home);
}

// ---- serialization ----------------------------------------------------------

inline nlohmann::json to_json(const StageResult& st) {
    return {{"ran", st.ran}, {"passed", st.passed}, {"detail", st.detail}};
}

inline nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json viol = nlohmann::json::array();
    for (const CommutationViolation& v : rep.commutation.violations)
        viol.push_back({{"x_check", v.x_check},
                        {"z_check", v.z_check},
                        {"x_first", v.x_first},
                        {"shared", v.shared},
                        {"collision", v.collision}});
    return {{"schema", 1},
            {"code", rep.code_name},
            {"scheme", rep.scheme},
            {"reversed_rounds", rep.reversed_rounds},
            {"commutation",
             {{"commutes", rep.commutation.commutes},
              {"coverage", rep.commutation.coverage},
              {"pairs_checked", rep.commutation.pairs_checked},
              {"violations", viol}}},
            {"stages",
             {{"determinism", to_json(rep.determinism)},
              {"dictionary", to_json(rep.dictionary)},
              {"logicals", to_json(rep.logicals)},
              {"restoration", to_json(rep.restoration)}}},
            {"verified", rep.verified}};
}

}  // namespace louvre
