#pragma once
// Configuration tracking: expands a schedule into per-layer two-qubit gates on
// grid sites, following every qubit's position through routing swaps. Handles
// fictional initialization swaps, reversed rounds, and absent-site adaptation
// (padding qubits or static qubits with extra couplers).
#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "louvre/code.hpp"
#include "louvre/schedule.hpp"

namespace louvre {

struct TrackError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AbsentStrategy { None, Padding, ExtraCouplers };

struct AbsentSpec {
    std::vector<QubitId> sites;
    AbsentStrategy strategy = AbsentStrategy::None;
};

// Per-sublattice grid offsets relative to the canonical configuration.
struct Offsets {
    GridVec x, r, l, z;
    bool operator==(const Offsets& o) const { return x == o.x && r == o.r && l == o.l && z == o.z; }
};

struct TwoQubitOp {
    int control_site = 0, target_site = 0;    // grid sites at gate time
    int control_qubit = 0, target_qubit = 0;  // canonical qubit indices
    GateKind kind = GateKind::CNOT;           // effective kind after adaptation
    char cls = 'X';
    TermRef term;
};

struct LayerOps {
    int layer = 0;
    std::vector<TwoQubitOp> ops;
};

struct ExpandedRound {
    std::vector<LayerOps> layers;
    Offsets offsets_before;
    std::vector<Offsets> offsets_after;  // per layer; only filled without absent sites
};

// Reduce each offset component to its smallest absolute representative.
inline GridVec centered_vec(const CodeSpec& c, GridVec v) {
    auto center = [](int d, int n) {
        int r = mod(d, n);
        return r > n / 2 ? r - n : r;
    };
    return {center(v.dc, c.grid_cols()), center(v.dr, c.grid_rows())};
}

class Tracker {
public:
    explicit Tracker(const CodeSpec& c, const AbsentSpec& absent = {})
        : code_(c), strategy_(absent.strategy), absent_(c.n_total(), false),
          static_(c.n_total(), false), site_of_(c.n_total()), qubit_at_(c.n_total()) {
        for (int q = 0; q < c.n_total(); ++q) site_of_[q] = qubit_at_[q] = q;
        for (const QubitId& id : absent.sites) absent_[site_index(c, id)] = true;
        if (strategy_ == AbsentStrategy::None)
            for (bool a : absent_)
                if (a) throw TrackError("absent sites given without an adaptation strategy");
    }

    const CodeSpec& code() const { return code_; }
    int site_of(int qubit) const { return site_of_[qubit]; }
    int qubit_at(int site) const { return qubit_at_[site]; }
    bool is_absent(int qubit) const { return absent_[qubit]; }
    bool is_static(int qubit) const { return static_[qubit]; }
    // Padding keeps every sublattice moving in lockstep; static qubits do not.
    bool uniform() const { return strategy_ != AbsentStrategy::ExtraCouplers; }

    std::vector<int> configuration() const { return site_of_; }
    bool configuration_is(const std::vector<int>& snapshot) const { return site_of_ == snapshot; }

    // The X/Z ancilla and data qubit of one gate cell in basic unit (i, j).
    std::pair<int, int> cell_pair(char cls, const TermRef& t, int i, int j) const {
        Role anc_role = cls == 'X' ? Role::X : Role::Z;
        QubitId anc{i, j, anc_role};
        const Poly& poly = t.poly == 'A' ? code_.A : code_.B;
        QubitId data = support_qubit(code_, anc_role, anc, t.poly, poly.terms[t.idx]);
        return {site_index(code_, anc), site_index(code_, data)};
    }

    // Marks qubits that can no longer move: any qubit whose swap partner in
    // some routing event (fictional or scheduled) is absent or already static.
    void compute_static(const Schedule& s) {
        if (strategy_ != AbsentStrategy::ExtraCouplers) return;
        std::vector<std::pair<char, TermRef>> events;
        for (const FictionalSwap& f : s.init) events.push_back({f.cls, f.term});
        for (int t = 0; t < s.depth(); ++t)
            for (char cls : {'X', 'Z'}) {
                const Cell& cl = s.cell(cls, t);
                if (!cl.idle && cl.kind != GateKind::CNOT) events.push_back({cls, cl.term});
            }
        auto blocked = [&](int q) { return absent_[q] || static_[q]; };
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [cls, term] : events)
                for (int j = 0; j < code_.l; ++j)
                    for (int i = 0; i < code_.m; ++i) {
                        auto [anc, data] = cell_pair(cls, term, i, j);
                        if (blocked(anc) && !blocked(data)) { static_[data] = true; changed = true; }
                        if (blocked(data) && !blocked(anc)) { static_[anc] = true; changed = true; }
                    }
        }
    }

    // Applies fictional swaps (position bookkeeping only, no gates emitted).
    void apply_fictional(const std::vector<FictionalSwap>& init) {
        for (const FictionalSwap& f : init)
            for (int j = 0; j < code_.l; ++j)
                for (int i = 0; i < code_.m; ++i) {
                    auto [anc, data] = cell_pair(f.cls, f.term, i, j);
                    if (!swap_allowed(anc, data)) continue;
                    swap_qubits(anc, data);
                }
    }

    // Expands one round, advancing the tracked configuration.
    ExpandedRound expand(const Schedule& s) {
        ExpandedRound round;
        if (uniform()) round.offsets_before = offsets();
        for (int t = 0; t < s.depth(); ++t) {
            LayerOps layer;
            layer.layer = t;
            std::vector<bool> touched(code_.n_total(), false);
            for (char cls : {'X', 'Z'}) {
                const Cell& cl = s.cell(cls, t);
                if (cl.idle) continue;
                emit_cell(cls, cl, t, layer.ops, touched);
            }
            round.layers.push_back(std::move(layer));
            if (uniform()) round.offsets_after.push_back(offsets());
        }
        return round;
    }

    // Current per-sublattice offsets; requires a uniform configuration.
    Offsets offsets() const {
        if (!uniform()) return {};
        Offsets o{delta(Role::X), delta(Role::R), delta(Role::L), delta(Role::Z)};
        for (int q = 0; q < code_.n_total(); ++q) {
            QubitId id = qubit_at_canonical_site(code_, q);
            GridVec expect;
            switch (id.role) {
                case Role::X: expect = o.x; break;
                case Role::R: expect = o.r; break;
                case Role::L: expect = o.l; break;
                case Role::Z: expect = o.z; break;
            }
            GridPos canon = site_position(code_, q), cur = site_position(code_, site_of_[q]);
            GridVec d = centered_vec(code_, {cur.col - canon.col, cur.row - canon.row});
            if (!(d == expect))
                throw TrackError("configuration is not uniform per sublattice at qubit " +
                                 std::string(role_name(id.role)) + "(" + std::to_string(id.i) + "," +
                                 std::to_string(id.j) + ")");
        }
        return o;
    }

private:
    GridVec delta(Role role) const {
        QubitId rep{0, 0, role};
        int canon = site_index(code_, rep);
        GridPos a = site_position(code_, canon), b = site_position(code_, site_of_[canon]);
        return centered_vec(code_, {b.col - a.col, b.row - a.row});
    }

    bool swap_allowed(int qa, int qb) const {
        switch (strategy_) {
            case AbsentStrategy::None: return true;
            case AbsentStrategy::Padding: return true;  // padding qubits ride along
            case AbsentStrategy::ExtraCouplers:
                return !absent_[qa] && !absent_[qb] && !static_[qa] && !static_[qb];
        }
        return true;
    }

    bool cnot_allowed(int qa, int qb) const { return !absent_[qa] && !absent_[qb]; }

    void swap_qubits(int qa, int qb) {
        int sa = site_of_[qa], sb = site_of_[qb];
        std::swap(site_of_[qa], site_of_[qb]);
        qubit_at_[sa] = qb;
        qubit_at_[sb] = qa;
    }

    void emit_cell(char cls, const Cell& cl, int layer, std::vector<TwoQubitOp>& ops,
                   std::vector<bool>& touched) {
        for (int j = 0; j < code_.l; ++j)
            for (int i = 0; i < code_.m; ++i) {
                auto [anc, data] = cell_pair(cls, cl.term, i, j);
                bool want_cx = cl.kind != GateKind::SWAP && cnot_allowed(anc, data);
                bool want_swap = cl.kind != GateKind::CNOT && swap_allowed(anc, data);
                if (!want_cx && !want_swap) continue;
                TwoQubitOp op;
                op.cls = cls;
                op.term = cl.term;
                // X-ancillas control their data targets; data qubits control
                // Z-ancilla targets. Sites are wherever the qubits sit now.
                op.control_qubit = cls == 'X' ? anc : data;
                op.target_qubit = cls == 'X' ? data : anc;
                op.control_site = site_of_[op.control_qubit];
                op.target_site = site_of_[op.target_qubit];
                op.kind = want_cx ? (want_swap ? GateKind::CXSWAP : GateKind::CNOT) : GateKind::SWAP;
                for (int site : {op.control_site, op.target_site}) {
                    if (touched[site])
                        throw TrackError("two gates touch site " + std::to_string(site) +
                                         " in layer " + std::to_string(layer + 1));
                    touched[site] = true;
                }
                ops.push_back(op);
                if (want_swap) swap_qubits(anc, data);
            }
    }

    CodeSpec code_;
    AbsentStrategy strategy_;
    std::vector<bool> absent_, static_;
    std::vector<int> site_of_, qubit_at_;
};

// ---- coupler extraction -----------------------------------------------------

struct Coupler {
    int a = 0, b = 0;  // site indices, a < b
    bool operator<(const Coupler& o) const { return a != o.a ? a < o.a : b < o.b; }
    bool operator==(const Coupler& o) const { return a == o.a && b == o.b; }
};

inline int coupler_length(const CodeSpec& c, const Coupler& e) {
    GridPos pa = site_position(c, e.a), pb = site_position(c, e.b);
    return torus_l1(c, {pb.col - pa.col, pb.row - pa.row});
}

inline std::set<Coupler> extract_couplers(const ExpandedRound& round) {
    std::set<Coupler> out;
    for (const LayerOps& layer : round.layers)
        for (const TwoQubitOp& op : layer.ops)
            out.insert({std::min(op.control_site, op.target_site),
                        std::max(op.control_site, op.target_site)});
    return out;
}

inline std::set<Coupler> extract_couplers(const std::vector<ExpandedRound>& rounds) {
    std::set<Coupler> out;
    for (const ExpandedRound& r : rounds) {
        std::set<Coupler> s = extract_couplers(r);
        out.insert(s.begin(), s.end());
    }
    return out;
}

// Convenience: expand one forward round from the canonical configuration
// (after fictional initialization) and return it.
inline ExpandedRound expand_single_round(const CodeSpec& c, const Schedule& s,
                                         const AbsentSpec& absent = {}) {
    Tracker tr(c, absent);
    tr.compute_static(s);
    tr.apply_fictional(s.init);
    return tr.expand(s);
}

}  // namespace louvre
