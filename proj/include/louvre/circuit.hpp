#pragma once
// Noise-annotated circuit emission. Produces a line-oriented instruction
// stream (stim-compatible tokens) for a Z-basis memory experiment: per-round
// ancilla reset / gate layers / ancilla measurement, detectors comparing
// consecutive rounds, a final data-qubit readout, and logical-Z observables.
// Noise follows the SI(1000) pattern (see docs/formats.md for the ratios);
// SWAP layers are scaled by an extra factor.
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "louvre/tableau.hpp"
#include "louvre/tracker.hpp"

namespace louvre {

struct NoiseParams {
    double p = 0.0;            // base error rate; 0 emits a noiseless circuit
    double swap_factor = 1.5;  // SWAP layers are this much noisier than CX layers
};

struct CircuitDocument {
    std::string text;
    int n_qubits = 0;
    int rounds = 0;
    int detectors = 0;
    int observables = 0;
    int measurements = 0;
};

// Logical-Z representatives: kernel vectors of Hx independent modulo the
// rowspan of Hz. Returns data-qubit index lists; size equals the code's k.
inline std::vector<std::vector<int>> logical_z_supports(const CodeSpec& c) {
    CheckMatrices h = check_matrices(c);
    std::vector<std::vector<std::uint64_t>> chosen;
    auto spans = [&](const std::vector<std::uint64_t>& v) {
        BitMatrix m(h.Hz.rows() + int(chosen.size()), c.n_data());
        for (int r = 0; r < h.Hz.rows(); ++r)
            for (int col = 0; col < c.n_data(); ++col)
                if (h.Hz.get(r, col)) m.set(r, col);
        for (size_t r = 0; r < chosen.size(); ++r)
            for (int col = 0; col < c.n_data(); ++col)
                if ((chosen[r][std::size_t(col >> 6)] >> (col & 63)) & 1)
                    m.set(h.Hz.rows() + int(r), col);
        return m.in_row_span(v);
    };
    std::vector<std::vector<int>> out;
    for (const std::vector<std::uint64_t>& v : h.Hx.null_space_basis()) {
        if (spans(v)) continue;
        chosen.push_back(v);
        std::vector<int> support;
        for (int col = 0; col < c.n_data(); ++col)
            if ((v[std::size_t(col >> 6)] >> (col & 63)) & 1) support.push_back(col);
        out.push_back(std::move(support));
    }
    return out;
}

namespace detail {

inline std::string fmt_prob(double v) {
    std::ostringstream o;
    o.precision(12);
    o << v;
    return o.str();
}

class CircuitWriter {
public:
    CircuitWriter(const CodeSpec& c, const NoiseParams& noise)
        : code_(c), noise_(noise), out_() {}

    void coords() {
        for (int s = 0; s < code_.n_total(); ++s) {
            GridPos p = site_position(code_, s);
            out_ << "QUBIT_COORDS(" << p.col << ", " << p.row << ") " << s << "\n";
        }
    }

    void line(const std::string& op, const std::vector<int>& targets, double prob = -1) {
        if (targets.empty()) return;
        out_ << op;
        if (prob >= 0) out_ << "(" << fmt_prob(prob) << ")";
        for (int t : targets) out_ << " " << t;
        out_ << "\n";
    }

    void tick() { out_ << "TICK\n"; }

    // Idle channel for every site not in `busy` during this layer.
    void idle(const std::vector<bool>& busy, double prob) {
        if (noise_.p <= 0) return;
        std::vector<int> idlers;
        for (int s = 0; s < code_.n_total(); ++s)
            if (!busy[std::size_t(s)]) idlers.push_back(s);
        line("DEPOLARIZE1", idlers, prob);
    }

    std::ostringstream& raw() { return out_; }
    std::string str() const { return out_.str(); }
    bool noisy() const { return noise_.p > 0; }
    const NoiseParams& noise() const { return noise_; }

private:
    const CodeSpec& code_;
    NoiseParams noise_;
    std::ostringstream out_;
};

}  // namespace detail

// Emits `rounds` syndrome-extraction rounds followed by a transversal data
// readout. Routed schedules alternate forward and reversed rounds so the
// configuration is periodically restored; detectors compare each check with
// its previous value by check identity regardless of where the ancilla sits.
inline CircuitDocument emit_circuit(const CodeSpec& c, const Schedule& s, int rounds,
                                    const NoiseParams& noise = {}) {
    if (rounds < 1) throw std::invalid_argument("emit_circuit needs rounds >= 1");
    if (!s.covers_all_terms(c))
        throw std::invalid_argument("schedule does not fire every term exactly once");

    Tracker tr(c);
    tr.apply_fictional(s.init);
    std::vector<int> home = tr.configuration();
    bool self_restoring;
    {
        Tracker probe(c);
        probe.apply_fictional(s.init);
        probe.expand(s);
        self_restoring = probe.configuration_is(home);
    }
    Schedule rev = reversed_round(s);

    detail::CircuitWriter w(c, noise);
    w.coords();

    // Ancilla bookkeeping in canonical order: X-checks then Z-checks.
    struct Anc {
        int qubit, check;
        char cls;
    };
    std::vector<Anc> ancs;
    for (char cls : {'X', 'Z'})
        for (int j = 0; j < c.l; ++j)
            for (int i = 0; i < c.m; ++i)
                ancs.push_back({site_index(c, QubitId{i, j, cls == 'X' ? Role::X : Role::Z}),
                                check_index(c, i, j), cls});
    std::vector<int> data_qubits;
    for (int q = 0; q < c.n_total(); ++q) {
        Role r = qubit_at_canonical_site(c, q).role;
        if (r == Role::L || r == Role::R) data_qubits.push_back(q);
    }

    double p = noise.p;
    int n_meas = 0;
    // Latest and previous measurement index per ancilla (parallel to ancs).
    std::vector<int> last(ancs.size(), -1), prev(ancs.size(), -1);
    int n_detectors = 0;

    for (int round = 0; round < rounds; ++round) {
        const Schedule& sched = (self_restoring || round % 2 == 0) ? s : rev;

        // Reset layer; round 0 also initializes the data qubits in Z.
        std::vector<int> rz, rx;
        std::vector<bool> busy(std::size_t(c.n_total()), false);
        if (round == 0)
            for (int q : data_qubits) rz.push_back(tr.site_of(q));
        for (const Anc& a : ancs) (a.cls == 'X' ? rx : rz).push_back(tr.site_of(a.qubit));
        for (int t : rz) busy[std::size_t(t)] = true;
        for (int t : rx) busy[std::size_t(t)] = true;
        w.line("R", rz);
        w.line("RX", rx);
        if (p > 0) {
            w.line("X_ERROR", rz, 2 * p);
            w.line("Z_ERROR", rx, 2 * p);
            w.idle(busy, 2 * p);
        }
        w.tick();

        // Gate layers. CXSWAP is written as CX + SWAP inside one layer with a
        // single two-qubit channel; standalone SWAPs carry the scaled rate.
        ExpandedRound er = tr.expand(sched);
        for (const LayerOps& layer : er.layers) {
            std::vector<bool> lbusy(std::size_t(c.n_total()), false);
            std::vector<int> cx_noise, swap_noise;
            for (const TwoQubitOp& op : layer.ops) {
                std::vector<int> pair{op.control_site, op.target_site};
                if (op.kind != GateKind::SWAP) w.line("CX", pair);
                if (op.kind != GateKind::CNOT) w.line("SWAP", pair);
                auto& sink = op.kind == GateKind::SWAP ? swap_noise : cx_noise;
                sink.push_back(op.control_site);
                sink.push_back(op.target_site);
                lbusy[std::size_t(op.control_site)] = true;
                lbusy[std::size_t(op.target_site)] = true;
            }
            if (p > 0) {
                w.line("DEPOLARIZE2", cx_noise, p);
                w.line("DEPOLARIZE2", swap_noise, noise.swap_factor * p);
                w.idle(lbusy, p / 10);
            }
            w.tick();
        }

        // Measurement layer at the ancillas' current sites.
        std::vector<int> mz, mx;
        std::vector<bool> mbusy(std::size_t(c.n_total()), false);
        for (const Anc& a : ancs) (a.cls == 'X' ? mx : mz).push_back(tr.site_of(a.qubit));
        for (int t : mz) mbusy[std::size_t(t)] = true;
        for (int t : mx) mbusy[std::size_t(t)] = true;
        if (p > 0) {
            w.line("X_ERROR", mz, 5 * p);
            w.line("Z_ERROR", mx, 5 * p);
        }
        w.line("M", mz);
        w.line("MX", mx);
        if (p > 0) w.idle(mbusy, 2 * p);
        // Record indices: MX targets follow the M targets in emission order,
        // but ancs[] interleaves classes, so recompute per class.
        {
            int base = n_meas;
            int zi = 0, xi = int(mz.size());
            for (size_t a = 0; a < ancs.size(); ++a) {
                prev[a] = last[a];
                last[a] = base + (ancs[a].cls == 'Z' ? zi++ : xi++);
            }
            n_meas += int(mz.size() + mx.size());
        }
        w.tick();

        // Detectors: absolute for first-round Z-checks, else vs previous round.
        for (size_t a = 0; a < ancs.size(); ++a) {
            GridPos pos = site_position(c, ancs[a].qubit);
            if (round == 0) {
                if (ancs[a].cls != 'Z') continue;
                w.raw() << "DETECTOR(" << pos.col << ", " << pos.row << ", 0) rec["
                        << last[a] - n_meas << "]\n";
            } else {
                w.raw() << "DETECTOR(" << pos.col << ", " << pos.row << ", " << round << ") rec["
                        << last[a] - n_meas << "] rec[" << prev[a] - n_meas << "]\n";
            }
            ++n_detectors;
        }
    }

    // Final transversal Z readout of the data qubits.
    std::vector<int> md;
    std::vector<bool> fbusy(std::size_t(c.n_total()), false);
    std::vector<int> data_meas(std::size_t(c.n_total()), -1);  // qubit -> record
    for (int q : data_qubits) {
        int site = tr.site_of(q);
        data_meas[std::size_t(q)] = n_meas + int(md.size());
        md.push_back(site);
        fbusy[std::size_t(site)] = true;
    }
    if (p > 0) w.line("X_ERROR", md, 5 * p);
    w.line("M", md);
    if (p > 0) w.idle(fbusy, 2 * p);
    n_meas += int(md.size());

    // Each Z-check must agree with the parity of its data qubits.
    CheckMatrices h = check_matrices(c);
    for (size_t a = 0; a < ancs.size(); ++a) {
        if (ancs[a].cls != 'Z') continue;
        GridPos pos = site_position(c, ancs[a].qubit);
        w.raw() << "DETECTOR(" << pos.col << ", " << pos.row << ", " << rounds << ") rec["
                << last[a] - n_meas << "]";
        for (int q : data_qubits)
            if (h.Hz.get(ancs[a].check, data_index(c, qubit_at_canonical_site(c, q))))
                w.raw() << " rec[" << data_meas[std::size_t(q)] - n_meas << "]";
        w.raw() << "\n";
        ++n_detectors;
    }

    // Logical-Z observables over the final data readout.
    std::vector<std::vector<int>> logicals = logical_z_supports(c);
    std::vector<int> by_data_index(std::size_t(c.n_data()), -1);
    for (int q : data_qubits)
        by_data_index[std::size_t(data_index(c, qubit_at_canonical_site(c, q)))] =
            data_meas[std::size_t(q)];
    for (size_t i = 0; i < logicals.size(); ++i) {
        w.raw() << "OBSERVABLE_INCLUDE(" << i << ")";
        for (int col : logicals[i]) w.raw() << " rec[" << by_data_index[std::size_t(col)] - n_meas << "]";
        w.raw() << "\n";
    }

    CircuitDocument doc;
    doc.text = w.str();
    doc.n_qubits = c.n_total();
    doc.rounds = rounds;
    doc.detectors = n_detectors;
    doc.observables = int(logicals.size());
    doc.measurements = n_meas;
    return doc;
}

// ---- noiseless replay --------------------------------------------------------
// Parses an emitted circuit back and runs it on the exact simulator, resolving
// random measurements to +1. Returns detector/observable parities.

struct ReplayResult {
    int detectors = 0, observables = 0;
    int flipped_detectors = 0, flipped_observables = 0;
    bool all_quiet() const { return flipped_detectors == 0 && flipped_observables == 0; }
};

inline ReplayResult replay_noiseless(const CircuitDocument& doc) {
    Tableau tab(doc.n_qubits);
    std::vector<int> record;
    ReplayResult res;
    std::istringstream in(doc.text);
    std::string ln;
    while (std::getline(in, ln)) {
        if (ln.empty() || ln == "TICK") continue;
        std::string op = ln.substr(0, ln.find_first_of(" ("));
        if (op == "QUBIT_COORDS") continue;
        if (op == "DETECTOR" || op == "OBSERVABLE_INCLUDE") {
            int parity = 0;
            size_t pos = 0;
            while ((pos = ln.find("rec[", pos)) != std::string::npos) {
                pos += 4;
                int off = std::atoi(ln.c_str() + pos);
                parity ^= record[record.size() + off];
            }
            if (op == "DETECTOR") {
                ++res.detectors;
                res.flipped_detectors += parity;
            } else {
                ++res.observables;
                res.flipped_observables += parity;
            }
            continue;
        }
        if (op == "X_ERROR" || op == "Z_ERROR" || op == "DEPOLARIZE1" || op == "DEPOLARIZE2")
            throw std::invalid_argument("replay_noiseless on a noisy circuit");
        std::vector<int> targets;
        {
            std::istringstream ts(ln.substr(op.size()));
            int v;
            while (ts >> v) targets.push_back(v);
        }
        if (op == "R")
            for (int t : targets) tab.reset(t);
        else if (op == "RX")
            for (int t : targets) tab.reset_x(t);
        else if (op == "M")
            for (int t : targets) record.push_back(tab.measure(t, 0).outcome);
        else if (op == "MX")
            for (int t : targets) record.push_back(tab.measure_x(t, 0).outcome);
        else if (op == "CX")
            for (size_t i = 0; i + 1 < targets.size(); i += 2) tab.cx(targets[i], targets[i + 1]);
        else if (op == "SWAP")
            for (size_t i = 0; i + 1 < targets.size(); i += 2)
                tab.swap_qubits(targets[i], targets[i + 1]);
        else
            throw std::invalid_argument("replay_noiseless: unknown op '" + op + "'");
    }
    return res;
}

}  // namespace louvre
