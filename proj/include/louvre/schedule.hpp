#pragma once
// Syndrome-extraction schedules: per-layer gate cells for the X and Z ancilla
// classes, routing gate kinds, fictional initialization swaps, the standard
// builders (regular, louvre-7, louvre-8), round reversal, and the
// instruction-table text format.
#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "louvre/code.hpp"

namespace louvre {

enum class GateKind { CNOT, SWAP, CXSWAP };

inline const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::CNOT: return "CNOT";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CXSWAP: return "CXSWAP";
    }
    return "?";
}

struct TermRef {
    char poly = 'A';  // 'A' or 'B'
    int idx = 0;      // 0-based position in the polynomial's written order
    bool operator==(const TermRef& o) const { return poly == o.poly && idx == o.idx; }
};

struct Cell {
    bool idle = true;
    TermRef term;
    GateKind kind = GateKind::CNOT;
    bool operator==(const Cell& o) const {
        return idle == o.idle && (idle || (term == o.term && kind == o.kind));
    }
};

inline Cell idle_cell() { return {}; }
inline Cell gate_cell(char poly, int idx, GateKind kind = GateKind::CNOT) {
    return {false, {poly, idx}, kind};
}

// A fictional swap applied before the round starts: the named ancilla class is
// treated as if it had already swapped along the given term's coupler.
struct FictionalSwap {
    char cls = 'X';  // 'X' or 'Z'
    TermRef term;
    bool operator==(const FictionalSwap& o) const { return cls == o.cls && term == o.term; }
};

enum class Scheme { Regular, L7, L7R, L8, L8R, CxswapOnly, Custom };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Regular: return "regular";
        case Scheme::L7: return "l7";
        case Scheme::L7R: return "l7r";
        case Scheme::L8: return "l8";
        case Scheme::L8R: return "l8r";
        case Scheme::CxswapOnly: return "cxswap-only";
        case Scheme::Custom: return "custom";
    }
    return "?";
}

inline std::optional<Scheme> scheme_from_name(const std::string& s) {
    if (s == "regular") return Scheme::Regular;
    if (s == "l7") return Scheme::L7;
    if (s == "l7r") return Scheme::L7R;
    if (s == "l8") return Scheme::L8;
    if (s == "l8r") return Scheme::L8R;
    if (s == "cxswap-only") return Scheme::CxswapOnly;
    return std::nullopt;
}

struct Schedule {
    Scheme scheme = Scheme::Custom;
    bool reversed = false;
    std::vector<int> phase;              // per-layer phase annotation (1, 2 or 3)
    std::vector<Cell> x_row, z_row;      // one cell per layer per ancilla class
    std::vector<FictionalSwap> init;     // applied in order from the canonical configuration

    int depth() const { return int(phase.size()); }
    const Cell& cell(char cls, int layer) const { return cls == 'X' ? x_row[layer] : z_row[layer]; }

    // True iff each class's CNOT-bearing cells cover every term of both
    // polynomials exactly once.
    bool covers_all_terms(const CodeSpec& c) const {
        for (char cls : {'X', 'Z'}) {
            std::vector<int> a(c.A.size(), 0), b(c.B.size(), 0);
            for (int t = 0; t < depth(); ++t) {
                const Cell& cl = cell(cls, t);
                if (cl.idle || cl.kind == GateKind::SWAP) continue;
                (cl.term.poly == 'A' ? a : b)[cl.term.idx]++;
            }
            for (int v : a)
                if (v != 1) return false;
            for (int v : b)
                if (v != 1) return false;
        }
        return true;
    }
};

// Index of the term with the shortest coupler (torus L1), ties broken by
// written order.
inline int shortest_term(const CodeSpec& c, char poly) {
    const Poly& p = (poly == 'A') ? c.A : c.B;
    int best = 0, best_len = torus_l1(c, term_vector(c, Role::Z, poly, p.terms[0]));
    for (int i = 1; i < p.size(); ++i) {
        int len = torus_l1(c, term_vector(c, Role::Z, poly, p.terms[i]));
        if (len < best_len) { best = i; best_len = len; }
    }
    return best;
}

namespace detail {

// When B has more terms than A the polynomial roles in the three-phase layout
// swap: phases 1/3 consume the larger polynomial.
inline bool split_is_b(const CodeSpec& c) { return c.B.size() > c.A.size(); }

struct RowBuilder {
    std::vector<int> phase;
    std::vector<Cell> x, z;
    void layer(int ph, Cell cx, Cell cz) {
        phase.push_back(ph);
        x.push_back(cx);
        z.push_back(cz);
    }
    // Emits a block of `width` layers with the given cells aligned to the
    // right (idles first) or left (idles last) within the block.
    void block(int ph, int width, const std::vector<Cell>& cx, const std::vector<Cell>& cz,
               bool right_align) {
        for (int t = 0; t < width; ++t) {
            auto pick = [&](const std::vector<Cell>& row) -> Cell {
                int off = right_align ? t - (width - int(row.size())) : t;
                if (off < 0 || off >= int(row.size())) return idle_cell();
                return row[off];
            };
            layer(ph, pick(cx), pick(cz));
        }
    }
};

inline std::vector<Cell> cells_of(char poly, const std::vector<int>& idxs,
                                  GateKind kind = GateKind::CNOT) {
    std::vector<Cell> out;
    for (int i : idxs) out.push_back(gate_cell(poly, i, kind));
    return out;
}

struct SplitPlan {
    char split_poly, middle_poly;
    std::vector<int> fx, fz;  // split-poly indices done by X in phase 1 / phase 3
    int n_split, n_middle;
};

inline SplitPlan make_split(const CodeSpec& c) {
    SplitPlan p;
    p.split_poly = split_is_b(c) ? 'B' : 'A';
    p.middle_poly = split_is_b(c) ? 'A' : 'B';
    p.n_split = (p.split_poly == 'A') ? c.A.size() : c.B.size();
    p.n_middle = (p.middle_poly == 'A') ? c.A.size() : c.B.size();
    int h = (p.n_split + 1) / 2;
    for (int i = 0; i < h; ++i) p.fx.push_back(i);
    for (int i = h; i < p.n_split; ++i) p.fz.push_back(i);
    return p;
}

}  // namespace detail

// Three-phase schedule with no routing: X does the first half of the split
// polynomial in phase 1 and the rest in phase 3; Z mirrors.
inline Schedule build_regular(const CodeSpec& c) {
    using namespace detail;
    SplitPlan p = make_split(c);
    RowBuilder rb;
    int w1 = std::max(p.fx.size(), p.fz.size());
    rb.block(1, w1, cells_of(p.split_poly, p.fx), cells_of(p.split_poly, p.fz), true);
    for (int i = 0; i < p.n_middle; ++i)
        rb.layer(2, gate_cell(p.middle_poly, i), gate_cell(p.middle_poly, i));
    std::vector<int> zr(p.fx.rbegin(), p.fx.rend());
    int w3 = std::max(p.fz.size(), p.fx.size());
    rb.block(3, w3, cells_of(p.split_poly, p.fz), cells_of(p.split_poly, zr), false);
    Schedule s;
    s.scheme = Scheme::Regular;
    s.phase = rb.phase;
    s.x_row = rb.x;
    s.z_row = rb.z;
    return s;
}

// Louvre-7: the regular layout with the middle phase reordered so the
// shortest middle-poly term is executed last as a CXSWAP by both classes.
inline Schedule build_louvre7(const CodeSpec& c, std::optional<int> routing_term = {}) {
    using namespace detail;
    SplitPlan p = make_split(c);
    int b1 = routing_term.value_or(shortest_term(c, p.middle_poly));
    RowBuilder rb;
    int w1 = std::max(p.fx.size(), p.fz.size());
    rb.block(1, w1, cells_of(p.split_poly, p.fx), cells_of(p.split_poly, p.fz), true);
    for (int i = 0; i < p.n_middle; ++i) {
        if (i == b1) continue;
        rb.layer(2, gate_cell(p.middle_poly, i), gate_cell(p.middle_poly, i));
    }
    rb.layer(2, gate_cell(p.middle_poly, b1, GateKind::CXSWAP),
             gate_cell(p.middle_poly, b1, GateKind::CXSWAP));
    std::vector<int> zr(p.fx.rbegin(), p.fx.rend());
    int w3 = std::max(p.fz.size(), p.fx.size());
    rb.block(3, w3, cells_of(p.split_poly, p.fz), cells_of(p.split_poly, zr), false);
    Schedule s;
    s.scheme = Scheme::L7;
    s.phase = rb.phase;
    s.x_row = rb.x;
    s.z_row = rb.z;
    return s;
}

// Louvre-8: adds a joint SWAP on the shortest split-poly term in the middle of
// phase 2 so each class shares the other's couplers for the second half.
inline Schedule build_louvre8(const CodeSpec& c, std::optional<int> swap_term = {},
                              std::optional<int> routing_term = {}) {
    using namespace detail;
    SplitPlan p = make_split(c);
    int a1 = swap_term.value_or(shortest_term(c, p.split_poly));
    int b1 = routing_term.value_or(shortest_term(c, p.middle_poly));

    bool a1_with_x = std::find(p.fx.begin(), p.fx.end(), a1) != p.fx.end();
    auto move_last = [](std::vector<int> v, int val) {
        v.erase(std::remove(v.begin(), v.end(), val), v.end());
        v.push_back(val);
        return v;
    };
    std::vector<int> x_p1 = a1_with_x ? move_last(p.fx, a1) : p.fx;
    std::vector<int> z_p1 = a1_with_x ? p.fz : move_last(p.fz, a1);

    std::vector<int> mrest;
    for (int i = 0; i < p.n_middle; ++i)
        if (i != b1) mrest.push_back(i);
    int gh = (int(mrest.size()) + 1) / 2;
    std::vector<int> gx(mrest.begin(), mrest.begin() + gh), gz(mrest.begin() + gh, mrest.end());

    RowBuilder rb;
    int w1 = std::max(x_p1.size(), z_p1.size());
    rb.block(1, w1, cells_of(p.split_poly, x_p1), cells_of(p.split_poly, z_p1), true);

    int wa = std::max(gx.size(), gz.size());
    rb.block(2, wa, cells_of(p.middle_poly, gx), cells_of(p.middle_poly, gz), true);
    rb.layer(2, gate_cell(p.split_poly, a1, GateKind::SWAP),
             gate_cell(p.split_poly, a1, GateKind::SWAP));
    // Second half: each class covers the half the other did, ending with the
    // joint routing CXSWAP on the middle-poly term.
    {
        std::vector<Cell> cx = cells_of(p.middle_poly, gz), cz = cells_of(p.middle_poly, gx);
        int wb = std::max(cx.size(), cz.size()) + 1;
        for (int t = 0; t + 1 < wb; ++t) {
            Cell a = t < int(cx.size()) ? cx[t] : idle_cell();
            Cell b = t < int(cz.size()) ? cz[t] : idle_cell();
            rb.layer(2, a, b);
        }
        rb.layer(2, gate_cell(p.middle_poly, b1, GateKind::CXSWAP),
                 gate_cell(p.middle_poly, b1, GateKind::CXSWAP));
    }

    // Phase 3 opens with the return swap; the class still owing its a1
    // interaction absorbs the CNOT into it.
    Cell x_open = gate_cell(p.split_poly, a1, a1_with_x ? GateKind::SWAP : GateKind::CXSWAP);
    Cell z_open = gate_cell(p.split_poly, a1, a1_with_x ? GateKind::CXSWAP : GateKind::SWAP);
    rb.layer(3, x_open, z_open);
    std::vector<int> x_tail = p.fz, z_tail = p.fx;
    if (!a1_with_x) x_tail.erase(std::remove(x_tail.begin(), x_tail.end(), a1), x_tail.end());
    std::reverse(z_tail.begin(), z_tail.end());
    if (a1_with_x) z_tail.erase(std::remove(z_tail.begin(), z_tail.end(), a1), z_tail.end());
    int w3 = std::max(x_tail.size(), z_tail.size());
    rb.block(3, w3, cells_of(p.split_poly, x_tail), cells_of(p.split_poly, z_tail), false);

    Schedule s;
    s.scheme = Scheme::L8;
    s.phase = rb.phase;
    s.x_row = rb.x;
    s.z_row = rb.z;
    return s;
}

// Same layers in reverse order; gate kinds are kept and the tracker interprets
// each routing gate against the current occupancy, so a forward round followed
// by its reversal restores the starting configuration.
inline Schedule reversed_round(const Schedule& s) {
    Schedule r = s;
    r.reversed = !s.reversed;
    std::reverse(r.phase.begin(), r.phase.end());
    for (int& p : r.phase) p = 4 - p;
    std::reverse(r.x_row.begin(), r.x_row.end());
    std::reverse(r.z_row.begin(), r.z_row.end());
    return r;
}

// ---- instruction-table text format ----------------------------------------
//   phase: 1|1|2|2|2|3|3
//   X: A1|A2|B2|B3|B1:CXSWAP|A3|-
//   Z: -|A3|B2|B3|B1:CXSWAP|A2|A1
//   init: X:A2,Z:A1        (omitted when there are no fictional swaps)

inline std::string cell_to_string(const Cell& c) {
    if (c.idle) return "-";
    std::string s = std::string(1, c.term.poly) + std::to_string(c.term.idx + 1);
    if (c.kind == GateKind::SWAP) s += ":SWAP";
    else if (c.kind == GateKind::CXSWAP) s += ":CXSWAP";
    return s;
}

inline std::string to_instruction_table(const Schedule& s) {
    std::ostringstream out;
    auto join = [&](auto&& f, int n) {
        for (int i = 0; i < n; ++i) {
            if (i) out << "|";
            f(i);
        }
    };
    out << "phase: ";
    join([&](int i) { out << s.phase[i]; }, s.depth());
    out << "\nX: ";
    join([&](int i) { out << cell_to_string(s.x_row[i]); }, s.depth());
    out << "\nZ: ";
    join([&](int i) { out << cell_to_string(s.z_row[i]); }, s.depth());
    out << "\n";
    if (!s.init.empty()) {
        out << "init: ";
        for (size_t i = 0; i < s.init.size(); ++i) {
            if (i) out << ",";
            out << s.init[i].cls << ":" << s.init[i].term.poly << (s.init[i].term.idx + 1);
        }
        out << "\n";
    }
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string::npos ? p : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

inline std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline TermRef parse_term_ref(const std::string& tok, const CodeSpec& c) {
    if (tok.size() < 2 || (tok[0] != 'A' && tok[0] != 'B'))
        throw ParseError("bad term label '" + tok + "' (expected A<k> or B<k>)");
    for (size_t i = 1; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i])))
            throw ParseError("bad term label '" + tok + "'");
    int idx = std::atoi(tok.c_str() + 1) - 1;
    int limit = tok[0] == 'A' ? c.A.size() : c.B.size();
    if (idx < 0 || idx >= limit)
        throw ParseError("term label '" + tok + "' out of range (polynomial has " +
                         std::to_string(limit) + " terms)");
    return {tok[0], idx};
}

inline Cell parse_cell(const std::string& raw, const CodeSpec& c) {
    std::string tok = strip(raw);
    if (tok == "-") return idle_cell();
    GateKind kind = GateKind::CNOT;
    size_t colon = tok.find(':');
    if (colon != std::string::npos) {
        std::string k = tok.substr(colon + 1);
        if (k == "SWAP") kind = GateKind::SWAP;
        else if (k == "CXSWAP") kind = GateKind::CXSWAP;
        else throw ParseError("unknown gate kind '" + k + "' in cell '" + tok + "'");
        tok = tok.substr(0, colon);
    }
    Cell cell;
    cell.idle = false;
    cell.term = parse_term_ref(tok, c);
    cell.kind = kind;
    return cell;
}

}  // namespace detail

inline Schedule from_instruction_table(const std::string& text, const CodeSpec& c) {
    using namespace detail;
    std::istringstream in(text);
    std::string line;
    std::optional<std::vector<std::string>> phases, xs, zs;
    std::vector<FictionalSwap> init;
    while (std::getline(in, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        line = strip(line);
        if (line.empty()) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'label: ...' in '" + line + "'");
        std::string label = strip(line.substr(0, colon));
        std::string rest = strip(line.substr(colon + 1));
        if (label == "phase") phases = split_on(rest, '|');
        else if (label == "X") xs = split_on(rest, '|');
        else if (label == "Z") zs = split_on(rest, '|');
        else if (label == "init") {
            for (const std::string& e : split_on(rest, ',')) {
                std::string tok = strip(e);
                if (tok.size() < 4 || (tok[0] != 'X' && tok[0] != 'Z') || tok[1] != ':')
                    throw ParseError("bad init entry '" + tok + "' (expected X:A2 or Z:B1)");
                init.push_back({tok[0], parse_term_ref(tok.substr(2), c)});
            }
        } else throw ParseError("unknown instruction-table label '" + label + "'");
    }
    if (!phases || !xs || !zs)
        throw ParseError("instruction table needs 'phase:', 'X:' and 'Z:' lines");
    if (phases->size() != xs->size() || phases->size() != zs->size())
        throw ParseError("ragged instruction table: phase/X/Z row lengths differ (" +
                         std::to_string(phases->size()) + "/" + std::to_string(xs->size()) + "/" +
                         std::to_string(zs->size()) + ")");
    Schedule s;
    s.scheme = Scheme::Custom;
    s.init = init;
    for (size_t i = 0; i < phases->size(); ++i) {
        std::string p = strip((*phases)[i]);
        if (p != "1" && p != "2" && p != "3")
            throw ParseError("phase entries must be 1, 2 or 3; got '" + p + "'");
        s.phase.push_back(p[0] - '0');
        s.x_row.push_back(parse_cell((*xs)[i], c));
        s.z_row.push_back(parse_cell((*zs)[i], c));
    }
    return s;
}

}  // namespace louvre
