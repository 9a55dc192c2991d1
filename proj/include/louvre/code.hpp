#pragma once
// Two-block group-algebra code definitions: polynomial parsing, qubit layout
// on the torus grid, stabilizer supports, check matrices, and parameter math.
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "louvre/gf2.hpp"

namespace louvre {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x^a y^b with 0 <= a < m, 0 <= b < l after reduction.
struct Monomial {
    int a = 0, b = 0;
    bool operator==(const Monomial& o) const { return a == o.a && b == o.b; }
};

struct Poly {
    std::vector<Monomial> terms;  // written order, duplicates rejected at parse
    int size() const { return int(terms.size()); }
};

enum class Boundary { Periodic, Open };

enum class Role { L, R, X, Z };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::L: return "L";
        case Role::R: return "R";
        case Role::X: return "X";
        case Role::Z: return "Z";
    }
    return "?";
}

// Qubit in basic unit (i, j): i indexes columns (x direction, mod m),
// j indexes rows (y direction, mod l).
struct QubitId {
    int i = 0, j = 0;
    Role role = Role::L;
    bool operator==(const QubitId& o) const { return i == o.i && j == o.j && role == o.role; }
};

struct GridPos {
    int col = 0, row = 0;
    bool operator==(const GridPos& o) const { return col == o.col && row == o.row; }
};

inline int mod(int v, int n) {
    int r = v % n;
    return r < 0 ? r + n : r;
}

inline std::string monomial_to_string(const Monomial& t) {
    if (t.a == 0 && t.b == 0) return "1";
    std::string s;
    if (t.a) {
        s += "x";
        if (t.a != 1) s += "^" + std::to_string(t.a);
    }
    if (t.b) {
        s += "y";
        if (t.b != 1) s += "^" + std::to_string(t.b);
    }
    return s;
}

inline std::string poly_to_string(const Poly& p) {
    std::string s;
    for (int i = 0; i < p.size(); ++i) {
        if (i) s += "+";
        s += monomial_to_string(p.terms[i]);
    }
    return s;
}

// Parses "1+y+x*y", "y+y^2+x^3", "1+x^3y^5" (juxtaposed factors allowed).
// Exponents are reduced x mod m, y mod l; a duplicate term after reduction
// is an error, as is any malformed token.
inline Poly parse_polynomial(const std::string& text, int l, int m) {
    if (l < 1 || m < 1) throw ParseError("polynomial needs positive torus dimensions");
    Poly p;
    std::string term;
    std::vector<std::string> parts;
    std::string cleaned;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
    size_t start = 0;
    while (start <= cleaned.size()) {
        size_t plus = cleaned.find('+', start);
        if (plus == std::string::npos) plus = cleaned.size();
        parts.push_back(cleaned.substr(start, plus - start));
        start = plus + 1;
        if (plus == cleaned.size()) break;
    }
    for (const std::string& t : parts) {
        if (t.empty()) throw ParseError("empty term in polynomial '" + text + "'");
        Monomial mo;
        size_t i = 0;
        bool saw_factor = false;
        while (i < t.size()) {
            if (t[i] == '*') {
                if (!saw_factor || i + 1 >= t.size())
                    throw ParseError("stray '*' in term '" + t + "'");
                ++i;
                continue;
            }
            if (t[i] == '1') {
                if (saw_factor) throw ParseError("unexpected '1' inside term '" + t + "'");
                saw_factor = true;
                ++i;
                continue;
            }
            if (t[i] != 'x' && t[i] != 'y')
                throw ParseError("unexpected character '" + std::string(1, t[i]) + "' in term '" + t + "'");
            char var = t[i++];
            long e = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                size_t d0 = i;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
                if (i == d0) throw ParseError("missing exponent after '^' in term '" + t + "'");
                e = std::strtol(t.substr(d0, i - d0).c_str(), nullptr, 10);
            }
            if (var == 'x') mo.a = mod(mo.a + int(e % m), m);
            else mo.b = mod(mo.b + int(e % l), l);
            saw_factor = true;
        }
        if (!saw_factor) throw ParseError("empty term in polynomial '" + text + "'");
        for (const Monomial& q : p.terms)
            if (q == mo)
                throw ParseError("duplicate term '" + t + "' (reduces to " + monomial_to_string(mo) +
                                 ") in polynomial '" + text + "'");
        p.terms.push_back(mo);
    }
    if (p.terms.empty()) throw ParseError("empty polynomial");
    return p;
}

struct CodeSpec {
    std::string name;
    int l = 0, m = 0;  // torus: l rows x m columns of basic units
    Poly A, B;
    Boundary boundary = Boundary::Periodic;

    int units() const { return l * m; }
    int n_data() const { return 2 * l * m; }
    int n_total() const { return 4 * l * m; }
    int grid_cols() const { return 2 * m; }
    int grid_rows() const { return 2 * l; }
};

// Grid placement of qubits inside basic unit (i, j):
//   X = (2i, 2j), R = (2i+1, 2j), L = (2i, 2j+1), Z = (2i+1, 2j+1).
inline GridPos qubit_position(const CodeSpec& c, const QubitId& q) {
    int col = 2 * mod(q.i, c.m);
    int row = 2 * mod(q.j, c.l);
    switch (q.role) {
        case Role::X: break;
        case Role::R: col += 1; break;
        case Role::L: row += 1; break;
        case Role::Z: col += 1; row += 1; break;
    }
    return {col, row};
}

inline int site_index(const CodeSpec& c, const GridPos& p) {
    return mod(p.row, c.grid_rows()) * c.grid_cols() + mod(p.col, c.grid_cols());
}

inline int site_index(const CodeSpec& c, const QubitId& q) { return site_index(c, qubit_position(c, q)); }

inline GridPos site_position(const CodeSpec& c, int site) {
    return {site % c.grid_cols(), site / c.grid_cols()};
}

inline QubitId qubit_at_canonical_site(const CodeSpec& c, int site) {
    GridPos p = site_position(c, site);
    int i = p.col / 2, j = p.row / 2;
    bool odd_col = p.col & 1, odd_row = p.row & 1;
    Role r = odd_col ? (odd_row ? Role::Z : Role::R) : (odd_row ? Role::L : Role::X);
    return {i, j, r};
}

// Z(i,j) acts on R(i+a, j+b) for A-terms and L(i+a, j+b) for B-terms;
// X(i,j) acts on L(i-a, j-b) for A-terms and R(i-a, j-b) for B-terms.
inline QubitId support_qubit(const CodeSpec& c, Role ancilla, const QubitId& anc, char poly,
                             const Monomial& t) {
    int s = (ancilla == Role::Z) ? 1 : -1;
    Role data;
    if (ancilla == Role::Z) data = (poly == 'A') ? Role::R : Role::L;
    else data = (poly == 'A') ? Role::L : Role::R;
    return {mod(anc.i + s * t.a, c.m), mod(anc.j + s * t.b, c.l), data};
}

inline std::vector<QubitId> stabilizer_support(const CodeSpec& c, Role ancilla, int i, int j) {
    std::vector<QubitId> out;
    QubitId anc{i, j, ancilla};
    for (const Monomial& t : c.A.terms) out.push_back(support_qubit(c, ancilla, anc, 'A', t));
    for (const Monomial& t : c.B.terms) out.push_back(support_qubit(c, ancilla, anc, 'B', t));
    return out;
}

// Grid displacement, reduced modulo the torus when comparing/measuring.
struct GridVec {
    int dc = 0, dr = 0;
    bool operator==(const GridVec& o) const { return dc == o.dc && dr == o.dr; }
    GridVec operator+(const GridVec& o) const { return {dc + o.dc, dr + o.dr}; }
    GridVec operator-(const GridVec& o) const { return {dc - o.dc, dr - o.dr}; }
    GridVec operator-() const { return {-dc, -dr}; }
};

inline GridVec reduce_vec(const CodeSpec& c, GridVec v) {
    return {mod(v.dc, c.grid_cols()), mod(v.dr, c.grid_rows())};
}

// Ancilla-to-partner displacement for a swap on term t: the vector the ancilla
// travels when it swaps along that coupler.
inline GridVec term_vector(const CodeSpec& c, Role ancilla, char poly, const Monomial& t) {
    GridVec v = (poly == 'A') ? GridVec{2 * t.a, 2 * t.b - 1} : GridVec{2 * t.a - 1, 2 * t.b};
    if (ancilla == Role::X) v = -v;
    (void)c;
    return v;
}

inline int torus_span(int d, int n) {
    int r = mod(d, n);
    return r < n - r ? r : n - r;
}

// L1 length of a grid displacement, minimized over torus wraps.
inline int torus_l1(const CodeSpec& c, GridVec v) {
    return torus_span(v.dc, c.grid_cols()) + torus_span(v.dr, c.grid_rows());
}

// Data column index: R(i,j) -> j*m + i, L(i,j) -> l*m + j*m + i.
inline int data_index(const CodeSpec& c, const QubitId& q) {
    int base = mod(q.j, c.l) * c.m + mod(q.i, c.m);
    if (q.role == Role::L) return c.l * c.m + base;
    if (q.role == Role::R) return base;
    throw std::logic_error("data_index on ancilla qubit");
}

inline int check_index(const CodeSpec& c, int i, int j) { return mod(j, c.l) * c.m + mod(i, c.m); }

struct CheckMatrices {
    BitMatrix Hx, Hz;  // (l*m) x (2*l*m) each
};

inline CheckMatrices check_matrices(const CodeSpec& c) {
    CheckMatrices h{BitMatrix(c.units(), c.n_data()), BitMatrix(c.units(), c.n_data())};
    for (int j = 0; j < c.l; ++j)
        for (int i = 0; i < c.m; ++i) {
            int row = check_index(c, i, j);
            for (const QubitId& q : stabilizer_support(c, Role::X, i, j)) h.Hx.set(row, data_index(c, q));
            for (const QubitId& q : stabilizer_support(c, Role::Z, i, j)) h.Hz.set(row, data_index(c, q));
        }
    return h;
}

inline int compute_k(const CodeSpec& c) {
    CheckMatrices h = check_matrices(c);
    return c.n_data() - h.Hx.rank() - h.Hz.rank();
}

// Parameters of the hypergraph product of a classical seed [n1, k1] with itself.
// Periodic: n = 2*n1^2, k = 2*k1^2; open: n = n1^2 + (n1-k1)^2, k = k1^2.
struct HgpParams {
    long n = 0, k = 0;
};

inline HgpParams hypergraph_product_params(int seed_n, int seed_k, Boundary boundary) {
    long n1 = seed_n, k1 = seed_k;
    if (boundary == Boundary::Periodic) return {2 * n1 * n1, 2 * k1 * k1};
    return {n1 * n1 + (n1 - k1) * (n1 - k1), k1 * k1};
}

// .code file: 'l=', 'm=', 'A=', 'B=' lines, optional 'name=', 'boundary=',
// '#' comments and blank lines ignored.
inline CodeSpec parse_code_text(const std::string& text, const std::string& origin = "<string>") {
    std::istringstream in(text);
    std::string line, a_text, b_text, name;
    int l = 0, m = 0;
    Boundary boundary = Boundary::Periodic;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r\n");
        line = line.substr(b, e - b + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected key=value, got '" + line + "'");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        while (!val.empty() && std::isspace(static_cast<unsigned char>(val.front()))) val.erase(0, 1);
        if (key == "l") l = std::atoi(val.c_str());
        else if (key == "m") m = std::atoi(val.c_str());
        else if (key == "A") a_text = val;
        else if (key == "B") b_text = val;
        else if (key == "name") name = val;
        else if (key == "boundary") {
            if (val == "periodic") boundary = Boundary::Periodic;
            else if (val == "open") boundary = Boundary::Open;
            else fail("boundary must be 'periodic' or 'open', got '" + val + "'");
        } else fail("unknown key '" + key + "'");
    }
    if (l < 2 || m < 2) throw ParseError(origin + ": torus dimensions l, m must both be >= 2");
    if (a_text.empty() || b_text.empty()) throw ParseError(origin + ": both A= and B= are required");
    CodeSpec c;
    c.name = name;
    c.l = l;
    c.m = m;
    c.boundary = boundary;
    c.A = parse_polynomial(a_text, l, m);
    c.B = parse_polynomial(b_text, l, m);
    return c;
}

inline CodeSpec parse_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open code file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    CodeSpec c = parse_code_text(ss.str(), path);
    if (c.name.empty()) {
        size_t slash = path.find_last_of("/\\");
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        size_t dot = base.rfind('.');
        c.name = dot == std::string::npos ? base : base.substr(0, dot);
    }
    return c;
}

}  // namespace louvre
