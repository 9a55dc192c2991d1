#pragma once
// Physical coupler-graph extraction and degree / interaction-distance
// statistics, kept in exact rational arithmetic.

#include "louvre/tracker.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace louvre {

// Exact rational; every average reported here is a ratio of small integers.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
    friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(Rat a, Rat b) { return a.num * b.den <= b.num * a.den; }
    double to_double() const { return double(num) / double(den); }
};

// "6", "4.5", "10.66667" is never needed: print an exact decimal when the
// denominator divides a power of ten, otherwise "num/den".
inline std::string to_string(Rat r) {
    std::int64_t ip = r.num / r.den, rem = r.num % r.den;
    if (rem == 0) return std::to_string(ip);
    std::string sign = r.num < 0 ? "-" : "";
    std::int64_t n = r.num < 0 ? -r.num : r.num;
    std::int64_t whole = n / r.den;
    std::int64_t frac = n % r.den;
    std::string digits;
    for (int i = 0; i < 18 && frac != 0; ++i) {
        frac *= 10;
        digits += char('0' + frac / r.den);
        frac %= r.den;
    }
    if (frac != 0) return sign + std::to_string(n) + "/" + std::to_string(r.den);
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    return sign + std::to_string(whole) + "." + digits;
}

// One undirected physical coupler: two grid endpoints and the torus L1 length.
struct CouplerInfo {
    int site_a = 0;
    int site_b = 0;
    GridPos pos_a, pos_b;
    int length = 0;
    bool is_short() const { return length == 1; }
};

struct CouplerGraph {
    int grid_cols = 0;
    int grid_rows = 0;
    int n_sites = 0;  // qubits the averages are taken over (present qubits)
    std::vector<CouplerInfo> couplers;
    std::vector<std::vector<int>> adjacency;  // site index -> coupler indices

    int degree(int site) const { return int(adjacency[site].size()); }
    int total_length(int site) const {
        int s = 0;
        for (int e : adjacency[site]) s += couplers[e].length;
        return s;
    }
};

// Per-layer, each two-qubit gate contributes the edge between the physical
// positions its operands occupy at that layer; duplicates collapse.
inline CouplerGraph couplers_to_graph(const CodeSpec& c, const std::set<Coupler>& edges,
                                      int n_present) {
    CouplerGraph g;
    g.grid_cols = c.grid_cols();
    g.grid_rows = c.grid_rows();
    g.n_sites = n_present;
    g.adjacency.assign(std::size_t(c.n_total()), {});
    for (const Coupler& e : edges) {
        CouplerInfo info;
        info.site_a = e.a;
        info.site_b = e.b;
        info.pos_a = site_position(c, e.a);
        info.pos_b = site_position(c, e.b);
        info.length = coupler_length(c, e);
        int idx = int(g.couplers.size());
        g.couplers.push_back(info);
        g.adjacency[std::size_t(e.a)].push_back(idx);
        g.adjacency[std::size_t(e.b)].push_back(idx);
    }
    return g;
}

inline CouplerGraph extract_coupler_graph(const CodeSpec& c, const Schedule& s,
                                          const AbsentSpec& absent = {}) {
    Tracker tr(c, absent);
    tr.compute_static(s);
    tr.apply_fictional(s.init);
    ExpandedRound round = tr.expand(s);
    int present = c.n_total() - int(absent.sites.size());
    return couplers_to_graph(c, extract_couplers(round), present);
}

struct RoleMetrics {
    Rat degree;
    Rat total_distance;
};

struct MetricsReport {
    int coupler_count = 0;
    int long_count = 0;  // couplers with length > 1
    Rat avg_degree;
    Rat avg_total_distance;
    RoleMetrics by_role[4];  // indexed by Role
};

inline MetricsReport metrics_report(const CodeSpec& c, const CouplerGraph& g) {
    MetricsReport r;
    r.coupler_count = int(g.couplers.size());
    std::int64_t total_len = 0;
    for (const CouplerInfo& e : g.couplers) {
        total_len += e.length;
        if (!e.is_short()) ++r.long_count;
    }
    if (g.n_sites == 0 || g.couplers.empty()) {
        return r;  // empty graph -> all-zero report
    }
    r.avg_degree = Rat(2 * std::int64_t(r.coupler_count), g.n_sites);
    r.avg_total_distance = Rat(2 * total_len, g.n_sites);
    std::int64_t deg[4] = {0, 0, 0, 0}, len[4] = {0, 0, 0, 0}, cnt[4] = {0, 0, 0, 0};
    for (int site = 0; site < int(g.adjacency.size()); ++site) {
        int role = int(qubit_at_canonical_site(c, site).role);
        ++cnt[role];
        deg[role] += g.degree(site);
        len[role] += g.total_length(site);
    }
    for (int role = 0; role < 4; ++role)
        if (cnt[role] > 0) {
            r.by_role[role].degree = Rat(deg[role], cnt[role]);
            r.by_role[role].total_distance = Rat(len[role], cnt[role]);
        }
    return r;
}

inline MetricsReport metrics_report(const CodeSpec& c, const Schedule& s,
                                    const AbsentSpec& absent = {}) {
    return metrics_report(c, extract_coupler_graph(c, s, absent));
}

// Closed-form average degree for the two fixed routing schemes.
//   regular: every qubit touches n_a + n_b couplers;
//   depth-preserving routing: n_a + n_b - max(n_a, n_b)/2;
//   eight-layer routing: (n_a + n_b)/2 + 1.
inline Rat predicted_degree(Scheme scheme, int n_a, int n_b) {
    if (n_a < 1 || n_b < 1) throw std::invalid_argument("predicted_degree: need at least one term per polynomial");
    switch (scheme) {
        case Scheme::Regular: return Rat(n_a + n_b);
        case Scheme::L7: return Rat(2 * (n_a + n_b) - std::max(n_a, n_b), 2);
        case Scheme::L8: return Rat(n_a + n_b + 2, 2);
        default: throw std::invalid_argument("predicted_degree: no closed form for scheme " + std::string(scheme_name(scheme)));
    }
}

}  // namespace louvre
