#pragma once
// First-tier placement and multi-tier coupler routing. Tier 1 is the square
// qubit grid and serves length-1 couplers directly; every longer coupler is
// routed with A* over stacked [N, M, 2] occupancy grids, deferring to the
// next tier (and charging TSVs) when a tier is full. Bump-bonds are the
// intra-tier layer switches.

#include "louvre/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace louvre {

struct GridCell {
    int col = 0, row = 0, layer = 0;
    bool operator==(const GridCell& o) const {
        return col == o.col && row == o.row && layer == o.layer;
    }
    bool operator<(const GridCell& o) const {
        return std::tie(col, row, layer) < std::tie(o.col, o.row, o.layer);
    }
};

struct Placement {
    int cols = 0, rows = 0;
    std::vector<int> direct;    // coupler indices served by tier-1 adjacency
    std::vector<int> deferred;  // long-range couplers handed to the router
};

inline Placement place_first_tier(const CouplerGraph& g) {
    Placement p{g.grid_cols, g.grid_rows, {}, {}};
    for (std::size_t e = 0; e < g.couplers.size(); ++e)
        (g.couplers[e].is_short() ? p.direct : p.deferred).push_back(int(e));
    return p;
}

struct RoutedPath {
    int coupler = -1;
    int tier = 0;
    std::vector<GridCell> cells;
    int bumps = 0;          // layer switches along the path
    double tsv_share = 0;   // endpoint tier crossings, pro-rata per coupler
};

struct RoutingReport {
    int tiers = 1;
    double avg_length = 0;        // mean in-plane steps per routed coupler
    double bumps_per_coupler = 0;
    double tsvs_per_coupler = 0;
};

struct RoutingResult {
    Placement placement;
    std::vector<RoutedPath> paths;
    RoutingReport report;
};

namespace detail {

constexpr int kBumpPenalty = 3;
constexpr int kMaxSwitches = 10;

struct Occupancy {
    int cols, rows;
    std::vector<std::uint8_t> cells;  // 0 free, 1 qubit pad, 2 routed path
    Occupancy(int c, int r) : cols(c), rows(r), cells(std::size_t(2 * c * r), 0) {}
    std::uint8_t& at(const GridCell& p) {
        return cells[std::size_t((p.layer * rows + p.row) * cols + p.col)];
    }
    std::uint8_t get(const GridCell& p) const {
        return cells[std::size_t((p.layer * rows + p.row) * cols + p.col)];
    }
    bool inside(const GridCell& p) const {
        return p.col >= 0 && p.col < cols && p.row >= 0 && p.row < rows;
    }
};

// A* over (col, row, layer, switches-so-far). Plane steps cost 1, a layer
// switch costs kBumpPenalty; at most kMaxSwitches switches. Ties resolve by
// lower layer, then (col, row) order, so the search is deterministic.
inline std::optional<std::vector<GridCell>> astar(const Occupancy& occ, GridCell start,
                                                  GridCell goal) {
    auto pack = [&](const GridCell& p, int sw) {
        return ((sw * 2 + p.layer) * occ.rows + p.row) * occ.cols + p.col;
    };
    auto h = [&](const GridCell& p) {
        int d = std::abs(p.col - goal.col) + std::abs(p.row - goal.row);
        return d + (p.layer != goal.layer ? kBumpPenalty : 0);
    };
    int n_states = occ.cols * occ.rows * 2 * (kMaxSwitches + 1);
    std::vector<int> best(std::size_t(n_states), -1), parent(std::size_t(n_states), -1);
    using Entry = std::tuple<int, int, int, int, int, int>;  // f, layer, col, row, sw, g
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    best[std::size_t(pack(start, 0))] = 0;
    open.push({h(start), start.layer, start.col, start.row, 0, 0});
    while (!open.empty()) {
        auto [f, layer, col, row, sw, g] = open.top();
        open.pop();
        GridCell here{col, row, layer};
        int id = pack(here, sw);
        if (best[std::size_t(id)] != g) continue;  // stale entry
        if (here == goal) {
            std::vector<GridCell> path{here};
            for (int at = id; parent[std::size_t(at)] >= 0;) {
                at = parent[std::size_t(at)];
                int cells_per_layer = occ.cols * occ.rows;
                int plane = at % (2 * cells_per_layer);
                path.push_back({plane % occ.cols, (plane / occ.cols) % occ.rows,
                                plane / cells_per_layer});
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        auto relax = [&](GridCell next, int nsw, int cost) {
            if (!occ.inside(next)) return;
            if (!(next == goal) && occ.get(next) != 0) return;
            int nid = pack(next, nsw), ng = g + cost;
            if (best[std::size_t(nid)] >= 0 && best[std::size_t(nid)] <= ng) return;
            best[std::size_t(nid)] = ng;
            parent[std::size_t(nid)] = id;
            open.push({ng + h(next), next.layer, next.col, next.row, nsw, ng});
        };
        relax({col + 1, row, layer}, sw, 1);
        relax({col - 1, row, layer}, sw, 1);
        relax({col, row + 1, layer}, sw, 1);
        relax({col, row - 1, layer}, sw, 1);
        if (sw < kMaxSwitches) relax({col, row, 1 - layer}, sw + 1, kBumpPenalty);
    }
    return std::nullopt;
}

}  // namespace detail

// Routes every long-range coupler, tier by tier: each tier is a fresh
// occupancy grid holding replica pads for all still-pending qubits; edges go
// in ascending straight-line length (seed shuffles equal lengths), successes
// claim their cells, failures defer to the next tier.
inline RoutingResult route_multitier(const CouplerGraph& g, std::uint64_t seed) {
    RoutingResult res;
    res.placement = place_first_tier(g);
    std::vector<int> pending = res.placement.deferred;

    std::mt19937_64 rng(seed);
    std::shuffle(pending.begin(), pending.end(), rng);
    auto straight2 = [&](int e) {
        const CouplerInfo& ci = g.couplers[std::size_t(e)];
        long long dc = ci.pos_b.col - ci.pos_a.col, dr = ci.pos_b.row - ci.pos_a.row;
        return dc * dc + dr * dr;
    };
    std::stable_sort(pending.begin(), pending.end(),
                     [&](int a, int b) { return straight2(a) < straight2(b); });

    int tier = 1;
    while (!pending.empty()) {
        ++tier;
        if (tier > 64) throw std::runtime_error("routing exceeded 64 tiers");
        detail::Occupancy occ(g.grid_cols, g.grid_rows);
        for (int e : pending) {
            const CouplerInfo& ci = g.couplers[std::size_t(e)];
            occ.at({ci.pos_a.col, ci.pos_a.row, 0}) = 1;
            occ.at({ci.pos_b.col, ci.pos_b.row, 0}) = 1;
        }
        std::vector<int> deferred;
        for (int e : pending) {
            const CouplerInfo& ci = g.couplers[std::size_t(e)];
            GridCell from{ci.pos_a.col, ci.pos_a.row, 0}, to{ci.pos_b.col, ci.pos_b.row, 0};
            auto path = detail::astar(occ, from, to);
            if (!path) {
                deferred.push_back(e);
                continue;
            }
            RoutedPath rp;
            rp.coupler = e;
            rp.tier = tier;
            rp.cells = *path;
            for (std::size_t i = 1; i < rp.cells.size(); ++i) {
                if (rp.cells[i].layer != rp.cells[i - 1].layer) ++rp.bumps;
                occ.at(rp.cells[i]) = 2;
            }
            occ.at(rp.cells.front()) = 1;  // endpoints stay shareable qubit pads
            occ.at(rp.cells.back()) = 1;
            res.paths.push_back(std::move(rp));
        }
        if (deferred.size() == pending.size()) {
            const CouplerInfo& ci = g.couplers[std::size_t(pending.front())];
            throw std::runtime_error("coupler (" + std::to_string(ci.pos_a.col) + "," +
                                     std::to_string(ci.pos_a.row) + ")-(" +
                                     std::to_string(ci.pos_b.col) + "," +
                                     std::to_string(ci.pos_b.row) +
                                     ") cannot be routed even on a fresh tier");
        }
        pending = deferred;
    }

    int n_long = int(res.placement.deferred.size());
    res.report.tiers = 1;
    if (n_long) {
        double steps = 0, bumps = 0;
        std::map<int, int> max_tier, long_degree;
        for (const RoutedPath& p : res.paths) {
            res.report.tiers = std::max(res.report.tiers, p.tier);
            steps += double(int(p.cells.size()) - 1 - p.bumps);
            bumps += p.bumps;
            const CouplerInfo& ci = g.couplers[std::size_t(p.coupler)];
            for (int site : {ci.site_a, ci.site_b}) {
                max_tier[site] = std::max(max_tier[site], p.tier);
                ++long_degree[site];
            }
        }
        double tsvs = 0;
        for (RoutedPath& p : res.paths) {
            const CouplerInfo& ci = g.couplers[std::size_t(p.coupler)];
            for (int site : {ci.site_a, ci.site_b})
                p.tsv_share += double(max_tier[site] - 1) / double(long_degree[site]);
            tsvs += p.tsv_share;
        }
        res.report.avg_length = steps / n_long;
        res.report.bumps_per_coupler = bumps / n_long;
        res.report.tsvs_per_coupler = tsvs / n_long;
    }
    return res;
}

// True iff the paths cover each long coupler exactly once, every step is a
// unit move or layer switch within the bump cap, endpoints sit on the
// couplers' replicated pads (layer 0), and no tier has two paths through one
// non-endpoint cell or a path crossing a still-pending qubit pad.
inline bool validate_routing(const CouplerGraph& g, const std::vector<RoutedPath>& paths) {
    Placement pl = place_first_tier(g);
    std::vector<int> seen(g.couplers.size(), 0);
    int max_tier = 1;
    for (const RoutedPath& p : paths) {
        if (p.coupler < 0 || p.coupler >= int(g.couplers.size())) return false;
        ++seen[std::size_t(p.coupler)];
        max_tier = std::max(max_tier, p.tier);
    }
    for (int e : pl.direct)
        if (seen[std::size_t(e)] != 0) return false;
    for (int e : pl.deferred)
        if (seen[std::size_t(e)] != 1) return false;

    detail::Occupancy bounds(g.grid_cols, g.grid_rows);
    for (const RoutedPath& p : paths) {
        if (p.tier < 2 || p.cells.size() < 2) return false;
        int bumps = 0;
        for (std::size_t i = 0; i < p.cells.size(); ++i) {
            const GridCell& c = p.cells[i];
            if (!bounds.inside(c) || c.layer < 0 || c.layer > 1) return false;
            if (i == 0) continue;
            const GridCell& q = p.cells[i - 1];
            int d = std::abs(c.col - q.col) + std::abs(c.row - q.row);
            if (c.layer != q.layer) {
                if (d != 0) return false;
                ++bumps;
            } else if (d != 1) {
                return false;
            }
        }
        if (bumps != p.bumps || bumps > detail::kMaxSwitches) return false;
        const CouplerInfo& ci = g.couplers[std::size_t(p.coupler)];
        GridCell a{ci.pos_a.col, ci.pos_a.row, 0}, b{ci.pos_b.col, ci.pos_b.row, 0};
        if (!((p.cells.front() == a && p.cells.back() == b) ||
              (p.cells.front() == b && p.cells.back() == a)))
            return false;
    }

    for (int tier = 2; tier <= max_tier; ++tier) {
        std::map<GridCell, int> interior, endpoint;
        std::map<GridCell, int> pads;  // replicas of every qubit pending here
        for (const RoutedPath& p : paths) {
            if (p.tier < tier) continue;
            const CouplerInfo& ci = g.couplers[std::size_t(p.coupler)];
            ++pads[{ci.pos_a.col, ci.pos_a.row, 0}];
            ++pads[{ci.pos_b.col, ci.pos_b.row, 0}];
        }
        for (const RoutedPath& p : paths) {
            if (p.tier != tier) continue;
            for (std::size_t i = 0; i < p.cells.size(); ++i) {
                bool end = i == 0 || i + 1 == p.cells.size();
                ++(end ? endpoint : interior)[p.cells[i]];
            }
        }
        for (const auto& [cell, n] : interior)
            if (n > 1 || endpoint.count(cell) || pads.count(cell)) return false;
    }
    return true;
}

// Text dump: one line per routed coupler plus the four summary columns.
inline std::string routing_dump(const CouplerGraph& g, const RoutingResult& r) {
    std::string out;
    for (const RoutedPath& p : r.paths) {
        const CouplerInfo& ci = g.couplers[std::size_t(p.coupler)];
        out += "coupler " + std::to_string(ci.site_a) + "-" + std::to_string(ci.site_b) +
               " tier " + std::to_string(p.tier) + ":";
        for (std::size_t i = 0; i < p.cells.size(); ++i)
            out += (i ? " -> (" : " (") + std::to_string(p.cells[i].col) + "," +
                   std::to_string(p.cells[i].row) + "," + std::to_string(p.cells[i].layer) + ")";
        out += " ;\n";
    }
    char line[128];
    std::snprintf(line, sizeof line, "tiers length bumps tsvs\n%d %g %g %g\n", r.report.tiers,
                  r.report.avg_length, r.report.bumps_per_coupler, r.report.tsvs_per_coupler);
    return out + line;
}

}  // namespace louvre
