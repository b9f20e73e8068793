#include "gs/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

namespace gs {

double Polyline::signed_area() const {
    double a = 0;
    const std::size_t n = points.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        a += points[i][0] * points[i + 1][1] - points[i + 1][0] * points[i][1];
    if (closed && n > 1)
        a += points[n - 1][0] * points[0][1] - points[0][0] * points[n - 1][1];
    return 0.5 * a;
}

bool Polyline::contains(double r, double z) const {
    bool inside = false;
    const std::size_t n = points.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = points[i][0], yi = points[i][1];
        const double xj = points[j][0], yj = points[j][1];
        if ((yi > z) != (yj > z) && r < (xj - xi) * (z - yi) / (yj - yi) + xi) inside = !inside;
    }
    return inside;
}

namespace {

// Edges are keyed by the grid node at their low corner plus an orientation
// bit: 0 = horizontal (toward +r), 1 = vertical (toward +z).
using EdgeKey = std::uint64_t;

EdgeKey edge_key(int i, int j, int vertical, int nr) {
    return (static_cast<EdgeKey>(j) * nr + i) * 2 + vertical;
}

struct Segment {
    EdgeKey a, b;
};

} // namespace

ContourSet trace_contour(const GridField& f, double level) {
    const GridSpec& g = f.spec;
    ContourSet out;
    out.level = level;

    std::map<EdgeKey, std::array<double, 2>> crossing;
    std::vector<Segment> segments;

    auto above = [&](int i, int j) { return f.at(i, j) >= level; };
    auto cross_h = [&](int i, int j) -> EdgeKey {
        const EdgeKey k = edge_key(i, j, 0, g.nr);
        if (!crossing.count(k)) {
            const double v0 = f.at(i, j), v1 = f.at(i + 1, j);
            const double t = (level - v0) / (v1 - v0);
            crossing[k] = {g.r_at(i) + t * g.hr(), g.z_at(j)};
        }
        return k;
    };
    auto cross_v = [&](int i, int j) -> EdgeKey {
        const EdgeKey k = edge_key(i, j, 1, g.nr);
        if (!crossing.count(k)) {
            const double v0 = f.at(i, j), v1 = f.at(i, j + 1);
            const double t = (level - v0) / (v1 - v0);
            crossing[k] = {g.r_at(i), g.z_at(j) + t * g.hz()};
        }
        return k;
    };

    for (int j = 0; j + 1 < g.nz; ++j) {
        for (int i = 0; i + 1 < g.nr; ++i) {
            if (!(f.is_valid(i, j) && f.is_valid(i + 1, j) && f.is_valid(i, j + 1) &&
                  f.is_valid(i + 1, j + 1)))
                continue;
            int code = 0;
            if (above(i, j)) code |= 1;
            if (above(i + 1, j)) code |= 2;
            if (above(i + 1, j + 1)) code |= 4;
            if (above(i, j + 1)) code |= 8;
            if (code == 0 || code == 15) continue;

            const EdgeKey bottom = ((code & 1) != ((code >> 1) & 1)) ? cross_h(i, j) : 0;
            const EdgeKey right = (((code >> 1) & 1) != ((code >> 2) & 1)) ? cross_v(i + 1, j) : 0;
            const EdgeKey top = (((code >> 3) & 1) != ((code >> 2) & 1)) ? cross_h(i, j + 1) : 0;
            const EdgeKey left = ((code & 1) != ((code >> 3) & 1)) ? cross_v(i, j) : 0;

            switch (code) {
                case 1: case 14: segments.push_back({left, bottom}); break;
                case 2: case 13: segments.push_back({bottom, right}); break;
                case 4: case 11: segments.push_back({right, top}); break;
                case 8: case 7: segments.push_back({top, left}); break;
                case 3: case 12: segments.push_back({left, right}); break;
                case 6: case 9: segments.push_back({bottom, top}); break;
                case 5: case 10: {
                    // saddle: disambiguate with the cell-center average
                    const double center =
                        0.25 * (f.at(i, j) + f.at(i + 1, j) + f.at(i, j + 1) + f.at(i + 1, j + 1));
                    const bool center_above = center >= level;
                    if ((code == 5) == center_above) {
                        segments.push_back({left, top});
                        segments.push_back({bottom, right});
                    } else {
                        segments.push_back({left, bottom});
                        segments.push_back({right, top});
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // stitch segments into polylines
    std::multimap<EdgeKey, std::size_t> at_edge;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        at_edge.insert({segments[s].a, s});
        at_edge.insert({segments[s].b, s});
    }
    std::vector<bool> used(segments.size(), false);

    auto next_segment = [&](EdgeKey e, std::size_t prev) -> std::size_t {
        auto [lo, hi] = at_edge.equal_range(e);
        for (auto it = lo; it != hi; ++it)
            if (!used[it->second] && it->second != prev) return it->second;
        return segments.size();
    };

    for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
        if (used[s0]) continue;
        std::vector<EdgeKey> chain{segments[s0].a, segments[s0].b};
        used[s0] = true;
        bool closed = false;
        // extend forward
        for (;;) {
            const std::size_t nxt = next_segment(chain.back(), segments.size());
            if (nxt == segments.size()) break;
            used[nxt] = true;
            const EdgeKey tail = (segments[nxt].a == chain.back()) ? segments[nxt].b : segments[nxt].a;
            if (tail == chain.front()) {
                closed = true;
                break;
            }
            chain.push_back(tail);
        }
        if (!closed) {
            // extend backward
            for (;;) {
                const std::size_t nxt = next_segment(chain.front(), segments.size());
                if (nxt == segments.size()) break;
                used[nxt] = true;
                const EdgeKey head =
                    (segments[nxt].a == chain.front()) ? segments[nxt].b : segments[nxt].a;
                if (head == chain.back()) {
                    closed = true;
                    break;
                }
                chain.insert(chain.begin(), head);
            }
        }
        Polyline pl;
        pl.closed = closed;
        pl.points.reserve(chain.size());
        for (EdgeKey e : chain) pl.points.push_back(crossing.at(e));
        if (pl.closed && pl.signed_area() < 0)
            std::reverse(pl.points.begin(), pl.points.end());
        if (pl.points.size() >= 2) out.lines.push_back(std::move(pl));
    }

    return out;
}

} // namespace gs
