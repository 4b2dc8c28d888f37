#pragma once

// Convex polygon clipping (Sutherland-Hodgman) for triangle overlap tests.

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

using Pt = std::pair<double, double>;

inline double cross(Pt o, Pt a, Pt b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

inline double area(const std::vector<Pt>& poly) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Pt& a = poly[i];
        const Pt& b = poly[(i + 1) % poly.size()];
        s += a.first * b.second - b.first * a.second;
    }
    return 0.5 * std::abs(s);
}

/// Counter-clockwise copy of a triangle.
inline std::vector<Pt> ccw(const std::array<Pt, 3>& t) {
    std::vector<Pt> v(t.begin(), t.end());
    if (cross(v[0], v[1], v[2]) < 0) std::swap(v[1], v[2]);
    return v;
}

inline std::vector<Pt> clip(std::vector<Pt> subject, const std::vector<Pt>& clipper) {
    for (std::size_t e = 0; e < clipper.size() && !subject.empty(); ++e) {
        const Pt a = clipper[e];
        const Pt b = clipper[(e + 1) % clipper.size()];
        std::vector<Pt> out;
        for (std::size_t i = 0; i < subject.size(); ++i) {
            const Pt p = subject[i];
            const Pt q = subject[(i + 1) % subject.size()];
            const double cp = cross(a, b, p);
            const double cq = cross(a, b, q);
            if (cp >= 0) out.push_back(p);
            if ((cp >= 0) != (cq >= 0)) {
                const double t = cp / (cp - cq);
                out.push_back({p.first + t * (q.first - p.first), p.second + t * (q.second - p.second)});
            }
        }
        subject = std::move(out);
    }
    return subject;
}

/// Open triangles overlap iff their intersection has positive area.
inline bool overlap(const std::array<Pt, 3>& t1, const std::array<Pt, 3>& t2) {
    const auto inter = clip(ccw(t1), ccw(t2));
    if (inter.size() < 3) return false;
    const double scale = std::max(area(ccw(t1)), area(ccw(t2)));
    return area(inter) > 1e-12 * scale;
}

}  // namespace oracle
