#include "pwlbif/cycle_solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "pwlbif/errors.hpp"
#include "pwlbif/parallel.hpp"

namespace pwlbif {

Itinerary::Itinerary(std::vector<Side> word) : word_(std::move(word)) {
    if (word_.empty()) throw ConfigError("itinerary must be nonempty");
}

Itinerary Itinerary::parse(std::string_view text) {
    std::vector<Side> word;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c != 'L' && c != 'R') throw ConfigError("itinerary: unexpected character in '" + std::string(text) + "'");
        ++i;
        if (i < text.size() && text[i] == '^') ++i;
        std::size_t reps = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            reps = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                reps = reps * 10 + static_cast<std::size_t>(text[i] - '0');
                if (reps > 100000) throw ConfigError("itinerary: exponent too large");
                ++i;
            }
        } else if (i > 0 && text[i - 1] == '^') {
            throw ConfigError("itinerary: '^' must be followed by a count");
        }
        word.insert(word.end(), reps, c == 'L' ? Side::L : Side::R);
    }
    if (word.empty()) throw ConfigError("itinerary must be nonempty");
    return Itinerary(std::move(word));
}

std::size_t Itinerary::count(Side s) const noexcept {
    return static_cast<std::size_t>(std::count(word_.begin(), word_.end(), s));
}

Itinerary Itinerary::rotated(std::size_t shift) const {
    std::vector<Side> w = word_;
    std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(shift % w.size()), w.end());
    return Itinerary(std::move(w));
}

Itinerary Itinerary::canonical() const {
    Itinerary best = *this;
    for (std::size_t s = 1; s < word_.size(); ++s) {
        Itinerary r = rotated(s);
        if (r.word_ < best.word_) best = std::move(r);
    }
    return best;
}

std::string Itinerary::str() const {
    std::string out;
    for (const Side s : word_) out += s == Side::L ? 'L' : 'R';
    return out;
}

std::string Itinerary::compact() const {
    std::string out;
    for (std::size_t i = 0; i < word_.size();) {
        std::size_t j = i;
        while (j < word_.size() && word_[j] == word_[i]) ++j;
        out += word_[i] == Side::L ? 'L' : 'R';
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

AffinePiece compose(const NormalFormParams& params, const Itinerary& itin) {
    AffinePiece m;  // identity
    for (const Side s : itin.word()) m = piece(params, s).after(m);
    return m;
}

std::array<std::complex<double>, 2> eigenvalues(const AffinePiece& a) {
    const double tr = a.trace();
    const double disc = tr * tr - 4.0 * a.det();
    const std::complex<double> root = std::sqrt(std::complex<double>(disc, 0.0));
    return {0.5 * (tr + root), 0.5 * (tr - root)};
}

CycleSolution solve_cycle(const NormalFormParams& params, const Itinerary& itin) {
    if (itin.size() == 0) throw ConfigError("solve_cycle: empty itinerary");
    const AffinePiece m = compose(params, itin);
    CycleSolution out;
    out.multipliers = eigenvalues(m);

    const double a11 = 1.0 - m.m11;
    const double a12 = -m.m12;
    const double a21 = -m.m21;
    const double a22 = 1.0 - m.m22;
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) <= kSingularTolerance) {
        out.degenerate = true;
        return out;
    }
    PlanarPoint p{(m.b1 * a22 - a12 * m.b2) / det, (a11 * m.b2 - a21 * m.b1) / det};
    out.admissible = true;
    for (const Side s : itin.word()) {
        out.points.push_back(p);
        const bool ok = s == Side::L ? p.x <= kAdmissibilityTolerance : p.x >= -kAdmissibilityTolerance;
        out.admissible = out.admissible && ok;
        p = piece(params, s)(p);
    }
    out.stable = out.admissible && std::abs(out.multipliers[0]) < 1.0 && std::abs(out.multipliers[1]) < 1.0;
    return out;
}

NormalFormParams ParamGrid::at(int i, int j) const {
    NormalFormParams p = base;
    set(p, p1, axis1.value(i));
    set(p, p2, axis2.value(j));
    return p;
}

std::vector<std::uint8_t> grow_region(const ParamGrid& grid, const Itinerary& itin, const std::vector<CellIndex>& seeds,
                                      int n_workers) {
    const int n1 = grid.axis1.n;
    const int n2 = grid.axis2.n;
    std::vector<std::uint8_t> mask(grid.cell_count(), 0);
    std::vector<std::uint8_t> visited(grid.cell_count(), 0);
    auto index = [n1](CellIndex c) { return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(n1) + c.i; };

    std::vector<CellIndex> frontier;
    for (const CellIndex c : seeds) {
        if (c.i < 0 || c.i >= n1 || c.j < 0 || c.j >= n2 || visited[index(c)]) continue;
        visited[index(c)] = 1;
        frontier.push_back(c);
    }
    std::vector<std::uint8_t> ok;
    while (!frontier.empty()) {
        ok.assign(frontier.size(), 0);
        parallel_for(frontier.size(), n_workers, [&](std::size_t k) {
            ok[k] = solve_cycle(grid.at(frontier[k].i, frontier[k].j), itin).stable ? 1 : 0;
        });
        std::vector<CellIndex> next;
        for (std::size_t k = 0; k < frontier.size(); ++k) {
            if (!ok[k]) continue;
            const CellIndex c = frontier[k];
            mask[index(c)] = 1;
            const CellIndex nbrs[4] = {{c.i - 1, c.j}, {c.i + 1, c.j}, {c.i, c.j - 1}, {c.i, c.j + 1}};
            for (const CellIndex nb : nbrs) {
                if (nb.i < 0 || nb.i >= n1 || nb.j < 0 || nb.j >= n2 || visited[index(nb)]) continue;
                visited[index(nb)] = 1;
                next.push_back(nb);
            }
        }
        frontier = std::move(next);
    }
    return mask;
}

PeriodDetection detect_period_2d(const NormalFormParams& params, PlanarPoint p0, const OrbitBudget& budget) {
    PeriodDetection out;
    PlanarPoint p = p0;
    for (std::size_t n = 0; n < budget.burn_in; ++n) {
        p = apply(params, p);
        if (!(max_norm(p) <= budget.escape_radius)) {
            out.fate = OrbitFate::Diverged;
            out.last = p;
            return out;
        }
    }
    out.last = p;
    const PlanarPoint ref = p;
    std::vector<Side> symbols;
    symbols.reserve(static_cast<std::size_t>(budget.q_max));
    for (int q = 1; q <= budget.q_max; ++q) {
        symbols.push_back(side_of(p));
        p = apply(params, p);
        if (!(max_norm(p) <= budget.escape_radius)) {
            out.fate = OrbitFate::Diverged;
            return out;
        }
        if (distance(p, ref) < budget.tolerance) {
            out.fate = OrbitFate::Periodic;
            out.cycle = DetectedCycle{q, Itinerary(symbols).canonical(), ref};
            return out;
        }
    }
    out.fate = OrbitFate::Other;
    return out;
}

std::vector<Candidate> candidate_itineraries(const ParamGrid& grid, const CandidateOptions& opts) {
    const int nc = std::max(1, opts.coarse_resolution);
    const Axis c1{grid.axis1.min, grid.axis1.max, nc};
    const Axis c2{grid.axis2.min, grid.axis2.max, nc};
    const std::size_t n_cells = static_cast<std::size_t>(nc) * static_cast<std::size_t>(nc);
    std::vector<std::vector<Itinerary>> found(n_cells);

    parallel_for(n_cells, opts.n_workers, [&](std::size_t idx) {
        const int i = static_cast<int>(idx % static_cast<std::size_t>(nc));
        const int j = static_cast<int>(idx / static_cast<std::size_t>(nc));
        NormalFormParams p = grid.base;
        set(p, grid.p1, c1.value(i));
        set(p, grid.p2, c2.value(j));
        auto rng = stream_rng(opts.seed, idx);
        for (int s = 0; s < opts.starts_per_cell; ++s) {
            const PlanarPoint p0{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            const PeriodDetection det = detect_period_2d(p, p0, opts.budget);
            if (det.cycle) found[idx].push_back(det.cycle->word);
        }
    });

    std::map<Itinerary, std::vector<CellIndex>> by_word;
    for (std::size_t idx = 0; idx < n_cells; ++idx) {
        const int i = static_cast<int>(idx % static_cast<std::size_t>(nc));
        const int j = static_cast<int>(idx / static_cast<std::size_t>(nc));
        const CellIndex fine{grid.axis1.cell_of(c1.value(i)), grid.axis2.cell_of(c2.value(j))};
        for (const Itinerary& w : found[idx]) {
            auto& cells = by_word[w];
            if (std::find(cells.begin(), cells.end(), fine) == cells.end()) cells.push_back(fine);
        }
    }
    std::vector<Candidate> out;
    for (auto& [w, cells] : by_word) out.push_back({w, std::move(cells)});
    return out;
}

}  // namespace pwlbif
