#include "parambar/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace parambar {

int FiltrationGrid::step_for(double d) const {
    if (d <= 0.0) return 0;
    int t = static_cast<int>(std::ceil(d / step_size));
    // Correct for floating-point slop in the division.
    while (t > 0 && static_cast<double>(t - 1) * step_size >= d) --t;
    while (static_cast<double>(t) * step_size < d) ++t;
    return t;
}

FiltrationGrid make_grid(const DistanceMatrix& dm, int num_steps) {
    if (num_steps < 1) throw std::invalid_argument("make_grid: num_steps must be >= 1");
    const double mean = mean_distance(dm);
    if (mean <= 0.0) throw std::runtime_error("make_grid: all points coincide");
    return FiltrationGrid{0.01 * mean, num_steps};
}

namespace {

struct RipsBuilder {
    const FiltrationGrid& grid;
    int max_dim;
    index_t budget;
    std::size_t n;
    // Edge appearance steps, or -1 when the edge never enters the complex.
    std::vector<std::int32_t> edge_step;
    std::vector<std::vector<std::int32_t>> neighbors;  // ascending, > vertex
    std::vector<Simplex> out;

    std::int32_t estep(std::size_t i, std::size_t j) const { return edge_step[i * n + j]; }

    void emit(const Simplex& s) {
        if (static_cast<index_t>(out.size()) >= budget)
            throw std::runtime_error("complex too large: simplex budget of " +
                                     std::to_string(budget) + " exceeded");
        out.push_back(s);
    }

    void expand(Simplex s, std::span<const std::int32_t> candidates) {
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            const std::int32_t u = candidates[ci];
            Simplex ext = s;
            ext.dim = static_cast<std::int8_t>(s.dim + 1);
            ext.v[ext.dim] = u;
            for (int k = 0; k <= s.dim; ++k)
                ext.step = std::max(ext.step, estep(ext.v[k], u));
            emit(ext);
            if (ext.dim < max_dim) {
                std::vector<std::int32_t> next;
                for (std::size_t cj = ci + 1; cj < candidates.size(); ++cj)
                    if (estep(u, candidates[cj]) >= 0) next.push_back(candidates[cj]);
                if (!next.empty()) expand(ext, next);
            }
        }
    }
};

}  // namespace

Filtration build_rips(const DistanceMatrix& dm, const FiltrationGrid& grid, int max_dim,
                      index_t simplex_budget) {
    if (max_dim < 0 || max_dim > kMaxFiltrationDim)
        throw std::invalid_argument("build_rips: max_dim must be in [0, " +
                                    std::to_string(kMaxFiltrationDim) + "]");
    if (grid.step_size <= 0.0 || grid.num_steps < 1)
        throw std::invalid_argument("build_rips: invalid grid");
    const std::size_t n = dm.size();
    if (n > 32768) throw std::invalid_argument("build_rips: too many points");

    RipsBuilder b{grid, max_dim, simplex_budget, n, {}, {}, {}};
    b.edge_step.assign(n * n, -1);
    b.neighbors.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int t = grid.step_for(dm.at(i, j));
            if (t <= grid.num_steps) {
                b.edge_step[i * n + j] = t;
                b.edge_step[j * n + i] = t;
                b.neighbors[i].push_back(static_cast<std::int32_t>(j));
            }
        }
    }

    for (std::size_t v = 0; v < n; ++v) {
        Simplex s;
        s.v[0] = static_cast<std::int32_t>(v);
        s.dim = 0;
        s.step = 0;
        b.emit(s);
        if (max_dim > 0 && !b.neighbors[v].empty()) b.expand(s, b.neighbors[v]);
    }

    std::sort(b.out.begin(), b.out.end(), [](const Simplex& a, const Simplex& c) {
        if (a.step != c.step) return a.step < c.step;
        if (a.dim != c.dim) return a.dim < c.dim;
        return std::lexicographical_compare(a.v.begin(), a.v.begin() + a.dim + 1, c.v.begin(),
                                            c.v.begin() + c.dim + 1);
    });

    Filtration f;
    f.grid = grid;
    f.max_dim = max_dim;
    f.num_points = n;
    f.simplices = std::move(b.out);
    return f;
}

void write_filtration_text(const Filtration& f, std::ostream& out) {
    for (const Simplex& s : f.simplices) {
        out << static_cast<int>(s.dim);
        for (std::int32_t v : s.vertices()) out << ' ' << v;
        out << ' ' << s.step << '\n';
    }
}

}  // namespace parambar
