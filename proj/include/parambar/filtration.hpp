#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "parambar/geometry.hpp"

namespace parambar {

using index_t = std::int64_t;

inline constexpr int kMaxFiltrationDim = 3;
inline constexpr index_t kDefaultSimplexBudget = 50'000'000;

// A simplex tagged with the first grid step at which it appears. Vertices
// are strictly increasing point indices.
struct Simplex {
    std::array<std::int32_t, kMaxFiltrationDim + 1> v{};
    std::int32_t step = 0;
    std::int8_t dim = 0;

    std::span<const std::int32_t> vertices() const { return {v.data(), static_cast<std::size_t>(dim) + 1}; }
};

// Radius grid: step t corresponds to radius t * step_size, t in 0..num_steps.
struct FiltrationGrid {
    double step_size = 0.0;
    int num_steps = 0;

    double radius_at(int t) const { return step_size * t; }
    // Smallest t >= 0 with t * step_size >= d.
    int step_for(double d) const;
};

// step_size = 1% of the mean pairwise distance.
FiltrationGrid make_grid(const DistanceMatrix& dm, int num_steps);

// Every simplex of dim <= max_dim whose diameter fits the final radius,
// sorted by (step, dim, lexicographic vertices).
struct Filtration {
    FiltrationGrid grid;
    int max_dim = 0;
    std::size_t num_points = 0;
    std::vector<Simplex> simplices;
};

Filtration build_rips(const DistanceMatrix& dm, const FiltrationGrid& grid, int max_dim,
                      index_t simplex_budget = kDefaultSimplexBudget);

// One simplex per line: "dim v0 v1 ... vk step".
void write_filtration_text(const Filtration& f, std::ostream& out);

}  // namespace parambar
