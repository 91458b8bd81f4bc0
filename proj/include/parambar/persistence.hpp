#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "parambar/filtration.hpp"

namespace parambar {

inline constexpr index_t kInfiniteDeath = -1;
inline constexpr std::size_t kBettiOracleMaxPositions = 2000;
inline constexpr double kDefaultPersistenceThreshold = 0.2;

struct PersistenceInterval {
    int dim = 0;
    int birth = 0;
    int death = static_cast<int>(kInfiniteDeath);

    bool infinite() const { return death < 0; }
    int length(int num_steps) const { return infinite() ? num_steps - birth : death - birth; }
    bool operator==(const PersistenceInterval&) const = default;
};

struct PersistenceDiagram {
    int num_steps = 0;
    double step_size = 0.0;
    double persistence_threshold = kDefaultPersistenceThreshold;
    std::vector<PersistenceInterval> intervals;  // sorted by (dim, birth, death), infinite last
    std::size_t zero_length_dropped = 0;

    bool operator==(const PersistenceDiagram&) const = default;
};

// Column j holds the sorted filtration positions of the (dim-1)-faces of simplex j.
struct BoundaryMatrix {
    std::vector<std::vector<index_t>> columns;
};

BoundaryMatrix boundary_matrix(const Filtration& f);

enum class ReductionMode { Plain, Clearing };

PersistenceDiagram reduce(const BoundaryMatrix& bm, const Filtration& f,
                          ReductionMode mode = ReductionMode::Clearing,
                          double persistence_threshold = kDefaultPersistenceThreshold);

// betti[t][k] = rank of H_k at step t, for t in [0, num_steps].
struct BettiProfile {
    int num_steps = 0;
    int max_dim = 0;
    std::vector<std::vector<int>> betti;

    // Dimensions beyond the top simplex dimension carry no homology.
    int at(int step, int dim) const {
        const auto& row = betti[static_cast<std::size_t>(step)];
        return dim < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(dim)] : 0;
    }
};

// Dense Z2 elimination, independent of reduce(). Small inputs only.
BettiProfile betti_oracle(const Filtration& f);

bool interval_is_persistent(const PersistenceDiagram& d, const PersistenceInterval& iv);

std::vector<PersistenceInterval> persistent_intervals(const PersistenceDiagram& d);

int intervals_alive(const PersistenceDiagram& d, int dim, int step);

std::string diagram_to_json(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_json(const std::string& text);
void write_perseus(const PersistenceDiagram& d, std::ostream& out);

}  // namespace parambar
