#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "parambar/persistence.hpp"

using namespace parambar;

namespace {

Matrix cloud_from(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    return m;
}

Matrix random_cloud(std::mt19937_64& eng, std::size_t n, std::size_t k) {
    Matrix m(n, k);
    for (double& x : m.data()) x = static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0;
    return m;
}

Filtration rips_of(const Matrix& m, int num_steps, int max_dim) {
    const DistanceMatrix dm = distance_matrix(m);
    return build_rips(dm, make_grid(dm, num_steps), max_dim);
}

std::vector<index_t> sym_diff(std::vector<index_t> a, const std::vector<index_t>& b) {
    std::vector<index_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

int count_dim(const PersistenceDiagram& d, int dim) {
    int n = 0;
    for (const auto& iv : d.intervals)
        if (iv.dim == dim) ++n;
    return n;
}

int count_infinite(const PersistenceDiagram& d, int dim) {
    int n = 0;
    for (const auto& iv : d.intervals)
        if (iv.dim == dim && iv.infinite()) ++n;
    return n;
}

}  // namespace

TEST_CASE("boundary matrix lists facet positions") {
    const Filtration f = rips_of(cloud_from({{0.0}, {1.0}}), 100, 1);
    const BoundaryMatrix bm = boundary_matrix(f);
    REQUIRE(bm.columns.size() == 3);
    CHECK(bm.columns[0].empty());
    CHECK(bm.columns[1].empty());
    CHECK(bm.columns[2] == std::vector<index_t>{0, 1});
}

TEST_CASE("triangle column holds its three edges") {
    const double h = std::sqrt(3.0) / 2.0;
    const Filtration f =
        rips_of(cloud_from({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}}), 100, 2);
    const BoundaryMatrix bm = boundary_matrix(f);
    REQUIRE(bm.columns.size() == 7);
    CHECK(bm.columns[6] == std::vector<index_t>{3, 4, 5});
}

TEST_CASE("boundary of boundary vanishes") {
    std::mt19937_64 eng(29);
    for (int trial = 0; trial < 6; ++trial) {
        const Filtration f = rips_of(random_cloud(eng, 4 + eng() % 7, 3), 120, 3);
        const BoundaryMatrix bm = boundary_matrix(f);
        for (const auto& column : bm.columns) {
            std::vector<index_t> composed;
            for (index_t face : column)
                composed = sym_diff(std::move(composed), bm.columns[face]);
            CHECK(composed.empty());
        }
    }
}

TEST_CASE("two points merge once") {
    const Filtration f = rips_of(cloud_from({{0.0}, {4.0}}), 100, 1);
    const PersistenceDiagram d = reduce(boundary_matrix(f), f);
    REQUIRE(d.intervals.size() == 2);
    CHECK(d.intervals[0] == PersistenceInterval{0, 0, 100});
    CHECK(d.intervals[1] == PersistenceInterval{0, 0, kInfiniteDeath});
    CHECK(d.num_steps == 100);
    CHECK(d.step_size == doctest::Approx(0.04));
}

TEST_CASE("equilateral triple never births a loop") {
    const double h = std::sqrt(3.0) / 2.0;
    const Filtration f =
        rips_of(cloud_from({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}}), 100, 2);
    const PersistenceDiagram d = reduce(boundary_matrix(f), f);
    CHECK(count_dim(d, 1) == 0);
    CHECK(count_dim(d, 0) == 3);
    CHECK(count_infinite(d, 0) == 1);
    // The triangle kills one edge in the same step: audited, not reported.
    CHECK(d.zero_length_dropped == 1);
}

TEST_CASE("unit square births one loop at 4 and fills it at 6") {
    const DistanceMatrix dm = distance_matrix(
        cloud_from({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}));
    const Filtration f = build_rips(dm, FiltrationGrid{0.25, 6}, 2);
    const PersistenceDiagram d = reduce(boundary_matrix(f), f);

    std::vector<PersistenceInterval> loops;
    for (const auto& iv : d.intervals)
        if (iv.dim == 1) loops.push_back(iv);
    REQUIRE(loops.size() == 1);
    CHECK(loops[0] == PersistenceInterval{1, 4, 6});

    // Betti profile agrees step by step.
    const BettiProfile profile = betti_oracle(f);
    for (int t = 0; t <= 6; ++t) {
        CHECK(profile.at(t, 0) == (t < 4 ? 4 : 1));
        CHECK(profile.at(t, 1) == ((t >= 4 && t < 6) ? 1 : 0));
    }
}

TEST_CASE("dim-0 births equal the point count") {
    std::mt19937_64 eng(41);
    const Filtration f = rips_of(random_cloud(eng, 9, 3), 90, 2);
    const PersistenceDiagram d = reduce(boundary_matrix(f), f);
    // Distinct points: no step-0 edges, so no dim-0 interval is zero-length.
    CHECK(count_dim(d, 0) == 9);
    CHECK(count_infinite(d, 0) >= 1);
    for (const auto& iv : d.intervals)
        if (iv.dim == 0) CHECK(iv.birth == 0);
}

TEST_CASE("alive counts match the independent oracle everywhere") {
    std::mt19937_64 eng(101);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 4 + eng() % 7;
        const std::size_t ambient = 2 + eng() % 3;
        const int num_steps = 20 + static_cast<int>(eng() % 60);
        const Filtration f = rips_of(random_cloud(eng, n, ambient), num_steps, 2);
        const PersistenceDiagram d = reduce(boundary_matrix(f), f);
        const BettiProfile profile = betti_oracle(f);
        for (int t = 0; t <= num_steps; ++t)
            for (int k = 0; k <= 2; ++k)
                CHECK(intervals_alive(d, k, t) == profile.at(t, k));
    }
}

TEST_CASE("clearing and plain reduction agree exactly") {
    std::mt19937_64 eng(67);
    for (int trial = 0; trial < 10; ++trial) {
        const Filtration f = rips_of(random_cloud(eng, 4 + eng() % 7, 3), 60, 2);
        const BoundaryMatrix bm = boundary_matrix(f);
        const PersistenceDiagram plain = reduce(bm, f, ReductionMode::Plain);
        const PersistenceDiagram cleared = reduce(bm, f, ReductionMode::Clearing);
        CHECK(plain == cleared);
    }
}

TEST_CASE("infinite dim-0 intervals equal final-step components") {
    std::mt19937_64 eng(83);
    for (int trial = 0; trial < 8; ++trial) {
        const Matrix m = random_cloud(eng, 8, 2);
        const DistanceMatrix dm = distance_matrix(m);
        // Short grid so the complex often stays disconnected.
        const FiltrationGrid grid = make_grid(dm, 25);
        const Filtration f = build_rips(dm, grid, 2);
        const PersistenceDiagram d = reduce(boundary_matrix(f), f);
        const ClusterReport rep = clusters_at(dm, grid.radius_at(grid.num_steps) / 2.0);
        CHECK(count_infinite(d, 0) == rep.num_clusters);
    }
}

TEST_CASE("persistence classification by fractional length") {
    PersistenceDiagram d;
    d.num_steps = 100;
    d.persistence_threshold = 0.2;
    d.intervals = {
        {0, 10, 90},                               // length 80: persistent
        {1, 10, 12},                               // length 2: noise
        {1, 0, 20},                                // length 20: exactly at the bound
        {0, 85, static_cast<int>(kInfiniteDeath)},  // alive span 15: below the bound
        {0, 0, static_cast<int>(kInfiniteDeath)},   // alive span 100: persistent
    };
    CHECK(interval_is_persistent(d, d.intervals[0]));
    CHECK_FALSE(interval_is_persistent(d, d.intervals[1]));
    CHECK(interval_is_persistent(d, d.intervals[2]));
    CHECK_FALSE(interval_is_persistent(d, d.intervals[3]));
    CHECK(interval_is_persistent(d, d.intervals[4]));
    const auto kept = persistent_intervals(d);
    REQUIRE(kept.size() == 3);
}

TEST_CASE("betti oracle on isolated points") {
    const Filtration f = rips_of(cloud_from({{0.0}, {10.0}, {20.0}, {35.0}}), 4, 2);
    const BettiProfile profile = betti_oracle(f);
    CHECK(profile.at(0, 0) == 4);
    CHECK(profile.at(4, 0) == 4);
    CHECK(profile.at(4, 1) == 0);
}

TEST_CASE("betti oracle sees the circle of 8") {
    // Octagon vertices; adjacent gap 2*sin(pi/8), diagonal gaps strictly larger.
    Matrix m(8, 2);
    for (std::size_t i = 0; i < 8; ++i) {
        const double a = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / 8.0;
        m.at(i, 0) = std::cos(a);
        m.at(i, 1) = std::sin(a);
    }
    const DistanceMatrix dm = distance_matrix(m);
    const double adjacent = dm.at(0, 1);
    // One step that swallows exactly the adjacent edges.
    const FiltrationGrid grid{adjacent * 1.001, 1};
    const Filtration f = build_rips(dm, grid, 2);
    const BettiProfile profile = betti_oracle(f);
    CHECK(profile.at(1, 0) == 1);
    CHECK(profile.at(1, 1) == 1);
    CHECK(profile.at(1, 2) == 0);
}

TEST_CASE("betti oracle on the full 4-simplex boundaryless blob") {
    Matrix m(4, 1);
    for (std::size_t i = 0; i < 4; ++i) m.at(i, 0) = static_cast<double>(i) * 0.01;
    const DistanceMatrix dm = distance_matrix(m);
    const Filtration f = build_rips(dm, FiltrationGrid{1.0, 1}, 3);
    const BettiProfile profile = betti_oracle(f);
    CHECK(profile.at(1, 0) == 1);
    CHECK(profile.at(1, 1) == 0);
    CHECK(profile.at(1, 2) == 0);
}

TEST_CASE("betti oracle size guard") {
    std::mt19937_64 eng(4);
    Matrix m(24, 2);
    for (double& x : m.data()) x = static_cast<double>(eng() >> 11) * 0x1.0p-53 * 0.1;
    const DistanceMatrix dm = distance_matrix(m);
    const Filtration f = build_rips(dm, FiltrationGrid{1.0, 1}, 3);
    REQUIRE(f.simplices.size() > kBettiOracleMaxPositions);
    CHECK_THROWS_WITH(betti_oracle(f), doctest::Contains("betti_oracle"));
}

TEST_CASE("diagram json round trip") {
    const Filtration f = rips_of(cloud_from({{0.0}, {0.5}, {4.0}}), 50, 1);
    const PersistenceDiagram d = reduce(boundary_matrix(f), f, ReductionMode::Clearing, 0.3);
    const std::string text = diagram_to_json(d);
    const PersistenceDiagram back = diagram_from_json(text);
    CHECK(back == d);
    CHECK(text.find("\"num_steps\"") != std::string::npos);
    CHECK(text.find("\"step_size\"") != std::string::npos);
    CHECK(text.find("\"intervals\"") != std::string::npos);
    CHECK(text.find("null") != std::string::npos);  // infinite death
}

TEST_CASE("perseus-style text output") {
    PersistenceDiagram d;
    d.num_steps = 10;
    d.intervals = {{0, 0, 3}, {0, 0, static_cast<int>(kInfiniteDeath)}, {1, 2, 7}};
    std::ostringstream out;
    write_perseus(d, out);
    CHECK(out.str() ==
          "dim 0\n"
          "0 3\n"
          "0 -1\n"
          "dim 1\n"
          "2 7\n");
}

TEST_CASE("diagram intervals are sorted with infinite deaths last") {
    std::mt19937_64 eng(91);
    const Filtration f = rips_of(random_cloud(eng, 9, 2), 40, 2);
    const PersistenceDiagram d = reduce(boundary_matrix(f), f);
    for (std::size_t i = 1; i < d.intervals.size(); ++i) {
        const auto& p = d.intervals[i - 1];
        const auto& q = d.intervals[i];
        const bool ordered =
            p.dim < q.dim ||
            (p.dim == q.dim &&
             (p.birth < q.birth ||
              (p.birth == q.birth && (q.infinite() || (!p.infinite() && p.death <= q.death)))));
        CHECK(ordered);
    }
}
