#include "parambar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "parambar/kernels.hpp"

namespace parambar {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace

DistanceMatrix distance_matrix(const Matrix& points) {
    const std::size_t n = points.rows();
    if (n == 0) throw std::invalid_argument("distance_matrix: no points");
    DistanceMatrix dm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ri = points.row(i);
        for (std::size_t j = i + 1; j < n; ++j)
            dm.set(i, j, std::sqrt(kernels::dist2(ri.data(), points.row(j).data(), points.cols())));
    }
    return dm;
}

double mean_distance(const DistanceMatrix& dm) {
    const std::size_t n = dm.size();
    if (n < 2) throw std::runtime_error("mean_distance: need at least two points");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sum += dm.at(i, j);
    return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

ClusterReport clusters_at(const DistanceMatrix& dm, double radius) {
    if (radius < 0.0) throw std::invalid_argument("clusters_at: negative radius");
    const std::size_t n = dm.size();
    UnionFind uf(n);
    const double threshold = 2.0 * radius;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dm.at(i, j) <= threshold) uf.unite(i, j);

    ClusterReport report;
    report.radius = radius;
    report.assignments.resize(n);

    // Relabel components to their minimum member index.
    std::vector<std::int32_t> min_member(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = uf.find(i);
        if (min_member[root] < 0) min_member[root] = static_cast<std::int32_t>(i);
    }
    std::vector<std::int32_t> cluster_size(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t id = min_member[uf.find(i)];
        report.assignments[i] = id;
        ++cluster_size[id];
    }
    for (std::size_t id = 0; id < n; ++id) {
        if (cluster_size[id] == 0) continue;
        ++report.num_clusters;
        ++report.size_histogram[cluster_size[id]];
        if (cluster_size[id] >= 2) {
            ++report.num_nontrivial;
            report.points_in_nontrivial += cluster_size[id];
        }
    }
    return report;
}

std::vector<std::size_t> cluster_filter(const DistanceMatrix& dm, double radius) {
    const ClusterReport report = clusters_at(dm, radius);
    std::vector<std::int32_t> cluster_size(dm.size(), 0);
    for (std::int32_t id : report.assignments) ++cluster_size[id];
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < dm.size(); ++i)
        if (cluster_size[report.assignments[i]] >= 2) keep.push_back(i);
    if (keep.empty()) throw std::runtime_error("cluster filter removes all points");
    return keep;
}

std::vector<std::size_t> cluster_keep_largest(const DistanceMatrix& dm, double radius) {
    const ClusterReport report = clusters_at(dm, radius);
    std::vector<std::int32_t> cluster_size(dm.size(), 0);
    for (std::int32_t id : report.assignments) ++cluster_size[id];
    std::int32_t best_id = 0;
    for (std::size_t id = 1; id < dm.size(); ++id)
        if (cluster_size[id] > cluster_size[best_id]) best_id = static_cast<std::int32_t>(id);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < dm.size(); ++i)
        if (report.assignments[i] == best_id) keep.push_back(i);
    return keep;
}

}  // namespace parambar
