#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "parambar/matrix.hpp"

namespace parambar {

// Symmetric pairwise Euclidean distances with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

DistanceMatrix distance_matrix(const Matrix& points);

// Mean over the n(n-1)/2 unordered distinct pairs.
double mean_distance(const DistanceMatrix& dm);

// Census of single-linkage clusters at a fixed sphere radius: points i, j
// share a cluster when their radius-r spheres overlap, d(i,j) <= 2r.
// Cluster ids are the minimum member index; non-trivial means size >= 2.
struct ClusterReport {
    double radius = 0.0;
    std::vector<std::int32_t> assignments;  // point index -> cluster id
    std::int32_t num_clusters = 0;
    std::int32_t num_nontrivial = 0;
    std::int32_t points_in_nontrivial = 0;
    std::map<std::int32_t, std::int32_t> size_histogram;  // cluster size -> count
};

ClusterReport clusters_at(const DistanceMatrix& dm, double radius);

// Indices of points in non-trivial clusters at the given radius, ascending.
// Errors when everything is a singleton.
std::vector<std::size_t> cluster_filter(const DistanceMatrix& dm, double radius);

// Alternative reading: keep only the largest cluster (ties broken by
// smallest member index).
std::vector<std::size_t> cluster_keep_largest(const DistanceMatrix& dm, double radius);

}  // namespace parambar
