#pragma once

#include <string>
#include <vector>

#include "parambar/matrix.hpp"

namespace parambar {

// Orthonormal principal directions of a centered sample, sorted by
// descending explained variance. `components` stores one direction per row.
struct Projection {
    std::vector<double> mean;
    Matrix components;              // k x P, rows orthonormal
    std::vector<double> explained;  // per-component variance fractions, non-increasing
};

// Sample covariance (divisor N-1) eigendecomposition via cyclic Jacobi.
// Sign convention: each component's largest-magnitude entry is positive,
// ties broken by lowest index. Equal eigenvalues are ordered by the
// sign-fixed component's lexicographic order, so output is reproducible.
Projection fit_pca(const Matrix& m);

// Smallest k with cumulative explained variance >= target (always >= 1).
std::size_t components_for(const Projection& proj, double variance_target);

// Centers rows by proj.mean and projects onto the first k components.
Matrix project(const Matrix& m, const Projection& proj, double variance_target);

// Debug dump: {"mean": [...], "components": [[...]], "explained": [...]}.
std::string projection_to_json(const Projection& proj);

}  // namespace parambar
