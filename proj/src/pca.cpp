#include "parambar/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "parambar/kernels.hpp"

namespace parambar {

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Rotations sweep
// the upper triangle in a fixed order until all off-diagonal mass is gone,
// so results do not depend on anything but the input values.
void jacobi_eigen(Matrix a, std::vector<double>& eigenvalues, Matrix& eigenvectors) {
    const std::size_t n = a.rows();
    eigenvectors = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) eigenvectors.at(i, i) = 1.0;

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (off <= 1e-30) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = eigenvectors.at(k, p);
                    const double vkq = eigenvectors.at(k, q);
                    eigenvectors.at(k, p) = c * vkp - s * vkq;
                    eigenvectors.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a.at(i, i);
}

void fix_sign(std::span<double> v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    if (v[best] < 0.0)
        for (double& x : v) x = -x;
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Projection fit_pca(const Matrix& m) {
    const std::size_t n = m.rows();
    const std::size_t p = m.cols();
    if (n < 2) throw std::runtime_error("fit_pca: insufficient rows");
    if (p == 0) throw std::runtime_error("fit_pca: matrix has no columns");

    Projection proj;
    proj.mean.assign(p, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        kernels::axpy(proj.mean.data(), 1.0, m.row(r).data(), p);
    for (double& x : proj.mean) x /= static_cast<double>(n);

    // Covariance as an accumulated outer product of centered rows.
    Matrix cov(p, p);
    std::vector<double> centered(p);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = m.row(r);
        for (std::size_t c = 0; c < p; ++c) centered[c] = row[c] - proj.mean[c];
        for (std::size_t i = 0; i < p; ++i)
            kernels::axpy(&cov.at(i, 0), centered[i], centered.data(), p);
    }
    const double inv = 1.0 / static_cast<double>(n - 1);
    for (double& x : cov.data()) x *= inv;

    std::vector<double> eigenvalues;
    Matrix vectors;  // columns are eigenvectors
    jacobi_eigen(std::move(cov), eigenvalues, vectors);

    // Extract components as rows, apply the sign convention, then order by
    // (descending eigenvalue, lexicographic component).
    struct Pair {
        double value;
        std::vector<double> component;
    };
    std::vector<Pair> pairs(p);
    for (std::size_t j = 0; j < p; ++j) {
        pairs[j].value = std::max(0.0, eigenvalues[j]);
        pairs[j].component.resize(p);
        for (std::size_t i = 0; i < p; ++i) pairs[j].component[i] = vectors.at(i, j);
        fix_sign(pairs[j].component);
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.value != b.value) return a.value > b.value;
        return lex_less(a.component, b.component);
    });

    const double total = std::accumulate(pairs.begin(), pairs.end(), 0.0,
                                         [](double s, const Pair& x) { return s + x.value; });
    proj.components = Matrix(p, p);
    proj.explained.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        proj.explained[j] = total > 0.0 ? pairs[j].value / total : 0.0;
        std::copy(pairs[j].component.begin(), pairs[j].component.end(),
                  proj.components.row(j).begin());
    }
    return proj;
}

std::size_t components_for(const Projection& proj, double variance_target) {
    if (variance_target <= 0.0 || variance_target > 1.0)
        throw std::invalid_argument("variance target must be in (0,1]");
    double cum = 0.0;
    for (std::size_t k = 0; k < proj.explained.size(); ++k) {
        cum += proj.explained[k];
        if (cum >= variance_target - 1e-9) return k + 1;
    }
    // All-zero explained variance (identical rows): a single component.
    return 1;
}

Matrix project(const Matrix& m, const Projection& proj, double variance_target) {
    if (m.cols() != proj.mean.size())
        throw std::invalid_argument("project: column count does not match projection");
    const std::size_t k = components_for(proj, variance_target);
    const std::size_t n = m.rows();
    const std::size_t p = m.cols();

    Matrix out(n, k);
    std::vector<double> centered(p);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = m.row(r);
        for (std::size_t c = 0; c < p; ++c) centered[c] = row[c] - proj.mean[c];
        for (std::size_t j = 0; j < k; ++j)
            out.at(r, j) = kernels::dot(centered.data(), proj.components.row(j).data(), p);
    }
    return out;
}

std::string projection_to_json(const Projection& proj) {
    nlohmann::json j;
    j["mean"] = proj.mean;
    auto& comps = j["components"] = nlohmann::json::array();
    for (std::size_t r = 0; r < proj.components.rows(); ++r) {
        const auto row = proj.components.row(r);
        comps.push_back(std::vector<double>(row.begin(), row.end()));
    }
    j["explained"] = proj.explained;
    return j.dump(2);
}

}  // namespace parambar
