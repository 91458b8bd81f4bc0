#include "parambar/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace parambar {

namespace {

double unit_double(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Box-Muller; std::normal_distribution is not bit-stable across implementations.
std::pair<double, double> normal_pair(std::mt19937_64& eng) {
    double u1 = unit_double(eng);
    while (u1 <= 0.0) u1 = unit_double(eng);
    const double u2 = unit_double(eng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

std::uint64_t below(std::mt19937_64& eng, std::uint64_t n) {
    const std::uint64_t bound =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = eng();
    while (x >= bound) x = eng();
    return x % n;
}

std::string numbered(const std::string& prefix, int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "_%03d", i);
    return prefix + buf;
}

std::vector<std::string> param_names(int p) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "p%03d", j);
        names.emplace_back(buf);
    }
    return names;
}

void mask_missing(Dataset& ds, double missing_rate, std::mt19937_64& eng) {
    if (missing_rate <= 0.0) return;
    for (LanguageRecord& rec : ds.records)
        for (ParamValue& v : rec.params)
            if (unit_double(eng) < missing_rate) v = ParamValue::Missing;
}

void validate(const SynthFamilySpec& spec) {
    if (spec.num_languages < 4)
        throw std::invalid_argument("tree_family: num_languages must be >= 4");
    if (spec.num_params < 8)
        throw std::invalid_argument("tree_family: num_params must be >= 8");
    if (spec.flip_rate < 0.0 || spec.flip_rate >= 1.0)
        throw std::invalid_argument("tree_family: flip_rate must lie in [0,1)");
    if (spec.missing_rate < 0.0 || spec.missing_rate >= 1.0)
        throw std::invalid_argument("tree_family: missing_rate must lie in [0,1)");
}

Dataset plain_tree(const SynthFamilySpec& spec, const std::string& family,
                   std::mt19937_64& eng) {
    const int n = spec.num_languages;
    const int p = spec.num_params;
    std::vector<std::vector<ParamValue>> vecs(static_cast<std::size_t>(n));
    vecs[0].resize(static_cast<std::size_t>(p));
    for (ParamValue& v : vecs[0]) v = (eng() & 1) ? ParamValue::Plus : ParamValue::Minus;
    for (int i = 1; i < n; ++i) {
        vecs[static_cast<std::size_t>(i)] = vecs[static_cast<std::size_t>((i - 1) / 2)];
        for (ParamValue& v : vecs[static_cast<std::size_t>(i)])
            if (unit_double(eng) < spec.flip_rate)
                v = (v == ParamValue::Plus) ? ParamValue::Minus : ParamValue::Plus;
    }

    Dataset ds;
    ds.param_names = param_names(p);
    for (int i = 0; i < n; ++i) {
        int top = i;
        while (top > 2) top = (top - 1) / 2;
        const char* sub = (i == 0) ? "root" : (top == 1 ? "left" : "right");
        ds.records.push_back({numbered(family, i), family, sub,
                              std::move(vecs[static_cast<std::size_t>(i)])});
    }
    return ds;
}

Dataset bifurcation(const SynthFamilySpec& spec, const std::string& family,
                    std::mt19937_64& eng) {
    const int n = spec.num_languages;
    const int p = spec.num_params;
    // Planted circle: binarized samples of c + cos(theta)u + sin(theta)w, with the
    // 2-plane encoded as one phase per coordinate.
    std::vector<double> phase(static_cast<std::size_t>(p));
    for (double& ph : phase) ph = std::numbers::pi * unit_double(eng);
    const double rotation = 2.0 * std::numbers::pi * unit_double(eng);

    Dataset ds;
    ds.param_names = param_names(p);
    ds.records.push_back({numbered(family, 0), family, "root",
                          std::vector<ParamValue>(static_cast<std::size_t>(p), ParamValue::Minus)});
    const int m = n - 1;
    const char* arcs[4] = {"arc-a", "arc-b", "arc-c", "arc-d"};
    for (int t = 0; t < m; ++t) {
        const double theta = rotation + 2.0 * std::numbers::pi * t / m;
        std::vector<ParamValue> vec(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j)
            vec[static_cast<std::size_t>(j)] =
                std::cos(theta - phase[static_cast<std::size_t>(j)]) > 0.0 ? ParamValue::Plus
                                                                           : ParamValue::Minus;
        ds.records.push_back({numbered(family, t + 1), family, arcs[4 * t / m], std::move(vec)});
    }
    return ds;
}

Dataset bridge_loop(const SynthFamilySpec& spec, const std::string& family,
                    std::mt19937_64& eng) {
    const int n = spec.num_languages;
    const int p = spec.num_params;
    if (n % 2 != 0)
        throw std::invalid_argument("tree_family: BridgeLoop needs an even number of languages");
    const int a = n / 4;
    const int b = n / 2 - a;
    if (a < 2 || b < 2)
        throw std::invalid_argument("tree_family: BridgeLoop needs at least 8 languages");
    if (p < a + b)
        throw std::invalid_argument("tree_family: BridgeLoop needs num_params >= num_languages / 2");

    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) perm[static_cast<std::size_t>(j)] = j;
    for (int j = p - 1; j > 0; --j)
        std::swap(perm[static_cast<std::size_t>(j)],
                  perm[static_cast<std::size_t>(below(eng, static_cast<std::uint64_t>(j + 1)))]);

    // Boundary walk of the [0,a]x[0,b] lattice rectangle; coordinates are prefix
    // sets so squared distances are exactly L1 on the rectangle.
    std::vector<std::pair<int, int>> walk;
    walk.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x <= a; ++x) walk.emplace_back(x, 0);
    for (int y = 1; y <= b; ++y) walk.emplace_back(a, y);
    for (int x = a - 1; x >= 0; --x) walk.emplace_back(x, b);
    for (int y = b - 1; y >= 1; --y) walk.emplace_back(0, y);

    Dataset ds;
    ds.param_names = param_names(p);
    int idx = 0;
    for (auto [x, y] : walk) {
        std::vector<ParamValue> vec(static_cast<std::size_t>(p), ParamValue::Minus);
        for (int i = 0; i < x; ++i) vec[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = ParamValue::Plus;
        for (int i = 0; i < y; ++i)
            vec[static_cast<std::size_t>(perm[static_cast<std::size_t>(a + i)])] = ParamValue::Plus;
        const char* sub = "bridge";
        if (x == 0 && y == 0)
            sub = "root";
        else if (y == 0)
            sub = "branch-a";
        else if (x == 0)
            sub = "branch-b";
        ds.records.push_back({numbered(family, idx), family, sub, std::move(vec)});
        ++idx;
    }
    return ds;
}

}  // namespace

SynthModel synth_model_from_string(const std::string& name) {
    if (name == "Bifurcation" || name == "bifurcation") return SynthModel::Bifurcation;
    if (name == "BridgeLoop" || name == "bridge-loop" || name == "bridgeloop")
        return SynthModel::BridgeLoop;
    if (name == "PlainTree" || name == "plain-tree" || name == "plaintree")
        return SynthModel::PlainTree;
    throw std::invalid_argument("unknown synth model: " + name);
}

std::string synth_model_name(SynthModel model) {
    switch (model) {
        case SynthModel::Bifurcation: return "Bifurcation";
        case SynthModel::BridgeLoop: return "BridgeLoop";
        case SynthModel::PlainTree: return "PlainTree";
    }
    return "PlainTree";
}

Matrix circle_cloud(int n, double radius, double noise_sd, Seed seed) {
    if (n < 4) throw std::invalid_argument("circle_cloud: n must be >= 4");
    std::mt19937_64 eng(seed);
    Matrix m(static_cast<std::size_t>(n), 2);
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / n;
        double nx = 0.0, ny = 0.0;
        if (noise_sd > 0.0) {
            auto [g1, g2] = normal_pair(eng);
            nx = noise_sd * g1;
            ny = noise_sd * g2;
        }
        m.at(static_cast<std::size_t>(i), 0) = radius * std::cos(theta) + nx;
        m.at(static_cast<std::size_t>(i), 1) = radius * std::sin(theta) + ny;
    }
    return m;
}

Dataset tree_family(const SynthFamilySpec& spec) {
    validate(spec);
    const std::string family =
        spec.family_name.empty() ? synth_model_name(spec.model) : spec.family_name;
    std::mt19937_64 eng(spec.seed);
    Dataset ds;
    switch (spec.model) {
        case SynthModel::PlainTree: ds = plain_tree(spec, family, eng); break;
        case SynthModel::Bifurcation: ds = bifurcation(spec, family, eng); break;
        case SynthModel::BridgeLoop: ds = bridge_loop(spec, family, eng); break;
    }
    mask_missing(ds, spec.missing_rate, eng);
    return ds;
}

namespace {

void add_junk_records(Dataset& ds, int count, int set_coords, std::mt19937_64& eng) {
    const int p = static_cast<int>(ds.param_names.size());
    for (int i = 0; i < count; ++i) {
        std::vector<ParamValue> vec(static_cast<std::size_t>(p), ParamValue::Missing);
        for (int k = 0; k < set_coords; ++k) {
            const auto j = static_cast<std::size_t>(below(eng, static_cast<std::uint64_t>(p)));
            vec[j] = (eng() & 1) ? ParamValue::Plus : ParamValue::Minus;
        }
        char buf[8];
        std::snprintf(buf, sizeof(buf), "_%02d", i);
        ds.records.push_back({std::string("Noise") + buf, "Unsorted", "noise", std::move(vec)});
    }
}

}  // namespace

Dataset make_ie_like(Seed seed) {
    // 144 ring samples over 72 phased coordinates: consecutive samples differ in
    // exactly one coordinate, so squared distance equals circular arc length.
    const int ring_coords = 72;
    const int ring_n = 2 * ring_coords;
    const int blob_coords = 36;
    const int spokes = 19;
    const int p = ring_coords + blob_coords;

    Dataset ds;
    ds.param_names = param_names(p);
    const char* arcs[4] = {"arc-a", "arc-b", "arc-c", "arc-d"};
    for (int t = 0; t < ring_n; ++t) {
        std::vector<ParamValue> vec(static_cast<std::size_t>(p), ParamValue::Minus);
        for (int j = 0; j < ring_coords; ++j) {
            const double d = std::fabs((t + 0.5) - j);
            const double circ = std::min(d, ring_n - d);
            if (circ < ring_coords / 2.0) vec[static_cast<std::size_t>(j)] = ParamValue::Plus;
        }
        ds.records.push_back({numbered("Aquilic", t), "Aquilic", arcs[4 * t / ring_n], std::move(vec)});
    }
    for (int i = 0; i <= spokes; ++i) {
        std::vector<ParamValue> vec(static_cast<std::size_t>(p), ParamValue::Minus);
        for (int j = 0; j < blob_coords; ++j)
            vec[static_cast<std::size_t>(ring_coords + j)] = ParamValue::Plus;
        if (i > 0) vec[static_cast<std::size_t>(ring_coords + i - 1)] = ParamValue::Minus;
        ds.records.push_back({numbered("Boreal", i), "Boreal", "core", std::move(vec)});
    }
    std::mt19937_64 eng(seed);
    add_junk_records(ds, 4, 30, eng);
    return ds;
}

Dataset make_nc_like(Seed seed) {
    // Unit-flip staircase chain: squared distance is exactly |i - j|, a path metric.
    const int chain_n = 105;
    const int p = 108;

    Dataset ds;
    ds.param_names = param_names(p);
    for (int i = 0; i < chain_n; ++i) {
        std::vector<ParamValue> vec(static_cast<std::size_t>(p), ParamValue::Minus);
        for (int j = 0; j < i; ++j) vec[static_cast<std::size_t>(j)] = ParamValue::Plus;
        const char* sub = (i < 35) ? "seg-a" : (i < 70 ? "seg-b" : "seg-c");
        ds.records.push_back({numbered("Cadenic", i), "Cadenic", sub, std::move(vec)});
    }
    std::mt19937_64 eng(seed);
    add_junk_records(ds, 3, 30, eng);
    return ds;
}

}  // namespace parambar
