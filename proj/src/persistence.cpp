#include "parambar/persistence.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace parambar {

namespace {

std::uint64_t pack_vertices(const std::int32_t* v, int count) {
    std::uint64_t key = 0;
    for (int i = 0; i < count; ++i)
        key |= (static_cast<std::uint64_t>(v[i]) + 1) << (16 * i);
    return key;
}

}  // namespace

BoundaryMatrix boundary_matrix(const Filtration& f) {
    const std::size_t m = f.simplices.size();
    std::unordered_map<std::uint64_t, index_t> position;
    position.reserve(m * 2);
    for (std::size_t j = 0; j < m; ++j) {
        const Simplex& s = f.simplices[j];
        position.emplace(pack_vertices(s.v.data(), s.dim + 1), static_cast<index_t>(j));
    }

    BoundaryMatrix bm;
    bm.columns.resize(m);
    std::array<std::int32_t, 4> face{};
    for (std::size_t j = 0; j < m; ++j) {
        const Simplex& s = f.simplices[j];
        if (s.dim == 0) continue;
        auto& col = bm.columns[j];
        col.reserve(static_cast<std::size_t>(s.dim) + 1);
        for (int drop = 0; drop <= s.dim; ++drop) {
            int w = 0;
            for (int i = 0; i <= s.dim; ++i)
                if (i != drop) face[w++] = s.v[i];
            auto it = position.find(pack_vertices(face.data(), s.dim));
            if (it == position.end())
                throw std::logic_error("boundary_matrix: face not found in filtration");
            col.push_back(it->second);
        }
        std::sort(col.begin(), col.end());
    }
    return bm;
}

namespace {

struct IntervalOrder {
    bool operator()(const PersistenceInterval& a, const PersistenceInterval& b) const {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        const int da = a.infinite() ? std::numeric_limits<int>::max() : a.death;
        const int db = b.infinite() ? std::numeric_limits<int>::max() : b.death;
        return da < db;
    }
};

}  // namespace

PersistenceDiagram reduce(const BoundaryMatrix& bm, const Filtration& f, ReductionMode mode,
                          double persistence_threshold) {
    const std::size_t m = f.simplices.size();
    if (bm.columns.size() != m)
        throw std::invalid_argument("reduce: boundary matrix and filtration disagree");
    if (persistence_threshold <= 0.0 || persistence_threshold >= 1.0)
        throw std::invalid_argument("reduce: persistence threshold must lie in (0,1)");

    PersistenceDiagram d;
    d.num_steps = f.grid.num_steps;
    d.step_size = f.grid.step_size;
    d.persistence_threshold = persistence_threshold;

    std::vector<index_t> pivot_owner(m, -1);
    std::vector<std::vector<index_t>> reduced(m);
    std::vector<char> negative(m, 0);
    std::vector<char> cleared(m, 0);
    std::vector<index_t> scratch;

    auto reduce_column = [&](index_t j) {
        std::vector<index_t> col = bm.columns[static_cast<std::size_t>(j)];
        while (!col.empty()) {
            const index_t low = col.back();
            const index_t k = pivot_owner[static_cast<std::size_t>(low)];
            if (k < 0) break;
            const auto& other = reduced[static_cast<std::size_t>(k)];
            scratch.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch));
            col.swap(scratch);
        }
        if (col.empty()) return;
        const index_t low = col.back();
        pivot_owner[static_cast<std::size_t>(low)] = j;
        negative[static_cast<std::size_t>(j)] = 1;
        cleared[static_cast<std::size_t>(low)] = 1;
        const Simplex& creator = f.simplices[static_cast<std::size_t>(low)];
        const Simplex& killer = f.simplices[static_cast<std::size_t>(j)];
        if (creator.step == killer.step)
            ++d.zero_length_dropped;
        else
            d.intervals.push_back({creator.dim, creator.step, killer.step});
        reduced[static_cast<std::size_t>(j)] = std::move(col);
    };

    if (mode == ReductionMode::Plain) {
        for (std::size_t j = 0; j < m; ++j) reduce_column(static_cast<index_t>(j));
    } else {
        int top = 0;
        std::array<std::vector<index_t>, kMaxFiltrationDim + 1> by_dim;
        for (std::size_t j = 0; j < m; ++j) {
            const int dd = f.simplices[j].dim;
            top = std::max(top, dd);
            by_dim[static_cast<std::size_t>(dd)].push_back(static_cast<index_t>(j));
        }
        for (int dd = top; dd >= 1; --dd)
            for (index_t j : by_dim[static_cast<std::size_t>(dd)])
                if (!cleared[static_cast<std::size_t>(j)]) reduce_column(j);
    }

    for (std::size_t i = 0; i < m; ++i)
        if (!negative[i] && pivot_owner[i] < 0)
            d.intervals.push_back(
                {f.simplices[i].dim, f.simplices[i].step, static_cast<int>(kInfiniteDeath)});

    std::sort(d.intervals.begin(), d.intervals.end(), IntervalOrder{});
    return d;
}

namespace {

// Incremental column basis for rank tracking over Z2, bitset rows.
struct Z2Rank {
    std::size_t words = 0;
    std::unordered_map<int, std::vector<std::uint64_t>> basis;
    int rank = 0;

    static int top_bit(const std::vector<std::uint64_t>& col) {
        for (std::size_t w = col.size(); w-- > 0;)
            if (col[w]) return static_cast<int>(w * 64 + (63 - std::countl_zero(col[w])));
        return -1;
    }

    void add_column(std::vector<std::uint64_t> col) {
        for (;;) {
            const int p = top_bit(col);
            if (p < 0) return;
            auto it = basis.find(p);
            if (it == basis.end()) {
                basis.emplace(p, std::move(col));
                ++rank;
                return;
            }
            const auto& other = it->second;
            for (std::size_t w = 0; w < col.size(); ++w) col[w] ^= other[w];
        }
    }
};

}  // namespace

BettiProfile betti_oracle(const Filtration& f) {
    const std::size_t m = f.simplices.size();
    if (m > kBettiOracleMaxPositions)
        throw std::runtime_error("betti_oracle: filtration exceeds " +
                                 std::to_string(kBettiOracleMaxPositions) + " positions");

    int top = 0;
    for (const Simplex& s : f.simplices) top = std::max(top, static_cast<int>(s.dim));
    const int num_dims = top + 1;
    const int num_steps = f.grid.num_steps;

    std::vector<std::size_t> rows_per_dim(static_cast<std::size_t>(num_dims), 0);
    for (const Simplex& s : f.simplices) ++rows_per_dim[static_cast<std::size_t>(s.dim)];

    using Key = std::array<std::int32_t, 4>;
    std::vector<std::map<Key, int>> row_of(static_cast<std::size_t>(num_dims));
    std::vector<int> next_row(static_cast<std::size_t>(num_dims), 0);
    std::vector<Z2Rank> elim(static_cast<std::size_t>(num_dims));
    for (int k = 1; k < num_dims; ++k)
        elim[static_cast<std::size_t>(k)].words = (rows_per_dim[static_cast<std::size_t>(k - 1)] + 63) / 64;

    BettiProfile profile;
    profile.num_steps = num_steps;
    profile.max_dim = top;
    profile.betti.assign(static_cast<std::size_t>(num_steps) + 1,
                         std::vector<int>(static_cast<std::size_t>(num_dims), 0));

    std::vector<int> count(static_cast<std::size_t>(num_dims), 0);
    std::size_t pos = 0;
    for (int t = 0; t <= num_steps; ++t) {
        for (; pos < m && f.simplices[pos].step <= t; ++pos) {
            const Simplex& s = f.simplices[pos];
            const int k = s.dim;
            Key key{-1, -1, -1, -1};
            for (int i = 0; i <= k; ++i) key[static_cast<std::size_t>(i)] = s.v[static_cast<std::size_t>(i)];
            row_of[static_cast<std::size_t>(k)].emplace(key, next_row[static_cast<std::size_t>(k)]++);
            ++count[static_cast<std::size_t>(k)];
            if (k == 0) continue;
            std::vector<std::uint64_t> col(elim[static_cast<std::size_t>(k)].words, 0);
            for (int drop = 0; drop <= k; ++drop) {
                Key face{-1, -1, -1, -1};
                int w = 0;
                for (int i = 0; i <= k; ++i)
                    if (i != drop) face[static_cast<std::size_t>(w++)] = s.v[static_cast<std::size_t>(i)];
                auto it = row_of[static_cast<std::size_t>(k - 1)].find(face);
                if (it == row_of[static_cast<std::size_t>(k - 1)].end())
                    throw std::logic_error("betti_oracle: face missing from filtration prefix");
                const int r = it->second;
                col[static_cast<std::size_t>(r) / 64] ^= std::uint64_t{1} << (r % 64);
            }
            elim[static_cast<std::size_t>(k)].add_column(std::move(col));
        }
        for (int k = 0; k < num_dims; ++k) {
            const int rank_k = (k >= 1) ? elim[static_cast<std::size_t>(k)].rank : 0;
            const int rank_up = (k + 1 < num_dims) ? elim[static_cast<std::size_t>(k + 1)].rank : 0;
            profile.betti[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] =
                count[static_cast<std::size_t>(k)] - rank_k - rank_up;
        }
    }
    return profile;
}

bool interval_is_persistent(const PersistenceDiagram& d, const PersistenceInterval& iv) {
    const double bound = d.persistence_threshold * static_cast<double>(d.num_steps);
    return static_cast<double>(iv.length(d.num_steps)) >= bound - 1e-9;
}

std::vector<PersistenceInterval> persistent_intervals(const PersistenceDiagram& d) {
    std::vector<PersistenceInterval> out;
    for (const PersistenceInterval& iv : d.intervals)
        if (interval_is_persistent(d, iv)) out.push_back(iv);
    return out;
}

int intervals_alive(const PersistenceDiagram& d, int dim, int step) {
    int alive = 0;
    for (const PersistenceInterval& iv : d.intervals)
        if (iv.dim == dim && iv.birth <= step && (iv.infinite() || iv.death > step)) ++alive;
    return alive;
}

std::string diagram_to_json(const PersistenceDiagram& d) {
    nlohmann::json j;
    j["num_steps"] = d.num_steps;
    j["step_size"] = d.step_size;
    j["persistence_threshold"] = d.persistence_threshold;
    j["zero_length_dropped"] = d.zero_length_dropped;
    auto arr = nlohmann::json::array();
    for (const PersistenceInterval& iv : d.intervals) {
        nlohmann::json e;
        e["dim"] = iv.dim;
        e["birth"] = iv.birth;
        if (iv.infinite())
            e["death"] = nullptr;
        else
            e["death"] = iv.death;
        arr.push_back(std::move(e));
    }
    j["intervals"] = std::move(arr);
    return j.dump(2) + "\n";
}

PersistenceDiagram diagram_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    PersistenceDiagram d;
    d.num_steps = j.at("num_steps").get<int>();
    d.step_size = j.at("step_size").get<double>();
    d.persistence_threshold = j.value("persistence_threshold", kDefaultPersistenceThreshold);
    d.zero_length_dropped = j.value("zero_length_dropped", std::size_t{0});
    for (const auto& e : j.at("intervals")) {
        PersistenceInterval iv;
        iv.dim = e.at("dim").get<int>();
        iv.birth = e.at("birth").get<int>();
        iv.death = e.at("death").is_null() ? static_cast<int>(kInfiniteDeath) : e.at("death").get<int>();
        d.intervals.push_back(iv);
    }
    return d;
}

void write_perseus(const PersistenceDiagram& d, std::ostream& out) {
    int current = -1;
    for (const PersistenceInterval& iv : d.intervals) {
        if (iv.dim != current) {
            current = iv.dim;
            out << "dim " << current << '\n';
        }
        out << iv.birth << ' ' << (iv.infinite() ? -1 : iv.death) << '\n';
    }
}

}  // namespace parambar
