#include "parambar/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "parambar/filtration.hpp"
#include "parambar/geometry.hpp"
#include "parambar/pca.hpp"

namespace parambar {

namespace {

[[noreturn]] void stage_fail(const char* stage, const std::exception& e) {
    throw std::runtime_error(std::string(stage) + ": " + e.what());
}

void validate(const AnalysisConfig& cfg) {
    if (cfg.variance_pct <= 0 || cfg.variance_pct > 100)
        throw std::runtime_error("config: variance_pct must lie in (0,100]");
    if (cfg.completeness_pct < 0 || cfg.completeness_pct > 100)
        throw std::runtime_error("config: completeness_pct must lie in [0,100]");
    if (cfg.steps < 1) throw std::runtime_error("config: steps must be >= 1");
    if (cfg.max_dim < 0 || cfg.max_dim > kMaxFiltrationDim)
        throw std::runtime_error("config: max_dim must lie in [0,3]");
    if (cfg.cluster_filter_value && *cfg.cluster_filter_value < 0)
        throw std::runtime_error("config: cluster filter value must be >= 0");
    if (cfg.persistence_threshold <= 0.0 || cfg.persistence_threshold >= 1.0)
        throw std::runtime_error("config: persistence threshold must lie in (0,1)");
}

index_t effective_budget(const AnalysisConfig& cfg) {
    if (const char* env = std::getenv("PARAMBAR_SIMPLEX_BUDGET")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0)
            throw std::runtime_error("config: PARAMBAR_SIMPLEX_BUDGET must be a positive integer");
        return static_cast<index_t>(v);
    }
    return cfg.simplex_budget;
}

Matrix rows_subset(const Matrix& m, const std::vector<std::size_t>& keep) {
    Matrix out(keep.size(), m.cols());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(keep[i], j);
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("artifacts: cannot write " + path.string());
    out << content;
}

nlohmann::json summarize_diagram(const PersistenceDiagram& d) {
    std::map<int, int> totals;
    std::map<int, int> persistent;
    for (const PersistenceInterval& iv : d.intervals) {
        ++totals[iv.dim];
        if (interval_is_persistent(d, iv)) ++persistent[iv.dim];
    }
    nlohmann::json j;
    j["zero_length_dropped"] = d.zero_length_dropped;
    auto to_obj = [](const std::map<int, int>& m) {
        nlohmann::json o = nlohmann::json::object();
        for (auto [dim, count] : m) o[std::to_string(dim)] = count;
        return o;
    };
    j["intervals_per_dim"] = to_obj(totals);
    j["persistent_per_dim"] = to_obj(persistent);
    return j;
}

struct PreparedCloud {
    Dataset filtered;
    Matrix projected;
    std::size_t pca_components = 0;
    StageCounts counts;
    std::vector<std::string> warnings;
};

// Shared front half of the pipeline: everything up to (and excluding) the
// cluster filter.
PreparedCloud prepare_cloud(const AnalysisConfig& cfg) {
    PreparedCloud out;

    Dataset ds;
    try {
        ds = load_dataset(cfg.input);
    } catch (const std::exception& e) {
        stage_fail("load", e);
    }
    out.counts.loaded = ds.size();

    try {
        ds = filter_complete(ds, cfg.completeness_pct / 100.0);
    } catch (const std::exception& e) {
        stage_fail("completeness filter", e);
    }
    out.counts.after_completeness = ds.size();

    try {
        SelectionResult sel = select(ds, cfg.selection);
        ds = std::move(sel.dataset);
        out.warnings = std::move(sel.warnings);
        if (ds.records.empty()) throw std::runtime_error("selection removed all records");
    } catch (const std::exception& e) {
        stage_fail("selection", e);
    }
    out.counts.after_selection = ds.size();

    Matrix imputed;
    try {
        imputed = impute(ds);
    } catch (const std::exception& e) {
        stage_fail("imputation", e);
    }

    try {
        const Projection proj = fit_pca(imputed);
        const double target = cfg.variance_pct / 100.0;
        out.pca_components = components_for(proj, target);
        out.projected = project(imputed, proj, target);
    } catch (const std::exception& e) {
        stage_fail("pca", e);
    }

    out.filtered = std::move(ds);
    return out;
}

}  // namespace

RunLabel label_for(const AnalysisConfig& cfg) {
    RunLabel label;
    label.variance_index = cfg.variance_pct / 10;
    label.completeness_index = cfg.completeness_pct / 10;
    label.steps = cfg.steps;
    label.cluster_value = cfg.cluster_filter_value;
    return label;
}

std::string report_to_json(const RunReport& r) {
    nlohmann::json j;
    nlohmann::json cfg;
    cfg["input"] = r.config.input.string();
    cfg["variance_pct"] = r.config.variance_pct;
    cfg["completeness_pct"] = r.config.completeness_pct;
    cfg["steps"] = r.config.steps;
    cfg["max_dim"] = r.config.max_dim;
    if (r.config.cluster_filter_value)
        cfg["cluster_filter"] = *r.config.cluster_filter_value;
    else
        cfg["cluster_filter"] = nullptr;
    cfg["cluster_keep"] = r.config.cluster_keep_largest ? "largest" : "nontrivial";
    cfg["include_family"] = r.config.selection.include_families;
    cfg["include_subfamily"] = r.config.selection.include_subfamilies;
    cfg["exclude_family"] = r.config.selection.exclude_families;
    cfg["exclude_subfamily"] = r.config.selection.exclude_subfamilies;
    cfg["persistence_threshold"] = r.config.persistence_threshold;
    j["config"] = std::move(cfg);
    j["label"] = r.label.to_string();
    nlohmann::json counts;
    counts["loaded"] = r.counts.loaded;
    counts["after_completeness_filter"] = r.counts.after_completeness;
    counts["after_selection"] = r.counts.after_selection;
    counts["after_cluster_filter"] = r.counts.after_cluster_filter;
    j["counts"] = std::move(counts);
    j["pca_components"] = r.pca_components;
    j["mean_distance"] = r.mean_dist;
    j["step_size"] = r.step_size;
    j["num_simplices"] = r.num_simplices;
    j["diagram"] = summarize_diagram(r.diagram);
    j["warnings"] = r.warnings;
    j["artifacts"] = r.artifacts;
    return j.dump(2) + "\n";
}

RunReport run_analysis(const AnalysisConfig& cfg) {
    validate(cfg);
    const index_t budget = effective_budget(cfg);

    RunReport report;
    report.config = cfg;
    report.label = label_for(cfg);

    PreparedCloud cloud = prepare_cloud(cfg);
    report.counts = cloud.counts;
    report.pca_components = cloud.pca_components;
    report.warnings = std::move(cloud.warnings);

    DistanceMatrix dm;
    try {
        dm = distance_matrix(cloud.projected);
        if (cfg.cluster_filter_value) {
            const double radius = *cfg.cluster_filter_value / 100.0;
            const std::vector<std::size_t> keep =
                cfg.cluster_keep_largest ? cluster_keep_largest(dm, radius)
                                         : cluster_filter(dm, radius);
            cloud.projected = rows_subset(cloud.projected, keep);
            dm = distance_matrix(cloud.projected);
        }
    } catch (const std::exception& e) {
        stage_fail("cluster filter", e);
    }
    report.counts.after_cluster_filter = dm.size();

    Filtration filtration;
    try {
        const FiltrationGrid grid = make_grid(dm, cfg.steps);
        report.mean_dist = mean_distance(dm);
        report.step_size = grid.step_size;
        filtration = build_rips(dm, grid, cfg.max_dim, budget);
    } catch (const std::exception& e) {
        stage_fail("filtration", e);
    }
    report.num_simplices = filtration.simplices.size();

    try {
        const BoundaryMatrix bm = boundary_matrix(filtration);
        report.diagram = reduce(bm, filtration, ReductionMode::Clearing,
                                cfg.persistence_threshold);
    } catch (const std::exception& e) {
        stage_fail("reduction", e);
    }

    try {
        std::filesystem::create_directories(cfg.out_dir);
        const std::string stem = cfg.input.stem().string();
        const std::string tag = report.label.file_tag();
        const std::string base = stem + "_" + tag;
        if (cfg.format_txt) {
            write_file(cfg.out_dir / (base + ".txt"), render_text(report.diagram, report.label));
            report.artifacts.push_back(base + ".txt");
        }
        if (cfg.format_json) {
            write_file(cfg.out_dir / (base + ".json"), diagram_to_json(report.diagram));
            report.artifacts.push_back(base + ".json");
        }
        if (cfg.format_svg) {
            write_file(cfg.out_dir / (base + ".svg"), render_svg(report.diagram, report.label));
            report.artifacts.push_back(base + ".svg");
        }
        report.artifacts.push_back(base + ".report.json");
        write_file(cfg.out_dir / (base + ".report.json"), report_to_json(report));
    } catch (const std::exception& e) {
        stage_fail("artifacts", e);
    }
    return report;
}

std::string run_sweep(const AnalysisConfig& cfg, const SweepConfig& sweep) {
    validate(cfg);
    if (sweep.num_radii < 1) throw std::runtime_error("config: num_radii must be >= 1");
    if (sweep.radius_min < 0.0) throw std::runtime_error("config: radius_min must be >= 0");

    const PreparedCloud cloud = prepare_cloud(cfg);
    DistanceMatrix dm;
    try {
        dm = distance_matrix(cloud.projected);
    } catch (const std::exception& e) {
        stage_fail("distances", e);
    }

    double radius_max = sweep.radius_max;
    if (radius_max <= 0.0) radius_max = mean_distance(dm) / 2.0;
    if (radius_max < sweep.radius_min)
        throw std::runtime_error("config: radius_max must be >= radius_min");

    std::string csv = "radius,num_clusters,num_nontrivial,points_in_nontrivial\n";
    for (int i = 0; i < sweep.num_radii; ++i) {
        const double r =
            sweep.num_radii == 1
                ? sweep.radius_min
                : sweep.radius_min +
                      (radius_max - sweep.radius_min) * i / (sweep.num_radii - 1);
        const ClusterReport rep = clusters_at(dm, r);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.9g,%d,%d,%d\n", r, rep.num_clusters,
                      rep.num_nontrivial, rep.points_in_nontrivial);
        csv += buf;
    }
    return csv;
}

}  // namespace parambar
