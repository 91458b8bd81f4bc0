#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parambar/corpus.hpp"
#include "parambar/filtration.hpp"
#include "parambar/geometry.hpp"
#include "parambar/persistence.hpp"
#include "parambar/pipeline.hpp"
#include "parambar/synth.hpp"

namespace {

void add_selection_flags(CLI::App* cmd, parambar::SelectionSpec& sel) {
    cmd->add_option("--include-family", sel.include_families,
                    "Keep only these families (repeatable)");
    cmd->add_option("--include-subfamily", sel.include_subfamilies,
                    "Also keep these subfamilies (repeatable)");
    cmd->add_option("--exclude-family", sel.exclude_families,
                    "Drop these families (repeatable)");
    cmd->add_option("--exclude-subfamily", sel.exclude_subfamilies,
                    "Drop these subfamilies (repeatable)");
}

void apply_formats(const std::string& formats, parambar::AnalysisConfig& cfg) {
    cfg.format_txt = cfg.format_json = cfg.format_svg = false;
    std::stringstream ss(formats);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "txt")
            cfg.format_txt = true;
        else if (item == "json")
            cfg.format_json = true;
        else if (item == "svg")
            cfg.format_svg = true;
        else
            throw CLI::ValidationError("--format", "unknown format: " + item);
    }
    if (!cfg.format_txt && !cfg.format_json && !cfg.format_svg)
        throw CLI::ValidationError("--format", "no output format selected");
}

int run_analyze(const parambar::AnalysisConfig& cfg) {
    const parambar::RunReport report = parambar::run_analysis(cfg);
    std::cout << "run " << report.label.to_string() << "\n";
    std::cout << "counts: loaded " << report.counts.loaded << ", complete "
              << report.counts.after_completeness << ", selected "
              << report.counts.after_selection << ", analyzed "
              << report.counts.after_cluster_filter << "\n";
    std::cout << "pca components: " << report.pca_components << "\n";
    std::cout << "mean distance: " << report.mean_dist << ", step size: " << report.step_size
              << "\n";
    std::cout << "simplices: " << report.num_simplices << "\n";
    const auto persistent = parambar::persistent_intervals(report.diagram);
    std::cout << "intervals: " << report.diagram.intervals.size() << " ("
              << report.diagram.zero_length_dropped << " zero-length dropped), persistent: "
              << persistent.size() << "\n";
    for (const parambar::PersistenceInterval& iv : persistent) {
        std::cout << "  H" << iv.dim << " [" << iv.birth << ", ";
        if (iv.infinite())
            std::cout << "inf";
        else
            std::cout << iv.death;
        std::cout << ")\n";
    }
    for (const std::string& w : report.warnings) std::cout << "warning: " << w << "\n";
    for (const std::string& a : report.artifacts)
        std::cout << "wrote " << (report.config.out_dir / a).string() << "\n";
    return 0;
}

int run_census(const parambar::AnalysisConfig& cfg, const parambar::SweepConfig& sweep,
               const std::string& out_dir) {
    const std::string csv = parambar::run_sweep(cfg, sweep);
    if (out_dir.empty()) {
        std::cout << csv;
        return 0;
    }
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path =
        std::filesystem::path(out_dir) / (cfg.input.stem().string() + "_census.csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << csv;
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int run_synth(const parambar::SynthFamilySpec& spec, const std::string& preset,
              const std::string& out_dir) {
    parambar::Dataset ds;
    std::string name;
    if (preset == "ie-like") {
        ds = parambar::make_ie_like(spec.seed);
        name = "ie_like";
    } else if (preset == "nc-like") {
        ds = parambar::make_nc_like(spec.seed);
        name = "nc_like";
    } else {
        ds = parambar::tree_family(spec);
        name = spec.family_name.empty() ? parambar::synth_model_name(spec.model)
                                        : spec.family_name;
    }
    const std::string csv = parambar::dataset_to_csv(ds);
    if (out_dir.empty()) {
        std::cout << csv;
        return 0;
    }
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path = std::filesystem::path(out_dir) / (name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << csv;
    std::cout << "wrote " << path.string() << " (" << ds.size() << " records, "
              << ds.num_params() << " parameters)\n";
    return 0;
}

int run_oracle_check(int clouds, int steps, int max_dim, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    auto unit = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    int checked_steps = 0;
    for (int c = 0; c < clouds; ++c) {
        const int n = 4 + static_cast<int>(eng() % 7);
        const int ambient = 2 + static_cast<int>(eng() % 3);
        parambar::Matrix pts(static_cast<std::size_t>(n), static_cast<std::size_t>(ambient));
        for (std::size_t i = 0; i < pts.rows(); ++i)
            for (std::size_t j = 0; j < pts.cols(); ++j) pts.at(i, j) = unit();
        const parambar::DistanceMatrix dm = parambar::distance_matrix(pts);
        const parambar::FiltrationGrid grid = parambar::make_grid(dm, steps);
        const parambar::Filtration f = parambar::build_rips(dm, grid, max_dim);
        const parambar::BoundaryMatrix bm = parambar::boundary_matrix(f);
        const parambar::PersistenceDiagram plain =
            parambar::reduce(bm, f, parambar::ReductionMode::Plain);
        const parambar::PersistenceDiagram cleared =
            parambar::reduce(bm, f, parambar::ReductionMode::Clearing);
        if (!(plain == cleared)) {
            std::cerr << "oracle-check: clearing mismatch on cloud " << c << "\n";
            return 1;
        }
        const parambar::BettiProfile betti = parambar::betti_oracle(f);
        for (int t = 0; t <= grid.num_steps; ++t)
            for (int k = 0; k <= betti.max_dim; ++k) {
                if (parambar::intervals_alive(plain, k, t) != betti.at(t, k)) {
                    std::cerr << "oracle-check: cloud " << c << " step " << t << " dim " << k
                              << ": reduce says " << parambar::intervals_alive(plain, k, t)
                              << ", oracle says " << betti.at(t, k) << "\n";
                    return 1;
                }
                ++checked_steps;
            }
    }
    std::cout << "oracle-check: " << clouds << " clouds, " << checked_steps
              << " (step, dim) ranks compared, reduce matches the Betti oracle\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistent homology of binary-parameter language datasets"};
    app.require_subcommand(1);

    parambar::AnalysisConfig cfg;
    std::string formats = "txt,json,svg";
    std::string cluster_keep = "nontrivial";
    std::string out_dir = ".";
    std::string input;

    CLI::App* analyze = app.add_subcommand("analyze", "Run the pipeline, write barcodes");
    analyze->add_option("--input", input, "Corpus CSV")->required()->check(CLI::ExistingFile);
    analyze->add_option("--variance", cfg.variance_pct, "Percent variance kept by PCA");
    analyze->add_option("--completeness", cfg.completeness_pct, "Minimum percent complete");
    analyze->add_option("--steps", cfg.steps, "Number of filtration steps");
    analyze->add_option("--max-dim", cfg.max_dim, "Maximum simplex dimension (0-3)");
    analyze->add_option("--cluster-filter", cfg.cluster_filter_value,
                        "Cluster-filter radius in hundredths");
    analyze->add_option("--cluster-keep", cluster_keep, "nontrivial|largest")
        ->check(CLI::IsMember({"nontrivial", "largest"}));
    add_selection_flags(analyze, cfg.selection);
    analyze->add_option("--persistence-threshold", cfg.persistence_threshold,
                        "Persistent-interval length fraction");
    analyze->add_option("--format", formats, "Comma list of txt,json,svg");
    analyze->add_option("--out", out_dir, "Output directory");

    std::string census_out;
    parambar::SweepConfig sweep;
    CLI::App* census = app.add_subcommand("cluster-census", "Cluster counts over a radius sweep");
    census->add_option("--input", input, "Corpus CSV")->required()->check(CLI::ExistingFile);
    census->add_option("--variance", cfg.variance_pct, "Percent variance kept by PCA");
    census->add_option("--completeness", cfg.completeness_pct, "Minimum percent complete");
    add_selection_flags(census, cfg.selection);
    census->add_option("--radius-min", sweep.radius_min, "Smallest radius");
    census->add_option("--radius-max", sweep.radius_max,
                       "Largest radius (default: half the mean distance)");
    census->add_option("--num-radii", sweep.num_radii, "Sweep length");
    census->add_option("--out", census_out, "Output directory (default: stdout)");

    parambar::SynthFamilySpec spec;
    std::string model = "PlainTree";
    std::string preset;
    std::string synth_out;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic family corpus");
    synth->add_option("--model", model, "Bifurcation|BridgeLoop|PlainTree");
    synth->add_option("--preset", preset, "ie-like|nc-like fixture preset")
        ->check(CLI::IsMember({"ie-like", "nc-like"}));
    synth->add_option("--languages", spec.num_languages, "Number of records");
    synth->add_option("--params", spec.num_params, "Number of parameters");
    synth->add_option("--flip-rate", spec.flip_rate, "Per-parameter flip probability");
    synth->add_option("--missing-rate", spec.missing_rate, "Fraction masked to missing");
    synth->add_option("--family", spec.family_name, "Family tag (default: model name)");
    synth->add_option("--seed", spec.seed, "RNG seed");
    synth->add_option("--out", synth_out, "Output directory (default: stdout)");

    int clouds = 120;
    int oc_steps = 25;
    int oc_max_dim = 2;
    std::uint64_t oc_seed = 7;
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "Compare reduction against the independent Betti oracle");
    oracle->add_option("--clouds", clouds, "Number of random clouds");
    oracle->add_option("--steps", oc_steps, "Filtration steps per cloud");
    oracle->add_option("--max-dim", oc_max_dim, "Maximum simplex dimension");
    oracle->add_option("--seed", oc_seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            cfg.input = input;
            cfg.out_dir = out_dir;
            cfg.cluster_keep_largest = (cluster_keep == "largest");
            apply_formats(formats, cfg);
            return run_analyze(cfg);
        }
        if (*census) {
            cfg.input = input;
            return run_census(cfg, sweep, census_out);
        }
        if (*synth) {
            spec.model = parambar::synth_model_from_string(model);
            return run_synth(spec, preset, synth_out);
        }
        if (*oracle) return run_oracle_check(clouds, oc_steps, oc_max_dim, oc_seed);
    } catch (const std::exception& e) {
        std::cerr << "parambar: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
