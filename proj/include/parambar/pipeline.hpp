#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "parambar/barcode.hpp"
#include "parambar/corpus.hpp"
#include "parambar/persistence.hpp"

namespace parambar {

struct AnalysisConfig {
    std::filesystem::path input;
    int variance_pct = 100;    // (0,100]
    int completeness_pct = 0;  // [0,100]
    int steps = 100;
    int max_dim = 2;
    std::optional<int> cluster_filter_value;  // hundredths of a radius
    bool cluster_keep_largest = false;
    SelectionSpec selection;
    double persistence_threshold = kDefaultPersistenceThreshold;
    std::filesystem::path out_dir = ".";
    bool format_txt = true;
    bool format_json = true;
    bool format_svg = true;
    index_t simplex_budget = kDefaultSimplexBudget;  // env PARAMBAR_SIMPLEX_BUDGET wins
};

struct StageCounts {
    std::size_t loaded = 0;
    std::size_t after_completeness = 0;
    std::size_t after_selection = 0;
    std::size_t after_cluster_filter = 0;
};

struct RunReport {
    AnalysisConfig config;
    RunLabel label;
    StageCounts counts;
    std::size_t pca_components = 0;
    double mean_dist = 0.0;
    double step_size = 0.0;
    std::size_t num_simplices = 0;
    PersistenceDiagram diagram;
    std::vector<std::string> warnings;
    std::vector<std::string> artifacts;  // file names inside out_dir
};

std::string report_to_json(const RunReport& r);

RunLabel label_for(const AnalysisConfig& cfg);

// Full pipeline: load, completeness filter, family selection, imputation, PCA,
// distances, optional cluster filter, Rips filtration, reduction, rendering.
// Writes the requested barcode formats plus the run report JSON into out_dir.
RunReport run_analysis(const AnalysisConfig& cfg);

struct SweepConfig {
    double radius_min = 0.0;
    double radius_max = 0.0;  // <= 0 means half the mean pairwise distance
    int num_radii = 50;
};

// Cluster census over a radius sweep on the post-PCA cloud; returns CSV.
std::string run_sweep(const AnalysisConfig& cfg, const SweepConfig& sweep);

}  // namespace parambar
