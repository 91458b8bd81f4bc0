#pragma once

#include <cstdint>
#include <string>

#include "parambar/corpus.hpp"
#include "parambar/matrix.hpp"

namespace parambar {

using Seed = std::uint64_t;

enum class SynthModel { Bifurcation, BridgeLoop, PlainTree };

SynthModel synth_model_from_string(const std::string& name);
std::string synth_model_name(SynthModel model);

struct SynthFamilySpec {
    SynthModel model = SynthModel::PlainTree;
    int num_languages = 16;
    int num_params = 32;
    double flip_rate = 0.1;
    Seed seed = 1;
    double missing_rate = 0.0;
    std::string family_name;  // empty picks the model name
};

Matrix circle_cloud(int n, double radius, double noise_sd, Seed seed);

Dataset tree_family(const SynthFamilySpec& spec);

// Fixture presets with engineered-clean geometry; see fixtures/README.md.
Dataset make_ie_like(Seed seed);
Dataset make_nc_like(Seed seed);

}  // namespace parambar
