#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flimsim/codebook.hpp"
#include "flimsim/geometry.hpp"
#include "flimsim/sim.hpp"

namespace flimsim {

// One scheme to simulate. Channel-aware design (union-bound searches) uses a
// noise level derived from design_ref_ebn0_db at the run's channel.
struct SchemeConfig {
    Scheme scheme = Scheme::FLIM;
    int pam_order = 1;
    std::optional<int> n_active;  // required for gsm2
    double i_lower_ma = 500.0;
    double i_upper_ma = 800.0;
    SubsetStrategy subset = SubsetStrategy::MaxMinDistance;
    std::optional<LabelStrategy> labels;  // empty: scheme default
    double design_ref_ebn0_db = 170.0;
};

struct SimConfig {
    std::uint64_t seed = 1;
    std::int64_t n_symbols = 1'000'000;
    std::vector<double> snr_grid_db = {140, 145, 150, 155, 160, 165, 170, 175, 180};
    std::int64_t early_stop_errors = 0;
    int workers = 0;
};

struct OutputConfig {
    std::string dir = "out";
};

struct RunConfig {
    SceneConfig scene;
    std::vector<SchemeConfig> schemes;
    DetectorSpec detector;
    SimConfig sim;
    OutputConfig output;
};

// A config with every field at its default working point (the 4x4 attocell,
// one FLIM scheme at M = 1, ML detection).
RunConfig default_config();

// Reads the sectioned key=value config file and validates every cross-field
// invariant before any compute. Unknown sections or keys, malformed values
// and violated invariants raise ParseError / ValidationError with the line
// or field named.
RunConfig parse_config(const std::string& path);

// Parse from an in-memory string (the file loader calls this).
RunConfig parse_config_text(const std::string& text);

// Cross-field validation, also called by parse_config.
void validate(const RunConfig& cfg);

std::string subset_strategy_name(SubsetStrategy s);
std::string label_strategy_name(LabelStrategy s);

}  // namespace flimsim
