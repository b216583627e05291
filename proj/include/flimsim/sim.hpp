#pragma once

#include <cstdint>
#include <vector>

#include "flimsim/channel.hpp"
#include "flimsim/codebook.hpp"
#include "flimsim/geometry.hpp"

namespace flimsim {

struct DetectorSpec {
    enum class Kind { Ml, Mmse };
    Kind kind = Kind::Ml;
    bool centered_rs = false;  // subtract the codebook mean from Rs
};

// Monte Carlo run description. snr_grid_db is the transmit electrical Eb/N0
// in dB; the per-point noise variance is derived from the codebook's
// empirical transmit power. Noise streams are counter-based and keyed by
// (seed, snr index, symbol index), so results are bit-identical for any
// worker count and any n_symbols prefix.
struct SimRun {
    std::uint64_t seed = 1;
    std::int64_t n_symbols = 1'000'000;
    std::vector<double> snr_grid_db;
    DetectorSpec detector;
    const Codebook* codebook = nullptr;
    const ChannelMatrix* channel = nullptr;
    std::int64_t early_stop_errors = 0;  // stop a point after this many bit errors (0: never)
    int workers = 0;                     // 0: hardware concurrency
    std::int64_t first_symbol = 0;       // offset into the symbol counter space
};

struct AbepPoint {
    double eb_n0_db = 0.0;
    double abep = 0.0;
    std::int64_t bit_errors = 0;
    std::int64_t bits_sent = 0;
    double repair_rate = 0.0;
    std::int64_t symbol_errors = 0;
    std::int64_t symbols_sent = 0;
};

struct AbepCurve {
    std::vector<AbepPoint> points;
};

AbepCurve run_abep(const SimRun& run);

// Polar-grid condition-number sweep: r = 0..R_cell in radial steps, omega =
// 0..360 (exclusive) in angular steps. Rank-deficient points carry +infinity
// and are excluded from the mean/std, with a count.
struct CnMap {
    struct Sample {
        double r_cm = 0.0;
        double omega_deg = 0.0;
        double cn_db = 0.0;
    };
    std::vector<Sample> grid;
    double radial_step_cm = 2.5;
    double angular_step_deg = 1.0;
    double mean_db = 0.0;
    double std_db = 0.0;
    std::int64_t excluded = 0;
};

CnMap sweep_cn(const SceneConfig& scene_template, double radial_step_cm, double angular_step_deg, int workers = 0);

// Eb/N0 at which the curve crosses the target ABEP, by log-linear
// interpolation between the points straddling the first downward crossing.
// Zero-ABEP points are treated as 0.5/bits_sent for the interpolation.
// Returns NaN when the curve never reaches the target.
double crossing_db(const AbepCurve& curve, double target_abep);

}  // namespace flimsim
