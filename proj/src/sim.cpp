#include "flimsim/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "flimsim/analysis.hpp"
#include "flimsim/detect.hpp"
#include "flimsim/errors.hpp"
#include "flimsim/rng.hpp"

namespace flimsim {

namespace {

int effective_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Tally {
    std::int64_t bit_errors = 0;
    std::int64_t symbol_errors = 0;
    std::int64_t repairs = 0;
};

// One worker's share of a batch. Every symbol draws its bits and its noise
// from a private counter stream, so the partitioning cannot change results.
template <typename DetectFn>
Tally simulate_range(const SimRun& run, std::size_t snr_index, std::int64_t begin, std::int64_t end, double sigma,
                     const Eigen::MatrixXd& hs, DetectFn&& detect) {
    const Codebook& cb = *run.codebook;
    const int n_r = run.channel->n_r();
    const int n_bits = cb.n_bits;
    Eigen::VectorXd y(n_r);
    Tally tally;
    for (std::int64_t k = begin; k < end; ++k) {
        CounterRng rng(run.seed, snr_index, static_cast<std::uint64_t>(run.first_symbol + k));
        const auto u = static_cast<std::uint32_t>(rng.next_u64() >> (64 - n_bits));
        const std::uint32_t t = cb.index_of_label[u];
        y = hs.col(t);
        for (int r = 0; r < n_r; ++r) y(r) += sigma * rng.next_gaussian();
        const auto [label, repaired] = detect(y);
        tally.bit_errors += std::popcount(label ^ u);
        tally.symbol_errors += label != u;
        tally.repairs += repaired;
    }
    return tally;
}

template <typename DetectFn>
AbepPoint run_point(const SimRun& run, std::size_t snr_index, double sigma, const Eigen::MatrixXd& hs,
                    DetectFn&& detect) {
    const int workers = effective_workers(run.workers);
    constexpr std::int64_t BATCH = 1 << 16;

    AbepPoint point;
    std::int64_t done = 0;
    while (done < run.n_symbols) {
        const std::int64_t batch = std::min<std::int64_t>(BATCH, run.n_symbols - done);
        std::vector<Tally> tallies(static_cast<std::size_t>(workers));
        if (workers == 1 || batch < 2 * workers) {
            tallies[0] = simulate_range(run, snr_index, done, done + batch, sigma, hs, detect);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w) {
                const std::int64_t lo = done + batch * w / workers;
                const std::int64_t hi = done + batch * (w + 1) / workers;
                pool.emplace_back([&, w, lo, hi] {
                    tallies[static_cast<std::size_t>(w)] =
                        simulate_range(run, snr_index, lo, hi, sigma, hs, detect);
                });
            }
            for (auto& th : pool) th.join();
        }
        for (const Tally& t : tallies) {
            point.bit_errors += t.bit_errors;
            point.symbol_errors += t.symbol_errors;
            point.repair_rate += static_cast<double>(t.repairs);  // raw count until the end
        }
        done += batch;
        if (run.early_stop_errors > 0 && point.bit_errors >= run.early_stop_errors) break;
    }
    point.symbols_sent = done;
    point.bits_sent = done * run.codebook->n_bits;
    point.abep = point.bits_sent > 0 ? static_cast<double>(point.bit_errors) / static_cast<double>(point.bits_sent)
                                     : 0.0;
    point.repair_rate = done > 0 ? point.repair_rate / static_cast<double>(done) : 0.0;
    return point;
}

}  // namespace

AbepCurve run_abep(const SimRun& run) {
    if (!run.codebook || !run.channel) throw ConfigMismatch("run needs a codebook and a channel");
    const Codebook& cb = *run.codebook;
    const ChannelMatrix& h = *run.channel;
    if (cb.n_t != h.n_t()) throw ConfigMismatch("codebook n_t does not match channel n_t");
    if (run.n_symbols < 1) throw ConfigMismatch("n_symbols must be >= 1");
    if (cb.n_bits < 1 || cb.n_bits > 32) throw ConfigMismatch("codebook carries an unusable bit width");

    const double p_tx = transmit_electrical_power(cb);
    const double eta = cb.n_bits;

    Eigen::MatrixXd hs(h.n_r(), static_cast<Eigen::Index>(cb.size()));
    for (std::size_t t = 0; t < cb.size(); ++t)
        hs.col(static_cast<Eigen::Index>(t)) = h.entries * Eigen::Map<const Eigen::VectorXd>(cb.vectors[t].data(), cb.n_t);

    AbepCurve curve;
    curve.points.reserve(run.snr_grid_db.size());
    for (std::size_t s = 0; s < run.snr_grid_db.size(); ++s) {
        const double ebn0 = std::pow(10.0, run.snr_grid_db[s] / 10.0);
        const double n0 = p_tx / (eta * ebn0);  // sigma_n^2 = N0 * B, B = 1
        const double sigma = std::sqrt(n0);

        AbepPoint point;
        if (run.detector.kind == DetectorSpec::Kind::Ml) {
            MlDetector det(h, cb);
            point = run_point(run, s, sigma, hs, [&](const Eigen::VectorXd& y) {
                const Decision d = det.detect(y);
                return std::pair<std::uint32_t, bool>(d.label, d.repaired);
            });
        } else {
            ElementwiseDetector det(mmse_filter(h, cb, n0, run.detector.centered_rs), cb);
            thread_local Decision scratch;
            point = run_point(run, s, sigma, hs, [&](const Eigen::VectorXd& y) {
                det.detect(y, scratch);
                return std::pair<std::uint32_t, bool>(scratch.label, scratch.repaired);
            });
        }
        point.eb_n0_db = run.snr_grid_db[s];
        curve.points.push_back(point);
    }
    return curve;
}

CnMap sweep_cn(const SceneConfig& scene_template, double radial_step_cm, double angular_step_deg, int workers) {
    if (!(radial_step_cm > 0.0) || !(angular_step_deg > 0.0)) throw DomainError("grid steps must be positive");

    const double m = lambertian_mode(scene_template.semi_angle_deg);
    const double r_cell = cell_radius(scene_template.h_lum_cm, scene_template.h_ue_cm, m);
    const auto n_radial = static_cast<std::int64_t>(std::floor(r_cell / radial_step_cm + 1e-9)) + 1;
    const auto n_angular = static_cast<std::int64_t>(std::ceil(360.0 / angular_step_deg - 1e-9));

    CnMap map;
    map.radial_step_cm = radial_step_cm;
    map.angular_step_deg = angular_step_deg;
    map.grid.resize(static_cast<std::size_t>(n_radial * n_angular));

    const auto work = [&](std::int64_t lo, std::int64_t hi) {
        SceneConfig cfg = scene_template;
        for (std::int64_t g = lo; g < hi; ++g) {
            const std::int64_t ir = g / n_angular;
            const std::int64_t ia = g % n_angular;
            cfg.ue_radius_cm = static_cast<double>(ir) * radial_step_cm;
            cfg.ue_angle_rad = static_cast<double>(ia) * angular_step_deg * M_PI / 180.0;
            auto& sample = map.grid[static_cast<std::size_t>(g)];
            sample.r_cm = cfg.ue_radius_cm;
            sample.omega_deg = static_cast<double>(ia) * angular_step_deg;
            sample.cn_db = condition_number_db(channel_matrix(build_scene(cfg)));
        }
    };

    const int n_workers = effective_workers(workers);
    const std::int64_t total = n_radial * n_angular;
    if (n_workers == 1 || total < 64) {
        work(0, total);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back(work, total * w / n_workers, total * (w + 1) / n_workers);
        for (auto& th : pool) th.join();
    }

    // reduce sequentially in grid order so the statistics are reproducible
    double sum = 0.0, sum2 = 0.0;
    std::int64_t n = 0;
    for (const auto& s : map.grid) {
        if (std::isfinite(s.cn_db)) {
            sum += s.cn_db;
            sum2 += s.cn_db * s.cn_db;
            ++n;
        } else {
            ++map.excluded;
        }
    }
    if (n > 0) {
        map.mean_db = sum / static_cast<double>(n);
        map.std_db = std::sqrt(std::max(0.0, sum2 / static_cast<double>(n) - map.mean_db * map.mean_db));
    }
    return map;
}

double crossing_db(const AbepCurve& curve, double target_abep) {
    const auto& pts = curve.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double a1 = pts[i].abep;
        double a2 = pts[i + 1].abep;
        if (a1 <= target_abep) continue;
        if (a2 == 0.0 && pts[i + 1].bits_sent > 0) a2 = 0.5 / static_cast<double>(pts[i + 1].bits_sent);
        if (a2 > target_abep || a2 <= 0.0) continue;
        const double x1 = pts[i].eb_n0_db, x2 = pts[i + 1].eb_n0_db;
        return x1 + (x2 - x1) * (std::log10(target_abep) - std::log10(a1)) / (std::log10(a2) - std::log10(a1));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace flimsim
