#include "flimsim/geometry.hpp"

#include <cmath>
#include <string>

#include "flimsim/errors.hpp"

namespace flimsim {

namespace {

constexpr double DEG = M_PI / 180.0;

// side length k of the square grid holding n elements
int grid_side(int n, const char* what) {
    if (n < 1) throw ValidationError(std::string(what) + " must be positive");
    const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (k * k != n)
        throw ValidationError(std::string(what) + " must be a perfect square for the square-grid layout, got " +
                              std::to_string(n));
    return k;
}

}  // namespace

Vec3 orientation_vector(double polar_deg, double azimuth_deg) {
    const double g = polar_deg * DEG;
    const double b = azimuth_deg * DEG;
    return {std::sin(g) * std::cos(b), std::sin(g) * std::sin(b), std::cos(g)};
}

Scene build_scene(const SceneConfig& config) {
    const int kt = grid_side(config.n_t, "n_t");
    const int kr = grid_side(config.n_r, "n_r");

    if (config.receiver_kind == ReceiverKind::SquarePerturbed &&
        static_cast<int>(config.perturb_angles_deg.size()) != config.n_r) {
        throw AngleListMismatch("perturb_angles_deg has " + std::to_string(config.perturb_angles_deg.size()) +
                                " entries for n_r=" + std::to_string(config.n_r));
    }

    Scene scene;
    scene.ue_position = {config.ue_radius_cm * std::cos(config.ue_angle_rad),
                         config.ue_radius_cm * std::sin(config.ue_angle_rad), config.h_ue_cm};

    scene.leds.reserve(config.n_t);
    for (int iy = 0; iy < kt; ++iy) {
        for (int ix = 0; ix < kt; ++ix) {
            LedElement led;
            led.position = {(ix - (kt - 1) / 2.0) * config.led_separation_cm,
                            (iy - (kt - 1) / 2.0) * config.led_separation_cm, config.h_lum_cm};
            led.orientation = {0.0, 0.0, -1.0};
            led.semi_angle_deg = config.semi_angle_deg;
            scene.leds.push_back(led);
        }
    }

    scene.pds.reserve(config.n_r);
    for (int iy = 0; iy < kr; ++iy) {
        for (int ix = 0; ix < kr; ++ix) {
            const int j = iy * kr + ix;
            PdElement pd;
            pd.rel_position = {(ix - (kr - 1) / 2.0) * config.pd_separation_cm,
                               (iy - (kr - 1) / 2.0) * config.pd_separation_cm, 0.0};
            if (config.receiver_kind == ReceiverKind::SquarePerturbed) {
                pd.polar_deg = config.perturb_angles_deg[j].first;
                pd.azimuth_deg = config.perturb_angles_deg[j].second;
            }
            pd.orientation = orientation_vector(pd.polar_deg, pd.azimuth_deg);
            pd.area_cm2 = config.area_cm2;
            pd.fov_half_deg = config.fov_half_deg;
            scene.pds.push_back(pd);
        }
    }
    return scene;
}

double cell_radius(double h_lum_cm, double h_ue_cm, double m) {
    if (m <= 0.0) throw DomainError("Lambertian mode must be positive, got " + std::to_string(m));
    if (h_lum_cm < h_ue_cm) throw DomainError("luminaire must not be below the UE plane");
    return std::sqrt(std::pow(4.0, 1.0 / (m + 3.0)) - 1.0) * (h_lum_cm - h_ue_cm);
}

}  // namespace flimsim
