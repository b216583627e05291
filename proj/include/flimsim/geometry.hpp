#pragma once

#include <utility>
#include <vector>

#include "flimsim/vec3.hpp"

namespace flimsim {

// Photodiode on the UE plane. rel_position is relative to the UE point u;
// orientation is derived from the stored polar/azimuth angles.
struct PdElement {
    Vec3 rel_position;
    double polar_deg = 0.0;
    double azimuth_deg = 0.0;
    Vec3 orientation{0.0, 0.0, 1.0};
    double area_cm2 = 1.0;
    double fov_half_deg = 85.0;
};

// Downward-facing LED in the luminaire.
struct LedElement {
    Vec3 position;
    Vec3 orientation{0.0, 0.0, -1.0};
    double semi_angle_deg = 60.0;
};

enum class ReceiverKind { Square, SquarePerturbed };

struct SceneConfig {
    int n_t = 4;
    int n_r = 4;
    double led_separation_cm = 2.0;
    double h_lum_cm = 300.0;
    double h_ue_cm = 144.0;
    double pd_separation_cm = 2.0;
    ReceiverKind receiver_kind = ReceiverKind::Square;
    // (polar, azimuth) degrees per PD, used by SquarePerturbed
    std::vector<std::pair<double, double>> perturb_angles_deg;
    double semi_angle_deg = 60.0;
    double fov_half_deg = 85.0;
    double area_cm2 = 1.0;
    double ue_radius_cm = 0.0;
    double ue_angle_rad = 0.0;
};

struct Scene {
    std::vector<LedElement> leds;
    std::vector<PdElement> pds;
    Vec3 ue_position;
};

// Unit orientation vector [sin g cos b, sin g sin b, cos g] from polar angle g
// and azimuth angle b, both in degrees.
Vec3 orientation_vector(double polar_deg, double azimuth_deg);

// Places the luminaire grid, the PD grid around the UE point and returns the
// assembled scene. LEDs/PDs sit on k x k grids (k = sqrt(n)) with the given
// separations, centred on the luminaire axis / UE point, edges aligned with
// the x/y axes. Element order is row-major: index = iy*k + ix, y then x
// ascending. Deterministic: equal configs give bit-identical scenes.
Scene build_scene(const SceneConfig& config);

// Attocell radius sqrt(4^(1/(m+3)) - 1) * (h_lum - h_ue), the distance at
// which the maximum received optical power is halved.
double cell_radius(double h_lum_cm, double h_ue_cm, double m);

}  // namespace flimsim
