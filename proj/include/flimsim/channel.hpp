#pragma once

#include <Eigen/Dense>

#include "flimsim/geometry.hpp"

namespace flimsim {

struct LambertianParams {
    double m = 1.0;
    double semi_angle_deg = 60.0;
};

// Nr x Nt LoS DC gain matrix. entries(j, i) is the gain from LED i to PD j.
struct ChannelMatrix {
    Eigen::MatrixXd entries;

    int n_t() const { return static_cast<int>(entries.cols()); }
    int n_r() const { return static_cast<int>(entries.rows()); }
};

// Lambertian mode number m = -1 / log2(cos(semi_angle)). Requires the
// semi-angle of half power in (0, 90) degrees.
double lambertian_mode(double semi_angle_deg);

// LoS DC gain between one LED and one PD for a UE at ue_position. Zero when
// the PD faces away or the incidence angle exceeds the FoV half-angle (closed
// boundary: psi == fov passes). Always nonnegative.
double los_gain(const LedElement& led, const PdElement& pd, const Vec3& ue_position, double m);

// Assembles the full gain matrix for a scene; m is derived per LED from its
// semi-angle.
ChannelMatrix channel_matrix(const Scene& scene);

// 2-norm condition number in dB, 20*log10(s_max/s_min). Returns +infinity
// when the matrix is singular so grid sweeps can continue.
double condition_number_db(const Eigen::MatrixXd& h);
inline double condition_number_db(const ChannelMatrix& h) { return condition_number_db(h.entries); }

}  // namespace flimsim
