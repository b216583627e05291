#include "flimsim/channel.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>

#include "flimsim/errors.hpp"

namespace flimsim {

double lambertian_mode(double semi_angle_deg) {
    if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0))
        throw DomainError("semi-angle must lie in (0, 90) degrees, got " + std::to_string(semi_angle_deg));
    return -1.0 / std::log2(std::cos(semi_angle_deg * M_PI / 180.0));
}

double los_gain(const LedElement& led, const PdElement& pd, const Vec3& ue_position, double m) {
    if (m <= 0.0) throw DomainError("Lambertian mode must be positive");

    // distance vector from the PD to the LED
    const Vec3 d = led.position - ue_position - pd.rel_position;
    const double dist = d.norm();
    if (dist == 0.0) throw DegenerateGeometry("LED and PD coincide");

    // emission cosine term: angle between the LED normal and the PD direction
    const double emission = led.orientation.dot(-d);
    if (emission <= 0.0) return 0.0;

    const double incidence = pd.orientation.dot(d);
    if (incidence <= 0.0) return 0.0;  // PD faces away

    const double cos_psi = std::fmin(incidence / dist, 1.0);
    const double psi_deg = std::acos(cos_psi) * 180.0 / M_PI;
    if (psi_deg > pd.fov_half_deg) return 0.0;

    return (m + 1.0) * pd.area_cm2 / (2.0 * M_PI * std::pow(dist, m + 3.0)) * std::pow(emission, m) * incidence;
}

ChannelMatrix channel_matrix(const Scene& scene) {
    std::vector<double> modes;
    modes.reserve(scene.leds.size());
    for (const auto& led : scene.leds) modes.push_back(lambertian_mode(led.semi_angle_deg));

    ChannelMatrix h;
    h.entries.resize(static_cast<Eigen::Index>(scene.pds.size()), static_cast<Eigen::Index>(scene.leds.size()));
    for (std::size_t j = 0; j < scene.pds.size(); ++j)
        for (std::size_t i = 0; i < scene.leds.size(); ++i)
            h.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                los_gain(scene.leds[i], scene.pds[j], scene.ue_position, modes[i]);

    if (!h.entries.allFinite()) throw DomainError("channel matrix has non-finite entries");
    return h;
}

double condition_number_db(const Eigen::MatrixXd& h) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h);
    const auto& s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(smax / smin);
}

}  // namespace flimsim
