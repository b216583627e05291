#include "flimsim/analysis.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "flimsim/errors.hpp"

namespace flimsim {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double symbol_second_moment(double nu, int pam_order, double i_lower, double i_upper) {
    if (nu < 0.0 || nu > 1.0) throw DomainError("zero probability must lie in [0, 1]");
    if (pam_order < 2)
        throw DomainError("the closed form needs M >= 2; use the empirical column moment for M = 1");
    const double delta = i_upper - i_lower;
    return (1.0 - nu) *
           (i_lower * i_lower + i_lower * delta + (2.0 * pam_order - 1.0) / (6.0 * (pam_order - 1.0)) * delta * delta);
}

namespace {

void check_dims(const ChannelMatrix& h, const Codebook& cb) {
    if (cb.n_t != h.n_t())
        throw ConfigMismatch("codebook n_t=" + std::to_string(cb.n_t) + " does not match channel n_t=" +
                             std::to_string(h.n_t()));
}

}  // namespace

double received_electrical_power(const ChannelMatrix& h, const Codebook& cb) {
    check_dims(h, cb);
    const auto c = static_cast<double>(cb.size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(cb.n_t);
    Eigen::VectorXd second = Eigen::VectorXd::Zero(cb.n_t);
    for (const auto& v : cb.vectors)
        for (int i = 0; i < cb.n_t; ++i) {
            mean(i) += v[static_cast<std::size_t>(i)];
            second(i) += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        }
    mean /= c;
    second /= c;

    double p = 0.0;
    for (int r = 0; r < h.n_r(); ++r) {
        for (int i = 0; i < cb.n_t; ++i) p += h.entries(r, i) * h.entries(r, i) * second(i);
        for (int k = 0; k < cb.n_t; ++k)
            for (int l = 0; l < cb.n_t; ++l)
                if (k != l) p += h.entries(r, k) * h.entries(r, l) * mean(k) * mean(l);
    }
    return p;
}

double received_electrical_power_empirical(const ChannelMatrix& h, const Codebook& cb) {
    check_dims(h, cb);
    double p = 0.0;
    for (const auto& v : cb.vectors)
        p += (h.entries * Eigen::Map<const Eigen::VectorXd>(v.data(), cb.n_t)).squaredNorm();
    return p / static_cast<double>(cb.size());
}

double transmit_electrical_power(const Codebook& cb) {
    double p = 0.0;
    for (const auto& v : cb.vectors)
        for (double x : v) p += x * x;
    return p / static_cast<double>(cb.size());
}

double snr_per_bit(double power, double eta_bpcu, double n0) {
    if (!(eta_bpcu > 0.0)) throw DomainError("spectral efficiency must be positive");
    if (!(n0 > 0.0)) throw DomainError("noise spectral density must be positive");
    return power / (eta_bpcu * n0);
}

double snr_db(double snr_linear) { return 10.0 * std::log10(snr_linear); }

PowerReport power_report(const ChannelMatrix& h, const Codebook& cb, double n0) {
    PowerReport rep;
    rep.p_elec_received = received_electrical_power_empirical(h, cb);
    rep.p_elec_received_indep = received_electrical_power(h, cb);
    rep.p_elec_transmit = transmit_electrical_power(cb);
    rep.eta_bpcu = static_cast<double>(cb.n_bits);
    rep.eb_n0_db_received = snr_db(snr_per_bit(rep.p_elec_received, rep.eta_bpcu, n0));
    rep.eb_n0_db_transmit = snr_db(snr_per_bit(rep.p_elec_transmit, rep.eta_bpcu, n0));
    return rep;
}

double pairwise_error_probability(const ChannelMatrix& h, std::span<const double> s_i, std::span<const double> s_j,
                                  double sigma_n) {
    if (!(sigma_n > 0.0)) throw DomainError("noise std must be positive");
    if (static_cast<int>(s_i.size()) != h.n_t() || static_cast<int>(s_j.size()) != h.n_t())
        throw ConfigMismatch("codeword length does not match channel n_t");
    Eigen::VectorXd diff(h.n_t());
    for (int i = 0; i < h.n_t(); ++i) diff(i) = s_i[static_cast<std::size_t>(i)] - s_j[static_cast<std::size_t>(i)];
    return q_function((h.entries * diff).norm() / (2.0 * sigma_n));
}

double union_bound_bep(const ChannelMatrix& h, const Codebook& cb, double sigma_n) {
    check_dims(h, cb);
    if (!(sigma_n > 0.0)) throw DomainError("noise std must be positive");
    const std::size_t c = cb.size();
    Eigen::MatrixXd hs(h.n_r(), static_cast<Eigen::Index>(c));
    for (std::size_t t = 0; t < c; ++t)
        hs.col(static_cast<Eigen::Index>(t)) = h.entries * Eigen::Map<const Eigen::VectorXd>(cb.vectors[t].data(), cb.n_t);
    double sum = 0.0;
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = i + 1; j < c; ++j) {
            const int dh = std::popcount(cb.labels[i] ^ cb.labels[j]);
            if (dh == 0) continue;
            const double pep =
                q_function((hs.col(static_cast<Eigen::Index>(i)) - hs.col(static_cast<Eigen::Index>(j))).norm() /
                           (2.0 * sigma_n));
            sum += 2.0 * dh * pep;  // PEP is symmetric, count both orders
        }
    return sum / (static_cast<double>(c) * cb.n_bits);
}

}  // namespace flimsim
