#pragma once

#include <span>

#include "flimsim/channel.hpp"
#include "flimsim/codebook.hpp"

namespace flimsim {

// Power accounting for one (channel, codebook) pair. Received power comes in
// two flavours: the closed-form expression assuming independent codeword
// coordinates, and the exact empirical average of ||H s||^2 over the
// codebook. The simulator always normalizes with the empirical value.
struct PowerReport {
    double p_elec_received = 0.0;      // empirical, authoritative
    double p_elec_received_indep = 0.0;
    double p_elec_transmit = 0.0;      // mean ||s||^2 over the codebook, mA^2
    double eta_bpcu = 0.0;
    double eb_n0_db_received = 0.0;
    double eb_n0_db_transmit = 0.0;
};

// Gaussian tail probability Q(x), via the complementary error function.
double q_function(double x);

// Closed-form per-LED electrical second moment
// (1-nu)(I_L^2 + I_L(I_U-I_L) + (2M-1)/(6(M-1)) (I_U-I_L)^2). Defined for
// M >= 2; for M = 1 use the empirical column moment instead.
double symbol_second_moment(double nu, int pam_order, double i_lower, double i_upper);

// Received electrical power assuming pairwise-independent codeword
// coordinates, with per-column moments taken empirically over the codebook.
double received_electrical_power(const ChannelMatrix& h, const Codebook& cb);

// Exact empirical average of ||H s||^2 over the codebook.
double received_electrical_power_empirical(const ChannelMatrix& h, const Codebook& cb);

// Mean ||s||^2 over the codebook (transmit electrical power, mA^2).
double transmit_electrical_power(const Codebook& cb);

// SNR per bit power / (eta * n0); linear, use snr_db for decibels.
double snr_per_bit(double power, double eta_bpcu, double n0);
double snr_db(double snr_linear);

PowerReport power_report(const ChannelMatrix& h, const Codebook& cb, double n0);

// Q(||H(s_i - s_j)|| / (2 sigma_n))
double pairwise_error_probability(const ChannelMatrix& h, std::span<const double> s_i, std::span<const double> s_j,
                                  double sigma_n);

// Union bound on the bit error probability,
// 1/(C log2 C) sum_i sum_j d_H(i,j) PEP(s_i -> s_j).
double union_bound_bep(const ChannelMatrix& h, const Codebook& cb, double sigma_n);

}  // namespace flimsim
