#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "flimsim/channel.hpp"
#include "flimsim/codebook.hpp"

namespace flimsim {

// Feed-forward linear MMSE filter F = Rs H^T (H Rs H^T + sigma_w^2 I)^-1.
struct MmseFilter {
    Eigen::MatrixXd f;    // Nt x Nr
    Eigen::MatrixXd r_s;  // Nt x Nt signal autocorrelation, mA^2
    double sigma_w2 = 0.0;
};

struct Decision {
    std::uint32_t vector_index = 0;
    std::uint32_t label = 0;         // bit-string value, width codebook.n_bits
    Eigen::VectorXd equalized;       // MMSE path only
    bool repaired = false;
};

// Joint ML detection: argmin over the codebook of ||y - H s||, ties broken
// toward the lowest codebook index.
Decision ml_detect(const Eigen::VectorXd& y, const ChannelMatrix& h, const Codebook& cb);

// Same detector with the noiseless codeword images cached, for hot loops.
class MlDetector {
public:
    MlDetector(const ChannelMatrix& h, const Codebook& cb);
    Decision detect(const Eigen::VectorXd& y) const;

private:
    const Codebook* cb_;
    Eigen::MatrixXd hs_;  // Nr x C
};

// sigma_n2 is the pre-filter AWGN variance; the post-filter noise is modelled
// white with sigma_w^2 = sigma_n2. Rs is the uniform average of s s^T over
// the codebook (set centered to subtract the mean instead).
MmseFilter mmse_filter(const ChannelMatrix& h, const Codebook& cb, double sigma_n2, bool centered = false);

// The per-LED decision alphabet of the element-wise detector: the PAM levels
// extended by the zero level for schemes that switch LEDs off.
std::vector<double> extended_alphabet(const Codebook& cb);

// Element-wise detection after MMSE filtering. Each coordinate of F y is
// quantized to the nearest alphabet element (ties to the lower level); if the
// quantized vector is not a codeword, the nearest codeword in signal space is
// substituted and the decision is flagged repaired.
class ElementwiseDetector {
public:
    ElementwiseDetector(MmseFilter filter, const Codebook& cb);

    void detect(const Eigen::VectorXd& y, Decision& out) const;
    Decision detect(const Eigen::VectorXd& y) const;

    const MmseFilter& filter() const { return filter_; }

private:
    MmseFilter filter_;
    const Codebook* cb_;
    std::vector<double> alphabet_;
    std::unordered_map<std::uint64_t, std::uint32_t> key_to_index_;

    std::uint64_t key_of(const std::vector<std::size_t>& digits) const;
};

Decision elementwise_detect(const Eigen::VectorXd& y, const MmseFilter& filter, const Codebook& cb);

// f_M^-1: the stored bit label of the decided codeword.
std::string inverse_map(const Decision& d, const Codebook& cb);

}  // namespace flimsim
