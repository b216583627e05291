#include "flimsim/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flimsim/errors.hpp"

namespace flimsim {

namespace {

void check_dims(Eigen::Index y_size, const ChannelMatrix& h, const Codebook& cb) {
    if (y_size != h.entries.rows())
        throw ConfigMismatch("received vector length " + std::to_string(y_size) + " does not match n_r=" +
                             std::to_string(h.n_r()));
    if (cb.n_t != h.n_t())
        throw ConfigMismatch("codebook n_t=" + std::to_string(cb.n_t) + " does not match channel n_t=" +
                             std::to_string(h.n_t()));
}

Eigen::MatrixXd codeword_images(const ChannelMatrix& h, const Codebook& cb) {
    Eigen::MatrixXd hs(h.entries.rows(), static_cast<Eigen::Index>(cb.size()));
    for (std::size_t t = 0; t < cb.size(); ++t)
        hs.col(static_cast<Eigen::Index>(t)) =
            h.entries * Eigen::Map<const Eigen::VectorXd>(cb.vectors[t].data(), cb.n_t);
    return hs;
}

std::uint32_t nearest_codeword(const std::vector<std::vector<double>>& vectors, const std::vector<double>& q) {
    std::uint32_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < vectors.size(); ++t) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double d = vectors[t][i] - q[i];
            d2 += d * d;
        }
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<std::uint32_t>(t);
        }
    }
    return best;
}

}  // namespace

MlDetector::MlDetector(const ChannelMatrix& h, const Codebook& cb) : cb_(&cb), hs_(codeword_images(h, cb)) {
    if (cb.n_t != h.n_t())
        throw ConfigMismatch("codebook n_t=" + std::to_string(cb.n_t) + " does not match channel n_t=" +
                             std::to_string(h.n_t()));
}

Decision MlDetector::detect(const Eigen::VectorXd& y) const {
    if (y.size() != hs_.rows()) throw ConfigMismatch("received vector length does not match n_r");
    std::uint32_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < hs_.cols(); ++t) {
        const double d2 = (y - hs_.col(t)).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<std::uint32_t>(t);
        }
    }
    Decision d;
    d.vector_index = best;
    d.label = cb_->labels[best];
    return d;
}

Decision ml_detect(const Eigen::VectorXd& y, const ChannelMatrix& h, const Codebook& cb) {
    check_dims(y.size(), h, cb);
    return MlDetector(h, cb).detect(y);
}

MmseFilter mmse_filter(const ChannelMatrix& h, const Codebook& cb, double sigma_n2, bool centered) {
    if (cb.n_t != h.n_t()) throw ConfigMismatch("codebook n_t does not match channel n_t");
    if (sigma_n2 < 0.0) throw DomainError("noise variance must be nonnegative");

    const auto c = static_cast<double>(cb.size());
    Eigen::MatrixXd s(h.n_t(), static_cast<Eigen::Index>(cb.size()));
    for (std::size_t t = 0; t < cb.size(); ++t)
        s.col(static_cast<Eigen::Index>(t)) = Eigen::Map<const Eigen::VectorXd>(cb.vectors[t].data(), cb.n_t);

    MmseFilter out;
    out.sigma_w2 = sigma_n2;
    out.r_s = s * s.transpose() / c;
    if (centered) {
        const Eigen::VectorXd mean = s.rowwise().mean();
        out.r_s -= mean * mean.transpose();
    }

    Eigen::MatrixXd a = h.entries * out.r_s * h.entries.transpose();
    a.diagonal().array() += sigma_n2;
    if (sigma_n2 == 0.0) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (!lu.isInvertible())
            throw SingularSystem("H Rs H^T is rank deficient and no noise regularizes the inverse");
        out.f = lu.solve(h.entries * out.r_s).transpose();
    } else {
        out.f = a.ldlt().solve(h.entries * out.r_s).transpose();
    }
    return out;
}

std::vector<double> extended_alphabet(const Codebook& cb) {
    const PamAlphabet a = pam_alphabet(cb.pam_order, cb.i_lower_ma, cb.i_upper_ma);
    std::vector<double> alphabet;
    if (cb.scheme != Scheme::SMX) alphabet.push_back(cb.zero_level_ma);
    alphabet.insert(alphabet.end(), a.levels.begin(), a.levels.end());
    std::sort(alphabet.begin(), alphabet.end());
    return alphabet;
}

ElementwiseDetector::ElementwiseDetector(MmseFilter filter, const Codebook& cb)
    : filter_(std::move(filter)), cb_(&cb), alphabet_(extended_alphabet(cb)) {
    // index codewords by their per-coordinate alphabet digits
    std::vector<std::size_t> digits(static_cast<std::size_t>(cb.n_t));
    for (std::size_t t = 0; t < cb.size(); ++t) {
        bool ok = true;
        for (int i = 0; i < cb.n_t; ++i) {
            const auto it = std::find(alphabet_.begin(), alphabet_.end(), cb.vectors[t][static_cast<std::size_t>(i)]);
            if (it == alphabet_.end()) {
                ok = false;
                break;
            }
            digits[static_cast<std::size_t>(i)] = static_cast<std::size_t>(it - alphabet_.begin());
        }
        if (!ok) throw ConfigMismatch("codeword entries do not lie in the element-wise decision alphabet");
        key_to_index_.emplace(key_of(digits), static_cast<std::uint32_t>(t));
    }
}

std::uint64_t ElementwiseDetector::key_of(const std::vector<std::size_t>& digits) const {
    std::uint64_t key = 0;
    for (std::size_t d : digits) key = key * alphabet_.size() + d;
    return key;
}

void ElementwiseDetector::detect(const Eigen::VectorXd& y, Decision& out) const {
    if (y.size() != filter_.f.cols()) throw ConfigMismatch("received vector length does not match the filter");
    out.equalized.noalias() = filter_.f * y;

    std::vector<std::size_t> digits(static_cast<std::size_t>(out.equalized.size()));
    std::vector<double> q(static_cast<std::size_t>(out.equalized.size()));
    for (Eigen::Index i = 0; i < out.equalized.size(); ++i) {
        std::size_t best = 0;
        double best_err = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < alphabet_.size(); ++a) {
            const double err = std::abs(out.equalized(i) - alphabet_[a]);
            if (err < best_err) {  // ascending scan keeps the lower level on ties
                best_err = err;
                best = a;
            }
        }
        digits[static_cast<std::size_t>(i)] = best;
        q[static_cast<std::size_t>(i)] = alphabet_[best];
    }

    const auto it = key_to_index_.find(key_of(digits));
    if (it != key_to_index_.end()) {
        out.vector_index = it->second;
        out.repaired = false;
    } else {
        out.vector_index = nearest_codeword(cb_->vectors, q);
        out.repaired = true;
    }
    out.label = cb_->labels[out.vector_index];
}

Decision ElementwiseDetector::detect(const Eigen::VectorXd& y) const {
    Decision d;
    detect(y, d);
    return d;
}

Decision elementwise_detect(const Eigen::VectorXd& y, const MmseFilter& filter, const Codebook& cb) {
    return ElementwiseDetector(filter, cb).detect(y);
}

std::string inverse_map(const Decision& d, const Codebook& cb) {
    if (d.vector_index >= cb.size()) throw ConfigMismatch("decision index outside the codebook");
    return cb.label_bits(d.vector_index);
}

}  // namespace flimsim
