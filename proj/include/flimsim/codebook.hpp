#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flimsim {

enum class Scheme { SMX, SM, GSM2, FLIM };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Unipolar M-PAM drive-current alphabet, levels in mA.
struct PamAlphabet {
    int order = 2;
    double i_lower_ma = 500.0;
    double i_upper_ma = 800.0;
    std::vector<double> levels;
};

PamAlphabet pam_alphabet(int order, double i_lower_ma, double i_upper_ma);

enum class SubsetStrategy { All, MaxMinDistance, ExhaustiveUnionBound };
enum class LabelStrategy { GrayPerLed, MinDistMaxHamming, UnionBoundSearch };

// Channel-aware design context for the union-bound subset/label searches.
struct DesignContext {
    Eigen::MatrixXd h;       // Nr x Nt gain matrix
    double sigma_n = 1.0;    // noise std at the reference operating point
    std::uint64_t seed = 1;  // fixed seed of the local search
    int budget = 1000;       // number of proposed moves
};

struct CodebookSpec {
    Scheme scheme = Scheme::FLIM;
    int n_t = 4;
    int pam_order = 1;
    int n_active = 0;  // GSM2 only
    double i_lower_ma = 500.0;
    double i_upper_ma = 800.0;
    double zero_level_ma = 0.0;
    SubsetStrategy subset = SubsetStrategy::MaxMinDistance;
    std::optional<LabelStrategy> labels;  // empty: scheme default
};

// Transmit codebook: C = 2^floor(log2 K) vectors with bijective bit labels.
// labels[t] holds the n_bits-wide label of vectors[t]; index_of_label is the
// inverse map (label value -> vector index).
struct Codebook {
    Scheme scheme = Scheme::FLIM;
    int n_t = 0;
    int pam_order = 1;
    int n_active = 0;
    double i_lower_ma = 500.0;
    double i_upper_ma = 800.0;
    double zero_level_ma = 0.0;
    std::size_t universe_size = 0;  // K
    std::vector<std::vector<double>> vectors;
    std::vector<std::uint32_t> labels;
    std::vector<std::uint32_t> index_of_label;
    int n_bits = 0;

    std::size_t size() const { return vectors.size(); }
    std::string label_bits(std::size_t index) const;
};

// Full symbol universe for a scheme, before subset selection. Enumeration
// order is deterministic: active-pattern combinations in lexicographic order,
// level assignments in mixed radix with the first (lowest-index) coordinate
// most significant; FLIM enumerates the (M+1)-ary per-LED alphabet the same
// way with digit 0 = the zero level.
std::vector<std::vector<double>> build_universe(Scheme scheme, int n_t, int pam_order, const PamAlphabet& alphabet,
                                                int n_active = 0, double zero_level_ma = 0.0);

// Picks target_size vectors out of the universe. MaxMinDistance greedily
// maximizes the minimum pairwise Euclidean distance; ExhaustiveUnionBound
// scans all subsets (universe size <= 32) scoring the union bound with
// MinDistMaxHamming labels; All requires target_size == universe size.
std::vector<std::vector<double>> select_subset(const std::vector<std::vector<double>>& universe,
                                               std::size_t target_size, SubsetStrategy strategy,
                                               const DesignContext* ctx = nullptr);

// Assigns bit labels and assembles the codebook. UnionBoundSearch requires a
// DesignContext.
Codebook assign_labels(std::vector<std::vector<double>> vectors, LabelStrategy strategy, const CodebookSpec& spec,
                       std::size_t universe_size, const DesignContext* ctx = nullptr);

// One-stop construction: universe -> subset -> labels. For GSM2 with a design
// context, runs the joint subset-swap + label-swap local search.
Codebook build_codebook(const CodebookSpec& spec, const DesignContext* ctx = nullptr);

// Schemes covered by the spectral-efficiency survey (a superset of the
// buildable ones).
enum class SeScheme { SSK, SM, GSSK, GSM, GSM2, SMX, FLIM, GSSK2 };

SeScheme se_scheme_from_name(const std::string& name);
std::string se_scheme_name(SeScheme s);

// Spectral efficiency in bits per channel use.
double spectral_efficiency(SeScheme scheme, int n_t, int n_a, int pam_order);

// Per-LED probability of transmitting the zero level, counted over the
// codebook columns.
std::vector<double> activation_pmf(const Codebook& cb);

}  // namespace flimsim
