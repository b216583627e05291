#include "flimsim/codebook.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "flimsim/errors.hpp"
#include "flimsim/rng.hpp"

namespace flimsim {

namespace {

int floor_log2(std::uint64_t v) { return static_cast<int>(std::bit_width(v)) - 1; }

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

// a^b in u64, or nullopt on overflow
std::optional<std::uint64_t> checked_pow(std::uint64_t a, unsigned b) {
    std::uint64_t r = 1;
    for (unsigned k = 0; k < b; ++k) {
        if (a != 0 && r > std::numeric_limits<std::uint64_t>::max() / a) return std::nullopt;
        r *= a;
    }
    return r;
}

std::optional<std::uint64_t> checked_comb(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        const unsigned __int128 t = static_cast<unsigned __int128>(r) * (n - k + i) / i;
        if (t > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
        r = static_cast<std::uint64_t>(t);
    }
    return r;
}

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

int hamming(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// pairwise-error-probability matrix Q(||H(si - sj)|| / (2 sigma))
std::vector<std::vector<double>> pep_matrix(const std::vector<std::vector<double>>& vecs, const Eigen::MatrixXd& h,
                                            double sigma_n) {
    const std::size_t n = vecs.size();
    Eigen::MatrixXd hs(h.rows(), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        hs.col(static_cast<Eigen::Index>(i)) =
            h * Eigen::Map<const Eigen::VectorXd>(vecs[i].data(), static_cast<Eigen::Index>(vecs[i].size()));
    std::vector<std::vector<double>> pep(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = (hs.col(static_cast<Eigen::Index>(i)) - hs.col(static_cast<Eigen::Index>(j))).norm();
            pep[i][j] = pep[j][i] = q_function(d / (2.0 * sigma_n));
        }
    return pep;
}

// union bound over a labelled set, pep indexed the same way as labels
double bound_of(const std::vector<std::uint32_t>& labels, const std::vector<std::vector<double>>& pep,
                const std::vector<std::size_t>& ids, int n_bits) {
    const std::size_t c = labels.size();
    double s = 0.0;
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (i != j) s += hamming(labels[i], labels[j]) * pep[ids[i]][ids[j]];
    return s / (static_cast<double>(c) * n_bits);
}

// Greedy bit labelling: sweep vector pairs by increasing Euclidean distance
// (ties by vector lexicographic order) and hand the closest pairs the most
// Hamming-separated labels still available. When one end of a pair is already
// labelled, the other end takes the free label farthest from it.
std::vector<std::uint32_t> mindist_maxham(const std::vector<std::vector<double>>& vecs) {
    const std::size_t c = vecs.size();
    if (c == 1) return {0};
    struct Pair {
        double d2;
        std::size_t a, b;  // va <=lex vb
    };
    std::vector<Pair> pairs;
    pairs.reserve(c * (c - 1) / 2);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = i + 1; j < c; ++j) {
            const bool ij = lex_less(vecs[i], vecs[j]) || vecs[i] == vecs[j];
            pairs.push_back({dist2(vecs[i], vecs[j]), ij ? i : j, ij ? j : i});
        }
    std::sort(pairs.begin(), pairs.end(), [&](const Pair& p, const Pair& q) {
        if (p.d2 != q.d2) return p.d2 < q.d2;
        if (vecs[p.a] != vecs[q.a]) return lex_less(vecs[p.a], vecs[q.a]);
        return lex_less(vecs[p.b], vecs[q.b]);
    });

    constexpr std::uint32_t NONE = 0xFFFFFFFFu;
    std::vector<std::uint32_t> labels(c, NONE);
    std::vector<char> used(c, 0);
    std::size_t assigned = 0;
    for (const Pair& p : pairs) {
        if (assigned == c) break;
        const bool la = labels[p.a] != NONE;
        const bool lb = labels[p.b] != NONE;
        if (la && lb) continue;
        if (!la && !lb) {
            int best_dh = -1;
            std::uint32_t bu = 0, bv = 0;
            for (std::uint32_t u = 0; u < c; ++u) {
                if (used[u]) continue;
                for (std::uint32_t v = u + 1; v < c; ++v) {
                    if (used[v]) continue;
                    const int dh = hamming(u, v);
                    if (dh > best_dh) {
                        best_dh = dh;
                        bu = u;
                        bv = v;
                    }
                }
            }
            labels[p.a] = bu;  // lex-smaller vector takes the smaller label
            labels[p.b] = bv;
            used[bu] = used[bv] = 1;
            assigned += 2;
        } else {
            const std::uint32_t ref = la ? labels[p.a] : labels[p.b];
            const std::size_t tgt = la ? p.b : p.a;
            int best_dh = -1;
            std::uint32_t bu = 0;
            for (std::uint32_t u = 0; u < c; ++u) {
                if (used[u]) continue;
                const int dh = hamming(ref, u);
                if (dh > best_dh) {
                    best_dh = dh;
                    bu = u;
                }
            }
            labels[tgt] = bu;
            used[bu] = 1;
            ++assigned;
        }
    }
    return labels;
}

std::vector<std::uint32_t> gray_per_led(const std::vector<std::vector<double>>& vecs, const PamAlphabet& alphabet,
                                        int n_t) {
    const std::uint64_t m = static_cast<std::uint64_t>(alphabet.order);
    if (!is_pow2(m))
        throw DomainError("Gray labelling needs a power-of-two PAM order, got " + std::to_string(alphabet.order));
    const int bits_per_led = floor_log2(m);
    const auto expect = checked_pow(m, static_cast<unsigned>(n_t));
    if (!expect || *expect != vecs.size())
        throw DomainError("Gray labelling needs the full PAM product set");
    std::vector<std::uint32_t> labels;
    labels.reserve(vecs.size());
    for (const auto& v : vecs) {
        std::uint32_t lab = 0;
        for (double x : v) {
            const auto it = std::find(alphabet.levels.begin(), alphabet.levels.end(), x);
            if (it == alphabet.levels.end()) throw DomainError("vector entry is not a PAM level");
            const auto k = static_cast<std::uint32_t>(it - alphabet.levels.begin());
            lab = (lab << bits_per_led) | (k ^ (k >> 1));
        }
        labels.push_back(lab);
    }
    return labels;
}

std::vector<std::uint32_t> union_bound_label_search(const std::vector<std::vector<double>>& vecs,
                                                    const DesignContext& ctx) {
    std::vector<std::uint32_t> labels = mindist_maxham(vecs);
    const std::size_t c = vecs.size();
    const int n_bits = floor_log2(c);
    const auto pep = pep_matrix(vecs, ctx.h, ctx.sigma_n);
    std::vector<std::size_t> ids(c);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    double cur = bound_of(labels, pep, ids, n_bits);
    CounterRng rng(ctx.seed, 0x4C41424Cull, 0);
    for (int step = 0; step < ctx.budget; ++step) {
        const std::size_t i = rng.next_u64() % c;
        std::size_t j = rng.next_u64() % (c - 1);
        if (j >= i) ++j;
        std::swap(labels[i], labels[j]);
        const double next = bound_of(labels, pep, ids, n_bits);
        if (next < cur)
            cur = next;
        else
            std::swap(labels[i], labels[j]);
    }
    return labels;
}

Codebook assemble(std::vector<std::vector<double>> vectors, std::vector<std::uint32_t> labels,
                  const CodebookSpec& spec, std::size_t universe_size) {
    const std::size_t c = vectors.size();
    Codebook cb;
    cb.scheme = spec.scheme;
    cb.n_t = spec.n_t;
    cb.pam_order = spec.pam_order;
    cb.n_active = spec.n_active;
    cb.i_lower_ma = spec.i_lower_ma;
    cb.i_upper_ma = spec.i_upper_ma;
    cb.zero_level_ma = spec.zero_level_ma;
    cb.universe_size = universe_size;
    cb.n_bits = floor_log2(c);
    cb.vectors = std::move(vectors);
    cb.labels = std::move(labels);
    cb.index_of_label.assign(c, 0);
    std::vector<char> seen(c, 0);
    for (std::size_t t = 0; t < c; ++t) {
        const std::uint32_t l = cb.labels[t];
        if (l >= c || seen[l]) throw ValidationError("labels are not a bijection onto the bit strings");
        seen[l] = 1;
        cb.index_of_label[l] = static_cast<std::uint32_t>(t);
    }
    return cb;
}

LabelStrategy default_labels(const CodebookSpec& spec, const DesignContext* ctx) {
    switch (spec.scheme) {
        case Scheme::SMX:
            return is_pow2(static_cast<std::uint64_t>(spec.pam_order)) ? LabelStrategy::GrayPerLed
                                                                       : LabelStrategy::MinDistMaxHamming;
        case Scheme::GSM2:
            return ctx ? LabelStrategy::UnionBoundSearch : LabelStrategy::MinDistMaxHamming;
        default:
            return LabelStrategy::MinDistMaxHamming;
    }
}

}  // namespace

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::SMX: return "smx";
        case Scheme::SM: return "sm";
        case Scheme::GSM2: return "gsm2";
        case Scheme::FLIM: return "flim";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "smx") return Scheme::SMX;
    if (name == "sm") return Scheme::SM;
    if (name == "gsm2") return Scheme::GSM2;
    if (name == "flim") return Scheme::FLIM;
    throw ValidationError("unknown scheme '" + name + "' (expected smx|sm|gsm2|flim)");
}

PamAlphabet pam_alphabet(int order, double i_lower_ma, double i_upper_ma) {
    if (order < 1) throw DomainError("PAM order must be >= 1, got " + std::to_string(order));
    if (!(i_lower_ma > 0.0) || !(i_lower_ma < i_upper_ma))
        throw BadRange("drive-current limits need 0 < I_L < I_U, got [" + std::to_string(i_lower_ma) + ", " +
                       std::to_string(i_upper_ma) + "]");
    PamAlphabet a;
    a.order = order;
    a.i_lower_ma = i_lower_ma;
    a.i_upper_ma = i_upper_ma;
    if (order == 1) {
        a.levels = {i_lower_ma};
    } else {
        a.levels.reserve(order);
        for (int k = 0; k < order; ++k)
            a.levels.push_back(i_lower_ma + (i_upper_ma - i_lower_ma) / (order - 1) * k);
    }
    return a;
}

std::vector<std::vector<double>> build_universe(Scheme scheme, int n_t, int pam_order, const PamAlphabet& alphabet,
                                                int n_active, double zero_level_ma) {
    if (n_t < 1) throw DomainError("n_t must be >= 1");
    if (static_cast<int>(alphabet.levels.size()) != pam_order)
        throw DomainError("alphabet order disagrees with pam_order");
    const auto m = static_cast<std::uint64_t>(pam_order);
    constexpr std::uint64_t MAX_UNIVERSE = std::uint64_t{1} << 24;

    std::vector<std::vector<double>> out;
    auto emit_mixed_radix = [&](const std::vector<int>& positions, const std::vector<double>& digits) {
        // all digit assignments over the active positions, first position most
        // significant
        const auto radix = static_cast<std::uint64_t>(digits.size());
        const auto count = checked_pow(radix, static_cast<unsigned>(positions.size()));
        if (!count || *count > MAX_UNIVERSE) throw DomainError("universe too large to enumerate");
        for (std::uint64_t idx = 0; idx < *count; ++idx) {
            std::vector<double> v(static_cast<std::size_t>(n_t), zero_level_ma);
            std::uint64_t rem = idx;
            std::uint64_t place = *count / radix;
            for (std::size_t p = 0; p < positions.size(); ++p) {
                v[static_cast<std::size_t>(positions[p])] = digits[rem / place];
                rem %= place;
                place = std::max<std::uint64_t>(place / radix, 1);
            }
            out.push_back(std::move(v));
        }
    };

    switch (scheme) {
        case Scheme::SMX: {
            std::vector<int> all(n_t);
            std::iota(all.begin(), all.end(), 0);
            emit_mixed_radix(all, alphabet.levels);
            break;
        }
        case Scheme::SM: {
            for (int i = 0; i < n_t; ++i)
                for (int k = 0; k < pam_order; ++k) {
                    std::vector<double> v(static_cast<std::size_t>(n_t), zero_level_ma);
                    v[static_cast<std::size_t>(i)] = alphabet.levels[static_cast<std::size_t>(k)];
                    out.push_back(std::move(v));
                }
            break;
        }
        case Scheme::GSM2: {
            if (n_active < 1 || n_active > n_t)
                throw DomainError("GSM2 needs 1 <= n_active <= n_t, got " + std::to_string(n_active));
            // combinations in lexicographic order
            std::vector<int> comb(static_cast<std::size_t>(n_active));
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                emit_mixed_radix(comb, alphabet.levels);
                int i = n_active - 1;
                while (i >= 0 && comb[static_cast<std::size_t>(i)] == n_t - n_active + i) --i;
                if (i < 0) break;
                ++comb[static_cast<std::size_t>(i)];
                for (int p = i + 1; p < n_active; ++p)
                    comb[static_cast<std::size_t>(p)] = comb[static_cast<std::size_t>(p - 1)] + 1;
            }
            break;
        }
        case Scheme::FLIM: {
            std::vector<double> ext;
            ext.reserve(m + 1);
            ext.push_back(zero_level_ma);
            ext.insert(ext.end(), alphabet.levels.begin(), alphabet.levels.end());
            std::vector<int> all(n_t);
            std::iota(all.begin(), all.end(), 0);
            emit_mixed_radix(all, ext);
            break;
        }
    }
    return out;
}

std::vector<std::vector<double>> select_subset(const std::vector<std::vector<double>>& universe,
                                               std::size_t target_size, SubsetStrategy strategy,
                                               const DesignContext* ctx) {
    const std::size_t k = universe.size();
    if (target_size > k)
        throw SubsetInfeasible("cannot pick " + std::to_string(target_size) + " vectors out of " + std::to_string(k));
    if (!is_pow2(target_size)) throw DomainError("subset size must be a power of two");
    if (strategy == SubsetStrategy::All || target_size == k) {
        if (target_size != k) throw DomainError("strategy All requires the subset size to equal the universe size");
        return universe;
    }

    if (strategy == SubsetStrategy::MaxMinDistance) {
        // greedy farthest-point: seed with the farthest pair, then repeatedly
        // add the vector with the largest distance to the chosen set; ties go
        // to the lower index
        std::size_t sa = 0, sb = 1;
        double best = -1.0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const double d = dist2(universe[i], universe[j]);
                if (d > best) {
                    best = d;
                    sa = i;
                    sb = j;
                }
            }
        std::vector<char> chosen(k, 0);
        chosen[sa] = chosen[sb] = 1;
        std::vector<double> mind(k);
        for (std::size_t i = 0; i < k; ++i)
            mind[i] = std::min(dist2(universe[i], universe[sa]), dist2(universe[i], universe[sb]));
        for (std::size_t cnt = 2; cnt < target_size; ++cnt) {
            std::size_t pick = k;
            double val = -1.0;
            for (std::size_t i = 0; i < k; ++i) {
                if (chosen[i]) continue;
                if (mind[i] > val) {
                    val = mind[i];
                    pick = i;
                }
            }
            chosen[pick] = 1;
            for (std::size_t i = 0; i < k; ++i) mind[i] = std::min(mind[i], dist2(universe[i], universe[pick]));
        }
        std::vector<std::vector<double>> out;
        out.reserve(target_size);
        for (std::size_t i = 0; i < k; ++i)
            if (chosen[i]) out.push_back(universe[i]);
        return out;
    }

    // ExhaustiveUnionBound
    if (!ctx) throw DomainError("ExhaustiveUnionBound needs a design context (channel and noise level)");
    if (k > 32) throw DomainError("exhaustive subset search is limited to universes of at most 32 vectors");
    const auto pep = pep_matrix(universe, ctx->h, ctx->sigma_n);
    const int n_bits = floor_log2(target_size);
    std::vector<std::size_t> comb(target_size);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    std::vector<std::size_t> best_comb = comb;
    double best_ub = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<std::vector<double>> cand;
        cand.reserve(target_size);
        for (std::size_t id : comb) cand.push_back(universe[id]);
        const auto labels = mindist_maxham(cand);
        const double ub = bound_of(labels, pep, comb, n_bits);
        if (ub < best_ub) {
            best_ub = ub;
            best_comb = comb;
        }
        int i = static_cast<int>(target_size) - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == k - target_size + static_cast<std::size_t>(i)) --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (std::size_t p = static_cast<std::size_t>(i) + 1; p < target_size; ++p) comb[p] = comb[p - 1] + 1;
    }
    std::vector<std::vector<double>> out;
    out.reserve(target_size);
    for (std::size_t id : best_comb) out.push_back(universe[id]);
    return out;
}

Codebook assign_labels(std::vector<std::vector<double>> vectors, LabelStrategy strategy, const CodebookSpec& spec,
                       std::size_t universe_size, const DesignContext* ctx) {
    if (!is_pow2(vectors.size())) throw DomainError("label assignment needs a power-of-two vector count");
    std::vector<std::uint32_t> labels;
    switch (strategy) {
        case LabelStrategy::GrayPerLed:
            labels = gray_per_led(vectors, pam_alphabet(spec.pam_order, spec.i_lower_ma, spec.i_upper_ma), spec.n_t);
            break;
        case LabelStrategy::MinDistMaxHamming:
            labels = mindist_maxham(vectors);
            break;
        case LabelStrategy::UnionBoundSearch:
            if (!ctx) throw DomainError("UnionBoundSearch needs a design context (channel and noise level)");
            labels = union_bound_label_search(vectors, *ctx);
            break;
    }
    return assemble(std::move(vectors), std::move(labels), spec, universe_size);
}

Codebook build_codebook(const CodebookSpec& spec, const DesignContext* ctx) {
    const PamAlphabet alphabet = pam_alphabet(spec.pam_order, spec.i_lower_ma, spec.i_upper_ma);
    auto universe = build_universe(spec.scheme, spec.n_t, spec.pam_order, alphabet, spec.n_active, spec.zero_level_ma);
    const std::size_t k = universe.size();
    if (k < 2) throw DomainError("universe needs at least two symbols");
    const std::size_t c = std::size_t{1} << floor_log2(k);
    const LabelStrategy labels = spec.labels.value_or(default_labels(spec, ctx));

    // GSM2 with a channel: joint subset-swap + label-swap local search on the
    // union bound, budgeted and seeded
    if (spec.scheme == Scheme::GSM2 && labels == LabelStrategy::UnionBoundSearch && ctx && c < k) {
        const int n_bits = floor_log2(c);
        const auto pep = pep_matrix(universe, ctx->h, ctx->sigma_n);
        auto subset = select_subset(universe, c, SubsetStrategy::MaxMinDistance);
        std::vector<std::size_t> ids;  // universe index per chosen slot
        ids.reserve(c);
        {
            std::size_t u = 0;
            for (const auto& v : subset) {
                while (universe[u] != v) ++u;
                ids.push_back(u++);
            }
        }
        std::vector<char> selected(k, 0);
        for (std::size_t id : ids) selected[id] = 1;
        std::vector<std::size_t> unselected;
        for (std::size_t i = 0; i < k; ++i)
            if (!selected[i]) unselected.push_back(i);

        auto lab = mindist_maxham(subset);
        double cur = bound_of(lab, pep, ids, n_bits);
        CounterRng rng(ctx->seed, 0x47534D32ull, 0);
        for (int step = 0; step < ctx->budget; ++step) {
            if (rng.next_u64() & 1) {
                const std::size_t slot = rng.next_u64() % c;
                const std::size_t upos = rng.next_u64() % unselected.size();
                std::swap(ids[slot], unselected[upos]);
                const double next = bound_of(lab, pep, ids, n_bits);
                if (next < cur)
                    cur = next;
                else
                    std::swap(ids[slot], unselected[upos]);
            } else {
                const std::size_t i = rng.next_u64() % c;
                std::size_t j = rng.next_u64() % (c - 1);
                if (j >= i) ++j;
                std::swap(lab[i], lab[j]);
                const double next = bound_of(lab, pep, ids, n_bits);
                if (next < cur)
                    cur = next;
                else
                    std::swap(lab[i], lab[j]);
            }
        }
        // canonical presentation: ascending universe order, labels travel
        std::vector<std::size_t> order(c);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
        std::vector<std::vector<double>> vecs;
        std::vector<std::uint32_t> final_labels;
        vecs.reserve(c);
        final_labels.reserve(c);
        for (std::size_t slot : order) {
            vecs.push_back(universe[ids[slot]]);
            final_labels.push_back(lab[slot]);
        }
        return assemble(std::move(vecs), std::move(final_labels), spec, k);
    }

    auto subset = (c == k) ? std::move(universe) : select_subset(universe, c, spec.subset, ctx);
    return assign_labels(std::move(subset), labels, spec, k, ctx);
}

std::string Codebook::label_bits(std::size_t index) const {
    std::string s(static_cast<std::size_t>(n_bits), '0');
    const std::uint32_t l = labels[index];
    for (int b = 0; b < n_bits; ++b)
        if (l >> (n_bits - 1 - b) & 1u) s[static_cast<std::size_t>(b)] = '1';
    return s;
}

std::string se_scheme_name(SeScheme s) {
    switch (s) {
        case SeScheme::SSK: return "ssk";
        case SeScheme::SM: return "sm";
        case SeScheme::GSSK: return "gssk";
        case SeScheme::GSM: return "gsm";
        case SeScheme::GSM2: return "gsm2";
        case SeScheme::SMX: return "smx";
        case SeScheme::FLIM: return "flim";
        case SeScheme::GSSK2: return "gssk2";
    }
    return "?";
}

SeScheme se_scheme_from_name(const std::string& name) {
    if (name == "ssk") return SeScheme::SSK;
    if (name == "sm") return SeScheme::SM;
    if (name == "gssk") return SeScheme::GSSK;
    if (name == "gsm") return SeScheme::GSM;
    if (name == "gsm2") return SeScheme::GSM2;
    if (name == "smx") return SeScheme::SMX;
    if (name == "flim") return SeScheme::FLIM;
    if (name == "gssk2") return SeScheme::GSSK2;
    throw ValidationError("unknown scheme '" + name + "'");
}

double spectral_efficiency(SeScheme scheme, int n_t, int n_a, int pam_order) {
    if (n_t < 1) throw DomainError("n_t must be >= 1");
    const bool needs_na = scheme == SeScheme::GSSK || scheme == SeScheme::GSM || scheme == SeScheme::GSM2;
    if (needs_na && (n_a < 1 || n_a > n_t)) throw DomainError("n_a must lie in [1, n_t]");
    const bool needs_m = scheme != SeScheme::SSK && scheme != SeScheme::GSSK && scheme != SeScheme::GSSK2;
    if (needs_m && pam_order < 1) throw DomainError("PAM order must be >= 1");

    auto floor_log2_u64 = [](std::uint64_t v) -> double {
        if (v < 1) throw DomainError("log2 argument below 1");
        return static_cast<double>(floor_log2(v));
    };

    switch (scheme) {
        case SeScheme::SSK:
            return std::log2(static_cast<double>(n_t));
        case SeScheme::SM:
            return std::log2(static_cast<double>(n_t)) + std::log2(static_cast<double>(pam_order));
        case SeScheme::GSSK: {
            const auto cmb = checked_comb(static_cast<unsigned>(n_t), static_cast<unsigned>(n_a));
            if (cmb) return floor_log2_u64(*cmb);
            return std::floor(std::log2(std::exp(std::lgamma(n_t + 1.0) - std::lgamma(n_a + 1.0) -
                                                 std::lgamma(n_t - n_a + 1.0))));
        }
        case SeScheme::GSM: {
            return spectral_efficiency(SeScheme::GSSK, n_t, n_a, 1) + std::log2(static_cast<double>(pam_order));
        }
        case SeScheme::GSM2: {
            const auto cmb = checked_comb(static_cast<unsigned>(n_t), static_cast<unsigned>(n_a));
            const auto pw = checked_pow(static_cast<std::uint64_t>(pam_order), static_cast<unsigned>(n_a));
            if (cmb && pw && *cmb <= std::numeric_limits<std::uint64_t>::max() / std::max<std::uint64_t>(*pw, 1))
                return floor_log2_u64(*cmb * *pw);
            return std::floor(std::log2(std::exp(std::lgamma(n_t + 1.0) - std::lgamma(n_a + 1.0) -
                                                 std::lgamma(n_t - n_a + 1.0))) +
                              n_a * std::log2(static_cast<double>(pam_order)));
        }
        case SeScheme::SMX:
            if (pam_order < 1) throw DomainError("log2 argument below 1");
            return n_t * std::log2(static_cast<double>(pam_order));
        case SeScheme::FLIM: {
            const auto pw = checked_pow(static_cast<std::uint64_t>(pam_order) + 1, static_cast<unsigned>(n_t));
            if (pw) return floor_log2_u64(*pw);
            return std::floor(n_t * std::log2(static_cast<double>(pam_order) + 1.0));
        }
        case SeScheme::GSSK2:
            return static_cast<double>(n_t);
    }
    throw DomainError("unknown scheme");
}

std::vector<double> activation_pmf(const Codebook& cb) {
    std::vector<double> nu(static_cast<std::size_t>(cb.n_t), 0.0);
    for (const auto& v : cb.vectors)
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == cb.zero_level_ma) nu[i] += 1.0;
    for (double& x : nu) x /= static_cast<double>(cb.size());
    return nu;
}

}  // namespace flimsim
