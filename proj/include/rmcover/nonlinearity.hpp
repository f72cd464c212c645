#pragma once

// Distances to RM(k,m): the randomized elimination probe, exact oracles for
// small parameters, relative covering radii and the odd-weight Dirac reduction.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rmcover/bit_vector.hpp"
#include "rmcover/boolean_function.hpp"
#include "rmcover/classification.hpp"
#include "rmcover/error.hpp"
#include "rmcover/group.hpp"
#include "rmcover/parallel.hpp"
#include "rmcover/quotient.hpp"

namespace rmcover {

struct GeneratorMatrix {
    int k = 0;
    int m = 0;
    /// Evaluation vectors, by (degree, mask) ascending.
    std::vector<BitVector> rows;
    std::vector<Point> monomials;
};

/// Dimension of RM(k,m).
[[nodiscard]] inline std::uint64_t rm_dimension(int k, int m) {
    std::uint64_t d = 0;
    for (int i = 0; i <= std::min(k, m); ++i) d += binomial(m, i);
    return d;
}

inline GeneratorMatrix rm_generator_matrix(int k, int m) {
    check_dimension(m);
    if (k < 0 || k > m) throw std::invalid_argument("rm_generator_matrix: need 0 <= k <= m");
    GeneratorMatrix g{k, m, {}, {}};
    for (int d = 0; d <= k; ++d)
        for (Point mask = 0; mask < (Point{1} << m); ++mask)
            if (std::popcount(mask) == d) {
                g.monomials.push_back(mask);
                g.rows.push_back(to_function(AnfPolynomial::monomial(m, mask)).truth_table());
            }
    return g;
}

[[nodiscard]] inline bool in_reed_muller(const BooleanFunction& f, int k) { return degree(f) <= k; }

struct ProbeResult {
    bool found = false;
    std::size_t best_weight = std::numeric_limits<std::size_t>::max();
    std::uint64_t passes_used = 0;
    std::uint64_t seed = 0;
    /// Lightest coset element seen.
    BooleanFunction best_function;
};

namespace detail {

inline std::size_t random_set_bit(const BitVector& row, Rng& rng) {
    const std::size_t n = row.size();
    const std::size_t mask = n - 1;  // n is a power of two
    for (int attempt = 0; attempt < (1 << 12); ++attempt) {
        const std::size_t p = static_cast<std::size_t>(rng()) & mask;
        if (row.get(p)) return p;
    }
    std::size_t r = static_cast<std::size_t>(rng() % row.popcount());
    const auto words = row.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        const auto c = static_cast<std::size_t>(std::popcount(words[w]));
        if (r < c) {
            Word x = words[w];
            for (; r > 0; --r) x &= x - 1;
            return w * kWordBits + static_cast<std::size_t>(std::countr_zero(x));
        }
        r -= c;
    }
    throw std::logic_error("random_set_bit: zero row");
}

}  // namespace detail

/// Randomized Gaussian elimination over a working copy of the RM(k,m)
/// generator matrix. Each pass sweeps every row: pick a random pivot column of
/// the row, clear it from later rows and from f. Weight is checked once per
/// pass; the search stops as soon as it is <= limit. `cancel` may stop the
/// probe early from another thread.
inline ProbeResult nl_probe(int k, int m, const BooleanFunction& f, std::uint64_t iter, std::size_t limit,
                            std::uint64_t seed, const std::atomic<bool>* cancel = nullptr) {
    if (f.vars() != m) throw std::invalid_argument("nl_probe: function has the wrong number of variables");
    GeneratorMatrix g = rm_generator_matrix(k, m);
    std::vector<BitVector>& rows = g.rows;
    Rng rng(seed);
    ProbeResult out;
    out.seed = seed;
    BitVector work = f.truth_table();
    out.best_weight = work.popcount();
    out.best_function = f;
    if (out.best_weight <= limit) {
        out.found = true;
        return out;
    }
    const std::size_t nwords = work.word_count();
    for (std::uint64_t pass = 0; pass < iter; ++pass) {
        if (cancel != nullptr && cancel->load(std::memory_order_relaxed)) break;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::size_t p = detail::random_set_bit(rows[i], rng);
            const Word* src = rows[i].words().data();
            for (std::size_t j = i + 1; j < rows.size(); ++j)
                if (rows[j].get(p)) {
                    Word* dst = rows[j].words().data();
                    for (std::size_t w = 0; w < nwords; ++w) dst[w] ^= src[w];
                }
            if (work.get(p)) work ^= rows[i];
        }
        out.passes_used = pass + 1;
        const std::size_t w = work.popcount();
        if (w < out.best_weight) {
            out.best_weight = w;
            out.best_function = BooleanFunction(m, work);
        }
        if (w <= limit) {
            out.found = true;
            break;
        }
    }
    return out;
}

struct ExactOptions {
    /// Largest number of codewords an enumeration may visit.
    std::uint64_t max_codewords = std::uint64_t{1} << 22;
};

namespace detail {

inline std::vector<std::int64_t> walsh_spectrum(const BooleanFunction& f) {
    std::vector<std::int64_t> w(f.size());
    for (Point x = 0; x < f.size(); ++x) w[x] = f(x) ? -1 : 1;
    for (std::size_t h = 1; h < w.size(); h <<= 1)
        for (std::size_t i = 0; i < w.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int64_t a = w[j], b = w[j + h];
                w[j] = a + b;
                w[j + h] = a - b;
            }
    return w;
}

// All codewords of RM(k,m) for 2^m <= 64, in Gray-code order.
inline std::vector<Word> small_codewords(int k, int m) {
    const GeneratorMatrix g = rm_generator_matrix(k, m);
    const std::size_t d = g.rows.size();
    std::vector<Word> words(std::size_t{1} << d);
    Word cur = 0;
    words[0] = 0;
    for (std::size_t i = 1; i < words.size(); ++i) {
        cur ^= g.rows[static_cast<std::size_t>(std::countr_zero(i))].words()[0];
        words[i] = cur;
    }
    return words;
}

// min(weight(f ^ c)) over the list, stopping once it reaches `floor`.
inline int min_distance(Word f, const std::vector<Word>& codewords, int floor) {
    int best = 64;
    for (Word c : codewords) {
        const int w = std::popcount(f ^ c);
        if (w < best) {
            best = w;
            if (best <= floor) break;
        }
    }
    return best;
}

}  // namespace detail

/// NL_k(f) = min over g in RM(k,m) of wt(f + g).
inline std::size_t exact_nonlinearity(int k, int m, const BooleanFunction& f, const ExactOptions& opt = {}) {
    if (f.vars() != m) throw std::invalid_argument("exact_nonlinearity: function has the wrong number of variables");
    if (k < 0) throw std::invalid_argument("exact_nonlinearity: negative order");
    if (k >= m) return 0;
    const std::size_t n = f.size();
    if (k == m - 1) return weight(f) & 1U;
    if (k == 0) return std::min(weight(f), n - weight(f));
    if (k == 1) {
        std::int64_t peak = 0;
        for (std::int64_t v : detail::walsh_spectrum(f)) peak = std::max(peak, std::abs(v));
        return n / 2 - static_cast<std::size_t>(peak / 2);
    }
    const std::uint64_t dim = rm_dimension(k, m);
    if (dim >= 63 || (std::uint64_t{1} << dim) > opt.max_codewords)
        throw GuardError("exact_nonlinearity: RM(" + std::to_string(k) + "," + std::to_string(m) + ") has 2^" +
                         std::to_string(dim) + " codewords, beyond the enumeration guard");
    if (m <= 6)
        return static_cast<std::size_t>(detail::min_distance(f.truth_table().words()[0], detail::small_codewords(k, m), 0));
    const GeneratorMatrix g = rm_generator_matrix(k, m);
    BitVector cur = f.truth_table();
    std::size_t best = cur.popcount();
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << dim) && best > 0; ++i) {
        cur ^= g.rows[static_cast<std::size_t>(std::countr_zero(i))];
        best = std::min(best, cur.popcount());
    }
    return best;
}

struct CoveringOptions {
    /// Largest number of cosets visited.
    std::uint64_t max_cosets = std::uint64_t{1} << 26;
};

/// rho(k,m) = max over cosets of RM(k,m) of the coset-leader weight, by
/// enumerating the coset representatives spanned by monomials of degree > k.
/// Restricted to 2^m <= 64.
inline std::size_t covering_radius_exact(int k, int m, const CoveringOptions& opt = {}) {
    check_dimension(m);
    if (k < 0) throw std::invalid_argument("covering_radius_exact: negative order");
    if (k >= m) return 0;
    if (k == m - 1) return 1;
    const std::uint64_t codim = (std::uint64_t{1} << m) - rm_dimension(k, m);
    if (m > 6 || codim >= 63 || (std::uint64_t{1} << codim) > opt.max_cosets)
        throw GuardError("covering_radius_exact: RM(" + std::to_string(k) + "," + std::to_string(m) + ") has 2^" +
                         std::to_string(codim) + " cosets, beyond the enumeration guard");
    const std::uint64_t dim = rm_dimension(k, m);
    if (dim >= 30) throw GuardError("covering_radius_exact: code too large to list");
    const std::vector<Word> codewords = detail::small_codewords(k, m);
    std::vector<Word> reps;
    for (Point mask = 0; mask < (Point{1} << m); ++mask)
        if (std::popcount(mask) > k) reps.push_back(to_function(AnfPolynomial::monomial(m, mask)).truth_table().words()[0]);
    Word cur = 0;
    int best = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << codim); ++i) {
        if (i > 0) cur ^= reps[static_cast<std::size_t>(std::countr_zero(i))];
        best = std::max(best, detail::min_distance(cur, codewords, best));
    }
    return static_cast<std::size_t>(best);
}

struct ProbeBudget {
    std::uint64_t iter = 565252;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct RelativeRadius {
    std::size_t value = 0;
    /// True when every representative was measured exactly; otherwise `value`
    /// is the largest probe upper bound.
    bool certified = true;
};

/// rho_t(k,m) as the maximum of NL_k over representatives of B(k+1,t,m).
inline RelativeRadius relative_rho(int k, int t, int m, const Classification& reps, const ProbeBudget& budget = {},
                                   const ExactOptions& exact = {}) {
    if (t <= k) return {0, true};
    if (!(reps.params == SpaceParams{k + 1, t, m}))
        throw std::invalid_argument("relative_rho: expected representatives of B" + SpaceParams{k + 1, t, m}.to_string());
    std::vector<std::size_t> value(reps.size());
    std::vector<std::uint8_t> exact_flag(reps.size());
    parallel_for(reps.size(), budget.jobs, [&](std::size_t i) {
        const BooleanFunction f = reps.reps[i].lift();
        try {
            value[i] = exact_nonlinearity(k, m, f, exact);
            exact_flag[i] = 1;
        } catch (const GuardError&) {
            value[i] = nl_probe(k, m, f, budget.iter, 0, derive_seed(budget.seed, i)).best_weight;
        }
    });
    RelativeRadius r;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        r.value = std::max(r.value, value[i]);
        r.certified = r.certified && exact_flag[i] != 0;
    }
    return r;
}

/// For odd-weight h, the point a with deg(h + delta_a) <= m-2: complement of
/// the coefficients of the degree m-1 monomials.
inline Point odd_weight_reduction(const BooleanFunction& h) {
    const int m = h.vars();
    if ((weight(h) & 1U) == 0) throw std::invalid_argument("odd_weight_reduction: weight is even");
    const AnfPolynomial p = to_anf(h);
    const Point full = point_mask(m);
    Point a = 0;
    for (int i = 0; i < m; ++i)
        if (!p.coefficient(full ^ (Point{1} << i))) a |= Point{1} << i;
    return a;
}

struct ScanEntry {
    std::size_t rep = 0;
    /// Point of the Dirac translate, when the entry probes rep + delta_a.
    std::optional<Point> dirac;
    ProbeResult result;
};

struct ScanOptions {
    std::size_t limit = 0;
    std::uint64_t iter = 565252;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    /// Probe rep + delta_a for every point a instead of the representatives.
    bool dirac = false;
    /// Restrict to these representative indices; empty means all.
    std::vector<std::size_t> only;
};

struct ScanReport {
    int k = 0;
    std::size_t limit = 0;
    std::vector<ScanEntry> entries;

    [[nodiscard]] std::vector<std::size_t> found() const {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].result.found) r.push_back(i);
        return r;
    }
    [[nodiscard]] std::vector<std::size_t> not_found() const {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (!entries[i].result.found) r.push_back(i);
        return r;
    }
};

/// Probes every selected representative (or its Dirac translates) against
/// `limit`. Item i uses seed derive_seed(opt.seed, i).
inline ScanReport scan_representatives(int k, const Classification& reps, const ScanOptions& opt) {
    const int m = reps.params.m;
    std::vector<std::size_t> chosen = opt.only;
    if (chosen.empty())
        for (std::size_t i = 0; i < reps.size(); ++i) chosen.push_back(i);
    ScanReport report{k, opt.limit, {}};
    for (std::size_t r : chosen) {
        if (r >= reps.size()) throw std::out_of_range("scan_representatives: no representative " + std::to_string(r));
        if (opt.dirac)
            for (Point a = 0; a < (Point{1} << m); ++a) report.entries.push_back({r, a, {}});
        else
            report.entries.push_back({r, std::nullopt, {}});
    }
    parallel_for(report.entries.size(), opt.jobs, [&](std::size_t i) {
        ScanEntry& e = report.entries[i];
        BooleanFunction f = reps.reps[e.rep].lift();
        if (e.dirac) f ^= dirac(*e.dirac, m);
        e.result = nl_probe(k, m, f, opt.iter, opt.limit, derive_seed(opt.seed, i));
    });
    return report;
}

}  // namespace rmcover
