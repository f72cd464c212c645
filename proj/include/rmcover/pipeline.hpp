#pragma once

// Cover set -> invariant buckets -> equivalence merging, and class resolution
// for classifications that carry no dense lookup.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "rmcover/classification.hpp"
#include "rmcover/cover.hpp"
#include "rmcover/equivalence.hpp"
#include "rmcover/invariant.hpp"
#include "rmcover/parallel.hpp"

namespace rmcover {

struct PipelineBudgets {
    std::int64_t iter = 1 << 14;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::uint64_t max_elements = std::uint64_t{1} << 26;
};

struct UnresolvedPair {
    QuotientFunction first;
    QuotientFunction second;
};

struct PipelineReport {
    Classification classification;
    std::uint64_t cover_size = 0;
    std::size_t distinct_j = 0;
    std::size_t distinct_j_hat = 0;
    std::uint64_t equivalence_calls = 0;
    std::uint64_t equivalence_merges = 0;
    std::vector<UnresolvedPair> unresolved;
};

/// Class resolution without a dense lookup: bucket by J-hat, confirm with
/// the equivalence test.
class ClassIndex {
public:
    ClassIndex(const Classification& cls, const Classification& sub, std::int64_t iter = 1 << 14,
               std::uint64_t seed = 1)
        : cls_(&cls), sub_(&sub), resolve_(sub), iter_(iter), seed_(seed) {
        for (std::size_t i = 0; i < cls.size(); ++i)
            buckets_[j_hat_signature(class_map(cls.reps[i], sub, std::cref(resolve_)))].push_back(i);
    }

    [[nodiscard]] std::size_t operator()(const QuotientFunction& h) const {
        if (!(h.params() == cls_->params)) throw std::invalid_argument("class_of: parameter mismatch");
        auto it = buckets_.find(j_hat_signature(class_map(h, *sub_, std::cref(resolve_))));
        if (it == buckets_.end()) throw Error("class_of: no class carries this invariant");
        Rng rng(seed_);
        bool undefined = false;
        for (std::size_t idx : it->second) {
            if (cls_->reps[idx] == h) return idx;
            const EquivalenceOutcome o = equivalent(cls_->reps[idx], h, *sub_, std::cref(resolve_), iter_, rng);
            if (o.verdict == Verdict::Equiv) return idx;
            if (o.verdict == Verdict::Undefined) undefined = true;
        }
        if (undefined) throw Undecidable("class_of: equivalence budget exhausted");
        throw Error("class_of: function matches no representative");
    }

private:
    const Classification* cls_;
    const Classification* sub_;
    LookupResolver resolve_;
    std::int64_t iter_;
    std::uint64_t seed_;
    std::map<InvariantSignature, std::vector<std::size_t>> buckets_;
};

/// Lookup resolution when `cls` has a lookup, otherwise a ClassIndex over
/// `sub` (a classification of the level below `cls`).
inline ClassResolver resolver_for(const Classification& cls, const Classification* sub, std::int64_t iter = 1 << 14,
                                  std::uint64_t seed = 1) {
    if (cls.has_lookup()) return LookupResolver(cls);
    if (sub == nullptr) throw Undecidable("class resolution needs a lookup or the classification one level down");
    auto index = std::make_shared<const ClassIndex>(cls, *sub, iter, seed);
    return [index](const QuotientFunction& h) { return (*index)(h); };
}

/// Classifies B(s,t,m) (s = t-1 or s = t) from a classification of
/// B(s-1,t-1,m-1) with stabilizers. Sub-classes are resolved through the
/// lookup of `sub`, or through `sub_sub` (a classification of B(s-2,t-2,m-2))
/// when `sub` has none. Undefined equivalence outcomes keep both functions
/// and are listed in the report.
inline PipelineReport classify_pipeline(const SpaceParams& p, const Classification& sub,
                                        const PipelineBudgets& budgets = {}, const Classification* sub_sub = nullptr) {
    if (p.s != p.t - 1 && p.s != p.t) throw std::invalid_argument("classify_pipeline: expected s = t-1 or s = t");
    const CoverSet cover = reduce_cover_set(p, sub, budgets.max_elements);
    const ClassResolver resolve = resolver_for(sub, sub_sub, budgets.iter, budgets.seed);

    std::vector<QuotientFunction> elems;
    elems.reserve(cover.size());
    for (const CoverEntry& e : cover.entries) elems.push_back(cover_element(e, sub));

    std::vector<InvariantSignature> jsig(elems.size()), jhat(elems.size());
    parallel_for(elems.size(), budgets.jobs, [&](std::size_t i) {
        const ClassMap cm = class_map(elems[i], sub, resolve);
        jsig[i] = j_signature(cm);
        jhat[i] = j_hat_signature(cm);
    });

    PipelineReport report;
    report.cover_size = cover.size();
    {
        std::vector<InvariantSignature> u = jsig;
        std::sort(u.begin(), u.end());
        report.distinct_j = static_cast<std::size_t>(std::unique(u.begin(), u.end()) - u.begin());
    }
    std::map<InvariantSignature, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < elems.size(); ++i) buckets[jhat[i]].push_back(i);
    report.distinct_j_hat = buckets.size();

    struct BucketResult {
        std::vector<std::size_t> reps;
        std::vector<std::pair<std::size_t, std::size_t>> unresolved;
        std::uint64_t calls = 0;
        std::uint64_t merges = 0;
    };
    std::vector<const std::vector<std::size_t>*> order;
    for (const auto& [sig, members] : buckets) order.push_back(&members);
    std::vector<BucketResult> results(order.size());
    parallel_for(order.size(), budgets.jobs, [&](std::size_t b) {
        Rng rng(derive_seed(budgets.seed, b));
        BucketResult& r = results[b];
        for (std::size_t e : *order[b]) {
            bool merged = false;
            for (std::size_t rep : r.reps) {
                ++r.calls;
                const EquivalenceOutcome o = equivalent(elems[rep], elems[e], sub, resolve, budgets.iter, rng);
                if (o.verdict == Verdict::Equiv) {
                    merged = true;
                    ++r.merges;
                    break;
                }
                if (o.verdict == Verdict::Undefined) r.unresolved.emplace_back(rep, e);
            }
            if (!merged) r.reps.push_back(e);
        }
    });

    Classification& c = report.classification;
    c.params = p;
    c.provenance = "pipeline";
    for (const BucketResult& r : results) {
        for (std::size_t i : r.reps) c.reps.push_back(elems[i]);
        for (auto [a, b] : r.unresolved) report.unresolved.push_back({elems[a], elems[b]});
        report.equivalence_calls += r.calls;
        report.equivalence_merges += r.merges;
    }
    std::sort(c.reps.begin(), c.reps.end());
    seal(c);
    return report;
}

struct ClassOfOptions {
    /// Classification of B(s-1,t-1,m-1), used when `cls` has no lookup.
    const Classification* sub = nullptr;
    std::int64_t iter = 1 << 14;
    std::uint64_t seed = 1;
};

inline std::size_t class_of(const QuotientFunction& h, const Classification& cls, const ClassOfOptions& opt = {}) {
    if (!(h.params() == cls.params)) throw std::invalid_argument("class_of: parameter mismatch");
    if (cls.has_lookup()) return lookup_class(cls, h);
    if (opt.sub == nullptr) throw Undecidable("class_of: no lookup and no sub-classification to decide with");
    return ClassIndex(cls, *opt.sub, opt.iter, opt.seed)(h);
}

}  // namespace rmcover
