#pragma once

// Derivative class map F(f): v -> class of the restricted derivative Der(f,v)
// in B~(s-1,t-1,m-1), with the J and J-hat value distributions built on it.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rmcover/boolean_function.hpp"
#include "rmcover/classification.hpp"
#include "rmcover/error.hpp"
#include "rmcover/quotient.hpp"

namespace rmcover {

/// Resolves a class of the sub-classification B~(s-1,t-1,m-1).
using ClassResolver = std::function<std::size_t(const QuotientFunction&)>;

struct ClassMap {
    int m = 0;
    std::vector<std::uint32_t> values;
    std::string classification_digest;

    friend bool operator==(const ClassMap&, const ClassMap&) = default;
};

enum class SignatureKind { J, JHat };

struct InvariantSignature {
    SignatureKind kind = SignatureKind::J;
    /// (value, multiplicity), ascending by value.
    std::vector<std::pair<std::int64_t, std::uint64_t>> pairs;
    std::string classification_digest;

    /// Signatures built on different numberings never compare equal.
    friend bool operator==(const InvariantSignature&, const InvariantSignature&) = default;
    friend bool operator<(const InvariantSignature& a, const InvariantSignature& b) {
        return std::tie(a.classification_digest, a.kind, a.pairs) < std::tie(b.classification_digest, b.kind, b.pairs);
    }
};

inline void require_same_numbering(const InvariantSignature& a, const InvariantSignature& b) {
    if (a.classification_digest != b.classification_digest)
        throw DigestMismatch("signatures were computed against different class numberings");
}

/// Dense-lookup class resolution with the coordinate table built once.
class LookupResolver {
public:
    explicit LookupResolver(const Classification& sub) : sub_(&sub), space_(sub.params) {
        if (!sub.has_lookup()) throw Undecidable("class resolution needs a classification with a lookup");
    }
    std::size_t operator()(const QuotientFunction& h) const { return sub_->lookup[space_.index_of(h.anf())]; }

private:
    const Classification* sub_;
    QuotientSpace space_;
};

namespace detail {

inline void check_sub(const QuotientFunction& f, const Classification& sub) {
    const SpaceParams& p = f.params();
    if (!(sub.params == SpaceParams{p.s - 1, p.t - 1, p.m - 1}))
        throw std::invalid_argument("class_map: expected a classification of B" +
                                    SpaceParams{p.s - 1, p.t - 1, p.m - 1}.to_string() + ", got B" +
                                    sub.params.to_string());
}

// Restriction to E_v for a function already known to be v-periodic.
inline BooleanFunction restrict_unchecked(const BooleanFunction& f, Point v) {
    const int m = f.vars();
    const int pivot = restriction_pivot(v);
    const Point low = (Point{1} << pivot) - 1;
    BooleanFunction r(m - 1);
    for (Point y = 0; y < (Point{1} << (m - 1)); ++y)
        if (f((y & low) | ((y & ~low) << 1))) r.set(y);
    return r;
}

}  // namespace detail

/// The restricted derivative of f in direction v != 0, as an element of B(s-1,t-1,m-1).
inline QuotientFunction restricted_derivative(const BooleanFunction& lift, const SpaceParams& p, Point v) {
    const BooleanFunction r = detail::restrict_unchecked(derivative(lift, v), v);
    return project(to_anf(r), p.s - 1, p.t - 1);
}

inline ClassMap class_map(const QuotientFunction& f, const Classification& sub, const ClassResolver& resolve) {
    detail::check_sub(f, sub);
    const SpaceParams& p = f.params();
    if (p.m < 2) throw std::invalid_argument("class_map: need at least two variables");
    ClassMap cm;
    cm.m = p.m;
    cm.classification_digest = sub.digest;
    cm.values.resize(std::size_t{1} << p.m);
    cm.values[0] = static_cast<std::uint32_t>(resolve(QuotientFunction(sub.params)));
    const BooleanFunction lift = f.lift();
    for (Point v = 1; v < (Point{1} << p.m); ++v)
        cm.values[v] = static_cast<std::uint32_t>(resolve(restricted_derivative(lift, p, v)));
    return cm;
}

inline ClassMap class_map(const QuotientFunction& f, const Classification& sub) {
    detail::check_sub(f, sub);
    const LookupResolver resolve(sub);
    return class_map(f, sub, std::cref(resolve));
}

/// Integer Walsh-Hadamard transform sum_v F(v) (-1)^{b.v}.
inline std::vector<std::int64_t> fourier_map(const ClassMap& cm) {
    std::vector<std::int64_t> a(cm.values.begin(), cm.values.end());
    for (std::size_t h = 1; h < a.size(); h <<= 1)
        for (std::size_t i = 0; i < a.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int64_t x = a[j], y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
    return a;
}

namespace detail {

template <class It>
InvariantSignature histogram(SignatureKind kind, It first, It last, const std::string& digest) {
    std::map<std::int64_t, std::uint64_t> counts;
    for (; first != last; ++first) ++counts[static_cast<std::int64_t>(*first)];
    InvariantSignature sig;
    sig.kind = kind;
    sig.classification_digest = digest;
    sig.pairs.assign(counts.begin(), counts.end());
    return sig;
}

}  // namespace detail

inline InvariantSignature j_signature(const ClassMap& cm) {
    return detail::histogram(SignatureKind::J, cm.values.begin(), cm.values.end(), cm.classification_digest);
}

inline InvariantSignature j_hat_signature(const ClassMap& cm) {
    const std::vector<std::int64_t> fh = fourier_map(cm);
    return detail::histogram(SignatureKind::JHat, fh.begin(), fh.end(), cm.classification_digest);
}

}  // namespace rmcover
