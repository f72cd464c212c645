#pragma once

// Interval bounds on covering radii rho(k,m) and relative radii rho_t(k,m),
// closed under the standard recursive inequalities.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "rmcover/error.hpp"

namespace rmcover {

struct RadiusInterval {
    int lo = 0;
    int hi = 0;
    std::string provenance;

    [[nodiscard]] bool exact() const noexcept { return lo == hi; }
    friend bool operator==(const RadiusInterval&, const RadiusInterval&) = default;
};

class InconsistentTable : public Error {
public:
    using Error::Error;
};

class RadiusTable {
public:
    using Key = std::pair<int, int>;              // (k, m)
    using RelativeKey = std::tuple<int, int, int>;  // (t, k, m)

    void set(int k, int m, RadiusInterval iv) {
        check(k, m, iv);
        absolute_[{k, m}] = std::move(iv);
    }
    void set_relative(int t, int k, int m, RadiusInterval iv) {
        check(k, m, iv);
        if (t < k || t > m) throw std::invalid_argument("radius table: relative radius needs k <= t <= m");
        relative_[{t, k, m}] = std::move(iv);
    }

    [[nodiscard]] std::optional<RadiusInterval> get(int k, int m) const {
        auto it = absolute_.find({k, m});
        if (it == absolute_.end()) return std::nullopt;
        return it->second;
    }
    [[nodiscard]] std::optional<RadiusInterval> get_relative(int t, int k, int m) const {
        auto it = relative_.find({t, k, m});
        if (it == relative_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] const std::map<Key, RadiusInterval>& absolute() const noexcept { return absolute_; }
    [[nodiscard]] const std::map<RelativeKey, RadiusInterval>& relative() const noexcept { return relative_; }

    friend bool operator==(const RadiusTable&, const RadiusTable&) = default;

private:
    static void check(int k, int m, const RadiusInterval& iv) {
        if (m < 1 || m > 30 || k < 0 || k > m) throw std::invalid_argument("radius table: need 0 <= k <= m, 1 <= m <= 30");
        if (iv.lo > iv.hi)
            throw InconsistentTable("radius table: empty interval [" + std::to_string(iv.lo) + ", " +
                                    std::to_string(iv.hi) + "] at (" + std::to_string(k) + "," + std::to_string(m) + ")");
    }

    std::map<Key, RadiusInterval> absolute_;
    std::map<RelativeKey, RadiusInterval> relative_;
};

namespace detail {

inline std::string radius_name(int k, int m) { return "rho(" + std::to_string(k) + "," + std::to_string(m) + ")"; }

}  // namespace detail

/// Closes the table under
///   2 rho(k,m-1) <= rho(k,m),
///   rho(k-1,m-1) <= rho(k,m),
///   rho(k,m) <= rho(k,m-1) + rho(k-1,m-1),
///   rho(k,m) <= rho_t(k,m) + rho(t,m),
/// each used to tighten every operand, plus the trivial values rho(0,m),
/// rho(m-1,m), rho(m,m) and 0 <= rho <= 2^(m-1). Every (k,m) with m in the
/// table's range is filled in. Throws InconsistentTable when an interval
/// becomes empty.
inline RadiusTable bounds_propagate(const RadiusTable& input) {
    int mlo = 31, mhi = 0;
    for (const auto& [key, iv] : input.absolute()) mlo = std::min(mlo, key.second), mhi = std::max(mhi, key.second);
    for (const auto& [key, iv] : input.relative()) mlo = std::min(mlo, std::get<2>(key)), mhi = std::max(mhi, std::get<2>(key));
    if (mhi == 0) return input;

    std::map<RadiusTable::Key, RadiusInterval> cur = input.absolute();
    std::map<RadiusTable::RelativeKey, RadiusInterval> rel = input.relative();

    auto narrow = [](RadiusInterval& iv, int lo, int hi, const std::string& why) {
        bool changed = false;
        if (lo > iv.lo) iv.lo = lo, changed = true;
        if (hi < iv.hi) iv.hi = hi, changed = true;
        if (changed) iv.provenance = why;
        return changed;
    };
    for (int m = mlo; m <= mhi; ++m)
        for (int k = 0; k <= m; ++k) {
            int lo = 0, hi = 1 << (m - 1);
            if (k == 0) lo = hi;
            if (k == m) hi = 0;
            if (k == m - 1 && m >= 1) lo = hi = 1;
            auto [it, fresh] = cur.try_emplace({k, m}, RadiusInterval{lo, hi, "trivial"});
            if (!fresh) narrow(it->second, lo, hi, "trivial");
        }

    auto fail = [](const std::string& what) { throw InconsistentTable("radius table inconsistent at " + what); };
    auto check = [&](const RadiusInterval& iv, const std::string& what) {
        if (iv.lo > iv.hi)
            fail(what + ": [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + "]");
    };
    for (const auto& [key, iv] : cur) check(iv, detail::radius_name(key.first, key.second));

    for (bool changed = true; changed;) {
        changed = false;
        for (int m = mlo + 1; m <= mhi; ++m)
            for (int k = 0; k <= m; ++k) {
                RadiusInterval& r = cur.at({k, m});
                const std::string name = detail::radius_name(k, m);
                if (k <= m - 1) {
                    RadiusInterval& a = cur.at({k, m - 1});
                    changed |= narrow(r, 2 * a.lo, r.hi, "2*" + detail::radius_name(k, m - 1));
                    changed |= narrow(a, a.lo, r.hi / 2, "half of " + name);
                }
                if (k >= 1) {
                    RadiusInterval& b = cur.at({k - 1, m - 1});
                    changed |= narrow(r, b.lo, r.hi, detail::radius_name(k - 1, m - 1));
                    changed |= narrow(b, b.lo, r.hi, name);
                }
                if (k >= 1 && k <= m - 1) {
                    RadiusInterval& a = cur.at({k, m - 1});
                    RadiusInterval& b = cur.at({k - 1, m - 1});
                    const std::string sum = detail::radius_name(k, m - 1) + "+" + detail::radius_name(k - 1, m - 1);
                    changed |= narrow(r, r.lo, a.hi + b.hi, sum);
                    changed |= narrow(a, r.lo - b.hi, a.hi, name + "-" + detail::radius_name(k - 1, m - 1));
                    changed |= narrow(b, r.lo - a.hi, b.hi, name + "-" + detail::radius_name(k, m - 1));
                }
                check(r, name);
            }
        for (auto& [key, rt] : rel) {
            const auto [t, k, m] = key;
            if (m < mlo || m > mhi) continue;
            RadiusInterval& r = cur.at({k, m});
            RadiusInterval& c = cur.at({t, m});
            const std::string rname = "rho_" + std::to_string(t) + "(" + std::to_string(k) + "," + std::to_string(m) + ")";
            changed |= narrow(r, r.lo, rt.hi + c.hi, rname + "+" + detail::radius_name(t, m));
            changed |= narrow(rt, r.lo - c.hi, rt.hi, detail::radius_name(k, m) + "-" + detail::radius_name(t, m));
            changed |= narrow(c, r.lo - rt.hi, c.hi, detail::radius_name(k, m) + "-" + rname);
            check(rt, rname);
        }
        for (const auto& [key, iv] : cur) check(iv, detail::radius_name(key.first, key.second));
    }

    RadiusTable result;
    for (const auto& [key, iv] : cur) result.set(key.first, key.second, iv);
    for (const auto& [key, iv] : rel) result.set_relative(std::get<0>(key), std::get<1>(key), std::get<2>(key), iv);
    return result;
}

}  // namespace rmcover
