#pragma once

// Stabilizer chain for subgroups of AGL(m,2) acting on the points of F_2^m,
// with the fixed base (0, e_1, ..., e_m). An element fixing every base point is
// the identity, so the chain never needs extending.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rmcover/group.hpp"

namespace rmcover {

class AffineGroupChain {
public:
    explicit AffineGroupChain(int m) : m_(m) {
        check_dimension(m);
        levels_.resize(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) {
            Level& lv = levels_[static_cast<std::size_t>(i)];
            lv.base = i == 0 ? 0 : Point{1} << (i - 1);
            lv.slot.assign(std::size_t{1} << m, -1);
            rebuild_orbit(lv);
        }
    }

    [[nodiscard]] int dim() const noexcept { return m_; }

    /// Offers g; keeps it when it is not already recognised as a member.
    /// Returns true when the generated group grew.
    bool add_generator(const AffineTransformation& g) {
        if (g.dim() != m_) throw std::invalid_argument("AffineGroupChain: dimension mismatch");
        auto [residue, level] = sift(g, 0);
        if (residue.is_identity()) return false;
        insert(residue, 0, level);
        accepted_.push_back(g);
        return true;
    }

    /// Runs Schreier-Sims until the chain is a base and strong generating set,
    /// stopping early once the order reaches `target`.
    void complete(std::optional<GroupOrder> target = std::nullopt) {
        bool changed = true;
        while (changed) {
            changed = false;
            if (target && order() >= *target) return;
            for (std::size_t i = levels_.size(); i-- > 0 && !changed;) {
                const Level& lv = levels_[i];
                for (std::size_t k = 0; k < lv.orbit.size() && !changed; ++k) {
                    const Point p = lv.orbit[k];
                    for (std::size_t gi = 0; gi < lv.gens.size() && !changed; ++gi) {
                        const AffineTransformation& s = lv.gens[gi];
                        const Point q = s(p);
                        const auto qs = static_cast<std::size_t>(lv.slot[q]);
                        AffineTransformation schreier = compose(lv.inverse[qs], compose(s, lv.transversal[k]));
                        auto [residue, level] = sift(schreier, i + 1);
                        if (!residue.is_identity()) {
                            insert(residue, i + 1, level);
                            changed = true;
                        }
                    }
                }
            }
        }
    }

    /// Exact once complete() has run; a lower bound on the group order before.
    [[nodiscard]] GroupOrder order() const noexcept {
        GroupOrder n = 1;
        for (const Level& lv : levels_) n *= lv.orbit.size();
        return n;
    }

    /// Membership; exact once complete() has run.
    [[nodiscard]] bool contains(const AffineTransformation& g) const { return sift(g, 0).first.is_identity(); }

    /// Offered elements that grew the group; they generate the same group as
    /// everything offered.
    [[nodiscard]] const std::vector<AffineTransformation>& accepted() const noexcept { return accepted_; }

private:
    struct Level {
        Point base = 0;
        std::vector<AffineTransformation> gens;
        std::vector<int> slot;
        std::vector<Point> orbit;
        std::vector<AffineTransformation> transversal;  // transversal[k](base) = orbit[k]
        std::vector<AffineTransformation> inverse;
    };

    [[nodiscard]] std::pair<AffineTransformation, std::size_t> sift(AffineTransformation h, std::size_t start) const {
        for (std::size_t i = start; i < levels_.size(); ++i) {
            const Level& lv = levels_[i];
            const int k = lv.slot[h(lv.base)];
            if (k < 0) return {h, i};
            h = compose(lv.inverse[static_cast<std::size_t>(k)], h);
        }
        return {h, levels_.size()};
    }

    // r fixes the base points below `last`; it belongs to every level in [first, last].
    void insert(const AffineTransformation& r, std::size_t first, std::size_t last) {
        if (last >= levels_.size()) last = levels_.size() - 1;
        for (std::size_t i = first; i <= last; ++i) {
            levels_[i].gens.push_back(r);
            rebuild_orbit(levels_[i]);
        }
    }

    void rebuild_orbit(Level& lv) {
        for (Point p : lv.orbit) lv.slot[p] = -1;
        lv.orbit.assign(1, lv.base);
        lv.transversal.assign(1, AffineTransformation::identity(m_));
        lv.inverse.assign(1, AffineTransformation::identity(m_));
        lv.slot[lv.base] = 0;
        for (std::size_t k = 0; k < lv.orbit.size(); ++k)
            for (const AffineTransformation& s : lv.gens) {
                const Point q = s(lv.orbit[k]);
                if (lv.slot[q] >= 0) continue;
                lv.slot[q] = static_cast<int>(lv.orbit.size());
                lv.orbit.push_back(q);
                lv.transversal.push_back(compose(s, lv.transversal[k]));
                lv.inverse.push_back(invert(lv.transversal.back()));
            }
    }

    int m_;
    std::vector<Level> levels_;
    std::vector<AffineTransformation> accepted_;
};

}  // namespace rmcover
