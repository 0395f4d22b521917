#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tattoo {

/// Highest primary colour index representable by a ColourSet.
inline constexpr int kMaxColour = 64;

/// Bit (i-1) of a ColourMask marks primary colour c_i.
using ColourMask = std::uint64_t;

inline constexpr ColourMask colour_bit(int index) { return ColourMask{1} << (index - 1); }

/// A brush identity: a non-empty set of primary colour indices. A singleton is
/// the primary colour itself, two or more members form a primary blend.
class ColourSet {
public:
    constexpr ColourSet() = default;
    constexpr explicit ColourSet(ColourMask mask) : mask_(mask) {}
    ColourSet(std::initializer_list<int> members) {
        for (int c : members) {
            if (c < 1 || c > kMaxColour) {
                throw std::out_of_range("colour index out of range: " + std::to_string(c));
            }
            mask_ |= colour_bit(c);
        }
    }

    static ColourSet primary(int index) { return ColourSet(colour_bit(index)); }

    ColourMask mask() const { return mask_; }
    bool empty() const { return mask_ == 0; }
    int size() const { return std::popcount(mask_); }
    bool is_primary() const { return size() == 1; }
    bool is_blend() const { return size() >= 2; }
    bool subset_of(ColourMask primaries) const { return (mask_ & ~primaries) == 0; }

    /// The arc label l(a): member indices in increasing order.
    std::vector<int> members() const {
        std::vector<int> out;
        for (ColourMask m = mask_; m != 0; m &= m - 1) {
            out.push_back(std::countr_zero(m) + 1);
        }
        return out;
    }

    /// l_Sigma(a): the sum of the label's entries.
    int label_sum() const {
        int sum = 0;
        for (ColourMask m = mask_; m != 0; m &= m - 1) {
            sum += std::countr_zero(m) + 1;
        }
        return sum;
    }

    /// "c1", "c1,2", ... for diagnostics.
    std::string str() const {
        std::string out = "c";
        bool first = true;
        for (int c : members()) {
            if (!first) out += ",";
            out += std::to_string(c);
            first = false;
        }
        return out;
    }

    friend bool operator==(const ColourSet&, const ColourSet&) = default;

    // Canonical dispatch order: by cardinality, then lexicographically by the
    // increasing member sequence.
    friend std::strong_ordering operator<=>(const ColourSet& a, const ColourSet& b) {
        if (auto c = a.size() <=> b.size(); c != 0) return c;
        ColourMask diff = a.mask_ ^ b.mask_;
        if (diff == 0) return std::strong_ordering::equal;
        // The lowest differing index decides: whoever holds it is smaller.
        return (a.mask_ & (diff & -diff)) ? std::strong_ordering::less : std::strong_ordering::greater;
    }

private:
    ColourMask mask_ = 0;
};

/// Smallest `count` colour indices not present in `present`.
inline ColourMask smallest_missing(ColourMask present, int count) {
    ColourMask added = 0;
    for (int c = 1; count > 0 && c <= kMaxColour; ++c) {
        if (!(present & colour_bit(c))) {
            added |= colour_bit(c);
            --count;
        }
    }
    if (count > 0) {
        throw std::overflow_error("colour index space exhausted");
    }
    return added;
}

/// Mask holding c_1..c_count.
inline constexpr ColourMask first_colours(int count) {
    return count >= kMaxColour ? ~ColourMask{0} : (ColourMask{1} << count) - 1;
}

}  // namespace tattoo
