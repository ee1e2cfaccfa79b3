#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace girl {

using AtomId = std::size_t;

/// Fixed-capacity set of atoms. Ordered as an unsigned integer whose bit i
/// is atom i, which is the order rows are enumerated in during search.
class AtomSet {
public:
    static constexpr std::size_t kCapacity = 256;

    void set(AtomId a) { w_[a >> 6] |= bit(a); }
    void reset(AtomId a) { w_[a >> 6] &= ~bit(a); }
    [[nodiscard]] bool test(AtomId a) const { return (w_[a >> 6] & bit(a)) != 0; }

    [[nodiscard]] std::size_t count() const
    {
        std::size_t n = 0;
        for (auto w : w_)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    [[nodiscard]] bool empty() const
    {
        for (auto w : w_)
            if (w)
                return false;
        return true;
    }

    [[nodiscard]] bool subset_of(const AtomSet &o) const
    {
        for (std::size_t i = 0; i < kWords; ++i)
            if (w_[i] & ~o.w_[i])
                return false;
        return true;
    }

    AtomSet &operator|=(const AtomSet &o)
    {
        for (std::size_t i = 0; i < kWords; ++i)
            w_[i] |= o.w_[i];
        return *this;
    }
    AtomSet &operator&=(const AtomSet &o)
    {
        for (std::size_t i = 0; i < kWords; ++i)
            w_[i] &= o.w_[i];
        return *this;
    }
    AtomSet &operator-=(const AtomSet &o)
    {
        for (std::size_t i = 0; i < kWords; ++i)
            w_[i] &= ~o.w_[i];
        return *this;
    }
    friend AtomSet operator|(AtomSet a, const AtomSet &b) { return a |= b; }
    friend AtomSet operator&(AtomSet a, const AtomSet &b) { return a &= b; }
    friend AtomSet operator-(AtomSet a, const AtomSet &b) { return a -= b; }

    friend bool operator==(const AtomSet &, const AtomSet &) = default;
    friend std::strong_ordering operator<=>(const AtomSet &a, const AtomSet &b)
    {
        for (std::size_t i = kWords; i-- > 0;)
            if (a.w_[i] != b.w_[i])
                return a.w_[i] <=> b.w_[i];
        return std::strong_ordering::equal;
    }

    template <class F>
    void for_each(F &&f) const
    {
        for (std::size_t i = 0; i < kWords; ++i)
            for (auto w = w_[i]; w; w &= w - 1)
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    }

    [[nodiscard]] std::vector<AtomId> atoms() const
    {
        std::vector<AtomId> out;
        for_each([&](AtomId a) { out.push_back(a); });
        return out;
    }

    static AtomSet of(std::initializer_list<AtomId> ids)
    {
        AtomSet s;
        for (auto a : ids)
            s.set(a);
        return s;
    }

private:
    static constexpr std::size_t kWords = kCapacity / 64;
    static std::uint64_t bit(AtomId a) { return std::uint64_t{1} << (a & 63); }
    std::array<std::uint64_t, kWords> w_{};
};

} // namespace girl
