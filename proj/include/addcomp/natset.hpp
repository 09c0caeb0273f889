#pragma once

// Exact finite sets of natural numbers truncated at a horizon N.
//
// A NatSet models S & [1, N] for some S of naturals (0 is not a natural here).
// Membership is stored densely: bit x of the word array is element x, bit 0
// and every bit above N are kept clear. Every operation that can produce a
// value outside [1, N] clips it.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "addcomp/errors.hpp"
#include "addcomp/parallel.hpp"

namespace addcomp {

using nat = std::uint64_t;

// Integer interval with independently open/closed ends, e.g. (a,b] or [a,b).
struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = -1;
    bool lo_closed = true;
    bool hi_closed = true;

    static constexpr Interval closed(std::int64_t a, std::int64_t b) { return {a, b, true, true}; }
    static constexpr Interval open(std::int64_t a, std::int64_t b) { return {a, b, false, false}; }
    // (a, b]
    static constexpr Interval open_closed(std::int64_t a, std::int64_t b) { return {a, b, false, true}; }
    // [a, b)
    static constexpr Interval closed_open(std::int64_t a, std::int64_t b) { return {a, b, true, false}; }

    constexpr std::int64_t first() const { return lo_closed ? lo : lo + 1; }
    constexpr std::int64_t last() const { return hi_closed ? hi : hi - 1; }
    constexpr bool empty() const { return first() > last(); }
    constexpr bool contains(std::int64_t x) const { return first() <= x && x <= last(); }
};

namespace detail {

inline constexpr std::size_t word_count(nat horizon) { return static_cast<std::size_t>(horizon / 64 + 1); }

// 64 bits of `src` starting at signed bit position `pos`; bits outside the array read as 0.
inline std::uint64_t load_bits(std::span<const std::uint64_t> src, std::int64_t pos) {
    const auto total = static_cast<std::int64_t>(src.size()) * 64;
    if (pos >= total || pos <= -64) return 0;
    if (pos < 0) return src[0] << static_cast<unsigned>(-pos);
    auto w = static_cast<std::size_t>(pos / 64);
    auto b = static_cast<unsigned>(pos % 64);
    std::uint64_t v = src[w] >> b;
    if (b != 0 && w + 1 < src.size()) v |= src[w + 1] << (64 - b);
    return v;
}

// dst |= src << shift, discarding bits that fall past dst's end.
inline void shift_or(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, nat shift) {
    const std::size_t w = static_cast<std::size_t>(shift / 64);
    const unsigned b = static_cast<unsigned>(shift % 64);
    if (w >= dst.size()) return;
    const std::size_t end = std::min(dst.size(), w + src.size() + (b ? 1 : 0));
    if (b == 0) {
        for (std::size_t i = w; i < end; ++i) dst[i] |= src[i - w];
        return;
    }
    for (std::size_t i = w; i < end; ++i) {
        const std::size_t j = i - w;
        std::uint64_t v = j < src.size() ? src[j] << b : 0;
        if (j > 0) v |= src[j - 1] >> (64 - b);
        dst[i] |= v;
    }
}

// Number of set bits with index in [first, last] (inclusive, both in range).
inline nat popcount_range(std::span<const std::uint64_t> words, nat first, nat last) {
    if (first > last) return 0;
    std::size_t lw = first / 64, rw = last / 64;
    std::uint64_t lmask = ~0ULL << (first % 64);
    std::uint64_t rmask = ~0ULL >> (63 - last % 64);
    if (lw == rw) return static_cast<nat>(std::popcount(words[lw] & lmask & rmask));
    nat s = static_cast<nat>(std::popcount(words[lw] & lmask));
    for (std::size_t i = lw + 1; i < rw; ++i) s += static_cast<nat>(std::popcount(words[i]));
    s += static_cast<nat>(std::popcount(words[rw] & rmask));
    return s;
}

} // namespace detail

class NatSet {
public:
    NatSet() : NatSet(1) {}

    explicit NatSet(nat horizon) : horizon_(horizon), words_(detail::word_count(horizon), 0) {
        if (horizon == 0) throw InvalidInput("NatSet horizon must be >= 1");
    }

    // Elements may be given in any order; each must lie in [1, horizon].
    NatSet(nat horizon, std::initializer_list<nat> elems) : NatSet(horizon) {
        for (nat x : elems) insert(x);
    }

    // Strictly increasing positive values; values above the horizon are dropped.
    static NatSet from_sorted(std::span<const nat> values, nat horizon) {
        NatSet s(horizon);
        nat prev = 0;
        for (nat v : values) {
            if (v == 0) throw InvalidInput("0 is not a natural number");
            if (v <= prev) throw InvalidInput("values are not strictly increasing at " + std::to_string(v));
            prev = v;
            if (v <= horizon) s.set_bit(v);
        }
        return s;
    }

    // Adopts a raw word array; bit 0 and bits above the horizon are cleared.
    static NatSet from_words(nat horizon, std::vector<std::uint64_t> words) {
        NatSet s(horizon);
        words.resize(s.words_.size(), 0);
        s.words_ = std::move(words);
        s.normalize();
        return s;
    }

    nat horizon() const noexcept { return horizon_; }
    nat size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool contains(std::int64_t x) const noexcept {
        if (x < 1 || static_cast<nat>(x) > horizon_) return false;
        auto ux = static_cast<nat>(x);
        return (words_[ux / 64] >> (ux % 64)) & 1ULL;
    }

    void insert(nat x) {
        if (x < 1 || x > horizon_)
            throw InvalidInput("element " + std::to_string(x) + " outside [1, " + std::to_string(horizon_) + "]");
        set_bit(x);
    }

    void erase(nat x) {
        if (!contains(static_cast<std::int64_t>(x))) return;
        words_[x / 64] &= ~(1ULL << (x % 64));
        --count_;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<nat>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }

    std::vector<nat> elements() const {
        std::vector<nat> out;
        out.reserve(count_);
        for_each([&](nat x) { out.push_back(x); });
        return out;
    }

    std::optional<nat> min() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return i * 64 + static_cast<nat>(std::countr_zero(words_[i]));
        return std::nullopt;
    }

    std::optional<nat> max() const {
        for (std::size_t i = words_.size(); i-- > 0;)
            if (words_[i]) return i * 64 + 63 - static_cast<nat>(std::countl_zero(words_[i]));
        return std::nullopt;
    }

    // Same elements under a different horizon (truncating when it shrinks).
    NatSet with_horizon(nat horizon) const {
        auto w = words_;
        w.resize(detail::word_count(horizon), 0);
        return from_words(horizon, std::move(w));
    }

    friend bool operator==(const NatSet& a, const NatSet& b) {
        return a.horizon_ == b.horizon_ && a.words_ == b.words_;
    }

private:
    void set_bit(nat x) {
        std::uint64_t& w = words_[x / 64];
        std::uint64_t bit = 1ULL << (x % 64);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }

    void normalize() {
        words_[0] &= ~1ULL;
        unsigned tail = static_cast<unsigned>(horizon_ % 64);
        words_.back() &= (tail == 63) ? ~0ULL : ((1ULL << (tail + 1)) - 1);
        count_ = 0;
        for (auto w : words_) count_ += static_cast<nat>(std::popcount(w));
    }

    nat horizon_;
    std::vector<std::uint64_t> words_;
    nat count_ = 0;
};

// Integers of `iv` clipped to [1, horizon].
inline NatSet from_interval(Interval iv, nat horizon) {
    NatSet s(horizon);
    std::int64_t first = std::max<std::int64_t>(iv.first(), 1);
    std::int64_t last = std::min<std::int64_t>(iv.last(), static_cast<std::int64_t>(horizon));
    if (first > last) return s;
    std::vector<std::uint64_t> w(detail::word_count(horizon), 0);
    for (auto x = static_cast<nat>(first); x <= static_cast<nat>(last);) {
        if (x % 64 == 0 && x + 63 <= static_cast<nat>(last)) {
            w[x / 64] = ~0ULL;
            x += 64;
        } else {
            w[x / 64] |= 1ULL << (x % 64);
            ++x;
        }
    }
    return NatSet::from_words(horizon, std::move(w));
}

// |A & iv|
inline nat count_in(const NatSet& a, Interval iv) {
    std::int64_t first = std::max<std::int64_t>(iv.first(), 1);
    std::int64_t last = std::min<std::int64_t>(iv.last(), static_cast<std::int64_t>(a.horizon()));
    if (first > last) return 0;
    return detail::popcount_range(a.words(), static_cast<nat>(first), static_cast<nat>(last));
}

// {x + y : x in A, y in B} & [1, horizon]. Exact whenever both inputs are
// complete up to horizon - 1, since every representation of n uses summands < n.
inline NatSet sumset(const NatSet& a, const NatSet& b, nat horizon, Parallelism par = {}) {
    const NatSet& shifts = a.size() <= b.size() ? a : b;
    const NatSet& body = a.size() <= b.size() ? b : a;
    const std::size_t nwords = detail::word_count(horizon);
    std::vector<nat> offsets;
    offsets.reserve(shifts.size());
    shifts.for_each([&](nat s) {
        if (s < horizon) offsets.push_back(s);
    });
    // Only the bits of `body` below horizon can land in range.
    auto src = body.words().subspan(0, std::min(body.words().size(), nwords));

    const std::size_t chunks = chunk_count(offsets.size(), par);
    std::vector<std::vector<std::uint64_t>> partial(chunks);
    parallel_chunks(offsets.size(), par, [&](std::size_t c, std::size_t begin, std::size_t end) {
        auto& acc = partial[c];
        acc.assign(nwords, 0);
        for (std::size_t k = begin; k < end; ++k) detail::shift_or(acc, src, offsets[k]);
    });
    std::vector<std::uint64_t> out(nwords, 0);
    for (auto& p : partial) {
        if (p.empty()) continue;
        for (std::size_t i = 0; i < nwords; ++i) out[i] |= p[i];
    }
    return NatSet::from_words(horizon, std::move(out));
}

// B + u, clipped to [1, horizon]. u may be negative.
inline NatSet translate(const NatSet& b, std::int64_t u, nat horizon) {
    std::vector<std::uint64_t> out(detail::word_count(horizon), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = detail::load_bits(b.words(), static_cast<std::int64_t>(i * 64) - u);
    return NatSet::from_words(horizon, std::move(out));
}

// u - B, clipped to [1, horizon].
inline NatSet reflect(std::int64_t u, const NatSet& b, nat horizon) {
    NatSet out(horizon);
    b.for_each([&](nat y) {
        std::int64_t v = u - static_cast<std::int64_t>(y);
        if (v >= 1 && static_cast<nat>(v) <= horizon) out.insert(static_cast<nat>(v));
    });
    return out;
}

namespace detail {
template <class Op>
NatSet combine(const NatSet& a, const NatSet& b, Op op) {
    std::vector<std::uint64_t> out(a.words().begin(), a.words().end());
    auto bw = b.words();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(out[i], i < bw.size() ? bw[i] : 0);
    return NatSet::from_words(a.horizon(), std::move(out));
}
} // namespace detail

// Binary set operations keep the horizon of the left operand.
inline NatSet set_union(const NatSet& a, const NatSet& b) {
    return detail::combine(a, b, [](std::uint64_t x, std::uint64_t y) { return x | y; });
}
inline NatSet set_intersection(const NatSet& a, const NatSet& b) {
    return detail::combine(a, b, [](std::uint64_t x, std::uint64_t y) { return x & y; });
}
inline NatSet set_difference(const NatSet& a, const NatSet& b) {
    return detail::combine(a, b, [](std::uint64_t x, std::uint64_t y) { return x & ~y; });
}

// [1, horizon] \ A
inline NatSet complement(const NatSet& a) {
    std::vector<std::uint64_t> out(a.words().begin(), a.words().end());
    for (auto& w : out) w = ~w;
    return NatSet::from_words(a.horizon(), std::move(out));
}

// Every element of a lies in b.
inline bool is_subset(const NatSet& a, const NatSet& b) {
    auto aw = a.words();
    auto bw = b.words();
    for (std::size_t i = 0; i < aw.size(); ++i) {
        std::uint64_t other = i < bw.size() ? bw[i] : 0;
        if (aw[i] & ~other) return false;
    }
    return true;
}

inline bool disjoint(const NatSet& a, const NatSet& b) {
    auto aw = a.words();
    auto bw = b.words();
    for (std::size_t i = 0; i < std::min(aw.size(), bw.size()); ++i)
        if (aw[i] & bw[i]) return false;
    return true;
}

// #{x in A : x + shift in R}
inline nat shifted_overlap(const NatSet& a, const NatSet& r, std::int64_t shift) {
    nat s = 0;
    auto aw = a.words();
    for (std::size_t i = 0; i < aw.size(); ++i) {
        if (!aw[i]) continue;
        s += static_cast<nat>(std::popcount(aw[i] & detail::load_bits(r.words(), static_cast<std::int64_t>(i * 64) + shift)));
    }
    return s;
}

// 64-bit FNV-1a over the horizon and membership words, as 16 hex digits.
inline std::string digest(const NatSet& a) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            h ^= (v >> (8 * k)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(a.horizon());
    for (auto w : a.words()) mix(w);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

struct DensitySample {
    nat n = 0;
    nat count = 0;
    double ratio = 0.0;
};

// Finite-horizon view of upper/lower asymptotic density.
struct DensityProfile {
    std::vector<DensitySample> samples;
    double upper_estimate = 0.0;
    double lower_estimate = 0.0;
};

// |A & [1,n]| / n at each sample point. The estimates are the max and min
// ratio over the last ceil(k/2) samples.
inline DensityProfile density_profile(const NatSet& a, std::span<const nat> points) {
    if (points.empty()) throw InvalidInput("density profile needs at least one sample point");
    DensityProfile prof;
    nat prev = 0;
    for (nat n : points) {
        if (n == 0 || n > a.horizon())
            throw InvalidInput("sample point " + std::to_string(n) + " outside [1, " + std::to_string(a.horizon()) + "]");
        if (n <= prev) throw InvalidInput("sample points must be strictly increasing");
        prev = n;
        nat c = count_in(a, Interval::closed(1, static_cast<std::int64_t>(n)));
        prof.samples.push_back({n, c, static_cast<double>(c) / static_cast<double>(n)});
    }
    std::size_t tail = prof.samples.size() / 2;
    prof.upper_estimate = prof.samples[tail].ratio;
    prof.lower_estimate = prof.samples[tail].ratio;
    for (std::size_t i = tail; i < prof.samples.size(); ++i) {
        prof.upper_estimate = std::max(prof.upper_estimate, prof.samples[i].ratio);
        prof.lower_estimate = std::min(prof.lower_estimate, prof.samples[i].ratio);
    }
    return prof;
}

// Powers of two 2^from, 2^(from+1), ... not exceeding horizon.
inline std::vector<nat> dyadic_points(unsigned from, nat horizon) {
    std::vector<nat> pts;
    for (unsigned e = from; e < 63 && (nat{1} << e) <= horizon; ++e) pts.push_back(nat{1} << e);
    return pts;
}

} // namespace addcomp
