#pragma once

// Brute-force references used to cross-check the fast paths.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "addcomp/errors.hpp"
#include "addcomp/natset.hpp"
#include "addcomp/parallel.hpp"

namespace addcomp {

// O(|A||B|) double loop; same contract as sumset().
inline NatSet sumset_reference(const NatSet& A, const NatSet& B, nat horizon) {
    NatSet out(horizon);
    auto as = A.elements();
    auto bs = B.elements();
    for (nat x : as)
        for (nat y : bs)
            if (x + y <= horizon) out.insert(x + y);
    return out;
}

inline constexpr nat kMinimalCoverCap = 22;

struct MinimalCover {
    NatSet S;
    nat size = 0;
};

namespace detail {

class CoverSearch {
public:
    CoverSearch(std::vector<nat> cands, std::vector<std::vector<std::uint64_t>> masks, std::size_t targets)
        : cands_(std::move(cands)), masks_(std::move(masks)), words_((targets + 63) / 64), targets_(targets) {
        // suffix_union_[k] = union of masks k.. ; suffix_best_[k] = largest mask popcount among k..
        suffix_union_.assign(cands_.size() + 1, std::vector<std::uint64_t>(words_, 0));
        suffix_best_.assign(cands_.size() + 1, 0);
        for (std::size_t k = cands_.size(); k-- > 0;) {
            for (std::size_t w = 0; w < words_; ++w) suffix_union_[k][w] = suffix_union_[k + 1][w] | masks_[k][w];
            std::size_t pc = 0;
            for (auto v : masks_[k]) pc += static_cast<std::size_t>(std::popcount(v));
            suffix_best_[k] = std::max(suffix_best_[k + 1], pc);
        }
    }

    // Lexicographically first cover of exactly `size` elements, if any.
    bool find(std::size_t size, std::vector<std::size_t>& picked) {
        std::vector<std::uint64_t> covered(words_, 0);
        picked.clear();
        return dfs(0, size, covered, picked);
    }

private:
    std::size_t uncovered(const std::vector<std::uint64_t>& covered) const {
        std::size_t c = 0;
        for (auto v : covered) c += static_cast<std::size_t>(std::popcount(v));
        return targets_ - c;
    }

    bool dfs(std::size_t start, std::size_t left, std::vector<std::uint64_t>& covered, std::vector<std::size_t>& picked) {
        std::size_t open = uncovered(covered);
        if (open == 0) return left == 0 || fill(start, left, picked);
        if (left == 0 || start >= cands_.size()) return false;
        if (left * suffix_best_[start] < open) return false;
        for (std::size_t w = 0; w < words_; ++w)
            if (~(covered[w] | suffix_union_[start][w]) & tail_mask(w)) return false;
        for (std::size_t k = start; k + left <= cands_.size(); ++k) {
            auto saved = covered;
            for (std::size_t w = 0; w < words_; ++w) covered[w] |= masks_[k][w];
            picked.push_back(k);
            if (dfs(k + 1, left - 1, covered, picked)) return true;
            picked.pop_back();
            covered = std::move(saved);
        }
        return false;
    }

    // Already covered with slots to spare: pad with the smallest unused indices.
    bool fill(std::size_t start, std::size_t left, std::vector<std::size_t>& picked) {
        if (start + left > cands_.size()) return false;
        for (std::size_t k = 0; k < left; ++k) picked.push_back(start + k);
        return true;
    }

    std::uint64_t tail_mask(std::size_t w) const {
        std::size_t bits = targets_ - w * 64;
        return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
    }

    std::vector<nat> cands_;
    std::vector<std::vector<std::uint64_t>> masks_;
    std::size_t words_;
    std::size_t targets_;
    std::vector<std::vector<std::uint64_t>> suffix_union_;
    std::vector<std::size_t> suffix_best_;
};

} // namespace detail

// Minimum-cardinality S subset of B with (m, m+n] inside A + S; among minimum
// covers the lexicographically smallest element list.
inline MinimalCover minimal_cover(const NatSet& A, const NatSet& B, nat m, nat n) {
    if (B.size() > kMinimalCoverCap)
        throw TooLarge("exhaustive cover search is capped at |B| <= " + std::to_string(kMinimalCoverCap));
    const nat top = m + n;
    if (A.horizon() < top) throw PreconditionViolated("horizon >= m+n");
    MinimalCover out{NatSet(B.horizon()), 0};
    if (n == 0) return out;

    auto bs = B.elements();
    auto as = A.elements();
    std::vector<std::vector<std::uint64_t>> masks;
    for (nat b : bs) {
        std::vector<std::uint64_t> mask((n + 63) / 64, 0);
        for (nat a : as) {
            nat t = a + b;
            if (t > m && t <= top) mask[(t - m - 1) / 64] |= 1ULL << ((t - m - 1) % 64);
        }
        masks.push_back(std::move(mask));
    }
    detail::CoverSearch search(bs, masks, n);
    std::vector<std::size_t> picked;
    for (std::size_t size = 1; size <= bs.size(); ++size) {
        if (search.find(size, picked)) {
            for (auto k : picked) out.S.insert(bs[k]);
            out.size = size;
            return out;
        }
    }
    throw NoCover("B does not cover (m, m+n]");
}

// (lo, hi] \ (A + ([1,hi] \ A)): points that no b outside A can reach.
inline NatSet gap_detector(const NatSet& A, nat lo, nat hi, Parallelism par = {}) {
    if (hi > A.horizon()) throw PreconditionViolated("hi <= horizon");
    NatSet a = A.with_horizon(hi);
    NatSet sums = sumset(a, complement(a), hi, par);
    NatSet range = from_interval(Interval::open_closed(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)), hi);
    return set_difference(range, sums);
}

} // namespace addcomp
