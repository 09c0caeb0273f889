#pragma once

// Block cover: (n, L] is contained in A + ((m, L] \ A) whenever n >= 2m and
// |A & [1,m]| > |A & (m,L]|. Also the two translate-counting inequalities the
// thinning bound is built from.

#include <cstdint>
#include <optional>
#include <vector>

#include "addcomp/errors.hpp"
#include "addcomp/natset.hpp"

namespace addcomp {

// t = a + v with a in A and v in the candidate set.
struct Witness {
    nat t = 0;
    nat a = 0;
    nat v = 0;
};

// One pigeonhole step of the cover argument: for y in X the shifted copy
// U_y = {u + y - a : a in A & [1,m]} holds some v outside A, so u + y = a + v.
struct PigeonholeStep {
    nat y = 0;
    nat a = 0;
    nat v = 0;
};

struct BlockCoverResult {
    nat m = 0;
    nat n = 0;
    nat L = 0;
    nat u = 0;                // max(A & [1,m])
    NatSet candidate_set;     // (m, L] \ A
    NatSet covered;           // (n, L]
    NatSet X;                 // {x in (m,L] & A : u + x in (n,L]}
    std::vector<PigeonholeStep> steps; // one per element of X
    std::optional<std::vector<Witness>> witnesses;
};

// Every t in (n, L] with its representation using the smallest a in A.
inline std::vector<Witness> cover_witnesses(const NatSet& a, const NatSet& candidates, nat lo, nat hi) {
    std::vector<Witness> out;
    auto as = a.elements();
    for (nat t = lo + 1; t <= hi; ++t) {
        for (nat x : as) {
            if (x >= t) break;
            if (candidates.contains(static_cast<std::int64_t>(t - x))) {
                out.push_back({t, x, t - x});
                break;
            }
        }
    }
    return out;
}

// Checks the preconditions, builds the candidate set and confirms the cover
// by exact sumset. `L` is the integer right end of the block (the real l*n
// floored). CoverFailed means the library itself is inconsistent.
inline BlockCoverResult block_cover(const NatSet& a, nat m, nat n, nat L, bool with_witnesses = false) {
    if (a.horizon() < L) throw PreconditionViolated("horizon >= L");
    if (n < 2 * m) throw PreconditionViolated("n >= 2m");
    if (L <= n) throw PreconditionViolated("L > n");
    const auto sm = static_cast<std::int64_t>(m);
    const auto sn = static_cast<std::int64_t>(n);
    const auto sL = static_cast<std::int64_t>(L);
    const nat low = count_in(a, Interval::closed(1, sm));
    const nat high = count_in(a, Interval::open_closed(sm, sL));
    if (low == 0) throw PreconditionViolated("A & [1,m] nonempty");
    if (low <= high) throw PreconditionViolated("|A & [1,m]| > |A & (m,L]|");

    BlockCoverResult res;
    res.m = m;
    res.n = n;
    res.L = L;
    NatSet lower = set_intersection(a.with_horizon(L), from_interval(Interval::closed(1, sm), L));
    res.u = *lower.max();
    res.candidate_set = set_difference(from_interval(Interval::open_closed(sm, sL), L), a);
    res.covered = from_interval(Interval::open_closed(sn, sL), L);

    NatSet sums = sumset(a.with_horizon(L), res.candidate_set, L);
    if (!is_subset(res.covered, sums)) {
        auto missing = set_difference(res.covered, sums);
        throw CoverFailed("block cover failed at " + std::to_string(*missing.min()));
    }

    // Trace of the pigeonhole argument for the points u + x with x in A.
    res.X = NatSet(L);
    auto lower_elems = lower.elements();
    a.for_each([&](nat x) {
        if (x <= m || x > L) return;
        if (res.u + x > n && res.u + x <= L) res.X.insert(x);
    });
    res.X.for_each([&](nat y) {
        for (nat b : lower_elems) {
            nat v = res.u + y - b;
            if (res.candidate_set.contains(static_cast<std::int64_t>(v))) {
                res.steps.push_back({y, b, v});
                return;
            }
        }
        throw CoverFailed("no element of U_" + std::to_string(y) + " lies outside A");
    });

    if (with_witnesses) res.witnesses = cover_witnesses(a, res.candidate_set, n, L);
    return res;
}

// Lower count for the number of translates A+i (i in B) through n:
// lhs = |A & (n - B)|, rhs = |A & [n-b, n-a)| - |(a,b] \ B|.
struct TranslateLowerBound {
    nat lhs = 0;
    std::int64_t rhs = 0;
};

inline TranslateLowerBound translate_count_lower_bound(const NatSet& A, const NatSet& B, nat a, nat b, nat n) {
    if (!B.empty() && (*B.min() <= a || *B.max() > b)) throw PreconditionViolated("B subset of (a,b]");
    if (n > A.horizon()) throw PreconditionViolated("n <= horizon");
    const auto sn = static_cast<std::int64_t>(n);
    TranslateLowerBound out;
    out.lhs = set_intersection(A, reflect(sn, B, A.horizon())).size();
    const auto span = static_cast<std::int64_t>(b) - static_cast<std::int64_t>(a);
    out.rhs = static_cast<std::int64_t>(count_in(A, Interval::closed_open(sn - static_cast<std::int64_t>(b), sn - static_cast<std::int64_t>(a)))) -
              (span - static_cast<std::int64_t>(B.size()));
    return out;
}

// Upper count: sum over x in B of |(A+x) & R| against r|B|.
struct TranslateUpperBound {
    nat total = 0;
    nat bound = 0;
};

inline TranslateUpperBound translate_count_upper_bound(const NatSet& A, const NatSet& B, const NatSet& R, nat r) {
    TranslateUpperBound out;
    B.for_each([&](nat x) {
        nat c = shifted_overlap(A, R, static_cast<std::int64_t>(x));
        if (c > r) throw HypothesisViolated(x, c, r);
        out.total += c;
    });
    out.bound = r * B.size();
    return out;
}

} // namespace addcomp
