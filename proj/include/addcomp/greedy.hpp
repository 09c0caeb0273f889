#pragma once

// Greedy thinning of a translate cover.
//
// Given B with (m, m+n] inside the union of the translates A+i (i in B), pick
// b_1, b_2, ... from B, each time the element whose translate covers the most
// still-uncovered targets (smallest element on ties), until every target is
// covered. With D = |A & [1, m-x1)| - (x2 - x1 - |B|) > 0 the number of picks
// t obeys
//
//     t <= (|B| / D) * H(q0) + n / q0       for every q0 >= 1,
//
// H being the harmonic number. choose_q0 picks q0 = floor(D / ln D).

#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "addcomp/cover.hpp"
#include "addcomp/errors.hpp"
#include "addcomp/natset.hpp"

namespace addcomp {

struct GreedyInstance {
    NatSet A;
    NatSet B;
    nat m = 0;
    nat n = 0;
    nat x1 = 0;
    nat x2 = 0;
};

// Raw output of the selection loop: picks in order and their marginal gains.
struct GreedySelection {
    std::vector<nat> chosen;
    std::vector<nat> gains;
};

struct GreedyTrace {
    std::vector<nat> chosen;
    std::vector<nat> gains;
    nat q = 0;                  // gain of the first pick
    std::map<nat, nat> K;       // gain value -> number of picks with that gain
    nat covered_total = 0;      // sum of gains
    std::int64_t D = 0;
    nat q0 = 1;
    bool degenerate = false;    // D < 3; q0 forced to 1
    bool fallback = false;      // thinning skipped, S = B (no picks recorded)
    double bound_two_term = 0.0;
    double bound_closed_form = 0.0;
};

struct GreedyResult {
    NatSet S;
    GreedyTrace trace;
};

// Exact rational summation below this many terms, long double above.
inline constexpr nat kExactHarmonicLimit = 1024;

inline double harmonic(nat k) {
    if (k <= kExactHarmonicLimit) {
        boost::multiprecision::cpp_rational s = 0;
        for (nat i = 1; i <= k; ++i) s += boost::multiprecision::cpp_rational(1, i);
        return s.convert_to<double>();
    }
    long double s = 0;
    for (nat i = k; i >= 1; --i) s += 1.0L / static_cast<long double>(i);
    return static_cast<double>(s);
}

struct Q0Choice {
    nat q0 = 1;
    bool degenerate = false;
};

inline Q0Choice choose_q0(std::int64_t D) {
    if (D < 3) return {1, true};
    const double d = static_cast<double>(D);
    return {static_cast<nat>(std::floor(d / std::log(d))), false};
}

inline double bound_two_term(nat b_size, std::int64_t D, nat n, nat q0) {
    if (q0 == 0) throw InvalidInput("q0 must be >= 1");
    if (D < 1) throw InvalidInput("D must be >= 1");
    return static_cast<double>(b_size) / static_cast<double>(D) * harmonic(q0) +
           static_cast<double>(n) / static_cast<double>(q0);
}

// Same bound with H(q0) replaced by 1 + ln q0.
inline double bound_closed_form(nat b_size, std::int64_t D, nat n, nat q0) {
    if (q0 == 0) throw InvalidInput("q0 must be >= 1");
    if (D < 1) throw InvalidInput("D must be >= 1");
    return static_cast<double>(b_size) / static_cast<double>(D) * (1.0 + std::log(static_cast<double>(q0))) +
           static_cast<double>(n) / static_cast<double>(q0);
}

inline std::int64_t thinning_denominator(const GreedyInstance& inst) {
    const auto low = static_cast<std::int64_t>(
        count_in(inst.A, Interval::closed_open(1, static_cast<std::int64_t>(inst.m) - static_cast<std::int64_t>(inst.x1))));
    const auto missing = static_cast<std::int64_t>(inst.x2) - static_cast<std::int64_t>(inst.x1) -
                         static_cast<std::int64_t>(inst.B.size());
    return low - missing;
}

inline double bound_two_term(const GreedyInstance& inst, nat q0) {
    return bound_two_term(inst.B.size(), thinning_denominator(inst), inst.n, q0);
}

// (m, m+n] inside A + B.
inline bool translates_cover(const NatSet& A, const NatSet& B, nat m, nat n) {
    const nat top = m + n;
    NatSet sums = sumset(A.with_horizon(top), B.with_horizon(top), top);
    return count_in(sums, Interval::open_closed(static_cast<std::int64_t>(m), static_cast<std::int64_t>(top))) == n;
}

namespace detail {
struct HeapEntry {
    nat gain;
    nat b;
};
struct HeapOrder {
    bool operator()(const HeapEntry& x, const HeapEntry& y) const {
        return x.gain < y.gain || (x.gain == y.gain && x.b > y.b);
    }
};
} // namespace detail

// Incremental greedy: gains are decremented as targets get covered and stale
// heap entries are re-queued lazily. Picks exactly what greedy_cover_reference picks.
inline GreedySelection greedy_cover(const NatSet& A, const NatSet& B, nat m, nat n) {
    const nat top = m + n;
    if (A.horizon() < top) throw PreconditionViolated("horizon >= m+n");
    GreedySelection sel;
    if (n == 0) return sel;

    std::vector<nat> as;
    A.for_each([&](nat a) {
        if (a < top) as.push_back(a);
    });
    std::vector<nat> gain(top, 0);
    std::vector<char> pool(top, 0);
    std::priority_queue<detail::HeapEntry, std::vector<detail::HeapEntry>, detail::HeapOrder> heap;
    B.for_each([&](nat b) {
        if (b >= top) return;
        // a with m < a + b <= top
        auto hi = std::upper_bound(as.begin(), as.end(), top - b);
        auto lo = std::upper_bound(as.begin(), as.end(), m > b ? m - b : 0);
        gain[b] = static_cast<nat>(hi - lo);
        if (gain[b] > 0) {
            pool[b] = 1;
            heap.push({gain[b], b});
        }
    });

    std::vector<char> covered(n + 1, 0);
    nat remaining = n;
    while (remaining > 0) {
        if (heap.empty()) throw PreconditionViolated("initial cover");
        auto [g, b] = heap.top();
        heap.pop();
        if (!pool[b]) continue;
        if (gain[b] != g) {
            if (gain[b] > 0) heap.push({gain[b], b});
            continue;
        }
        pool[b] = 0;
        sel.chosen.push_back(b);
        sel.gains.push_back(g);
        for (nat a : as) {
            nat t = a + b;
            if (t <= m) continue;
            if (t > top) break;
            if (covered[t - m]) continue;
            covered[t - m] = 1;
            --remaining;
            for (nat a2 : as) {
                if (a2 >= t) break;
                nat b2 = t - a2;
                if (pool[b2]) --gain[b2];
            }
        }
    }
    return sel;
}

// Full recomputation of every marginal gain at every step.
inline GreedySelection greedy_cover_reference(const NatSet& A, const NatSet& B, nat m, nat n) {
    const nat top = m + n;
    if (A.horizon() < top) throw PreconditionViolated("horizon >= m+n");
    GreedySelection sel;
    auto as = A.elements();
    auto bs = B.elements();
    std::vector<char> used(bs.size(), 0);
    std::vector<char> covered(n + 1, 0);
    nat remaining = n;
    while (remaining > 0) {
        nat best_gain = 0;
        std::size_t best = bs.size();
        for (std::size_t k = 0; k < bs.size(); ++k) {
            if (used[k]) continue;
            nat g = 0;
            for (nat a : as) {
                nat t = a + bs[k];
                if (t > m && t <= top && !covered[t - m]) ++g;
            }
            if (g > best_gain) {
                best_gain = g;
                best = k;
            }
        }
        if (best == bs.size()) throw PreconditionViolated("initial cover");
        used[best] = 1;
        sel.chosen.push_back(bs[best]);
        sel.gains.push_back(best_gain);
        for (nat a : as) {
            nat t = a + bs[best];
            if (t > m && t <= top && !covered[t - m]) {
                covered[t - m] = 1;
                --remaining;
            }
        }
    }
    return sel;
}

// Throws PreconditionViolated naming the first failing clause; returns D.
inline std::int64_t check_instance(const GreedyInstance& inst) {
    if (inst.A.empty()) throw PreconditionViolated("A nonempty");
    if (inst.B.empty()) throw PreconditionViolated("B nonempty");
    if (inst.x2 <= inst.x1) throw PreconditionViolated("x1 < x2");
    if (*inst.B.min() <= inst.x1 || *inst.B.max() > inst.x2) throw PreconditionViolated("B subset of (x1,x2]");
    if (inst.m + inst.n > inst.x2) throw PreconditionViolated("m+n <= x2");
    if (inst.A.horizon() < inst.m + inst.n) throw PreconditionViolated("horizon >= m+n");
    const std::int64_t D = thinning_denominator(inst);
    if (D <= 0) throw PreconditionViolated("D > 0");
    if (!translates_cover(inst.A, inst.B, inst.m, inst.n)) throw PreconditionViolated("initial cover");
    return D;
}

inline GreedyTrace make_trace(GreedySelection sel, std::int64_t D, nat b_size, nat n) {
    GreedyTrace tr;
    tr.chosen = std::move(sel.chosen);
    tr.gains = std::move(sel.gains);
    tr.q = tr.gains.empty() ? 0 : tr.gains.front();
    for (nat g : tr.gains) {
        ++tr.K[g];
        tr.covered_total += g;
    }
    tr.D = D;
    auto choice = choose_q0(D);
    tr.q0 = choice.q0;
    tr.degenerate = choice.degenerate;
    tr.bound_two_term = bound_two_term(b_size, D, n, tr.q0);
    tr.bound_closed_form = bound_closed_form(b_size, D, n, tr.q0);
    return tr;
}

inline GreedyResult greedy_thin(const GreedyInstance& inst) {
    const std::int64_t D = check_instance(inst);
    auto sel = greedy_cover(inst.A, inst.B, inst.m, inst.n);
    NatSet S(inst.B.horizon());
    for (nat b : sel.chosen) S.insert(b);
    return {std::move(S), make_trace(std::move(sel), D, inst.B.size(), inst.n)};
}

// Thinning of the block B = (q, 4q] \ A covering (2q, 4q], i.e. x1 = q,
// x2 = 4q, m = n = 2q. Here D = |A & [1,q)| - |A & (q,4q]|. For D < 3 the
// block is returned unthinned (trace.fallback).
inline GreedyResult dyadic_block_thin(const NatSet& A, nat q) {
    if (q == 0) throw PreconditionViolated("q >= 1");
    if (4 * q > A.horizon()) throw PreconditionViolated("4q <= horizon");
    const auto sq = static_cast<std::int64_t>(q);
    const nat below = count_in(A, Interval::closed_open(1, sq));
    const nat block = count_in(A, Interval::open_closed(sq, 4 * sq));
    if (below <= block) throw PreconditionViolated("|A & [1,q)| > |A & (q,4q]|");

    auto cover = block_cover(A, q, 2 * q, 4 * q);
    GreedyInstance inst{A, cover.candidate_set.with_horizon(A.horizon()), 2 * q, 2 * q, q, 4 * q};
    const auto D = static_cast<std::int64_t>(below) - static_cast<std::int64_t>(block);
    if (choose_q0(D).degenerate) {
        GreedyTrace tr = make_trace({}, D, inst.B.size(), inst.n);
        tr.fallback = true;
        return {inst.B, std::move(tr)};
    }
    return greedy_thin(inst);
}

} // namespace addcomp
