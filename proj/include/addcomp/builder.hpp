#pragma once

// Assembles a sparse complement B of A inside N \ A from thinned dyadic
// blocks: B = union of S_{2^i} for i >= gamma, each S_{2^i} a subset of
// (2^i, 2^(i+2)] \ A whose translates cover (2^(i+1), 2^(i+2)].

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addcomp/errors.hpp"
#include "addcomp/greedy.hpp"
#include "addcomp/natset.hpp"
#include "addcomp/parallel.hpp"
#include "addcomp/sequences.hpp"

namespace addcomp {

struct CoverCertificate {
    nat lo = 0;
    nat hi = 0;
    bool ok = false;
    std::vector<nat> missing; // uncovered n in (lo, hi], ascending
    std::string a_digest;
    std::string b_digest;
};

// Exact check that every n in (lo, hi] is a + b with a in A, b in B.
inline CoverCertificate verify_cover(const NatSet& A, const NatSet& B, nat lo, nat hi, Parallelism par = {}) {
    if (hi > A.horizon() || hi > B.horizon()) throw PreconditionViolated("hi <= horizon of both sets");
    CoverCertificate cert;
    cert.lo = lo;
    cert.hi = hi;
    cert.a_digest = digest(A);
    cert.b_digest = digest(B);
    if (hi > lo) {
        NatSet sums = sumset(A, B, hi, par);
        NatSet range = from_interval(Interval::open_closed(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)), hi);
        cert.missing = set_difference(range, sums).elements();
    }
    cert.ok = cert.missing.empty();
    return cert;
}

struct BlockRecord {
    unsigned exponent = 0;
    nat base = 0;              // q = 2^exponent
    NatSet S;                  // subset of (q, 4q] \ A
    std::int64_t D = 0;        // |A & [1,q)| - |A & (q,4q]|
    nat below = 0;             // |A & [1,q)|
    nat block = 0;             // |A & (q,4q]|
    bool within_r = false;     // |A & (q,4q]| <= r
    GreedyTrace trace;
};

struct ComplementBuild {
    std::string spec;
    nat horizon = 0;
    RatioAnalysis analysis;
    NatSet A;
    NatSet B;
    std::vector<BlockRecord> blocks;
    nat threshold = 0;
    CoverCertificate coverage;
    DensityProfile density;
};

inline BlockRecord build_block(const NatSet& A, unsigned exponent, unsigned r) {
    BlockRecord rec;
    rec.exponent = exponent;
    rec.base = nat{1} << exponent;
    const auto q = static_cast<std::int64_t>(rec.base);
    rec.below = count_in(A, Interval::closed_open(1, q));
    rec.block = count_in(A, Interval::open_closed(q, 4 * q));
    rec.D = static_cast<std::int64_t>(rec.below) - static_cast<std::int64_t>(rec.block);
    rec.within_r = rec.block <= r;
    if (rec.below <= rec.block)
        throw BlockPreconditionFailed(exponent, "|A & [1,q)| = " + std::to_string(rec.below) +
                                                    " <= |A & (q,4q]| = " + std::to_string(rec.block));
    auto res = dyadic_block_thin(A, rec.base);
    rec.S = std::move(res.S);
    rec.trace = std::move(res.trace);
    return rec;
}

inline ComplementBuild build_complement(const SequenceSpec& spec, std::optional<double> alpha_hint, Parallelism par = {}) {
    ComplementBuild out;
    out.spec = describe(spec.family);
    out.horizon = spec.horizon;
    out.A = generate(spec);
    auto elems = out.A.elements();
    out.analysis = analyze_ratio(elems, alpha_hint, is_certified(spec.family));
    out.threshold = out.analysis.threshold;

    const unsigned gamma = out.analysis.gamma;
    if (gamma + 2 >= 63 || (nat{1} << (gamma + 2)) > spec.horizon)
        throw PreconditionViolated("horizon >= 2^(gamma+2) = " + std::to_string(nat{1} << std::min(gamma + 2, 62u)));

    std::vector<unsigned> exponents;
    for (unsigned i = gamma; i + 2 < 63 && (nat{1} << (i + 2)) <= spec.horizon; ++i) exponents.push_back(i);

    out.blocks.resize(exponents.size());
    parallel_chunks(exponents.size(), par, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) out.blocks[k] = build_block(out.A, exponents[k], out.analysis.r);
    });

    out.B = NatSet(spec.horizon);
    for (const auto& blk : out.blocks) out.B = set_union(out.B, blk.S);
    if (!disjoint(out.A, out.B)) throw CoverFailed("complement intersects A");

    const unsigned last = exponents.back();
    const nat hi = std::min(spec.horizon, nat{1} << (last + 1));
    out.coverage = verify_cover(out.A, out.B, out.threshold, hi, par);
    out.density = density_profile(out.B, dyadic_points(gamma, spec.horizon));
    return out;
}

// (t, (1/t) sum_{i<=t} ln(x_i)/x_i) at up to sample_count geometrically spaced
// t in [1, len]; the last sample is always t = len.
inline std::vector<std::pair<nat, double>> density_zero_diagnostic(std::span<const nat> x, nat sample_count) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] <= x[i - 1]) throw InvalidInput("sequence is not strictly increasing");
    std::vector<std::pair<nat, double>> out;
    if (x.empty() || sample_count == 0) return out;
    const nat len = x.size();
    std::vector<nat> ts;
    for (nat k = 0; k < sample_count; ++k) {
        double frac = sample_count == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(sample_count - 1);
        auto t = static_cast<nat>(std::llround(std::pow(static_cast<double>(len), frac)));
        t = std::clamp<nat>(t, 1, len);
        if (ts.empty() || t > ts.back()) ts.push_back(t);
    }
    if (ts.back() != len) ts.push_back(len);
    long double sum = 0;
    std::size_t next = 0;
    for (nat t = 1; t <= len && next < ts.size(); ++t) {
        long double xi = static_cast<long double>(x[t - 1]);
        sum += std::log(xi) / xi;
        if (t == ts[next]) {
            out.emplace_back(t, static_cast<double>(sum / static_cast<long double>(t)));
            ++next;
        }
    }
    return out;
}

} // namespace addcomp
