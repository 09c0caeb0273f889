#pragma once

// JSON reports (stable key order) and CSV density export.

#include <ostream>
#include <string>

#include "json.hpp"

#include "addcomp/builder.hpp"
#include "addcomp/greedy.hpp"

namespace addcomp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

inline Json to_json(const RatioAnalysis& ra) {
    Json j;
    j["n0"] = ra.n0;
    j["alpha"] = ra.alpha;
    j["r"] = ra.r;
    j["p"] = ra.p;
    j["gamma"] = ra.gamma;
    j["threshold"] = ra.threshold;
    j["certified"] = ra.certified;
    return j;
}

inline Json to_json(const GreedyTrace& tr) {
    Json j;
    j["chosen"] = tr.chosen;
    j["gains"] = tr.gains;
    j["q"] = tr.q;
    Json k = Json::object();
    for (auto [gain, count] : tr.K) k[std::to_string(gain)] = count;
    j["K"] = std::move(k);
    j["covered_total"] = tr.covered_total;
    j["D"] = tr.D;
    j["q0"] = tr.q0;
    j["degenerate"] = tr.degenerate;
    j["fallback"] = tr.fallback;
    j["bound_two_term"] = tr.bound_two_term;
    j["bound_closed_form"] = tr.bound_closed_form;
    return j;
}

inline Json to_json(const CoverCertificate& c, std::size_t max_missing = 20) {
    Json j;
    j["lo"] = c.lo;
    j["hi"] = c.hi;
    j["ok"] = c.ok;
    j["missing_count"] = c.missing.size();
    Json miss = Json::array();
    for (std::size_t i = 0; i < c.missing.size() && i < max_missing; ++i) miss.push_back(c.missing[i]);
    j["missing"] = std::move(miss);
    j["a_digest"] = c.a_digest;
    j["b_digest"] = c.b_digest;
    return j;
}

inline Json to_json(const DensityProfile& d) {
    Json arr = Json::array();
    for (const auto& s : d.samples) arr.push_back(Json{{"n", s.n}, {"count", s.count}, {"ratio", s.ratio}});
    return arr;
}

inline Json build_report(const ComplementBuild& b) {
    Json j;
    j["tool_version"] = kToolVersion;
    j["spec"] = b.spec;
    j["horizon"] = b.horizon;
    j["parameters"] = to_json(b.analysis);
    Json blocks = Json::array();
    for (const auto& blk : b.blocks) {
        Json e;
        e["exponent"] = blk.exponent;
        e["base"] = blk.base;
        e["size"] = blk.S.size();
        e["below"] = blk.below;
        e["block"] = blk.block;
        e["within_r"] = blk.within_r;
        e["D"] = blk.D;
        e["q0"] = blk.trace.q0;
        e["degenerate"] = blk.trace.degenerate;
        e["bound_two_term"] = blk.trace.bound_two_term;
        blocks.push_back(std::move(e));
    }
    j["blocks"] = std::move(blocks);
    j["B_size"] = b.B.size();
    j["disjoint"] = disjoint(b.A, b.B);
    j["coverage"] = to_json(b.coverage);
    j["density_samples"] = to_json(b.density);
    return j;
}

inline void write_density_csv(std::ostream& out, const DensityProfile& d) {
    out << "n,count,ratio\n";
    for (const auto& s : d.samples) out << s.n << ',' << s.count << ',' << Json(s.ratio).dump() << '\n';
}

} // namespace addcomp
