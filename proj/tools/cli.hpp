#pragma once

// Command-line front end. Exit codes: 0 success / verified, 1 verification
// failure, 2 invalid input or unsatisfied ratio condition.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "addcomp/builder.hpp"
#include "addcomp/cover.hpp"
#include "addcomp/greedy.hpp"
#include "addcomp/natset.hpp"
#include "addcomp/oracle.hpp"
#include "addcomp/report.hpp"
#include "addcomp/sequences.hpp"
#include "addcomp/setio.hpp"

namespace addcomp::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kInvalid = 2;

inline constexpr nat kDefaultHorizon = nat{1} << 20;

// A spec string, or a bare path to a set file.
inline Family family_from_arg(const std::string& text) {
    try {
        return parse_family(text);
    } catch (const InvalidInput&) {
        if (std::filesystem::is_regular_file(text)) return family::Explicit{read_set_values(text), "file:" + text};
        throw;
    }
}

inline std::pair<nat, nat> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw InvalidInput("range must look like lo..hi: '" + text + "'");
    nat lo = detail::parse_nat(std::string_view(text).substr(0, dots), "range start");
    nat hi = detail::parse_nat(std::string_view(text).substr(dots + 2), "range end");
    if (hi < lo) throw InvalidInput("range end below start: '" + text + "'");
    return {lo, hi};
}

// Largest value in an explicit family, used when no horizon is given.
inline std::optional<nat> explicit_max(const Family& f) {
    if (auto* e = std::get_if<family::Explicit>(&f)) return e->values.empty() ? nat{1} : e->values.back();
    return std::nullopt;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write report: " + path);
    f << j.dump(2) << '\n';
}

inline void print_missing(std::ostream& out, const std::vector<nat>& missing) {
    out << "missing " << missing.size() << ":";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) out << ' ' << missing[i];
    if (missing.size() > 20) out << " ... (" << missing.size() - 20 << " more)";
    out << '\n';
}

// Geometrically spaced integers in [1, horizon] ending at horizon.
inline std::vector<nat> geometric_points(nat horizon, nat k) {
    std::vector<nat> pts;
    for (nat i = 1; i <= k; ++i) {
        double frac = static_cast<double>(i) / static_cast<double>(k);
        auto v = static_cast<nat>(std::llround(std::pow(static_cast<double>(horizon), frac)));
        v = std::clamp<nat>(v, 1, horizon);
        if (pts.empty() || v > pts.back()) pts.push_back(v);
    }
    if (pts.empty() || pts.back() != horizon) pts.push_back(horizon);
    return pts;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse additive complements inside the complement of a set", "addcomp"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: ADDCOMP_THREADS or all cores)");

    // generate
    auto* gen = app.add_subcommand("generate", "write a sequence family as a set file");
    std::string gen_spec, gen_out;
    nat gen_h = kDefaultHorizon;
    gen->add_option("spec", gen_spec, "sequence spec")->required();
    gen->add_option("--horizon", gen_h, "largest element considered");
    gen->add_option("--out", gen_out, "output set file (stdout if omitted)");

    // build
    auto* build = app.add_subcommand("build", "construct and verify a sparse complement B of A outside A");
    std::string build_spec, build_out, build_report_path, build_csv;
    nat build_h = kDefaultHorizon;
    std::optional<double> build_alpha;
    build->add_option("spec", build_spec, "sequence spec for A")->required();
    build->add_option("--horizon", build_h, "horizon N");
    build->add_option("--alpha", build_alpha, "ratio hint alpha > 1");
    build->add_option("--out", build_out, "write B as a set file");
    build->add_option("--report", build_report_path, "write the JSON report");
    build->add_option("--csv", build_csv, "write density samples of B as CSV");

    // verify
    auto* verify = app.add_subcommand("verify", "check (lo,hi] is inside A + B");
    std::string verify_a, verify_b, verify_range;
    verify->add_option("A", verify_a, "spec or set file for A")->required();
    verify->add_option("B", verify_b, "set file for B")->required();
    verify->add_option("--range", verify_range, "lo..hi")->required();

    // thin
    auto* thin = app.add_subcommand("thin", "greedy thinning of a translate cover");
    std::string thin_a, thin_b_file, thin_out, thin_report;
    std::optional<nat> thin_q, thin_m, thin_n, thin_x1, thin_x2, thin_h;
    thin->add_option("A", thin_a, "spec or set file for A")->required();
    thin->add_option("--q", thin_q, "block base q: B = (q,4q] \\ A covering (2q,4q]");
    thin->add_option("--m", thin_m);
    thin->add_option("--n", thin_n);
    thin->add_option("--x1", thin_x1);
    thin->add_option("--x2", thin_x2);
    thin->add_option("--B-file", thin_b_file, "candidate set B");
    thin->add_option("--horizon", thin_h);
    thin->add_option("--out", thin_out, "write S as a set file");
    thin->add_option("--report", thin_report, "write the trace as JSON (stdout if omitted)");

    // density
    auto* dens = app.add_subcommand("density", "sample |A & [1,n]|/n");
    std::string dens_set, dens_csv;
    nat dens_k = 16;
    std::optional<nat> dens_h;
    dens->add_option("set", dens_set, "spec or set file")->required();
    dens->add_option("--samples", dens_k, "number of sample points");
    dens->add_option("--horizon", dens_h);
    dens->add_option("--csv", dens_csv, "write CSV here instead of stdout");

    // gap
    auto* gap = app.add_subcommand("gap", "points of a range not in A + (N \\ A)");
    std::string gap_a, gap_range, gap_out;
    gap->add_option("A", gap_a, "spec or set file")->required();
    gap->add_option("--range", gap_range, "lo..hi")->required();
    gap->add_option("--out", gap_out, "write the gap set");

    // oracle
    auto* orc = app.add_subcommand("oracle", "exhaustive minimum cover next to the greedy cover");
    std::string orc_a, orc_b;
    nat orc_m = 0, orc_n = 0;
    std::optional<nat> orc_h;
    orc->add_option("A", orc_a, "spec or set file")->required();
    orc->add_option("--B-file", orc_b, "candidate set B")->required();
    orc->add_option("--m", orc_m)->required();
    orc->add_option("--n", orc_n)->required();
    orc->add_option("--horizon", orc_h);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }

    Parallelism par = threads > 0 ? Parallelism{threads} : Parallelism::from_env();

    try {
        if (*gen) {
            NatSet a = generate({family_from_arg(gen_spec), gen_h});
            if (gen_out.empty())
                write_set(out, a);
            else
                write_set_file(gen_out, a, gen_spec);
            return kOk;
        }

        if (*build) {
            auto b = build_complement({family_from_arg(build_spec), build_h}, build_alpha, par);
            auto report = build_report(b);
            if (!build_out.empty()) write_set_file(build_out, b.B, "complement of " + b.spec);
            if (!build_report_path.empty()) write_json_file(build_report_path, report);
            if (!build_csv.empty()) {
                std::ofstream f(build_csv);
                write_density_csv(f, b.density);
            }
            const auto& ra = b.analysis;
            out << "spec " << b.spec << " horizon " << b.horizon << '\n'
                << "n0=" << ra.n0 << " alpha=" << ra.alpha << " r=" << ra.r << " p=" << ra.p << " gamma=" << ra.gamma
                << " threshold=" << ra.threshold << (ra.certified ? " (certified)" : " (estimated)") << '\n'
                << "blocks " << b.blocks.size() << ", |B| = " << b.B.size() << '\n'
                << "coverage (" << b.coverage.lo << ", " << b.coverage.hi << "] " << (b.coverage.ok ? "ok" : "FAILED") << '\n';
            if (!b.coverage.ok) {
                print_missing(out, b.coverage.missing);
                return kFailed;
            }
            return kOk;
        }

        if (*verify) {
            auto [lo, hi] = parse_range(verify_range);
            if (hi == 0) throw InvalidInput("range end must be >= 1");
            NatSet a = generate({family_from_arg(verify_a), hi});
            NatSet b = read_set_file(verify_b, hi);
            auto cert = verify_cover(a, b, lo, hi, par);
            out << "range (" << lo << ", " << hi << "] " << (cert.ok ? "ok" : "NOT covered") << '\n';
            if (!cert.ok) {
                print_missing(out, cert.missing);
                return kFailed;
            }
            return kOk;
        }

        if (*thin) {
            Family fam = family_from_arg(thin_a);
            GreedyResult res;
            Json instance;
            if (thin_q) {
                const nat q = *thin_q;
                nat h = thin_h.value_or(4 * q);
                NatSet a = generate({fam, h});
                res = dyadic_block_thin(a, q);
                instance = Json{{"q", q}, {"m", 2 * q}, {"n", 2 * q}, {"x1", q}, {"x2", 4 * q}};
            } else {
                if (!thin_m || !thin_n || !thin_x1 || !thin_x2 || thin_b_file.empty())
                    throw InvalidInput("thin needs --q, or all of --m --n --x1 --x2 --B-file");
                nat h = thin_h.value_or(std::max(*thin_m + *thin_n, *thin_x2));
                NatSet a = generate({fam, h});
                NatSet b = read_set_file(thin_b_file, h);
                res = greedy_thin({a, b, *thin_m, *thin_n, *thin_x1, *thin_x2});
                instance = Json{{"m", *thin_m}, {"n", *thin_n}, {"x1", *thin_x1}, {"x2", *thin_x2}};
            }
            Json j;
            j["tool_version"] = kToolVersion;
            j["spec"] = describe(fam);
            j["instance"] = std::move(instance);
            j["S_size"] = res.S.size();
            j["trace"] = to_json(res.trace);
            if (!thin_out.empty()) write_set_file(thin_out, res.S);
            if (!thin_report.empty())
                write_json_file(thin_report, j);
            else
                out << j.dump(2) << '\n';
            return kOk;
        }

        if (*dens) {
            Family fam = family_from_arg(dens_set);
            nat h = dens_h.value_or(explicit_max(fam).value_or(kDefaultHorizon));
            NatSet a = generate({fam, h});
            if (dens_k == 0) throw InvalidInput("--samples must be >= 1");
            auto prof = density_profile(a, geometric_points(h, dens_k));
            if (dens_csv.empty()) {
                write_density_csv(out, prof);
            } else {
                std::ofstream f(dens_csv);
                write_density_csv(f, prof);
            }
            err << "upper_estimate " << prof.upper_estimate << " lower_estimate " << prof.lower_estimate << '\n';
            return kOk;
        }

        if (*gap) {
            auto [lo, hi] = parse_range(gap_range);
            if (hi == 0) throw InvalidInput("range end must be >= 1");
            NatSet a = generate({family_from_arg(gap_a), hi});
            NatSet g = gap_detector(a, lo, hi, par);
            if (!gap_out.empty()) write_set_file(gap_out, g, "gap of " + gap_a);
            Json j;
            j["tool_version"] = kToolVersion;
            j["range"] = Json{{"lo", lo}, {"hi", hi}};
            j["gap_count"] = g.size();
            Json first = Json::array();
            auto elems = g.elements();
            for (std::size_t i = 0; i < elems.size() && i < 20; ++i) first.push_back(elems[i]);
            j["gap_first"] = std::move(first);
            // Only sums from [1, hi] can reach points <= hi, so this is exact for the range.
            j["note"] = "exact within the range; says nothing about larger numbers";
            out << j.dump(2) << '\n';
            return g.empty() ? kOk : kFailed;
        }

        if (*orc) {
            Family fam = family_from_arg(orc_a);
            nat h = orc_h.value_or(orc_m + orc_n);
            NatSet a = generate({fam, h});
            NatSet b = read_set_file(orc_b, h);
            auto best = minimal_cover(a, b, orc_m, orc_n);
            auto greedy = greedy_cover(a, b, orc_m, orc_n);
            Json j;
            j["tool_version"] = kToolVersion;
            j["optimal_size"] = best.size;
            j["optimal"] = best.S.elements();
            j["greedy_size"] = greedy.chosen.size();
            j["greedy"] = greedy.chosen;
            out << j.dump(2) << '\n';
            return kOk;
        }
    } catch (const BlockPreconditionFailed& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    } catch (const CoverFailed& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}

} // namespace addcomp::cli
