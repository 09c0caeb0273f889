#pragma once

// Generators for the base set A and the ratio analysis that fixes the
// construction parameters (n0, alpha, r, p, gamma, threshold).

#include <array>
#include <charconv>
#include <cstdio>
#include <bit>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "addcomp/errors.hpp"
#include "addcomp/natset.hpp"
#include "addcomp/setio.hpp"

namespace addcomp {

namespace family {
struct Explicit {
    std::vector<nat> values;
    std::string source = "explicit";
};
struct Powers {
    nat base = 2;
};
// a_i = floor(c * alpha^i), i = 0, 1, ..., zeros and repeats dropped.
struct Geometric {
    double c = 1.0;
    double alpha = 2.0;
};
struct Fibonacci {};
struct Primes {};
struct Composites {};
struct Squares {};
} // namespace family

using Family = std::variant<family::Explicit, family::Powers, family::Geometric, family::Fibonacci,
                            family::Primes, family::Composites, family::Squares>;

struct SequenceSpec {
    Family family;
    nat horizon = 1;
};

// Families whose ratio condition holds analytically, not just on the sampled prefix.
inline bool is_certified(const Family& f) {
    return std::holds_alternative<family::Powers>(f) || std::holds_alternative<family::Geometric>(f);
}

inline std::string describe(const Family& f) {
    struct V {
        std::string operator()(const family::Explicit& e) const { return e.source; }
        std::string operator()(const family::Powers& p) const { return "powers:" + std::to_string(p.base); }
        std::string operator()(const family::Geometric& g) const {
            char buf[96];
            std::snprintf(buf, sizeof buf, "geometric:c=%g,alpha=%g", g.c, g.alpha);
            return buf;
        }
        std::string operator()(const family::Fibonacci&) const { return "fib"; }
        std::string operator()(const family::Primes&) const { return "primes"; }
        std::string operator()(const family::Composites&) const { return "composites"; }
        std::string operator()(const family::Squares&) const { return "squares"; }
    };
    return std::visit(V{}, f);
}

namespace detail {

inline double parse_double(std::string_view s, std::string_view what) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(str, &used);
    } catch (...) {
        used = 0;
    }
    if (used == 0 || used != str.size()) throw InvalidInput("bad " + std::string(what) + ": '" + str + "'");
    return v;
}

inline nat parse_nat(std::string_view s, std::string_view what) {
    nat v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InvalidInput("bad " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

} // namespace detail

// Accepts powers:K, geometric:c=C,alpha=X, primes, composites, fib, squares,
// file:PATH and explicit:v1,v2,...
inline Family parse_family(std::string_view text) {
    auto colon = text.find(':');
    std::string_view head = text.substr(0, colon);
    std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    bool has_arg = colon != std::string_view::npos;

    if (head == "primes" && !has_arg) return family::Primes{};
    if (head == "composites" && !has_arg) return family::Composites{};
    if ((head == "fib" || head == "fibonacci") && !has_arg) return family::Fibonacci{};
    if (head == "squares" && !has_arg) return family::Squares{};
    if (head == "powers") {
        nat k = has_arg ? detail::parse_nat(arg, "powers base") : 2;
        if (k < 2) throw InvalidInput("powers base must be >= 2");
        return family::Powers{k};
    }
    if (head == "geometric") {
        family::Geometric g{0.0, 0.0};
        bool have_c = false, have_alpha = false;
        while (!arg.empty()) {
            auto comma = arg.find(',');
            std::string_view kv = arg.substr(0, comma);
            arg = comma == std::string_view::npos ? std::string_view{} : arg.substr(comma + 1);
            auto eq = kv.find('=');
            if (eq == std::string_view::npos) throw InvalidInput("geometric expects key=value pairs");
            auto key = kv.substr(0, eq);
            auto val = kv.substr(eq + 1);
            if (key == "c") {
                g.c = detail::parse_double(val, "c");
                have_c = true;
            } else if (key == "alpha") {
                g.alpha = detail::parse_double(val, "alpha");
                have_alpha = true;
            } else {
                throw InvalidInput("unknown geometric parameter '" + std::string(key) + "'");
            }
        }
        if (!have_c || !have_alpha) throw InvalidInput("geometric needs c=... and alpha=...");
        if (!(g.c > 0)) throw InvalidInput("geometric c must be > 0");
        if (!(g.alpha > 1)) throw InvalidInput("geometric alpha must be > 1");
        return g;
    }
    if (head == "file" && has_arg) {
        std::string path(arg);
        return family::Explicit{read_set_values(path), "file:" + path};
    }
    if (head == "explicit") {
        family::Explicit e;
        e.source = std::string(text);
        while (!arg.empty()) {
            auto comma = arg.find(',');
            e.values.push_back(detail::parse_nat(arg.substr(0, comma), "explicit value"));
            arg = comma == std::string_view::npos ? std::string_view{} : arg.substr(comma + 1);
        }
        return e;
    }
    throw InvalidInput("unknown sequence spec '" + std::string(text) + "'");
}

inline SequenceSpec parse_sequence_spec(std::string_view text, nat horizon) {
    return {parse_family(text), horizon};
}

// Bit sieve of Eratosthenes over [1, horizon].
inline NatSet sieve_primes(nat horizon) {
    std::vector<std::uint64_t> w(detail::word_count(horizon), ~0ULL);
    w[0] &= ~3ULL; // 0 and 1
    for (nat i = 2; i * i <= horizon; ++i) {
        if (!((w[i / 64] >> (i % 64)) & 1ULL)) continue;
        for (nat j = i * i; j <= horizon; j += i) w[j / 64] &= ~(1ULL << (j % 64));
    }
    return NatSet::from_words(horizon, std::move(w));
}

inline NatSet generate(const SequenceSpec& spec) {
    const nat h = spec.horizon;
    struct V {
        nat h;
        NatSet operator()(const family::Explicit& e) const { return NatSet::from_sorted(e.values, h); }
        NatSet operator()(const family::Powers& p) const {
            if (p.base < 2) throw InvalidInput("powers base must be >= 2");
            NatSet s(h);
            for (nat v = 1; v <= h; v *= p.base) {
                s.insert(v);
                if (v > h / p.base) break;
            }
            return s;
        }
        NatSet operator()(const family::Geometric& g) const {
            if (!(g.alpha > 1)) throw InvalidInput("geometric alpha must be > 1");
            if (!(g.c > 0)) throw InvalidInput("geometric c must be > 0");
            NatSet s(h);
            for (int i = 0;; ++i) {
                long double v = std::floor(static_cast<long double>(g.c) * std::pow(static_cast<long double>(g.alpha), i));
                if (v > static_cast<long double>(h)) break;
                if (v >= 1) s.insert(static_cast<nat>(v));
            }
            return s;
        }
        NatSet operator()(const family::Fibonacci&) const {
            NatSet s(h);
            for (nat a = 1, b = 2; a <= h;) {
                s.insert(a);
                nat c = a + b;
                a = b;
                b = c;
            }
            return s;
        }
        NatSet operator()(const family::Primes&) const { return sieve_primes(h); }
        NatSet operator()(const family::Composites&) const {
            NatSet c = set_difference(complement(sieve_primes(h)), NatSet(h, {1}));
            return c;
        }
        NatSet operator()(const family::Squares&) const {
            NatSet s(h);
            for (nat k = 1; k * k <= h; ++k) s.insert(k * k);
            return s;
        }
    };
    return std::visit(V{h}, spec.family);
}

// Parameters of the dyadic construction. Indices are 1-based as in a_1 < a_2 < ...
struct RatioAnalysis {
    std::size_t n0 = 1;
    double alpha = 0.0;
    unsigned r = 0;
    nat p = 0;
    unsigned gamma = 0;
    nat threshold = 0;
    bool certified = false;
};

inline constexpr std::array<double, 5> kAlphaGrid{1.05, 1.1, 1.25, 1.5, 2.0};

namespace detail {
// Relative slack so that decimal ratios such as 21/20 >= 1.05 compare as intended.
inline constexpr long double kRatioSlack = 1e-12L;

inline bool ratio_holds(nat lower, nat upper, double alpha) {
    return static_cast<long double>(upper) * (1 + kRatioSlack) >= static_cast<long double>(alpha) * static_cast<long double>(lower);
}
} // namespace detail

// Smallest 1-based n0 such that a_{n+1} >= alpha * a_n for every n0 <= n < len.
// Empty when not even the final pair satisfies it (no pair would be checked).
inline std::optional<std::size_t> minimal_tail_index(std::span<const nat> seq, double alpha) {
    if (seq.size() < 2) return std::nullopt;
    std::size_t n0 = 1;
    for (std::size_t i = seq.size() - 1; i-- > 0;) {
        if (!detail::ratio_holds(seq[i], seq[i + 1], alpha)) {
            n0 = i + 2;
            break;
        }
    }
    if (n0 >= seq.size()) return std::nullopt;
    return n0;
}

// a_{n+1} >= alpha a_n for all in-range n >= n0.
inline bool ratio_condition_holds(std::span<const nat> seq, double alpha, std::size_t n0) {
    for (std::size_t n = n0; n < seq.size(); ++n)
        if (!detail::ratio_holds(seq[n - 1], seq[n], alpha)) return false;
    return true;
}

// Smallest r >= 1 with alpha^r >= 4.
inline unsigned ratio_exponent(double alpha) {
    if (!(alpha > 1)) throw InvalidInput("alpha must be > 1");
    unsigned r = 1;
    long double pw = alpha;
    while (pw * (1 + detail::kRatioSlack) < 4.0L) {
        pw *= alpha;
        ++r;
    }
    return r;
}

inline RatioAnalysis analyze_ratio(std::span<const nat> seq, std::optional<double> alpha_hint, bool certified = false) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] <= seq[i - 1]) throw InvalidInput("sequence is not strictly increasing");

    RatioAnalysis ra;
    ra.certified = certified;
    if (alpha_hint) {
        if (!(*alpha_hint > 1)) throw InvalidInput("alpha hint must be > 1");
        auto n0 = minimal_tail_index(seq, *alpha_hint);
        if (!n0) throw RatioNotSatisfied("ratio condition fails for alpha hint on every tail within the horizon");
        ra.alpha = *alpha_hint;
        ra.n0 = *n0;
    } else {
        bool found = false;
        for (auto it = kAlphaGrid.rbegin(); it != kAlphaGrid.rend(); ++it) {
            if (auto n0 = minimal_tail_index(seq, *it)) {
                ra.alpha = *it;
                ra.n0 = *n0;
                found = true;
                break;
            }
        }
        if (!found) throw RatioNotSatisfied("no grid alpha admits a tail with a_{n+1} >= alpha a_n");
    }
    ra.r = ratio_exponent(ra.alpha);
    const std::size_t need = 2 * static_cast<std::size_t>(ra.r) + 2;
    if (seq.size() < need)
        throw IndexOutOfRange("need at least " + std::to_string(need) + " elements within the horizon for r = " +
                              std::to_string(ra.r) + ", have " + std::to_string(seq.size()));
    ra.p = 1 + std::max(seq[ra.n0 - 1], seq[2 * ra.r]);
    ra.gamma = 2 + static_cast<unsigned>(std::bit_width(ra.p) - 1);
    if (ra.gamma + 1 >= 63) throw IndexOutOfRange("threshold exponent too large");
    ra.threshold = nat{1} << (ra.gamma + 1);
    return ra;
}

inline RatioAnalysis analyze_ratio(const SequenceSpec& spec, std::optional<double> alpha_hint) {
    auto elems = generate(spec).elements();
    return analyze_ratio(elems, alpha_hint, is_certified(spec.family));
}

} // namespace addcomp
