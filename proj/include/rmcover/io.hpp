#pragma once

// Line-oriented text formats. Monomials are written with letters, a = x1,
// b = x2, ...; truth tables as hex with the most significant nibble first.

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rmcover/boolean_function.hpp"
#include "rmcover/classification.hpp"
#include "rmcover/error.hpp"
#include "rmcover/group.hpp"
#include "rmcover/invariant.hpp"
#include "rmcover/quotient.hpp"
#include "rmcover/radius.hpp"

namespace rmcover {

inline constexpr int kClassificationFormat = 1;

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = s.find(sep);
        out.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) return out;
        s.remove_prefix(pos + 1);
    }
}

inline std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t j = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > j) out.push_back(s.substr(j, i - j));
    }
    return out;
}

template <class T>
T parse_number(std::string_view s, const char* what, int base = 10) {
    s = trim(s);
    if (base == 16 && (s.starts_with("0x") || s.starts_with("0X"))) s.remove_prefix(2);
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw Error(std::string("malformed ") + what + " '" + std::string(s) + "'");
    return v;
}

// Strips a trailing '#' comment and surrounding blanks.
inline std::string_view content_of(std::string_view line) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    return trim(line);
}

template <class Fn>
auto at_line(std::size_t line, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), line);
    }
}

inline char hex_digit(unsigned v) { return "0123456789abcdef"[v & 15U]; }

}  // namespace detail

// ANF text: "0", "1", or monomials like "abd+bcf" joined by '+'. Repeated
// monomials cancel.

inline std::string format_monomial(Point mask) {
    if (mask == 0) return "1";
    std::string s;
    for (int i = 0; i < kMaxVars; ++i)
        if ((mask >> i) & 1U) s.push_back(static_cast<char>('a' + i));
    return s;
}

inline std::string format_anf(const AnfPolynomial& p) {
    std::vector<Point> ms = p.monomials();
    if (ms.empty()) return "0";
    std::stable_sort(ms.begin(), ms.end(), [](Point a, Point b) { return std::popcount(a) < std::popcount(b); });
    std::string s;
    for (Point mask : ms) {
        if (!s.empty()) s.push_back('+');
        s += format_monomial(mask);
    }
    return s;
}

inline AnfPolynomial parse_anf(std::string_view text, int m) {
    AnfPolynomial p(m);
    text = detail::trim(text);
    if (text.empty()) throw Error("empty polynomial");
    if (text == "0") return p;
    for (std::string_view term : detail::split(text, '+')) {
        term = detail::trim(term);
        if (term.empty()) throw Error("empty monomial in '" + std::string(text) + "'");
        Point mask = 0;
        if (term != "1")
            for (char c : term) {
                if (c < 'a' || c >= 'a' + m)
                    throw Error("variable '" + std::string(1, c) + "' out of range for m = " + std::to_string(m));
                const Point bit = Point{1} << (c - 'a');
                if (mask & bit) throw Error("repeated variable in monomial '" + std::string(term) + "'");
                mask |= bit;
            }
        p.coefficients().flip(mask);
    }
    return p;
}

inline std::string format_hex(const BooleanFunction& f) {
    const std::size_t nibbles = std::max<std::size_t>(1, f.size() / 4);
    std::string s = "0x";
    for (std::size_t i = nibbles; i-- > 0;) {
        unsigned v = 0;
        for (unsigned b = 0; b < 4; ++b)
            if (4 * i + b < f.size() && f(static_cast<Point>(4 * i + b))) v |= 1U << b;
        s.push_back(detail::hex_digit(v));
    }
    return s;
}

inline BooleanFunction parse_hex(std::string_view text, int m) {
    text = detail::trim(text);
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    BooleanFunction f(m);
    const std::size_t nibbles = std::max<std::size_t>(1, f.size() / 4);
    if (text.size() != nibbles)
        throw Error("truth table for m = " + std::to_string(m) + " needs " + std::to_string(nibbles) + " hex digits");
    for (std::size_t i = 0; i < nibbles; ++i) {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[nibbles - 1 - i])));
        unsigned v;
        if (c >= '0' && c <= '9')
            v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<unsigned>(c - 'a' + 10);
        else
            throw Error("bad hex digit '" + std::string(1, c) + "'");
        for (unsigned b = 0; b < 4; ++b)
            if ((v >> b) & 1U) {
                if (4 * i + b >= f.size()) throw Error("truth table has bits beyond 2^m");
                f.set(static_cast<Point>(4 * i + b));
            }
    }
    return f;
}

// Function lines: "m:0xHEX", "m:anf" or "(s,t,m):anf".

struct FunctionRecord {
    std::optional<SpaceParams> space;
    BooleanFunction function;
    std::size_t line = 0;

    [[nodiscard]] QuotientFunction quotient() const {
        if (!space) throw Error("function record carries no (s,t,m) space");
        return project(function, space->s, space->t);
    }
};

inline SpaceParams parse_space(std::string_view text) {
    text = detail::trim(text);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') throw Error("space must read (s,t,m)");
    const auto parts = detail::split(text.substr(1, text.size() - 2), ',');
    if (parts.size() != 3) throw Error("space must read (s,t,m)");
    SpaceParams p{detail::parse_number<int>(parts[0], "s"), detail::parse_number<int>(parts[1], "t"),
                  detail::parse_number<int>(parts[2], "m")};
    check_dimension(p.m);
    if (p.s < 0 || p.t > p.m || p.s > p.t + 1) throw Error("invalid space " + p.to_string());
    return p;
}

inline FunctionRecord parse_function_line(std::string_view line) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw Error("expected 'm:function' or '(s,t,m):anf'");
    const std::string_view head = detail::trim(line.substr(0, colon));
    const std::string_view body = detail::trim(line.substr(colon + 1));
    FunctionRecord r;
    if (head.starts_with("(")) {
        r.space = parse_space(head);
        const AnfPolynomial p = parse_anf(body, r.space->m);
        const DegreeInfo d = degree_valuation(p);
        if (!d.is_zero() && d.degree > r.space->t) throw Error("function degree exceeds t");
        r.function = to_function(p);
        return r;
    }
    const int m = detail::parse_number<int>(head, "variable count");
    check_dimension(m);
    if (body.starts_with("0x") || body.starts_with("0X"))
        r.function = parse_hex(body, m);
    else
        r.function = to_function(parse_anf(body, m));
    return r;
}

inline std::vector<FunctionRecord> read_functions(std::istream& in) {
    std::vector<FunctionRecord> out;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const std::string_view s = detail::content_of(raw);
        if (s.empty()) continue;
        FunctionRecord r = detail::at_line(line, [&] { return parse_function_line(s); });
        r.line = line;
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string format_function_line(const QuotientFunction& f) {
    return f.params().to_string() + ":" + format_anf(f.anf());
}

// Affine maps: "m:r1,r2,...,rm;a" with row masks and translation in hex.

inline std::string format_affine(const AffineTransformation& s) {
    std::ostringstream o;
    o << s.dim() << ':';
    for (int i = 0; i < s.dim(); ++i) o << (i ? "," : "") << std::hex << s.linear().row(i);
    o << ';' << std::hex << s.translation();
    return o.str();
}

inline AffineTransformation parse_affine(std::string_view text) {
    text = detail::trim(text);
    const auto colon = text.find(':');
    const auto semi = text.find(';');
    if (colon == std::string_view::npos || semi == std::string_view::npos || semi < colon)
        throw Error("transformation must read m:row,...;translation");
    const int m = detail::parse_number<int>(text.substr(0, colon), "variable count");
    check_dimension(m);
    const auto parts = detail::split(text.substr(colon + 1, semi - colon - 1), ',');
    if (parts.size() != static_cast<std::size_t>(m)) throw Error("transformation needs m rows");
    std::vector<Point> rows;
    for (std::string_view r : parts) {
        const auto v = detail::parse_number<Point>(r, "row", 16);
        if (v & ~point_mask(m)) throw Error("row has bits beyond m");
        rows.push_back(v);
    }
    const auto a = detail::parse_number<Point>(text.substr(semi + 1), "translation", 16);
    if (a & ~point_mask(m)) throw Error("translation has bits beyond m");
    return AffineTransformation(LinearMap::from_rows(m, rows), a);
}

// Classification files:
//
//   rmcover-classification 1
//   space (s,t,m)
//   provenance agl-standard
//   classes N
//   digest HEX
//   stabilizers yes|no
//   rep <index> <orbit size or -> <anf>
//   gen <index> <transformation>
//
// rep lines come in index order; gen lines follow their rep.

inline void write_classification(std::ostream& out, const Classification& c) {
    out << "rmcover-classification " << kClassificationFormat << '\n'
        << "space " << c.params.to_string() << '\n'
        << "provenance " << c.provenance << '\n'
        << "classes " << c.size() << '\n'
        << "digest " << c.digest << '\n'
        << "stabilizers " << (c.has_stabilizers() ? "yes" : "no") << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        out << "rep " << i << ' ';
        if (c.has_orbit_sizes())
            out << c.orbit_sizes[i];
        else
            out << '-';
        out << ' ' << format_anf(c.reps[i].anf()) << '\n';
        if (c.has_stabilizers())
            for (const AffineTransformation& g : c.stabilizers[i]) out << "gen " << i << ' ' << format_affine(g) << '\n';
    }
}

struct ReadOptions {
    /// Rebuild the dense lookup when the space fits this many elements.
    std::uint64_t lookup_max_elements = std::uint64_t{1} << 26;
};

inline Classification read_classification(std::istream& in, const ReadOptions& opt = {}) {
    Classification c;
    std::optional<std::size_t> declared;
    std::string declared_digest;
    bool have_space = false;
    bool with_stabilizers = false;
    std::vector<std::optional<std::uint64_t>> sizes;
    std::string raw;
    std::size_t line = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view s = detail::content_of(raw);
        if (s.empty()) continue;
        detail::at_line(line, [&] {
            const auto w = detail::words(s);
            const std::string_view key = w[0];
            if (!header) {
                if (key != "rmcover-classification" || w.size() != 2) throw Error("not a classification file");
                if (detail::parse_number<int>(w[1], "format version") != kClassificationFormat)
                    throw Error("unsupported classification format version");
                header = true;
            } else if (key == "space" && w.size() == 2) {
                c.params = parse_space(w[1]);
                have_space = true;
            } else if (key == "provenance" && w.size() == 2) {
                c.provenance = std::string(w[1]);
            } else if (key == "classes" && w.size() == 2) {
                declared = detail::parse_number<std::size_t>(w[1], "class count");
            } else if (key == "digest" && w.size() == 2) {
                declared_digest = std::string(w[1]);
            } else if (key == "stabilizers" && w.size() == 2 && (w[1] == "yes" || w[1] == "no")) {
                with_stabilizers = w[1] == "yes";
            } else if (key == "rep" && w.size() >= 4) {
                if (!have_space) throw Error("rep before space");
                if (detail::parse_number<std::size_t>(w[1], "class index") != c.reps.size())
                    throw Error("rep lines must be numbered consecutively from 0");
                if (w[2] == "-")
                    sizes.emplace_back();
                else
                    sizes.emplace_back(detail::parse_number<std::uint64_t>(w[2], "orbit size"));
                const AnfPolynomial p = parse_anf(s.substr(static_cast<std::size_t>(w[3].data() - s.data())), c.params.m);
                const DegreeInfo d = degree_valuation(p);
                if (!d.is_zero() && (d.valuation < c.params.s || d.degree > c.params.t))
                    throw Error("representative is not reduced in B" + c.params.to_string());
                c.reps.emplace_back(c.params, p);
                c.stabilizers.emplace_back();
            } else if (key == "gen" && w.size() == 3) {
                const auto idx = detail::parse_number<std::size_t>(w[1], "class index");
                if (!with_stabilizers) throw Error("gen line in a file without stabilizers");
                if (idx + 1 != c.reps.size()) throw Error("gen line must follow its rep");
                const AffineTransformation g = parse_affine(w[2]);
                if (g.dim() != c.params.m) throw Error("generator dimension mismatch");
                if (!(q_apply_affine(c.reps[idx], g) == c.reps[idx]))
                    throw Error("generator does not fix representative " + std::to_string(idx));
                c.stabilizers[idx].push_back(g);
            } else {
                throw Error("unrecognized record '" + std::string(key) + "'");
            }
        });
    }
    if (!header) throw ParseError("empty classification file", line);
    if (!have_space) throw ParseError("classification has no space line", line);
    if (declared && *declared != c.reps.size())
        throw ParseError("class count " + std::to_string(*declared) + " does not match " +
                             std::to_string(c.reps.size()) + " rep lines",
                         line);
    if (!with_stabilizers) c.stabilizers.clear();
    if (std::all_of(sizes.begin(), sizes.end(), [](const auto& v) { return v.has_value(); }))
        for (const auto& v : sizes) c.orbit_sizes.push_back(*v);
    seal(c);
    if (!declared_digest.empty() && declared_digest != c.digest)
        throw DigestMismatch("classification digest " + declared_digest + " does not match its contents (" + c.digest + ")");
    const std::uint64_t dim = space_dimension(c.params);
    if (dim < 63 && (std::uint64_t{1} << dim) <= opt.lookup_max_elements) {
        const std::vector<std::uint64_t> stated = c.orbit_sizes;
        rebuild_lookup(c, opt.lookup_max_elements);
        if (!stated.empty() && stated != c.orbit_sizes) throw Error("classification: stated orbit sizes are wrong");
    }
    return c;
}

// Signature lines: "J <digest> value:count ...".

inline std::string format_signature(const InvariantSignature& sig) {
    std::string s = sig.kind == SignatureKind::J ? "J" : "JHat";
    s += ' ';
    s += sig.classification_digest.empty() ? "-" : sig.classification_digest;
    for (const auto& [v, n] : sig.pairs) s += ' ' + std::to_string(v) + ':' + std::to_string(n);
    return s;
}

inline InvariantSignature parse_signature(std::string_view text) {
    const auto w = detail::words(text);
    if (w.size() < 2) throw Error("signature needs a kind and a digest");
    InvariantSignature sig;
    if (w[0] == "J")
        sig.kind = SignatureKind::J;
    else if (w[0] == "JHat")
        sig.kind = SignatureKind::JHat;
    else
        throw Error("unknown signature kind '" + std::string(w[0]) + "'");
    if (w[1] != "-") sig.classification_digest = std::string(w[1]);
    for (std::size_t i = 2; i < w.size(); ++i) {
        const auto colon = w[i].find(':');
        if (colon == std::string_view::npos) throw Error("signature entries read value:count");
        sig.pairs.emplace_back(detail::parse_number<std::int64_t>(w[i].substr(0, colon), "value"),
                               detail::parse_number<std::uint64_t>(w[i].substr(colon + 1), "count"));
    }
    for (std::size_t i = 1; i < sig.pairs.size(); ++i)
        if (sig.pairs[i - 1].first >= sig.pairs[i].first) throw Error("signature values must ascend");
    return sig;
}

// Radius tables: "rho k m lo [hi]" and "rhot t k m lo [hi]"; a single value is exact.

inline RadiusTable read_radius_table(std::istream& in) {
    RadiusTable table;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const std::string_view s = detail::content_of(raw);
        if (s.empty()) continue;
        detail::at_line(line, [&] {
            const auto w = detail::words(s);
            auto num = [&](std::size_t i) { return detail::parse_number<int>(w[i], "radius field"); };
            if (w[0] == "rho" && (w.size() == 4 || w.size() == 5)) {
                const int lo = num(3);
                table.set(num(1), num(2), {lo, w.size() == 5 ? num(4) : lo, "input"});
            } else if (w[0] == "rhot" && (w.size() == 5 || w.size() == 6)) {
                const int lo = num(4);
                table.set_relative(num(1), num(2), num(3), {lo, w.size() == 6 ? num(5) : lo, "input"});
            } else {
                throw Error("expected 'rho k m lo [hi]' or 'rhot t k m lo [hi]'");
            }
        });
    }
    return table;
}

inline void write_radius_table(std::ostream& out, const RadiusTable& table) {
    auto put = [&](const RadiusInterval& iv) {
        out << ' ' << iv.lo;
        if (iv.hi != iv.lo) out << ' ' << iv.hi;
        out << "  # " << iv.provenance << '\n';
    };
    for (const auto& [key, iv] : table.absolute()) {
        out << "rho " << key.first << ' ' << key.second;
        put(iv);
    }
    for (const auto& [key, iv] : table.relative()) {
        out << "rhot " << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << std::get<2>(key);
        put(iv);
    }
}

}  // namespace rmcover
