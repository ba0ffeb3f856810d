// ================================================================
// File: include/ballean/sequence.hpp
// Generator sequences (a_n): the built-in families plus explicit tables.
// The sequence is data; nothing here decides convergence properties.
// ================================================================

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ballean/group.hpp"

namespace ballean {

/**
 * SequenceSpec picks one term family:
 *   basis                  a_n = e_n (coefficient 1 on coordinate n)
 *   geometric              a_n = c * r^n on one Z-coordinate
 *   alternating_geometric  a_n = (-1)^n * c * r^n on one Z-coordinate
 *   factorial              a_n = c * n! on one Z-coordinate
 *   table                  explicit finite list of elements
 *
 * Scalar kinds take `coeff` (c), `ratio` (r, unused by factorial) and the
 * target coordinate. Table-backed sequences are finite; operations that
 * walk the tail report exhaustion distinctly (table_exhausted).
 */
struct SequenceSpec {
    enum class Kind { basis, geometric, alternating_geometric, factorial, table };

    Kind kind = Kind::basis;
    coeff_t coeff = 1;
    coeff_t ratio = 2;
    coord_t coord = 0;
    std::vector<Element> table;

    void validate(const GroupSpec& spec) const {
        if (kind == Kind::geometric || kind == Kind::alternating_geometric) {
            if (ratio == 0) throw std::invalid_argument("sequence ratio must be nonzero");
        }
        if (kind != Kind::table && kind != Kind::basis && coeff == 0)
            throw std::invalid_argument("sequence coefficient must be nonzero");
        if (kind == Kind::table && table.empty())
            throw std::invalid_argument("table sequence must have at least one term");
        (void)spec;
    }

    std::string to_string() const;
    static SequenceSpec from_string(const GroupSpec& spec, std::string_view text);

    friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

inline std::string kind_name(SequenceSpec::Kind k) {
    switch (k) {
        case SequenceSpec::Kind::basis: return "basis";
        case SequenceSpec::Kind::geometric: return "geometric";
        case SequenceSpec::Kind::alternating_geometric: return "alternating_geometric";
        case SequenceSpec::Kind::factorial: return "factorial";
        case SequenceSpec::Kind::table: return "table";
    }
    return "?";
}

inline SequenceSpec::Kind kind_from_name(std::string_view name) {
    if (name == "basis") return SequenceSpec::Kind::basis;
    if (name == "geometric") return SequenceSpec::Kind::geometric;
    if (name == "alternating_geometric") return SequenceSpec::Kind::alternating_geometric;
    if (name == "factorial") return SequenceSpec::Kind::factorial;
    if (name == "table") return SequenceSpec::Kind::table;
    throw std::invalid_argument("unknown sequence kind \"" + std::string(name) + "\"");
}

namespace detail {

inline coeff_t checked_mul(coeff_t a, coeff_t b) {
    coeff_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("sequence term overflows 64-bit coefficient");
    return out;
}

}  // namespace detail

/// The n-th term a_n. Pure: repeated calls agree.
inline Element seq_term(const GroupSpec& spec, const SequenceSpec& seq, std::size_t n) {
    using Kind = SequenceSpec::Kind;
    switch (seq.kind) {
        case Kind::basis:
            return canonicalize(spec, {{static_cast<coord_t>(n), 1}});
        case Kind::geometric:
        case Kind::alternating_geometric: {
            coeff_t v = seq.coeff;
            for (std::size_t k = 0; k < n; ++k) v = detail::checked_mul(v, seq.ratio);
            if (seq.kind == Kind::alternating_geometric && (n % 2) == 1) {
                if (v == std::numeric_limits<coeff_t>::min())
                    throw std::overflow_error("sequence term overflows 64-bit coefficient");
                v = -v;
            }
            return canonicalize(spec, {{seq.coord, v}});
        }
        case Kind::factorial: {
            coeff_t v = seq.coeff;
            for (std::size_t k = 2; k <= n; ++k)
                v = detail::checked_mul(v, static_cast<coeff_t>(k));
            return canonicalize(spec, {{seq.coord, v}});
        }
        case Kind::table:
            if (n >= seq.table.size())
                throw table_exhausted("table sequence has " + std::to_string(seq.table.size()) +
                                      " terms, index " + std::to_string(n) + " requested");
            return seq.table[n];
    }
    throw std::logic_error("unreachable sequence kind");
}

struct NontrivialReport {
    std::size_t zero_terms = 0;
    bool nontrivial_on_window = false;
};

/// Counts zero terms among a_0..a_{N-1}. The window verdict holds iff every
/// suffix of the window still contains a nonzero term.
inline NontrivialReport check_nontrivial(const GroupSpec& spec, const SequenceSpec& seq,
                                         std::size_t window_terms) {
    if (window_terms < 1) throw std::invalid_argument("nontriviality window must be >= 1");
    NontrivialReport report;
    std::size_t last_nonzero = 0;
    bool any_nonzero = false;
    for (std::size_t n = 0; n < window_terms; ++n) {
        if (seq_term(spec, seq, n).is_zero()) {
            ++report.zero_terms;
        } else {
            last_nonzero = n;
            any_nonzero = true;
        }
    }
    report.nontrivial_on_window = any_nonzero && last_nonzero == window_terms - 1;
    return report;
}

inline std::string SequenceSpec::to_string() const {
    std::string out = "kind=" + kind_name(kind);
    if (kind == Kind::table) {
        out += ";terms=";
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (i) out.push_back('|');
            out += table[i].str();
        }
    } else if (kind != Kind::basis) {
        out += ";c=" + std::to_string(coeff);
        if (kind != Kind::factorial) out += ";r=" + std::to_string(ratio);
        out += ";coord=" + std::to_string(coord);
    }
    return out;
}

inline SequenceSpec SequenceSpec::from_string(const GroupSpec& spec, std::string_view text) {
    SequenceSpec seq;
    auto bad = [&] { throw std::invalid_argument("malformed sequence spec \"" + std::string(text) + "\""); };
    if (!text.starts_with("kind=")) bad();
    text.remove_prefix(5);
    std::size_t semi = text.find(';');
    seq.kind = kind_from_name(text.substr(0, semi));
    if (semi == std::string_view::npos) return seq;
    text.remove_prefix(semi + 1);
    if (seq.kind == Kind::table) {
        if (!text.starts_with("terms=")) bad();
        text.remove_prefix(6);
        std::string_view rest = text;
        while (true) {
            std::size_t bar = rest.find('|');
            seq.table.push_back(Element::parse(spec, rest.substr(0, bar)));
            if (bar == std::string_view::npos) break;
            rest.remove_prefix(bar + 1);
        }
        return seq;
    }
    auto take_int = [&](std::string_view key, coeff_t& out) {
        if (!text.starts_with(key)) bad();
        text.remove_prefix(key.size());
        std::size_t stop = text.find(';');
        std::string_view item = text.substr(0, stop);
        auto [p, e] = std::from_chars(item.data(), item.data() + item.size(), out);
        if (e != std::errc{} || p != item.data() + item.size()) bad();
        text.remove_prefix(stop == std::string_view::npos ? text.size() : stop + 1);
    };
    take_int("c=", seq.coeff);
    if (seq.kind != Kind::factorial) take_int("r=", seq.ratio);
    coeff_t coord = 0;
    take_int("coord=", coord);
    if (coord < 0) bad();
    seq.coord = static_cast<coord_t>(coord);
    return seq;
}

}  // namespace ballean
