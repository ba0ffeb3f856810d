// ================================================================
// File: include/ballean/group.hpp
// Exact arithmetic in countable abelian groups of the form
// G = (+)_{i in omega} Z/m_i, with m_i = 0 meaning Z.
// ================================================================

#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ballean {

using coord_t = std::uint32_t;
using coeff_t = std::int64_t;

/// Truncation error: a query left the computed window. The window is a
/// truncation of an infinite object, so "outside" never means "nonexistent".
class window_exhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Layer expansion hit the cardinality cap. Carries the last depth that
/// was fully built.
class layer_cap_exceeded : public std::runtime_error {
public:
    layer_cap_exceeded(std::size_t depth, std::size_t cap)
        : std::runtime_error("layer cardinality cap " + std::to_string(cap) +
                             " exceeded after depth " + std::to_string(depth)),
          depth_reached(depth) {}
    std::size_t depth_reached;
};

/// A table-backed sequence ran out of terms. Distinct from other range
/// errors so callers can treat exhaustion as "window too small".
class table_exhausted : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/**
 * GroupSpec describes G as a direct sum of cyclic factors: an explicit
 * modulus per leading coordinate, then one modulus for every coordinate
 * beyond the head. Modulus 0 stands for Z; finite moduli must be >= 2.
 *
 * Examples: {.moduli_tail = 2} is the countable direct sum of Z/2;
 * {.moduli_tail = 0} is the free abelian group of countable rank (the
 * integers live on coordinate 0 of it).
 */
struct GroupSpec {
    std::vector<coeff_t> moduli_head;
    coeff_t moduli_tail = 0;

    coeff_t modulus(coord_t i) const noexcept {
        return i < moduli_head.size() ? moduli_head[i] : moduli_tail;
    }

    void validate() const {
        for (coeff_t m : moduli_head)
            if (m == 1 || m < 0)
                throw std::invalid_argument("group modulus must be 0 or >= 2");
        if (moduli_tail == 1 || moduli_tail < 0)
            throw std::invalid_argument("group modulus must be 0 or >= 2");
    }

    std::string to_string() const;
    static GroupSpec from_string(std::string_view text);

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

namespace detail {

inline coeff_t reduce(coeff_t value, coeff_t modulus) {
    if (modulus == 0) return value;
    coeff_t r = value % modulus;
    return r < 0 ? r + modulus : r;
}

inline coeff_t checked_add(coeff_t a, coeff_t b) {
    coeff_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("coefficient overflow in group arithmetic");
    return out;
}

}  // namespace detail

/**
 * Element of G as a finitely supported vector: a sorted (index, coefficient)
 * list with no zero entries. Coefficients are canonical for their
 * coordinate's modulus (residue in 1..m-1 for finite m, any nonzero integer
 * for Z), so element equality is plain representation equality.
 *
 * Elements are ordered lexicographically over the (index, coefficient)
 * pairs; the identity (empty support) sorts first. This order is the
 * tie-break used everywhere a deterministic choice is needed.
 */
class Element {
public:
    using Support = std::vector<std::pair<coord_t, coeff_t>>;

    Element() = default;

    const Support& support() const noexcept { return support_; }
    bool is_zero() const noexcept { return support_.empty(); }
    std::size_t weight() const noexcept { return support_.size(); }

    coeff_t coeff(coord_t i) const noexcept {
        auto it = std::lower_bound(support_.begin(), support_.end(), i,
                                   [](const auto& p, coord_t c) { return p.first < c; });
        return (it != support_.end() && it->first == i) ? it->second : 0;
    }

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;

    /// Canonical plain-text form: sorted space-separated "index:coefficient"
    /// pairs, empty string for the identity. Bit-exact across runs.
    std::string str() const {
        std::string out;
        for (const auto& [i, c] : support_) {
            if (!out.empty()) out.push_back(' ');
            out += std::to_string(i);
            out.push_back(':');
            out += std::to_string(c);
        }
        return out;
    }

    static Element parse(const GroupSpec& spec, std::string_view text);

private:
    friend Element canonicalize(const GroupSpec&, Element::Support);
    Support support_;
};

/// Reduces an arbitrary finite-support integer vector to the unique
/// canonical Element with the same value. Duplicate indices accumulate.
/// Idempotent on canonical input.
inline Element canonicalize(const GroupSpec& spec, Element::Support raw) {
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Element out;
    out.support_.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        coord_t idx = raw[i].first;
        coeff_t sum = 0;
        for (; i < raw.size() && raw[i].first == idx; ++i)
            sum = detail::checked_add(sum, raw[i].second);
        coeff_t c = detail::reduce(sum, spec.modulus(idx));
        if (c != 0) out.support_.emplace_back(idx, c);
    }
    return out;
}

inline Element add(const GroupSpec& spec, const Element& x, const Element& y) {
    Element::Support merged;
    merged.reserve(x.support().size() + y.support().size());
    auto a = x.support().begin(), ae = x.support().end();
    auto b = y.support().begin(), be = y.support().end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            merged.push_back(*a++);
        } else if (a == ae || b->first < a->first) {
            merged.push_back(*b++);
        } else {
            coeff_t c = detail::reduce(detail::checked_add(a->second, b->second),
                                       spec.modulus(a->first));
            if (c != 0) merged.emplace_back(a->first, c);
            ++a, ++b;
        }
    }
    return canonicalize(spec, std::move(merged));
}

inline Element neg(const GroupSpec& spec, const Element& x) {
    Element::Support flipped;
    flipped.reserve(x.support().size());
    for (const auto& [i, c] : x.support()) {
        coeff_t m = spec.modulus(i);
        if (m == 0) {
            if (c == std::numeric_limits<coeff_t>::min())
                throw std::overflow_error("coefficient overflow in group arithmetic");
            flipped.emplace_back(i, -c);
        } else {
            flipped.emplace_back(i, m - c);
        }
    }
    return canonicalize(spec, std::move(flipped));
}

inline Element sub(const GroupSpec& spec, const Element& x, const Element& y) {
    return add(spec, x, neg(spec, y));
}

inline Element Element::parse(const GroupSpec& spec, std::string_view text) {
    Support raw;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos == text.size()) break;
        std::size_t end = text.find(' ', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(pos, end - pos);
        std::size_t colon = token.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("element token missing ':' in \"" + std::string(token) + "\"");
        coord_t idx = 0;
        coeff_t c = 0;
        auto [p1, e1] = std::from_chars(token.data(), token.data() + colon, idx);
        auto [p2, e2] = std::from_chars(token.data() + colon + 1, token.data() + token.size(), c);
        if (e1 != std::errc{} || p1 != token.data() + colon ||
            e2 != std::errc{} || p2 != token.data() + token.size())
            throw std::invalid_argument("malformed element token \"" + std::string(token) + "\"");
        raw.emplace_back(idx, c);
        pos = end;
    }
    return canonicalize(spec, std::move(raw));
}

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            for (int k = 0; k < 8; ++k) {
                h ^= (v >> (8 * k)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        for (const auto& [i, c] : e.support()) {
            mix(i);
            mix(static_cast<std::uint64_t>(c));
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::string GroupSpec::to_string() const {
    std::string out = "head=[";
    for (std::size_t i = 0; i < moduli_head.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(moduli_head[i]);
    }
    out += "];tail=";
    out += std::to_string(moduli_tail);
    return out;
}

inline GroupSpec GroupSpec::from_string(std::string_view text) {
    GroupSpec spec;
    auto bad = [&] { throw std::invalid_argument("malformed group spec \"" + std::string(text) + "\""); };
    if (!text.starts_with("head=[")) bad();
    text.remove_prefix(6);
    std::size_t close = text.find(']');
    if (close == std::string_view::npos) bad();
    std::string_view list = text.substr(0, close);
    while (!list.empty()) {
        std::size_t comma = list.find(',');
        std::string_view item = list.substr(0, comma);
        coeff_t m = 0;
        auto [p, e] = std::from_chars(item.data(), item.data() + item.size(), m);
        if (e != std::errc{} || p != item.data() + item.size()) bad();
        spec.moduli_head.push_back(m);
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    text.remove_prefix(close + 1);
    if (!text.starts_with(";tail=")) bad();
    text.remove_prefix(6);
    auto [p, e] = std::from_chars(text.data(), text.data() + text.size(), spec.moduli_tail);
    if (e != std::errc{} || p != text.data() + text.size()) bad();
    spec.validate();
    return spec;
}

}  // namespace ballean
