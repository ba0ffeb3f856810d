// ================================================================
// File: include/ballean/fs.hpp
// Finite-subset-sum machinery: FS-strictness of a candidate sequence
// prefix, the signed-sum and swap conditions that make the canonical
// map to Hamming space a windowed asymorphism, and the greedy
// extraction of such prefixes from a generator sequence.
// ================================================================

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "ballean/layers.hpp"

namespace ballean {

/**
 * A finite candidate sequence (b_0..b_k). Every term is a term of the
 * source sequence (so it lies in the alphabet); `sources` records the
 * originating indices, strictly increasing. Verification flags are only
 * set after an exhaustive check against `checked_window`.
 */
struct FSPrefix {
    GroupSpec group;
    std::vector<Element> terms;
    std::vector<std::size_t> sources;
    Window checked_window{};
    bool fs_strict_verified = false;
    bool sign_verified = false;

    std::size_t size() const noexcept { return terms.size(); }
};

inline FSPrefix make_prefix(const GroupSpec& spec, const SequenceSpec& seq,
                            const std::vector<std::size_t>& sources) {
    FSPrefix prefix;
    prefix.group = spec;
    prefix.sources = sources;
    prefix.terms.reserve(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (i > 0 && sources[i] <= sources[i - 1])
            throw std::invalid_argument("prefix source indices must be strictly increasing");
        prefix.terms.push_back(seq_term(spec, seq, sources[i]));
    }
    return prefix;
}

/// Sum of the prefix terms selected by the index set F; fs_sum({}) = 0.
inline Element fs_sum(const FSPrefix& prefix, const std::vector<std::size_t>& F) {
    Element sum;
    for (std::size_t i : F) {
        if (i >= prefix.size())
            throw std::out_of_range("fs_sum index " + std::to_string(i) + " outside prefix");
        sum = add(prefix.group, sum, prefix.terms[i]);
    }
    return sum;
}

namespace detail {

constexpr std::size_t kMaxExhaustivePrefix = 24;

inline void require_checkable(const FSPrefix& prefix) {
    if (prefix.size() > kMaxExhaustivePrefix)
        throw std::invalid_argument("prefix too long for exhaustive verification");
}

/// Subset sums indexed by bitmask over the prefix terms.
inline std::vector<Element> mask_sums(const FSPrefix& prefix, std::size_t bits) {
    std::vector<Element> sums(std::size_t{1} << bits);
    for (std::uint32_t mask = 1; mask < sums.size(); ++mask) {
        std::uint32_t low = mask & (mask - 1);
        sums[mask] = add(prefix.group, sums[low],
                         prefix.terms[static_cast<std::size_t>(std::countr_zero(mask))]);
    }
    return sums;
}

inline std::vector<std::size_t> mask_indices(std::uint32_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) out.push_back(i);
    return out;
}

}  // namespace detail

struct FsViolation {
    std::size_t term_index = 0;          // the b_{n+1} that collided
    std::vector<std::size_t> F, H;       // subsets of {0..n} with b_{n+1} = sum(F) - sum(H)
};

struct FsStrictReport {
    bool strict = false;
    std::optional<FsViolation> violation;
};

/// FS-strictness by the incremental criterion: for each n, b_{n+1} avoids
/// every difference of two subset sums over {0..n}; the empty base case
/// makes this read b_0 != 0, so the criterion coincides with "all FS sums
/// distinct" on every input. Pairs are scanned in ascending bitmask order;
/// the first violation is returned.
inline FsStrictReport check_fs_strict(const FSPrefix& prefix) {
    detail::require_checkable(prefix);
    if (prefix.size() == 0) return {true, std::nullopt};
    auto sums = detail::mask_sums(prefix, prefix.size() - 1);
    for (std::size_t step = 0; step < prefix.size(); ++step) {
        const Element& target = prefix.terms[step];
        const std::uint32_t limit = std::uint32_t{1} << step;
        for (std::uint32_t f = 0; f < limit; ++f) {
            for (std::uint32_t h = 0; h < limit; ++h) {
                if (sub(prefix.group, sums[f], sums[h]) == target)
                    return {false,
                            FsViolation{step, detail::mask_indices(f), detail::mask_indices(h)}};
            }
        }
    }
    return {true, std::nullopt};
}

struct SignViolation {
    std::vector<std::size_t> indices;  // i_0 < ... < i_n
    std::vector<int> signs;            // +1/-1 aligned with indices; signs[0] = +1
    Element sum;                       // the signed sum that landed too low
    int depth = 0;                     // it lies in L_depth with depth = |indices| - 1
};

struct SignReport {
    bool pass = false;
    std::optional<SignViolation> violation;
};

/// The signed-sum condition: every nonempty signed combination of j
/// distinct prefix terms stays outside L_{j-1}. The leading sign is fixed
/// to + (layers are symmetric); subsets and sign patterns are scanned in
/// ascending bitmask order.
inline SignReport check_sign_condition(const FSPrefix& prefix, const SumsetLayers& layers) {
    detail::require_checkable(prefix);
    if (layers.group() != prefix.group)
        throw std::invalid_argument("prefix and layers use different groups");
    if (layers.nmax() < static_cast<int>(prefix.size()))
        throw window_exhausted("layers too shallow for the sign condition");

    const std::size_t len = prefix.size();
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << len); ++mask) {
        auto indices = detail::mask_indices(mask);
        const int j = static_cast<int>(indices.size());
        for (std::uint32_t sm = 0; sm < (std::uint32_t{1} << (j - 1)); ++sm) {
            Element sum = prefix.terms[indices[0]];
            for (int b = 1; b < j; ++b) {
                const Element& t = prefix.terms[indices[static_cast<std::size_t>(b)]];
                sum = (sm >> (b - 1)) & 1 ? sub(prefix.group, sum, t) : add(prefix.group, sum, t);
            }
            if (layers.contains(sum, j - 1)) {
                std::vector<int> signs(indices.size(), 1);
                for (int b = 1; b < j; ++b)
                    if ((sm >> (b - 1)) & 1) signs[static_cast<std::size_t>(b)] = -1;
                return {false, SignViolation{std::move(indices), std::move(signs), sum, j - 1}};
            }
        }
    }
    return {true, std::nullopt};
}

struct SwapViolation {
    std::vector<std::size_t> F;
    Element shift;  // the a in L_n
    std::vector<std::size_t> H;
};

struct SwapReport {
    bool pass = false;
    std::optional<SwapViolation> violation;
};

/// The swap condition at depth n: whenever sum(F) + a is again an FS sum
/// (with a in L_n), its index set differs from F by at most n. Requires
/// verified FS-strictness so index sets of FS sums are unique. Scans F
/// ascending, then a in ascending element order.
inline SwapReport check_swap_condition(const FSPrefix& prefix, const SumsetLayers& layers,
                                       int n) {
    detail::require_checkable(prefix);
    if (!prefix.fs_strict_verified)
        throw std::invalid_argument("swap condition requires verified FS-strictness");
    if (layers.group() != prefix.group)
        throw std::invalid_argument("prefix and layers use different groups");
    if (n < 0 || n > layers.nmax())
        throw window_exhausted("layers too shallow for the swap condition");

    const std::size_t len = prefix.size();
    auto sums = detail::mask_sums(prefix, len);
    std::unordered_map<Element, std::uint32_t, ElementHash> fs_index;
    fs_index.reserve(sums.size());
    for (std::uint32_t mask = 0; mask < sums.size(); ++mask) fs_index.emplace(sums[mask], mask);

    std::vector<Element> shifts;
    for (int d = 0; d <= n; ++d)
        shifts.insert(shifts.end(), layers.shell(d).begin(), layers.shell(d).end());
    std::sort(shifts.begin(), shifts.end());

    for (std::uint32_t f = 0; f < sums.size(); ++f) {
        for (const Element& a : shifts) {
            auto it = fs_index.find(add(prefix.group, sums[f], a));
            if (it == fs_index.end()) continue;
            if (std::popcount(f ^ it->second) > n)
                return {false, SwapViolation{detail::mask_indices(f), a,
                                             detail::mask_indices(it->second)}};
        }
    }
    return {true, std::nullopt};
}

struct ExtractResult {
    FSPrefix prefix;
    bool complete = false;
    std::size_t next_source = 0;  // first source index that was not examined
};

/**
 * Greedy prefix extraction: b_0 is the first nonzero sequence term, and
 * each extension is the first tail term c (in source order, strictly past
 * the previous source) such that every signed subsum s of j existing
 * terms keeps s + c and s - c outside L_j. That incremental check is the
 * inductive form of the signed-sum condition, so a completed prefix
 * passes both full checks; they are re-run at the end to set the flags.
 *
 * The search is bounded by `budget` (exclusive source-index bound); the
 * limit-point argument that a suitable tail term exists is not
 * constructive, so a too-small budget yields the longest prefix found
 * with complete = false.
 */
inline ExtractResult greedy_extract(const GroupSpec& spec, const SequenceSpec& seq,
                                    const SumsetLayers& layers, std::size_t target_len,
                                    std::size_t budget) {
    if (target_len < 1) throw std::invalid_argument("target prefix length must be >= 1");
    if (target_len > detail::kMaxExhaustivePrefix)
        throw std::invalid_argument("prefix too long for exhaustive verification");
    if (layers.group() != spec)
        throw std::invalid_argument("layers were built over a different group");
    if (layers.nmax() < static_cast<int>(target_len))
        throw window_exhausted("layers too shallow for extraction checks");

    ExtractResult result;
    result.prefix.group = spec;
    result.prefix.checked_window = layers.window();

    auto admissible = [&](const Element& c) {
        const std::size_t k = result.prefix.size();
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
            auto indices = detail::mask_indices(mask);
            const int j = static_cast<int>(indices.size());
            for (std::uint32_t sm = 0; sm < (std::uint32_t{1} << j); ++sm) {
                Element s;
                for (int b = 0; b < j; ++b) {
                    const Element& t = result.prefix.terms[indices[static_cast<std::size_t>(b)]];
                    s = (sm >> b) & 1 ? sub(spec, s, t) : add(spec, s, t);
                }
                if (layers.contains(add(spec, s, c), j)) return false;
                if (layers.contains(sub(spec, s, c), j)) return false;
            }
        }
        return true;
    };

    std::size_t source = 0;
    while (result.prefix.size() < target_len && source < budget) {
        Element candidate;
        try {
            candidate = seq_term(spec, seq, source);
        } catch (const table_exhausted&) {
            break;
        }
        if (admissible(candidate)) {
            result.prefix.terms.push_back(candidate);
            result.prefix.sources.push_back(source);
        }
        ++source;
    }
    result.next_source = source;
    result.complete = result.prefix.size() == target_len;

    if (!result.prefix.terms.empty()) {
        result.prefix.fs_strict_verified = check_fs_strict(result.prefix).strict;
        if (layers.nmax() >= static_cast<int>(result.prefix.size()))
            result.prefix.sign_verified = check_sign_condition(result.prefix, layers).pass;
    }
    return result;
}

}  // namespace ballean
