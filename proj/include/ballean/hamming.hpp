// ================================================================
// File: include/ballean/hamming.hpp
// Hamming spaces H(n) (finitely supported Z/n-vectors under the
// differing-coordinate metric; n = 2 is the space of finite subsets),
// the canonical map from index sets to FS sums, and windowed
// verification that the map is an embedding with controlled distortion.
// ================================================================

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ballean/fs.hpp"

namespace ballean {

/// A point of H(n): finitely many coordinates with values in 1..n-1.
/// For n = 2 this is just a finite subset of omega.
struct HammingPoint {
    coeff_t modulus = 2;
    Element value;

    friend bool operator==(const HammingPoint&, const HammingPoint&) = default;
};

inline HammingPoint hamming_point(coeff_t modulus, Element::Support raw) {
    if (modulus < 2) throw std::invalid_argument("Hamming space modulus must be >= 2");
    GroupSpec ambient{{}, modulus};
    return {modulus, canonicalize(ambient, std::move(raw))};
}

inline HammingPoint hamming_subset(const std::vector<coord_t>& indices) {
    Element::Support raw;
    raw.reserve(indices.size());
    for (coord_t i : indices) raw.emplace_back(i, 1);
    return hamming_point(2, std::move(raw));
}

/// Number of coordinates where p and q differ. A metric on each H(n).
inline int hamming_dist(const HammingPoint& p, const HammingPoint& q) {
    if (p.modulus != q.modulus)
        throw std::invalid_argument("Hamming distance across different spaces");
    int differing = 0;
    auto a = p.value.support().begin(), ae = p.value.support().end();
    auto b = q.value.support().begin(), be = q.value.support().end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            ++differing;
            ++a;
        } else if (a == ae || b->first < a->first) {
            ++differing;
            ++b;
        } else {
            if (a->second != b->second) ++differing;
            ++a, ++b;
        }
    }
    return differing;
}

/// The canonical map f(F) = sum_{i in F} b_i from index sets into the group.
inline Element canonical_map(const FSPrefix& prefix, const std::vector<std::size_t>& F) {
    return fs_sum(prefix, F);
}

struct EmbedCounterexample {
    std::vector<std::size_t> F, H;
    int depth = 0;  // f(F) - f(H) lies in L_depth while |F xor H| > depth
    Element difference;
};

struct EmbedReport {
    bool pass = false;
    int support_bound = 0;
    int depth_bound = 0;
    std::size_t pairs_checked = 0;
    std::optional<EmbedCounterexample> counterexample;
    std::string statement;
};

/**
 * Windowed embedding check: for all F, H within the support bound and all
 * n up to the depth bound, f(F) - f(H) in L_n must force |F xor H| <= n.
 * (The forward bound is automatic: prefix terms lie in the alphabet, so
 * f(F) - f(H) always lies in L_{|F xor H|}.)
 *
 * On failure the report carries the strongest witness on the window: the
 * counterexample with maximal |F xor H|, smallest depth among those, then
 * first in (F, H) bitmask order. Verdicts are window-relative; nothing
 * here claims the infinite statement.
 */
inline EmbedReport verify_embedding(const FSPrefix& prefix, const SumsetLayers& layers,
                                    int support_bound, int depth_bound) {
    EmbedReport report;
    report.support_bound = support_bound;
    report.depth_bound = depth_bound;
    if (prefix.size() == 0) {
        report.pass = true;
        report.statement = "empty prefix: nothing to check";
        return report;
    }
    if (support_bound < 0 || static_cast<std::size_t>(support_bound) >= prefix.size())
        throw std::invalid_argument("support bound outside the prefix");
    if (layers.group() != prefix.group)
        throw std::invalid_argument("prefix and layers use different groups");
    if (depth_bound < 0 || depth_bound > layers.nmax())
        throw window_exhausted("layers too shallow for the requested depth bound");

    const std::size_t bits = static_cast<std::size_t>(support_bound) + 1;
    FSPrefix clipped = prefix;
    clipped.terms.resize(bits);
    clipped.sources.resize(bits);
    auto sums = detail::mask_sums(clipped, bits);

    bool found = false;
    int best_delta = 0, best_depth = 0;
    std::uint32_t best_f = 0, best_h = 0;
    Element best_diff;
    for (std::uint32_t f = 0; f < sums.size(); ++f) {
        for (std::uint32_t h = 0; h < sums.size(); ++h) {
            ++report.pairs_checked;
            Element diff = sub(prefix.group, sums[f], sums[h]);
            auto depth = layers.word_length(diff);
            if (!depth || *depth > depth_bound) continue;
            int delta = std::popcount(f ^ h);
            if (delta <= *depth) continue;
            if (!found || delta > best_delta || (delta == best_delta && *depth < best_depth)) {
                found = true;
                best_delta = delta;
                best_depth = *depth;
                best_f = f;
                best_h = h;
                best_diff = diff;
            }
        }
    }
    if (found) {
        report.pass = false;
        report.counterexample = EmbedCounterexample{detail::mask_indices(best_f),
                                                    detail::mask_indices(best_h), best_depth,
                                                    best_diff};
        report.statement = "distortion witness: |F xor H| = " + std::to_string(best_delta) +
                           " while f(F) - f(H) lies in L_" + std::to_string(best_depth);
    } else {
        report.pass = true;
        report.statement = "for all F, H within {0.." + std::to_string(support_bound) +
                           "}: f(F) - f(H) in L_n with n <= " + std::to_string(depth_bound) +
                           " implies |F xor H| <= n";
    }
    return report;
}

/**
 * The 2^d images of the d-dimensional Hamming cube under the canonical
 * map, with the exact table of pairwise word distances (unknowable
 * entries, beyond the window, stay unset). Images are indexed by subset
 * bitmask.
 */
struct CubeCertificate {
    int dim = 0;
    std::vector<Element> images;
    std::vector<std::vector<std::optional<int>>> dist;

    std::string to_string() const {
        std::string out = "cube d=" + std::to_string(dim) + "\n";
        for (std::size_t i = 0; i < images.size(); ++i) {
            out += images[i].str();
            out.push_back('|');
            for (std::size_t j = 0; j < images.size(); ++j) {
                if (j) out.push_back(' ');
                out += dist[i][j] ? std::to_string(*dist[i][j]) : std::string("?");
            }
            out.push_back('\n');
        }
        return out;
    }
};

inline CubeCertificate embed_cube(const FSPrefix& prefix, const SumsetLayers& layers, int dim) {
    if (dim < 0) throw std::invalid_argument("cube dimension must be >= 0");
    if (dim > 20) throw std::invalid_argument("cube dimension exceeds the resource cap");
    if (static_cast<std::size_t>(dim) > prefix.size())
        throw std::invalid_argument("cube dimension exceeds the prefix length");
    if (layers.group() != prefix.group)
        throw std::invalid_argument("prefix and layers use different groups");

    CubeCertificate cube;
    cube.dim = dim;
    FSPrefix clipped = prefix;
    clipped.terms.resize(static_cast<std::size_t>(dim));
    clipped.sources.resize(static_cast<std::size_t>(dim));
    cube.images = detail::mask_sums(clipped, static_cast<std::size_t>(dim));
    cube.dist.assign(cube.images.size(),
                     std::vector<std::optional<int>>(cube.images.size()));
    for (std::size_t i = 0; i < cube.images.size(); ++i)
        for (std::size_t j = 0; j < cube.images.size(); ++j)
            cube.dist[i][j] = layers.dist(cube.images[i], cube.images[j]);
    return cube;
}

}  // namespace ballean
