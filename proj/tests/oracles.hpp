// Test-only oracles: independent routes to the quantities the library
// computes. These deliberately avoid the library's frontier BFS and
// back-pointer machinery; they re-derive everything from the group law
// and plain set/graph algorithms.

#pragma once

#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "ballean/ballean.hpp"

namespace oracles {

using namespace ballean;

inline std::vector<Element> oracle_alphabet(const GroupSpec& spec, const SequenceSpec& seq,
                                            std::size_t generators) {
    std::set<Element> letters;
    letters.insert(Element{});
    for (std::size_t n = 0; n < generators; ++n) {
        Element t = seq_term(spec, seq, n);
        letters.insert(t);
        letters.insert(neg(spec, t));
    }
    return {letters.begin(), letters.end()};
}

/// Cumulative balls L_0..L_nmax by full iterated Minkowski sums over
/// ordered sets (no frontier shortcut, no hashing).
inline std::vector<std::set<Element>> oracle_balls(const GroupSpec& spec,
                                                   const std::vector<Element>& alphabet,
                                                   int nmax) {
    std::vector<std::set<Element>> balls;
    balls.push_back({Element{}});
    for (int d = 1; d <= nmax; ++d) {
        std::set<Element> next;
        for (const Element& s : balls.back())
            for (const Element& a : alphabet) next.insert(add(spec, s, a));
        balls.push_back(std::move(next));
    }
    return balls;
}

/// Breadth-first distances from 0 in the graph on `universe` with edges
/// u ~ v whenever u - v is a letter. Plain queue BFS with an edge scan.
inline std::map<Element, int> oracle_bfs_dist(const GroupSpec& spec,
                                              const std::vector<Element>& alphabet,
                                              const std::set<Element>& universe) {
    std::set<Element> letter_set(alphabet.begin(), alphabet.end());
    std::map<Element, int> dist;
    std::queue<Element> queue;
    dist[Element{}] = 0;
    queue.push(Element{});
    while (!queue.empty()) {
        Element u = queue.front();
        queue.pop();
        for (const Element& v : universe) {
            if (dist.count(v)) continue;
            if (letter_set.count(sub(spec, u, v))) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    return dist;
}

/// Cumulative binomial sums: |L_n| for the basis sequence on a sum of
/// order-2 cyclic groups equals sum_{k<=n} C(N, k).
inline std::size_t binom_ball_size(std::size_t N, int n) {
    std::size_t total = 0;
    for (int k = 0; k <= n; ++k) {
        // C(N, k)
        unsigned long long c = 1;
        for (int i = 0; i < k; ++i) c = c * (N - static_cast<std::size_t>(i)) / (i + 1ull);
        total += static_cast<std::size_t>(c);
    }
    return total;
}

/// Definitional FS-strictness: all 2^k subset sums pairwise distinct.
inline bool oracle_fs_strict(const FSPrefix& prefix) {
    std::set<Element> sums;
    const std::size_t count = std::size_t{1} << prefix.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
        Element s;
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if ((mask >> i) & 1) s = add(prefix.group, s, prefix.terms[i]);
        if (!sums.insert(s).second) return false;
    }
    return true;
}

inline Element random_element(const GroupSpec& spec, std::mt19937_64& rng, coord_t max_coord,
                              coeff_t max_abs, int max_support) {
    std::uniform_int_distribution<int> support_dist(0, max_support);
    std::uniform_int_distribution<coord_t> coord_dist(0, max_coord);
    std::uniform_int_distribution<coeff_t> coeff_dist(-max_abs, max_abs);
    Element::Support raw;
    int entries = support_dist(rng);
    for (int i = 0; i < entries; ++i) raw.emplace_back(coord_dist(rng), coeff_dist(rng));
    return canonicalize(spec, std::move(raw));
}

}  // namespace oracles
