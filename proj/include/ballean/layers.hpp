// ================================================================
// File: include/ballean/layers.hpp
// Iterated sumset layers over the symmetrized alphabet
// A = {0, a_n, -a_n : n < N}: L_0 = {0}, L_n = L_{n-1} + A.
// L_n is the ball of radius n around 0 in the word metric, i.e. the
// Cayley-graph ball w.r.t. the generator window.
// ================================================================

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "ballean/group.hpp"
#include "ballean/sequence.hpp"

namespace ballean {

/// Finite truncation parameters: how many generators feed the alphabet and
/// how deep the sumset chain is taken.
struct Window {
    std::size_t generators = 1;
    int nmax = 0;

    void validate() const {
        if (generators < 1) throw std::invalid_argument("window needs at least one generator");
        if (nmax < 0) throw std::invalid_argument("window depth must be >= 0");
    }

    std::string to_string() const {
        return "N=" + std::to_string(generators) + ";nmax=" + std::to_string(nmax);
    }

    static Window from_string(std::string_view text) {
        Window w;
        auto bad = [&] { throw std::invalid_argument("malformed window \"" + std::string(text) + "\""); };
        if (!text.starts_with("N=")) bad();
        text.remove_prefix(2);
        std::size_t semi = text.find(';');
        if (semi == std::string_view::npos) bad();
        std::string_view n = text.substr(0, semi);
        std::uint64_t gens = 0;
        auto [p1, e1] = std::from_chars(n.data(), n.data() + n.size(), gens);
        if (e1 != std::errc{} || p1 != n.data() + n.size()) bad();
        w.generators = gens;
        text.remove_prefix(semi + 1);
        if (!text.starts_with("nmax=")) bad();
        text.remove_prefix(5);
        auto [p2, e2] = std::from_chars(text.data(), text.data() + text.size(), w.nmax);
        if (e2 != std::errc{} || p2 != text.data() + text.size()) bad();
        w.validate();
        return w;
    }

    friend bool operator==(const Window&, const Window&) = default;
};

struct BuildOptions {
    std::size_t cap = 10'000'000;  // total element cap across all layers
    unsigned threads = 1;          // 0 = hardware concurrency
};

struct CoveringBounds {
    std::size_t lower = 0;
    std::size_t upper = 0;
};

/**
 * SumsetLayers holds the chain L_0 .. L_nmax together with one shortest
 * decomposition per element (a generator back-pointer; the predecessor is
 * the element minus that generator).
 *
 * Content is schedule-independent: the back-pointer chosen for a new
 * element is the minimum (predecessor, generator) pair under element
 * order, regardless of thread count or evaluation order. After build the
 * structure is immutable and safe to query concurrently.
 */
class SumsetLayers {
public:
    static SumsetLayers build(const GroupSpec& spec, const SequenceSpec& seq,
                              const Window& window, const BuildOptions& opts = {});

    const GroupSpec& group() const noexcept { return group_; }
    const SequenceSpec& sequence() const noexcept { return seq_; }
    const Window& window() const noexcept { return window_; }
    int nmax() const noexcept { return window_.nmax; }

    /// The deduplicated symmetrized alphabet, sorted; alphabet()[0] is 0.
    const std::vector<Element>& alphabet() const noexcept { return alphabet_; }

    /// New elements at exactly depth d, sorted.
    const std::vector<Element>& shell(int d) const { return shells_.at(static_cast<std::size_t>(d)); }

    std::size_t size() const noexcept { return table_.size(); }

    /// Least n with x in L_n, or nullopt when x is outside the computed
    /// window (truncation, not nonexistence).
    std::optional<int> word_length(const Element& x) const {
        auto it = table_.find(x);
        if (it == table_.end()) return std::nullopt;
        return it->second.depth;
    }

    /// Exact membership in L_depth (L_depth is fully enumerated for any
    /// depth <= nmax, so a miss is a definite "no").
    bool contains(const Element& x, int depth) const {
        auto it = table_.find(x);
        return it != table_.end() && it->second.depth <= depth;
    }

    std::optional<int> dist(const Element& x, const Element& y) const {
        return word_length(sub(group_, x, y));
    }

    /// One shortest word for x over the alphabet (word_length(x) letters,
    /// the identity excluded). Throws window_exhausted outside the window.
    std::vector<Element> decompose(const Element& x) const {
        auto it = table_.find(x);
        if (it == table_.end())
            throw window_exhausted("element " + (x.is_zero() ? std::string("0") : x.str()) +
                                   " is outside the computed window");
        std::vector<Element> letters;
        Element cur = x;
        while (true) {
            auto node = table_.find(cur)->second;
            if (node.depth == 0) break;
            const Element& gen = alphabet_[static_cast<std::size_t>(node.gen)];
            letters.push_back(gen);
            cur = sub(group_, cur, gen);
        }
        return letters;
    }

    /// Cumulative cardinalities [|L_0|, ..., |L_nmax|].
    std::vector<std::size_t> growth_profile() const {
        std::vector<std::size_t> out;
        std::size_t total = 0;
        for (const auto& shell : shells_) {
            total += shell.size();
            out.push_back(total);
        }
        return out;
    }

    CoveringBounds covering_number(int n) const;

    friend bool operator==(const SumsetLayers&, const SumsetLayers&);

private:
    friend class LayersCodec;

    struct Node {
        std::int32_t depth;
        std::int32_t gen;  // alphabet index; -1 at the identity
    };

    GroupSpec group_;
    SequenceSpec seq_;
    Window window_;
    std::vector<Element> alphabet_;
    std::unordered_map<Element, Node, ElementHash> table_;
    std::vector<std::vector<Element>> shells_;
};

inline bool operator==(const SumsetLayers& a, const SumsetLayers& b) {
    return a.group_ == b.group_ && a.seq_ == b.seq_ && a.window_ == b.window_ &&
           a.alphabet_ == b.alphabet_ && a.shells_ == b.shells_ &&
           [&] {
               for (const auto& [e, node] : a.table_) {
                   auto it = b.table_.find(e);
                   if (it == b.table_.end() || it->second.depth != node.depth ||
                       it->second.gen != node.gen)
                       return false;
               }
               return true;
           }();
}

inline SumsetLayers SumsetLayers::build(const GroupSpec& spec, const SequenceSpec& seq,
                                        const Window& window, const BuildOptions& opts) {
    spec.validate();
    seq.validate(spec);
    window.validate();

    SumsetLayers L;
    L.group_ = spec;
    L.seq_ = seq;
    L.window_ = window;

    // Alphabet: dedup of {0} U {a_n} U {-a_n} over the generator window.
    {
        std::vector<Element> letters;
        letters.push_back(Element{});
        for (std::size_t n = 0; n < window.generators; ++n) {
            Element t = seq_term(spec, seq, n);
            letters.push_back(t);
            letters.push_back(neg(spec, t));
        }
        std::sort(letters.begin(), letters.end());
        letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
        L.alphabet_ = std::move(letters);
    }

    L.table_.emplace(Element{}, Node{0, -1});
    L.shells_.push_back({Element{}});

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());

    for (int depth = 1; depth <= window.nmax; ++depth) {
        const std::vector<Element>& frontier = L.shells_.back();

        // Candidate discovery. Each worker scans a contiguous slice of the
        // sorted frontier with generators in sorted order, keeping the first
        // (= minimal) (pred, gen) pair per new element; the chunk-ordered
        // merge preserves that minimum globally.
        using Found = std::unordered_map<Element, std::int32_t, ElementHash>;
        auto scan = [&](std::size_t begin, std::size_t end, Found& found) {
            for (std::size_t f = begin; f < end; ++f) {
                const Element& pred = frontier[f];
                for (std::size_t g = 0; g < L.alphabet_.size(); ++g) {
                    if (L.alphabet_[g].is_zero()) continue;
                    Element next = add(spec, pred, L.alphabet_[g]);
                    if (L.table_.find(next) != L.table_.end()) continue;
                    found.emplace(std::move(next), static_cast<std::int32_t>(g));
                }
            }
        };

        Found merged;
        if (threads <= 1 || frontier.size() < 2 * threads) {
            scan(0, frontier.size(), merged);
        } else {
            std::vector<Found> parts(threads);
            std::vector<std::thread> pool;
            std::size_t chunk = (frontier.size() + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                std::size_t begin = std::min(frontier.size(), t * chunk);
                std::size_t end = std::min(frontier.size(), begin + chunk);
                pool.emplace_back(scan, begin, end, std::ref(parts[t]));
            }
            for (auto& th : pool) th.join();
            merged = std::move(parts[0]);
            for (unsigned t = 1; t < threads; ++t)
                for (auto& [e, g] : parts[t]) merged.emplace(e, g);  // earlier chunk wins
        }

        if (L.table_.size() + merged.size() > opts.cap)
            throw layer_cap_exceeded(static_cast<std::size_t>(depth - 1), opts.cap);

        std::vector<Element> shell;
        shell.reserve(merged.size());
        for (const auto& [e, g] : merged) shell.push_back(e);
        std::sort(shell.begin(), shell.end());
        for (const auto& e : shell)
            L.table_.emplace(e, Node{depth, merged.find(e)->second});
        L.shells_.push_back(std::move(shell));
    }
    return L;
}

/// Bounds on the least |K| with L_n <= L_1 + K. Lower: greedy packing of
/// points pairwise farther than 2 apart (one per translate), scanning L_n
/// by descending word length, element order within a shell. Upper: greedy
/// max-coverage over candidate centers in L_n, element order as tie-break.
inline CoveringBounds SumsetLayers::covering_number(int n) const {
    if (n < 0 || n > window_.nmax)
        throw std::invalid_argument("covering_number depth outside the built window");
    if (n == 0) return {1, 1};

    std::vector<Element> universe;  // L_n, descending depth
    for (int d = n; d >= 0; --d)
        universe.insert(universe.end(), shells_[static_cast<std::size_t>(d)].begin(),
                        shells_[static_cast<std::size_t>(d)].end());

    CoveringBounds bounds;

    // Packing needs exact L_2 membership; with a depth-1 window fall back
    // to the trivial bound.
    if (window_.nmax >= 2) {
        std::vector<Element> chosen;
        for (const Element& x : universe) {
            bool apart = true;
            for (const Element& p : chosen) {
                if (contains(sub(group_, x, p), 2)) {
                    apart = false;
                    break;
                }
            }
            if (apart) chosen.push_back(x);
        }
        bounds.lower = chosen.size();
    } else {
        bounds.lower = 1;
    }

    // Greedy covering: candidates in ascending element order; each round
    // picks the center covering the most still-uncovered points.
    std::vector<Element> candidates = universe;
    std::sort(candidates.begin(), candidates.end());
    std::vector<char> covered(universe.size(), 0);
    std::size_t remaining = universe.size();
    while (remaining > 0) {
        std::size_t best_count = 0, best_idx = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            std::size_t count = 0;
            for (std::size_t i = 0; i < universe.size(); ++i) {
                if (covered[i]) continue;
                if (contains(sub(group_, universe[i], candidates[c]), 1)) ++count;
            }
            if (count > best_count) {
                best_count = count;
                best_idx = c;
            }
        }
        for (std::size_t i = 0; i < universe.size(); ++i) {
            if (covered[i]) continue;
            if (contains(sub(group_, universe[i], candidates[best_idx]), 1)) {
                covered[i] = 1;
                --remaining;
            }
        }
        ++bounds.upper;
    }
    return bounds;
}

}  // namespace ballean
