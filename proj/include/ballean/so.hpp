// ================================================================
// File: include/ballean/so.hpp
// Slowly oscillating {0,1}-functions on a layer window and finite chain
// certificates: explicit sequences of one-letter moves, each inside a
// constancy ball centered outside L_m, witnessing that no such function
// can separate two far-out points.
// ================================================================

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ballean/layers.hpp"

namespace ballean {

/// A {0,1}-valued function given explicitly on the layer universe.
class SOFunction {
public:
    std::uint8_t at(const Element& x) const {
        auto it = map_.find(x);
        if (it == map_.end())
            throw std::invalid_argument("function is not total on the window universe (missing " +
                                        (x.is_zero() ? std::string("0") : x.str()) + ")");
        return it->second;
    }

    void set(const Element& x, std::uint8_t value) { map_[x] = value ? 1 : 0; }

    std::size_t size() const noexcept { return map_.size(); }

    std::string to_string() const {
        std::vector<const Element*> keys;
        keys.reserve(map_.size());
        for (const auto& [e, v] : map_) keys.push_back(&e);
        std::sort(keys.begin(), keys.end(), [](const Element* a, const Element* b) { return *a < *b; });
        std::string out = "so-function 1\nvalues " + std::to_string(map_.size()) + "\n";
        for (const Element* e : keys) {
            out += std::to_string(static_cast<int>(map_.find(*e)->second));
            out.push_back('|');
            out += e->str();
            out.push_back('\n');
        }
        out += "end\n";
        return out;
    }

    static SOFunction parse(const GroupSpec& spec, const std::string& text) {
        std::istringstream in(text);
        std::string line;
        auto bad = [](const std::string& why) {
            throw std::invalid_argument("malformed function file: " + why);
        };
        if (!std::getline(in, line) || line != "so-function 1") bad("missing header");
        if (!std::getline(in, line) || !line.starts_with("values ")) bad("missing value count");
        std::size_t count = 0;
        {
            std::string_view decl = std::string_view(line).substr(7);
            auto [p, e] = std::from_chars(decl.data(), decl.data() + decl.size(), count);
            if (e != std::errc{} || p != decl.data() + decl.size()) bad("bad value count");
        }
        SOFunction f;
        for (std::size_t i = 0; i < count; ++i) {
            if (!std::getline(in, line)) bad("truncated value list");
            std::size_t sep = line.find('|');
            if (sep == std::string::npos) bad("value line without '|'");
            std::string_view v = std::string_view(line).substr(0, sep);
            if (v != "0" && v != "1") bad("value must be 0 or 1");
            f.map_[Element::parse(spec, std::string_view(line).substr(sep + 1))] = v == "1";
        }
        if (!std::getline(in, line) || line != "end") bad("missing end marker");
        if (f.map_.size() != count) bad("duplicate elements");
        return f;
    }

private:
    std::unordered_map<Element, std::uint8_t, ElementHash> map_;
};

struct SoRadiusReport {
    std::optional<int> radius;   // nullopt = not slowly oscillating on this window
    std::size_t balls_skipped = 0;
};

/**
 * Least m such that f is constant on x + A for every testable center x
 * with word length above m. Only balls that fit inside the window are
 * tested (centers up to depth nmax - 1); the outermost shell's balls are
 * skipped and counted. A radius is certifiable only when violations stop
 * strictly before the outermost testable shell; otherwise the window
 * shows no radius at all and the verdict is NOT_SO (nullopt).
 */
inline SoRadiusReport so_radius(const SOFunction& f, const SumsetLayers& layers) {
    if (layers.nmax() < 1)
        throw window_exhausted("window too shallow: no ball fits inside it");
    SoRadiusReport report;
    report.balls_skipped = layers.shell(layers.nmax()).size();
    int max_violated = -1;
    for (int d = 0; d < layers.nmax(); ++d) {
        bool violated = false;
        for (const Element& center : layers.shell(d)) {
            const std::uint8_t base = f.at(center);
            for (const Element& a : layers.alphabet()) {
                if (a.is_zero()) continue;
                if (f.at(add(layers.group(), center, a)) != base) {
                    violated = true;
                    break;
                }
            }
            if (violated) break;
        }
        if (violated) max_violated = d;
    }
    if (max_violated < 0)
        report.radius = 0;
    else if (max_violated < layers.nmax() - 1)
        report.radius = max_violated;
    return report;
}

struct ConstancyReport {
    bool pass = false;
    std::optional<std::pair<Element, Element>> witness;
};

/// Is f constant outside L_m? On failure returns the first two elements
/// (in depth, then element order) taking different values.
inline ConstancyReport constancy_check(const SOFunction& f, int m, const SumsetLayers& layers) {
    if (m < 0) throw std::invalid_argument("constancy radius must be >= 0");
    std::optional<std::pair<Element, std::uint8_t>> first;
    for (int d = m + 1; d <= layers.nmax(); ++d) {
        for (const Element& x : layers.shell(d)) {
            std::uint8_t v = f.at(x);
            if (!first) {
                first = {x, v};
            } else if (v != first->second) {
                return {false, std::make_pair(first->first, x)};
            }
        }
    }
    return {true, std::nullopt};
}

/**
 * One move of a chain: both endpoints lie in the ball center + A, so any
 * function constant on balls centered outside L_m takes the same value
 * at `from` and `to` provided the center clears L_m.
 */
struct ChainStep {
    Element from, to, center;
};

struct ChainCertificate {
    Element start, finish;
    int radius = 0;
    std::vector<ChainStep> steps;

    std::string to_string() const {
        std::string out = "chain-certificate 1\n";
        out += "radius " + std::to_string(radius) + "\n";
        out += "start " + start.str() + "\n";
        out += "finish " + finish.str() + "\n";
        out += "steps " + std::to_string(steps.size()) + "\n";
        for (const ChainStep& s : steps) {
            out += s.from.str();
            out.push_back('|');
            out += s.to.str();
            out.push_back('|');
            out += s.center.str();
            out.push_back('\n');
        }
        out += "end\n";
        return out;
    }

    static ChainCertificate parse(const GroupSpec& spec, const std::string& text) {
        std::istringstream in(text);
        std::string line;
        auto bad = [](const std::string& why) {
            throw std::invalid_argument("malformed chain certificate: " + why);
        };
        auto expect = [&](std::string_view prefix) -> std::string {
            if (!std::getline(in, line) || !line.starts_with(prefix))
                bad("expected \"" + std::string(prefix) + "\" line");
            return line.substr(prefix.size());
        };
        if (!std::getline(in, line) || line != "chain-certificate 1") bad("missing header");
        ChainCertificate cert;
        {
            std::string r = expect("radius ");
            auto [p, e] = std::from_chars(r.data(), r.data() + r.size(), cert.radius);
            if (e != std::errc{} || p != r.data() + r.size()) bad("bad radius");
        }
        cert.start = Element::parse(spec, expect("start "));
        cert.finish = Element::parse(spec, expect("finish "));
        std::size_t count = 0;
        {
            std::string c = expect("steps ");
            auto [p, e] = std::from_chars(c.data(), c.data() + c.size(), count);
            if (e != std::errc{} || p != c.data() + c.size()) bad("bad step count");
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (!std::getline(in, line)) bad("truncated step list");
            std::size_t b1 = line.find('|');
            std::size_t b2 = b1 == std::string::npos ? b1 : line.find('|', b1 + 1);
            if (b2 == std::string::npos) bad("step line needs two '|' separators");
            ChainStep step;
            step.from = Element::parse(spec, std::string_view(line).substr(0, b1));
            step.to = Element::parse(spec, std::string_view(line).substr(b1 + 1, b2 - b1 - 1));
            step.center = Element::parse(spec, std::string_view(line).substr(b2 + 1));
            cert.steps.push_back(std::move(step));
        }
        if (!std::getline(in, line) || line != "end") bad("missing end marker");
        return cert;
    }
};

struct ChainVerifyReport {
    bool pass = false;
    std::string detail;
};

/// Checks every certificate invariant against the layers: the steps chain
/// from start to finish, both step endpoints sit inside the center's
/// alphabet ball, and every center clears L_m.
inline ChainVerifyReport verify_chain(const ChainCertificate& cert, const SumsetLayers& layers,
                                      int m) {
    const GroupSpec& spec = layers.group();
    const auto& alphabet = layers.alphabet();
    auto in_alphabet = [&](const Element& e) {
        return std::binary_search(alphabet.begin(), alphabet.end(), e);
    };
    if (cert.steps.empty()) {
        if (cert.start != cert.finish)
            return {false, "empty chain with distinct endpoints"};
        return {true, "empty chain, equal endpoints"};
    }
    if (cert.steps.front().from != cert.start) return {false, "first step does not start at y"};
    if (cert.steps.back().to != cert.finish) return {false, "last step does not end at z"};
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const ChainStep& s = cert.steps[i];
        std::string at = "step " + std::to_string(i) + ": ";
        if (i + 1 < cert.steps.size() && cert.steps[i + 1].from != s.to)
            return {false, at + "endpoint does not chain to the next step"};
        if (!in_alphabet(sub(spec, s.from, s.center)))
            return {false, at + "'from' is not in the center's alphabet ball"};
        if (!in_alphabet(sub(spec, s.to, s.center)))
            return {false, at + "'to' is not in the center's alphabet ball"};
        if (layers.contains(s.center, m))
            return {false, at + "center lies inside L_" + std::to_string(m)};
    }
    return {true, std::to_string(cert.steps.size()) + " steps verified"};
}

struct ChainResult {
    ChainCertificate cert;
    bool complete = false;
    std::optional<std::size_t> failed_position;
};

/**
 * Builds a chain certificate from y to z at radius m by the word
 * replacement construction: decompose both endpoints, pad the words in
 * front with identity letters to a common length, then replace one
 * letter position at a time (on both sides, with the same sequence term)
 * by the first tail term that keeps both new points outside L_{m+1}.
 *
 * Replacing the padded identity first makes the opening center the point
 * itself (outside L_m by hypothesis); afterwards every point stays
 * outside L_{m+1}, which forces each later center outside L_m. Centers
 * are still verified before a step is emitted rather than trusted.
 *
 * Tail candidates range over the generator window (letters must stay in
 * the alphabet); an exhausted budget yields the partial chain with the
 * failing position identified.
 */
inline ChainResult connect_chain(const Element& y, const Element& z, int m,
                                 const SumsetLayers& layers, const SequenceSpec& seq,
                                 std::size_t budget) {
    const GroupSpec& spec = layers.group();
    if (m < 0) throw std::invalid_argument("radius must be >= 0");
    if (m + 1 > layers.nmax())
        throw window_exhausted("window too shallow: need depth m+1");
    auto wly = layers.word_length(y);
    auto wlz = layers.word_length(z);
    if (!wly || !wlz) throw window_exhausted("chain endpoint outside the computed window");
    if (*wly <= m || *wlz <= m)
        throw std::invalid_argument("chain endpoints must lie outside L_m");

    ChainResult result;
    result.cert.start = y;
    result.cert.finish = z;
    result.cert.radius = m;
    if (y == z) {
        result.complete = true;
        return result;
    }

    budget = std::min(budget, layers.window().generators);

    std::vector<Element> word_y = layers.decompose(y);
    std::vector<Element> word_z = layers.decompose(z);
    const std::size_t length = std::max(word_y.size(), word_z.size()) + 1;
    word_y.insert(word_y.begin(), length - word_y.size(), Element{});
    word_z.insert(word_z.begin(), length - word_z.size(), Element{});

    Element cur_y = y, cur_z = z;
    std::vector<ChainStep> steps_y, steps_z;
    auto assemble = [&] {
        result.cert.steps = std::move(steps_y);
        for (auto it = steps_z.rbegin(); it != steps_z.rend(); ++it)
            result.cert.steps.push_back({it->to, it->from, it->center});
    };

    for (std::size_t pos = 0; pos < length && cur_y != cur_z; ++pos) {
        Element base_y = sub(spec, cur_y, word_y[pos]);
        Element base_z = sub(spec, cur_z, word_z[pos]);
        if (layers.contains(base_y, m) || layers.contains(base_z, m)) {
            assemble();
            result.failed_position = pos;
            return result;
        }
        bool found = false;
        Element picked, new_y, new_z;
        for (std::size_t t = 0; t < budget; ++t) {
            Element a;
            try {
                a = seq_term(spec, seq, t);
            } catch (const table_exhausted&) {
                break;
            }
            Element cand_y = add(spec, base_y, a);
            Element cand_z = add(spec, base_z, a);
            if (!layers.contains(cand_y, m + 1) && !layers.contains(cand_z, m + 1)) {
                found = true;
                picked = a;
                new_y = std::move(cand_y);
                new_z = std::move(cand_z);
                break;
            }
        }
        if (!found) {
            assemble();
            result.failed_position = pos;
            return result;
        }
        if (new_y != cur_y) steps_y.push_back({cur_y, new_y, base_y});
        if (new_z != cur_z) steps_z.push_back({cur_z, new_z, base_z});
        word_y[pos] = picked;
        word_z[pos] = picked;
        cur_y = new_y;
        cur_z = new_z;
    }

    assemble();
    result.complete = cur_y == cur_z;
    if (!result.complete) result.failed_position = length;
    return result;
}

/**
 * Seeded test fixture: random values inside L_{m-1}, one constant value
 * everywhere else. By construction a ball centered beyond L_m cannot see
 * the random region, so the fixture's radius never exceeds m.
 */
inline SOFunction random_so_function(int m, const SumsetLayers& layers, std::uint64_t seed) {
    if (m < 0 || m >= layers.nmax())
        throw std::invalid_argument("fixture radius must satisfy 0 <= m < nmax");
    std::mt19937_64 rng(seed);
    const std::uint8_t constant = static_cast<std::uint8_t>(rng() & 1);
    SOFunction f;
    for (int d = 0; d <= layers.nmax(); ++d)
        for (const Element& x : layers.shell(d))
            f.set(x, d <= m - 1 ? static_cast<std::uint8_t>(rng() & 1) : constant);
    return f;
}

}  // namespace ballean
