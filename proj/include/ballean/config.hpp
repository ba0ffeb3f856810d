// ================================================================
// File: include/ballean/config.hpp
// Sectioned key-value experiment files: group, sequence, window and an
// optional prefix, validated before any computation starts.
// ================================================================

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ballean/fs.hpp"
#include "ballean/layers.hpp"

namespace ballean {

/**
 * One experiment: the group, the generator sequence, the window to
 * compute, and optional command inputs. Text format:
 *
 *   [group]
 *   moduli_head = 0,2      # optional; comma-separated, empty = none
 *   moduli_tail = 2
 *
 *   [sequence]
 *   kind = geometric       # basis | geometric | alternating_geometric
 *   coeff = 1              #        | factorial | table
 *   ratio = 3
 *   coord = 0
 *   terms = 0:1|1:1 2:1    # table only, '|'-separated elements
 *
 *   [window]
 *   N = 10
 *   nmax = 10
 *   budget = 10            # optional, default N
 *   cap = 10000000         # optional
 *
 *   [prefix]
 *   sources = 0 1 2 3      # optional, for the prefix-based commands
 *
 * '#' starts a comment; keys outside their section are rejected.
 */
struct ExperimentConfig {
    GroupSpec group;
    SequenceSpec sequence;
    Window window;
    std::size_t budget = 0;  // 0 = use window.generators
    std::size_t cap = 10'000'000;
    std::optional<std::vector<std::size_t>> prefix_sources;

    std::size_t effective_budget() const { return budget ? budget : window.generators; }

    void validate() const {
        group.validate();
        sequence.validate(group);
        window.validate();
        if (cap < 1) throw std::invalid_argument("layer cap must be >= 1");
        if (prefix_sources) {
            for (std::size_t i = 1; i < prefix_sources->size(); ++i)
                if ((*prefix_sources)[i] <= (*prefix_sources)[i - 1])
                    throw std::invalid_argument("prefix sources must be strictly increasing");
        }
    }

    FSPrefix make_checked_prefix(const SumsetLayers& layers) const {
        if (!prefix_sources || prefix_sources->empty())
            throw std::invalid_argument("this command needs a [prefix] section with sources");
        FSPrefix prefix = make_prefix(group, sequence, *prefix_sources);
        prefix.checked_window = layers.window();
        return prefix;
    }

    static ExperimentConfig parse(const std::string& text);

    static ExperimentConfig load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open config file " + path.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }
};

namespace detail {

inline std::string strip(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <typename Int>
inline Int parse_int(const std::string& value, const std::string& key) {
    Int out{};
    auto [p, e] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (e != std::errc{} || p != value.data() + value.size())
        throw std::invalid_argument("config key '" + key + "' has a malformed value \"" + value + "\"");
    return out;
}

}  // namespace detail

inline ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig config;
    bool saw_n = false, saw_nmax = false;
    std::optional<std::string> raw_terms;  // parsed after [group] is known
    std::istringstream in(text);
    std::string raw, section;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + why);
        };
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "group" && section != "sequence" && section != "window" &&
                section != "prefix")
                fail("unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        std::string key = detail::strip(std::string_view(line).substr(0, eq));
        std::string value = detail::strip(std::string_view(line).substr(eq + 1));
        if (section.empty()) fail("key before any [section]");

        if (section == "group") {
            if (key == "moduli_head") {
                config.group.moduli_head.clear();
                std::stringstream list(value);
                std::string item;
                while (std::getline(list, item, ','))
                    if (!detail::strip(item).empty())
                        config.group.moduli_head.push_back(
                            detail::parse_int<coeff_t>(detail::strip(item), key));
            } else if (key == "moduli_tail") {
                config.group.moduli_tail = detail::parse_int<coeff_t>(value, key);
            } else {
                fail("unknown key '" + key + "' in [group]");
            }
        } else if (section == "sequence") {
            if (key == "kind") {
                config.sequence.kind = kind_from_name(value);
            } else if (key == "coeff") {
                config.sequence.coeff = detail::parse_int<coeff_t>(value, key);
            } else if (key == "ratio") {
                config.sequence.ratio = detail::parse_int<coeff_t>(value, key);
            } else if (key == "coord") {
                config.sequence.coord = detail::parse_int<coord_t>(value, key);
            } else if (key == "terms") {
                raw_terms = value;
            } else {
                fail("unknown key '" + key + "' in [sequence]");
            }
        } else if (section == "window") {
            if (key == "N") {
                config.window.generators = detail::parse_int<std::size_t>(value, key);
                saw_n = true;
            } else if (key == "nmax") {
                config.window.nmax = detail::parse_int<int>(value, key);
                saw_nmax = true;
            } else if (key == "budget") {
                config.budget = detail::parse_int<std::size_t>(value, key);
            } else if (key == "cap") {
                config.cap = detail::parse_int<std::size_t>(value, key);
            } else {
                fail("unknown key '" + key + "' in [window]");
            }
        } else {  // prefix
            if (key == "sources") {
                std::vector<std::size_t> sources;
                std::stringstream list(value);
                std::string item;
                while (list >> item) sources.push_back(detail::parse_int<std::size_t>(item, key));
                config.prefix_sources = std::move(sources);
            } else {
                fail("unknown key '" + key + "' in [prefix]");
            }
        }
    }
    if (!saw_n || !saw_nmax)
        throw std::invalid_argument("config must set [window] N and nmax");
    if (raw_terms) {
        config.group.validate();
        std::string_view rest = *raw_terms;
        while (true) {
            std::size_t bar = rest.find('|');
            config.sequence.table.push_back(Element::parse(config.group, rest.substr(0, bar)));
            if (bar == std::string_view::npos) break;
            rest.remove_prefix(bar + 1);
        }
    }
    config.validate();
    return config;
}

}  // namespace ballean
