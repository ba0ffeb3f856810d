// ================================================================
// File: include/ballean/cache.hpp
// Deterministic plain-text layer serialization and the disk cache keyed
// by (group, sequence, window). A cache hit re-serializes byte-identical
// to a fresh build; the cache is an optimization only.
// ================================================================

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "ballean/layers.hpp"

namespace ballean {

class LayersCodec {
public:
    static std::string serialize(const SumsetLayers& layers) {
        std::string out;
        out += "ballean-layers 1\n";
        out += "group " + layers.group().to_string() + "\n";
        out += "sequence " + layers.sequence().to_string() + "\n";
        out += "window " + layers.window().to_string() + "\n";
        out += "elements " + std::to_string(layers.size()) + "\n";
        for (int d = 0; d <= layers.nmax(); ++d) {
            for (const Element& e : layers.shell(d)) {
                const auto node = layers.table_.find(e)->second;
                out += std::to_string(node.depth);
                out.push_back(' ');
                out += std::to_string(node.gen);
                out.push_back('|');
                out += e.str();
                out.push_back('\n');
            }
        }
        out += "end\n";
        return out;
    }

    static SumsetLayers parse(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        auto next_line = [&](std::string_view prefix) -> std::string {
            if (!std::getline(in, line) || !line.starts_with(prefix))
                throw std::invalid_argument("malformed layers file: expected \"" +
                                            std::string(prefix) + "\"");
            return line.substr(prefix.size());
        };
        if (!next_line("ballean-layers 1").empty())
            throw std::invalid_argument("malformed layers file: unknown version");
        SumsetLayers L;
        L.group_ = GroupSpec::from_string(next_line("group "));
        L.seq_ = SequenceSpec::from_string(L.group_, next_line("sequence "));
        L.window_ = Window::from_string(next_line("window "));

        // The alphabet is a function of the specs; regenerate it.
        {
            std::vector<Element> letters;
            letters.push_back(Element{});
            for (std::size_t n = 0; n < L.window_.generators; ++n) {
                Element t = seq_term(L.group_, L.seq_, n);
                letters.push_back(t);
                letters.push_back(neg(L.group_, t));
            }
            std::sort(letters.begin(), letters.end());
            letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
            L.alphabet_ = std::move(letters);
        }

        std::size_t count = 0;
        {
            std::string decl = next_line("elements ");
            auto [p, e] = std::from_chars(decl.data(), decl.data() + decl.size(), count);
            if (e != std::errc{} || p != decl.data() + decl.size())
                throw std::invalid_argument("malformed layers file: element count");
        }
        L.shells_.assign(static_cast<std::size_t>(L.window_.nmax) + 1, {});
        L.table_.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            if (!std::getline(in, line))
                throw std::invalid_argument("malformed layers file: truncated element list");
            std::size_t bar = line.find('|');
            if (bar == std::string::npos)
                throw std::invalid_argument("malformed layers file: element line without '|'");
            int depth = 0, gen = 0;
            {
                const char* begin = line.data();
                const char* end = line.data() + bar;
                auto [p1, e1] = std::from_chars(begin, end, depth);
                if (e1 != std::errc{} || p1 == end || *p1 != ' ')
                    throw std::invalid_argument("malformed layers file: element depth");
                auto [p2, e2] = std::from_chars(p1 + 1, end, gen);
                if (e2 != std::errc{} || p2 != end)
                    throw std::invalid_argument("malformed layers file: generator index");
            }
            Element e = Element::parse(L.group_, std::string_view(line).substr(bar + 1));
            if (depth < 0 || depth > L.window_.nmax)
                throw std::invalid_argument("malformed layers file: depth out of range");
            if (gen < -1 || gen >= static_cast<int>(L.alphabet_.size()))
                throw std::invalid_argument("malformed layers file: generator out of range");
            L.shells_[static_cast<std::size_t>(depth)].push_back(e);
            L.table_.emplace(std::move(e), SumsetLayers::Node{depth, gen});
        }
        next_line("end");
        if (L.table_.size() != count)
            throw std::invalid_argument("malformed layers file: duplicate elements");
        for (auto& shell : L.shells_) std::sort(shell.begin(), shell.end());
        if (L.shells_.empty() || L.shells_[0] != std::vector<Element>{Element{}})
            throw std::invalid_argument("malformed layers file: bad depth-0 shell");
        return L;
    }
};

inline std::string cache_key(const GroupSpec& spec, const SequenceSpec& seq,
                             const Window& window) {
    std::string material =
        spec.to_string() + "\n" + seq.to_string() + "\n" + window.to_string();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : material) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Builds layers, going through the on-disk cache when a directory is given.
/// Any unusable cache entry falls back to a fresh build.
inline SumsetLayers build_cached(const GroupSpec& spec, const SequenceSpec& seq,
                                 const Window& window, const BuildOptions& opts,
                                 const std::optional<std::filesystem::path>& cache_dir) {
    if (!cache_dir) return SumsetLayers::build(spec, seq, window, opts);

    std::filesystem::path file = *cache_dir / (cache_key(spec, seq, window) + ".layers");
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
        std::ifstream in(file, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            SumsetLayers L = LayersCodec::parse(buf.str());
            if (L.group() == spec && L.sequence() == seq && L.window() == window) return L;
        } catch (const std::invalid_argument&) {
            // stale or foreign file: rebuild below
        }
    }

    SumsetLayers L = SumsetLayers::build(spec, seq, window, opts);
    std::filesystem::create_directories(*cache_dir, ec);
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (out) out << LayersCodec::serialize(L);
    }
    std::filesystem::rename(tmp, file, ec);
    return L;
}

}  // namespace ballean
