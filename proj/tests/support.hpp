#pragma once

#include "vkh/pd.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef VKH_FIXTURE_DIR
#error "VKH_FIXTURE_DIR must be defined"
#endif

namespace support {

struct Fixture {
    std::string name;
    std::string provenance;
    std::string equivalent;  // name of a fixture for the same link, if any
    vkh::Diagram diagram;
};

inline std::string fixture_dir() { return VKH_FIXTURE_DIR; }

inline std::string header_field(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    const std::string tag = "# " + key + ":";
    while (std::getline(in, line))
        if (line.rfind(tag, 0) == 0) {
            std::string v = line.substr(tag.size());
            v.erase(0, v.find_first_not_of(' '));
            return v;
        }
    return "";
}

inline Fixture load_fixture_file(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    Fixture fx;
    fx.name = p.stem().string();
    fx.provenance = header_field(text, "provenance");
    fx.equivalent = header_field(text, "equivalent");
    fx.diagram = vkh::parse_diagram(text);
    return fx;
}

inline Fixture load_fixture(const std::string& name) {
    return load_fixture_file(std::filesystem::path(fixture_dir()) / (name + ".pd"));
}

inline std::vector<Fixture> load_fixtures(int max_crossings = 1000) {
    std::vector<std::filesystem::path> paths;
    for (const auto& e : std::filesystem::directory_iterator(fixture_dir()))
        if (e.path().extension() == ".pd") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    std::vector<Fixture> out;
    for (const auto& p : paths) {
        Fixture fx = load_fixture_file(p);
        if (fx.diagram.num_crossings() <= max_crossings) out.push_back(std::move(fx));
    }
    return out;
}

// Random virtual diagram: arcs split into components of >= 3 arcs, passages
// paired up at random into crossings, with random over-strand direction.
inline vkh::Diagram random_diagram(std::mt19937_64& rng, int crossings, int max_components = 3) {
    const int arcs = 2 * crossings;
    for (;;) {
        const int k = std::uniform_int_distribution<int>(1, std::max(1, max_components))(rng);
        if (arcs < 3 * k) continue;
        std::vector<int> cuts;
        {
            std::vector<int> pool(arcs - 1);
            for (int i = 0; i < arcs - 1; ++i) pool[i] = i + 1;
            std::shuffle(pool.begin(), pool.end(), rng);
            cuts.assign(pool.begin(), pool.begin() + (k - 1));
            std::sort(cuts.begin(), cuts.end());
        }
        std::vector<int> parts;
        int prev = 0;
        for (int c : cuts) {
            parts.push_back(c - prev);
            prev = c;
        }
        parts.push_back(arcs - prev);
        if (*std::min_element(parts.begin(), parts.end()) < 3) continue;
        std::vector<int> succ(arcs + 1);
        int label = 1;
        for (int p : parts) {
            for (int j = 0; j < p; ++j) succ[label + j] = label + (j + 1) % p;
            label += p;
        }
        std::vector<int> passages(arcs);
        for (int i = 0; i < arcs; ++i) passages[i] = i + 1;
        std::shuffle(passages.begin(), passages.end(), rng);
        vkh::PDCode pd;
        std::bernoulli_distribution coin(0.5);
        for (int x = 0; x < crossings; ++x) {
            const int u = passages[2 * x], o = passages[2 * x + 1];
            if (coin(rng))
                pd.push_back({u, succ[o], succ[u], o});  // over runs d -> b
            else
                pd.push_back({u, o, succ[u], succ[o]});  // over runs b -> d
        }
        return vkh::validate(pd);
    }
}

// All 2^l orientations, by reversing subsets of components.
inline std::vector<vkh::Diagram> all_orientations(const vkh::Diagram& d) {
    std::vector<vkh::Diagram> out;
    const int l = d.num_components();
    for (int mask = 0; mask < (1 << l); ++mask) {
        vkh::Diagram e = d;
        for (int k = 0; k < l; ++k)
            if ((mask >> k) & 1) e = vkh::reverse_component(e, k);
        out.push_back(e);
    }
    return out;
}

} // namespace support
