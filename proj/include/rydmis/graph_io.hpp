#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rydmis/udgraph.hpp"

namespace rydmis {

inline std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Graph file: a JSON document with fields
//   {format_version, n, rho, box_side, seed, positions: [[x,y],...],
//    edges: [[u,v],...] with u < v}
// Positions are written with 17 significant digits, so reloading reproduces
// the adjacency bit-for-bit. The writer emits bytes directly (not through a
// JSON printer) to keep the number formatting pinned.
inline constexpr const char* kGraphFormatVersion = "rydmis-graph-1";

inline std::string udgraph_to_json(const UDGraph& g, const std::string& config_json = "") {
    std::ostringstream os;
    os << "{\n";
    os << "  \"format_version\": \"" << kGraphFormatVersion << "\",\n";
    if (!config_json.empty()) os << "  \"config\": " << config_json << ",\n";
    os << "  \"n\": " << g.n << ",\n";
    os << "  \"rho\": " << format_g17(g.rho) << ",\n";
    os << "  \"box_side\": " << format_g17(g.box_side) << ",\n";
    if (g.seed)
        os << "  \"seed\": " << *g.seed << ",\n";
    else
        os << "  \"seed\": null,\n";
    os << "  \"positions\": [";
    for (int v = 0; v < g.n; ++v) {
        if (v) os << ", ";
        os << "[" << format_g17(g.positions[v].x) << ", " << format_g17(g.positions[v].y) << "]";
    }
    os << "],\n";
    os << "  \"edges\": [";
    bool first = true;
    for (auto [u, v] : g.edges()) {
        if (!first) os << ", ";
        first = false;
        os << "[" << u << ", " << v << "]";
    }
    os << "]\n}\n";
    return os.str();
}

inline UDGraph udgraph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format_version").get<std::string>() != kGraphFormatVersion)
        throw std::invalid_argument("graph file: unsupported format_version");
    const int n = j.at("n").get<int>();
    const double rho = j.at("rho").get<double>();
    const double box_side = j.at("box_side").get<double>();
    std::optional<std::uint64_t> seed;
    if (!j.at("seed").is_null()) seed = j.at("seed").get<std::uint64_t>();
    const auto& jpos = j.at("positions");
    if (static_cast<int>(jpos.size()) != n)
        throw std::invalid_argument("graph file: positions length != n");
    std::vector<Point2D> pos(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        pos[static_cast<std::size_t>(v)].x = jpos[static_cast<std::size_t>(v)][0].get<double>();
        pos[static_cast<std::size_t>(v)].y = jpos[static_cast<std::size_t>(v)][1].get<double>();
    }
    UDGraph g;
    if (box_side > 0.0) {
        g = udgraph_from_positions(std::move(pos), rho, box_side, seed);
    } else {
        // geometry-free graph: adjacency comes from the edge list alone
        std::vector<std::pair<int, int>> edge_list;
        for (const auto& e : j.at("edges"))
            edge_list.emplace_back(e[0].get<int>(), e[1].get<int>());
        g = udgraph_from_edges(n, edge_list);
        g.rho = rho;
        g.positions = std::move(pos);
        g.seed = seed;
        return g;
    }
    // cross-check the stored edge list against the recomputed adjacency
    std::size_t listed = j.at("edges").size();
    if (static_cast<std::size_t>(g.edge_count()) != listed)
        throw std::invalid_argument("graph file: edge list disagrees with positions");
    for (const auto& e : j.at("edges"))
        if (!g.has_edge(e[0].get<int>(), e[1].get<int>()))
            throw std::invalid_argument("graph file: edge list disagrees with positions");
    return g;
}

inline void save_udgraph(const UDGraph& g, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << udgraph_to_json(g);
}

inline UDGraph load_udgraph(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return udgraph_from_json(ss.str());
}

}  // namespace rydmis
