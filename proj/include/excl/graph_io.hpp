#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "excl/graphs.hpp"

namespace excl {

inline constexpr int kGraphFormatVersion = 1;

/// Graph file format: {"version": 1, "n": N, "edges": [[i,j]...], "labels": [...]}
/// with edges i < j, lexicographically sorted; "labels" present only when set.
inline nlohmann::ordered_json graph_to_json(const ExclusivityGraph& g) {
    nlohmann::ordered_json doc;
    doc["version"] = kGraphFormatVersion;
    doc["n"] = g.size();
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
    doc["edges"] = std::move(edges);
    if (!g.labels().empty()) doc["labels"] = g.labels();
    return doc;
}

inline ExclusivityGraph graph_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("version") || !doc.contains("n") ||
        !doc.contains("edges"))
        throw std::invalid_argument("graph file: missing version/n/edges");
    if (doc.at("version").get<int>() != kGraphFormatVersion)
        throw std::invalid_argument("graph file: unsupported version");
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("graph file: edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    return ExclusivityGraph::from_edges(n, edges, std::move(labels));
}

inline std::string graph_to_string(const ExclusivityGraph& g) {
    return graph_to_json(g).dump(2) + "\n";
}

inline void write_graph_file(const ExclusivityGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << graph_to_string(g);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline ExclusivityGraph read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("graph file " + path.string() + ": " + e.what());
    }
    return graph_from_json(doc);
}

} // namespace excl
