#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "lrp/graph.hpp"

namespace lrp {

inline constexpr std::uint16_t kGraphFormatVersion = 1;

/// Binary graph file, all integers little-endian:
///
///   "LRPG" | u16 version | u16 d | u64 N | f64 beta | f64 s | u64 seed
///   | u16 generator-id byte length | generator-id UTF-8 bytes
///   | u64 edge_count | edge_count x (u64 smaller index, u64 larger index)
///
/// Edges appear sorted lexicographically.
void write_graph(const Graph& graph, std::ostream& out);
Graph read_graph(std::istream& in);

std::string serialize_graph(const Graph& graph);
void save_graph(const Graph& graph, const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path);

/// FNV-1a 64 over the serialized bytes.
std::uint64_t graph_digest(const Graph& graph);

}  // namespace lrp
