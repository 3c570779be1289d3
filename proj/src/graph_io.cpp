#include "lrp/graph_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lrp/errors.hpp"

namespace lrp {
namespace {

template <class UInt>
void put_le(std::ostream& out, UInt value) {
  char bytes[sizeof(UInt)];
  for (std::size_t i = 0; i < sizeof(UInt); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes, sizeof(UInt));
}

template <class UInt>
UInt get_le(std::istream& in) {
  unsigned char bytes[sizeof(UInt)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(UInt))) throw std::runtime_error("graph file truncated");
  UInt value = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) value |= static_cast<UInt>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void write_graph(const Graph& graph, std::ostream& out) {
  out.write("LRPG", 4);
  put_le<std::uint16_t>(out, kGraphFormatVersion);
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(graph.box().dim()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(graph.box().side()));
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(graph.params().beta()));
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(graph.params().exponent()));
  put_le<std::uint64_t>(out, graph.seed());
  const std::string& id = graph.generator_id();
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
  out.write(id.data(), static_cast<std::streamsize>(id.size()));
  put_le<std::uint64_t>(out, graph.edge_count());
  for (const auto& e : graph.edges()) {
    put_le<std::uint64_t>(out, e.u);
    put_le<std::uint64_t>(out, e.v);
  }
  if (!out) throw std::runtime_error("failed writing graph");
}

Graph read_graph(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "LRPG", 4) != 0) throw std::runtime_error("not an LRPG graph file");
  const auto version = get_le<std::uint16_t>(in);
  if (version != kGraphFormatVersion) {
    throw std::runtime_error("unsupported graph format version " + std::to_string(version));
  }
  const auto d = get_le<std::uint16_t>(in);
  const auto side = get_le<std::uint64_t>(in);
  const double beta = std::bit_cast<double>(get_le<std::uint64_t>(in));
  const double s = std::bit_cast<double>(get_le<std::uint64_t>(in));
  const auto seed = get_le<std::uint64_t>(in);
  const auto id_len = get_le<std::uint16_t>(in);
  std::string id(id_len, '\0');
  if (!in.read(id.data(), id_len)) throw std::runtime_error("graph file truncated");
  const auto edge_count = get_le<std::uint64_t>(in);

  const BoxSpec box(d, static_cast<std::int64_t>(side));
  const ModelParams params(beta, s, d);
  std::vector<Edge> edges;
  edges.reserve(edge_count);
  for (std::uint64_t i = 0; i < edge_count; ++i) {
    const auto u = get_le<std::uint64_t>(in);
    const auto v = get_le<std::uint64_t>(in);
    edges.push_back({u, v});
  }
  return Graph(box, params, seed, std::move(id), std::move(edges));
}

std::string serialize_graph(const Graph& graph) {
  std::ostringstream out(std::ios::binary);
  write_graph(graph, out);
  return std::move(out).str();
}

void save_graph(const Graph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_graph(graph, out);
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_graph(in);
}

std::uint64_t graph_digest(const Graph& graph) { return fnv1a64(serialize_graph(graph)); }

}  // namespace lrp
