#include "tpack/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tpack {

Instance read_instance(std::istream& in) {
  Instance inst;
  if (!(in >> inst.n >> inst.k)) throw GraphError("instance: missing \"n k\" header");
  if (inst.k < 1 || inst.n < 1) throw GraphError("instance: n and k must be positive");
  for (int j = 0; j < inst.k; ++j) {
    try {
      inst.trees.emplace_back(read_edge_list(in));
    } catch (const GraphError& e) {
      throw GraphError("instance: tree " + std::to_string(j) + ": " + e.what());
    }
  }
  try {
    check_instance(inst);
  } catch (const std::invalid_argument& e) {
    throw GraphError(std::string("instance: ") + e.what());
  }
  return inst;
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << inst.n << ' ' << inst.k << '\n';
  for (const Tree& t : inst.trees) write_edge_list(out, t.graph());
}

void write_packing(std::ostream& out, std::span<const Embedding> maps) {
  for (std::size_t j = 0; j < maps.size(); ++j)
    for (Vertex v = 1; v <= maps[j].guest_order(); ++v) out << j << ' ' << v << ' ' << maps[j](v) << '\n';
}

std::vector<Embedding> read_packing(std::istream& in, const Instance& inst) {
  std::vector<std::vector<Vertex>> images(inst.k);
  for (int j = 0; j < inst.k; ++j) images[j].assign(inst.trees[j].order(), 0);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long j = 0, g = 0, h = 0;
    std::string extra;
    if (!(ls >> j >> g >> h) || (ls >> extra))
      throw GraphError("packing line " + std::to_string(lineno) + ": expected \"j guest host\"");
    if (j < 0 || j >= inst.k)
      throw GraphError("packing line " + std::to_string(lineno) + ": tree index out of range");
    auto& im = images[j];
    if (g < 1 || g > static_cast<long long>(im.size()))
      throw GraphError("packing line " + std::to_string(lineno) + ": guest vertex out of range");
    if (h < 1 || h > inst.n)
      throw GraphError("packing line " + std::to_string(lineno) + ": host vertex out of range");
    if (im[g - 1] != 0)
      throw GraphError("packing line " + std::to_string(lineno) + ": guest vertex repeated");
    im[g - 1] = static_cast<Vertex>(h);
  }
  std::vector<Embedding> out;
  for (int j = 0; j < inst.k; ++j) {
    for (std::size_t v = 0; v < images[j].size(); ++v)
      if (images[j][v] == 0)
        throw GraphError("packing: tree " + std::to_string(j) + " vertex " + std::to_string(v + 1) +
                         " has no image");
    out.emplace_back(std::move(images[j]));
  }
  return out;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in);
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace tpack
