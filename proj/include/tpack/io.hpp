#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tpack/graph.hpp"
#include "tpack/pipeline.hpp"

namespace tpack {

/// Line 1 "n k", then k edge-list blocks. Throws GraphError on bad input.
Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& inst);

/// Lines "j guest host", trees in order and guests ascending.
void write_packing(std::ostream& out, std::span<const Embedding> maps);
/// Every guest of every tree must appear exactly once. Throws GraphError.
std::vector<Embedding> read_packing(std::istream& in, const Instance& inst);

Instance load_instance(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace tpack
