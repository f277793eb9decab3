#pragma once

#include <array>
#include <string>
#include <vector>

#include "sharpyoung/gaussian.hpp"

namespace sharpyoung {

// Uniform tensor grid on R^{2d+1}; axis k has nodes[k] points spanning
// center_k ± half_widths_k.
struct GridSpec {
  std::vector<int> nodes;
  Vec center;
  Vec half_widths;

  int dims() const { return static_cast<int>(nodes.size()); }
  long size() const;
  double step(int axis) const;
  double coord(int axis, int i) const;
  // Flattened row-major index (last axis fastest) to point.
  Vec point(long idx) const;
  void validate() const;
};

// Three complex functions sampled on a shared grid.
struct SampledTriple {
  int d = 1;
  std::array<Exponent, 3> p;
  GridSpec grid;
  std::array<CVec, 3> values;

  void validate() const;
};

// Box covering ±6 standard deviations of every |G_j|^{p_j} along each axis.
GridSpec auto_grid(const Triple& g, const std::array<Exponent, 3>& p, int x_nodes, int t_nodes);

SampledTriple sample_triple(const Triple& g, const std::array<Exponent, 3>& p, const GridSpec& grid);

// JSON document: header fields plus a base64 little-endian float64 payload per
// function with interleaved (re, im) pairs.
std::string serialize(const SampledTriple& s);
SampledTriple deserialize_sampled_triple(const std::string& text);

std::string base64_encode(const std::vector<unsigned char>& bytes);
std::vector<unsigned char> base64_decode(const std::string& text);

}  // namespace sharpyoung
