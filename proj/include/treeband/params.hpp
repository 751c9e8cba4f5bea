#pragma once

#include <string>
#include <vector>

#include "treeband/decomp.hpp"
#include "treeband/graph.hpp"
#include "treeband/layout.hpp"

namespace treeband {

enum class Parameter { kTreewidth, kTreedepth, kBandwidth, kTreebandwidthBrute };
const char* parameter_name(Parameter p);

struct ExactParameter {
  int value = 0;
  // Certificates: a decomposition for treewidth, a layout whose height is the
  // treedepth or whose bandwidth is the treebandwidth, and a vertex order
  // for bandwidth.
  TreeDecomposition decomposition;
  TreeLayout layout;
  std::vector<int> order;
};

// Size limits: treewidth and treedepth n <= 18, the other two n <= 8.
// Error(kSizeLimit) beyond.
ExactParameter exact_parameter(const Graph& g, Parameter which);

// Minimum bandwidth over all rooted labelled trees, enumerated as Prufer
// sequences times roots. OpenMP over sequences; the serial version is the
// reference.
ExactParameter brute_force_treebandwidth(const Graph& g);
ExactParameter brute_force_treebandwidth_serial(const Graph& g);

// Rooted labelled tree from a Prufer sequence (length n-2) and a root.
std::vector<int> tree_from_prufer(const std::vector<int>& seq, int n, int root);

}  // namespace treeband
