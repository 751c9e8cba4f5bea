#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeband/decomp.hpp"
#include "treeband/graph.hpp"
#include "treeband/layout.hpp"

namespace treeband {

// tw(G) > k, certified either by a minor whose minimum degree exceeds k
// (branch sets listed) or by an exact treewidth computation.
struct TreewidthWitness {
  int lower_bound = 0;
  std::vector<std::vector<int>> branch_sets;  // empty when only the exact search certifies
  bool exact = false;
};
// Greedy contraction of minimum-degree vertices; keeps the minor with the
// largest minimum degree seen.
TreewidthWitness minor_degree_witness(const Graph& g);
// Checks the branch sets, or reruns the exact search (n <= 20 per block).
bool verify_treewidth_witness(const Graph& g, const TreewidthWitness& w, int k);

// tbw(G) > k: an N(centre)-rooted path minor in G - centre with at least
// (k+1)·2^k branch sets. The centre's ancestors within distance k cut such a
// path into k+1 pieces, and each piece would need treedepth above k below it.
struct FanWitness {
  int centre = -1;
  std::vector<std::vector<int>> branch_sets;  // ids of G
};
int fan_witness_length(int k);
bool verify_fan_witness(const Graph& g, const FanWitness& w, int k);

// tbw(G) > k via td(G, N[v]) > 2k+1: v, its k nearest ancestors and the k
// levels below v would otherwise eliminate N[v].
struct NeighbourhoodDepthWitness {
  int centre = -1;
  int treedepth = 0;
};
bool verify_neighbourhood_depth_witness(const Graph& g, const NeighbourhoodDepthWitness& w, int k);

// otw(G) > k: more than max(k+1, k^2-k+1) internally disjoint u-v paths.
struct DipoleWitness {
  int u = -1, v = -1;
  std::vector<std::vector<int>> paths;
};
int dipole_threshold(int k);
bool verify_dipole_witness(const Graph& g, const DipoleWitness& w, int k);

enum class RejectReason { kNone, kTreewidth, kFan, kNeighbourhoodDepth, kDipole };
const char* reject_reason_name(RejectReason r);

struct ApproxOptions {
  ProviderOptions provider;
  std::int64_t minor_search_states = 2'000'000;  // per centre
  int treedepth_component_limit = 18;
};

struct TbwApproxResult {
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
  std::string witness_text;
  TreewidthWitness treewidth_witness;
  FanWitness fan_witness;
  NeighbourhoodDepthWitness depth_witness;

  int provider_width = -1;
  bool provider_exact = true;
  // Thresholds derived from k and the values measured on the decomposition.
  int threshold_a = 0, threshold_b = 0;
  long long threshold_c = 0;
  int measured_a = 0, measured_b = 0, measured_c = 0;
  bool relaxed = false;  // a threshold failed without a witness; folded with measured values
  int unchecked_centres = 0;  // witness searches that ran out of budget

  TreeDecomposition folded;
  int fold_diameter = 0;
  int fold_diameter_bound = 0;
  TreeLayout layout;
  int bandwidth = 0;
};
// Never rejects without a witness, so a reject means tbw(G) > k.
TbwApproxResult approximate_treebandwidth(const Graph& g, int k, const ApproxOptions& opt = {});

struct OtwResult {
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
  std::string witness_text;
  TreewidthWitness treewidth_witness;
  DipoleWitness dipole_witness;

  int provider_width = -1;
  bool provider_exact = true;
  int threshold_a = 0, threshold_b = 0, threshold_c = 0;
  int measured_a = 0, measured_b = 0, measured_c = 0;
  bool relaxed = false;
  TreeDecomposition decomposition;
  int width = 0;
  int overlap = 0;
  long long overlap_bound = 0;
};
// Never rejects without a witness, so a reject means otw(G) > k.
OtwResult overlap_treewidth_pipeline(const Graph& g, int k, const ApproxOptions& opt = {});

}  // namespace treeband
