#pragma once

#include <map>
#include <string>
#include <vector>

#include "ddinet/autodiff.hpp"
#include "ddinet/chem/features.hpp"
#include "ddinet/pairgraph.hpp"
#include "ddinet/params.hpp"

namespace ddinet::enc {

/// Binds a tape to a parameter store: parameters become leaf variables on
/// first use, and flush() pushes their gradients into a sink after backward.
class TapeParams {
 public:
  TapeParams(ad::Tape& tape, const ParameterStore& store) : tape_(&tape), store_(&store) {}

  ad::Var operator[](const std::string& name);
  void flush(GradSink& sink) const;

 private:
  ad::Tape* tape_;
  const ParameterStore* store_;
  std::map<std::string, ad::Var> leaves_;
};

// -- shared structural operators --------------------------------------------

/// Row-normalised adjacency of the training graph (neighbour MEAN operator).
ad::SpOp sage_mean_adjacency(const BiomedicalKG& kg);

/// Dense attention mask over subgraph edges, optionally with self-loops.
std::vector<unsigned char> attention_mask(const EnclosingSubgraph& sub, bool self_loops);

/// 1/sqrt(d_i d_j) over intra-drug edges, no self-loops; isolated fragments
/// get empty rows (zero aggregate).
ad::SpOp intra_norm_adjacency(const HierarchicalInteractionGraph& hig);

/// Dense mask of the complete bipartite cross-drug edges.
std::vector<unsigned char> inter_mask(const HierarchicalInteractionGraph& hig);

/// Symmetric GCN normalisation with self-loops for the molecular graph.
ad::SpOp mol_norm_adjacency(const chem::MolecularGraph& g);

// -- encoders ----------------------------------------------------------------

/// Neighbourhood-mean message passing over the whole knowledge graph;
/// layers=0 returns the initial table unchanged.
ad::Var sage_encode(ad::Tape& t, TapeParams& p, ad::Var x0, const ad::SpOp* mean_adj, int layers);

/// One multi-head attention + feed-forward block (scaled dot-product
/// attention over masked neighbourhoods, GELU feed-forward, residual + layer
/// norm around both sub-blocks).
ad::Var gt_layer(ad::Tape& t, TapeParams& p, ad::Var h, const std::vector<unsigned char>& mask,
                 int layer, int heads);

ad::Var gt_encode(ad::Tape& t, TapeParams& p, ad::Var h0, const std::vector<unsigned char>& mask,
                  int layers, int heads);

/// Symmetric-normalised graph convolution over intra-drug edges (no
/// self-loops).
ad::Var intra_gcn_layer(ad::Tape& t, TapeParams& p, ad::Var z, const ad::SpOp* intra, int layer);

struct InterOut {
  ad::Var z;
  ad::Var attn;  // row-stochastic over cross-drug neighbours (last head)
};

/// Cross-drug attention layer; multi-head with concatenation except on the
/// final layer, which runs a single head so the attention matrix feeds the
/// influence pooling.
InterOut inter_gat_layer(ad::Tape& t, TapeParams& p, ad::Var z,
                         const std::vector<unsigned char>& mask, int layer, int heads,
                         double slope);

struct HigOut {
  ad::Var z;
  ad::Var final_attn;
};

/// Per layer: sum of the intra-drug and inter-drug branch outputs.
HigOut hig_encode(ad::Tape& t, TapeParams& p, ad::Var z0, const ad::SpOp* intra,
                  const std::vector<unsigned char>& imask, int layers, int heads, double slope);

/// Molecular GCN with self-loop normalisation, sum-pooled to one row.
ad::Var mol_gcn_encode(ad::Tape& t, TapeParams& p, ad::Var x, const ad::SpOp* adj, int layers);

}  // namespace ddinet::enc
