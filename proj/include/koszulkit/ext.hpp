#pragma once

#include "koszulkit/koszul.hpp"
#include "koszulkit/resolution.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace koszulkit {

/// A cohomology class against the semisimple quotient, realized as the dual
/// of one generator of a minimal cover. src is the source simple's vertex
/// (-1 when the source is an external module), tgt the generator's vertex.
struct ExtClass {
  int src = -1;
  int n = 0;        // homological degree
  int gen = 0;      // generator index within the n-th cover
  int tgt = 0;
  int internal = 0; // generator shift
  std::string label;
};

/// Chain map lifting a class: alpha[k][t] maps the source resolution's
/// P_{m+k} in degree t into the target simple's P_k in degree t - shift.
struct Lift {
  int m = 0;
  int shift = 0;
  std::vector<std::vector<Matrix>> alpha;
};

/// Shared state for one algebra: minimal resolutions of every simple and a
/// cache of lifted chain maps.
class ExtContext {
 public:
  const TruncatedAlgebra* a = nullptr;
  int n_max = 0;
  std::vector<std::shared_ptr<GradedModule>> simples;
  std::vector<Resolution> res;  // per vertex
  bool all_terminated = false;

  // lifts of simple-sourced classes, keyed by (src vertex, n, gen)
  std::map<std::tuple<int, int, int>, Lift> lift_cache;

  const Lift& lift_of(int v, int n, int gen, int upto_k);
};

ExtContext make_ext_context(const TruncatedAlgebra& a, int n_max);

/// Chain map lifting the dual of generator `gen` of rs.p[m], with values in
/// the resolution rt of the simple at that generator's vertex. Built up to
/// alpha[upto_k]; the choice is canonical but class-level output is
/// independent of it.
Lift build_lift(const Resolution& rs, int m, int gen, const Resolution& rt, int upto_k);

/// The opposite-composition product algebra of self-extensions of the
/// semisimple quotient, graded by homological degree.
struct ExtAlgebra {
  int n_max = 0;     // requested homological window
  int certified = 0; // degrees 0..certified are exact; alg.D equals this
  std::vector<ExtClass> basis;  // ordered by (n, src vertex, generator)
  TruncatedAlgebra alg;
  std::map<std::pair<int, int>, int> bigraded_dims;  // (n, internal) -> dim
};

ExtAlgebra ext_algebra(ExtContext& ctx);

/// dim Ext^n(S_v, S_w) for the context's algebra, zero outside the window.
int ext_dim(const ExtContext& ctx, int n, int v, int w);

struct GenerationCheck {
  bool pass = true;
  std::optional<std::pair<int, std::string>> witness;  // (degree, missing element)
  std::vector<int> span_dims;  // dim of the degree-one-generated part, per degree
};

/// Is the positive part of the algebra generated by its degree-1 part?
GenerationCheck generated_in_degree_one(const TruncatedAlgebra& e);

/// Ext^*(M, S) as a graded left module over the extension algebra, graded by
/// homological degree; coordinates are typed by the generator vertices.
struct ExtModule {
  std::vector<ExtClass> basis;
  std::shared_ptr<GradedModule> mod;  // over ea.alg
};

ExtModule ext_of_module(ExtContext& ctx, const ExtAlgebra& ea, const Resolution& rm);

/// Is an extension module generated by its homological degree 0 part?
GenerationCheck generated_in_degree_zero(const GradedModule& em);

/// Side-by-side comparison of the double extension algebra with the
/// associated graded algebra: dimensions, vertex blocks, bigraded tables,
/// and degree-one generation on both sides.
struct DualityReport {
  int window = 0;  // degrees compared
  std::vector<int> dims_double;  // dim E(E(A))_h
  std::vector<int> dims_gr;      // dim (Gr A)_h
  bool dims_match = false;
  // (h, tgt vertex, src vertex) -> (double dual block dim, graded block dim)
  std::map<std::tuple<int, int, int>, std::pair<int, int>> blocks;
  bool blocks_match = false;
  std::map<std::pair<int, int>, int> bigraded_double;  // (h, internal) -> dim
  std::map<std::pair<int, int>, int> bigraded_gr;      // (i, t) -> dim
  GenerationCheck gen_double;
  GenerationCheck gen_gr;
  std::vector<int> product_span_double;  // dim E(E)_1 * E(E)_{h-1}, h >= 2
  std::vector<int> product_span_gr;
  bool structure_match = false;
  std::vector<std::string> warnings;
  bool pass = false;
};

DualityReport koszul_dual_double(const TruncatedAlgebra& a, int n_max);

/// For each degree h in the sound window, dim Ext_E^h(E(M), S_E) against
/// dim J^h M / J^{h+1} M.
struct DualModuleReport {
  int window = 0;
  std::vector<int> dims_ext;
  std::vector<int> dims_layers;
  bool pass = false;
};

DualModuleReport dual_module_check(ExtContext& ctx, const ExtAlgebra& ea,
                                   const Resolution& rm, const GradedModule& m);

/// Degreewise check of the two-step comparison
///   dim Ext^{n-1}(JM)_t + dim Ext^n(M)_t = dim Ext^n(M/JM)_t.
struct LayerExactnessReport {
  struct Row {
    int n, t;
    int lhs_jm, lhs_m, rhs_top;
    bool equal;
  };
  std::vector<Row> rows;
  int n_upto = 0;
  bool pass = true;
};

LayerExactnessReport radical_layer_exactness(const GradedModule& m, int n_upto);

}  // namespace koszulkit
