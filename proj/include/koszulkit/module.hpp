#pragma once

#include "koszulkit/algebra.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace koszulkit {

/// Bounded-below left-finite graded left module, exact for degrees 0..hi.
/// Every basis coordinate is typed by the vertex whose idempotent fixes it.
class GradedModule {
 public:
  const TruncatedAlgebra* alg = nullptr;
  int hi = 0;                               // top certified degree
  std::vector<int> dims;                    // [0..hi]
  std::vector<std::vector<int>> vertex_of;  // per degree, per coordinate
  std::vector<std::vector<std::string>> labels;
  // act[g][t]: matrix M_t -> M_{t+deg g} for every algebra basis element g
  std::vector<std::vector<Matrix>> act;
  bool complete = false;  // certified zero above the window

  int dim(int t) const { return (t >= 0 && t <= hi) ? dims[t] : 0; }
  int total_dim() const;
  int lowest_degree() const;  // -1 when zero in-window
  bool is_zero() const { return total_dim() == 0; }

  Vec apply(int g, int t, const Vec& x) const;  // g acting on M_t
  void allocate(const TruncatedAlgebra& a, int hi_degree);
  /// Defensive invariant check: idempotent actions are the typed projections
  /// and the action respects the multiplication table.
  void check_action() const;
};

/// Degree-preserving module map; mats[t]: src_t -> tgt_t.
struct GradedMap {
  const GradedModule* src = nullptr;
  const GradedModule* tgt = nullptr;
  std::vector<Matrix> mats;

  Vec apply(int t, const Vec& x) const { return mats[t].apply(x); }
  bool commutes_with_action() const;
};

struct ProjGen {
  int vertex;
  int shift;
};

/// Free cover ⊕ Ae_v(-s) realized inside the window; coordinate (gen, b)
/// stands for b acting on the generator, b ranging over the algebra basis
/// with source v.
struct ProjectiveModule {
  std::vector<ProjGen> gens;
  GradedModule mod;
  // per degree: (generator index, algebra basis index) of each coordinate
  std::vector<std::vector<std::pair<int, int>>> coord_gen;

  int coord_of(int t, int gen, int alg_elem) const;  // -1 if absent
};

GradedModule simple_module(const TruncatedAlgebra& a, int vertex, int shift);
ProjectiveModule free_module(const TruncatedAlgebra& a, const std::vector<ProjGen>& gens,
                             int hi_degree);

/// layers[k][t] = (J^k M)_t as a subspace of M_t; layers[0] is everything.
std::vector<std::vector<Subspace>> radical_layers(const GradedModule& m, int kmax);

struct Cover {
  // heap-held so the map's endpoint pointers survive moves of the struct
  std::shared_ptr<ProjectiveModule> p;
  GradedMap pi;                 // P -> M, surjective with kernel inside JP
  std::vector<ProjGen> top;     // cover multiplicities, one entry per generator
};

/// Graded projective cover. Throws EngineError on the zero module. The
/// preimage representatives are the canonical complement coordinates of JM.
Cover projective_cover(const GradedModule& m);

struct SubmoduleResult {
  std::shared_ptr<GradedModule> mod;
  GradedMap incl;  // mod -> ambient
};

SubmoduleResult kernel_module(const GradedMap& f);
SubmoduleResult submodule(const GradedModule& m, const std::vector<Subspace>& sub);

struct QuotientResult {
  std::shared_ptr<GradedModule> mod;
  GradedMap proj;  // ambient -> mod
};

QuotientResult quotient_module(const GradedModule& m, const std::vector<Subspace>& sub);

GradedModule direct_sum(const GradedModule& a, const GradedModule& b);
GradedModule shift_module(const GradedModule& m, int s);  // degrees move up by s

/// Gr_J M as a graded module over gr.alg (graded by J-layer index).
GradedModule associated_graded_module(const GradedModule& m, const GrAlgebra& gr,
                                      const TruncatedAlgebra& a);

/// dim (J^i M / J^{i+1} M) summed over internal degree, i = 0..kmax-1.
std::vector<int> radical_layer_dims(const GradedModule& m, int kmax);

}  // namespace koszulkit
