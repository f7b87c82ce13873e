#pragma once

#include "koszulkit/matrix.hpp"
#include "koszulkit/presentation.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace koszulkit {

struct BasisElem {
  int degree;
  int src, tgt;       // vertex typing: b lies in e_tgt A e_src
  std::string label;  // path word or imported label
};

using SparseVec = std::vector<std::pair<int, Rational>>;  // (global basis index, coeff)

/// A graded algebra held by basis and multiplication tables, exact within
/// the degree window 0..D. The degree-0 basis is adapted: the idempotents
/// e_v come first, every other degree-0 element spans the radical of the
/// degree-0 part.
///
/// Multiplication convention: mult(a, b) composes b first ("b then a"), so
/// a*b is nonzero only when tgt(b) = src(a), and paths in e_w A e_v run
/// from v to w. Left modules Ae_v are spanned by paths with source v.
class TruncatedAlgebra {
 public:
  FieldSpec field;
  int D = 0;  // degrees 0..D are certified
  std::vector<std::string> vertex_names;
  std::vector<BasisElem> basis;             // ordered by degree, then canonical
  std::vector<std::vector<int>> by_degree;  // degree -> global indices, ascending
  std::vector<int> pos_in_degree;           // global index -> position within its degree
  std::vector<int> idempotent;              // vertex -> global index (degree 0)
  std::vector<std::vector<SparseVec>> mult_table;  // [i][j], empty shell when deg sum > D
  int jpower_max = 1;
  std::vector<std::vector<Subspace>> rad;  // rad[k][t] = (J^k)_t, k = 0..jpower_max
  bool complete = false;  // true when the algebra is certified zero beyond the window
  std::string provenance;

  int nvert() const { return static_cast<int>(vertex_names.size()); }
  int dim(int t) const {
    return (t >= 0 && t <= D) ? static_cast<int>(by_degree[t].size()) : 0;
  }
  int total_dim() const { return static_cast<int>(basis.size()); }
  int top_nonzero_degree() const;  // -1 if zero algebra (cannot happen: idempotents)
  bool is_idempotent_elem(int g) const;

  /// Product of basis elements; valid when degree sum <= D.
  const SparseVec& mult(int i, int j) const { return mult_table[i][j]; }

  /// Dense product: x over by_degree[t1] coords, y over by_degree[t2] coords,
  /// result over by_degree[t1+t2] coords. Requires t1+t2 <= D.
  Vec mult_vec(int t1, const Vec& x, int t2, const Vec& y) const;

  /// Checks (ab)c = a(bc) on every basis triple inside the window.
  /// Returns the first violating triple, or empty.
  std::vector<int> associativity_witness() const;

  void compute_radical_chain();  // fills rad up to jpower_max
};

struct BuildInfo {
  int dim_a0 = 0;
  int dim_a0_next = 0;      // rebuilt with nilpotency bound N+1
  bool stabilized = false;  // dim_a0 == dim_a0_next
  int radical_nilpotency_index = 0;  // least m with J(A0)^m = 0
};

struct BuiltAlgebra {
  TruncatedAlgebra alg;
  BuildInfo info;
};

/// Constructs A = kQ/I degreewise: enumerate paths of each weight t <= D whose
/// runs of consecutive weight-0 arrows stay below the declared nilpotency
/// bound, span the truncated ideal by all padded relation products, and take
/// the RREF quotient. Aborts (EngineError) when the degree-0 part fails to
/// stabilize between bounds N and N+1 or its radical is not nilpotent within N.
BuiltAlgebra build_algebra(const Presentation& p);

struct GrAlgebra {
  TruncatedAlgebra alg;  // graded by J-adic degree, 0..alg.D
  // dim (J^i/J^{i+1})_t of the source algebra, keyed by (i, t)
  std::map<std::pair<int, int>, int> bidegree_dims;
  // source-algebra data of the chosen layer representatives:
  // reps[i] rows live in A_{t} coordinates; parallel to alg.by_degree[i]
  std::vector<std::vector<std::pair<int, Vec>>> reps;  // per i: (t, vector in A_t)
};

/// Associated graded algebra for the J-adic filtration. The window is
/// jpower_max-1, additionally capped by D when the source algebra is not
/// certified finite-dimensional.
GrAlgebra associated_graded(const TruncatedAlgebra& a);

struct StructureConstants {
  FieldSpec field;
  int D = 0;
  std::vector<std::string> vertex_names;
  std::vector<BasisElem> basis;    // must be sorted by degree; degree-0 adapted
  std::vector<int> idempotent;     // vertex -> index into basis
  std::map<std::pair<int, int>, SparseVec> products;  // (i,j) -> a*b, absent = zero
  int jpower_max = 1;
  bool complete = false;
  std::string provenance = "structure_constants";
};

/// Re-enters the engine with an externally described algebra (E(A), Gr_J A).
/// Verifies idempotent axioms, vertex typing, grading, and associativity on
/// all in-window triples; computes the radical chain.
TruncatedAlgebra from_structure_constants(const StructureConstants& sc);

StructureConstants structure_of(const TruncatedAlgebra& a);

nlohmann::json export_structure_json(const TruncatedAlgebra& a);
TruncatedAlgebra import_structure_json(const nlohmann::json& j);

}  // namespace koszulkit
