#pragma once

#include "koszulkit/ext.hpp"

namespace koszulkit {

/// Cohomology of Hom(P_*, A) for one simple's minimal resolution. Cells are
/// indexed by (homological degree i, internal twist u); u may be negative.
/// Only cells whose three neighbouring Hom spaces are exact in-window are
/// reported.
struct ExtAgainstAlgebra {
  int i_max = 0;
  std::map<std::pair<int, int>, int> dims;  // (i, u) -> dim, sound cells only
  // source vertex of each cohomology class representative at a nonzero cell;
  // -1 when a representative mixes vertices
  std::map<std::pair<int, int>, std::vector<int>> class_src;
};

ExtAgainstAlgebra ext_against_algebra(const TruncatedAlgebra& a, const Resolution& rv,
                                      int n_max);

struct RegularityReport {
  std::string status = "inconclusive";  // "pass" | "fail" | "inconclusive"
  int d = -1;                           // certified global dimension
  std::vector<int> sigma;               // vertex bijection induced by Ext^d
  std::vector<int> twist;               // internal twist of Ext^d per vertex
  std::string detail;
};

RegularityReport as_regular_certificate(const TruncatedAlgebra& a, int n_max);

struct SelfInjectivityReport {
  bool pass = false;
  int top_degree = 0;                          // degree flip used for the dual
  std::vector<ProjGen> top;                    // cover decomposition of the dual
  std::optional<std::pair<int, int>> witness;  // (degree, cover kernel dim)
};

/// Is the finite-dimensional algebra injective over itself? Tested through
/// projectivity of its linear dual as a left module. Requires a certified
/// finite-dimensional algebra and a window wide enough to see the whole
/// cover; throws DependencyError otherwise.
SelfInjectivityReport self_injective_check(const TruncatedAlgebra& lam);

struct GrTransferReport {
  RegularityReport base;
  RegularityReport graded;
  bool agree = false;
};

GrTransferReport gr_regularity_transfer(const TruncatedAlgebra& a, int n_max);

}  // namespace koszulkit
