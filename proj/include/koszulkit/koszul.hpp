#pragma once

#include "koszulkit/resolution.hpp"

namespace koszulkit {

/// One syzygy comparison: J^k Ker d_n against Ker d_n n J^{k+1} P_n,
/// dimensions summed over internal degree. The left side always sits inside
/// the right; equality across all cells is the certificate.
struct KoszulCell {
  int n = 0;
  int k = 0;
  int lhs_dim = 0;
  int rhs_dim = 0;
  bool equal = true;
};

struct KoszulWitness {
  int n = 0, k = 0, t = 0;
  Vec vec;  // element of (Ker d_n n J^{k+1} P_n)_t missing from (J^k Ker d_n)_t
};

struct KoszulCertificate {
  std::string mode;  // "quasi" (k = 1 only) or "full"
  int n_upto = 0;
  int k_max = 1;
  std::vector<KoszulCell> cells;
  bool pass = true;
  std::optional<KoszulWitness> witness;  // first failing cell and degree
};

KoszulCertificate quasi_koszul_certificate(const Resolution& r, int n_upto);
KoszulCertificate koszul_certificate(const Resolution& r, int n_upto, int k_max);

/// When the degree-0 part is a product of copies of the base field, the
/// radical filtration on each cover is the shift filtration and the syzygy
/// condition collapses to linearity of the resolution. Both verdicts are
/// computed independently and compared.
struct ClassicalCrossCheck {
  bool applicable = false;   // dim A_0 == number of vertices
  bool linear = false;       // covers generated on the diagonal
  bool syzygy_pass = false;  // generalized certificate verdict
  bool agree = false;
};

ClassicalCrossCheck classical_cross_check(const TruncatedAlgebra& a, const Resolution& r,
                                          const KoszulCertificate& cert);

}  // namespace koszulkit
