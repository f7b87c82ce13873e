#include "koszulkit/koszul.hpp"

#include "koszulkit/errors.hpp"

#include <algorithm>

namespace koszulkit {

namespace {

KoszulCertificate syzygy_certificate(const Resolution& r, int n_upto, int k_lo, int k_hi,
                                     const std::string& mode) {
  KoszulCertificate cert;
  cert.mode = mode;
  cert.n_upto = n_upto;
  cert.k_max = k_hi;

  const FieldSpec field = r.m0->alg->field;
  for (int n = 0; n <= n_upto; ++n) {
    if (n >= r.length) {
      if (!r.terminated)
        throw DependencyError("syzygy certificate requested beyond the computed resolution");
      // resolution terminated: both sides are zero
      for (int k = k_lo; k <= k_hi; ++k) cert.cells.push_back(KoszulCell{n, k, 0, 0, true});
      continue;
    }
    const GradedModule& pn = r.p[n]->mod;
    const GradedModule& ker = *r.syz[n + 1];
    const GradedMap& incl = r.syz_incl[n + 1];

    auto ker_layers = radical_layers(ker, k_hi);
    auto p_layers = radical_layers(pn, k_hi + 1);

    // Ker d_n inside P_n, degree by degree
    std::vector<Subspace> ker_in_p(pn.hi + 1);
    for (int t = 0; t <= pn.hi; ++t) {
      std::vector<Vec> rows;
      for (int c = 0; c < ker.dim(t); ++c) {
        Vec unit = zero_vec(ker.dim(t));
        unit[c] = 1;
        rows.push_back(incl.apply(t, unit));
      }
      ker_in_p[t] = Subspace::span(field, pn.dim(t), rows);
    }

    for (int k = k_lo; k <= k_hi; ++k) {
      KoszulCell cell{n, k, 0, 0, true};
      for (int t = 0; t <= pn.hi; ++t) {
        std::vector<Vec> rows;
        const Subspace& jk = ker_layers[k][t];
        for (int rr = 0; rr < jk.dim(); ++rr)
          rows.push_back(incl.apply(t, jk.basis().row(rr)));
        Subspace lhs = Subspace::span(field, pn.dim(t), rows);
        Subspace rhs = intersect(ker_in_p[t], p_layers[k + 1][t]);
        if (!rhs.contains(lhs))
          throw EngineError("syzygy certificate: J^k Ker escapes Ker n J^{k+1} P");
        cell.lhs_dim += lhs.dim();
        cell.rhs_dim += rhs.dim();
        if (lhs.dim() != rhs.dim()) {
          cell.equal = false;
          if (!cert.witness) {
            for (int rr = 0; rr < rhs.dim(); ++rr) {
              Vec v = rhs.basis().row(rr);
              if (!lhs.coordinates(v)) {
                cert.witness = KoszulWitness{n, k, t, v};
                break;
              }
            }
          }
        }
      }
      if (!cell.equal) cert.pass = false;
      cert.cells.push_back(cell);
    }
  }
  return cert;
}

}  // namespace

KoszulCertificate quasi_koszul_certificate(const Resolution& r, int n_upto) {
  return syzygy_certificate(r, n_upto, 1, 1, "quasi");
}

KoszulCertificate koszul_certificate(const Resolution& r, int n_upto, int k_max) {
  return syzygy_certificate(r, n_upto, 1, k_max, "full");
}

ClassicalCrossCheck classical_cross_check(const TruncatedAlgebra& a, const Resolution& r,
                                          const KoszulCertificate& cert) {
  ClassicalCrossCheck out;
  out.applicable = a.dim(0) == a.nvert();
  int base = r.m0->lowest_degree();
  out.linear = linearity_check(r, base < 0 ? 0 : base).linear;
  out.syzygy_pass = cert.pass;
  out.agree = out.linear == out.syzygy_pass;
  return out;
}

}  // namespace koszulkit
