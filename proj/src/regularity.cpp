#include "koszulkit/regularity.hpp"

#include "koszulkit/errors.hpp"

#include <algorithm>

namespace koszulkit {

namespace {

// basis of Hom(P_i, A) in twist u: one functional per (generator, element of
// e_w A in degree shift+u), determined by generator |-> element
struct HomBasis {
  std::vector<std::pair<int, int>> elems;  // (generator index, algebra basis index)
  std::map<std::pair<int, int>, int> index;
};

HomBasis hom_basis(const TruncatedAlgebra& a, const Resolution& r, int i, int u) {
  HomBasis hb;
  if (i < 0 || i >= r.length) return hb;
  for (std::size_t g = 0; g < r.p[i]->gens.size(); ++g) {
    const ProjGen& pg = r.p[i]->gens[g];
    int deg = pg.shift + u;
    if (deg < 0 || deg > a.D) continue;
    for (int x : a.by_degree[deg]) {
      if (a.basis[x].tgt != pg.vertex) continue;
      hb.index[{static_cast<int>(g), x}] = static_cast<int>(hb.elems.size());
      hb.elems.emplace_back(static_cast<int>(g), x);
    }
  }
  return hb;
}

// matrix of precomposition with d_i: Hom(P_{i-1}, A)_u -> Hom(P_i, A)_u
Matrix hom_differential(const TruncatedAlgebra& a, const Resolution& r, int i, int u,
                        const HomBasis& from, const HomBasis& to) {
  Field f(a.field);
  Matrix mat(a.field, static_cast<int>(to.elems.size()),
             static_cast<int>(from.elems.size()));
  if (i < 1 || i >= r.length) return mat;
  for (std::size_t col = 0; col < from.elems.size(); ++col) {
    auto [j, x] = from.elems[col];
    for (std::size_t g = 0; g < r.p[i]->gens.size(); ++g) {
      const ProjGen& pg = r.p[i]->gens[g];
      int gc = r.p[i]->coord_of(pg.shift, static_cast<int>(g),
                                a.idempotent[pg.vertex]);
      Vec dg = r.d[i].mats[pg.shift].col(gc);
      for (std::size_t c = 0; c < dg.size(); ++c) {
        if (f.is_zero(dg[c])) continue;
        auto [jj, b] = r.p[i - 1]->coord_gen[pg.shift][static_cast<int>(c)];
        if (jj != j) continue;
        for (const auto& [y, coeff] : a.mult(b, x)) {
          auto it = to.index.find({static_cast<int>(g), y});
          if (it == to.index.end()) continue;
          mat.at(it->second, static_cast<int>(col)) =
              f.add(mat.at(it->second, static_cast<int>(col)), f.mul(dg[c], coeff));
        }
      }
    }
  }
  return mat;
}

}  // namespace

ExtAgainstAlgebra ext_against_algebra(const TruncatedAlgebra& a, const Resolution& rv,
                                      int n_max) {
  ExtAgainstAlgebra out;
  out.i_max = std::min(n_max, rv.length - 1);
  int smax = 0;
  for (int i = 0; i < rv.length; ++i)
    for (const ProjGen& g : rv.p[i]->gens) smax = std::max(smax, g.shift);

  auto sound = [&](int i, int u) {
    if (a.complete) return true;
    for (int k = i - 1; k <= i + 1; ++k) {
      if (k < 0 || k >= rv.length) continue;
      for (const ProjGen& g : rv.p[k]->gens)
        if (g.shift + u > a.D) return false;
    }
    return true;
  };

  for (int i = 0; i <= out.i_max; ++i)
    for (int u = -smax; u <= a.D; ++u) {
      if (!sound(i, u)) continue;
      HomBasis here = hom_basis(a, rv, i, u);
      HomBasis prev = hom_basis(a, rv, i - 1, u);
      HomBasis next = hom_basis(a, rv, i + 1, u);
      Matrix din = hom_differential(a, rv, i, u, prev, here);
      Matrix dout = hom_differential(a, rv, i + 1, u, here, next);

      Subspace cycles = kernel_basis(dout);
      std::vector<Vec> cols;
      for (int c = 0; c < din.cols(); ++c) cols.push_back(din.col(c));
      Subspace bdry = Subspace::span(a.field, din.rows(), cols);
      if (!cycles.contains(bdry))
        throw EngineError("dual complex is not a complex");
      int dim = cycles.dim() - bdry.dim();
      if (dim == 0) continue;
      out.dims[{i, u}] = dim;

      // representatives: cycle rows outside the boundary span
      std::vector<int> srcs;
      std::vector<bool> bpiv(static_cast<int>(here.elems.size()), false);
      for (int p : bdry.pivots()) bpiv[p] = true;
      for (int rr = 0; rr < cycles.dim() && static_cast<int>(srcs.size()) < dim; ++rr) {
        if (bpiv[cycles.pivots()[rr]]) continue;
        Vec rep = bdry.reduce(cycles.basis().row(rr));
        int sv = -2;
        for (std::size_t c = 0; c < rep.size(); ++c) {
          if (rep[c] == 0) continue;
          int s = a.basis[here.elems[c].second].src;
          if (sv == -2) sv = s;
          else if (sv != s) sv = -1;
        }
        srcs.push_back(sv);
      }
      out.class_src[{i, u}] = srcs;
    }
  return out;
}

RegularityReport as_regular_certificate(const TruncatedAlgebra& a, int n_max) {
  RegularityReport rep;
  ExtContext ctx = make_ext_context(a, n_max);
  for (int v = 0; v < a.nvert(); ++v)
    if (!ctx.res[v].terminated) {
      rep.status = "inconclusive";
      rep.detail = "global dimension not certified: resolution of the simple at '" +
                   a.vertex_names[v] + "' is open at the window";
      return rep;
    }
  int d = 0;
  for (const Resolution& r : ctx.res) d = std::max(d, r.pdim);
  rep.d = d;
  rep.sigma.assign(a.nvert(), -1);
  rep.twist.assign(a.nvert(), 0);

  for (int v = 0; v < a.nvert(); ++v) {
    ExtAgainstAlgebra ea = ext_against_algebra(a, ctx.res[v], n_max);
    int found_u = 0, total = 0;
    for (const auto& [cell, dim] : ea.dims) {
      auto [i, u] = cell;
      if (i != d) {
        rep.status = "fail";
        rep.detail = "Ext^" + std::to_string(i) + "(S_" + a.vertex_names[v] +
                     ", A) is nonzero at twist " + std::to_string(u);
        return rep;
      }
      total += dim;
      found_u = u;
    }
    if (total != 1) {
      rep.status = "fail";
      rep.detail = "Ext^" + std::to_string(d) + "(S_" + a.vertex_names[v] +
                   ", A) has total dimension " + std::to_string(total);
      return rep;
    }
    int sv = ea.class_src.at({d, found_u}).front();
    if (sv < 0) {
      rep.status = "fail";
      rep.detail = "top extension class at '" + a.vertex_names[v] +
                   "' mixes source vertices";
      return rep;
    }
    rep.sigma[v] = sv;
    rep.twist[v] = found_u;
  }

  std::vector<bool> hit(a.nvert(), false);
  for (int v = 0; v < a.nvert(); ++v) {
    if (hit[rep.sigma[v]]) {
      rep.status = "fail";
      rep.detail = "induced vertex map is not a bijection";
      return rep;
    }
    hit[rep.sigma[v]] = true;
  }
  rep.status = "pass";
  return rep;
}

SelfInjectivityReport self_injective_check(const TruncatedAlgebra& lam) {
  if (!lam.complete)
    throw DependencyError(
        "self-injectivity needs a certified finite-dimensional algebra");
  int T = lam.top_nonzero_degree();
  Field f(lam.field);

  // linear dual as a left module: (g . b*)(x) = b*(x g)
  GradedModule dl;
  dl.allocate(lam, lam.D);
  std::vector<int> coord_of(lam.total_dim(), -1);
  std::vector<std::vector<int>> duals(lam.D + 1);
  for (int b = 0; b < lam.total_dim(); ++b) {
    int t = T - lam.basis[b].degree;
    coord_of[b] = dl.dims[t]++;
    dl.vertex_of[t].push_back(lam.basis[b].src);
    dl.labels[t].push_back(lam.basis[b].label + "*");
    duals[t].push_back(b);
  }
  for (int g = 0; g < lam.total_dim(); ++g) {
    int dg = lam.basis[g].degree;
    for (int t = 0; t + dg <= lam.D; ++t) {
      Matrix mat(lam.field, dl.dims[t + dg], dl.dims[t]);
      for (int c = 0; c < dl.dims[t]; ++c) {
        int b = duals[t][c];
        int xd = lam.basis[b].degree - dg;
        if (xd < 0) continue;
        // coefficient of b in x*g determines the x* component
        for (int x : lam.by_degree[xd])
          for (const auto& [k, coeff] : lam.mult(x, g))
            if (k == b)
              mat.at(coord_of[x], c) = f.add(mat.at(coord_of[x], c), coeff);
      }
      dl.act[g][t] = std::move(mat);
    }
  }
  dl.complete = true;

  // window soundness: the cover must be fully visible
  auto layers = radical_layers(dl, 1);
  int max_shift = 0;
  for (int t = 0; t <= dl.hi; ++t)
    if (dl.dims[t] - layers[1][t].dim() > 0) max_shift = t;
  if (max_shift + T > lam.D)
    throw DependencyError("window too small to certify self-injectivity");

  Cover cov = projective_cover(dl);
  SelfInjectivityReport rep;
  rep.top_degree = T;
  rep.top = cov.top;
  rep.pass = true;
  for (int t = 0; t <= dl.hi; ++t) {
    int kd = kernel_basis(cov.pi.mats[t]).dim();
    int extra = cov.p->mod.dim(t) - dl.dim(t);
    if (kd > 0 || extra != kd) {
      rep.pass = false;
      if (!rep.witness) rep.witness = {t, kd > 0 ? kd : extra};
    }
  }
  return rep;
}

GrTransferReport gr_regularity_transfer(const TruncatedAlgebra& a, int n_max) {
  GrTransferReport rep;
  rep.base = as_regular_certificate(a, n_max);
  GrAlgebra gr = associated_graded(a);
  rep.graded = as_regular_certificate(gr.alg, n_max);
  rep.agree = rep.base.status == rep.graded.status &&
              (rep.base.status != "pass" || rep.base.d == rep.graded.d);
  return rep;
}

}  // namespace koszulkit
