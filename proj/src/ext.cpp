#include "koszulkit/ext.hpp"

#include "koszulkit/errors.hpp"

#include <algorithm>

namespace koszulkit {

ExtContext make_ext_context(const TruncatedAlgebra& a, int n_max) {
  ExtContext ctx;
  ctx.a = &a;
  ctx.n_max = n_max;
  ctx.all_terminated = true;
  for (int v = 0; v < a.nvert(); ++v) {
    ctx.simples.push_back(std::make_shared<GradedModule>(simple_module(a, v, 0)));
    ctx.res.push_back(minimal_resolution(*ctx.simples.back(), n_max));
    if (!ctx.res.back().terminated) ctx.all_terminated = false;
  }
  return ctx;
}

Lift build_lift(const Resolution& rs, int m, int gen, const Resolution& rt, int upto_k) {
  const TruncatedAlgebra& a = *rs.m0->alg;
  const FieldSpec field = a.field;
  const int hi = rs.m0->hi;
  const ProjGen pg = rs.p[m]->gens[gen];
  const int s = pg.shift;
  if (rt.p[0]->gens.size() != 1 || rt.p[0]->gens[0].vertex != pg.vertex ||
      rt.p[0]->gens[0].shift != 0)
    throw EngineError("lift target must resolve the simple at the generator's vertex");

  auto tdim = [&](int k, int t) {
    return k < rt.length ? rt.p[k]->mod.dim(t) : 0;
  };

  Lift lf;
  lf.m = m;
  lf.shift = s;
  lf.alpha.resize(upto_k + 1);

  // degree zero: send the chosen generator's coordinates straight across
  lf.alpha[0].resize(hi + 1);
  for (int t = 0; t <= hi; ++t) {
    int cols = m < rs.length ? rs.p[m]->mod.dim(t) : 0;
    Matrix mat(field, tdim(0, t - s), cols);
    if (t - s >= 0)
      for (int c = 0; c < cols; ++c) {
        auto [i, b] = rs.p[m]->coord_gen[t][c];
        if (i != gen) continue;
        int rc = rt.p[0]->coord_of(t - s, 0, b);
        if (rc < 0) throw EngineError("internal: lift base coordinate missing");
        mat.at(rc, c) = 1;
      }
    lf.alpha[0][t] = std::move(mat);
  }

  for (int k = 1; k <= upto_k; ++k) {
    lf.alpha[k].resize(hi + 1);
    int src_cover = m + k;
    int ngen = src_cover < rs.length ? static_cast<int>(rs.p[src_cover]->gens.size()) : 0;

    // solve the chain condition on each generator, canonical solution
    std::vector<Vec> gen_val(ngen);
    for (int i = 0; i < ngen; ++i) {
      const ProjGen gi = rs.p[src_cover]->gens[i];
      int td = gi.shift - s;
      int gc = rs.p[src_cover]->coord_of(gi.shift, i, a.idempotent[gi.vertex]);
      Vec rhs = lf.alpha[k - 1][gi.shift].apply(rs.d[src_cover].mats[gi.shift].col(gc));
      if (td < 0 || k >= rt.length) {
        if (!is_zero_vec(rhs))
          throw EngineError("lift obstruction: cycle with no preimage");
        gen_val[i] = zero_vec(td >= 0 ? tdim(k, td) : 0);
        continue;
      }
      const Matrix& dk = rt.d[k].mats[td];
      std::vector<int> cols;
      for (int c = 0; c < dk.cols(); ++c)
        if (rt.p[k]->mod.vertex_of[td][c] == gi.vertex) cols.push_back(c);
      Matrix sub(field, dk.rows(), static_cast<int>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (int r = 0; r < dk.rows(); ++r)
          sub.at(r, static_cast<int>(c)) = dk.at(r, cols[c]);
      auto x = solve(sub, rhs);
      if (!x) throw EngineError("lift obstruction: resolution is not exact in-window");
      Vec full = zero_vec(dk.cols());
      for (std::size_t c = 0; c < cols.size(); ++c) full[cols[c]] = (*x)[c];
      gen_val[i] = std::move(full);
    }

    // extend over the module action
    for (int t = 0; t <= hi; ++t) {
      int colsn = src_cover < rs.length ? rs.p[src_cover]->mod.dim(t) : 0;
      Matrix mat(field, t - s >= 0 ? tdim(k, t - s) : 0, colsn);
      if (t - s >= 0 && k < rt.length)
        for (int c = 0; c < colsn; ++c) {
          auto [i, b] = rs.p[src_cover]->coord_gen[t][c];
          int td = rs.p[src_cover]->gens[i].shift - s;
          if (td < 0) continue;
          Vec img = rt.p[k]->mod.apply(b, td, gen_val[i]);
          for (std::size_t r = 0; r < img.size(); ++r)
            mat.at(static_cast<int>(r), c) = img[r];
        }
      lf.alpha[k][t] = std::move(mat);
    }
  }
  return lf;
}

const Lift& ExtContext::lift_of(int v, int n, int gen, int upto_k) {
  auto key = std::make_tuple(v, n, gen);
  auto it = lift_cache.find(key);
  int need = std::max(upto_k, n_max - n);
  if (it == lift_cache.end() ||
      static_cast<int>(it->second.alpha.size()) <= upto_k) {
    int w = res[v].p[n]->gens[gen].vertex;
    lift_cache[key] = build_lift(res[v], n, gen, res[w], need);
    it = lift_cache.find(key);
  }
  return it->second;
}

namespace {

/// Class-level coefficient of the dual generator h of rt.p[nc] on generator G
/// of rs.p[N], read off a lift of the source class of shift s.
Rational product_coeff(const Resolution& rs, int N, int G, const Resolution& rt, int nc,
                       int h, const Lift& lf, const TruncatedAlgebra& a) {
  const ProjGen pG = rs.p[N]->gens[G];
  const ProjGen ph = rt.p[nc]->gens[h];
  if (pG.shift - lf.shift != ph.shift) return Rational(0);
  int col = rs.p[N]->coord_of(pG.shift, G, a.idempotent[pG.vertex]);
  int row = rt.p[nc]->coord_of(ph.shift, h, a.idempotent[ph.vertex]);
  if (col < 0 || row < 0) return Rational(0);
  const Matrix& mat = lf.alpha[nc][pG.shift];
  if (row >= mat.rows() || col >= mat.cols()) return Rational(0);
  return mat.at(row, col);
}

}  // namespace

int ext_dim(const ExtContext& ctx, int n, int v, int w) {
  const Resolution& r = ctx.res[v];
  if (n >= r.length) {
    if (!r.terminated)
      throw DependencyError("extension dimension requested beyond the computed window");
    return 0;
  }
  int d = 0;
  for (const ProjGen& g : r.p[n]->gens)
    if (g.vertex == w) ++d;
  return d;
}

ExtAlgebra ext_algebra(ExtContext& ctx) {
  const TruncatedAlgebra& a = *ctx.a;
  ExtAlgebra ea;
  ea.n_max = ctx.n_max;

  // degrees past an unterminated resolution's last cover are unknown; clamp
  ea.certified = ctx.n_max;
  for (const Resolution& r : ctx.res)
    if (!r.terminated) ea.certified = std::min(ea.certified, r.length - 1);

  std::map<std::tuple<int, int, int>, int> index;  // (n, src, gen) -> global
  for (int n = 0; n <= ea.certified; ++n)
    for (int v = 0; v < a.nvert(); ++v) {
      const Resolution& r = ctx.res[v];
      if (n >= r.length) continue;
      for (std::size_t g = 0; g < r.p[n]->gens.size(); ++g) {
        const ProjGen& pg = r.p[n]->gens[g];
        ExtClass c;
        c.src = v;
        c.n = n;
        c.gen = static_cast<int>(g);
        c.tgt = pg.vertex;
        c.internal = pg.shift;
        c.label = "y" + std::to_string(n) + ":" + a.vertex_names[v] + ">" +
                  a.vertex_names[pg.vertex] + ":" + std::to_string(g);
        index[{n, v, c.gen}] = static_cast<int>(ea.basis.size());
        ea.basis.push_back(c);
        ++ea.bigraded_dims[{n, pg.shift}];
      }
    }

  StructureConstants sc;
  sc.field = a.field;
  sc.D = ea.certified;
  sc.vertex_names = a.vertex_names;
  sc.jpower_max = ea.certified + 1;
  sc.complete = ctx.all_terminated;
  sc.provenance = "ext_algebra";
  sc.idempotent.assign(a.nvert(), -1);
  for (std::size_t i = 0; i < ea.basis.size(); ++i) {
    const ExtClass& c = ea.basis[i];
    sc.basis.push_back(BasisElem{c.n, c.src, c.tgt, c.label});
    if (c.n == 0) {
      if (c.src != c.tgt || sc.idempotent[c.src] != -1)
        throw EngineError("degree-0 extension classes are not one per vertex");
      sc.idempotent[c.src] = static_cast<int>(i);
    }
  }
  for (int v = 0; v < a.nvert(); ++v)
    if (sc.idempotent[v] < 0)
      throw EngineError("missing identity extension class at a vertex");

  Field f(a.field);
  for (std::size_t i = 0; i < ea.basis.size(); ++i)
    for (std::size_t j = 0; j < ea.basis.size(); ++j) {
      const ExtClass& ci = ea.basis[i];
      const ExtClass& cj = ea.basis[j];
      if (ci.n + cj.n > ea.certified || cj.tgt != ci.src) continue;
      int N = ci.n + cj.n;
      const Resolution& rs = ctx.res[cj.src];
      if (N >= rs.length) continue;  // terminated: product lands in zero
      const Lift& lf = ctx.lift_of(cj.src, cj.n, cj.gen, ci.n);
      const Resolution& rt = ctx.res[cj.tgt];
      SparseVec prod;
      for (std::size_t G = 0; G < rs.p[N]->gens.size(); ++G) {
        Rational c = product_coeff(rs, N, static_cast<int>(G), rt, ci.n, ci.gen, lf, a);
        if (!f.is_zero(c))
          prod.emplace_back(index.at({N, cj.src, static_cast<int>(G)}), f.canon(c));
      }
      if (!prod.empty()) sc.products[{static_cast<int>(i), static_cast<int>(j)}] = prod;
    }

  ea.alg = from_structure_constants(sc);
  return ea;
}

GenerationCheck generated_in_degree_one(const TruncatedAlgebra& e) {
  GenerationCheck out;
  Subspace prev = Subspace::full(e.field, e.dim(1));
  out.span_dims.push_back(e.dim(0));
  out.span_dims.push_back(e.dim(1));
  for (int n = 2; n <= e.D; ++n) {
    std::vector<Vec> prods;
    for (int x = 0; x < e.dim(1); ++x) {
      Vec ux = zero_vec(e.dim(1));
      ux[x] = 1;
      for (int r = 0; r < prev.dim(); ++r)
        prods.push_back(e.mult_vec(1, ux, n - 1, prev.basis().row(r)));
    }
    Subspace span = Subspace::span(e.field, e.dim(n), prods);
    out.span_dims.push_back(span.dim());
    if (span.dim() < e.dim(n) && out.pass) {
      out.pass = false;
      for (int g = 0; g < e.dim(n); ++g) {
        Vec u = zero_vec(e.dim(n));
        u[g] = 1;
        if (!span.coordinates(u)) {
          out.witness = {n, e.basis[e.by_degree[n][g]].label};
          break;
        }
      }
    }
    prev = std::move(span);
  }
  return out;
}

GenerationCheck generated_in_degree_zero(const GradedModule& em) {
  GenerationCheck out;
  auto layers = radical_layers(em, 1);
  for (int n = 0; n <= em.hi; ++n) {
    int top = em.dim(n) - layers[1][n].dim();
    out.span_dims.push_back(top);
    if (n >= 1 && top > 0 && out.pass) {
      out.pass = false;
      out.witness = {n, em.labels[n].empty() ? "" : em.labels[n].front()};
    }
  }
  return out;
}

ExtModule ext_of_module(ExtContext& ctx, const ExtAlgebra& ea, const Resolution& rm) {
  const TruncatedAlgebra& a = *ctx.a;
  Field f(a.field);
  ExtModule em;
  em.mod = std::make_shared<GradedModule>();
  GradedModule& md = *em.mod;
  md.allocate(ea.alg, ea.alg.D);

  std::map<std::pair<int, int>, int> pos;  // (n, gen) -> position within degree n
  std::vector<std::vector<int>> gen_at(ea.alg.D + 1);  // degree -> position -> gen
  for (int n = 0; n <= ea.alg.D; ++n) {
    if (n >= rm.length) {
      if (!rm.terminated)
        throw DependencyError("extension module requested beyond the computed window");
      continue;
    }
    for (std::size_t g = 0; g < rm.p[n]->gens.size(); ++g) {
      const ProjGen& pg = rm.p[n]->gens[g];
      ExtClass c;
      c.src = -1;
      c.n = n;
      c.gen = static_cast<int>(g);
      c.tgt = pg.vertex;
      c.internal = pg.shift;
      c.label = "ym" + std::to_string(n) + ":" + std::to_string(g);
      pos[{n, c.gen}] = md.dims[n];
      gen_at[n].push_back(c.gen);
      em.basis.push_back(c);
      ++md.dims[n];
      md.vertex_of[n].push_back(pg.vertex);
      md.labels[n].push_back(c.label);
    }
  }

  std::map<std::pair<int, int>, Lift> lifts;  // (n, gen) -> lift
  auto lift_of = [&](int n, int gen) -> const Lift& {
    auto key = std::make_pair(n, gen);
    auto it = lifts.find(key);
    if (it == lifts.end()) {
      int w = rm.p[n]->gens[gen].vertex;
      it = lifts.emplace(key, build_lift(rm, n, gen, ctx.res[w], ea.alg.D - n)).first;
    }
    return it->second;
  };

  for (int b = 0; b < ea.alg.total_dim(); ++b) {
    const ExtClass& cb = ea.basis[b];
    for (int n = 0; n + cb.n <= ea.alg.D; ++n) {
      Matrix mat(a.field, md.dims[n + cb.n], md.dims[n]);
      int N = n + cb.n;
      if (n < rm.length && N < rm.length) {
        for (int c = 0; c < md.dims[n]; ++c) {
          int gen = gen_at[n][c];
          if (rm.p[n]->gens[gen].vertex != cb.src) continue;
          const Lift& lf = lift_of(n, gen);
          const Resolution& rt = ctx.res[cb.src];
          for (std::size_t G = 0; G < rm.p[N]->gens.size(); ++G) {
            Rational coeff = product_coeff(rm, N, static_cast<int>(G), rt, cb.n, cb.gen,
                                           lf, a);
            if (!f.is_zero(coeff))
              mat.at(pos.at({N, static_cast<int>(G)}), c) = f.canon(coeff);
          }
        }
      }
      md.act[b][n] = std::move(mat);
    }
  }
  md.complete = rm.terminated;
  return em;
}

DualModuleReport dual_module_check(ExtContext& ctx, const ExtAlgebra& ea,
                                   const Resolution& rm, const GradedModule& m) {
  ExtModule em = ext_of_module(ctx, ea, rm);
  Resolution r = minimal_resolution(*em.mod, ea.alg.D);
  DualModuleReport rep;
  int avail = r.terminated ? ea.alg.D : r.length - 1;
  rep.window = avail;
  auto layers = radical_layer_dims(m, rep.window + 1);
  rep.pass = true;
  for (int h = 0; h <= rep.window; ++h) {
    int d = h < r.length ? static_cast<int>(r.p[h]->gens.size()) : 0;
    rep.dims_ext.push_back(d);
    rep.dims_layers.push_back(layers[h]);
    if (d != layers[h]) rep.pass = false;
  }
  return rep;
}

DualityReport koszul_dual_double(const TruncatedAlgebra& a, int n_max) {
  DualityReport rep;
  ExtContext ctx = make_ext_context(a, n_max);
  ExtAlgebra ea = ext_algebra(ctx);
  if (!ctx.all_terminated)
    rep.warnings.push_back("extension algebra truncated at the homological window");
  ExtContext ectx = make_ext_context(ea.alg, ea.alg.D);
  ExtAlgebra eea = ext_algebra(ectx);
  if (eea.certified < ea.alg.D)
    rep.warnings.push_back("double dual truncated at the certified homological window");
  GrAlgebra gr = associated_graded(a);

  for (int v = 0; v < ea.alg.nvert(); ++v)
    if (!linearity_check(ectx.res[v], 0).linear) {
      rep.warnings.push_back("dual algebra has a non-linear resolution over itself");
      break;
    }

  rep.window = std::min(eea.alg.D, gr.alg.D);
  rep.dims_match = true;
  for (int h = 0; h <= rep.window; ++h) {
    rep.dims_double.push_back(eea.alg.dim(h));
    rep.dims_gr.push_back(gr.alg.dim(h));
    if (eea.alg.dim(h) != gr.alg.dim(h)) rep.dims_match = false;
  }

  rep.blocks_match = true;
  for (int h = 0; h <= rep.window; ++h)
    for (int u = 0; u < a.nvert(); ++u)
      for (int v = 0; v < a.nvert(); ++v) {
        int dd = 0, dg = 0;
        for (int g : eea.alg.by_degree[h])
          if (eea.alg.basis[g].tgt == u && eea.alg.basis[g].src == v) ++dd;
        for (int g : gr.alg.by_degree[h])
          if (gr.alg.basis[g].tgt == u && gr.alg.basis[g].src == v) ++dg;
        if (dd || dg) rep.blocks[{h, u, v}] = {dd, dg};
        if (dd != dg) rep.blocks_match = false;
      }

  rep.bigraded_double = eea.bigraded_dims;
  for (const auto& [key, d] : gr.bidegree_dims)
    if (d) rep.bigraded_gr[key] = d;

  rep.gen_double = generated_in_degree_one(eea.alg);
  rep.gen_gr = generated_in_degree_one(gr.alg);
  auto prod_span = [](const TruncatedAlgebra& x, int h) {
    std::vector<Vec> prods;
    for (int i = 0; i < x.dim(1); ++i) {
      Vec u = zero_vec(x.dim(1));
      u[i] = 1;
      for (int j = 0; j < x.dim(h - 1); ++j) {
        Vec w = zero_vec(x.dim(h - 1));
        w[j] = 1;
        prods.push_back(x.mult_vec(1, u, h - 1, w));
      }
    }
    return Subspace::span(x.field, x.dim(h), prods).dim();
  };
  rep.structure_match = rep.gen_double.pass == rep.gen_gr.pass;
  for (int h = 2; h <= rep.window; ++h) {
    int pd = prod_span(eea.alg, h);
    int pg = prod_span(gr.alg, h);
    rep.product_span_double.push_back(pd);
    rep.product_span_gr.push_back(pg);
    if (pd != pg) rep.structure_match = false;
  }
  rep.pass = rep.dims_match && rep.blocks_match && rep.structure_match;
  return rep;
}

LayerExactnessReport radical_layer_exactness(const GradedModule& m, int n_upto) {
  auto layers = radical_layers(m, 1);
  SubmoduleResult jm = submodule(m, layers[1]);
  QuotientResult top = quotient_module(m, layers[1]);

  Resolution r_m = minimal_resolution(m, n_upto);
  Resolution r_top = minimal_resolution(*top.mod, n_upto);
  std::optional<Resolution> r_jm;
  if (!jm.mod->is_zero()) r_jm = minimal_resolution(*jm.mod, n_upto);

  auto avail = [&](const Resolution& r) {
    return r.terminated ? n_upto : r.length - 1;
  };
  int n_eff = std::min(avail(r_m), avail(r_top));
  if (r_jm) n_eff = std::min(n_eff, avail(*r_jm) + 1);

  auto dim_at = [&](const Resolution& r, int n, int t) {
    if (n < 0 || n >= r.length) return 0;
    int d = 0;
    for (const ProjGen& g : r.p[n]->gens)
      if (g.shift == t) ++d;
    return d;
  };

  LayerExactnessReport rep;
  rep.n_upto = n_eff;
  for (int n = 1; n <= n_eff; ++n)
    for (int t = 0; t <= m.hi; ++t) {
      int lj = r_jm ? dim_at(*r_jm, n - 1, t) : 0;
      int lm = dim_at(r_m, n, t);
      int rt = dim_at(r_top, n, t);
      if (lj == 0 && lm == 0 && rt == 0) continue;
      bool eq = lj + lm == rt;
      rep.rows.push_back({n, t, lj, lm, rt, eq});
      if (!eq) rep.pass = false;
    }
  return rep;
}

}  // namespace koszulkit
