#include "koszulkit/module.hpp"

#include "koszulkit/errors.hpp"

#include <algorithm>

namespace koszulkit {

int GradedModule::total_dim() const {
  int n = 0;
  for (int d : dims) n += d;
  return n;
}

int GradedModule::lowest_degree() const {
  for (int t = 0; t <= hi; ++t)
    if (dims[t] > 0) return t;
  return -1;
}

void GradedModule::allocate(const TruncatedAlgebra& a, int hi_degree) {
  alg = &a;
  hi = hi_degree;
  dims.assign(hi + 1, 0);
  vertex_of.assign(hi + 1, {});
  labels.assign(hi + 1, {});
  act.assign(a.total_dim(), std::vector<Matrix>(hi + 1));
}

Vec GradedModule::apply(int g, int t, const Vec& x) const {
  int dg = alg->basis[g].degree;
  if (t < 0 || t + dg > hi) return Vec();
  return act[g][t].apply(x);
}

void GradedModule::check_action() const {
  Field f(alg->field);
  // idempotents act as the typed coordinate projections
  for (int v = 0; v < alg->nvert(); ++v) {
    int e = alg->idempotent[v];
    for (int t = 0; t <= hi; ++t) {
      const Matrix& m = act[e][t];
      for (int r = 0; r < dims[t]; ++r)
        for (int c = 0; c < dims[t]; ++c) {
          Rational want = (r == c && vertex_of[t][c] == v) ? 1 : 0;
          if (m.at(r, c) != want)
            throw EngineError("module action: idempotent is not the typed projection");
        }
    }
  }
  // compatibility with the multiplication table
  for (int g1 = 0; g1 < alg->total_dim(); ++g1)
    for (int g2 = 0; g2 < alg->total_dim(); ++g2) {
      int d1 = alg->basis[g1].degree, d2 = alg->basis[g2].degree;
      if (d1 + d2 > alg->D) continue;
      for (int t = 0; t + d1 + d2 <= hi; ++t) {
        Matrix lhs = act[g1][t + d2].multiply(act[g2][t]);
        Matrix rhs(alg->field, dims[t + d1 + d2], dims[t]);
        for (const auto& [k, c] : alg->mult(g1, g2)) {
          const Matrix& mk = act[k][t];
          for (int r = 0; r < mk.rows(); ++r)
            for (int cc = 0; cc < mk.cols(); ++cc)
              rhs.at(r, cc) = f.add(rhs.at(r, cc), f.mul(c, mk.at(r, cc)));
        }
        if (!(lhs == rhs))
          throw EngineError("module action does not respect the multiplication table");
      }
    }
}

bool GradedMap::commutes_with_action() const {
  for (int g = 0; g < src->alg->total_dim(); ++g) {
    int dg = src->alg->basis[g].degree;
    for (int t = 0; t + dg <= src->hi && t + dg <= tgt->hi; ++t) {
      Matrix lhs = tgt->act[g][t].multiply(mats[t]);
      Matrix rhs = mats[t + dg].multiply(src->act[g][t]);
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

int ProjectiveModule::coord_of(int t, int gen, int alg_elem) const {
  for (std::size_t c = 0; c < coord_gen[t].size(); ++c)
    if (coord_gen[t][c].first == gen && coord_gen[t][c].second == alg_elem)
      return static_cast<int>(c);
  return -1;
}

GradedModule simple_module(const TruncatedAlgebra& a, int vertex, int shift) {
  GradedModule m;
  m.allocate(a, a.D);
  if (shift > m.hi) throw EngineError("simple module shift outside the window");
  m.dims[shift] = 1;
  m.vertex_of[shift] = {vertex};
  m.labels[shift] = {"s_" + a.vertex_names[vertex]};
  for (int g = 0; g < a.total_dim(); ++g) {
    for (int t = 0; t + a.basis[g].degree <= m.hi; ++t) {
      m.act[g][t] = Matrix(a.field, m.dims[t + a.basis[g].degree], m.dims[t]);
      if (t == shift && a.basis[g].degree == 0 && g == a.idempotent[vertex])
        m.act[g][t].at(0, 0) = 1;
    }
  }
  m.complete = true;
  return m;
}

ProjectiveModule free_module(const TruncatedAlgebra& a, const std::vector<ProjGen>& gens,
                             int hi_degree) {
  ProjectiveModule p;
  p.gens = gens;
  p.mod.allocate(a, hi_degree);
  p.coord_gen.assign(hi_degree + 1, {});
  for (int t = 0; t <= hi_degree; ++t) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int bd = t - gens[i].shift;
      if (bd < 0 || bd > a.D) continue;
      for (int b : a.by_degree[bd]) {
        if (a.basis[b].src != gens[i].vertex) continue;
        p.coord_gen[t].emplace_back(static_cast<int>(i), b);
        p.mod.vertex_of[t].push_back(a.basis[b].tgt);
        p.mod.labels[t].push_back("g" + std::to_string(i) + "[" + a.basis[b].label + "]");
      }
    }
    p.mod.dims[t] = static_cast<int>(p.coord_gen[t].size());
  }
  Field f(a.field);
  for (int g = 0; g < a.total_dim(); ++g) {
    int dg = a.basis[g].degree;
    for (int t = 0; t + dg <= hi_degree; ++t) {
      Matrix m(a.field, p.mod.dims[t + dg], p.mod.dims[t]);
      for (int c = 0; c < p.mod.dims[t]; ++c) {
        auto [gen, b] = p.coord_gen[t][c];
        for (const auto& [k, coeff] : a.mult(g, b)) {
          int rc = p.coord_of(t + dg, gen, k);
          if (rc < 0) throw EngineError("internal: free module coordinate missing");
          m.at(rc, c) = f.add(m.at(rc, c), coeff);
        }
      }
      p.mod.act[g][t] = std::move(m);
    }
  }
  int max_shift = 0;
  for (const ProjGen& g : gens) max_shift = std::max(max_shift, g.shift);
  p.mod.complete = a.complete && (gens.empty() ||
                                  max_shift + std::max(a.top_nonzero_degree(), 0) <= hi_degree);
  return p;
}

std::vector<std::vector<Subspace>> radical_layers(const GradedModule& m, int kmax) {
  const TruncatedAlgebra& a = *m.alg;
  std::vector<std::vector<Subspace>> layers(kmax + 1, std::vector<Subspace>(m.hi + 1));
  for (int t = 0; t <= m.hi; ++t) layers[0][t] = Subspace::full(a.field, m.dims[t]);
  std::vector<int> radical;
  for (int g = 0; g < a.total_dim(); ++g)
    if (!a.is_idempotent_elem(g)) radical.push_back(g);
  for (int k = 1; k <= kmax; ++k)
    for (int t = 0; t <= m.hi; ++t) {
      std::vector<Vec> gens;
      for (int g : radical) {
        int dg = a.basis[g].degree;
        int s = t - dg;
        if (s < 0 || s > m.hi) continue;
        const Subspace& prev = layers[k - 1][s];
        for (int r = 0; r < prev.dim(); ++r)
          gens.push_back(m.apply(g, s, prev.basis().row(r)));
      }
      layers[k][t] = Subspace::span(a.field, m.dims[t], gens);
      if (!layers[k - 1][t].contains(layers[k][t]))
        throw EngineError("module radical layers are not descending");
    }
  return layers;
}

Cover projective_cover(const GradedModule& m) {
  const TruncatedAlgebra& a = *m.alg;
  if (m.is_zero()) throw EngineError("projective cover of the zero module");
  auto layers = radical_layers(m, 1);

  std::vector<ProjGen> gens;
  std::vector<std::pair<int, int>> reps;  // (degree, coordinate) per generator
  for (int t = 0; t <= m.hi; ++t) {
    std::vector<bool> pivot(m.dims[t], false);
    for (int p : layers[1][t].pivots()) pivot[p] = true;
    for (int c = 0; c < m.dims[t]; ++c)
      if (!pivot[c]) {
        gens.push_back(ProjGen{m.vertex_of[t][c], t});
        reps.emplace_back(t, c);
      }
  }
  if (gens.empty())
    throw EngineError("module has no visible top inside the window");

  Cover cov;
  cov.p = std::make_shared<ProjectiveModule>(free_module(a, gens, m.hi));
  cov.top = gens;
  cov.pi.src = &cov.p->mod;
  cov.pi.tgt = &m;
  cov.pi.mats.resize(m.hi + 1);
  for (int u = 0; u <= m.hi; ++u) {
    Matrix mat(a.field, m.dims[u], cov.p->mod.dims[u]);
    for (int c = 0; c < cov.p->mod.dims[u]; ++c) {
      auto [gi, b] = cov.p->coord_gen[u][c];
      auto [s, rc] = reps[gi];
      Vec unit = zero_vec(m.dims[s]);
      unit[rc] = 1;
      Vec img = m.apply(b, s, unit);
      for (int r = 0; r < m.dims[u]; ++r) mat.at(r, c) = img[r];
    }
    cov.pi.mats[u] = std::move(mat);
  }

  // in-window surjectivity (Nakayama) and minimality certificates
  auto jp = radical_layers(cov.p->mod, 1);
  for (int u = 0; u <= m.hi; ++u) {
    if (rref(cov.pi.mats[u]).rank != m.dims[u])
      throw EngineError("projective cover failed to surject in degree " +
                        std::to_string(u));
    Subspace ker = kernel_basis(cov.pi.mats[u]);
    if (!jp[1][u].contains(ker))
      throw EngineError("projective cover kernel escapes JP in degree " +
                        std::to_string(u));
  }
  return cov;
}

namespace {

SubmoduleResult submodule_from(const GradedModule& m, std::vector<Subspace> sub) {
  const TruncatedAlgebra& a = *m.alg;
  SubmoduleResult out;
  out.mod = std::make_shared<GradedModule>();
  GradedModule& md = *out.mod;
  md.allocate(a, m.hi);
  for (int t = 0; t <= m.hi; ++t) {
    const Subspace& k = sub[t];
    md.dims[t] = k.dim();
    for (int r = 0; r < k.dim(); ++r) {
      md.vertex_of[t].push_back(m.vertex_of[t][k.pivots()[r]]);
      md.labels[t].push_back("sub" + std::to_string(t) + "." + std::to_string(r));
    }
  }
  for (int g = 0; g < a.total_dim(); ++g) {
    int dg = a.basis[g].degree;
    for (int t = 0; t + dg <= m.hi; ++t) {
      Matrix mat(a.field, md.dims[t + dg], md.dims[t]);
      for (int c = 0; c < md.dims[t]; ++c) {
        Vec y = m.apply(g, t, sub[t].basis().row(c));
        auto coords = sub[t + dg].coordinates(y);
        if (!coords)
          throw EngineError("subspace is not stable under the module action");
        for (int r = 0; r < md.dims[t + dg]; ++r) mat.at(r, c) = (*coords)[r];
      }
      md.act[g][t] = std::move(mat);
    }
  }
  md.complete = m.complete;
  out.incl.src = out.mod.get();
  out.incl.tgt = &m;
  out.incl.mats.resize(m.hi + 1);
  for (int t = 0; t <= m.hi; ++t) {
    Matrix mat(a.field, m.dims[t], md.dims[t]);
    for (int c = 0; c < md.dims[t]; ++c)
      for (int r = 0; r < m.dims[t]; ++r) mat.at(r, c) = sub[t].basis().at(c, r);
    out.incl.mats[t] = std::move(mat);
  }
  return out;
}

}  // namespace

SubmoduleResult kernel_module(const GradedMap& f) {
  if (!f.commutes_with_action())
    throw EngineError("kernel_module: map does not commute with the action");
  std::vector<Subspace> ker(f.src->hi + 1);
  for (int t = 0; t <= f.src->hi; ++t) ker[t] = kernel_basis(f.mats[t]);
  return submodule_from(*f.src, std::move(ker));
}

SubmoduleResult submodule(const GradedModule& m, const std::vector<Subspace>& sub) {
  return submodule_from(m, sub);
}

QuotientResult quotient_module(const GradedModule& m, const std::vector<Subspace>& sub) {
  const TruncatedAlgebra& a = *m.alg;
  QuotientResult out;
  out.mod = std::make_shared<GradedModule>();
  GradedModule& md = *out.mod;
  md.allocate(a, m.hi);
  std::vector<std::vector<int>> compl_coords(m.hi + 1);
  for (int t = 0; t <= m.hi; ++t) {
    std::vector<bool> pivot(m.dims[t], false);
    for (int p : sub[t].pivots()) pivot[p] = true;
    for (int c = 0; c < m.dims[t]; ++c)
      if (!pivot[c]) {
        compl_coords[t].push_back(c);
        md.vertex_of[t].push_back(m.vertex_of[t][c]);
        md.labels[t].push_back(m.labels[t][c]);
      }
    md.dims[t] = static_cast<int>(compl_coords[t].size());
  }
  auto compress = [&](int t, const Vec& v) {
    Vec red = sub[t].reduce(v);
    Vec c = zero_vec(md.dims[t]);
    for (int i = 0; i < md.dims[t]; ++i) c[i] = red[compl_coords[t][i]];
    return c;
  };
  for (int g = 0; g < a.total_dim(); ++g) {
    int dg = a.basis[g].degree;
    for (int t = 0; t + dg <= m.hi; ++t) {
      Matrix mat(a.field, md.dims[t + dg], md.dims[t]);
      for (int c = 0; c < md.dims[t]; ++c) {
        Vec unit = zero_vec(m.dims[t]);
        unit[compl_coords[t][c]] = 1;
        Vec img = compress(t + dg, m.apply(g, t, unit));
        for (int r = 0; r < md.dims[t + dg]; ++r) mat.at(r, c) = img[r];
      }
      md.act[g][t] = std::move(mat);
    }
  }
  md.complete = m.complete;
  out.proj.src = &m;
  out.proj.tgt = out.mod.get();
  out.proj.mats.resize(m.hi + 1);
  for (int t = 0; t <= m.hi; ++t) {
    Matrix mat(a.field, md.dims[t], m.dims[t]);
    for (int c = 0; c < m.dims[t]; ++c) {
      Vec unit = zero_vec(m.dims[t]);
      unit[c] = 1;
      Vec img = compress(t, unit);
      for (int r = 0; r < md.dims[t]; ++r) mat.at(r, c) = img[r];
    }
    out.proj.mats[t] = std::move(mat);
  }
  return out;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  if (a.alg != b.alg) throw EngineError("direct sum over different algebras");
  GradedModule m;
  int hi = std::min(a.hi, b.hi);
  m.allocate(*a.alg, hi);
  for (int t = 0; t <= hi; ++t) {
    m.dims[t] = a.dims[t] + b.dims[t];
    for (int c = 0; c < a.dims[t]; ++c) {
      m.vertex_of[t].push_back(a.vertex_of[t][c]);
      m.labels[t].push_back("l." + a.labels[t][c]);
    }
    for (int c = 0; c < b.dims[t]; ++c) {
      m.vertex_of[t].push_back(b.vertex_of[t][c]);
      m.labels[t].push_back("r." + b.labels[t][c]);
    }
  }
  for (int g = 0; g < a.alg->total_dim(); ++g) {
    int dg = a.alg->basis[g].degree;
    for (int t = 0; t + dg <= hi; ++t) {
      Matrix mat(a.alg->field, m.dims[t + dg], m.dims[t]);
      const Matrix& ma = a.act[g][t];
      const Matrix& mb = b.act[g][t];
      for (int r = 0; r < ma.rows(); ++r)
        for (int c = 0; c < ma.cols(); ++c) mat.at(r, c) = ma.at(r, c);
      for (int r = 0; r < mb.rows(); ++r)
        for (int c = 0; c < mb.cols(); ++c)
          mat.at(a.dims[t + dg] + r, a.dims[t] + c) = mb.at(r, c);
      m.act[g][t] = std::move(mat);
    }
  }
  m.complete = a.complete && b.complete;
  return m;
}

GradedModule shift_module(const GradedModule& m, int s) {
  GradedModule out;
  out.allocate(*m.alg, m.hi);
  for (int t = s; t <= m.hi; ++t) {
    out.dims[t] = m.dim(t - s);
    out.vertex_of[t] = m.vertex_of[t - s];
    out.labels[t] = m.labels[t - s];
  }
  for (int g = 0; g < m.alg->total_dim(); ++g) {
    int dg = m.alg->basis[g].degree;
    for (int t = 0; t + dg <= m.hi; ++t) {
      if (t >= s)
        out.act[g][t] = m.act[g][t - s];
      else
        out.act[g][t] = Matrix(m.alg->field, out.dims[t + dg], out.dims[t]);
    }
  }
  int top = -1;
  for (int t = m.hi; t >= 0; --t)
    if (m.dims[t] > 0) {
      top = t;
      break;
    }
  out.complete = m.complete && (top + s <= m.hi);
  return out;
}

std::vector<int> radical_layer_dims(const GradedModule& m, int kmax) {
  auto layers = radical_layers(m, kmax);
  std::vector<int> out(kmax);
  for (int k = 0; k < kmax; ++k) {
    int d = 0;
    for (int t = 0; t <= m.hi; ++t) d += layers[k][t].dim() - layers[k + 1][t].dim();
    out[k] = d;
  }
  return out;
}

GradedModule associated_graded_module(const GradedModule& m, const GrAlgebra& gr,
                                      const TruncatedAlgebra& a) {
  const TruncatedAlgebra& g = gr.alg;
  Field f(a.field);
  int d_gr = g.D;
  auto layers = radical_layers(m, d_gr + 1);

  struct Rep {
    int t;
    Vec v;
  };
  std::vector<std::vector<Rep>> reps(d_gr + 1);
  for (int i = 0; i <= d_gr; ++i)
    for (int t = 0; t <= m.hi; ++t) {
      std::vector<bool> lo_pivot(m.dims[t], false);
      for (int p : layers[i + 1][t].pivots()) lo_pivot[p] = true;
      const Subspace& hi_sp = layers[i][t];
      for (int r = 0; r < hi_sp.dim(); ++r)
        if (!lo_pivot[hi_sp.pivots()[r]])
          reps[i].push_back(Rep{t, hi_sp.basis().row(r)});
    }

  GradedModule out;
  out.allocate(g, d_gr);
  for (int i = 0; i <= d_gr; ++i) {
    out.dims[i] = static_cast<int>(reps[i].size());
    for (const Rep& r : reps[i]) {
      int vx = -1;
      for (std::size_t c = 0; c < r.v.size(); ++c)
        if (r.v[c] != 0) {
          if (vx < 0) vx = m.vertex_of[r.t][c];
          else if (m.vertex_of[r.t][c] != vx)
            throw EngineError("internal: graded-module representative mixes vertices");
        }
      out.vertex_of[i].push_back(vx);
      out.labels[i].push_back("grm" + std::to_string(i));
    }
  }

  for (int gb = 0; gb < g.total_dim(); ++gb) {
    int j = g.basis[gb].degree;
    const auto& [tg, w] = gr.reps[j][g.pos_in_degree[gb]];
    for (int i = 0; i + j <= d_gr; ++i) {
      Matrix mat(a.field, out.dims[i + j], out.dims[i]);
      for (int c = 0; c < out.dims[i]; ++c) {
        const Rep& r = reps[i][c];
        int tt = r.t + tg;
        if (tt > m.hi) {
          if (m.complete) continue;  // zero beyond a certified-complete module
          throw EngineError("associated graded module product escaped the window");
        }
        // act by the representative of the graded basis element
        Vec y = zero_vec(m.dims[tt]);
        for (std::size_t cc = 0; cc < w.size(); ++cc) {
          if (w[cc] == 0) continue;
          Vec part = m.apply(a.by_degree[tg][cc], r.t, r.v);
          add_scaled(f, y, w[cc], part);
        }
        if (is_zero_vec(y)) continue;
        // coordinates against level-(i+j) representatives mod the next layer
        std::vector<int> ids;
        std::vector<Vec> cols;
        for (std::size_t rr = 0; rr < reps[i + j].size(); ++rr)
          if (reps[i + j][rr].t == tt) {
            ids.push_back(static_cast<int>(rr));
            cols.push_back(reps[i + j][rr].v);
          }
        const Subspace& lower = layers[i + j + 1][tt];
        for (int rr = 0; rr < lower.dim(); ++rr) cols.push_back(lower.basis().row(rr));
        Matrix sysm(a.field, m.dims[tt], static_cast<int>(cols.size()));
        for (std::size_t cc = 0; cc < cols.size(); ++cc)
          for (int r2 = 0; r2 < m.dims[tt]; ++r2)
            sysm.at(r2, static_cast<int>(cc)) = cols[cc][r2];
        auto sol = solve(sysm, y);
        if (!sol)
          throw EngineError("internal: graded module product not spanned by layers");
        for (std::size_t rr = 0; rr < ids.size(); ++rr)
          mat.at(ids[rr], c) = f.canon((*sol)[rr]);
      }
      out.act[gb][i] = std::move(mat);
    }
  }

  out.complete = false;
  for (int i = 0; i <= d_gr + 1; ++i) {
    bool zero = true;
    for (int t = 0; t <= m.hi; ++t)
      if (i <= d_gr + 1 && layers[i][t].dim() > 0) zero = false;
    if (zero) {
      out.complete = true;
      break;
    }
  }
  return out;
}

}  // namespace koszulkit
