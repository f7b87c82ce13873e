#include "koszulkit/algebra.hpp"

#include "koszulkit/errors.hpp"

#include <algorithm>
#include <map>

namespace koszulkit {

int TruncatedAlgebra::top_nonzero_degree() const {
  for (int t = D; t >= 0; --t)
    if (dim(t) > 0) return t;
  return -1;
}

bool TruncatedAlgebra::is_idempotent_elem(int g) const {
  for (int e : idempotent)
    if (e == g) return true;
  return false;
}

Vec TruncatedAlgebra::mult_vec(int t1, const Vec& x, int t2, const Vec& y) const {
  if (t1 + t2 > D) throw EngineError("mult_vec outside degree window");
  Field f(field);
  Vec out(dim(t1 + t2), Rational(0));
  for (int i = 0; i < dim(t1); ++i) {
    if (x[i] == 0) continue;
    int g1 = by_degree[t1][i];
    for (int j = 0; j < dim(t2); ++j) {
      if (y[j] == 0) continue;
      int g2 = by_degree[t2][j];
      Rational c = f.mul(x[i], y[j]);
      for (const auto& [k, ck] : mult_table[g1][g2])
        out[pos_in_degree[k]] = f.add(out[pos_in_degree[k]], f.mul(c, ck));
    }
  }
  return out;
}

std::vector<int> TruncatedAlgebra::associativity_witness() const {
  Field f(field);
  int n = total_dim();
  auto sparse_to_dense = [&](const SparseVec& v, int t) {
    Vec out(dim(t), Rational(0));
    for (const auto& [k, c] : v) out[pos_in_degree[k]] = c;
    return out;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int dij = basis[i].degree + basis[j].degree;
      if (dij > D) continue;
      for (int k = 0; k < n; ++k) {
        int dt = dij + basis[k].degree;
        if (dt > D) continue;
        Vec lhs(dim(dt), Rational(0));
        for (const auto& [m, c] : mult_table[i][j])
          for (const auto& [r, cr] : mult_table[m][k])
            lhs[pos_in_degree[r]] = f.add(lhs[pos_in_degree[r]], f.mul(c, cr));
        Vec rhs(dim(dt), Rational(0));
        for (const auto& [m, c] : mult_table[j][k])
          for (const auto& [r, cr] : mult_table[i][m])
            rhs[pos_in_degree[r]] = f.add(rhs[pos_in_degree[r]], f.mul(c, cr));
        (void)sparse_to_dense;
        if (lhs != rhs) return {i, j, k};
      }
    }
  return {};
}

void TruncatedAlgebra::compute_radical_chain() {
  rad.assign(jpower_max + 1, std::vector<Subspace>());
  for (int k = 0; k <= jpower_max; ++k) rad[k].resize(D + 1);
  for (int t = 0; t <= D; ++t) rad[0][t] = Subspace::full(field, dim(t));

  // J itself: everything in positive degree plus the degree-0 radical
  for (int t = 1; t <= D; ++t) rad[1][t] = Subspace::full(field, dim(t));
  {
    std::vector<Vec> gens;
    for (int p = 0; p < dim(0); ++p) {
      if (is_idempotent_elem(by_degree[0][p])) continue;
      Vec v = zero_vec(dim(0));
      v[p] = 1;
      gens.push_back(std::move(v));
    }
    rad[1][0] = Subspace::span(field, dim(0), gens);
  }

  for (int k = 2; k <= jpower_max; ++k)
    for (int t = 0; t <= D; ++t) {
      std::vector<Vec> gens;
      for (int t1 = 0; t1 <= t; ++t1) {
        int t2 = t - t1;
        const Subspace& a = rad[k - 1][t1];
        const Subspace& b = rad[1][t2];
        for (int i = 0; i < a.dim(); ++i)
          for (int j = 0; j < b.dim(); ++j)
            gens.push_back(mult_vec(t1, a.basis().row(i), t2, b.basis().row(j)));
      }
      rad[k][t] = Subspace::span(field, dim(t), gens);
      if (!rad[k - 1][t].contains(rad[k][t]))
        throw EngineError("radical chain is not descending");
    }
}

namespace {

struct Word {
  std::vector<int> arrows;  // diagrammatic order
  int start;                // start vertex (meaningful when arrows empty)
};

int word_src(const Word& w, const Quiver& q) {
  return w.arrows.empty() ? w.start : q.arrows[w.arrows.front()].src;
}
int word_tgt(const Word& w, const Quiver& q) {
  return w.arrows.empty() ? w.start : q.arrows[w.arrows.back()].tgt;
}

std::vector<int> word_key(const Word& w) {
  if (w.arrows.empty()) return {-(w.start + 1)};
  return w.arrows;
}

int max_zero_run(const std::vector<int>& arrows, const Quiver& q) {
  int best = 0, run = 0;
  for (int a : arrows) {
    if (q.arrows[a].weight == 0) {
      ++run;
      best = std::max(best, run);
    } else {
      run = 0;
    }
  }
  return best;
}

bool word_less(const Word& a, const Word& b, const Quiver& q) {
  if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
  if (a.arrows.empty()) return a.start < b.start;
  for (std::size_t i = 0; i < a.arrows.size(); ++i) {
    const std::string& na = q.arrows[a.arrows[i]].name;
    const std::string& nb = q.arrows[b.arrows[i]].name;
    if (na != nb) return na < nb;
  }
  return false;
}

std::string word_label(const Word& w, const Quiver& q) {
  PathWord p;
  p.arrows = w.arrows;
  p.start_vertex = w.start;
  return p.str(q);
}

// All words of weight <= D whose zero-weight runs have length < run_cap,
// bucketed by weight and canonically ordered.
std::vector<std::vector<Word>> enumerate_words(const Quiver& q, int D, int run_cap,
                                               std::size_t count_cap) {
  std::vector<std::vector<Word>> buckets(D + 1);
  std::size_t count = 0;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    buckets[0].push_back(Word{{}, static_cast<int>(v)});
    ++count;
  }
  // iterative DFS over (word, weight, trailing zero run)
  struct State {
    Word w;
    int weight, zrun;
  };
  std::vector<State> stack;
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    stack.push_back({Word{{}, static_cast<int>(v)}, 0, 0});
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    int at = word_tgt(s.w, q);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      if (q.arrows[a].src != at) continue;
      int wt = q.arrows[a].weight;
      int nw = s.weight + wt;
      if (nw > D) continue;
      int nz = wt == 0 ? s.zrun + 1 : 0;
      if (nz >= run_cap) continue;
      State ns = s;
      ns.w.arrows.push_back(static_cast<int>(a));
      ns.weight = nw;
      ns.zrun = nz;
      buckets[nw].push_back(ns.w);
      if (++count > count_cap)
        throw EngineError("path enumeration exceeded the configured cap; "
                          "check relations and the nilpotency bound");
      stack.push_back(ns);
    }
  }
  for (auto& b : buckets)
    std::sort(b.begin(), b.end(),
              [&](const Word& x, const Word& y) { return word_less(x, y, q); });
  return buckets;
}

struct DegreeData {
  std::vector<Word> words;
  std::map<std::vector<int>, int> index;
  Subspace ideal;             // in word coordinates
  std::vector<int> basis_words;  // word indices surviving the quotient
  std::vector<Vec> coords;    // per word: coordinates over basis_words
};

// Spans the degree-t slice of the two-sided ideal and reduces every word.
DegreeData quotient_degree(const Quiver& q, const std::vector<Relation>& rels,
                           const std::vector<std::vector<Word>>& buckets, int t,
                           int run_cap, FieldSpec field) {
  Field f(field);
  DegreeData dd;
  dd.words = buckets[t];
  for (std::size_t i = 0; i < dd.words.size(); ++i)
    dd.index[word_key(dd.words[i])] = static_cast<int>(i);
  int nw = static_cast<int>(dd.words.size());

  // reduction tables are dense in the word count, so refuse degrees whose
  // slices would not fit in a sane amount of memory
  constexpr std::size_t kCellBudget = 25'000'000;
  if (static_cast<std::size_t>(nw) * static_cast<std::size_t>(nw) > kCellBudget)
    throw EngineError("degree-" + std::to_string(t) +
                      " word count exceeds the configured budget; "
                      "check relations and the nilpotency bound");

  std::size_t cells = 0;
  std::vector<Vec> rows;
  for (const Relation& r : rels) {
    int wr = r.terms.front().path.weight(q);
    int rsrc = r.terms.front().path.source(q);
    int rtgt = r.terms.front().path.target(q);
    if (wr > t) continue;
    for (int wp = 0; wp + wr <= t; ++wp) {
      int wq = t - wr - wp;
      for (const Word& pre : buckets[wp]) {
        if (word_tgt(pre, q) != rsrc) continue;
        for (const Word& post : buckets[wq]) {
          if (word_src(post, q) != rtgt) continue;
          Vec row = zero_vec(nw);
          bool nonzero = false;
          for (const RelTerm& term : r.terms) {
            std::vector<int> word = pre.arrows;
            word.insert(word.end(), term.path.arrows.begin(), term.path.arrows.end());
            word.insert(word.end(), post.arrows.begin(), post.arrows.end());
            if (max_zero_run(word, q) >= run_cap) continue;  // certified zero
            Word w{word, word_src(pre, q)};
            auto it = dd.index.find(word_key(w));
            if (it == dd.index.end())
              throw EngineError("internal: padded relation word missing from enumeration");
            row[it->second] = f.add(row[it->second], term.coeff);
            nonzero = true;
          }
          (void)nonzero;
          if (is_zero_vec(row)) continue;
          cells += static_cast<std::size_t>(nw);
          if (cells > kCellBudget)
            throw EngineError("relation padding exceeded the configured budget; "
                              "check relations and the nilpotency bound");
          rows.push_back(std::move(row));
        }
      }
    }
  }
  dd.ideal = Subspace::span(field, nw, rows);

  std::vector<bool> is_pivot(nw, false);
  for (int p : dd.ideal.pivots()) is_pivot[p] = true;
  for (int i = 0; i < nw; ++i)
    if (!is_pivot[i]) dd.basis_words.push_back(i);

  dd.coords.resize(nw);
  std::vector<int> basis_pos(nw, -1);
  for (std::size_t i = 0; i < dd.basis_words.size(); ++i)
    basis_pos[dd.basis_words[i]] = static_cast<int>(i);
  for (int i = 0; i < nw; ++i) {
    Vec unit = zero_vec(nw);
    unit[i] = 1;
    Vec red = dd.ideal.reduce(unit);
    Vec c = zero_vec(static_cast<int>(dd.basis_words.size()));
    for (int j = 0; j < nw; ++j)
      if (red[j] != 0) {
        if (basis_pos[j] < 0) throw EngineError("internal: reduction left a pivot word");
        c[basis_pos[j]] = red[j];
      }
    dd.coords[i] = std::move(c);
  }
  return dd;
}

}  // namespace

BuiltAlgebra build_algebra(const Presentation& p) {
  validate_homogeneity(p);
  const Quiver& q = p.quiver;
  const int D = p.limits.weight_max;
  const int N = p.limits.nilpotency_bound;
  constexpr std::size_t kWordCap = 500000;
  constexpr int kDim0Cap = 4096;

  auto buckets = enumerate_words(q, D, N, kWordCap);
  std::vector<DegreeData> deg(D + 1);
  for (int t = 0; t <= D; ++t) deg[t] = quotient_degree(q, p.relations, buckets, t, N, p.field);

  if (static_cast<int>(deg[0].basis_words.size()) > kDim0Cap)
    throw EngineError("degree-0 dimension exceeds the configured cap");

  BuildInfo info;
  info.dim_a0 = static_cast<int>(deg[0].basis_words.size());

  // stabilization: the degree-0 part must not change when the declared
  // nilpotency bound is raised by one
  {
    auto buckets1 = enumerate_words(q, 0, N + 1, kWordCap);
    DegreeData d0 = quotient_degree(q, p.relations, buckets1, 0, N + 1, p.field);
    info.dim_a0_next = static_cast<int>(d0.basis_words.size());
    info.stabilized = info.dim_a0 == info.dim_a0_next;
    if (!info.stabilized)
      throw EngineError(
          "degree-0 part did not stabilize between nilpotency bounds " +
          std::to_string(N) + " and " + std::to_string(N + 1) +
          " (dims " + std::to_string(info.dim_a0) + " vs " +
          std::to_string(info.dim_a0_next) + ")");
  }

  TruncatedAlgebra a;
  a.field = p.field;
  a.D = D;
  a.vertex_names = q.vertices;
  a.jpower_max = p.limits.jpower_max;
  a.provenance = "presentation";

  a.by_degree.resize(D + 1);
  for (int t = 0; t <= D; ++t)
    for (int wi : deg[t].basis_words) {
      const Word& w = deg[t].words[wi];
      int g = a.total_dim();
      a.basis.push_back(BasisElem{t, word_src(w, q), word_tgt(w, q), word_label(w, q)});
      a.by_degree[t].push_back(g);
      a.pos_in_degree.push_back(static_cast<int>(a.by_degree[t].size()) - 1);
    }

  a.idempotent.assign(q.vertices.size(), -1);
  for (std::size_t i = 0; i < deg[0].basis_words.size(); ++i) {
    const Word& w = deg[0].words[deg[0].basis_words[i]];
    if (w.arrows.empty()) a.idempotent[w.start] = a.by_degree[0][i];
  }
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (a.idempotent[v] < 0)
      throw EngineError("internal: trivial path fell into the ideal at vertex " +
                        q.vertices[v]);

  // multiplication: concatenate representative words and reduce
  a.mult_table.assign(a.total_dim(), std::vector<SparseVec>(a.total_dim()));
  for (int i = 0; i < a.total_dim(); ++i) {
    int t1 = a.basis[i].degree;
    const Word& wi = deg[t1].words[deg[t1].basis_words[a.pos_in_degree[i]]];
    for (int j = 0; j < a.total_dim(); ++j) {
      int t2 = a.basis[j].degree;
      int t = t1 + t2;
      if (t > D) continue;
      if (a.basis[j].tgt != a.basis[i].src) continue;  // not composable -> zero
      const Word& wj = deg[t2].words[deg[t2].basis_words[a.pos_in_degree[j]]];
      // basis_i * basis_j acts as "w_j then w_i"
      std::vector<int> cat = wj.arrows;
      cat.insert(cat.end(), wi.arrows.begin(), wi.arrows.end());
      if (max_zero_run(cat, q) >= N) continue;  // certified zero
      Word w{cat, cat.empty() ? wj.start : q.arrows[cat.front()].src};
      if (cat.empty()) w.start = wj.start;
      auto it = deg[t].index.find(word_key(w));
      if (it == deg[t].index.end())
        throw EngineError("internal: product word missing from enumeration");
      const Vec& c = deg[t].coords[it->second];
      SparseVec sv;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) sv.emplace_back(a.by_degree[t][k], c[k]);
      a.mult_table[i][j] = std::move(sv);
    }
  }

  // completeness: with arrows of weight <= wmax, a stretch of wmax zero
  // degrees forces everything above it to vanish
  int wmax = 0;
  for (const Arrow& ar : q.arrows) wmax = std::max(wmax, ar.weight);
  if (wmax == 0) {
    a.complete = true;
  } else {
    for (int t0 = 0; t0 + wmax - 1 <= D; ++t0) {
      bool all_zero = true;
      for (int t = t0; t < t0 + wmax; ++t)
        if (a.dim(t) > 0) all_zero = false;
      if (all_zero) {
        a.complete = true;
        break;
      }
    }
  }

  // nilpotency certificate for the degree-0 radical
  {
    Field f(p.field);
    std::vector<Vec> gens;
    for (int pos = 0; pos < a.dim(0); ++pos) {
      if (a.is_idempotent_elem(a.by_degree[0][pos])) continue;
      Vec v = zero_vec(a.dim(0));
      v[pos] = 1;
      gens.push_back(std::move(v));
    }
    Subspace layer = Subspace::span(p.field, a.dim(0), gens);
    Subspace j0 = layer;
    int m = 1;
    while (layer.dim() > 0) {
      if (m > N)
        throw EngineError("degree-0 radical is not nilpotent within the declared bound " +
                          std::to_string(N));
      std::vector<Vec> next;
      for (int i = 0; i < layer.dim(); ++i)
        for (int jj = 0; jj < j0.dim(); ++jj)
          next.push_back(a.mult_vec(0, layer.basis().row(i), 0, j0.basis().row(jj)));
      layer = Subspace::span(p.field, a.dim(0), next);
      ++m;
    }
    info.radical_nilpotency_index = m;
  }

  auto bad = a.associativity_witness();
  if (!bad.empty())
    throw EngineError("internal: associativity failed on (" + a.basis[bad[0]].label +
                      ", " + a.basis[bad[1]].label + ", " + a.basis[bad[2]].label + ")");

  a.compute_radical_chain();
  return BuiltAlgebra{std::move(a), info};
}

GrAlgebra associated_graded(const TruncatedAlgebra& a) {
  Field f(a.field);
  int d_gr = a.jpower_max - 1;
  if (!a.complete) {
    d_gr = std::min(d_gr, a.D);
    // soundness: layers above the window must contribute nothing, which holds
    // when (J^i)_t is everything for i <= t (algebras generated in degree <= 1)
    for (int t = 1; t <= a.D; ++t)
      for (int i = 1; i <= std::min(t, a.jpower_max); ++i)
        if (a.rad[i][t].dim() != a.dim(t))
          throw EngineError(
              "associated graded window cannot be certified: (J^" +
              std::to_string(i) + ")_" + std::to_string(t) + " is proper");
  }

  GrAlgebra gr;
  gr.reps.resize(d_gr + 1);
  for (int i = 0; i <= d_gr; ++i) {
    for (int t = 0; t <= a.D; ++t) {
      const Subspace& hi = a.rad[i][t];
      const Subspace& lo = a.rad[i + 1][t];
      std::vector<bool> lo_pivot(a.dim(t), false);
      for (int pp : lo.pivots()) lo_pivot[pp] = true;
      int count = 0;
      for (int r = 0; r < hi.dim(); ++r) {
        if (lo_pivot[hi.pivots()[r]]) continue;
        gr.reps[i].emplace_back(t, hi.basis().row(r));
        ++count;
      }
      if (count > 0) gr.bidegree_dims[{i, t}] = count;
    }
  }

  StructureConstants sc;
  sc.field = a.field;
  sc.D = d_gr;
  sc.vertex_names = a.vertex_names;
  sc.jpower_max = a.jpower_max;
  sc.provenance = "associated_graded";

  // flatten and type the representatives
  std::vector<std::vector<int>> start(d_gr + 1);  // global offset of level i
  for (int i = 0; i <= d_gr; ++i) {
    for (auto& [t, v] : gr.reps[i]) {
      int src = -1, tgt = -1, pivot = -1;
      for (std::size_t c = 0; c < v.size(); ++c)
        if (v[c] != 0) {
          const BasisElem& be = a.basis[a.by_degree[t][c]];
          if (src < 0) {
            src = be.src;
            tgt = be.tgt;
            pivot = static_cast<int>(c);
          } else if (be.src != src || be.tgt != tgt) {
            throw EngineError("internal: layer representative mixes vertex types");
          }
        }
      if (src < 0) throw EngineError("internal: zero layer representative");
      sc.basis.push_back(BasisElem{
          i, src, tgt, "gr[" + a.basis[a.by_degree[t][pivot]].label + "]"});
    }
  }
  // offsets per level
  {
    int off = 0;
    for (int i = 0; i <= d_gr; ++i) {
      start[i] = {off};
      off += static_cast<int>(gr.reps[i].size());
    }
  }

  sc.idempotent.assign(a.nvert(), -1);
  for (std::size_t r = 0; r < gr.reps[0].size(); ++r) {
    const auto& [t, v] = gr.reps[0][r];
    (void)t;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0 && a.is_idempotent_elem(a.by_degree[0][c]))
        sc.idempotent[a.basis[a.by_degree[0][c]].src] = static_cast<int>(r);
  }
  for (int v = 0; v < a.nvert(); ++v)
    if (sc.idempotent[v] < 0)
      throw EngineError("internal: missing idempotent class in associated graded");

  int top = a.top_nonzero_degree();
  for (int i = 0; i <= d_gr; ++i)
    for (std::size_t ri = 0; ri < gr.reps[i].size(); ++ri)
      for (int j = 0; j <= d_gr - i; ++j)
        for (std::size_t rj = 0; rj < gr.reps[j].size(); ++rj) {
          int gi = start[i][0] + static_cast<int>(ri);
          int gj = start[j][0] + static_cast<int>(rj);
          if (sc.basis[gj].tgt != sc.basis[gi].src) continue;
          const auto& [ti, vi] = gr.reps[i][ri];
          const auto& [tj, vj] = gr.reps[j][rj];
          int t = ti + tj;
          if (t > a.D) {
            if (a.complete && t > top) continue;  // genuinely zero
            throw EngineError("internal: graded product escaped the window");
          }
          Vec prod = a.mult_vec(ti, vi, tj, vj);
          if (is_zero_vec(prod)) continue;
          // coordinates against [level-(i+j) reps at degree t | J^{i+j+1}_t]
          std::vector<int> rep_ids;
          std::vector<Vec> cols;
          for (std::size_t rk = 0; rk < gr.reps[i + j].size(); ++rk)
            if (gr.reps[i + j][rk].first == t) {
              rep_ids.push_back(static_cast<int>(rk));
              cols.push_back(gr.reps[i + j][rk].second);
            }
          const Subspace& lower = a.rad[i + j + 1][t];
          for (int r = 0; r < lower.dim(); ++r) cols.push_back(lower.basis().row(r));
          Matrix m(a.field, a.dim(t), static_cast<int>(cols.size()));
          for (std::size_t cc = 0; cc < cols.size(); ++cc)
            for (int rr = 0; rr < a.dim(t); ++rr) m.at(rr, static_cast<int>(cc)) = cols[cc][rr];
          auto sol = solve(m, prod);
          if (!sol)
            throw EngineError("internal: graded product not spanned by layer basis");
          SparseVec sv;
          for (std::size_t rr = 0; rr < rep_ids.size(); ++rr)
            if ((*sol)[rr] != 0)
              sv.emplace_back(start[i + j][0] + rep_ids[rr], f.canon((*sol)[rr]));
          if (!sv.empty()) sc.products[{gi, gj}] = std::move(sv);
        }

  // a vanishing radical power certifies the graded algebra finite only when
  // the source algebra is itself certified beyond its window
  if (a.complete)
    for (int i = 0; i <= a.jpower_max; ++i) {
      bool zero = true;
      for (int t = 0; t <= a.D; ++t)
        if (a.rad[i][t].dim() > 0) zero = false;
      if (zero && i <= d_gr + 1) {
        sc.complete = true;
        break;
      }
    }

  gr.alg = from_structure_constants(sc);
  return gr;
}

TruncatedAlgebra from_structure_constants(const StructureConstants& sc) {
  TruncatedAlgebra a;
  a.field = sc.field;
  a.D = sc.D;
  a.vertex_names = sc.vertex_names;
  a.jpower_max = sc.jpower_max;
  a.complete = sc.complete;
  a.provenance = sc.provenance;
  a.basis = sc.basis;
  a.idempotent = sc.idempotent;

  a.by_degree.resize(a.D + 1);
  a.pos_in_degree.resize(a.basis.size());
  int prev = 0;
  for (std::size_t g = 0; g < a.basis.size(); ++g) {
    int d = a.basis[g].degree;
    if (d < prev || d > a.D)
      throw EngineError("structure constants: basis must be sorted by degree within window");
    prev = d;
    a.by_degree[d].push_back(static_cast<int>(g));
    a.pos_in_degree[g] = static_cast<int>(a.by_degree[d].size()) - 1;
  }

  a.mult_table.assign(a.basis.size(), std::vector<SparseVec>(a.basis.size()));
  Field f(a.field);
  for (const auto& [key, terms] : sc.products) {
    auto [i, j] = key;
    int dt = a.basis[i].degree + a.basis[j].degree;
    if (dt > a.D) throw EngineError("structure constants: product outside window");
    if (a.basis[j].tgt != a.basis[i].src && !terms.empty())
      throw EngineError("structure constants: product of non-composable types (" +
                        a.basis[i].label + ", " + a.basis[j].label + ")");
    SparseVec canon;
    for (const auto& [k, c] : terms) {
      if (a.basis[k].degree != dt)
        throw EngineError("structure constants: product term in wrong degree");
      if (a.basis[k].src != a.basis[j].src || a.basis[k].tgt != a.basis[i].tgt)
        throw EngineError("structure constants: product term breaks vertex typing");
      Rational cc = f.canon(c);
      if (cc != 0) canon.emplace_back(k, cc);
    }
    a.mult_table[i][j] = std::move(canon);
  }

  // idempotent axioms
  for (int v = 0; v < a.nvert(); ++v) {
    int e = a.idempotent[v];
    if (e < 0 || a.basis[e].degree != 0 || a.basis[e].src != v || a.basis[e].tgt != v)
      throw EngineError("structure constants: idempotent list is not adapted");
    for (int w = 0; w < a.nvert(); ++w) {
      const SparseVec& pr = a.mult_table[e][a.idempotent[w]];
      if (v == w) {
        if (pr.size() != 1 || pr[0].first != e || pr[0].second != 1)
          throw EngineError("structure constants: e_" + a.vertex_names[v] +
                            " is not idempotent");
      } else if (!pr.empty()) {
        throw EngineError("structure constants: idempotents are not orthogonal");
      }
    }
  }
  for (std::size_t g = 0; g < a.basis.size(); ++g) {
    const SparseVec& left = a.mult_table[a.idempotent[a.basis[g].tgt]][g];
    const SparseVec& right = a.mult_table[g][a.idempotent[a.basis[g].src]];
    SparseVec expect{{static_cast<int>(g), Rational(1)}};
    if (left != expect || right != expect)
      throw EngineError("structure constants: idempotents do not act as units on " +
                        a.basis[g].label);
  }

  auto bad = a.associativity_witness();
  if (!bad.empty())
    throw EngineError("structure constants: associativity fails on (" +
                      a.basis[bad[0]].label + ", " + a.basis[bad[1]].label + ", " +
                      a.basis[bad[2]].label + ")");

  // degree-0 radical must vanish under iterated multiplication
  {
    std::vector<Vec> gens;
    for (int p = 0; p < a.dim(0); ++p)
      if (!a.is_idempotent_elem(a.by_degree[0][p])) {
        Vec v = zero_vec(a.dim(0));
        v[p] = 1;
        gens.push_back(std::move(v));
      }
    Subspace j0 = Subspace::span(a.field, a.dim(0), gens);
    Subspace layer = j0;
    int m = 1;
    while (layer.dim() > 0) {
      if (m > a.jpower_max)
        throw EngineError("structure constants: degree-0 radical not nilpotent in window");
      std::vector<Vec> next;
      for (int i = 0; i < layer.dim(); ++i)
        for (int j = 0; j < j0.dim(); ++j)
          next.push_back(a.mult_vec(0, layer.basis().row(i), 0, j0.basis().row(j)));
      layer = Subspace::span(a.field, a.dim(0), next);
      ++m;
    }
  }

  a.compute_radical_chain();
  return a;
}

StructureConstants structure_of(const TruncatedAlgebra& a) {
  StructureConstants sc;
  sc.field = a.field;
  sc.D = a.D;
  sc.vertex_names = a.vertex_names;
  sc.basis = a.basis;
  sc.idempotent = a.idempotent;
  sc.jpower_max = a.jpower_max;
  sc.complete = a.complete;
  sc.provenance = a.provenance;
  for (int i = 0; i < a.total_dim(); ++i)
    for (int j = 0; j < a.total_dim(); ++j)
      if (a.basis[i].degree + a.basis[j].degree <= a.D && !a.mult_table[i][j].empty())
        sc.products[{i, j}] = a.mult_table[i][j];
  return sc;
}

nlohmann::json export_structure_json(const TruncatedAlgebra& a) {
  nlohmann::json j;
  j["schema"] = "koszulkit-structure-1";
  j["field"] = a.field.describe();
  j["degree_bound"] = a.D;
  j["jpower_max"] = a.jpower_max;
  j["complete"] = a.complete;
  j["provenance"] = a.provenance;
  j["vertices"] = a.vertex_names;
  j["basis"] = nlohmann::json::array();
  for (const BasisElem& b : a.basis)
    j["basis"].push_back({{"degree", b.degree},
                          {"src", b.src},
                          {"tgt", b.tgt},
                          {"label", b.label}});
  j["idempotents"] = a.idempotent;
  j["mult"] = nlohmann::json::array();
  for (int i = 0; i < a.total_dim(); ++i)
    for (int k = 0; k < a.total_dim(); ++k) {
      if (a.basis[i].degree + a.basis[k].degree > a.D) continue;
      if (a.mult_table[i][k].empty()) continue;
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [idx, c] : a.mult_table[i][k])
        terms.push_back({idx, Field::to_string(c)});
      j["mult"].push_back({{"i", i}, {"j", k}, {"terms", terms}});
    }
  return j;
}

TruncatedAlgebra import_structure_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "koszulkit-structure-1")
    throw ParseError("unsupported structure-constant schema");
  StructureConstants sc;
  std::string fs = j.at("field").get<std::string>();
  sc.field = fs == "Q" ? FieldSpec::rationals()
                       : FieldSpec::prime(std::stoll(fs.substr(1)));
  Field f(sc.field);
  sc.D = j.at("degree_bound").get<int>();
  sc.jpower_max = j.at("jpower_max").get<int>();
  sc.complete = j.at("complete").get<bool>();
  sc.provenance = j.value("provenance", "structure_constants");
  sc.vertex_names = j.at("vertices").get<std::vector<std::string>>();
  for (const auto& b : j.at("basis"))
    sc.basis.push_back(BasisElem{b.at("degree").get<int>(), b.at("src").get<int>(),
                                 b.at("tgt").get<int>(), b.at("label").get<std::string>()});
  sc.idempotent = j.at("idempotents").get<std::vector<int>>();
  for (const auto& m : j.at("mult")) {
    SparseVec sv;
    for (const auto& term : m.at("terms"))
      sv.emplace_back(term[0].get<int>(), f.parse(term[1].get<std::string>()));
    sc.products[{m.at("i").get<int>(), m.at("j").get<int>()}] = std::move(sv);
  }
  return from_structure_constants(sc);
}

}  // namespace koszulkit
