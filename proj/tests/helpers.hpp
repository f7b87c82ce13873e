#pragma once

#include "koszulkit/algebra.hpp"
#include "koszulkit/presentation.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kktest {

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string corpus_path(const std::string& name) {
  const char* dir = std::getenv("KOSZULKIT_CORPUS");
  if (!dir) throw std::runtime_error("KOSZULKIT_CORPUS not set");
  return std::string(dir) + "/" + name;
}

inline koszulkit::Presentation load_corpus(const std::string& name) {
  return koszulkit::parse_presentation(slurp_file(corpus_path(name)));
}

// self-contained copies of the standard examples, for suites that run
// without the corpus environment

inline koszulkit::Presentation pres_sjodin() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["v"]
arrows = [
  {name = "x", from = "v", to = "v", weight = 0},
  {name = "y", from = "v", to = "v", weight = 0},
]
[relations]
x*x + y*y*y
x*y
y*x
[limits]
weight_max = 1
nilpotency_bound = 4
hom_max = 5
jpower_max = 6
[tasks]
resolve
)");
}

inline koszulkit::Presentation pres_kx2() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["v"]
arrows = [
  {name = "x", from = "v", to = "v", weight = 1},
]
[relations]
x*x
[limits]
weight_max = 6
nilpotency_bound = 2
hom_max = 4
jpower_max = 3
[tasks]
resolve
)");
}

inline koszulkit::Presentation pres_kx3_ungraded() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["v"]
arrows = [
  {name = "x", from = "v", to = "v", weight = 0},
]
[relations]
x*x*x
[limits]
weight_max = 1
nilpotency_bound = 3
hom_max = 4
jpower_max = 4
[tasks]
resolve
)");
}

inline koszulkit::Presentation pres_kx3_graded() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["v"]
arrows = [
  {name = "x", from = "v", to = "v", weight = 1},
]
[relations]
x*x*x
[limits]
weight_max = 6
nilpotency_bound = 3
hom_max = 4
jpower_max = 4
[tasks]
resolve
)");
}

inline koszulkit::Presentation pres_a2() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["a", "b"]
arrows = [
  {name = "f", from = "a", to = "b", weight = 1},
]
[limits]
weight_max = 3
nilpotency_bound = 1
hom_max = 4
jpower_max = 3
[tasks]
resolve
)");
}

inline koszulkit::Presentation pres_cyclic3() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["v0", "v1", "v2"]
arrows = [
  {name = "x0", from = "v0", to = "v1", weight = 1},
  {name = "x1", from = "v1", to = "v2", weight = 1},
  {name = "x2", from = "v2", to = "v0", weight = 1},
]
[limits]
weight_max = 4
nilpotency_bound = 1
hom_max = 4
jpower_max = 5
[tasks]
resolve
)");
}

inline koszulkit::Presentation pres_bendback() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["u", "w"]
arrows = [
  {name = "f", from = "u", to = "w", weight = 1},
  {name = "g", from = "w", to = "u", weight = 0},
]
[relations]
f*g
g*f
[limits]
weight_max = 2
nilpotency_bound = 2
hom_max = 4
jpower_max = 4
[tasks]
resolve
)");
}

inline koszulkit::Presentation pres_semisimple() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["a", "b"]
arrows = [
]
[limits]
weight_max = 1
nilpotency_bound = 1
hom_max = 3
jpower_max = 2
[tasks]
resolve
)");
}

inline koszulkit::Presentation pres_cps() {
  return koszulkit::parse_presentation(R"(format = 1
[field]
kind = "Q"
[quiver]
vertices = ["a", "ap", "b", "bp", "c"]
arrows = [
  {name = "beta",    from = "b",  to = "ap", weight = 0},
  {name = "zeta",    from = "c",  to = "ap", weight = 0},
  {name = "delta",   from = "ap", to = "b",  weight = 0},
  {name = "xi",      from = "ap", to = "c",  weight = 0},
  {name = "gamma",   from = "a",  to = "bp", weight = 0},
  {name = "epsilon", from = "a",  to = "b",  weight = 1},
  {name = "alpha",   from = "bp", to = "ap", weight = 1},
]
[relations]
alpha*xi
zeta*xi
zeta*delta
gamma*alpha - epsilon*beta*xi*zeta
delta*beta - xi*zeta
[limits]
weight_max = 4
nilpotency_bound = 5
hom_max = 4
jpower_max = 5
[tasks]
resolve
)");
}

inline koszulkit::TruncatedAlgebra build(const koszulkit::Presentation& p) {
  return koszulkit::build_algebra(p).alg;
}

}  // namespace kktest

#include "koszulkit/module.hpp"

namespace kktest {

/// Independent oracle for self-extension dimensions: build a deliberately
/// non-minimal resolution of the simple at vertex v (each syzygy is covered
/// by one free generator per coordinate, not per top element) and take the
/// cohomology of the dualized complex. (n, w) -> dim Ext^n(S_v, S_w).
inline std::map<std::pair<int, int>, int> naive_ext_dims(
    const koszulkit::TruncatedAlgebra& a, int v, int n_upto) {
  using namespace koszulkit;
  std::vector<std::shared_ptr<ProjectiveModule>> F;
  std::vector<std::shared_ptr<GradedModule>> keep;
  std::vector<std::vector<Matrix>> D;  // D[n][t]: F[n] -> F[n-1], n >= 1

  auto cur = std::make_shared<GradedModule>(simple_module(a, v, 0));
  std::vector<Matrix> incl_prev;  // kernel inclusion into the previous cover
  for (int n = 0; n <= n_upto + 1 && !cur->is_zero(); ++n) {
    std::vector<ProjGen> gens;
    std::vector<std::pair<int, int>> gcoord;  // (degree, coordinate) covered
    for (int t = 0; t <= cur->hi; ++t)
      for (int c = 0; c < cur->dim(t); ++c) {
        gens.push_back(ProjGen{cur->vertex_of[t][c], t});
        gcoord.emplace_back(t, c);
      }
    auto f = std::make_shared<ProjectiveModule>(free_module(a, gens, cur->hi));

    GradedMap pi;
    pi.src = &f->mod;
    pi.tgt = cur.get();
    for (int t = 0; t <= cur->hi; ++t) {
      Matrix m(a.field, cur->dim(t), f->mod.dim(t));
      for (int fc = 0; fc < f->mod.dim(t); ++fc) {
        auto [g, b] = f->coord_gen[t][fc];
        auto [tg, cg] = gcoord[g];
        Vec unit = zero_vec(cur->dim(tg));
        unit[cg] = Rational(1);
        Vec img = cur->apply(b, tg, unit);
        for (std::size_t r = 0; r < img.size(); ++r) m.at(static_cast<int>(r), fc) = img[r];
      }
      pi.mats.push_back(std::move(m));
    }

    if (n >= 1) {
      std::vector<Matrix> dn;
      for (int t = 0; t <= cur->hi; ++t)
        dn.push_back(incl_prev[t].multiply(pi.mats[t]));
      for (int t = cur->hi + 1; t <= F.back()->mod.hi; ++t)
        dn.push_back(Matrix(a.field, F.back()->mod.dim(t), 0));
      D.push_back(std::move(dn));
    }

    F.push_back(f);
    keep.push_back(cur);
    if (n == n_upto + 1) break;  // the last differential is already recorded
    SubmoduleResult k = kernel_module(pi);
    incl_prev = k.incl.mats;
    cur = k.mod;
  }

  // dualize against each simple: keep only top coefficients of the maps
  std::map<std::pair<int, int>, int> out;
  Field ff(a.field);
  for (int w = 0; w < a.nvert(); ++w) {
    auto cochain = [&](int n) -> std::vector<int> {  // vertex-w generators of F[n]
      std::vector<int> gs;
      if (n < static_cast<int>(F.size()))
        for (std::size_t g = 0; g < F[n]->gens.size(); ++g)
          if (F[n]->gens[g].vertex == w) gs.push_back(static_cast<int>(g));
      return gs;
    };
    auto delta = [&](int n) -> Matrix {  // Hom(F[n], S_w) -> Hom(F[n+1], S_w)
      std::vector<int> from = cochain(n), to = cochain(n + 1);
      Matrix m(a.field, static_cast<int>(to.size()), static_cast<int>(from.size()));
      if (n + 1 >= static_cast<int>(F.size())) return m;
      for (std::size_t r = 0; r < to.size(); ++r) {
        int gp = to[r];
        int t = F[n + 1]->gens[gp].shift;
        int col_top = F[n + 1]->coord_of(t, gp, a.idempotent[w]);
        for (std::size_t c = 0; c < from.size(); ++c) {
          int g = from[c];
          if (F[n]->gens[g].shift != t) continue;
          int row_top = F[n]->coord_of(t, g, a.idempotent[w]);
          m.at(static_cast<int>(r), static_cast<int>(c)) =
              D[n][t].at(row_top, col_top);
        }
      }
      return m;
    };
    Matrix prev(a.field, static_cast<int>(cochain(0).size()), 0);
    for (int n = 0; n <= n_upto; ++n) {
      Matrix next = delta(n);
      int dim = kernel_basis(next).dim() - rref(prev).rank;
      if (dim > 0) out[{n, w}] = dim;
      prev = std::move(next);
    }
    (void)ff;
  }
  return out;
}

}  // namespace kktest
