#include "koszulkit/report.hpp"

#include "koszulkit/algebra.hpp"
#include "koszulkit/errors.hpp"
#include "koszulkit/ext.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/regularity.hpp"
#include "koszulkit/resolution.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace koszulkit {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

using nlohmann::json;

json dims_json(const TruncatedAlgebra& a) {
  json d = json::array();
  for (int t = 0; t <= a.D; ++t) d.push_back(a.dim(t));
  return d;
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (const Rational& c : v) out.push_back(Field::to_string(c));
  return out;
}

json betti_json(const Resolution& r, const TruncatedAlgebra& a) {
  json rows = json::array();
  for (const auto& [key, mult] : betti_table(r)) {
    auto [n, t, v] = key;
    rows.push_back({{"n", n}, {"shift", t}, {"vertex", a.vertex_names[v]},
                    {"mult", mult}});
  }
  return rows;
}

json koszul_json(const KoszulCertificate& c) {
  json cells = json::array();
  for (const KoszulCell& cell : c.cells)
    cells.push_back({{"n", cell.n}, {"k", cell.k}, {"lhs_dim", cell.lhs_dim},
                     {"rhs_dim", cell.rhs_dim}, {"equal", cell.equal}});
  json out = {{"mode", c.mode}, {"n_upto", c.n_upto}, {"k_max", c.k_max},
              {"pass", c.pass}, {"cells", cells}};
  if (c.witness)
    out["witness"] = {{"n", c.witness->n}, {"k", c.witness->k}, {"t", c.witness->t},
                      {"vector", vec_json(c.witness->vec)}};
  return out;
}

json generation_json(const GenerationCheck& g) {
  json out = {{"pass", g.pass}, {"span_dims", g.span_dims}};
  if (g.witness)
    out["witness"] = {{"degree", g.witness->first}, {"element", g.witness->second}};
  return out;
}

json regularity_json(const RegularityReport& r, const TruncatedAlgebra& a) {
  json out = {{"status", r.status}};
  if (r.status != "inconclusive") out["d"] = r.d;
  if (r.status == "pass") {
    json sigma = json::object();
    for (int v = 0; v < a.nvert(); ++v)
      sigma[a.vertex_names[v]] = {{"vertex", a.vertex_names[r.sigma[v]]},
                                  {"twist", r.twist[v]}};
    out["sigma"] = sigma;
  }
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

/// Lazily-built shared state across tasks.
struct Engine {
  const Presentation& p;
  std::optional<BuiltAlgebra> built;
  std::optional<ExtContext> ctx;
  std::optional<ExtAlgebra> ea;

  explicit Engine(const Presentation& pres) : p(pres) {}

  const TruncatedAlgebra& algebra() {
    if (!built) built = build_algebra(p);
    return built->alg;
  }
  ExtContext& context() {
    if (!ctx) ctx = make_ext_context(algebra(), p.limits.hom_max);
    return *ctx;
  }
  ExtAlgebra& dual() {
    if (!ea) ea = ext_algebra(context());
    return *ea;
  }
};

json task_resolve(Engine& e) {
  const TruncatedAlgebra& a = e.algebra();
  ExtContext& ctx = e.context();
  json per = json::object();
  for (int v = 0; v < a.nvert(); ++v) {
    const Resolution& r = ctx.res[v];
    json entry = {{"betti", betti_json(r, a)},
                  {"linear", linearity_check(r, 0).linear}};
    if (r.terminated) entry["pdim"] = r.pdim;
    else entry["pdim_open_beyond"] = r.length - 1;
    per[a.vertex_names[v]] = entry;
  }
  return per;
}

json task_koszul(Engine& e, bool full) {
  const TruncatedAlgebra& a = e.algebra();
  ExtContext& ctx = e.context();
  int n_upto = e.p.limits.hom_max - 1;
  int k_max = std::max(1, e.p.limits.jpower_max - 1);
  json per = json::object();
  bool pass = true;
  for (int v = 0; v < a.nvert(); ++v) {
    KoszulCertificate c = full ? koszul_certificate(ctx.res[v], n_upto, k_max)
                               : quasi_koszul_certificate(ctx.res[v], n_upto);
    if (!c.pass) pass = false;
    per[a.vertex_names[v]] = koszul_json(c);
  }
  return {{"pass", pass}, {"per_simple", per}};
}

json task_ext(Engine& e) {
  ExtAlgebra& ea = e.dual();
  json bigraded = json::array();
  for (const auto& [key, d] : ea.bigraded_dims)
    bigraded.push_back({{"n", key.first}, {"internal", key.second}, {"dim", d}});
  json dims = json::array();
  for (int n = 0; n <= ea.alg.D; ++n) dims.push_back(ea.alg.dim(n));
  return {{"dims", dims},
          {"certified_degree", ea.certified},
          {"requested_degree", ea.n_max},
          {"complete", ea.alg.complete},
          {"bigraded", bigraded}};
}

json task_dual(Engine& e) {
  ExtAlgebra& ea = e.dual();
  json out = {{"structure", export_structure_json(ea.alg)},
              {"generated_in_degree_one", generation_json(generated_in_degree_one(ea.alg))}};
  return out;
}

json task_double_dual(Engine& e) {
  DualityReport d = koszul_dual_double(e.algebra(), e.p.limits.hom_max);
  json blocks = json::array();
  for (const auto& [key, pr] : d.blocks) {
    auto [h, u, v] = key;
    blocks.push_back({{"h", h},
                      {"to", e.algebra().vertex_names[u]},
                      {"from", e.algebra().vertex_names[v]},
                      {"double_dual", pr.first},
                      {"graded", pr.second}});
  }
  json bg_dd = json::array(), bg_gr = json::array();
  for (const auto& [key, dim] : d.bigraded_double)
    bg_dd.push_back({{"h", key.first}, {"internal", key.second}, {"dim", dim}});
  for (const auto& [key, dim] : d.bigraded_gr)
    bg_gr.push_back({{"layer", key.first}, {"internal", key.second}, {"dim", dim}});
  return {{"pass", d.pass},
          {"window", d.window},
          {"dims_double_dual", d.dims_double},
          {"dims_graded", d.dims_gr},
          {"dims_match", d.dims_match},
          {"blocks", blocks},
          {"blocks_match", d.blocks_match},
          {"bigraded_double_dual", bg_dd},
          {"bigraded_graded", bg_gr},
          {"generated_in_degree_one_double_dual", generation_json(d.gen_double)},
          {"generated_in_degree_one_graded", generation_json(d.gen_gr)},
          {"product_span_double_dual", d.product_span_double},
          {"product_span_graded", d.product_span_gr},
          {"structure_match", d.structure_match},
          {"warnings", d.warnings}};
}

json task_gr(Engine& e) {
  GrAlgebra gr = associated_graded(e.algebra());
  json bidegree = json::array();
  for (const auto& [key, d] : gr.bidegree_dims)
    if (d)
      bidegree.push_back({{"layer", key.first}, {"internal", key.second}, {"dim", d}});
  return {{"dims", dims_json(gr.alg)},
          {"window", gr.alg.D},
          {"complete", gr.alg.complete},
          {"bidegree", bidegree},
          {"structure", export_structure_json(gr.alg)}};
}

json task_opposite(Engine& e) {
  Presentation op = opposite(e.p);
  validate_homogeneity(op);
  BuiltAlgebra built = build_algebra(op);
  ExtContext ctx = make_ext_context(built.alg, e.p.limits.hom_max);
  int n_upto = e.p.limits.hom_max - 1;
  int k_max = std::max(1, e.p.limits.jpower_max - 1);
  bool quasi = true, full = true;
  for (int v = 0; v < built.alg.nvert(); ++v) {
    if (!quasi_koszul_certificate(ctx.res[v], n_upto).pass) quasi = false;
    if (!koszul_certificate(ctx.res[v], n_upto, k_max).pass) full = false;
  }
  return {{"dims", dims_json(built.alg)},
          {"complete", built.alg.complete},
          {"quasi_koszul", quasi},
          {"koszul", full}};
}

json task_as_regular(Engine& e) {
  RegularityReport r = as_regular_certificate(e.algebra(), e.p.limits.hom_max);
  return regularity_json(r, e.algebra());
}

json task_self_injective_dual(Engine& e) {
  SelfInjectivityReport s = self_injective_check(e.dual().alg);
  json out = {{"pass", s.pass}, {"top_degree", s.top_degree}};
  json top = json::array();
  for (const ProjGen& g : s.top)
    top.push_back({{"vertex", e.algebra().vertex_names[g.vertex]}, {"shift", g.shift}});
  out["dual_cover"] = top;
  if (s.witness)
    out["witness"] = {{"degree", s.witness->first}, {"defect", s.witness->second}};
  return out;
}

}  // namespace

json run_report(const Presentation& p, const std::string& raw_input) {
  if (p.tasks.empty())
    throw ParseError("the input requests no tasks");
  validate_homogeneity(p);

  json report;
  report["report_schema"] = 1;
  report["field"] = p.field.describe();
  {
    std::ostringstream hx;
    hx << std::hex << fnv1a64(raw_input);
    report["input_hash"] = hx.str();
  }
  report["limits"] = {{"weight_max", p.limits.weight_max},
                      {"nilpotency_bound", p.limits.nilpotency_bound},
                      {"hom_max", p.limits.hom_max},
                      {"jpower_max", p.limits.jpower_max}};

  Engine e(p);
  const TruncatedAlgebra& a = e.algebra();
  report["algebra"] = {{"vertices", a.vertex_names},
                       {"dims", dims_json(a)},
                       {"total_dim", a.total_dim()},
                       {"complete", a.complete},
                       {"degree0_stabilized", e.built->info.stabilized},
                       {"radical_nilpotency_index",
                        e.built->info.radical_nilpotency_index}};

  std::vector<std::string> tasks;
  for (const std::string& t : p.tasks)
    if (std::find(tasks.begin(), tasks.end(), t) == tasks.end()) tasks.push_back(t);

  json out = json::object();
  for (const std::string& t : tasks) {
    if (t == "resolve") out[t] = task_resolve(e);
    else if (t == "quasi_koszul") out[t] = task_koszul(e, false);
    else if (t == "koszul") out[t] = task_koszul(e, true);
    else if (t == "ext") out[t] = task_ext(e);
    else if (t == "dual") out[t] = task_dual(e);
    else if (t == "double_dual") out[t] = task_double_dual(e);
    else if (t == "gr") out[t] = task_gr(e);
    else if (t == "opposite") out[t] = task_opposite(e);
    else if (t == "as_regular") out[t] = task_as_regular(e);
    else if (t == "self_injective_dual") out[t] = task_self_injective_dual(e);
    else throw ParseError("unknown task '" + t + "'");
  }
  report["tasks"] = out;
  return report;
}

namespace {

void render_value(std::ostringstream& os, const json& v, int indent) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_value(os, it.value(), indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    bool scalars = std::all_of(v.begin(), v.end(),
                               [](const json& x) { return !x.is_structured(); });
    if (scalars) {
      os << pad << "[";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].dump();
      os << "]\n";
    } else {
      for (const json& x : v) {
        os << pad << "-\n";
        render_value(os, x, indent + 2);
      }
    }
  } else {
    os << pad << v.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  render_value(os, report, 0);
  return os.str();
}

}  // namespace koszulkit
