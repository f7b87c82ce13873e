#include "koszulkit/resolution.hpp"

#include "koszulkit/errors.hpp"

#include <algorithm>
#include <sstream>

namespace koszulkit {

Resolution minimal_resolution(const GradedModule& m, int n_max) {
  Resolution r;
  r.m0 = &m;
  r.n_max = n_max;
  r.syz.push_back(nullptr);
  r.syz_incl.emplace_back();

  const GradedModule* cur = &m;
  for (int n = 0;; ++n) {
    if (cur->is_zero()) {
      // a zero in-window syzygy is the termination certificate
      r.terminated = true;
      r.pdim = n - 1;
      break;
    }
    if (n > n_max) break;

    Cover cov = projective_cover(*cur);
    if (n == 0) {
      r.d.push_back(cov.pi);
    } else {
      // d_n = (syzygy inclusion) o (cover projection)
      GradedMap dn;
      dn.src = &cov.p->mod;
      dn.tgt = &r.p[n - 1]->mod;
      dn.mats.resize(m.hi + 1);
      for (int t = 0; t <= m.hi; ++t)
        dn.mats[t] = r.syz_incl[n].mats[t].multiply(cov.pi.mats[t]);
      r.d.push_back(std::move(dn));
    }
    SubmoduleResult ker = kernel_module(cov.pi);
    r.p.push_back(cov.p);
    r.syz.push_back(ker.mod);
    r.syz_incl.push_back(ker.incl);
    cur = ker.mod.get();
  }
  r.length = static_cast<int>(r.p.size());

  for (int n = 1; n < r.length; ++n)
    for (int t = 0; t <= m.hi; ++t)
      if (!r.d[n - 1].mats[t].multiply(r.d[n].mats[t]).is_zero())
        throw EngineError("resolution differentials do not compose to zero");
  return r;
}

std::map<std::tuple<int, int, int>, int> betti_table(const Resolution& r) {
  std::map<std::tuple<int, int, int>, int> out;
  for (int n = 0; n < r.length; ++n)
    for (const ProjGen& g : r.p[n]->gens)
      ++out[{n, g.shift, g.vertex}];
  return out;
}

LinearityResult linearity_check(const Resolution& r, int base_shift) {
  LinearityResult out;
  out.checked_up_to = r.length - 1;
  for (int n = 0; n < r.length && out.linear; ++n)
    for (const ProjGen& g : r.p[n]->gens)
      if (g.shift != n + base_shift) {
        out.linear = false;
        out.witness = {n, g.shift};
        break;
      }
  return out;
}

std::string betti_text(const Resolution& r) {
  auto table = betti_table(r);
  int tmax = 0;
  for (const auto& [key, mult] : table) tmax = std::max(tmax, std::get<1>(key));
  std::ostringstream os;
  os << "betti (rows: shift, cols: homological degree)\n";
  os << "      ";
  for (int n = 0; n < r.length; ++n) os << "n=" << n << "\t";
  os << "\n";
  for (int t = 0; t <= tmax; ++t) {
    os << "t=" << t << "   ";
    for (int n = 0; n < r.length; ++n) {
      int total = 0;
      for (const auto& [key, mult] : table)
        if (std::get<0>(key) == n && std::get<1>(key) == t) total += mult;
      os << total << "\t";
    }
    os << "\n";
  }
  if (r.terminated)
    os << "projective dimension " << r.pdim << "\n";
  else
    os << "resolution open beyond homological degree " << (r.length - 1) << "\n";
  return os.str();
}

}  // namespace koszulkit
