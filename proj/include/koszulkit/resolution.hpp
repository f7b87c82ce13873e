#pragma once

#include "koszulkit/module.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace koszulkit {

/// Minimal graded projective resolution computed inside the degree window.
/// p[n] covers the n-th syzygy; d[0] is the augmentation onto the module,
/// d[n] (n >= 1) maps P_n -> P_{n-1}. syz[n] is the n-th syzygy for n >= 1,
/// realized as the kernel submodule of the previous cover.
struct Resolution {
  const GradedModule* m0 = nullptr;
  std::vector<std::shared_ptr<ProjectiveModule>> p;
  std::vector<GradedMap> d;
  std::vector<std::shared_ptr<GradedModule>> syz;   // index 0 unused
  std::vector<GradedMap> syz_incl;                  // syz[n] -> P_{n-1}, index 0 unused
  int n_max = 0;
  int length = 0;           // number of covers actually built
  bool terminated = false;  // a syzygy vanished and was certified zero beyond the window
  int pdim = -1;            // projective dimension, valid only when terminated

  const GradedModule& syzygy(int n) const { return n == 0 ? *m0 : *syz[n]; }
};

/// Builds covers for homological degrees 0..n_max, stopping early when a
/// syzygy vanishes. Certifies minimality (kernel inside JP) and d o d = 0.
Resolution minimal_resolution(const GradedModule& m, int n_max);

/// (homological degree, generator shift, generator vertex) -> multiplicity.
std::map<std::tuple<int, int, int>, int> betti_table(const Resolution& r);

struct LinearityResult {
  bool linear = true;
  std::optional<std::pair<int, int>> witness;  // first (n, shift) off the diagonal
  int checked_up_to = -1;                      // highest homological degree inspected
};

/// Checks that P_n is generated purely in shift n + base_shift.
LinearityResult linearity_check(const Resolution& r, int base_shift);

/// Human-readable Betti grid (rows: internal degree, columns: homological).
std::string betti_text(const Resolution& r);

}  // namespace koszulkit
