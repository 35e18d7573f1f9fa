#pragma once

#include <functional>
#include <map>
#include <vector>

#include "bousfield/complexes.hpp"

namespace testsupport {

using namespace bousfield;

inline SpecPtr plocal(std::uint32_t p, int n = 2) {
  return make_spec(CoefficientRing::plocal(p), ExponentRule{{}, n});
}
inline SpecPtr fp(std::uint32_t p, int n = 2) { return make_spec(CoefficientRing::fp(p), ExponentRule{{}, n}); }
inline SpecPtr rational(int n = 2) { return make_spec(CoefficientRing::rational(), ExponentRule{{}, n}); }

inline AlgebraElement el(const SpecPtr& s, const std::string& text) { return parse_element(s, text); }

/// cone(a: Λ[deg a] -> Λ)
inline FreeComplex cone_of(const SpecPtr& s, const std::string& a) {
  return cone(multiplication_map(FreeComplex::unit(s), el(s, a)));
}

/// Counts exponent vectors (e_1..e_m) with e_i < n, sum e_i 2^i = d, filtered.
inline long brute_count(long d, int n, const std::function<bool(const std::vector<int>&)>& keep) {
  if (d < 0) return 0;
  int m = 0;
  while ((2L << m) <= d) ++m;
  std::vector<int> e(m, 0);
  long count = 0;
  std::function<void(int, long)> rec = [&](int i, long rem) {
    if (i == m) {
      if (rem == 0 && keep(e)) ++count;
      return;
    }
    for (int k = 0; k < n && k * (2L << i) <= rem; ++k) {
      e[i] = k;
      rec(i + 1, rem - k * (2L << i));
    }
    e[i] = 0;
  };
  rec(0, d);
  return count;
}

inline long brute_count(long d, int n) {
  return brute_count(d, n, [](const std::vector<int>&) { return true; });
}

/// Euler characteristic of homology at internal degree d: sum (-1)^c dim.
inline long euler(const HomologyTable& t, long d) {
  long chi = 0;
  for (const auto& [bd, desc] : t.entries) {
    if (bd.second != d) continue;
    long dim = desc.free_rank + static_cast<long>(desc.torsion.size());
    chi += (bd.first % 2 == 0 ? 1 : -1) * dim;
  }
  return chi;
}

inline HomologyTable add_tables(const HomologyTable& a, const HomologyTable& b) {
  HomologyTable out = a;
  for (const auto& [bd, desc] : b.entries) {
    auto& cell = out.entries[bd];
    cell.free_rank += desc.free_rank;
    cell.torsion.insert(cell.torsion.end(), desc.torsion.begin(), desc.torsion.end());
    std::sort(cell.torsion.begin(), cell.torsion.end());
  }
  return out;
}

inline HomologyTable shift_table(const HomologyTable& a, int s, const DegreeWindow& w) {
  HomologyTable out;
  out.window = w;
  for (const auto& [bd, desc] : a.entries) {
    if (w.contains(bd.first + s, bd.second)) out.entries[{bd.first + s, bd.second}] = desc;
  }
  return out;
}

}  // namespace testsupport
