#include "bousfield/random_complex.hpp"

#include <algorithm>
#include <numeric>

namespace bousfield {

namespace {

Scalar random_coefficient(const CoefficientRing& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  const long p = ring.prime() == 0 ? 3 : ring.prime();
  switch (pick(rng)) {
    case 0: return ring.one();
    case 1: return ring.from_int(-1);
    case 2: return ring.from_int(2);
    case 3: return ring.kind() == RingKind::kRational ? ring.normalize(1, 2) : ring.from_int(p);
    case 4: return ring.from_int(p * p);
    default: return ring.from_int(1 + p);
  }
}

AlgebraElement random_degree_zero(const SpecPtr& spec, std::mt19937_64& rng) {
  AlgebraElement a(spec);
  a.accumulate(Monomial(), random_coefficient(spec->ring(), rng));
  return a;
}

}  // namespace

AlgebraElement random_homogeneous(const SpecPtr& spec, std::mt19937_64& rng, long d, int max_variables) {
  AlgebraElement out(spec);
  std::uniform_int_distribution<int> keep(0, 2);
  for (const auto& m : spec->basis(d)) {
    if (!m.terms().empty() && m.terms().back().first > max_variables) continue;
    if (keep(rng) == 0) continue;
    out.accumulate(m, random_coefficient(spec->ring(), rng));
  }
  return out;
}

FreeComplex random_complex(const SpecPtr& spec, std::mt19937_64& rng, const RandomComplexOptions& options) {
  std::uniform_int_distribution<int> kind_dist(0, 3);
  std::uniform_int_distribution<int> pieces_dist(1, std::max(1, options.max_pieces));
  std::uniform_int_distribution<int> chain_dist(-options.chain_offset_range, options.chain_offset_range);
  std::uniform_int_distribution<int> gdeg(0, 3);
  const long top = spec->degree(std::max(1, options.max_variables));
  std::vector<long> element_degrees = {0};
  for (long d = 2; d <= top; d += 2) {
    if (!spec->basis(d).empty()) element_degrees.push_back(d);
  }
  std::uniform_int_distribution<std::size_t> edeg(0, element_degrees.size() - 1);

  auto random_cone = [&](long g) {
    AlgebraElement a(spec);
    for (int attempt = 0; attempt < 4 && a.is_zero(); ++attempt) {
      long k = element_degrees[edeg(rng)];
      a = k == 0 ? random_degree_zero(spec, rng) : random_homogeneous(spec, rng, k, options.max_variables);
    }
    FreeComplex base = FreeComplex::unit(spec, g);
    if (a.is_zero()) return base;
    return cone(multiplication_map(base, a));
  };

  FreeComplex out = FreeComplex::zero(spec);
  const int pieces = pieces_dist(rng);
  const int span = std::max(1, options.max_chain_span);
  const int base_chain = chain_dist(rng);
  for (int i = 0; i < pieces; ++i) {
    FreeComplex piece = FreeComplex::zero(spec);
    const long g = 2 * gdeg(rng);
    int width = 1;
    switch (kind_dist(rng)) {
      case 0: piece = FreeComplex::unit(spec, g); break;
      case 1:
      case 2:
        piece = random_cone(g);
        width = 2;
        break;
      default:
        if (span >= 3) {
          piece = tensor(random_cone(g), random_cone(0));
          width = 3;
        } else {
          piece = random_cone(g);
          width = 2;
        }
        break;
    }
    std::uniform_int_distribution<int> offset(0, std::max(0, span - width));
    out = direct_sum(out, shift(piece, base_chain + offset(rng) - piece.min_chain()));
  }
  if (!options.scramble) return out;

  // Conjugate by U = I + N, N strictly upper triangular in generator-degree order.
  std::map<int, AlgebraMatrix> u, u_inv;
  std::uniform_int_distribution<int> coin(0, 2);
  for (const auto& [c, gens] : out.generator_map()) {
    const std::size_t n = gens.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gens[a] < gens[b]; });
    AlgebraMatrix nil(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::size_t i = order[a], j = order[b];
        if (coin(rng) != 0) continue;
        const long k = gens[j] - gens[i];
        AlgebraElement e = k == 0 ? random_degree_zero(spec, rng) : random_homogeneous(spec, rng, k, options.max_variables);
        nil.set(i, j, e);
      }
    }
    AlgebraMatrix inv = identity_matrix(spec, n);
    AlgebraMatrix term = identity_matrix(spec, n);
    const AlgebraElement minus_one = AlgebraElement::from_int(spec, -1);
    AlgebraMatrix neg = matrix_scale(nil, minus_one);
    for (std::size_t k = 1; k < n; ++k) {
      term = matrix_product(term, neg, spec);
      if (term.is_zero()) break;
      inv = matrix_sum(inv, term, spec);
    }
    u.emplace(c, matrix_sum(identity_matrix(spec, n), nil, spec));
    u_inv.emplace(c, std::move(inv));
  }
  std::map<int, AlgebraMatrix> diffs;
  for (const auto& [c, d] : out.differential_map()) {
    diffs.emplace(c, matrix_product(matrix_product(u_inv.at(c - 1), d, spec), u.at(c), spec));
  }
  return FreeComplex(spec, out.generator_map(), std::move(diffs));
}

}  // namespace bousfield
