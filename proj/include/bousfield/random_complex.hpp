#pragma once

#include <random>

#include "bousfield/complexes.hpp"

namespace bousfield {

struct RandomComplexOptions {
  int max_variables = 3;
  int max_chain_span = 4;  // number of consecutive chain degrees used
  int max_pieces = 3;
  int chain_offset_range = 2;  // pieces start in chain degrees [-range, range]
  bool scramble = true;        // conjugate by a random homogeneous basis change
};

/// A random homogeneous element of internal degree d in x_1..x_m, possibly zero.
AlgebraElement random_homogeneous(const SpecPtr& spec, std::mt19937_64& rng, long d, int max_variables);

/// A random bounded free complex: a direct sum of units, cones of random
/// homogeneous elements and tensor products of such cones, conjugated by a
/// random unipotent basis change.
FreeComplex random_complex(const SpecPtr& spec, std::mt19937_64& rng, const RandomComplexOptions& options = {});

}  // namespace bousfield
