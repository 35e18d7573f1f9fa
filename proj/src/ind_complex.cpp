#include "bousfield/ind_complex.hpp"

#include <algorithm>
#include <mutex>

#include "bousfield/error.hpp"

namespace bousfield {

struct IndComplex::Cache {
  StageFn stage_fn;
  MapFn map_fn;
  std::recursive_mutex mutex;
  std::map<int, FreeComplex> stages;
  std::map<int, ChainMap> maps;
};

IndComplex::IndComplex(SpecPtr spec, StageFn stage, MapFn map, bool uniform, bool constant)
    : spec_(std::move(spec)), cache_(std::make_shared<Cache>()), uniform_(uniform || constant), constant_(constant) {
  cache_->stage_fn = std::move(stage);
  cache_->map_fn = std::move(map);
}

const FreeComplex& IndComplex::stage(int s) const {
  if (uniform_) s = 0;
  std::lock_guard<std::recursive_mutex> lock(cache_->mutex);
  auto it = cache_->stages.find(s);
  if (it != cache_->stages.end()) return it->second;
  FreeComplex x = cache_->stage_fn(s);
  return cache_->stages.emplace(s, std::move(x)).first->second;
}

const ChainMap& IndComplex::map(int s) const {
  if (uniform_) s = 0;
  std::lock_guard<std::recursive_mutex> lock(cache_->mutex);
  auto it = cache_->maps.find(s);
  if (it != cache_->maps.end()) return it->second;
  ChainMap f = cache_->map_fn(s);
  return cache_->maps.emplace(s, std::move(f)).first->second;
}

IndComplex IndComplex::constant(const FreeComplex& x) {
  return IndComplex(
      x.spec(), [x](int) { return x; }, [x](int) { return identity_map(x); }, true, true);
}

IndComplex IndComplex::telescope(const AlgebraElement& a, const FreeComplex& x) {
  require_same_spec(a.spec(), x.spec());
  if (!a.is_homogeneous()) throw Error(ErrorKind::kInvalidArgument, "telescope of a non-homogeneous element");
  const long k = a.degree();
  auto stage = [x, k](int s) { return internal_shift(x, -static_cast<long>(s) * k); };
  auto map = [x, k, a](int s) {
    return scalar_map(internal_shift(x, -static_cast<long>(s) * k), internal_shift(x, -static_cast<long>(s + 1) * k), a);
  };
  IndComplex out(x.spec(), stage, map, k == 0, false);
  if (k > 0) {
    // Positive-degree elements of a truncated polynomial ring are nilpotent.
    int n = 1;
    for (AlgebraElement power = a; !power.is_zero(); power = algebra_mul(power, a)) ++n;
    out = out.with_vanishing(n);
  }
  return out;
}

namespace {

// a^s : X -> internal_shift(X, -s*deg a)
ChainMap power_map(const AlgebraElement& a, const FreeComplex& x, int s) {
  const long k = a.degree();
  return scalar_map(x, internal_shift(x, -static_cast<long>(s) * k), algebra_pow(a, static_cast<unsigned>(s)));
}

// The square from a^s to a^{s+1}: identity on X, multiplication by a on the target.
ChainMap stage_cone_map(const AlgebraElement& a, const FreeComplex& x, int s) {
  const long k = a.degree();
  ChainMap phi = power_map(a, x, s);
  ChainMap psi = power_map(a, x, s + 1);
  ChainMap beta = scalar_map(phi.target(), psi.target(), a);
  (void)k;
  return cone_map(phi, psi, identity_map(x), beta);
}

}  // namespace

IndComplex IndComplex::fiber_to_telescope(const AlgebraElement& a, const FreeComplex& x) {
  require_same_spec(a.spec(), x.spec());
  if (!a.is_homogeneous()) throw Error(ErrorKind::kInvalidArgument, "telescope of a non-homogeneous element");
  auto stage = [a, x](int s) { return fiber(power_map(a, x, s)); };
  auto map = [a, x](int s) { return shift_map(stage_cone_map(a, x, s), -1); };
  return IndComplex(x.spec(), stage, map, false, false);
}

IndComplex IndComplex::telescope_quotient(const AlgebraElement& a, const FreeComplex& x) {
  require_same_spec(a.spec(), x.spec());
  if (!a.is_homogeneous()) throw Error(ErrorKind::kInvalidArgument, "telescope of a non-homogeneous element");
  auto stage = [a, x](int s) { return cone(power_map(a, x, s)); };
  auto map = [a, x](int s) { return stage_cone_map(a, x, s); };
  return IndComplex(x.spec(), stage, map, false, false);
}

IndComplex ind_sum(const IndComplex& a, const IndComplex& b) {
  require_same_spec(a.spec(), b.spec());
  std::optional<int> vanishing;
  if (a.vanishing_steps() && b.vanishing_steps()) vanishing = std::max(*a.vanishing_steps(), *b.vanishing_steps());
  return IndComplex(
             a.spec(), [a, b](int s) { return direct_sum(a.stage(s), b.stage(s)); },
             [a, b](int s) { return sum_map(a.map(s), b.map(s)); }, a.is_uniform() && b.is_uniform(),
             a.is_constant() && b.is_constant())
      .with_vanishing(vanishing);
}

IndComplex ind_tensor(const IndComplex& a, const IndComplex& b) {
  require_same_spec(a.spec(), b.spec());
  std::optional<int> vanishing = a.vanishing_steps();
  if (b.vanishing_steps() && (!vanishing || *b.vanishing_steps() < *vanishing)) vanishing = b.vanishing_steps();
  return IndComplex(
             a.spec(), [a, b](int s) { return tensor(a.stage(s), b.stage(s)); },
             [a, b](int s) { return tensor_map(a.map(s), b.map(s)); }, a.is_uniform() && b.is_uniform(),
             a.is_constant() && b.is_constant())
      .with_vanishing(vanishing);
}

IndComplex ind_shift(const IndComplex& a, int n) {
  return IndComplex(
             a.spec(), [a, n](int s) { return shift(a.stage(s), n); },
             [a, n](int s) { return shift_map(a.map(s), n); }, a.is_uniform(), a.is_constant())
      .with_vanishing(a.vanishing_steps());
}

IndComplex ind_apply(const IndComplex& a, SpecPtr spec, const std::function<FreeComplex(const FreeComplex&)>& on_stage,
                     const std::function<ChainMap(const ChainMap&)>& on_map) {
  return IndComplex(
             std::move(spec), [a, on_stage](int s) { return on_stage(a.stage(s)); },
             [a, on_map](int s) { return on_map(a.map(s)); }, a.is_uniform(), a.is_constant())
      .with_vanishing(a.vanishing_steps());
}

ModuleDescriptor subquotient(const ScalarMatrix& v, const ScalarMatrix& b, const CoefficientRing& ring) {
  if (v.rows() == 0 || v.cols() == 0) return {};
  ScalarMatrix joined = b.hconcat(v);
  SmithDecomposition snf = smith_normal_form(joined, ring);
  const std::size_t r = snf.rank;
  ModuleDescriptor desc;
  if (b.cols() == 0) {
    desc.free_rank = static_cast<long>(r);
    return desc;
  }
  ScalarMatrix pb = multiply(ring, snf.row_transform, b);
  ScalarMatrix coords(r, b.cols());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) coords.at(i, j) = ring.divide(pb.at(i, j), snf.diagonal[i]);
  }
  std::vector<int> vals = smith_valuations(coords, ring);
  desc.free_rank = static_cast<long>(r) - static_cast<long>(vals.size());
  for (int x : vals) {
    if (x > 0) desc.torsion.push_back(x);
  }
  std::sort(desc.torsion.begin(), desc.torsion.end());
  return desc;
}

namespace {

struct StageSlice {
  std::size_t n = 0;
  ScalarMatrix cycles;
  ScalarMatrix boundaries;
};

// Lazily computed per-stage data for one bidegree (c, d).
class BidegreeSystem {
 public:
  BidegreeSystem(const IndComplex& ind, int c, long d) : ind_(ind), c_(c), d_(d) {}

  std::size_t dimension(int t) {
    return slice_dimension(ind_.stage(t), c_, d_);
  }

  const StageSlice& slice(int t) {
    if (ind_.is_uniform()) t = 0;
    auto it = slices_.find(t);
    if (it != slices_.end()) return it->second;
    const FreeComplex& x = ind_.stage(t);
    const AlgebraSpec& spec = *x.spec();
    const auto& ring = spec.ring();
    StageSlice sl;
    sl.n = slice_dimension(x, c_, d_);
    ScalarMatrix out = slice_matrix(x.differential(c_), x.generators(c_), x.generators(c_ - 1), spec, d_);
    if (out.rows() == 0 || out.is_zero()) {
      sl.cycles = ScalarMatrix::identity(ring, sl.n);
    } else {
      SmithDecomposition snf = smith_normal_form(out, ring);
      sl.cycles = snf.col_transform.column_block(snf.rank, sl.n - snf.rank);
    }
    sl.boundaries = slice_matrix(x.differential(c_ + 1), x.generators(c_ + 1), x.generators(c_), spec, d_);
    return slices_.emplace(t, std::move(sl)).first->second;
  }

  const ScalarMatrix& map_slice(int t) {
    if (ind_.is_uniform()) t = 0;
    auto it = maps_.find(t);
    if (it != maps_.end()) return it->second;
    const ChainMap& f = ind_.map(t);
    ScalarMatrix m = slice_matrix(f.component(c_), f.source().generators(c_), f.target().generators(c_),
                                  *f.source().spec(), d_);
    return maps_.emplace(t, std::move(m)).first->second;
  }

  struct Source {
    bool stabilized = false;
    int stage = 0;
    ModuleDescriptor image;
  };

  Source analyze(int s, const StabilizationPolicy& policy) {
    const auto& ring = ind_.spec()->ring();
    Source out;
    ScalarMatrix v = slice(s).cycles;
    ModuleDescriptor prev;
    int run = 0;
    for (int t = s; t <= policy.cutoff; ++t) {
      if (t > s) v = multiply(ring, map_slice(t - 1), v);
      ModuleDescriptor desc = subquotient(v, slice(t).boundaries, ring);
      if (desc.is_zero()) {
        out.stabilized = true;
        out.stage = t;
        return out;
      }
      run = (t > s && desc == prev) ? run + 1 : 1;
      if (run >= policy.agreement) {
        out.stabilized = true;
        out.stage = t;
        out.image = std::move(desc);
        return out;
      }
      prev = std::move(desc);
    }
    out.stage = policy.cutoff;
    out.image = std::move(prev);
    return out;
  }

 private:
  const IndComplex& ind_;
  int c_;
  long d_;
  std::map<int, StageSlice> slices_;
  std::map<int, ScalarMatrix> maps_;
};

struct BidegreeVerdict {
  enum class Kind { kEmpty, kZero, kNonzero, kInconclusive } kind = Kind::kEmpty;
  ModuleDescriptor descriptor;
  int stage = 0;
};

int last_source(const StabilizationPolicy& policy) { return std::max(0, policy.cutoff - policy.agreement); }

std::pair<int, int> chain_span(const IndComplex& ind, const StabilizationPolicy& policy) {
  const int stages = ind.is_uniform() ? 0 : policy.cutoff;
  int lo = INT_MAX, hi = INT_MIN;
  for (int t = 0; t <= stages; ++t) {
    const FreeComplex& x = ind.stage(t);
    if (x.has_no_generators()) continue;
    lo = std::min(lo, x.min_chain());
    hi = std::max(hi, x.max_chain());
  }
  return {lo, hi};
}

// stop_on_nonzero: return as soon as one source gives a stabilized nonzero image.
BidegreeVerdict evaluate(const IndComplex& ind, int c, long d, const StabilizationPolicy& policy, bool stop_on_nonzero) {
  BidegreeVerdict verdict;
  if (ind.is_constant()) {
    if (slice_dimension(ind.stage(0), c, d) == 0) return verdict;
    verdict.descriptor = homology_at(ind.stage(0), c, d);
    verdict.kind = verdict.descriptor.is_zero() ? BidegreeVerdict::Kind::kZero : BidegreeVerdict::Kind::kNonzero;
    return verdict;
  }
  BidegreeSystem sys(ind, c, d);
  const int stages = ind.is_uniform() ? 0 : policy.cutoff;
  bool any = false;
  for (int t = 0; t <= stages && !any; ++t) any = sys.dimension(t) > 0;
  if (!any) return verdict;
  const int sources = ind.is_uniform() ? 0 : last_source(policy);
  verdict.kind = BidegreeVerdict::Kind::kZero;
  for (int s = 0; s <= sources; ++s) {
    if (sys.dimension(s) == 0) continue;
    auto src = sys.analyze(s, policy);
    if (!src.stabilized) {
      // A zero prefix of agreement + 1 sources settles a non-uniform system.
      const bool settled = !ind.is_uniform() && verdict.kind == BidegreeVerdict::Kind::kZero && s > policy.agreement;
      if (!settled) {
        verdict.kind = BidegreeVerdict::Kind::kInconclusive;
        verdict.stage = policy.cutoff;
      }
      return verdict;
    }
    verdict.stage = std::max(verdict.stage, src.stage);
    if (!src.image.is_zero()) {
      verdict.kind = BidegreeVerdict::Kind::kNonzero;
      verdict.descriptor = src.image;
      if (stop_on_nonzero) return verdict;
    }
  }
  return verdict;
}

}  // namespace

IndHomology telescope_homology(const IndComplex& ind, const DegreeWindow& w, const StabilizationPolicy& policy) {
  IndHomology out;
  out.table.window = w;
  out.report.uniform = ind.is_uniform();
  if (ind.vanishing_steps()) return out;
  auto [lo, hi] = chain_span(ind, policy);
  for (int c = std::max(lo, w.c_lo); c <= std::min(hi, w.c_hi); ++c) {
    for (long d = w.lo; d <= w.hi; ++d) {
      BidegreeVerdict v = evaluate(ind, c, d, policy, false);
      switch (v.kind) {
        case BidegreeVerdict::Kind::kEmpty: break;
        case BidegreeVerdict::Kind::kZero: out.report.stabilized_stage[{c, d}] = v.stage; break;
        case BidegreeVerdict::Kind::kNonzero:
          out.report.stabilized_stage[{c, d}] = v.stage;
          out.table.entries[{c, d}] = v.descriptor;
          break;
        case BidegreeVerdict::Kind::kInconclusive: out.report.inconclusive.push_back({c, d}); break;
      }
    }
  }
  return out;
}

IndHomology telescope_homology(const FreeComplex& x, const ChainMap& f, const DegreeWindow& w,
                               const StabilizationPolicy& policy) {
  if (!(f.source() == x) || !(f.target() == x)) throw Error(ErrorKind::kInvalidChainMap, "telescope needs a self-map");
  IndComplex ind(x.spec(), [x](int) { return x; }, [f](int) { return f; }, true, false);
  return telescope_homology(ind, w, policy);
}

Nullity ind_is_zero(const IndComplex& ind, const DegreeWindow& w, const StabilizationPolicy& policy) {
  if (ind.is_constant()) return is_zero_in_window(ind.stage(0), w);
  if (ind.vanishing_steps()) return Nullity{};
  auto [lo, hi] = chain_span(ind, policy);
  std::optional<Bidegree> undecided;
  for (int c = std::max(lo, w.c_lo); c <= std::min(hi, w.c_hi); ++c) {
    for (long d = w.lo; d <= w.hi; ++d) {
      BidegreeVerdict v = evaluate(ind, c, d, policy, true);
      if (v.kind == BidegreeVerdict::Kind::kNonzero) {
        Nullity n;
        n.status = Nullity::Status::kWitness;
        n.bidegree = Bidegree{c, d};
        n.descriptor = v.descriptor;
        return n;
      }
      if (v.kind == BidegreeVerdict::Kind::kInconclusive && !undecided) undecided = Bidegree{c, d};
    }
  }
  Nullity n;
  if (undecided) {
    n.status = Nullity::Status::kInconclusive;
    n.bidegree = undecided;
    n.reason = "no stabilization by stage " + std::to_string(policy.cutoff);
  }
  return n;
}

}  // namespace bousfield
