#include "bousfield/complexes.hpp"

#include <algorithm>
#include <sstream>

#include "bousfield/error.hpp"

namespace bousfield {

namespace {

const std::vector<long>& empty_degrees() {
  static const std::vector<long> kEmpty;
  return kEmpty;
}

void check_homogeneous(const AlgebraMatrix& m, const std::vector<long>& src, const std::vector<long>& tgt,
                       ErrorKind kind, const std::string& what) {
  for (const auto& e : m.entries()) {
    if (!e.value.is_homogeneous() || e.value.degree() != src[e.col] - tgt[e.row]) {
      throw Error(kind, what + ": entry (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") = " +
                            e.value.to_string() + " has the wrong internal degree");
    }
  }
}

}  // namespace

AlgebraMatrix matrix_product(const AlgebraMatrix& a, const AlgebraMatrix& b, const SpecPtr& spec) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::kInvalidArgument, "matrix product shape mismatch");
  std::map<std::pair<std::size_t, std::size_t>, AlgebraElement> acc;
  // Index b by row for the inner loop.
  std::vector<std::vector<const AlgebraMatrix::Entry*>> by_row(b.rows());
  for (const auto& e : b.entries()) by_row[e.row].push_back(&e);
  for (const auto& ea : a.entries()) {
    for (const auto* eb : by_row[ea.col]) {
      auto key = std::make_pair(ea.row, eb->col);
      auto prod = algebra_mul(ea.value, eb->value);
      auto it = acc.find(key);
      if (it == acc.end()) {
        acc.emplace(key, std::move(prod));
      } else {
        it->second = algebra_add(it->second, prod);
      }
    }
  }
  AlgebraMatrix out(a.rows(), b.cols());
  for (auto& [k, v] : acc) {
    if (!v.is_zero()) out.set(k.first, k.second, std::move(v));
  }
  (void)spec;
  return out;
}

AlgebraMatrix matrix_sum(const AlgebraMatrix& a, const AlgebraMatrix& b, const SpecPtr& spec) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::kInvalidArgument, "matrix sum shape mismatch");
  AlgebraMatrix out = a;
  for (const auto& e : b.entries()) {
    const AlgebraElement* cur = out.find(e.row, e.col);
    out.set(e.row, e.col, cur ? algebra_add(*cur, e.value) : e.value);
  }
  (void)spec;
  return out;
}

AlgebraMatrix matrix_scale(const AlgebraMatrix& a, const AlgebraElement& s) {
  AlgebraMatrix out(a.rows(), a.cols());
  for (const auto& e : a.entries()) out.set(e.row, e.col, algebra_mul(s, e.value));
  return out;
}

AlgebraMatrix identity_matrix(const SpecPtr& spec, std::size_t n) {
  AlgebraMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, AlgebraElement::one(spec));
  return out;
}

FreeComplex::FreeComplex(SpecPtr spec, std::map<int, std::vector<long>> generators,
                         std::map<int, AlgebraMatrix> differentials)
    : spec_(std::move(spec)) {
  if (!spec_) throw Error(ErrorKind::kInvalidComplex, "missing algebra spec");
  for (auto& [c, g] : generators) {
    if (!g.empty()) generators_.emplace(c, std::move(g));
  }
  for (auto& [c, m] : differentials) {
    const auto& src = this->generators(c);
    const auto& tgt = this->generators(c - 1);
    if (m.rows() != tgt.size() || m.cols() != src.size()) {
      throw Error(ErrorKind::kInvalidComplex, "differential d_" + std::to_string(c) + " has shape " +
                                                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    for (const auto& e : m.entries()) require_same_spec(e.value.spec(), spec_);
    check_homogeneous(m, src, tgt, ErrorKind::kInvalidComplex, "d_" + std::to_string(c));
    if (!m.is_zero()) differentials_.emplace(c, std::move(m));
  }
  for (const auto& [c, m] : differentials_) {
    auto it = differentials_.find(c - 1);
    if (it == differentials_.end()) continue;
    if (!matrix_product(it->second, m, spec_).is_zero()) {
      throw Error(ErrorKind::kInvalidComplex, "d_" + std::to_string(c - 1) + " d_" + std::to_string(c) + " != 0");
    }
  }
}

FreeComplex FreeComplex::unit(SpecPtr spec, long internal_degree) {
  return FreeComplex(std::move(spec), {{0, {internal_degree}}}, {});
}

const std::vector<long>& FreeComplex::generators(int c) const {
  auto it = generators_.find(c);
  return it == generators_.end() ? empty_degrees() : it->second;
}

AlgebraMatrix FreeComplex::differential(int c) const {
  auto it = differentials_.find(c);
  if (it != differentials_.end()) return it->second;
  return AlgebraMatrix(rank(c - 1), rank(c));
}

int FreeComplex::min_chain() const { return generators_.empty() ? 0 : generators_.begin()->first; }
int FreeComplex::max_chain() const { return generators_.empty() ? 0 : generators_.rbegin()->first; }

long FreeComplex::min_generator_degree() const {
  long m = 0;
  bool first = true;
  for (const auto& [c, g] : generators_) {
    for (long d : g) {
      if (first || d < m) m = d;
      first = false;
    }
  }
  return m;
}

bool operator==(const FreeComplex& a, const FreeComplex& b) {
  if (a.spec_ != b.spec_ && (!a.spec_ || !b.spec_ || *a.spec_ != *b.spec_)) return false;
  return a.generators_ == b.generators_ && a.differentials_ == b.differentials_;
}

ChainMap::ChainMap(FreeComplex source, FreeComplex target, std::map<int, AlgebraMatrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  try {
    require_same_spec(source_.spec(), target_.spec());
  } catch (const Error& e) {
    throw Error(ErrorKind::kSpecMismatch, e.what());
  }
  const auto& spec = source_.spec();
  for (auto& [c, m] : components) {
    const auto& src = source_.generators(c);
    const auto& tgt = target_.generators(c);
    if (m.rows() != tgt.size() || m.cols() != src.size()) {
      throw Error(ErrorKind::kInvalidChainMap, "component " + std::to_string(c) + " has the wrong shape");
    }
    check_homogeneous(m, src, tgt, ErrorKind::kInvalidChainMap, "f_" + std::to_string(c));
    if (!m.is_zero()) components_.emplace(c, std::move(m));
  }
  int lo = std::min(source_.min_chain(), target_.min_chain());
  int hi = std::max(source_.max_chain(), target_.max_chain()) + 1;
  for (int c = lo; c <= hi; ++c) {
    AlgebraMatrix lhs = matrix_product(target_.differential(c), component(c), spec);
    AlgebraMatrix rhs = matrix_product(component(c - 1), source_.differential(c), spec);
    if (!(lhs == rhs)) throw Error(ErrorKind::kInvalidChainMap, "d f != f d in chain degree " + std::to_string(c));
  }
}

AlgebraMatrix ChainMap::component(int c) const {
  auto it = components_.find(c);
  if (it != components_.end()) return it->second;
  return AlgebraMatrix(target_.rank(c), source_.rank(c));
}

FreeComplex shift(const FreeComplex& x, int s) {
  std::map<int, std::vector<long>> gens;
  for (const auto& [c, g] : x.generator_map()) gens.emplace(c + s, g);
  std::map<int, AlgebraMatrix> diffs;
  const bool negate = (s % 2) != 0;
  const AlgebraElement minus_one = AlgebraElement::from_int(x.spec(), -1);
  for (const auto& [c, m] : x.differential_map()) diffs.emplace(c + s, negate ? matrix_scale(m, minus_one) : m);
  return FreeComplex(x.spec(), std::move(gens), std::move(diffs));
}

FreeComplex internal_shift(const FreeComplex& x, long k) {
  std::map<int, std::vector<long>> gens;
  for (const auto& [c, g] : x.generator_map()) {
    std::vector<long> shifted = g;
    for (long& d : shifted) d += k;
    gens.emplace(c, std::move(shifted));
  }
  return FreeComplex(x.spec(), std::move(gens), x.differential_map());
}

namespace {

// Copies block into out at (row_off, col_off), optionally multiplied by factor.
void place(AlgebraMatrix& out, const AlgebraMatrix& block, std::size_t row_off, std::size_t col_off,
           const AlgebraElement* factor = nullptr) {
  for (const auto& e : block.entries()) {
    out.set(row_off + e.row, col_off + e.col, factor ? algebra_mul(*factor, e.value) : e.value);
  }
}

std::vector<long> concat(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::pair<int, int> chain_range(const FreeComplex& a, const FreeComplex& b) {
  if (a.has_no_generators()) return {b.min_chain(), b.max_chain()};
  if (b.has_no_generators()) return {a.min_chain(), a.max_chain()};
  return {std::min(a.min_chain(), b.min_chain()), std::max(a.max_chain(), b.max_chain())};
}

}  // namespace

FreeComplex cone(const ChainMap& phi) {
  const FreeComplex& x = phi.source();
  const FreeComplex& y = phi.target();
  const SpecPtr& spec = y.spec();
  const AlgebraElement minus_one = AlgebraElement::from_int(spec, -1);
  auto [lo, hi] = chain_range(x, y);
  hi += 1;
  std::map<int, std::vector<long>> gens;
  for (int c = lo; c <= hi; ++c) gens.emplace(c, concat(y.generators(c), x.generators(c - 1)));
  std::map<int, AlgebraMatrix> diffs;
  for (int c = lo; c <= hi + 1; ++c) {
    const std::size_t yc = y.rank(c), xc1 = x.rank(c - 1);
    const std::size_t yc1 = y.rank(c - 1), xc2 = x.rank(c - 2);
    AlgebraMatrix d(yc1 + xc2, yc + xc1);
    place(d, y.differential(c), 0, 0);
    place(d, phi.component(c - 1), 0, yc);
    place(d, x.differential(c - 1), yc1, yc, &minus_one);
    diffs.emplace(c, std::move(d));
  }
  return FreeComplex(spec, std::move(gens), std::move(diffs));
}

FreeComplex fiber(const ChainMap& phi) { return shift(cone(phi), -1); }

FreeComplex direct_sum(const FreeComplex& x, const FreeComplex& y) {
  require_same_spec(x.spec(), y.spec());
  auto [lo, hi] = chain_range(x, y);
  std::map<int, std::vector<long>> gens;
  std::map<int, AlgebraMatrix> diffs;
  for (int c = lo; c <= hi; ++c) gens.emplace(c, concat(x.generators(c), y.generators(c)));
  for (int c = lo; c <= hi + 1; ++c) {
    AlgebraMatrix d(x.rank(c - 1) + y.rank(c - 1), x.rank(c) + y.rank(c));
    place(d, x.differential(c), 0, 0);
    place(d, y.differential(c), x.rank(c - 1), x.rank(c));
    diffs.emplace(c, std::move(d));
  }
  return FreeComplex(x.spec(), std::move(gens), std::move(diffs));
}

namespace {

// Generator layout of X ⊗ Y in chain n: blocks (a, n-a) for increasing a, each
// block row-major over (i in X_a, j in Y_{n-a}).
struct TensorLayout {
  std::map<int, std::vector<std::pair<int, std::size_t>>> blocks;  // n -> [(a, offset)]

  std::size_t offset(int n, int a) const {
    for (const auto& [aa, off] : blocks.at(n)) {
      if (aa == a) return off;
    }
    return SIZE_MAX;
  }
};

TensorLayout tensor_layout(const FreeComplex& x, const FreeComplex& y, std::map<int, std::vector<long>>* gens) {
  TensorLayout layout;
  for (const auto& [a, gx] : x.generator_map()) {
    for (const auto& [b, gy] : y.generator_map()) {
      (void)gx;
      (void)gy;
      layout.blocks[a + b];
    }
  }
  for (auto& [n, blocks] : layout.blocks) {
    std::size_t off = 0;
    std::vector<long> degs;
    for (const auto& [a, gx] : x.generator_map()) {
      const auto& gy = y.generators(n - a);
      if (gy.empty()) continue;
      blocks.emplace_back(a, off);
      for (long dx : gx) {
        for (long dy : gy) degs.push_back(dx + dy);
      }
      off += gx.size() * gy.size();
    }
    if (gens) gens->emplace(n, std::move(degs));
  }
  return layout;
}

}  // namespace

FreeComplex tensor(const FreeComplex& x, const FreeComplex& y) {
  require_same_spec(x.spec(), y.spec());
  const SpecPtr& spec = x.spec();
  std::map<int, std::vector<long>> gens;
  TensorLayout layout = tensor_layout(x, y, &gens);
  std::map<int, AlgebraMatrix> diffs;
  const AlgebraElement minus_one = AlgebraElement::from_int(spec, -1);
  for (const auto& [n, blocks] : layout.blocks) {
    if (!gens.count(n - 1)) continue;
    AlgebraMatrix d(gens.at(n - 1).size(), gens.at(n).size());
    for (const auto& [a, off] : blocks) {
      const int b = n - a;
      const std::size_t ny = y.rank(b);
      // dX ⊗ 1 into block (a-1, b)
      std::size_t t1 = layout.offset(n - 1, a - 1);
      if (t1 != SIZE_MAX) {
        const AlgebraMatrix dx = x.differential(a);
        for (const auto& e : dx.entries()) {
          for (std::size_t j = 0; j < ny; ++j) d.set(t1 + e.row * ny + j, off + e.col * ny + j, e.value);
        }
      }
      // (-1)^a 1 ⊗ dY into block (a, b-1)
      std::size_t t2 = layout.offset(n - 1, a);
      if (t2 != SIZE_MAX) {
        const std::size_t ny1 = y.rank(b - 1);
        const std::size_t nx = x.rank(a);
        const AlgebraMatrix dy = y.differential(b);
        for (const auto& e : dy.entries()) {
          AlgebraElement v = (a % 2 != 0) ? algebra_neg(e.value) : e.value;
          for (std::size_t i = 0; i < nx; ++i) d.set(t2 + i * ny1 + e.row, off + i * ny + e.col, v);
        }
      }
    }
    diffs.emplace(n, std::move(d));
  }
  return FreeComplex(spec, std::move(gens), std::move(diffs));
}

ChainMap identity_map(const FreeComplex& x) {
  std::map<int, AlgebraMatrix> comps;
  for (const auto& [c, g] : x.generator_map()) comps.emplace(c, identity_matrix(x.spec(), g.size()));
  return ChainMap(x, x, std::move(comps));
}

ChainMap zero_map(const FreeComplex& source, const FreeComplex& target) { return ChainMap(source, target, {}); }

ChainMap multiplication_map(const FreeComplex& x, const AlgebraElement& a) {
  if (!a.is_homogeneous()) throw Error(ErrorKind::kInvalidArgument, "multiplication by a non-homogeneous element");
  require_same_spec(a.spec(), x.spec());
  return scalar_map(internal_shift(x, a.degree()), x, a);
}

ChainMap scalar_map(const FreeComplex& source, const FreeComplex& target, const AlgebraElement& a) {
  std::map<int, AlgebraMatrix> comps;
  for (const auto& [c, g] : source.generator_map()) {
    if (target.rank(c) != g.size()) throw Error(ErrorKind::kInvalidChainMap, "scalar map between different shapes");
    AlgebraMatrix m(g.size(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i) m.set(i, i, a);
    comps.emplace(c, std::move(m));
  }
  return ChainMap(source, target, std::move(comps));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(f.target() == g.source())) throw Error(ErrorKind::kInvalidChainMap, "compose: target/source mismatch");
  std::map<int, AlgebraMatrix> comps;
  for (const auto& [c, gens] : f.source().generator_map()) {
    (void)gens;
    comps.emplace(c, matrix_product(g.component(c), f.component(c), f.source().spec()));
  }
  return ChainMap(f.source(), g.target(), std::move(comps));
}

ChainMap shift_map(const ChainMap& f, int s) {
  std::map<int, AlgebraMatrix> comps;
  for (const auto& [c, m] : f.component_map()) comps.emplace(c + s, m);
  return ChainMap(shift(f.source(), s), shift(f.target(), s), std::move(comps));
}

ChainMap internal_shift_map(const ChainMap& f, long k) {
  return ChainMap(internal_shift(f.source(), k), internal_shift(f.target(), k), f.component_map());
}

ChainMap sum_map(const ChainMap& f, const ChainMap& g) {
  FreeComplex src = direct_sum(f.source(), g.source());
  FreeComplex tgt = direct_sum(f.target(), g.target());
  std::map<int, AlgebraMatrix> comps;
  for (const auto& [c, gens] : src.generator_map()) {
    AlgebraMatrix m(tgt.rank(c), gens.size());
    place(m, f.component(c), 0, 0);
    place(m, g.component(c), f.target().rank(c), f.source().rank(c));
    comps.emplace(c, std::move(m));
  }
  return ChainMap(std::move(src), std::move(tgt), std::move(comps));
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  FreeComplex src = tensor(f.source(), g.source());
  FreeComplex tgt = tensor(f.target(), g.target());
  TensorLayout ls = tensor_layout(f.source(), g.source(), nullptr);
  TensorLayout lt = tensor_layout(f.target(), g.target(), nullptr);
  std::map<int, AlgebraMatrix> comps;
  for (const auto& [n, blocks] : ls.blocks) {
    if (!tgt.generator_map().count(n)) continue;
    AlgebraMatrix m(tgt.rank(n), src.rank(n));
    for (const auto& [a, off] : blocks) {
      const int b = n - a;
      std::size_t toff = lt.blocks.count(n) ? lt.offset(n, a) : SIZE_MAX;
      if (toff == SIZE_MAX) continue;
      const std::size_t ny = g.source().rank(b), ny_t = g.target().rank(b);
      AlgebraMatrix fa = f.component(a), gb = g.component(b);
      for (const auto& ef : fa.entries()) {
        for (const auto& eg : gb.entries()) {
          m.set(toff + ef.row * ny_t + eg.row, off + ef.col * ny + eg.col, algebra_mul(ef.value, eg.value));
        }
      }
    }
    comps.emplace(n, std::move(m));
  }
  return ChainMap(std::move(src), std::move(tgt), std::move(comps));
}

ChainMap cone_map(const ChainMap& phi, const ChainMap& psi, const ChainMap& alpha, const ChainMap& beta) {
  FreeComplex src = cone(phi);
  FreeComplex tgt = cone(psi);
  std::map<int, AlgebraMatrix> comps;
  for (const auto& [c, gens] : src.generator_map()) {
    if (!tgt.generator_map().count(c)) continue;
    AlgebraMatrix m(tgt.rank(c), gens.size());
    place(m, beta.component(c), 0, 0);
    place(m, alpha.component(c - 1), psi.target().rank(c), phi.target().rank(c));
    comps.emplace(c, std::move(m));
  }
  return ChainMap(std::move(src), std::move(tgt), std::move(comps));
}

std::string DegreeWindow::to_string() const {
  std::ostringstream os;
  os << "[" << lo << "," << hi << "]x[" << c_lo << "," << c_hi << "]";
  return os.str();
}

std::string ModuleDescriptor::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "R^" << free_rank;
    first = false;
  }
  std::map<int, int> counts;
  for (int k : torsion) ++counts[k];
  for (const auto& [k, n] : counts) {
    if (!first) os << " + ";
    os << "(Z/p^" << k << ")";
    if (n > 1) os << "^" << n;
    first = false;
  }
  return os.str();
}

ModuleDescriptor HomologyTable::at(int c, long d) const {
  auto it = entries.find({c, d});
  return it == entries.end() ? ModuleDescriptor{} : it->second;
}

std::string HomologyTable::to_string() const {
  std::ostringstream os;
  for (const auto& [bd, desc] : entries) os << "(" << bd.first << "," << bd.second << "): " << desc.to_string() << "\n";
  return os.str();
}

ScalarMatrix slice_matrix(const AlgebraMatrix& m, const std::vector<long>& source_degrees,
                          const std::vector<long>& target_degrees, const AlgebraSpec& spec, long d) {
  std::vector<std::size_t> src_off(source_degrees.size() + 1, 0), tgt_off(target_degrees.size() + 1, 0);
  for (std::size_t j = 0; j < source_degrees.size(); ++j) {
    src_off[j + 1] = src_off[j] + spec.basis(d - source_degrees[j]).size();
  }
  for (std::size_t i = 0; i < target_degrees.size(); ++i) {
    tgt_off[i + 1] = tgt_off[i] + spec.basis(d - target_degrees[i]).size();
  }
  ScalarMatrix out(tgt_off.back(), src_off.back());
  if (out.rows() == 0 || out.cols() == 0) return out;
  const auto& ring = spec.ring();
  for (const auto& e : m.entries()) {
    const auto& src_basis = spec.basis(d - source_degrees[e.col]);
    for (std::size_t k = 0; k < src_basis.size(); ++k) {
      for (const auto& [mono, coeff] : e.value.terms()) {
        Monomial prod = mono.times(src_basis[k]);
        if (!prod.legal(spec)) continue;
        long idx = spec.basis_index(prod);
        if (idx < 0) continue;
        Scalar& cell = out.at(tgt_off[e.row] + static_cast<std::size_t>(idx), src_off[e.col] + k);
        cell = ring.add(cell, coeff);
      }
    }
  }
  return out;
}

std::size_t slice_dimension(const FreeComplex& x, int c, long d) {
  std::size_t n = 0;
  for (long g : x.generators(c)) n += x.spec()->basis(d - g).size();
  return n;
}

namespace {

std::vector<int> differential_slice_valuations(const FreeComplex& x, int c, long d) {
  if (slice_dimension(x, c, d) == 0 || slice_dimension(x, c - 1, d) == 0) return {};
  auto dc = x.differential_map().find(c);
  if (dc == x.differential_map().end()) return {};
  ScalarMatrix m = slice_matrix(dc->second, x.generators(c), x.generators(c - 1), *x.spec(), d);
  return smith_valuations(m, x.spec()->ring());
}

ModuleDescriptor descriptor_from(std::size_t n, const std::vector<int>& out_vals, const std::vector<int>& in_vals) {
  ModuleDescriptor desc;
  desc.free_rank = static_cast<long>(n) - static_cast<long>(out_vals.size()) - static_cast<long>(in_vals.size());
  for (int v : in_vals) {
    if (v > 0) desc.torsion.push_back(v);
  }
  std::sort(desc.torsion.begin(), desc.torsion.end());
  return desc;
}

}  // namespace

ModuleDescriptor homology_at(const FreeComplex& x, int c, long d) {
  const std::size_t n = slice_dimension(x, c, d);
  if (n == 0) return {};
  return descriptor_from(n, differential_slice_valuations(x, c, d), differential_slice_valuations(x, c + 1, d));
}

HomologyTable homology(const FreeComplex& x, const DegreeWindow& w) {
  HomologyTable table;
  table.window = w;
  for (long d = w.lo; d <= w.hi; ++d) {
    std::vector<int> out_vals = differential_slice_valuations(x, w.c_lo, d);
    for (int c = w.c_lo; c <= w.c_hi; ++c) {
      std::vector<int> in_vals = differential_slice_valuations(x, c + 1, d);
      const std::size_t n = slice_dimension(x, c, d);
      if (n > 0) {
        ModuleDescriptor desc = descriptor_from(n, out_vals, in_vals);
        if (!desc.is_zero()) table.entries.emplace(Bidegree{c, d}, std::move(desc));
      }
      out_vals = std::move(in_vals);
    }
  }
  return table;
}

const char* status_name(Nullity::Status s) {
  switch (s) {
    case Nullity::Status::kZeroInWindow: return "ZeroInWindow";
    case Nullity::Status::kWitness: return "Witness";
    case Nullity::Status::kInconclusive: return "Inconclusive";
  }
  return "?";
}

std::string Nullity::to_string() const {
  std::string s = status_name(status);
  if (bidegree) {
    s += "(" + std::to_string(bidegree->first) + "," + std::to_string(bidegree->second) + ": " +
         descriptor.to_string() + ")";
  }
  if (!reason.empty()) s += " [" + reason + "]";
  return s;
}

Nullity is_zero_in_window(const FreeComplex& x, const DegreeWindow& w) {
  for (int c = w.c_lo; c <= w.c_hi; ++c) {
    if (x.generators(c).empty()) continue;
    for (long d = w.lo; d <= w.hi; ++d) {
      ModuleDescriptor desc = homology_at(x, c, d);
      if (!desc.is_zero()) {
        Nullity n;
        n.status = Nullity::Status::kWitness;
        n.bidegree = Bidegree{c, d};
        n.descriptor = std::move(desc);
        return n;
      }
    }
  }
  return Nullity{};
}

}  // namespace bousfield
