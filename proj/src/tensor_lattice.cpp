#include "bousfield/tensor_lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "bousfield/error.hpp"

namespace bousfield {

namespace {

using Order = std::vector<std::vector<bool>>;
using Table = FiniteTensorLattice::Table;

std::string pair_text(const FiniteTensorLattice& l, int a, int b) {
  return "(" + l.label(a) + ", " + l.label(b) + ")";
}

// Least element of `candidates` under `leq`, or -1.
int least(const Order& leq, const std::vector<int>& candidates) {
  for (int c : candidates) {
    if (std::all_of(candidates.begin(), candidates.end(), [&](int d) { return leq[c][d]; })) return c;
  }
  return -1;
}

int greatest(const Order& leq, const std::vector<int>& candidates) {
  for (int c : candidates) {
    if (std::all_of(candidates.begin(), candidates.end(), [&](int d) { return leq[d][c]; })) return c;
  }
  return -1;
}

void check_square(std::size_t n, const Order& leq, const std::vector<const Table*>& tables) {
  bool ok = leq.size() == n;
  for (const auto& row : leq) ok = ok && row.size() == n;
  for (const Table* t : tables) {
    ok = ok && t->size() == n;
    for (const auto& row : *t) {
      ok = ok && row.size() == n;
      for (int v : row) ok = ok && v >= 0 && static_cast<std::size_t>(v) < n;
    }
  }
  if (!ok) throw Error(ErrorKind::kAxiomViolation, "lattice tables have the wrong shape");
}

}  // namespace

FiniteTensorLattice FiniteTensorLattice::from_order(std::vector<std::string> labels, std::vector<std::vector<bool>> leq,
                                                    Table tensor) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorKind::kAxiomViolation, "a lattice needs at least one element");
  check_square(n, leq, {&tensor});
  FiniteTensorLattice l;
  l.labels_ = std::move(labels);
  l.leq_ = std::move(leq);
  l.tensor_ = std::move(tensor);
  l.join_.assign(n, std::vector<int>(n, 0));
  l.meet_.assign(n, std::vector<int>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<int> upper, lower;
      for (std::size_t c = 0; c < n; ++c) {
        if (l.leq_[a][c] && l.leq_[b][c]) upper.push_back(static_cast<int>(c));
        if (l.leq_[c][a] && l.leq_[c][b]) lower.push_back(static_cast<int>(c));
      }
      const int j = least(l.leq_, upper);
      const int m = greatest(l.leq_, lower);
      if (j < 0 || m < 0) {
        throw Error(ErrorKind::kAxiomViolation, "no " + std::string(j < 0 ? "join" : "meet") + " for " +
                                                    pair_text(l, static_cast<int>(a), static_cast<int>(b)));
      }
      l.join_[a][b] = j;
      l.meet_[a][b] = m;
    }
  }
  std::vector<int> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
  l.bottom_ = least(l.leq_, all);
  l.max_ = greatest(l.leq_, all);
  if (l.bottom_ < 0 || l.max_ < 0) throw Error(ErrorKind::kAxiomViolation, "no bottom or no top");
  return l;
}

FiniteTensorLattice FiniteTensorLattice::from_tables(std::vector<std::string> labels,
                                                     std::vector<std::vector<bool>> leq, Table join, Table meet,
                                                     Table tensor) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorKind::kAxiomViolation, "a lattice needs at least one element");
  check_square(n, leq, {&join, &meet, &tensor});
  FiniteTensorLattice l;
  l.labels_ = std::move(labels);
  l.leq_ = std::move(leq);
  l.join_ = std::move(join);
  l.meet_ = std::move(meet);
  l.tensor_ = std::move(tensor);
  std::vector<int> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
  l.bottom_ = std::max(0, least(l.leq_, all));
  l.max_ = std::max(0, greatest(l.leq_, all));
  return l;
}

int FiniteTensorLattice::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

bool FiniteTensorLattice::is_unital() const {
  for (int x = 0; x < size(); ++x) {
    if (tensor(x, max_) != x) return false;
  }
  return true;
}

bool operator==(const FiniteTensorLattice& a, const FiniteTensorLattice& b) {
  return a.labels_ == b.labels_ && a.leq_ == b.leq_ && a.join_ == b.join_ && a.meet_ == b.meet_ &&
         a.tensor_ == b.tensor_;
}

ValidationReport validate(const FiniteTensorLattice& l) {
  ValidationReport r;
  const int n = l.size();
  auto fail = [&](const std::string& what, int a, int b) { r.violations.push_back(what + " at " + pair_text(l, a, b)); };
  for (int a = 0; a < n; ++a) {
    if (!l.leq(a, a)) fail("order not reflexive", a, a);
    if (!l.leq(l.bottom(), a)) fail("bottom not below", l.bottom(), a);
    if (!l.leq(a, l.max())) fail("Max not above", a, l.max());
    if (l.tensor(l.bottom(), a) != l.bottom()) fail("bottom does not absorb", l.bottom(), a);
    for (int b = 0; b < n; ++b) {
      if (a != b && l.leq(a, b) && l.leq(b, a)) fail("order not antisymmetric", a, b);
      for (int c = 0; c < n; ++c) {
        if (l.leq(a, b) && l.leq(b, c) && !l.leq(a, c)) fail("order not transitive", a, c);
      }
      const int j = l.join(a, b), m = l.meet(a, b), t = l.tensor(a, b);
      bool lub = l.leq(a, j) && l.leq(b, j);
      bool glb = l.leq(m, a) && l.leq(m, b);
      for (int c = 0; c < n; ++c) {
        if (l.leq(a, c) && l.leq(b, c) && !l.leq(j, c)) lub = false;
        if (l.leq(c, a) && l.leq(c, b) && !l.leq(c, m)) glb = false;
      }
      if (!lub) fail("join is not the least upper bound", a, b);
      if (!glb) fail("meet is not the greatest lower bound", a, b);
      if (t != l.tensor(b, a)) fail("tensor not commutative", a, b);
      if (!l.leq(t, m)) fail("tensor exceeds meet", a, b);
      for (int c = 0; c < n; ++c) {
        if (l.leq(a, c) && !l.leq(t, l.tensor(c, b))) fail("tensor not monotone", a, c);
        if (l.tensor(a, l.join(b, c)) != l.join(t, l.tensor(a, c))) fail("tensor does not distribute over join", a, b);
      }
    }
  }
  return r;
}

bool is_associative(const FiniteTensorLattice& l) {
  for (int a = 0; a < l.size(); ++a) {
    for (int b = 0; b < l.size(); ++b) {
      for (int c = 0; c < l.size(); ++c) {
        if (l.tensor(l.tensor(a, b), c) != l.tensor(a, l.tensor(b, c))) return false;
      }
    }
  }
  return true;
}

void require_valid(const FiniteTensorLattice& l) {
  ValidationReport r = validate(l);
  if (r.ok()) return;
  std::string text;
  for (std::size_t i = 0; i < r.violations.size() && i < 8; ++i) text += (i ? "; " : "") + r.violations[i];
  if (r.violations.size() > 8) text += "; ...";
  throw Error(ErrorKind::kAxiomViolation, text);
}

int complement_op(const FiniteTensorLattice& l, int z) {
  int out = l.bottom();
  for (int y = 0; y < l.size(); ++y) {
    if (l.tensor(y, z) == l.bottom()) out = l.join(out, y);
  }
  return out;
}

std::vector<int> dl_elements(const FiniteTensorLattice& l) {
  std::vector<int> out;
  for (int x = 0; x < l.size(); ++x) {
    if (l.tensor(x, x) == x) out.push_back(x);
  }
  return out;
}

std::vector<int> ba_elements(const FiniteTensorLattice& l) {
  std::vector<int> out;
  for (int x = 0; x < l.size(); ++x) {
    if (l.tensor(x, x) != x) continue;
    for (int y = 0; y < l.size(); ++y) {
      if (l.tensor(y, y) == y && l.tensor(x, y) == l.bottom() && l.join(x, y) == l.max()) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

std::vector<int> square_zero_elements(const FiniteTensorLattice& l) {
  std::vector<int> out;
  for (int x = 0; x < l.size(); ++x) {
    if (x != l.bottom() && l.tensor(x, x) == l.bottom()) out.push_back(x);
  }
  return out;
}

namespace {

std::vector<std::vector<bool>> annihilators(const FiniteTensorLattice& l) {
  std::vector<std::vector<bool>> ann(l.size(), std::vector<bool>(l.size()));
  for (int x = 0; x < l.size(); ++x) {
    for (int w = 0; w < l.size(); ++w) ann[x][w] = l.tensor(w, x) == l.bottom();
  }
  return ann;
}

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

}  // namespace

bool is_separated(const FiniteTensorLattice& l) {
  const auto ann = annihilators(l);
  for (int x = 0; x < l.size(); ++x) {
    for (int y = 0; y < l.size(); ++y) {
      if (l.leq(x, y) != subset(ann[y], ann[x])) return false;
    }
  }
  return true;
}

LatticeIdeal make_ideal(const FiniteTensorLattice& l, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) throw Error(ErrorKind::kInvalidIdeal, "an ideal is nonempty");
  std::vector<bool> in(l.size(), false);
  for (int m : members) {
    if (m < 0 || m >= l.size()) throw Error(ErrorKind::kInvalidIdeal, "element out of range");
    in[m] = true;
  }
  for (int m : members) {
    for (int x = 0; x < l.size(); ++x) {
      if (l.leq(x, m) && !in[x]) throw Error(ErrorKind::kInvalidIdeal, "not downward closed at " + l.label(x));
    }
    for (int k : members) {
      if (!in[l.join(m, k)]) throw Error(ErrorKind::kInvalidIdeal, "not closed under " + pair_text(l, m, k));
    }
  }
  LatticeIdeal j;
  j.members = std::move(members);
  const int top = greatest([&] {
    Order leq(l.size(), std::vector<bool>(l.size()));
    for (int a = 0; a < l.size(); ++a) {
      for (int b = 0; b < l.size(); ++b) leq[a][b] = l.leq(a, b);
    }
    return leq;
  }(), j.members);
  if (top >= 0) j.generator = top;
  return j;
}

LatticeIdeal principal_ideal(const FiniteTensorLattice& l, int a) {
  std::vector<int> members;
  for (int x = 0; x < l.size(); ++x) {
    if (l.leq(x, a)) members.push_back(x);
  }
  return make_ideal(l, members);
}

QuotientLattice quotient_by_ideal(const FiniteTensorLattice& l, const LatticeIdeal& j) {
  const int n = l.size();
  QuotientLattice q;
  q.class_of.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (q.class_of[a] >= 0) continue;
    const int id = static_cast<int>(q.classes.size());
    q.classes.emplace_back();
    for (int b = a; b < n; ++b) {
      if (q.class_of[b] >= 0) continue;
      const bool same = std::any_of(j.members.begin(), j.members.end(),
                                    [&](int c) { return l.join(a, c) == l.join(b, c); });
      if (same) {
        q.class_of[b] = id;
        q.classes[id].push_back(b);
      }
    }
  }
  const int k = static_cast<int>(q.classes.size());
  q.join.assign(k, std::vector<int>(k, 0));
  q.leq.assign(k, std::vector<bool>(k, false));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      q.join[a][b] = q.class_of[l.join(q.classes[a][0], q.classes[b][0])];
      q.leq[a][b] = q.join[a][b] == b;
    }
  }
  q.meet.assign(k, std::vector<int>(k, 0));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      std::vector<int> lower;
      for (int c = 0; c < k; ++c) {
        if (q.leq[c][a] && q.leq[c][b]) lower.push_back(c);
      }
      q.meet[a][b] = greatest(q.leq, lower);
    }
  }
  q.join_preserving = q.meet_preserving = true;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (q.class_of[l.join(a, b)] != q.join[q.class_of[a]][q.class_of[b]]) q.join_preserving = false;
      if (q.class_of[l.meet(a, b)] != q.meet[q.class_of[a]][q.class_of[b]]) q.meet_preserving = false;
    }
  }
  return q;
}

bool principal_quotient_iso(const FiniteTensorLattice& l, int a) {
  QuotientLattice q = quotient_by_ideal(l, principal_ideal(l, a));
  const int k = static_cast<int>(q.classes.size());
  std::vector<int> image(k);
  std::set<int> seen;
  for (int c = 0; c < k; ++c) {
    image[c] = l.join(q.classes[c][0], a);
    for (int x : q.classes[c]) {
      if (l.join(x, a) != image[c]) return false;
    }
    seen.insert(image[c]);
  }
  std::set<int> up;
  for (int x = 0; x < l.size(); ++x) {
    if (l.leq(a, x)) up.insert(x);
  }
  if (seen != up || static_cast<int>(seen.size()) != k) return false;
  for (int c = 0; c < k; ++c) {
    for (int d = 0; d < k; ++d) {
      if (q.leq[c][d] != l.leq(image[c], image[d])) return false;
    }
  }
  return true;
}

FiniteTensorLattice product(const FiniteTensorLattice& k, const FiniteTensorLattice& l) {
  const int a = k.size(), b = l.size(), n = a * b;
  std::vector<std::string> labels;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) labels.push_back("(" + k.label(i) + "," + l.label(j) + ")");
  }
  Order leq(n, std::vector<bool>(n));
  Table join(n, std::vector<int>(n)), meet = join, tensor = join;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int xi = x / b, xj = x % b, yi = y / b, yj = y % b;
      leq[x][y] = k.leq(xi, yi) && l.leq(xj, yj);
      join[x][y] = k.join(xi, yi) * b + l.join(xj, yj);
      meet[x][y] = k.meet(xi, yi) * b + l.meet(xj, yj);
      tensor[x][y] = k.tensor(xi, yi) * b + l.tensor(xj, yj);
    }
  }
  return FiniteTensorLattice::from_tables(std::move(labels), std::move(leq), std::move(join), std::move(meet),
                                          std::move(tensor));
}

bool product_quotient_iso(const FiniteTensorLattice& k, const FiniteTensorLattice& l) {
  FiniteTensorLattice p = product(k, l);
  const int b = l.size();
  std::vector<int> members;
  for (int j = 0; j < b; ++j) members.push_back(k.bottom() * b + j);
  QuotientLattice q = quotient_by_ideal(p, make_ideal(p, members));
  if (static_cast<int>(q.classes.size()) != k.size()) return false;
  std::vector<int> image(q.classes.size());
  std::set<int> seen;
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    image[c] = q.classes[c][0] / b;
    for (int x : q.classes[c]) {
      if (x / b != image[c]) return false;
    }
    seen.insert(image[c]);
  }
  if (static_cast<int>(seen.size()) != k.size()) return false;
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    for (std::size_t d = 0; d < q.classes.size(); ++d) {
      if (q.leq[c][d] != k.leq(image[c], image[d])) return false;
    }
  }
  return true;
}

FiniteTensorLattice down_set(const FiniteTensorLattice& l, int z) {
  std::vector<int> members;
  std::vector<int> pos(l.size(), -1);
  for (int x = 0; x < l.size(); ++x) {
    if (l.leq(x, z)) {
      pos[x] = static_cast<int>(members.size());
      members.push_back(x);
    }
  }
  const int n = static_cast<int>(members.size());
  std::vector<std::string> labels;
  for (int x : members) labels.push_back(l.label(x));
  Order leq(n, std::vector<bool>(n));
  Table join(n, std::vector<int>(n)), meet = join, tensor = join;
  auto at = [&](int x) {
    if (pos[x] < 0) throw Error(ErrorKind::kAxiomViolation, "down-set of " + l.label(z) + " is not closed");
    return pos[x];
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      leq[i][j] = l.leq(members[i], members[j]);
      join[i][j] = at(l.join(members[i], members[j]));
      meet[i][j] = at(l.meet(members[i], members[j]));
      tensor[i][j] = at(l.tensor(members[i], members[j]));
    }
  }
  return FiniteTensorLattice::from_tables(std::move(labels), std::move(leq), std::move(join), std::move(meet),
                                          std::move(tensor));
}

QuotientMapReport quotient_map_analysis(const FiniteTensorLattice& l, int z) {
  if (!l.is_unital()) throw Error(ErrorKind::kNotUnital, "quotient map analysis needs a unital model");
  QuotientMapReport r;
  r.z = z;
  r.a_z = complement_op(l, z);
  r.complemented = l.join(z, r.a_z) == l.max();
  r.idempotent = l.tensor(z, z) == z;
  r.model_note = "the tensor image {x∧z} with the order of L stands in for the lattice of the quotient category";
  QuotientLattice q = quotient_by_ideal(l, principal_ideal(l, r.a_z));
  const int k = static_cast<int>(q.classes.size());
  std::vector<int> image(k);
  r.well_defined = true;
  for (int c = 0; c < k; ++c) {
    image[c] = l.tensor(q.classes[c][0], z);
    for (int x : q.classes[c]) {
      if (l.tensor(x, z) != image[c]) r.well_defined = false;
    }
  }
  r.order_preserving = true;
  r.injective = true;
  for (int c = 0; c < k; ++c) {
    for (int d = 0; d < k; ++d) {
      if (q.leq[c][d] && !l.leq(image[c], image[d])) r.order_preserving = false;
      if (c < d && image[c] == image[d]) {
        r.injective = false;
        if (!r.witness) r.witness = std::make_pair(c, d);
      }
    }
  }
  const int cz = q.class_of[z], cmax = q.class_of[l.max()];
  if (cz != cmax && image[cz] == image[cmax]) r.witness = std::make_pair(cz, cmax);
  std::set<int> target;
  for (int x = 0; x < l.size(); ++x) target.insert(l.tensor(x, z));
  r.surjective = std::set<int>(image.begin(), image.end()) == target;
  if (r.complemented) {
    r.as_expected = r.well_defined && r.order_preserving && r.injective && r.surjective;
  } else if (r.idempotent) {
    r.as_expected = r.well_defined && !r.injective && r.witness == std::make_pair(cz, cmax);
  } else {
    r.as_expected = r.well_defined && r.order_preserving;
  }
  return r;
}

SplittingReport splitting_check(const FiniteTensorLattice& l, int z, int zc) {
  if (!l.is_unital()) throw Error(ErrorKind::kNotUnital, "splitting needs a unital model");
  if (l.tensor(z, zc) != l.bottom() || l.join(z, zc) != l.max()) {
    throw Error(ErrorKind::kNotComplementedPair, pair_text(l, z, zc) + " is not a complemented pair");
  }
  FiniteTensorLattice d1 = down_set(l, z), d2 = down_set(l, zc);
  auto pos = [](const FiniteTensorLattice& d, const FiniteTensorLattice& whole, int x) {
    return d.index_of(whole.label(x));
  };
  const int n = l.size();
  std::vector<std::pair<int, int>> phi(n);
  for (int x = 0; x < n; ++x) phi[x] = {l.tensor(x, z), l.tensor(x, zc)};
  SplittingReport r;
  std::set<std::pair<int, int>> images(phi.begin(), phi.end());
  r.bijective = static_cast<int>(images.size()) == n && n == d1.size() * d2.size();
  r.inverse_is_join = true;
  for (int x = 0; x < n; ++x) {
    if (l.join(phi[x].first, phi[x].second) != x) r.inverse_is_join = false;
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (!l.leq(u, z) || !l.leq(v, zc)) continue;
      if (phi[l.join(u, v)] != std::make_pair(u, v)) r.inverse_is_join = false;
    }
  }
  r.order_isomorphism = true;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const bool prod = l.leq(phi[x].first, phi[y].first) && l.leq(phi[x].second, phi[y].second);
      if (prod != l.leq(x, y)) r.order_isomorphism = false;
    }
  }
  auto member = [](const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); };
  const auto dl = dl_elements(l), dl1 = dl_elements(d1), dl2 = dl_elements(d2);
  const auto ba = ba_elements(l), ba1 = ba_elements(d1), ba2 = ba_elements(d2);
  r.dl_splits = r.ba_splits = true;
  for (int x = 0; x < n; ++x) {
    const int a = pos(d1, l, phi[x].first), b = pos(d2, l, phi[x].second);
    if (member(dl, x) != (member(dl1, a) && member(dl2, b))) r.dl_splits = false;
    if (member(ba, x) != (member(ba1, a) && member(ba2, b))) r.ba_splits = false;
  }
  return r;
}

SqFreeReport sq_free_check(const FiniteTensorLattice& l) {
  SqFreeReport r;
  r.square_zero_free = square_zero_elements(l).empty();
  r.separated = is_separated(l);
  r.applicable = r.square_zero_free && r.separated;
  for (int x = 0; x < l.size(); ++x) {
    if (l.join(x, complement_op(l, x)) != l.max()) r.counterexamples.push_back(x);
  }
  r.all_idempotent = static_cast<int>(dl_elements(l).size()) == l.size();
  r.ba_dl_all = r.all_idempotent && static_cast<int>(ba_elements(l).size()) == l.size();
  return r;
}

FiniteTensorLattice annihilator_quotient(const FiniteTensorLattice& l) {
  const auto ann = annihilators(l);
  std::vector<int> class_of(l.size(), -1);
  std::vector<int> reps;  // join of each class, which lies in the class
  for (int x = 0; x < l.size(); ++x) {
    if (class_of[x] >= 0) continue;
    int top = x;
    for (int y = x; y < l.size(); ++y) {
      if (ann[y] == ann[x]) {
        class_of[y] = static_cast<int>(reps.size());
        top = l.join(top, y);
      }
    }
    reps.push_back(top);
  }
  const int k = static_cast<int>(reps.size());
  std::vector<std::string> labels;
  for (int r : reps) labels.push_back(l.label(r));
  Order leq(k, std::vector<bool>(k));
  Table tensor(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      leq[a][b] = subset(ann[reps[b]], ann[reps[a]]);
      tensor[a][b] = class_of[l.tensor(reps[a], reps[b])];
    }
  }
  return FiniteTensorLattice::from_order(std::move(labels), std::move(leq), std::move(tensor));
}

namespace {

using Mask = std::uint32_t;

// Random tensor on the lattice of down-sets of a random poset, built from values
// on principal down-sets and extended by joins.
std::optional<FiniteTensorLattice> draw_model(std::mt19937_64& rng, int size, const ModelFlags& flags) {
  std::uniform_int_distribution<int> points_dist(std::min(1, size - 1), std::min(4, size - 1));
  const int k = points_dist(rng);
  // below[i]: mask of points <= i, with relations only from lower to higher index.
  std::vector<Mask> below(k);
  for (int i = 0; i < k; ++i) {
    below[i] = Mask{1} << i;
    for (int j = 0; j < i; ++j) {
      if (rng() % 2) below[i] |= below[j];
    }
  }
  auto closed = [&](Mask m) {
    for (int i = 0; i < k; ++i) {
      if ((m >> i & 1) && (below[i] & ~m)) return false;
    }
    return true;
  };
  std::vector<Mask> elems;
  for (Mask m = 0; m < (Mask{1} << k); ++m) {
    if (closed(m)) elems.push_back(m);
  }
  if (static_cast<int>(elems.size()) > size) return std::nullopt;
  std::stable_sort(elems.begin(), elems.end(), [](Mask a, Mask b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
  });
  auto down_close = [&](Mask m) {
    Mask out = 0;
    for (int i = 0; i < k; ++i) {
      if (m >> i & 1) out |= below[i];
    }
    return out;
  };
  auto random_below = [&](Mask bound) { return down_close(static_cast<Mask>(rng()) & bound); };
  std::vector<std::vector<Mask>> m(k, std::vector<Mask>(k, 0));
  for (int p = 0; p < k; ++p) {
    for (int q = p + 1; q < k; ++q) m[p][q] = m[q][p] = random_below(below[p] & below[q]);
    m[p][p] = (flags.idempotent || rng() % 2) ? below[p] : random_below(below[p]);
  }
  if (flags.unital) {
    for (int p = 0; p < k; ++p) {
      if (m[p][p] == below[p]) continue;
      std::vector<int> above;
      for (int q = 0; q < k; ++q) {
        if (q != p && (below[q] >> p & 1)) above.push_back(q);
      }
      if (above.empty()) {
        m[p][p] = below[p];
      } else {
        const int q = above[rng() % above.size()];
        m[p][q] = m[q][p] = below[p];
      }
    }
  }
  std::vector<std::vector<Mask>> mono(k, std::vector<Mask>(k, 0));
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if ((below[p] >> a & 1) && (below[q] >> b & 1)) mono[p][q] |= m[a][b];
        }
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::map<Mask, int> index;
  for (int i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "0" : i == n - 1 ? "Max" : "e" + std::to_string(i));
  }
  Order leq(n, std::vector<bool>(n));
  Table tensor(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      leq[a][b] = (elems[a] & ~elems[b]) == 0;
      Mask t = 0;
      for (int p = 0; p < k; ++p) {
        for (int q = 0; q < k; ++q) {
          if ((elems[a] >> p & 1) && (elems[b] >> q & 1)) t |= mono[p][q];
        }
      }
      tensor[a][b] = index.at(t);
    }
  }
  FiniteTensorLattice l = FiniteTensorLattice::from_order(std::move(labels), std::move(leq), std::move(tensor));
  if (!validate(l).ok() || !is_associative(l)) return std::nullopt;
  if (flags.separated) l = annihilator_quotient(l);
  if (flags.unital && !l.is_unital()) return std::nullopt;
  if (flags.square_zero && square_zero_elements(l).empty()) return std::nullopt;
  return l;
}

}  // namespace

FiniteTensorLattice random_model(std::uint64_t seed, int size, const ModelFlags& flags) {
  if (size < 1 || size > 10) throw Error(ErrorKind::kInvalidArgument, "model size must lie in [1, 10]");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    if (auto l = draw_model(rng, size, flags)) return *l;
  }
  throw Error(ErrorKind::kGenerationFailure, "no model found for seed " + std::to_string(seed));
}

namespace {

FiniteTensorLattice from_order_and_tensor(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& cover,
                                          Table tensor) {
  const int n = static_cast<int>(labels.size());
  Order leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [a, b] : cover) leq[a][b] = true;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
      }
    }
  }
  return FiniteTensorLattice::from_order(std::move(labels), std::move(leq), std::move(tensor));
}

}  // namespace

FiniteTensorLattice two_element_lattice() { return from_order_and_tensor({"0", "Max"}, {{0, 1}}, {{0, 0}, {0, 1}}); }

FiniteTensorLattice boolean_square() {
  return from_order_and_tensor({"0", "a", "b", "Max"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
                               {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}});
}

FiniteTensorLattice chain_model() {
  return from_order_and_tensor({"0", "s", "z", "Max"}, {{0, 1}, {1, 2}, {2, 3}},
                               {{0, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 2, 2}, {0, 1, 2, 3}});
}

Json lattice_to_json(const FiniteTensorLattice& l) {
  Json order = Json::array();
  for (int a = 0; a < l.size(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < l.size(); ++b) row.push_back(l.leq(a, b) ? 1 : 0);
    order.push_back(row);
  }
  Json join = Json::array(), meet = Json::array();
  for (int a = 0; a < l.size(); ++a) {
    Json jr = Json::array(), mr = Json::array();
    for (int b = 0; b < l.size(); ++b) {
      jr.push_back(l.join(a, b));
      mr.push_back(l.meet(a, b));
    }
    join.push_back(jr);
    meet.push_back(mr);
  }
  Json j;
  j["elements"] = l.labels();
  j["order"] = order;
  j["join"] = join;
  j["meet"] = meet;
  j["tensor"] = l.tensor_table();
  j["bottom"] = l.bottom();
  j["max"] = l.max();
  j["unital"] = l.is_unital();
  return j;
}

FiniteTensorLattice lattice_from_json(const Json& j) {
  try {
    auto labels = j.at("elements").get<std::vector<std::string>>();
    auto lookup = [&](const Json& v) -> int {
      if (v.is_number_integer()) return v.get<int>();
      const auto it = std::find(labels.begin(), labels.end(), v.get<std::string>());
      if (it == labels.end()) throw Error(ErrorKind::kParseError, "unknown element " + v.dump());
      return static_cast<int>(it - labels.begin());
    };
    auto table = [&](const Json& t) {
      Table out;
      for (const auto& row : t) {
        std::vector<int> r;
        for (const auto& v : row) r.push_back(lookup(v));
        out.push_back(std::move(r));
      }
      return out;
    };
    Order leq;
    for (const auto& row : j.at("order")) {
      std::vector<bool> r;
      for (const auto& v : row) r.push_back(v.is_boolean() ? v.get<bool>() : v.get<int>() != 0);
      leq.push_back(std::move(r));
    }
    Table tensor = table(j.at("tensor"));
    if (j.contains("join") && j.contains("meet")) {
      return FiniteTensorLattice::from_tables(std::move(labels), std::move(leq), table(j["join"]), table(j["meet"]),
                                              std::move(tensor));
    }
    return FiniteTensorLattice::from_order(std::move(labels), std::move(leq), std::move(tensor));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("lattice: ") + e.what());
  }
}

}  // namespace bousfield
