#include "bousfield/catalog.hpp"

#include <cstdio>
#include <map>

#include "bousfield/base_change.hpp"
#include "bousfield/error.hpp"

namespace bousfield {

Catalog::Catalog(Homes homes, DegreeWindow window, StabilizationPolicy policy)
    : homes_(std::move(homes)), window_(window), policy_(policy) {}

const std::vector<std::string>& Catalog::seed_expressions() {
  static const std::vector<std::string> kSeed = {
      "zero",
      "unit",
      "shift(1, unit)",
      "cone(p, unit)",
      "telescope(p, unit)",
      "fiber_telescope(p, unit)",
      "quotient_telescope(p, unit)",
      "cone(x1, unit)",
      "tensor(cone(x1, unit), cone(p, unit))",
  };
  return kSeed;
}

Catalog Catalog::seed(const Homes& homes, DegreeWindow window, StabilizationPolicy policy) {
  Catalog c(homes, window, policy);
  for (const auto& e : seed_expressions()) c.add_object(e);
  return c;
}

int Catalog::add_object(const std::string& expression) {
  const Expr e = parse_expression(expression);
  const std::string canonical = e.to_string();
  if (const int id = find(canonical); id >= 0) return id;
  CatalogObject obj;
  obj.id = size();
  obj.expression = canonical;
  obj.value = evaluate(e, homes_);
  objects_.push_back(std::move(obj));
  return objects_.back().id;
}

int Catalog::find(const std::string& expression) const {
  for (const auto& o : objects_) {
    if (o.expression == expression) return o.id;
  }
  return -1;
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string Catalog::hash() const {
  std::string text = "p=" + std::to_string(homes_.prime) + ";shape=" + spec_to_json(*homes_.zp).dump() +
                     ";window=" + window_.to_string() + ";cutoff=" + std::to_string(policy_.cutoff) +
                     ";agreement=" + std::to_string(policy_.agreement) + ";";
  for (const auto& o : objects_) text += o.expression + "\n";
  return hex(fnv1a(text));
}

namespace {

Value push_value(const Value& v, const RingMap& f, Home target) {
  if (v.free) return make_value(target, pushforward(f, *v.free));
  return make_value(target, ind_apply(
                                v.ind, f.target(), [f](const FreeComplex& x) { return pushforward(f, x); },
                                [f](const ChainMap& m) { return pushforward(f, m); }));
}

Value same_home_tensor(const Value& a, const Value& b) {
  if (a.free && b.free) return make_value(a.home, tensor(*a.free, *b.free));
  return make_value(a.home, ind_tensor(a.ind, b.ind));
}

}  // namespace

Value routed_tensor(const Value& a, const Value& b, const Homes& homes) {
  if (a.home == b.home) return same_home_tensor(a, b);
  if (a.home != Home::kZp && b.home != Home::kZp) {
    throw Error(ErrorKind::kUnroutablePair, std::string(home_name(a.home)) + " x " + home_name(b.home));
  }
  const Value& zp = a.home == Home::kZp ? a : b;
  const Value& other = a.home == Home::kZp ? b : a;
  const RingMap f = other.home == Home::kFp ? RingMap::g(homes.zp) : RingMap::h(homes.zp);
  return same_home_tensor(push_value(zp, f, other.home), other);
}

Nullity routed_nullity(const Value& a, const Value& b, const Homes& homes, const DegreeWindow& w,
                       const StabilizationPolicy& policy) {
  return value_is_zero(routed_tensor(a, b, homes), w, policy);
}

std::vector<std::pair<int, int>> NullityMatrix::inconclusive() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = i; j < size(); ++j) {
      if (entries[i][j].is_inconclusive()) out.emplace_back(i, j);
    }
  }
  return out;
}

void extend_nullity(const Catalog& catalog, NullityMatrix& m) {
  const int old = m.size(), n = catalog.size();
  for (auto& row : m.entries) row.resize(n);
  m.entries.resize(n, std::vector<Nullity>(n));
  for (int j = old; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      m.entries[i][j] = routed_nullity(catalog.object(i).value, catalog.object(j).value, catalog.homes(), m.window,
                                       catalog.policy());
      m.entries[j][i] = m.entries[i][j];
    }
  }
}

NullityMatrix compute_nullity(const Catalog& catalog, const DegreeWindow& w) {
  NullityMatrix m;
  m.window = w;
  extend_nullity(catalog, m);
  return m;
}

NullityMatrix compute_nullity(const Catalog& catalog) { return compute_nullity(catalog, catalog.window()); }

namespace {

std::string entry_list(const std::vector<std::pair<int, int>>& entries) {
  std::string s;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    s += (k ? ", " : "") + std::string("(") + std::to_string(entries[k].first) + "," +
         std::to_string(entries[k].second) + ")";
  }
  return s;
}

using Column = std::vector<Nullity::Status>;

Column column_of(const NullityMatrix& n, int j) {
  Column c(n.size());
  for (int k = 0; k < n.size(); ++k) c[k] = n.entries[k][j].status;
  return c;
}

}  // namespace

ObservedOrder observed_preorder(const NullityMatrix& n) {
  if (auto bad = n.inconclusive(); !bad.empty()) {
    throw Error(ErrorKind::kInconclusiveNullity, "inconclusive entries " + entry_list(bad));
  }
  const int size = n.size();
  ObservedOrder o;
  o.leq.assign(size, std::vector<bool>(size, true));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      for (int k = 0; k < size; ++k) {
        if (n.zero(k, j) && !n.zero(k, i)) {
          o.leq[i][j] = false;
          break;
        }
      }
    }
  }
  o.class_of.assign(size, -1);
  for (int i = 0; i < size; ++i) {
    if (o.class_of[i] >= 0) continue;
    o.class_of[i] = static_cast<int>(o.classes.size());
    o.classes.push_back({i});
    for (int j = i + 1; j < size; ++j) {
      if (o.class_of[j] < 0 && o.leq[i][j] && o.leq[j][i]) {
        o.class_of[j] = o.class_of[i];
        o.classes.back().push_back(j);
      }
    }
  }
  return o;
}

namespace {

// Status of (A ⊕ B) ∧ K from those of A ∧ K and B ∧ K.
Nullity sum_entry(const Nullity& a, const Nullity& b) {
  if (a.is_witness()) return a;
  if (b.is_witness()) return b;
  if (a.is_inconclusive()) return a;
  return b;
}

struct Candidate {
  std::string expression;
  std::vector<Nullity> column;  // against every current object
};

}  // namespace

ClosureReport close_under(Catalog& catalog, const std::set<ClosureOp>& ops, int cap, NullityMatrix& nullity) {
  if (cap < catalog.size()) throw Error(ErrorKind::kInvalidArgument, "cap is below the catalog size");
  extend_nullity(catalog, nullity);
  ClosureReport report;
  const Homes& homes = catalog.homes();
  while (true) {
    ++report.passes;
    std::vector<int> reps;
    {
      std::vector<Column> seen;
      for (int j = 0; j < catalog.size(); ++j) {
        Column c = column_of(nullity, j);
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
          seen.push_back(c);
          reps.push_back(j);
        }
      }
    }
    bool added = false;
    auto try_add = [&](const Candidate& cand) {
      const int n = catalog.size();
      Column col(n);
      for (int k = 0; k < n; ++k) col[k] = cand.column[k].status;
      for (int j = 0; j < n; ++j) {
        if (column_of(nullity, j) == col) return true;
      }
      if (catalog.find(parse_expression(cand.expression).to_string()) >= 0) return true;
      if (n >= cap) {
        report.cap_exceeded = true;
        return false;
      }
      const int id = catalog.add_object(cand.expression);
      for (auto& row : nullity.entries) row.resize(n + 1);
      nullity.entries.emplace_back(cand.column);
      nullity.entries[id].resize(n + 1);
      for (int k = 0; k < n; ++k) nullity.entries[k][id] = cand.column[k];
      const Value& v = catalog.object(id).value;
      nullity.entries[id][id] = routed_nullity(v, v, homes, nullity.window, catalog.policy());
      ++report.added;
      added = true;
      return true;
    };
    auto full_column = [&](const std::string& expression) {
      const Value v = evaluate(expression, homes);
      Candidate c{expression, {}};
      for (int k = 0; k < catalog.size(); ++k) {
        c.column.push_back(routed_nullity(catalog.object(k).value, v, homes, nullity.window, catalog.policy()));
      }
      return c;
    };
    bool room = true;
    for (std::size_t a = 0; a < reps.size() && room; ++a) {
      for (std::size_t b = a; b < reps.size() && room; ++b) {
        const CatalogObject& x = catalog.object(reps[a]);
        const CatalogObject& y = catalog.object(reps[b]);
        if (x.home() != y.home()) continue;
        if (ops.count(ClosureOp::kSum) && a != b) {
          Candidate c{"sum(" + x.expression + ", " + y.expression + ")", {}};
          for (int k = 0; k < catalog.size(); ++k) {
            c.column.push_back(sum_entry(nullity.entries[k][x.id], nullity.entries[k][y.id]));
          }
          room = try_add(c);
        }
        if (room && ops.count(ClosureOp::kTensor)) {
          const std::string expr = "tensor(" + x.expression + ", " + y.expression + ")";
          const Value v = evaluate(expr, homes);
          Candidate c{expr, {}};
          for (int k = 0; k < catalog.size(); ++k) {
            const Nullity& nx = nullity.entries[k][x.id];
            const Nullity& ny = nullity.entries[k][y.id];
            if (nx.is_zero() || ny.is_zero()) {
              c.column.push_back(nx.is_zero() ? nx : ny);
            } else {
              c.column.push_back(routed_nullity(catalog.object(k).value, v, homes, nullity.window, catalog.policy()));
            }
          }
          room = try_add(c);
        }
      }
    }
    for (std::size_t a = 0; a < reps.size() && room; ++a) {
      const std::string& e = catalog.object(reps[a]).expression;
      if (ops.count(ClosureOp::kShift)) {
        Candidate c{"shift(1, " + e + ")", {}};
        for (int k = 0; k < catalog.size(); ++k) c.column.push_back(nullity.entries[k][reps[a]]);
        room = try_add(c);
      }
      if (room && ops.count(ClosureOp::kCone) && catalog.object(reps[a]).home() != Home::kQ) {
        room = try_add(full_column("cone(p, " + e + ")"));
      }
    }
    if (!added || !room) break;
  }
  return report;
}

ObservedLattice observed_lattice(const Catalog& catalog, const NullityMatrix& n) {
  if (n.size() != catalog.size()) throw Error(ErrorKind::kInvalidArgument, "nullity matrix does not match catalog");
  for (const auto& o : catalog.objects()) {
    if (o.home() != catalog.object(0).home()) {
      throw Error(ErrorKind::kUnroutablePair, "an observed lattice needs objects of a single home");
    }
  }
  const ObservedOrder order = observed_preorder(n);
  const int k = static_cast<int>(order.classes.size());
  ObservedLattice out;
  out.window = n.window;
  out.catalog_hash = catalog.hash();
  out.class_of = order.class_of;
  std::vector<std::string> labels;
  std::vector<Column> columns;
  for (const auto& cls : order.classes) {
    out.representatives.push_back(cls.front());
    labels.push_back(catalog.object(cls.front()).expression);
    columns.push_back(column_of(n, cls.front()));
  }
  auto class_with = [&](const Column& col, const std::string& what) {
    for (int c = 0; c < k; ++c) {
      if (columns[c] == col) return c;
    }
    throw Error(ErrorKind::kMissingJoinWitness, what + " is not realized in the catalog");
  };
  std::vector<std::vector<bool>> leq(k, std::vector<bool>(k));
  FiniteTensorLattice::Table join(k, std::vector<int>(k)), meet = join, tensor_table = join;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) leq[a][b] = order.leq[out.representatives[a]][out.representatives[b]];
  }
  const Homes& homes = catalog.homes();
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      const int ra = out.representatives[a], rb = out.representatives[b];
      Column joined(n.size());
      for (int r = 0; r < n.size(); ++r) {
        joined[r] = sum_entry(n.entries[r][ra], n.entries[r][rb]).status;
      }
      join[a][b] = join[b][a] = class_with(joined, "join of " + labels[a] + " and " + labels[b]);
      const Value t = routed_tensor(catalog.object(ra).value, catalog.object(rb).value, homes);
      Column prod(n.size());
      for (int r = 0; r < n.size(); ++r) {
        if (n.zero(r, ra) || n.zero(r, rb)) {
          prod[r] = Nullity::Status::kZeroInWindow;
          continue;
        }
        Nullity e = routed_nullity(catalog.object(r).value, t, homes, n.window, catalog.policy());
        if (e.is_inconclusive()) {
          throw Error(ErrorKind::kInconclusiveNullity, "tensor column of " + labels[a] + " and " + labels[b]);
        }
        prod[r] = e.status;
      }
      tensor_table[a][b] = tensor_table[b][a] = class_with(prod, "tensor of " + labels[a] + " and " + labels[b]);
    }
  }
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      std::vector<int> lower;
      for (int c = 0; c < k; ++c) {
        if (leq[c][a] && leq[c][b]) lower.push_back(c);
      }
      int m = -1;
      for (int c : lower) {
        if (std::all_of(lower.begin(), lower.end(), [&](int d) { return leq[d][c]; })) m = c;
      }
      if (m < 0) throw Error(ErrorKind::kMissingJoinWitness, "meet of " + labels[a] + " and " + labels[b]);
      meet[a][b] = m;
    }
  }
  out.lattice = FiniteTensorLattice::from_tables(std::move(labels), std::move(leq), std::move(join), std::move(meet),
                                                 std::move(tensor_table));
  return out;
}

Json nullity_matrix_to_json(const NullityMatrix& n) {
  Json rows = Json::array();
  for (const auto& row : n.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(nullity_to_json(e));
    rows.push_back(r);
  }
  return {{"window", window_to_json(n.window)}, {"entries", rows}};
}

NullityMatrix nullity_matrix_from_json(const Json& j) {
  try {
    NullityMatrix n;
    n.window = window_from_json(j.at("window"));
    for (const auto& row : j.at("entries")) {
      std::vector<Nullity> r;
      for (const auto& e : row) r.push_back(nullity_from_json(e));
      n.entries.push_back(std::move(r));
    }
    return n;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("nullity matrix: ") + e.what());
  }
}

Json observed_lattice_to_json(const ObservedLattice& l) {
  Json j;
  j["window"] = window_to_json(l.window);
  j["catalog_hash"] = l.catalog_hash;
  j["representatives"] = l.representatives;
  j["class_of"] = l.class_of;
  j["lattice"] = lattice_to_json(l.lattice);
  return j;
}

ObservedLattice observed_lattice_from_json(const Json& j) {
  try {
    ObservedLattice l;
    l.window = window_from_json(j.at("window"));
    l.catalog_hash = j.at("catalog_hash").get<std::string>();
    l.representatives = j.at("representatives").get<std::vector<int>>();
    l.class_of = j.at("class_of").get<std::vector<int>>();
    l.lattice = lattice_from_json(j.at("lattice"));
    return l;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("observed lattice: ") + e.what());
  }
}

Json catalog_to_json(const Catalog& catalog, const NullityMatrix* nullity, const ObservedLattice* lattice) {
  Json j;
  j["format"] = "bousfield-catalog/1";
  j["prime"] = catalog.homes().prime;
  j["shape"] = spec_to_json(*catalog.homes().zp);
  j["window"] = window_to_json(catalog.window());
  j["policy"] = {{"cutoff", catalog.policy().cutoff}, {"agreement", catalog.policy().agreement}};
  j["hash"] = catalog.hash();
  Json objects = Json::array();
  for (const auto& o : catalog.objects()) {
    objects.push_back({{"id", o.id}, {"expression", o.expression}, {"home", home_name(o.home())}});
  }
  j["objects"] = objects;
  if (nullity) j["nullity"] = nullity_matrix_to_json(*nullity);
  if (lattice) j["observed_lattice"] = observed_lattice_to_json(*lattice);
  return j;
}

LoadedCatalog catalog_from_json(const Json& j) {
  try {
    SpecPtr shape = spec_from_json(j.at("shape"));
    if (shape->ring().kind() != RingKind::kPLocal || shape->ring().prime() != j.at("prime").get<std::uint32_t>()) {
      throw Error(ErrorKind::kParseError, "catalog shape and prime disagree");
    }
    StabilizationPolicy policy;
    policy.cutoff = j.at("policy").at("cutoff").get<int>();
    policy.agreement = j.at("policy").at("agreement").get<int>();
    Catalog c(Homes::from(shape), window_from_json(j.at("window")), policy);
    for (const auto& o : j.at("objects")) {
      const int id = c.add_object(o.at("expression").get<std::string>());
      if (id != o.at("id").get<int>() || home_name(c.object(id).home()) != o.at("home").get<std::string>()) {
        throw Error(ErrorKind::kParseError, "object " + o.dump() + " does not re-evaluate consistently");
      }
    }
    if (j.contains("hash") && j["hash"].get<std::string>() != c.hash()) {
      throw Error(ErrorKind::kParseError, "catalog hash mismatch");
    }
    LoadedCatalog out{std::move(c), std::nullopt, std::nullopt};
    if (j.contains("nullity")) out.nullity = nullity_matrix_from_json(j["nullity"]);
    if (j.contains("observed_lattice")) out.lattice = observed_lattice_from_json(j["observed_lattice"]);
    return out;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("catalog: ") + e.what());
  }
}

}  // namespace bousfield
