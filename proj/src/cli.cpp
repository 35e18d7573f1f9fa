#include "bousfield/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "bousfield/catalog.hpp"
#include "bousfield/error.hpp"
#include "bousfield/experiments.hpp"

namespace bousfield {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::uint32_t> prime;
  std::string window, chain_window;
  std::optional<int> cutoff, cap, jobs;
  std::optional<std::uint64_t> seed;
  std::string config_path, out_path;
  std::string format = "json";
  bool corrupt = false;
  bool timings = false;

  std::vector<std::string> ids;
  std::vector<std::string> expressions;
  std::string catalog_path;
  std::vector<std::string> lattice_paths;
  std::string by;
  int size = 6;
  bool separated = false;
  bool idempotent = false;
  bool square_zero = false;
  std::string expression;
};

std::pair<long, long> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Usage(std::string(flag) + " expects LO:HI, got '" + text + "'");
  long lo = 0, hi = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto r1 = std::from_chars(b, b + colon, lo);
  auto r2 = std::from_chars(b + colon + 1, e, hi);
  if (r1.ec != std::errc{} || r1.ptr != b + colon || r2.ec != std::errc{} || r2.ptr != e) {
    throw Usage(std::string(flag) + " expects integers LO:HI, got '" + text + "'");
  }
  return {lo, hi};
}

Json read_json_file(const std::string& path, ErrorKind kind) {
  std::ifstream in(path);
  if (!in) throw Error(kind, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(kind, path + ": " + e.what());
  }
}

// Defaults, then the config file, then flags.
ExperimentConfig resolve_config(const Options& o) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c = config_from_json(read_json_file(o.config_path, ErrorKind::kConfigError), c);
  if (o.prime) c.prime = *o.prime;
  if (!o.window.empty()) std::tie(c.window.lo, c.window.hi) = parse_range(o.window, "--window");
  if (!o.chain_window.empty()) {
    auto [lo, hi] = parse_range(o.chain_window, "--chain-window");
    c.window.c_lo = static_cast<int>(lo);
    c.window.c_hi = static_cast<int>(hi);
  }
  if (o.cutoff) c.policy.cutoff = *o.cutoff;
  if (o.cap) c.cap = *o.cap;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.seed) c.seed = *o.seed;
  if (o.corrupt) c.corrupt_differential = true;
  if (o.timings) c.timings = true;
  validate_config(c);
  return c;
}

class Emitter {
 public:
  Emitter(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  // With --out the JSON document goes to the file and stdout only carries the table view.
  void emit(const Json& doc, const std::string& table) {
    if (!o_.out_path.empty()) {
      std::ofstream f(o_.out_path);
      if (!f) throw Error(ErrorKind::kConfigError, "cannot write " + o_.out_path);
      f << doc.dump(2) << "\n";
      if (o_.format == "table") out_ << table;
      return;
    }
    if (o_.format == "table") {
      out_ << table;
    } else {
      out_ << doc.dump(2) << "\n";
    }
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

Json labels_of(const FiniteTensorLattice& l, const std::vector<int>& xs) {
  Json out = Json::array();
  for (int x : xs) out.push_back(l.label(x));
  return out;
}

std::string join_labels(const Json& labels) {
  std::string s;
  for (const auto& l : labels) s += (s.empty() ? "" : ", ") + l.get<std::string>();
  return "{" + s + "}";
}

// ---------------------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ids = o.ids;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = scenario_ids();
  for (const auto& id : ids) {
    const auto& known = scenario_ids();
    if (std::find(known.begin(), known.end(), id) == known.end()) throw Usage("unknown scenario '" + id + "'");
  }
  const ExperimentConfig c = resolve_config(o);
  if (c.jobs > 1) err << "note: scenarios run sequentially; --jobs " << c.jobs << " is accepted but not used\n";
  const auto reports = run_scenarios(ids, c);
  Emitter(o, out).emit(reports_to_json(reports, c), reports_to_table(reports));
  return exit_code(reports);
}

// Tries to form the observed lattice; leaves it empty and reports why on failure.
void attach_lattice(LoadedCatalog& c, std::ostream& err) {
  c.lattice.reset();
  try {
    c.lattice = observed_lattice(c.catalog, *c.nullity);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInconclusiveNullity && e.kind() != ErrorKind::kMissingJoinWitness) throw;
    err << "no observed lattice: " << e.what() << "\n";
  }
}

std::string catalog_table(const LoadedCatalog& c) {
  std::ostringstream os;
  os << "catalog " << c.catalog.hash() << "  p=" << c.catalog.homes().prime << "  window "
     << c.catalog.window().to_string() << "\n";
  for (const auto& obj : c.catalog.objects()) {
    os << "  " << obj.id << "  " << home_name(obj.home()) << "  " << obj.expression;
    if (c.lattice) os << "  [class " << c.lattice->class_of_object(obj.id) << "]";
    os << "\n";
  }
  if (c.lattice) os << "observed classes: " << c.lattice->lattice.size() << "\n";
  return os.str();
}

Json catalog_doc(const LoadedCatalog& c) {
  return catalog_to_json(c.catalog, c.nullity ? &*c.nullity : nullptr, c.lattice ? &*c.lattice : nullptr);
}

LoadedCatalog load_catalog(const Options& o) {
  if (o.catalog_path.empty()) throw Usage("--catalog PATH is required");
  return catalog_from_json(read_json_file(o.catalog_path, ErrorKind::kParseError));
}

int cmd_catalog_build(const Options& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig c = resolve_config(o);
  const Homes homes = Homes::from(c.shape());
  LoadedCatalog built{Catalog::seed(homes, c.window, c.policy), std::nullopt, std::nullopt};
  built.nullity = compute_nullity(built.catalog);
  ClosureReport r = close_under(built.catalog, {ClosureOp::kSum, ClosureOp::kTensor},
                                std::max(c.cap, built.catalog.size()), *built.nullity);
  if (r.cap_exceeded) err << "closure stopped at the cap of " << c.cap << " objects\n";
  attach_lattice(built, err);
  Emitter(o, out).emit(catalog_doc(built), catalog_table(built));
  return built.lattice ? kExitOk : kExitInconclusive;
}

int cmd_catalog_extend(const Options& o, std::ostream& out, std::ostream& err) {
  LoadedCatalog c = load_catalog(o);
  if (o.expressions.empty()) throw Usage("catalog extend needs at least one expression");
  if (!c.nullity) c.nullity = compute_nullity(c.catalog);
  std::ostringstream added;
  for (const auto& e : o.expressions) {
    const int before = c.catalog.size();
    const int id = c.catalog.add_object(e);
    added << (id >= before ? "added " : "present ") << id << "  " << c.catalog.object(id).expression << "\n";
  }
  extend_nullity(c.catalog, *c.nullity);
  attach_lattice(c, err);
  Emitter(o, out).emit(catalog_doc(c), added.str() + catalog_table(c));
  return c.lattice ? kExitOk : kExitInconclusive;
}

int cmd_catalog_show(const Options& o, std::ostream& out, std::ostream&) {
  const LoadedCatalog c = load_catalog(o);
  Emitter(o, out).emit(catalog_doc(c), catalog_table(c));
  return kExitOk;
}

FiniteTensorLattice load_lattice(const std::string& path) {
  const Json j = read_json_file(path, ErrorKind::kParseError);
  // A catalog file contributes its stored observed lattice.
  if (j.contains("format") && j["format"] == "bousfield-catalog/1") {
    LoadedCatalog c = catalog_from_json(j);
    if (!c.lattice) throw Error(ErrorKind::kParseError, path + " has no observed lattice");
    return c.lattice->lattice;
  }
  return lattice_from_json(j.contains("lattice") ? j["lattice"] : j);
}

// --lattice, else the observed lattice of --catalog, else of a freshly closed seed catalog.
FiniteTensorLattice input_lattice(const Options& o, std::ostream& err) {
  if (!o.lattice_paths.empty()) return load_lattice(o.lattice_paths.front());
  if (!o.catalog_path.empty()) return load_lattice(o.catalog_path);
  const ExperimentConfig c = resolve_config(o);
  LoadedCatalog built{Catalog::seed(Homes::from(c.shape()), c.window, c.policy), std::nullopt, std::nullopt};
  built.nullity = compute_nullity(built.catalog);
  close_under(built.catalog, {ClosureOp::kSum, ClosureOp::kTensor}, std::max(c.cap, built.catalog.size()),
              *built.nullity);
  attach_lattice(built, err);
  if (!built.lattice) throw Error(ErrorKind::kInconclusiveNullity, "the seed catalog has no observed lattice here");
  return built.lattice->lattice;
}

int element_of(const FiniteTensorLattice& l, const std::string& text) {
  const int i = l.index_of(text);
  if (i >= 0) return i;
  int n = -1;
  auto r = std::from_chars(text.data(), text.data() + text.size(), n);
  if (r.ec == std::errc{} && r.ptr == text.data() + text.size() && n >= 0 && n < l.size()) return n;
  throw Usage("'" + text + "' is not an element of the lattice");
}

int cmd_lattice_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const FiniteTensorLattice l = input_lattice(o, err);
  const ValidationReport v = validate(l);
  Json doc;
  doc["format"] = "bousfield-lattice-analysis/1";
  doc["lattice"] = lattice_to_json(l);
  doc["valid"] = v.ok();
  doc["violations"] = v.violations;
  doc["associative"] = is_associative(l);
  doc["separated"] = is_separated(l);
  doc["dl"] = labels_of(l, dl_elements(l));
  doc["ba"] = labels_of(l, ba_elements(l));
  doc["square_zero"] = labels_of(l, square_zero_elements(l));
  Json complements = Json::object(), pairs = Json::array();
  for (int z = 0; z < l.size(); ++z) {
    const int az = complement_op(l, z);
    complements[l.label(z)] = l.label(az);
    if (z < az && l.join(z, az) == l.max() && l.tensor(z, az) == l.bottom()) pairs.push_back({l.label(z), l.label(az)});
  }
  doc["complements"] = complements;
  doc["complemented_pairs"] = pairs;

  std::ostringstream os;
  os << "elements: " << join_labels(doc["lattice"]["elements"]) << "\n";
  os << "valid: " << (v.ok() ? "yes" : "no") << "  associative: " << (doc["associative"] ? "yes" : "no")
     << "  separated: " << (doc["separated"] ? "yes" : "no") << "\n";
  for (const auto& msg : v.violations) os << "  violation: " << msg << "\n";
  os << "DL: " << join_labels(doc["dl"]) << "\n";
  os << "BA: " << join_labels(doc["ba"]) << "\n";
  os << "square-zero: " << join_labels(doc["square_zero"]) << "\n";
  for (const auto& p : pairs) os << "complemented pair: " << p[0].get<std::string>() << " | " << p[1].get<std::string>() << "\n";
  Emitter(o, out).emit(doc, os.str());
  return v.ok() ? kExitOk : kExitFail;
}

int cmd_lattice_quotient(const Options& o, std::ostream& out, std::ostream& err) {
  const FiniteTensorLattice l = input_lattice(o, err);
  if (o.by.empty()) throw Usage("lattice quotient needs --by ELEMENT");
  const int a = element_of(l, o.by);
  const QuotientLattice q = quotient_by_ideal(l, principal_ideal(l, a));
  Json classes = Json::array(), image = Json::array(), up = Json::array();
  for (const auto& cls : q.classes) {
    classes.push_back(labels_of(l, cls));
    image.push_back(l.label(l.join(cls.front(), a)));
  }
  for (int x = 0; x < l.size(); ++x) {
    if (l.leq(a, x)) up.push_back(l.label(x));
  }
  const bool iso = principal_quotient_iso(l, a);
  Json doc;
  doc["format"] = "bousfield-lattice-quotient/1";
  doc["lattice"] = lattice_to_json(l);
  doc["by"] = l.label(a);
  doc["ideal"] = labels_of(l, principal_ideal(l, a).members);
  doc["classes"] = classes;
  doc["certificate"] = {{"map", "[x] -> x v a"}, {"up_set", up}, {"image", image}, {"order_isomorphism", iso}};

  std::ostringstream os;
  os << "L / " << l.label(a) << "↓ has " << q.classes.size() << " classes\n";
  for (std::size_t i = 0; i < q.classes.size(); ++i) {
    os << "  " << join_labels(classes[i]) << " -> " << image[i].get<std::string>() << "\n";
  }
  os << "[x] -> x v a onto " << join_labels(up) << ": " << (iso ? "order isomorphism" : "NOT an isomorphism") << "\n";
  Emitter(o, out).emit(doc, os.str());
  return iso ? kExitOk : kExitFail;
}

int cmd_lattice_product(const Options& o, std::ostream& out, std::ostream&) {
  if (o.lattice_paths.size() != 2) throw Usage("lattice product needs exactly two --lattice files");
  const FiniteTensorLattice k = load_lattice(o.lattice_paths[0]);
  const FiniteTensorLattice l = load_lattice(o.lattice_paths[1]);
  const FiniteTensorLattice kl = product(k, l);
  const bool iso = product_quotient_iso(k, l);
  Json doc;
  doc["format"] = "bousfield-lattice-product/1";
  doc["product"] = lattice_to_json(kl);
  doc["certificate"] = {{"map", "[(k, l)] -> k"}, {"quotient_isomorphism", iso}};
  std::ostringstream os;
  os << "product of sizes " << k.size() << " and " << l.size() << ": " << kl.size() << " elements\n";
  os << "(K x L)/(0 x L) -> K: " << (iso ? "isomorphism" : "NOT an isomorphism") << "\n";
  Emitter(o, out).emit(doc, os.str());
  return iso ? kExitOk : kExitFail;
}

int cmd_lattice_random(const Options& o, std::ostream& out, std::ostream&) {
  const ExperimentConfig c = resolve_config(o);
  ModelFlags flags;
  flags.separated = o.separated;
  flags.idempotent = o.idempotent;
  flags.square_zero = o.square_zero;
  const FiniteTensorLattice l = random_model(c.seed, o.size, flags);
  Json doc = lattice_to_json(l);
  std::ostringstream os;
  os << "seed " << c.seed << ", " << l.size() << " elements\n";
  for (int a = 0; a < l.size(); ++a) {
    os << "  " << l.label(a) << " ⊗:";
    for (int b = 0; b < l.size(); ++b) os << " " << l.label(l.tensor(a, b));
    os << "\n";
  }
  Emitter(o, out).emit(doc, os.str());
  return kExitOk;
}

int cmd_homology(const Options& o, std::ostream& out, std::ostream&) {
  const ExperimentConfig c = resolve_config(o);
  const Homes homes = Homes::from(c.shape());
  const Expr e = parse_expression(o.expression);
  const Value v = evaluate(e, homes);
  const HomologyTable t = value_homology(v, c.window, c.policy);
  Json doc;
  doc["format"] = "bousfield-homology/1";
  doc["expression"] = e.to_string();
  doc["home"] = home_name(v.home);
  doc["prime"] = c.prime;
  doc["window"] = window_to_json(c.window);
  doc["table"] = table_to_json(t);
  std::ostringstream os;
  os << e.to_string() << " over " << home_name(v.home) << " in " << c.window.to_string() << "\n";
  os << (t.is_zero() ? std::string("(zero)\n") : t.to_string());
  Emitter(o, out).emit(doc, os.str());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bousfield lattice experiments over truncated polynomial algebras", "bousfield"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--prime", o.prime, "prime p");
  app.add_option("--window", o.window, "internal degree window LO:HI");
  app.add_option("--chain-window", o.chain_window, "chain degree window LO:HI");
  app.add_option("--cutoff", o.cutoff, "last telescope stage examined");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--cap", o.cap, "catalog size cap");
  app.add_option("--jobs", o.jobs, "worker bound");
  app.add_option("--config", o.config_path, "JSON configuration file");
  app.add_option("--out", o.out_path, "write the JSON document to this file");
  app.add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"json", "table"}));

  auto* verify = app.add_subcommand("verify", "run scenarios S1..S12");
  verify->add_option("ids", o.ids, "scenario ids or 'all'");
  verify->add_flag("--corrupt-differential", o.corrupt, "negative control for S1");
  verify->add_flag("--timings", o.timings, "record wall-clock timings");

  auto* catalog = app.add_subcommand("catalog", "build, extend or show object catalogs");
  catalog->require_subcommand(1);
  catalog->fallthrough();
  auto* build = catalog->add_subcommand("build", "seed catalog closed under sums and tensors");
  auto* extend = catalog->add_subcommand("extend", "add expressions to a stored catalog");
  extend->add_option("--catalog", o.catalog_path, "catalog file")->required();
  extend->add_option("expressions", o.expressions, "construction expressions")->required();
  auto* show = catalog->add_subcommand("show", "print a stored catalog");
  show->add_option("--catalog", o.catalog_path, "catalog file")->required();

  auto* lattice = app.add_subcommand("lattice", "finite tensor-lattice operations");
  lattice->require_subcommand(1);
  lattice->fallthrough();
  auto* analyze = lattice->add_subcommand("analyze", "axioms, DL, BA, complements");
  analyze->add_option("--lattice", o.lattice_paths, "lattice or catalog file");
  analyze->add_option("--catalog", o.catalog_path, "catalog file with an observed lattice");
  auto* quotient = lattice->add_subcommand("quotient", "quotient by a principal ideal");
  quotient->add_option("--lattice", o.lattice_paths, "lattice or catalog file");
  quotient->add_option("--catalog", o.catalog_path, "catalog file with an observed lattice");
  quotient->add_option("--by", o.by, "generator, as label or index")->required();
  auto* prod = lattice->add_subcommand("product", "product of two lattices");
  prod->add_option("--lattice", o.lattice_paths, "lattice file, given twice")->required();
  auto* random = lattice->add_subcommand("random", "seeded random model");
  random->add_option("--size", o.size, "maximum number of elements")->check(CLI::Range(1, 10));
  random->add_flag("--separated", o.separated, "pass to the annihilator quotient");
  random->add_flag("--idempotent", o.idempotent, "every element idempotent");
  random->add_flag("--square-zero", o.square_zero, "require a square-zero element");

  auto* hom = app.add_subcommand("homology", "homology table of an expression");
  hom->add_option("expression", o.expression, "construction expression")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
    out << deepest->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) err << sub->help();
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (build->parsed()) return cmd_catalog_build(o, out, err);
    if (extend->parsed()) return cmd_catalog_extend(o, out, err);
    if (show->parsed()) return cmd_catalog_show(o, out, err);
    if (analyze->parsed()) return cmd_lattice_analyze(o, out, err);
    if (quotient->parsed()) return cmd_lattice_quotient(o, out, err);
    if (prod->parsed()) return cmd_lattice_product(o, out, err);
    if (random->parsed()) return cmd_lattice_random(o, out, err);
    if (hom->parsed()) return cmd_homology(o, out, err);
  } catch (const Usage& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kConfigError:
        return kExitConfig;
      case ErrorKind::kInconclusiveNullity:
      case ErrorKind::kMissingJoinWitness:
        return kExitInconclusive;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitSoftware;
  }
  return kExitUsage;
}

}  // namespace bousfield
