// Command-line front end: builds or loads an instance, runs closures and
// verifications, and prints a JSON report on stdout. Progress goes to stderr.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "closurelab/analysis.hpp"
#include "closurelab/catalog.hpp"
#include "closurelab/report.hpp"

using namespace closurelab;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kCap = 3, kPrecondition = 4, kInternal = 5 };

struct InstanceOptions {
  std::string file;
  std::string catalog;
  std::string kind = "packing";
  long long M = 3;
  long long n = 2;
  long long m = 2;
  long long u = 1;
  long long coeff_max = 5;
  std::optional<std::uint64_t> seed;
};

struct FamilyOptions {
  std::string kind = "split";
  int k = 2;
  int coeff_bound = 1;
  long long offset_bound = -1;
  bool no_dedup = false;
};

struct Loaded {
  InstanceFile file;
  Json json;
};

void add_instance_options(CLI::App* app, InstanceOptions& o) {
  auto* file = app->add_option("--instance", o.file, "instance JSON file");
  app->add_option("--catalog", o.catalog,
                  "catalog instance: tight-packing, tight-covering, stable-set, aggregation-packing, "
                  "aggregation-covering, box, random")
      ->excludes(file);
  app->add_option("--M", o.M, "tight-packing parameter");
  app->add_option("--n", o.n, "dimension parameter (tight-covering, stable-set, box, random)");
  app->add_option("--m", o.m, "row count for random instances");
  app->add_option("--u", o.u, "box upper bound");
  app->add_option("--kind", o.kind, "packing or covering (random instances)");
  app->add_option("--coeff-max", o.coeff_max, "largest right-hand side for random instances");
  app->add_option("--seed", o.seed, "seed for random instances");
}

void add_family_options(CLI::App* app, FamilyOptions& o) {
  app->add_option("--family", o.kind, "split, kbranch or latticefree")
      ->check(CLI::IsMember({"split", "kbranch", "latticefree"}));
  app->add_option("--k", o.k, "members per k-branch split / rows per lattice-free body");
  app->add_option("--coeff-bound", o.coeff_bound, "max-norm bound on pi");
  app->add_option("--offset-bound", o.offset_bound, "bound on |pi0| (default: derived from the instance)");
  app->add_flag("--no-dedup", o.no_dedup, "keep both signs and non-primitive directions");
}

FamilySpec family_spec(const FamilyOptions& o) {
  FamilySpec f;
  f.kind = o.kind == "kbranch" ? FamilyKind::KBranch : o.kind == "latticefree" ? FamilyKind::LatticeFree
                                                                                 : FamilyKind::Split;
  f.k = f.kind == FamilyKind::Split ? 1 : o.k;
  f.coeff_bound = o.coeff_bound;
  if (o.offset_bound >= 0) f.offset_bound = o.offset_bound;
  f.dedup = !o.no_dedup;
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return f;
}

Loaded load_instance(const InstanceOptions& o) {
  if (!o.file.empty()) {
    auto f = read_instance_file(o.file);
    Json j = to_json(f);
    j["source"] = o.file;
    return {std::move(f), std::move(j)};
  }
  if (o.catalog.empty()) throw ParseError("one of --instance or --catalog is required");
  std::optional<CatalogInstance> c;
  if (o.catalog == "tight-packing") {
    c = tight_packing(o.M);
  } else if (o.catalog == "tight-covering") {
    c = tight_covering(o.n);
  } else if (o.catalog == "stable-set") {
    c = stable_set_relaxation(o.n);
  } else if (o.catalog == "aggregation-packing") {
    c = aggregation_packing_example();
  } else if (o.catalog == "aggregation-covering") {
    c = aggregation_covering_example();
  } else if (o.catalog == "box") {
    c = integral_box(o.n, o.u);
  } else if (o.catalog == "random") {
    if (!o.seed) throw ParseError("random instances require --seed");
    if (o.kind != "packing" && o.kind != "covering") throw ParseError("--kind must be packing or covering");
    c = random_well_behaved(o.kind == "packing" ? ModelKind::Packing : ModelKind::Covering, o.n, o.m, o.coeff_max,
                            *o.seed);
  } else {
    throw ParseError("unknown catalog instance '" + o.catalog + "'");
  }
  InstanceFile f{c->descriptor.name, c->model};
  Json j = to_json(f);
  Json params = Json::object();
  for (const auto& [key, value] : c->descriptor.params) params[key] = value;
  j["params"] = std::move(params);
  j["description"] = c->descriptor.description;
  return {std::move(f), std::move(j)};
}

Vec parse_cost(const std::string& text, Eigen::Index n) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (static_cast<Eigen::Index>(parts.size()) != n)
    throw ParseError("cost '" + text + "' has " + std::to_string(parts.size()) + " entries, expected " +
                     std::to_string(n));
  try {
    return vec_from_strings(parts);
  } catch (const std::exception& e) {
    throw ParseError("cost '" + text + "': " + e.what());
  }
}

std::vector<Vec> costs_or_default(const std::vector<std::string>& texts, const NonnegModel& m) {
  if (texts.empty()) return default_costs(m);
  std::vector<Vec> out;
  for (const auto& t : texts) out.push_back(parse_cost(t, m.dim()));
  return out;
}

Rational parse_rational(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string(what) + " '" + text + "': " + e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_closure(const InstanceOptions& io, const FamilyOptions& fo, const std::vector<std::string>& cost_texts,
                bool dump_hrep) {
  const auto inst = load_instance(io);
  const auto f = family_spec(fo);
  const auto& model = inst.file.model;
  std::cerr << "closure: " << inst.file.name << ", family " << f.str() << "\n";
  const auto closure = enumerated_closure(model.polyhedron(), f);
  std::cerr << "  " << closure.family_size << " members, " << closure.disjunctions_used << " cut\n";
  const auto hull = integer_hull(model.polyhedron());
  Json results = Json::array();
  for (const auto& c : costs_or_default(cost_texts, model)) results.push_back(to_json(gap_report(model, hull, c, &closure)));
  Json rep = report_file("closure", inst.json, f, closure.family_size, std::move(results));
  rep["disjunctions_used"] = closure.disjunctions_used;
  if (dump_hrep) rep["closure"] = to_json(closure.polyhedron);
  emit(rep);
  return kOk;
}

int cmd_verify(const InstanceOptions& io, const FamilyOptions& fo, const std::string& alpha_text) {
  const auto inst = load_instance(io);
  const auto f = family_spec(fo);
  const auto& model = inst.file.model;
  const Rational alpha =
      alpha_text.empty() ? verification_alpha(model.kind(), f, model.dim()) : parse_rational(alpha_text, "--alpha");
  std::cerr << "verify: " << inst.file.name << ", family " << f.str() << ", alpha " << alpha << "\n";
  const auto verdicts = verify_alpha_per_disjunction(model, f, alpha);
  Json results = Json::array();
  std::size_t failed = 0;
  for (const auto& v : verdicts) {
    failed += !v.holds;
    results.push_back(to_json(v));
  }
  std::cerr << "  " << verdicts.size() << " members, " << failed << " failing\n";
  Json rep = report_file("verify", inst.json, f, verdicts.size(), std::move(results));
  rep["alpha"] = to_json(alpha);
  rep["all_hold"] = failed == 0;
  emit(rep);
  return failed == 0 ? kOk : kVerifyFailed;
}

int cmd_rank(const InstanceOptions& io, const FamilyOptions& fo, const std::vector<std::string>& cost_texts,
             int max_iter, const std::string& alpha_text) {
  const auto inst = load_instance(io);
  const auto f = family_spec(fo);
  const auto& model = inst.file.model;
  Rational alpha;
  std::string formula;
  if (!alpha_text.empty()) {
    alpha = parse_rational(alpha_text, "--alpha");
    formula = "user-supplied alpha";
  } else if (model.is_packing()) {
    alpha = family_alpha(f, model.dim());
    formula = f.kind == FamilyKind::Split     ? "packing split: alpha = 2"
              : f.kind == FamilyKind::KBranch ? "packing k-branch: alpha = min(2^k, n) + 1"
                                              : "packing lattice-free: alpha = min(k, n) + 1";
  } else {
    if (f.kind != FamilyKind::Split) throw PreconditionViolation("covering rank bound is stated for splits only");
    alpha = Rational(2);
    formula = "covering split: gap z_int/z_lp, alpha = 2";
  }
  std::cerr << "rank: " << inst.file.name << ", family " << f.str() << ", alpha " << alpha << "\n";
  const auto hull = integer_hull(model.polyhedron());
  auto rep = rank_lower_bound(model, hull, costs_or_default(cost_texts, model), alpha,
                              formula + " (finite-cost lower bound)");
  rep.family = f;
  rep.max_iter = max_iter;
  rep.upper = iterated_closure_rank(model.polyhedron(), hull, f, max_iter);
  if (!rep.upper) std::cerr << "  restricted closure did not reach the integer hull in " << max_iter << " rounds\n";
  Json results = Json::array({to_json(rep)});
  emit(report_file("rank", inst.json, f, enumerate_family(model.polyhedron(), f).size(), std::move(results)));
  return kOk;
}

Json instance_json(const CatalogInstance& c) {
  Json j = to_json(InstanceFile{c.descriptor.name, c.model});
  Json params = Json::object();
  for (const auto& [key, value] : c.descriptor.params) params[key] = value;
  j["params"] = std::move(params);
  return j;
}

Json interval_json(const WeightInterval& w) {
  if (w.empty) return nullptr;
  return Json{{"lo", to_json(w.lo)}, {"hi", to_json(w.hi)}};
}

int cmd_reproduce(const std::string& id, long long M, long long n) {
  std::cerr << "reproduce: " << id << "\n";
  if (id == "tight-packing" || id == "tight-covering") {
    const bool packing = id == "tight-packing";
    const long long param = packing ? M : n;
    const auto inst = packing ? tight_packing(param) : tight_covering(param);
    const auto g = tightness_experiment(packing ? ModelKind::Packing : ModelKind::Covering, param);
    Json results = Json::array({to_json(g)});
    emit(report_file("reproduce " + id, instance_json(inst), g.family, 0, std::move(results)));
    return kOk;
  }
  if (id == "aggregation-packing" || id == "aggregation-covering") {
    const bool packing = id == "aggregation-packing";
    const auto inst = packing ? aggregation_packing_example() : aggregation_covering_example();
    const std::vector<Vec> points = packing ? std::vector<Vec>{make_vec({0, 2}), make_vec({1, 1})}
                                            : std::vector<Vec>{make_vec({0, 6}), make_vec({1, 1})};
    Json results = Json::array();
    for (const auto& z : points)
      results.push_back(Json{{"type", "aggregation-membership"},
                             {"point", to_json(z)},
                             {"weights", interval_json(aggregation_membership(inst.model, z))}});
    const auto hull = split_hull(inst.model.polyhedron(), SplitSet(make_vec({1, 0}), 0));
    Json cuts = Json::array();
    for (const auto& facet : hull.facets()) {
      const bool original = std::any_of(inst.model.polyhedron().facets().begin(),
                                        inst.model.polyhedron().facets().end(),
                                        [&](const LinearInequality& r) { return r == facet; });
      if (original) continue;
      const auto cut = packing ? facet : facet.as_geq().normalized();
      bool separates = true;
      for (const auto& z : points) separates = separates && !cut.satisfied_by(z);
      cuts.push_back(Json{{"type", "split-cut"}, {"split", "S((1,0),0)"}, {"cut", to_json(cut)}, {"separates", separates}});
    }
    results.push_back(Json{{"type", "split-cuts"}, {"cuts", std::move(cuts)}});
    emit(report_file("reproduce " + id, instance_json(inst), std::nullopt, 0, std::move(results)));
    return kOk;
  }
  if (id == "clique-rank") {
    const auto inst = stable_set_relaxation(n);
    FamilySpec f;
    auto rep = rank_lower_bound(inst.model, {Vec::Constant(n, Rational(1))}, Rational(2),
                                "packing split: alpha = 2 (finite-cost lower bound)");
    rep.family = f;
    Json r = to_json(rep);
    r["cg_rank_reference"] = ceil_log(Rational(n - 1), Rational(2));
    Json results = Json::array({std::move(r)});
    emit(report_file("reproduce " + id, instance_json(inst), f, 0, std::move(results)));
    return kOk;
  }
  throw ParseError("unknown claim id '" + id +
                   "' (known: tight-packing, tight-covering, aggregation-packing, aggregation-covering, clique-rank)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restricted split, k-branch and lattice-free closures of packing and covering polyhedra"};
  app.require_subcommand(1);

  InstanceOptions io;
  FamilyOptions fo;
  std::vector<std::string> costs;
  bool dump_hrep = false;
  std::string alpha;
  int max_iter = 5;
  std::string claim;
  long long rep_M = 100;
  std::optional<long long> rep_n;

  auto* closure = app.add_subcommand("closure", "restricted closure and objective values");
  add_instance_options(closure, io);
  add_family_options(closure, fo);
  closure->add_option("--cost", costs, "cost vector such as 1,1/2 (repeatable; default: 1, e_j, rows)");
  closure->add_flag("--dump-hrep", dump_hrep, "include the closure's H- and V-description");

  auto* verify = app.add_subcommand("verify", "per-disjunction approximation check; exit 1 on failure");
  add_instance_options(verify, io);
  add_family_options(verify, fo);
  verify->add_option("--alpha", alpha, "scale (default: the family factor for packing, 1/2 for covering)");

  auto* rank = app.add_subcommand("rank", "rank lower bound and iterated-closure upper bound");
  add_instance_options(rank, io);
  add_family_options(rank, fo);
  rank->add_option("--cost", costs, "cost vector (repeatable)");
  rank->add_option("--max-iter", max_iter, "closure rounds before giving up");
  rank->add_option("--alpha", alpha, "override the family factor");

  auto* reproduce = app.add_subcommand("reproduce", "rerun a named experiment");
  reproduce->add_option("id", claim, "tight-packing, tight-covering, aggregation-packing, aggregation-covering, clique-rank")
      ->required();
  reproduce->add_option("--M", rep_M, "tight-packing parameter");
  reproduce->add_option("--n", rep_n, "tight-covering (default 10) / clique-rank (default 8) parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*closure) return cmd_closure(io, fo, costs, dump_hrep);
    if (*verify) return cmd_verify(io, fo, alpha);
    if (*rank) return cmd_rank(io, fo, costs, max_iter, alpha);
    if (*reproduce) return cmd_reproduce(claim, rep_M, rep_n.value_or(claim == "clique-rank" ? 8 : 10));
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (raise CLOSURELAB_CAP to allow more)\n";
    return kCap;
  } catch (const PreconditionViolation& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
