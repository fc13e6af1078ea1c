#include "closurelab/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <gmp.h>

namespace closurelab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

long long int_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<long long>();
}

ModelKind kind_from_string(const std::string& s) {
  if (s == "packing") return ModelKind::Packing;
  if (s == "covering") return ModelKind::Covering;
  throw ParseError("kind must be \"packing\" or \"covering\", got \"" + s + "\"");
}

FamilyKind family_kind_from_string(const std::string& s) {
  for (auto k : {FamilyKind::Split, FamilyKind::KBranch, FamilyKind::LatticeFree})
    if (to_string(k) == s) return k;
  throw ParseError("unknown family kind \"" + s + "\"");
}

template <class T, class F>
Json optional_json(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i].str());
  return out;
}

Json to_json(const LinearInequality& row) {
  return Json{{"coeffs", to_json(row.coeffs)},
              {"sense", row.sense == Sense::Leq ? "<=" : ">="},
              {"rhs", to_json(row.rhs)}};
}

Json to_json(const FamilySpec& f) {
  return Json{{"kind", to_string(f.kind)},
              {"k", f.k},
              {"coeff_bound", f.coeff_bound},
              {"offset_bound", f.offset_bound ? Json(*f.offset_bound) : Json(nullptr)},
              {"dedup", f.dedup}};
}

Json to_json(const GapReport& g) {
  return Json{{"type", "gap"},
              {"cost", to_json(g.cost)},
              {"kind", to_string(g.kind)},
              {"z_lp", to_json(g.z_lp)},
              {"z_int", to_json(g.z_int)},
              {"z_closure", optional_json(g.z_closure, [](const Rational& r) { return to_json(r); })},
              {"gap", g.gap ? to_json(*g.gap) : Json("inf")},
              {"closure_ratio", optional_json(g.closure_ratio, [](const Rational& r) { return to_json(r); })},
              {"family", optional_json(g.family, [](const FamilySpec& f) { return to_json(f); })},
              {"restricted", g.restricted},
              {"note", g.note}};
}

Json to_json(const RankBoundReport& r) {
  Json gaps = Json::array();
  for (const auto& g : r.gaps) gaps.push_back(to_json(g));
  return Json{{"type", "rank"},
              {"lower", r.lower},
              {"upper", r.upper ? Json(*r.upper) : Json(nullptr)},
              {"alpha", to_json(r.alpha)},
              {"formula", r.formula},
              {"family", optional_json(r.family, [](const FamilySpec& f) { return to_json(f); })},
              {"max_iter", r.max_iter},
              {"gaps", std::move(gaps)}};
}

Json to_json(const ApproxVerdict& v) {
  return Json{{"type", "verdict"},
              {"alpha", to_json(v.alpha)},
              {"holds", v.holds},
              {"witness", optional_json(v.witness, [](const Vec& w) { return to_json(w); })},
              {"disjunction", v.disjunction}};
}

Json to_json(const InstanceFile& inst) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < inst.model.num_rows(); ++i)
    rows.push_back(Json{{"coeffs", to_json(Vec(inst.model.A().row(i).transpose()))},
                        {"rhs", to_json(inst.model.b()[i])}});
  Json out{{"name", inst.name}, {"dim", inst.model.dim()}, {"kind", to_string(inst.model.kind())}, {"rows", rows}};
  const auto& fz = inst.model.fixed_zero();
  if (std::find(fz.begin(), fz.end(), true) != fz.end()) {
    Json fixed = Json::array();
    for (std::size_t j = 0; j < fz.size(); ++j)
      if (fz[j]) fixed.push_back(j);
    out["fixed_zero"] = std::move(fixed);
  }
  return out;
}

Json to_json(const Polyhedron& p) {
  auto rows = [](const std::vector<LinearInequality>& rs) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(to_json(r));
    return a;
  };
  auto vecs = [](const std::vector<Vec>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
  };
  return Json{{"dim", p.dim()},
              {"empty", p.is_empty()},
              {"facets", rows(p.facets())},
              {"equations", rows(p.equations())},
              {"vertices", vecs(p.vrep().vertices)},
              {"rays", vecs(p.vrep().rays)},
              {"lines", vecs(p.vrep().lines)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw ParseError("rational must be a string \"p\" or \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError("bad rational \"" + j.get<std::string>() + "\": " + e.what());
  }
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("vector must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = rational_from_json(j[i]);
  return v;
}

FamilySpec family_from_json(const Json& j) {
  FamilySpec f;
  f.kind = family_kind_from_string(string_field(j, "kind"));
  f.k = static_cast<int>(int_field(j, "k"));
  f.coeff_bound = static_cast<int>(int_field(j, "coeff_bound"));
  const auto& ob = field(j, "offset_bound");
  if (!ob.is_null()) f.offset_bound = ob.get<long long>();
  if (j.contains("dedup")) f.dedup = j.at("dedup").get<bool>();
  return f;
}

GapReport gap_from_json(const Json& j) {
  GapReport g;
  g.cost = vec_from_json(field(j, "cost"));
  g.kind = kind_from_string(string_field(j, "kind"));
  g.z_lp = rational_from_json(field(j, "z_lp"));
  g.z_int = rational_from_json(field(j, "z_int"));
  if (!field(j, "z_closure").is_null()) g.z_closure = rational_from_json(j.at("z_closure"));
  if (field(j, "gap") != Json("inf")) g.gap = rational_from_json(j.at("gap"));
  if (!field(j, "closure_ratio").is_null()) g.closure_ratio = rational_from_json(j.at("closure_ratio"));
  if (!field(j, "family").is_null()) g.family = family_from_json(j.at("family"));
  g.restricted = field(j, "restricted").get<bool>();
  g.note = string_field(j, "note");
  return g;
}

RankBoundReport rank_from_json(const Json& j) {
  RankBoundReport r;
  r.lower = int_field(j, "lower");
  if (!field(j, "upper").is_null()) r.upper = j.at("upper").get<long long>();
  r.alpha = rational_from_json(field(j, "alpha"));
  r.formula = string_field(j, "formula");
  if (!field(j, "family").is_null()) r.family = family_from_json(j.at("family"));
  r.max_iter = static_cast<int>(int_field(j, "max_iter"));
  for (const auto& g : field(j, "gaps")) r.gaps.push_back(gap_from_json(g));
  return r;
}

ApproxVerdict verdict_from_json(const Json& j) {
  ApproxVerdict v;
  v.alpha = rational_from_json(field(j, "alpha"));
  v.holds = field(j, "holds").get<bool>();
  if (!field(j, "witness").is_null()) v.witness = vec_from_json(j.at("witness"));
  v.disjunction = string_field(j, "disjunction");
  return v;
}

InstanceFile instance_from_json(const Json& j) {
  const long long dim = int_field(j, "dim");
  if (dim < 1) throw ParseError("dim must be positive");
  const auto kind = kind_from_string(string_field(j, "kind"));
  const auto& rows = field(j, "rows");
  if (!rows.is_array()) throw ParseError("rows must be an array");
  Mat a(static_cast<Eigen::Index>(rows.size()), dim);
  Vec b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Vec c = vec_from_json(field(rows[i], "coeffs"));
    if (c.size() != dim) throw ParseError("row " + std::to_string(i) + " has the wrong number of coefficients");
    a.row(static_cast<Eigen::Index>(i)) = c.transpose();
    b[static_cast<Eigen::Index>(i)] = rational_from_json(field(rows[i], "rhs"));
  }
  std::vector<bool> fixed;
  if (j.contains("fixed_zero")) {
    fixed.assign(static_cast<std::size_t>(dim), false);
    for (const auto& idx : j.at("fixed_zero")) {
      const auto k = idx.get<long long>();
      if (k < 0 || k >= dim) throw ParseError("fixed_zero index out of range");
      fixed[static_cast<std::size_t>(k)] = true;
    }
  }
  std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "instance";
  try {
    return {std::move(name), NonnegModel(kind, std::move(a), std::move(b), std::move(fixed))};
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

Json versions() {
  std::ostringstream eigen;
  eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
  return Json{{"closurelab", CLOSURELAB_VERSION}, {"eigen", eigen.str()}, {"gmp", gmp_version}};
}

Json report_file(const std::string& command, const Json& instance, const std::optional<FamilySpec>& family,
                 std::size_t family_count, Json results, bool restricted) {
  Json fam = nullptr;
  if (family) {
    fam = to_json(*family);
    fam["count"] = family_count;
  }
  return Json{{"command", command},
              {"instance", instance},
              {"family", std::move(fam)},
              {"results", std::move(results)},
              {"restricted", restricted},
              {"versions", versions()}};
}

}  // namespace closurelab
