#pragma once

// JSON documents for instances and reports. Every number is written as an
// exact rational string ("p" or "p/q").

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "closurelab/analysis.hpp"

namespace closurelab {

using Json = nlohmann::ordered_json;

struct InstanceFile {
  std::string name;
  NonnegModel model;
};

Json to_json(const Rational& r);
Json to_json(const Vec& v);
Json to_json(const LinearInequality& row);
Json to_json(const FamilySpec& f);
Json to_json(const GapReport& g);
Json to_json(const RankBoundReport& r);
Json to_json(const ApproxVerdict& v);
Json to_json(const InstanceFile& inst);
/// Canonical H- and V-description.
Json to_json(const Polyhedron& p);

Rational rational_from_json(const Json& j);
Vec vec_from_json(const Json& j);
FamilySpec family_from_json(const Json& j);
GapReport gap_from_json(const Json& j);
RankBoundReport rank_from_json(const Json& j);
ApproxVerdict verdict_from_json(const Json& j);
/// Reads {dim, kind, rows: [{coeffs, rhs}], name}; throws ParseError.
InstanceFile instance_from_json(const Json& j);
InstanceFile read_instance_file(const std::string& path);

/// {command, instance, family, results, restricted, versions}.
Json report_file(const std::string& command, const Json& instance, const std::optional<FamilySpec>& family,
                 std::size_t family_count, Json results, bool restricted = true);

Json versions();

}  // namespace closurelab
