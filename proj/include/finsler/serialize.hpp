#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "finsler/ad_oracle.hpp"
#include "finsler/classifier.hpp"
#include "finsler/ode_lab.hpp"

namespace finsler {

// nlohmann's default object keeps keys sorted, which together with its
// shortest round-trip number printing makes reports byte-deterministic.
using Json = nlohmann::json;

inline constexpr int kReportSchema = 1;

Json to_json(const MetricPoint& mp);
MetricPoint metric_point_from_json(const Json& j);

Json to_json(const PhiSpec& spec);
// fixture_b_sq fills families whose formula needs b^2 when the parameters
// leave it out.
PhiSpec phi_spec_from_json(const Json& j, std::optional<double> fixture_b_sq = std::nullopt);
PhiSpec phi_spec_from_params(const std::string& family, const std::map<std::string, double>& params,
                             double c3, std::optional<double> fixture_b_sq = std::nullopt);

Json to_json(const QSpec& q);
QSpec q_spec_from_json(const Json& j);

Json to_json(const Matrix& m);
Json to_json(const SymTensor3& t);
Json to_json(const SymTensor4& t);
Json to_json(const RaisedTensor4& t);

Json to_json(const ComparisonReport& rep);
Json to_json(const ClassificationVerdict& v);
Json to_json(const RegularityReport& rep);
Json to_json(const OdeResidualReport& rep);
Json to_json(const BerwaldPhiReport& rep);
Json to_json(const LandsbergPhiReport& rep);
Json to_json(const SpecialPhiReport& rep);
Json to_json(const TCoefficients& tc);

// Full (h,i,j,k) expansion, lexicographic, one component per row.
std::string tensor4_csv(const SymTensor4& t);
std::string raised4_csv(const RaisedTensor4& t);
std::string matrix_csv(const Matrix& m);
std::string ode_report_csv(const OdeResidualReport& rep);
std::string special_report_csv(const SpecialPhiReport& rep);

// Fixture files: {"dim": n, "a": [[..]], "b": [..], "b0": r}. Names prefixed
// with "builtin:" (or bare builtin names) resolve to compiled-in fixtures.
MetricPoint load_fixture(const std::string& path_or_name);
std::vector<std::string> builtin_fixture_names();
MetricPoint builtin_fixture(const std::string& name);

}  // namespace finsler
