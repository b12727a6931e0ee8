// Copyright 2026 The nilsolv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef NILSOLV_SERIALIZE_H_
#define NILSOLV_SERIALIZE_H_

#include <string>

#include <nlohmann/json.hpp>

#include "nilsolv/cone.h"
#include "nilsolv/laurent.h"
#include "nilsolv/metric.h"
#include "nilsolv/nilsoliton.h"
#include "nilsolv/numflow.h"
#include "nilsolv/polynomial.h"
#include "nilsolv/quadratic.h"
#include "nilsolv/rational.h"

namespace nilsolv {

// Keys keep insertion order so identical inputs give identical bytes.
using Json = nlohmann::ordered_json;

// with_float adds "<key>_float" approximations next to exact values; the
// parsers ignore them.
struct JsonOptions {
  bool with_float = false;
};

// Rationals are "n/d" strings. A quadratic number with a nonzero irrational
// part is {"a": "n/d", "b": "n/d", "sqrt": d}; otherwise it is a rational string.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const QuadraticNumber& x);
QuadraticNumber quadratic_from_json(const Json& j);

Json to_json(const Polynomial& p, const std::string& variable);
Polynomial polynomial_from_json(const Json& j);
Json to_json(const Laurent& x);
Laurent laurent_from_json(const Json& j);

Json to_json(const EigenvalueType& t);
EigenvalueType eigenvalue_type_from_json(const Json& j);
// Weight keys are reported with 1-based eigenvalue indices.
Json to_json(const ConeCertificate& c);
ConeCertificate cone_certificate_from_json(const Json& j);
Json to_json(const ScreenResult& s);
ScreenResult screen_result_from_json(const Json& j);

Json to_json(const ClassificationOutcome& o, const JsonOptions& opts = {});
ClassificationOutcome outcome_from_json(const Json& j);
Json to_json(const ClassificationReport& r, const JsonOptions& opts = {});
ClassificationReport report_from_json(const Json& j);

Json to_json(int m, int p, const FlowResult& r);
FlowResult flow_result_from_json(const Json& j);

// Parameter files map slot names to rational strings or "symbolic".
MetricParams metric_params_from_json(const Json& j);

}  // namespace nilsolv

#endif  // NILSOLV_SERIALIZE_H_
