// Copyright 2026 The qcrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Report serialization. Every report is an ordered JSON object so field
// order is fixed; the text format is rendered from that object, which keeps
// the two formats numerically identical.

#ifndef QCRB_TOOLS_REPORT_H_
#define QCRB_TOOLS_REPORT_H_

#include <string>

#include "json.hpp"
#include "qcrb/bounds.h"
#include "qcrb/estimation.h"
#include "qcrb/reduction.h"
#include "qcrb/strategy.h"

namespace qcrb::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Vector& v);
/// Row-major list of rows.
Json to_json(const Matrix& m);
Json to_json(const RealSymMatrix& m);
/// List of columns, for bases whose columns are the meaningful objects.
Json columns_json(const Matrix& m);

Json to_json(const InfoMatrix& f);
Json to_json(const SupportDecomposition& dec);
Json to_json(const ConstraintFunction& c);
Json to_json(const ReducedProblem& r);
Json to_json(const TraceConsistency& t);
Json to_json(const BoundReport& b);
Json to_json(const StrategyReport& s);
Json to_json(const ProvenanceComparison& c);
Json to_json(const EstimationRun& run);

Json tolerance_json(const TolerancePolicy& tol, int dim, std::optional<double> threshold);

/// Canonical JSON text: 2-space indent, trailing newline.
std::string dump_json(const Json& report);

/// Fixed-width "key  value" listing of the report; provenance comparisons, if
/// present, are additionally rendered as a discrepancy table.
std::string render_text(const Json& report);

}  // namespace qcrb::cli

#endif  // QCRB_TOOLS_REPORT_H_
