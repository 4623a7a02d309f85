#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "schurbd/analytic_function.hpp"
#include "schurbd/classifier.hpp"
#include "schurbd/structured.hpp"
#include "schurbd/verifier.hpp"

namespace schurbd {

using Json = nlohmann::json;

///
/// Problem document:
///
///   { "t0": {"re": x, "im": y} | {"angle": radians},
///     "s":  [ {"re": .., "im": ..}, ... ],
///     "tol": 1e-9,      (optional)
///     "samples": 3 }    (optional)
///
/// t0 within 1e-9 of the circle is normalized onto it; the original form
/// (angle or rectangular) is kept so that serialization reproduces it.
///
struct ProblemFile {
    BoundaryJet data{1.0, {1.0}};
    std::optional<double> angle; // set when t0 was given as an angle
    std::optional<double> tol;
    std::optional<int> samples;
};

/// Throws InputError with a JSON-path qualified message.
ProblemFile parse_problem(std::string_view text);
ProblemFile problem_from_json(const Json& j);
Json problem_to_json(const ProblemFile& p);
std::string serialize_problem(const ProblemFile& p);

/// FunctionFile: {"kind": "constant" | "polynomial" | "blaschke" | "lft" | "lft_inverse", ...}.
Json function_to_json(const AnalyticFunction& f);
AnalyticFunction function_from_json(const Json& j);
AnalyticFunction parse_function(std::string_view text);
std::string serialize_function(const AnalyticFunction& f);

Json complex_to_json(Complex z);

Json classification_to_json(const Classification& c);
Json verification_to_json(const VerificationReport& r);

/// f on `count` circle points and on the radius z = t0 (1 - 2^-k), k = 1..24.
Json function_samples(const AnalyticFunction& f, Complex t0, int count = 64);

} // namespace schurbd
