#pragma once
// Text formats: round-trip decimal numbers, "re,im" pairs, JSON for
// parameters, geometry and problem files, CSV rows.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lens/solvers.hpp"

namespace lens::io {

using json = nlohmann::json;

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);
/// "re,im"; throws lens::Error on malformed input.
cplx parse_complex(std::string_view text);
/// "P/Q" -> (P, Q); Q > 0.
std::pair<long, long> parse_pi_fraction(std::string_view text);

json to_json(const LensParams& params);
/// {"alpha": a} or {"alpha_pi": "P/Q"}, plus "n".
LensParams params_from_json(const json& j);

json arc_to_json(const LensParams& params, ArcId arc);

json to_json(const QuadratureSpec& spec);
/// Overrides fields present in j; unknown keys are an error.
QuadratureSpec spec_from_json(const json& j, QuadratureSpec base = {});

/// {"kind": <catalog kind>, "scale": s, "normal": bool}, {"kind": "zero"},
/// {"kind": "sum", "payload": [...]}, {"kind": "samples", "payload": {"C0": [[s, re, im], ...], ...}}.
/// A catalog term may carry its options in "payload" instead.
BoundaryData boundary_data_from_json(const json& j);
/// Catalog kinds, "zero", "sum", and {"kind": "grid", "payload": {"x": [x0, x1],
/// "y": [y0, y1], "nx": .., "ny": .., "values": [v | [re, im], ...]}}.
SourceTerm source_from_json(const json& j);

struct Problem {
  LensParams params;
  QuadratureSpec spec;
  BoundaryData gamma;
  SourceTerm f;
  std::vector<cplx> points;
};

Problem problem_from_json(const json& j);
Problem load_problem(const std::string& path);

/// Arc matrices k = 0 .. 2n-1, carrier circles, corners, boundary arcs and
/// optionally the reflection orbit of `sample`.
json parquet_json(const LensParams& params, std::optional<cplx> sample);

/// Comma-joined fields terminated by '\n'.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace lens::io
