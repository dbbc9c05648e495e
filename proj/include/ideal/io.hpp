#pragma once

// File formats. Every file is a JSON object with sorted keys; vertex labels
// are 1-based and edge keys read "[u,v]" with u < v.
//
//   points file   {"n": N, "points": [[re, im] | "inf", ...]}
//   shear file    {"n": N, "faces": [[a, b, c], ...], "shears": {"[u,v]": s, ...}}
//   hull report   kind "hull_report": points, faces, tessellation, angles,
//                 shears, flat_edges, links, cusp_sums, certificate
//   realization   kind "realization_report": status, residual, flip log, points
//
// A hull report is also a valid points file and a valid shear file.

#include <json.hpp>  // nlohmann/json, vendored

#include <string>
#include <vector>

#include "ideal/ideal_hull.hpp"
#include "ideal/realize.hpp"
#include "ideal/shear_metric.hpp"
#include "ideal/triangulation.hpp"

namespace ideal::io {

using Json = nlohmann::json;

/// Throws ParseError naming the source, line and column.
Json parse_json(const std::string& text, const std::string& source = "<input>");
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

std::string edge_key(Edge e);
/// Throws ParseError for malformed keys.
Edge parse_edge_key(const std::string& key, int n);

enum class FileKind { points, shears, hull_report, realization_report };
FileKind detect_kind(const Json& j);

/// Raw points with field diagnostics (ParseError).
std::vector<SpherePoint> points_from_json(const Json& j);
/// Validated configuration; with normalize, v1, v2, v3 are first sent to
/// 0, 1, inf. Throws InvalidConfiguration.
PointConfiguration configuration_from_json(const Json& j, bool normalize = false);
Json points_to_json(const PointConfiguration& c);

/// ParseError for structural problems, InvalidTriangulation for bad faces
/// or missing shears. The first face fixes the orientation.
HyperbolicStructure shears_from_json(const Json& j);
Json shears_to_json(const HyperbolicStructure& h);

Json certificate_to_json(const CertificateReport& r);
Json hull_report(const IdealPolyhedron& p, int k_max);
Json angles_to_json(const IdealPolyhedron& p);
Json realization_report(const RealizationResult& r);
Json flip_graph_summary(const FlipGraph& g, bool with_adjacency);

/// Runs every validator that applies to the input kind. Each block has a
/// "status" of "pass", "fail" or "skipped"; "passed" is true when no block
/// failed.
Json check_report(const Json& input, int k_max, double tol = kCuspTolerance);

}  // namespace ideal::io
