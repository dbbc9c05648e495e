#include "ideal/io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "ideal/errors.hpp"

namespace ideal::io {

namespace {

Json edge_json(Edge e) { return Json::array({e.u + 1, e.v + 1}); }

Json block(bool ok) { return Json{{"status", ok ? "pass" : "fail"}}; }

Json skipped(const std::string& why) { return Json{{"status", "skipped"}, {"reason", why}}; }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object at top level");
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError("field '" + where + "': expected a number");
  return j.get<double>();
}

std::map<Edge, double> edge_map(const Json& j, const char* name, int n) {
  const Json& m = field(j, name);
  if (!m.is_object()) throw ParseError(std::string("field '") + name + "': expected an object keyed by \"[u,v]\"");
  std::map<Edge, double> out;
  for (const auto& [key, value] : m.items()) {
    out[parse_edge_key(key, n)] = number(value, std::string(name) + "." + key);
  }
  return out;
}

std::vector<Face> faces_from_json(const Json& j, int n) {
  const Json& faces = field(j, "faces");
  if (!faces.is_array()) throw ParseError("field 'faces': expected an array");
  std::vector<Face> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string where = "faces[" + std::to_string(i) + "]";
    const Json& f = faces[i];
    if (!f.is_array() || f.size() != 3) throw ParseError("field '" + where + "': expected three vertex labels");
    Face face{};
    for (int k = 0; k < 3; ++k) {
      if (!f[k].is_number_integer()) throw ParseError("field '" + where + "': labels must be integers");
      const int label = f[k].get<int>();
      if (label < 1 || label > n) {
        throw ParseError("field '" + where + "': label " + std::to_string(label) + " outside 1.." + std::to_string(n));
      }
      face[k] = label - 1;
    }
    out.push_back(face);
  }
  return out;
}

int vertex_count(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<int>() < 1) throw ParseError("field 'n': expected a positive integer");
  return n.get<int>();
}

Json euler_block(const MarkedTriangulation& t) {
  const auto report = validate(t);
  const int v = t.vertex_count();
  const int e = static_cast<int>(t.edges().size());
  const int f = static_cast<int>(t.faces().size());
  Json b = block(report.ok && v - e + f == 2);
  b["V"] = v;
  b["E"] = e;
  b["F"] = f;
  b["chi"] = v - e + f;
  if (!report.ok) b["violation"] = report.violation;
  return b;
}

Json completeness_block(const HyperbolicStructure& h, double tol) {
  const Eigen::VectorXd sums = h.cusp_sums();
  const double worst = sums.cwiseAbs().maxCoeff();
  Json b = block(worst <= tol);
  b["max_abs_cusp_sum"] = worst;
  Json bad = Json::array();
  for (int v = 0; v < sums.size(); ++v) {
    if (std::abs(sums(v)) > tol) bad.push_back(v + 1);
  }
  b["failing_vertices"] = bad;
  return b;
}

Json delaunay_block(const PointConfiguration& cfg, const MarkedTriangulation& t) {
  const auto v = global_delaunay_violations(cfg, t);
  Json b = block(v.empty());
  b["violations"] = v;
  return b;
}

void certificate_blocks(const CertificateReport& r, Json& blocks) {
  Json convexity = block(r.convex);
  convexity["violations"] = r.convexity_violations;
  blocks["convexity"] = convexity;
  const bool cuts_ok = std::all_of(r.checks.begin(), r.checks.end(), [](const CutsetCheck& c) { return c.passed; });
  Json cutsets = block(cuts_ok);
  cutsets["count"] = r.checks.size();
  Json failing = Json::array();
  for (const CutsetCheck& c : r.checks) {
    if (c.passed) continue;
    Json edges = Json::array();
    for (const Edge& e : c.cutset.edges) edges.push_back(edge_json(e));
    failing.push_back(Json{{"edges", edges}, {"margin", c.margin}, {"star", c.cutset.star}});
  }
  cutsets["failing"] = failing;
  blocks["cutsets"] = cutsets;
}

Json links_block(double residual, double tol) {
  Json b = block(residual <= tol);
  b["max_ratio_residual"] = residual;
  return b;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string edge_key(Edge e) { return "[" + std::to_string(e.u + 1) + "," + std::to_string(e.v + 1) + "]"; }

Edge parse_edge_key(const std::string& key, int n) {
  static const std::regex pattern(R"(^\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*$)");
  std::smatch m;
  if (!std::regex_match(key, m, pattern)) throw ParseError("edge key '" + key + "': expected \"[u,v]\"");
  const int u = std::stoi(m[1]), v = std::stoi(m[2]);
  if (u < 1 || v < 1 || u > n || v > n || u == v) {
    throw ParseError("edge key '" + key + "': labels must be distinct and within 1.." + std::to_string(n));
  }
  return Edge(u - 1, v - 1);
}

FileKind detect_kind(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object at top level");
  if (const auto it = j.find("kind"); it != j.end()) {
    if (*it == "hull_report") return FileKind::hull_report;
    if (*it == "realization_report") return FileKind::realization_report;
    throw ParseError("field 'kind': unknown value " + it->dump());
  }
  if (j.contains("faces") && j.contains("shears")) return FileKind::shears;
  if (j.contains("points")) return FileKind::points;
  throw ParseError("unrecognised file: expected 'points' or 'faces' and 'shears'");
}

std::vector<SpherePoint> points_from_json(const Json& j) {
  const Json& pts = field(j, "points");
  if (!pts.is_array()) throw ParseError("field 'points': expected an array");
  if (j.contains("n")) {
    const int n = vertex_count(j);
    if (static_cast<std::size_t>(n) != pts.size()) {
      throw ParseError("field 'n' is " + std::to_string(n) + " but 'points' has " + std::to_string(pts.size()) +
                       " entries");
    }
  }
  std::vector<SpherePoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Json& p = pts[i];
    const std::string where = "points[" + std::to_string(i) + "]";
    if (p.is_string() && p.get<std::string>() == "inf") {
      out.push_back(SpherePoint::infinity());
    } else if (p.is_array() && p.size() == 2) {
      out.emplace_back(Complex(number(p[0], where + "[0]"), number(p[1], where + "[1]")));
    } else {
      throw ParseError("field '" + where + "': expected [re, im] or \"inf\"");
    }
  }
  return out;
}

PointConfiguration configuration_from_json(const Json& j, bool normalize) {
  auto pts = points_from_json(j);
  return normalize ? PointConfiguration::normalized(pts) : PointConfiguration(std::move(pts));
}

Json points_to_json(const PointConfiguration& c) {
  Json pts = Json::array();
  for (const SpherePoint& p : c.points()) {
    if (p.is_infinite()) {
      pts.push_back("inf");
    } else {
      pts.push_back(Json::array({p.value().real(), p.value().imag()}));
    }
  }
  return Json{{"n", c.size()}, {"points", pts}};
}

HyperbolicStructure shears_from_json(const Json& j) {
  const int n = vertex_count(j);
  const auto faces = faces_from_json(j, n);
  const auto shears = edge_map(j, "shears", n);
  return HyperbolicStructure::from_edges(MarkedTriangulation::from_faces(n, faces), shears);
}

Json shears_to_json(const HyperbolicStructure& h) {
  const MarkedTriangulation& t = h.triangulation();
  Json faces = Json::array();
  for (const Face& f : t.faces()) faces.push_back(Json::array({f[0] + 1, f[1] + 1, f[2] + 1}));
  Json shears = Json::object();
  for (const Edge& e : t.edges()) shears[edge_key(e)] = h.shear(e);
  return Json{{"n", t.vertex_count()}, {"faces", faces}, {"shears", shears}};
}

Json certificate_to_json(const CertificateReport& r) {
  Json checks = Json::array();
  for (const CutsetCheck& c : r.checks) {
    Json edges = Json::array();
    for (const Edge& e : c.cutset.edges) edges.push_back(edge_json(e));
    Json item{{"edges", edges},
              {"k", c.cutset.edges.size()},
              {"star", c.cutset.star},
              {"angle_sum", c.angle_sum},
              {"bound", c.bound},
              {"margin", c.margin},
              {"passed", c.passed}};
    item["star_vertex"] = c.cutset.star ? Json(c.cutset.star_vertex + 1) : Json(nullptr);
    if (c.annulus_checked) {
      item["annulus"] = Json{{"sum_a", c.sum_a},
                             {"sum_b", c.sum_b},
                             {"sum_gamma", c.sum_gamma},
                             {"total_residual", c.eq_total_residual},
                             {"dihedral_residual", c.eq_dihedral_residual},
                             {"outer_residual", c.eq_outer_residual}};
    }
    checks.push_back(item);
  }
  return Json{{"convex", r.convex},
              {"convexity_violations", r.convexity_violations},
              {"cutsets", checks},
              {"notes", r.notes},
              {"passed", r.passed()}};
}

Json angles_to_json(const IdealPolyhedron& p) {
  Json angles = Json::object();
  Json flat = Json::array();
  for (const Edge& e : p.triangulation().edges()) {
    angles[edge_key(e)] = p.angle(e);
    if (p.is_flat(e)) flat.push_back(edge_json(e));
  }
  return Json{{"n", p.vertex_count()}, {"angles", angles}, {"flat_edges", flat}};
}

Json hull_report(const IdealPolyhedron& p, int k_max) {
  Json j = shears_to_json(metric_of(p));
  const Json angles = angles_to_json(p);
  j["angles"] = angles["angles"];
  j["flat_edges"] = angles["flat_edges"];
  j["points"] = points_to_json(p.configuration())["points"];
  j["kind"] = "hull_report";
  Json tess = Json::array();
  for (const auto& face : p.faces()) {
    Json f = Json::array();
    for (int v : face) f.push_back(v + 1);
    tess.push_back(f);
  }
  j["tessellation"] = tess;
  Json links = Json::array();
  for (const LinkPolygon& l : links_of(p)) {
    Json nb = Json::array();
    for (int v : l.neighbors) nb.push_back(v + 1);
    links.push_back(Json{{"vertex", l.vertex + 1}, {"neighbors", nb}, {"sides", l.sides}, {"corners", l.corners}});
  }
  j["links"] = links;
  const Eigen::VectorXd sums = metric_of(p).cusp_sums();
  j["cusp_sums"] = std::vector<double>(sums.data(), sums.data() + sums.size());
  j["legalization_flips"] = p.legalization_flips();
  j["k_max"] = k_max;
  j["certificate"] = certificate_to_json(cutset_certificate(p, k_max));
  return j;
}

Json realization_report(const RealizationResult& r) {
  Json j = points_to_json(r.configuration);
  j["kind"] = "realization_report";
  j["status"] = to_string(r.status);
  j["residual_norm"] = r.residual_norm;
  j["iterations"] = r.iterations;
  j["attempts"] = r.attempts;
  Json log = Json::array();
  for (const WorkingFlip& f : r.flip_log) {
    log.push_back(Json{{"iteration", f.iteration}, {"removed", edge_json(f.removed)}, {"added", edge_json(f.added)}});
  }
  j["flip_log"] = log;
  j["diagnostics"] = r.diagnostics;
  Json faces = Json::array();
  for (const Face& f : r.working.faces()) faces.push_back(Json::array({f[0] + 1, f[1] + 1, f[2] + 1}));
  j["working_faces"] = faces;
  return j;
}

Json flip_graph_summary(const FlipGraph& g, bool with_adjacency) {
  Json j{{"n", g.n}, {"nodes", g.nodes.size()}, {"edges", g.edge_count}, {"connected", g.connected}};
  if (with_adjacency) {
    j["fingerprints"] = g.nodes;
    j["adjacency"] = g.adjacency;
  }
  return j;
}

Json check_report(const Json& input, int k_max, double tol) {
  Json blocks = Json::object();
  const FileKind kind = detect_kind(input);
  switch (kind) {
    case FileKind::points:
    case FileKind::realization_report: {
      const PointConfiguration cfg = configuration_from_json(input);
      const IdealPolyhedron p = hull(cfg);
      blocks["euler"] = euler_block(p.triangulation());
      blocks["completeness"] = completeness_block(metric_of(p), tol);
      blocks["delaunay"] = delaunay_block(cfg, p.triangulation());
      certificate_blocks(cutset_certificate(p, k_max), blocks);
      blocks["links"] = links_block(link_ratio_residual(p), tol);
      break;
    }
    case FileKind::shears: {
      const HyperbolicStructure h = shears_from_json(input);
      blocks["euler"] = euler_block(h.triangulation());
      blocks["completeness"] = completeness_block(h, tol);
      for (const char* name : {"delaunay", "convexity", "cutsets", "links"}) {
        blocks[name] = skipped("no vertex positions in a shear file");
      }
      break;
    }
    case FileKind::hull_report: {
      const PointConfiguration cfg = configuration_from_json(input);
      const HyperbolicStructure h = shears_from_json(input);
      const MarkedTriangulation& t = h.triangulation();
      if (t.vertex_count() != cfg.size()) throw LabelMismatch("report faces and points disagree on N");
      const auto angles = edge_map(input, "angles", cfg.size());
      std::set<Edge> flat;
      const Json& flat_json = field(input, "flat_edges");
      if (!flat_json.is_array()) throw ParseError("field 'flat_edges': expected an array");
      for (std::size_t i = 0; i < flat_json.size(); ++i) {
        const Json& e = flat_json[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
          throw ParseError("field 'flat_edges[" + std::to_string(i) + "]': expected [u, v]");
        }
        flat.insert(parse_edge_key(edge_key(Edge(e[0].get<int>() - 1, e[1].get<int>() - 1)), cfg.size()));
      }
      std::vector<Edge> skeleton;
      for (const Edge& e : t.edges()) {
        if (!flat.count(e)) skeleton.push_back(e);
      }
      blocks["euler"] = euler_block(t);
      blocks["completeness"] = completeness_block(h, tol);
      blocks["delaunay"] = delaunay_block(cfg, t);
      certificate_blocks(cutset_certificate(t, angles, skeleton, k_max), blocks);
      blocks["links"] = links_block(link_ratio_residual(link_polygons(cfg, t), h.shear_matrix()), tol);
      break;
    }
  }
  bool passed = true;
  for (const auto& [name, b] : blocks.items()) passed = passed && b["status"] != "fail";
  return Json{{"blocks", blocks}, {"passed", passed}};
}

}  // namespace ideal::io
