#pragma once

// File formats: theta-sequence JSON, construction JSON/SVG export, CSV
// tables, and report JSON. Small documents go through nlohmann::json;
// construction exports are streamed (a deep level holds millions of caps and
// a DOM would dominate memory). No output embeds a timestamp: identical
// configs must produce identical bytes.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reiflab/analysis.hpp"
#include "reiflab/construct.hpp"
#include "reiflab/errors.hpp"
#include "reiflab/families.hpp"
#include "reiflab/reifenberg.hpp"
#include "reiflab/theta.hpp"

namespace reiflab {

using json = nlohmann::json;

inline std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw io_error("read failed: " + path);
  return buf.str();
}

inline void save_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << content;
  if (!out.good()) throw io_error("write failed: " + path);
}

inline json load_json(const std::string& path) {
  const std::string text = load_text(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw io_error("invalid JSON in " + path);
  return j;
}

// --- theta sequences ---

inline json theta_to_json(const ThetaSequence& t) {
  json j;
  switch (t.kind()) {
    case ThetaKind::kConstant:
      j["kind"] = "constant";
      j["theta1"] = t.theta1();
      break;
    case ThetaKind::kList:
      j["kind"] = "list";
      j["values"] = t.values();
      break;
    case ThetaKind::kBlocks: {
      j["kind"] = "blocks";
      json blocks = json::array();
      for (const ThetaBlock& b : t.block_list()) {
        blocks.push_back(json::array({b.angle, b.length}));
      }
      j["blocks"] = std::move(blocks);
      break;
    }
  }
  return j;
}

inline ThetaSequence theta_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw validation_error("theta JSON: expected an object with a \"kind\" string");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    if (!j.contains("theta1") || !j["theta1"].is_number()) {
      throw validation_error("theta JSON: constant kind needs numeric \"theta1\"");
    }
    return ThetaSequence::constant(j["theta1"].get<double>());
  }
  if (kind == "list") {
    if (!j.contains("values") || !j["values"].is_array()) {
      throw validation_error("theta JSON: list kind needs a \"values\" array");
    }
    std::vector<double> values;
    for (const auto& v : j["values"]) {
      if (!v.is_number()) throw validation_error("theta JSON: non-numeric value");
      values.push_back(v.get<double>());
    }
    return ThetaSequence::list(std::move(values));
  }
  if (kind == "blocks") {
    if (!j.contains("blocks") || !j["blocks"].is_array()) {
      throw validation_error("theta JSON: blocks kind needs a \"blocks\" array");
    }
    std::vector<ThetaBlock> blocks;
    for (const auto& b : j["blocks"]) {
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number_integer()) {
        throw validation_error("theta JSON: each block must be [angle, length]");
      }
      blocks.push_back({b[0].get<double>(), b[1].get<std::uint64_t>()});
    }
    return ThetaSequence::blocks(std::move(blocks));
  }
  throw validation_error("theta JSON: unknown kind \"" + kind + "\"");
}

// Inline theta argument: "constant:<angle>", "file:<path>", or "triple".
inline ThetaSequence parse_theta_arg(const std::string& arg) {
  if (arg == "triple") return triple_preset();
  if (arg.rfind("constant:", 0) == 0) {
    const std::string v = arg.substr(9);
    std::size_t used = 0;
    double angle = 0.0;
    try {
      angle = std::stod(v, &used);
    } catch (const std::exception&) {
      throw validation_error("theta argument: bad angle \"" + v + "\"");
    }
    if (used != v.size()) throw validation_error("theta argument: bad angle \"" + v + "\"");
    return ThetaSequence::constant(angle);
  }
  if (arg.rfind("file:", 0) == 0) {
    return theta_from_json(load_json(arg.substr(5)));
  }
  throw validation_error(
      "theta argument must be constant:<angle>, file:<path>, or triple; got \"" + arg + "\"");
}

// --- construction export ---

namespace detail {

inline void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void append_point(std::string& out, Point2 p) {
  out += '[';
  append_double(out, p.x);
  out += ',';
  append_double(out, p.y);
  out += ']';
}

}  // namespace detail

// Streams {"theta": ..., "depth": N, "levels": [{"level", "edge_length",
// "caps": [[base_start, base_end, apex], ...]}, ...]} with levels 0..depth.
inline void write_construction_json(std::ostream& os, const Construction& c) {
  os << "{\"schema\":\"reiflab.construction/1\",\"theta\":" << theta_to_json(c.theta()).dump()
     << ",\"depth\":" << c.depth() << ",\"levels\":[";
  std::string chunk;
  for (std::uint32_t n = 0; n <= c.depth(); ++n) {
    chunk.clear();
    chunk.reserve(80 << std::min<std::uint32_t>(n, 20));
    if (n > 0) chunk += ',';
    chunk += "{\"level\":" + std::to_string(n) + ",\"edge_length\":";
    detail::append_double(chunk, edge_length(c.theta(), n));
    chunk += ",\"caps\":[";
    const std::uint64_t caps = c.edge_count(n);
    for (std::uint64_t i = 1; i <= caps; ++i) {
      const TriangularCap cap = c.cap(n, i);
      if (i > 1) chunk += ',';
      chunk += '[';
      detail::append_point(chunk, cap.base_start);
      chunk += ',';
      detail::append_point(chunk, cap.base_end);
      chunk += ',';
      detail::append_point(chunk, cap.apex);
      chunk += ']';
    }
    chunk += "]}";
    os << chunk;
  }
  os << "]}";
  if (!os.good()) throw io_error("construction JSON write failed");
}

// SVG with the fixed viewBox [-0.1, 1.1] x [-0.1, 0.6]; the curve lives in
// y >= 0, SVG y grows downward, so y_svg = 0.5 - y. Stroke width follows the
// final edge length so deep curves stay resolvable, clamped for visibility.
inline void write_construction_svg(std::ostream& os, const Construction& c,
                                   int cap_level = -1) {
  const std::uint32_t depth = c.depth();
  const double stroke =
      std::min(0.005, std::max(0.0005, 0.5 * edge_length(c.theta(), depth)));
  char buf[64];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.1 -0.1 1.2 0.7\">\n";
  if (cap_level >= 0) {
    if (static_cast<std::uint32_t>(cap_level) > depth) {
      throw validation_error("svg: cap outline level exceeds depth");
    }
    const auto n = static_cast<std::uint32_t>(cap_level);
    for (std::uint64_t i = 1; i <= c.edge_count(n); ++i) {
      const TriangularCap cap = c.cap(n, i);
      os << "  <polygon fill=\"none\" stroke=\"#888888\" stroke-width=\"";
      std::snprintf(buf, sizeof buf, "%.6f", stroke * 0.5);
      os << buf << "\" points=\"";
      for (Point2 p : {cap.base_start, cap.base_end, cap.apex}) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f ", p.x, 0.5 - p.y);
        os << buf;
      }
      os << "\"/>\n";
    }
  }
  os << "  <polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"";
  std::snprintf(buf, sizeof buf, "%.6f", stroke);
  os << buf << "\" points=\"";
  const auto& v = c.vertices(depth);
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", v[k].x, 0.5 - v[k].y);
    os << buf;
    if (k + 1 < v.size()) os << ' ';
  }
  os << "\"/>\n</svg>\n";
  if (!os.good()) throw io_error("SVG write failed");
}

// --- tables and reports ---

inline std::string to_csv(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k > 0) out += ',';
    out += header[k];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw validation_error("to_csv: ragged row");
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) out += ',';
      detail::append_double(out, row[k]);
    }
    out += '\n';
  }
  return out;
}

inline json report_to_json(const PropertyReport& r) {
  json j;
  j["schema"] = "reiflab.property_report/1";
  j["property"] = r.id.to_string();
  j["verdict"] = to_string(r.verdict);
  j["delta"] = r.delta;
  j["ladder"] = r.ladder;
  j["seed"] = r.seed;
  j["resolution_floor"] = r.resolution_floor;
  j["centers"] = {{"pass", r.centers_pass},
                  {"fail", r.centers_fail},
                  {"inconclusive", r.centers_inconclusive}};
  json w = json::array();
  for (const Witness& x : r.witnesses) {
    w.push_back({{"y", {x.y.x, x.y.y}},
                 {"rho", x.rho},
                 {"defect", x.defect},
                 {"line_angle", x.line_angle}});
  }
  j["witnesses"] = std::move(w);
  j["caveats"] = r.caveats;
  return j;
}

inline json audit_to_json(const SeparationAudit& a) {
  json j;
  j["schema"] = "reiflab.separation_audit/1";
  j["pairs_checked"] = a.pairs_checked;
  j["max_pair_angle"] = a.max_pair_angle;
  j["rectangles_checked"] = a.rectangles_checked;
  j["passed"] = a.passed();
  auto dump = [](const std::vector<AuditViolation>& vs) {
    json out = json::array();
    for (const AuditViolation& v : vs) {
      out.push_back({{"level", v.level},
                     {"index", v.index},
                     {"point", {v.point.x, v.point.y}},
                     {"value", v.value}});
    }
    return out;
  };
  j["cone_violations"] = dump(a.cone_violations);
  j["rectangle_violations"] = dump(a.rectangle_violations);
  return j;
}

}  // namespace reiflab
