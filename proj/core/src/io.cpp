#include "tlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tlab {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// -- Json --

Json Json::object() {
  Json j;
  j.type = Type::Object;
  return j;
}
Json Json::array() {
  Json j;
  j.type = Type::Array;
  return j;
}
Json Json::of(double v) {
  Json j;
  j.type = Type::Number;
  j.number = v;
  return j;
}
Json Json::of(int v) { return of(static_cast<double>(v)); }
Json Json::of(bool v) {
  Json j;
  j.type = Type::Bool;
  j.flag = v;
  return j;
}
Json Json::of(std::string v) {
  Json j;
  j.type = Type::String;
  j.text = std::move(v);
  return j;
}
Json Json::of(const char* v) { return of(std::string(v)); }

Json& Json::set(const std::string& key, Json value) {
  if (type != Type::Object) throw std::logic_error("Json::set on a non-object");
  members.emplace_back(key, std::move(value));
  return *this;
}

Json& Json::push(Json value) {
  if (type != Type::Array) throw std::logic_error("Json::push on a non-array");
  items.push_back(std::move(value));
  return *this;
}

namespace {

void escape_to(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_to(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type) {
    case Json::Type::Null: out += "null"; break;
    case Json::Type::Bool: out += j.flag ? "true" : "false"; break;
    case Json::Type::Number:
      if (std::isfinite(j.number))
        out += format_number(j.number);
      else
        out += "null";
      break;
    case Json::Type::String: escape_to(out, j.text); break;
    case Json::Type::Array: {
      if (j.items.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (size_t i = 0; i < j.items.size(); ++i) {
        out += pad_in;
        dump_to(j.items[i], out, indent, depth + 1);
        if (i + 1 < j.items.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      break;
    }
    case Json::Type::Object: {
      if (j.members.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (size_t i = 0; i < j.members.size(); ++i) {
        out += pad_in;
        escape_to(out, j.members[i].first);
        out += ": ";
        dump_to(j.members[i].second, out, indent, depth + 1);
        if (i + 1 < j.members.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      break;
    }
  }
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string Json::dump(int indent) const {
  std::string out;
  dump_to(*this, out, indent, 0);
  out += '\n';
  return out;
}

std::string csv_join(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("short write: " + path);
}

// -- result serialization --

std::vector<std::vector<std::string>> study_csv(const StudyTable& table) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"parameter", "quantity", "value", "target", "source", "margin", "status"});
  for (const StudyRow& r : table.rows) {
    bool first = true;
    for (const auto& [name, value] : r.values) {
      rows.push_back({r.parameter, name, format_number(value), first ? r.target : "",
                      first ? r.source : "", first ? format_number(r.margin) : "",
                      first ? r.status : ""});
      first = false;
    }
    if (r.values.empty())
      rows.push_back({r.parameter, "", "", r.target, r.source, format_number(r.margin), r.status});
  }
  return rows;
}

Json study_json(const StudyTable& table) {
  Json root = Json::object();
  root.set("study", Json::of(table.name));
  root.set("all_ok", Json::of(table.all_ok));
  Json notes = Json::array();
  for (const auto& n : table.notes) notes.push(Json::of(n));
  root.set("notes", std::move(notes));
  Json rows = Json::array();
  for (const StudyRow& r : table.rows) {
    Json row = Json::object();
    row.set("parameter", Json::of(r.parameter));
    Json vals = Json::object();
    for (const auto& [name, value] : r.values) vals.set(name, Json::of(value));
    row.set("values", std::move(vals));
    row.set("target", Json::of(r.target));
    row.set("source", Json::of(r.source));
    row.set("margin", Json::of(r.margin));
    row.set("status", Json::of(r.status));
    rows.push(std::move(row));
  }
  root.set("rows", std::move(rows));
  return root;
}

std::vector<std::vector<std::string>> report_csv(const FunctionalReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"level", "h", "n_tris", "T", "M", "lambda1", "F", "G"});
  for (size_t i = 0; i < report.levels.size(); ++i) {
    const LevelRow& L = report.levels[i];
    rows.push_back({std::to_string(i), format_number(L.h), std::to_string(L.n_tris),
                    format_number(L.T), format_number(L.M), format_number(L.lambda),
                    format_number(L.T / (L.M * report.area)),
                    format_number(L.M * L.lambda)});
  }
  rows.push_back({"extrapolated", "", "", format_number(report.T), format_number(report.M),
                  format_number(report.lambda1), format_number(report.F),
                  format_number(report.G)});
  return rows;
}

Json report_json(const FunctionalReport& report) {
  Json root = Json::object();
  root.set("domain", Json::of(report.domain_label));
  root.set("area", Json::of(report.area));
  root.set("perimeter", Json::of(report.perimeter));
  root.set("convex", Json::of(report.convex));
  Json levels = Json::array();
  for (const LevelRow& L : report.levels) {
    Json row = Json::object();
    row.set("h", Json::of(L.h));
    row.set("n_tris", Json::of(L.n_tris));
    row.set("T", Json::of(L.T));
    row.set("M", Json::of(L.M));
    row.set("lambda1", Json::of(L.lambda));
    levels.push(std::move(row));
  }
  root.set("levels", std::move(levels));
  root.set("T", Json::of(report.T));
  root.set("M", Json::of(report.M));
  root.set("lambda1", Json::of(report.lambda1));
  Json x0 = Json::array();
  x0.push(Json::of(report.x0.x)).push(Json::of(report.x0.y));
  root.set("x0", std::move(x0));
  root.set("F", Json::of(report.F));
  root.set("G", Json::of(report.G));
  root.set("F_uncertainty", Json::of(report.F_uncertainty));
  root.set("G_uncertainty", Json::of(report.G_uncertainty));
  return root;
}

std::vector<std::vector<std::string>> audit_csv(const std::vector<BoundCheck>& checks) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"name", "inequality", "margin", "status"});
  for (const BoundCheck& c : checks)
    rows.push_back({c.name, c.inequality, format_number(c.margin), c.status});
  return rows;
}

Json audit_json(const std::vector<BoundCheck>& checks) {
  Json arr = Json::array();
  for (const BoundCheck& c : checks) {
    Json row = Json::object();
    row.set("name", Json::of(c.name));
    row.set("inequality", Json::of(c.inequality));
    row.set("margin", Json::of(c.margin));
    row.set("status", Json::of(c.status));
    arr.push(std::move(row));
  }
  return arr;
}

Json trace_json(const OptimTrace& trace) {
  Json root = Json::object();
  root.set("status", Json::of(trace.status));
  root.set("best_G", Json::of(trace.best_G));
  root.set("evaluations", Json::of(trace.evaluations));
  Json best = Json::array();
  for (const Vec2& v : trace.best) {
    Json p = Json::array();
    p.push(Json::of(v.x)).push(Json::of(v.y));
    best.push(std::move(p));
  }
  root.set("best_vertices", std::move(best));
  Json iters = Json::array();
  for (const OptimStep& s : trace.iterates) {
    Json row = Json::object();
    row.set("G", Json::of(s.G));
    row.set("grad_norm", Json::of(s.grad_norm));
    row.set("step", Json::of(s.step));
    Json poly = Json::array();
    for (const Vec2& v : s.vertices) {
      Json p = Json::array();
      p.push(Json::of(v.x)).push(Json::of(v.y));
      poly.push(std::move(p));
    }
    row.set("vertices", std::move(poly));
    iters.push(std::move(row));
  }
  root.set("iterates", std::move(iters));
  return root;
}

// -- SVG --

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string diverging_color(double t) {  // t in [-1, 1]: blue -> white -> red
  t = std::clamp(t, -1.0, 1.0);
  int r, g, b;
  if (t < 0) {
    const double u = 1.0 + t;  // 0 at full blue
    r = static_cast<int>(std::lround(33 + (255 - 33) * u));
    g = static_cast<int>(std::lround(102 + (255 - 102) * u));
    b = 255;
  } else {
    const double u = 1.0 - t;
    r = 255;
    g = static_cast<int>(std::lround(33 + (255 - 33) * u));
    b = static_cast<int>(std::lround(33 + (255 - 33) * u));
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(int width_px, int height_px) : width_(width_px), height_(height_px) {}

void SvgCanvas::fit_world(double xmin, double xmax, double ymin, double ymax, double margin_px) {
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double sx = (width_ - 2 * margin_px) / (xmax - xmin);
  const double sy = (height_ - 2 * margin_px) / (ymax - ymin);
  sx_ = sx;
  sy_ = sy;
  ox_ = margin_px - xmin * sx;
  oy_ = height_ - margin_px + ymin * sy;
}

Vec2 SvgCanvas::to_px(Vec2 world) const { return {world.x * sx_ + ox_, oy_ - world.y * sy_}; }

void SvgCanvas::polyline(const std::vector<Vec2>& pts, const std::string& stroke, double width_px,
                         bool close, const std::string& fill) {
  if (pts.empty()) return;
  std::string d = "<path d=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec2 p = to_px(pts[i]);
    d += (i == 0 ? "M" : "L") + px(p.x) + " " + px(p.y);
  }
  if (close) d += "Z";
  d += "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\" stroke-width=\"" + px(width_px) +
       "\" stroke-linejoin=\"round\"/>";
  elements_.push_back(std::move(d));
}

void SvgCanvas::circle(Vec2 world, double radius_px, const std::string& fill) {
  const Vec2 p = to_px(world);
  elements_.push_back("<circle cx=\"" + px(p.x) + "\" cy=\"" + px(p.y) + "\" r=\"" +
                      px(radius_px) + "\" fill=\"" + fill + "\"/>");
}

void SvgCanvas::segment(Vec2 a, Vec2 b, const std::string& stroke, double width_px) {
  const Vec2 pa = to_px(a), pb = to_px(b);
  segment_px(pa.x, pa.y, pb.x, pb.y, stroke, width_px);
}

void SvgCanvas::segment_px(double x1, double y1, double x2, double y2, const std::string& stroke,
                           double width_px) {
  elements_.push_back("<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) +
                      "\" y2=\"" + px(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
                      px(width_px) + "\" stroke-linecap=\"round\"/>");
}

void SvgCanvas::text(Vec2 world, const std::string& s, double size_px, const std::string& anchor) {
  const Vec2 p = to_px(world);
  text_px(p.x, p.y, s, size_px, anchor);
}

void SvgCanvas::text_px(double x, double y, const std::string& s, double size_px,
                        const std::string& anchor) {
  std::string esc;
  for (char c : s) {
    if (c == '<')
      esc += "&lt;";
    else if (c == '>')
      esc += "&gt;";
    else if (c == '&')
      esc += "&amp;";
    else
      esc += c;
  }
  elements_.push_back("<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-size=\"" + px(size_px) +
                      "\" font-family=\"monospace\" text-anchor=\"" + anchor + "\">" + esc +
                      "</text>");
}

std::string SvgCanvas::finish() const {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(width_) + "\" height=\"" + std::to_string(height_) +
                    "\" viewBox=\"0 0 " + std::to_string(width_) + " " + std::to_string(height_) +
                    "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : elements_) {
    out += e;
    out += '\n';
  }
  out += "</svg>\n";
  return out;
}

std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel, const std::vector<Series>& series) {
  SvgCanvas canvas(640, 420);
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const Series& s : series)
    for (const Vec2& p : s.points) {
      if (first) {
        xmin = xmax = p.x;
        ymin = ymax = p.y;
        first = false;
      }
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double ypad = 0.08 * (ymax - ymin);
  canvas.fit_world(xmin, xmax, ymin - ypad, ymax + ypad, 56);

  // axes with corner tick labels
  const Vec2 bl = {xmin, ymin - ypad}, br = {xmax, ymin - ypad}, tl = {xmin, ymax + ypad};
  canvas.segment(bl, br, "#444444", 1.0);
  canvas.segment(bl, tl, "#444444", 1.0);
  canvas.text_px(56, 412, format_number(xmin).substr(0, 10), 11, "start");
  canvas.text_px(584, 412, format_number(xmax).substr(0, 10), 11, "end");
  canvas.text_px(52, 370, format_number(ymin).substr(0, 10), 11, "end");
  canvas.text_px(52, 60, format_number(ymax).substr(0, 10), 11, "end");
  canvas.text_px(320, 20, title, 14, "middle");
  canvas.text_px(320, 408, xlabel, 12, "middle");
  canvas.text_px(14, 210, ylabel, 12, "middle");

  for (size_t i = 0; i < series.size(); ++i) {
    const std::string color = kPalette[i % kPaletteSize];
    canvas.polyline(series[i].points, color, 1.6);
    for (const Vec2& p : series[i].points) canvas.circle(p, 2.4, color);
    const double ly = 40 + 16 * static_cast<double>(i);
    canvas.segment_px(68, ly, 84, ly, color, 2.5);
    canvas.text_px(90, ly + 4, series[i].name, 12, "start");
  }
  return canvas.finish();
}

std::string svg_boundary_field(const Mesh& mesh, const BoundaryField& field,
                               const std::string& title) {
  SvgCanvas canvas(560, 560);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Vec2& p : mesh.nodes) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  canvas.fit_world(xmin, xmax, ymin, ymax, 48);
  double vmax = 0;
  for (double v : field.edge_value) vmax = std::max(vmax, std::abs(v));
  if (vmax <= 0) vmax = 1;
  for (size_t e = 0; e < mesh.bedges.size(); ++e) {
    const Vec2 a = mesh.nodes[mesh.bedges[e][0]];
    const Vec2 b = mesh.nodes[mesh.bedges[e][1]];
    canvas.segment(a, b, diverging_color(field.edge_value[e] / vmax), 3.0);
  }
  canvas.text_px(280, 24, title, 14, "middle");
  canvas.text_px(280, 544, "range +-" + format_number(vmax).substr(0, 12), 12, "middle");
  return canvas.finish();
}

std::string svg_polygon_sequence(const std::vector<std::vector<Vec2>>& polygons,
                                 const std::string& title) {
  SvgCanvas canvas(560, 560);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& poly : polygons)
    for (const Vec2& p : poly) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  if (polygons.empty()) {
    xmin = ymin = 0;
    xmax = ymax = 1;
  }
  canvas.fit_world(xmin, xmax, ymin, ymax, 48);
  for (size_t i = 0; i < polygons.size(); ++i) {
    const bool last = i + 1 == polygons.size();
    const double shade = polygons.size() > 1
                             ? 0.75 - 0.55 * static_cast<double>(i) /
                                          static_cast<double>(polygons.size() - 1)
                             : 0.2;
    char gray[16];
    std::snprintf(gray, sizeof(gray), "#%02x%02x%02x", static_cast<int>(255 * shade),
                  static_cast<int>(255 * shade), static_cast<int>(255 * shade));
    canvas.polyline(polygons[i], last ? "#d62728" : gray, last ? 2.2 : 1.2, true);
  }
  canvas.text_px(280, 24, title, 14, "middle");
  return canvas.finish();
}

}  // namespace tlab
