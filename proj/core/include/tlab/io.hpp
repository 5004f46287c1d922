#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tlab/experiments.hpp"
#include "tlab/fem.hpp"
#include "tlab/functionals.hpp"
#include "tlab/geometry.hpp"
#include "tlab/optimizer.hpp"

namespace tlab {

// Insertion-ordered JSON tree; doubles are serialized with 17 significant
// digits so identical runs diff byte-identically.
struct Json {
  enum class Type { Null, Bool, Number, String, Array, Object };
  Type type = Type::Null;

  bool flag = false;
  double number = 0.0;
  std::string text;
  std::vector<Json> items;
  std::vector<std::pair<std::string, Json>> members;

  static Json object();
  static Json array();
  static Json of(double v);
  static Json of(int v);
  static Json of(bool v);
  static Json of(std::string v);
  static Json of(const char* v);

  Json& set(const std::string& key, Json value);  // object types only
  Json& push(Json value);                         // array types only
  std::string dump(int indent = 2) const;
};

std::string format_number(double v);  // %.17g, the one numeric format for artifacts

// CSV with minimal quoting; one row per vector entry.
std::string csv_join(const std::vector<std::vector<std::string>>& rows);
void write_text_file(const std::string& path, const std::string& content);

// -- serialization of result types --

std::vector<std::vector<std::string>> study_csv(const StudyTable& table);
Json study_json(const StudyTable& table);

std::vector<std::vector<std::string>> report_csv(const FunctionalReport& report);
Json report_json(const FunctionalReport& report);

std::vector<std::vector<std::string>> audit_csv(const std::vector<BoundCheck>& checks);
Json audit_json(const std::vector<BoundCheck>& checks);

Json trace_json(const OptimTrace& trace);

// -- SVG (no timestamps, fixed palette, world coordinates y-up) --

class SvgCanvas {
 public:
  SvgCanvas(int width_px, int height_px);
  void fit_world(double xmin, double xmax, double ymin, double ymax, double margin_px = 40);
  Vec2 to_px(Vec2 world) const;

  void polyline(const std::vector<Vec2>& pts, const std::string& stroke, double width_px,
                bool close = false, const std::string& fill = "none");
  void circle(Vec2 world, double radius_px, const std::string& fill);
  void segment(Vec2 a, Vec2 b, const std::string& stroke, double width_px);
  void segment_px(double x1, double y1, double x2, double y2, const std::string& stroke,
                  double width_px);
  void text(Vec2 world, const std::string& s, double size_px,
            const std::string& anchor = "start");
  void text_px(double x, double y, const std::string& s, double size_px,
               const std::string& anchor = "start");
  std::string finish() const;

  int width() const { return width_; }
  int height() const { return height_; }

 private:
  int width_, height_;
  double sx_ = 1, sy_ = 1, ox_ = 0, oy_ = 0;
  std::vector<std::string> elements_;
};

struct Series {
  std::string name;
  std::vector<Vec2> points;
};

std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel, const std::vector<Series>& series);

// Boundary edges colored by a per-edge value (diverging blue-white-red).
std::string svg_boundary_field(const Mesh& mesh, const BoundaryField& field,
                               const std::string& title);

// Overlaid closed polygons, first to last fading in.
std::string svg_polygon_sequence(const std::vector<std::vector<Vec2>>& polygons,
                                 const std::string& title);

}  // namespace tlab
