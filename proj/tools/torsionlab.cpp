// Command-line front end: binds configs and flags to library operations and
// writes table.csv / summary.json / plot.svg into the run directory.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tlab/config.hpp"
#include "tlab/experiments.hpp"
#include "tlab/functionals.hpp"
#include "tlab/io.hpp"
#include "tlab/optimizer.hpp"
#include "tlab/shape_calculus.hpp"

namespace {

using namespace tlab;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& csv, const std::string& what) {
  std::vector<double> out;
  for (const std::string& tok : split(csv, ','))
    if (!tok.empty()) out.push_back(parse_double(tok, what));
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

// Grammar: triangle | square | disk[:SEGMENTS] | ellipse:A,B[,SEGMENTS] |
// rectangle:N | cluster:N | perforated:EPS[,C0] | polygon:x,y;x,y;...
DomainSpec parse_domain(const std::string& text) {
  const size_t colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (head == "triangle") return DomainSpec::equilateral_triangle();
  if (head == "square") return DomainSpec::unit_square();
  if (head == "disk") {
    int segments = 512;
    if (!args.empty()) segments = static_cast<int>(parse_double(args, "disk segments"));
    return DomainSpec::disk({0.0, 0.0}, 1.0, segments);
  }
  if (head == "ellipse") {
    const auto parts = parse_list(args.empty() ? "2,1" : args, "ellipse axes");
    if (parts.size() < 2) throw std::invalid_argument("ellipse needs two semi-axes");
    DomainSpec spec = DomainSpec::ellipse(parts[0], parts[1]);
    if (parts.size() > 2) spec.segments = static_cast<int>(parts[2]);
    return spec;
  }
  if (head == "rectangle") {
    if (args.empty()) throw std::invalid_argument("rectangle needs a half-width, e.g. rectangle:5");
    return DomainSpec::rectangle(parse_double(args, "rectangle half-width"));
  }
  if (head == "cluster") {
    if (args.empty()) throw std::invalid_argument("cluster needs a count, e.g. cluster:16");
    return DomainSpec::ball_cluster(static_cast<int>(parse_double(args, "cluster count")));
  }
  if (head == "perforated") {
    const auto parts = parse_list(args.empty() ? "0.125" : args, "perforation parameters");
    PerforationParams pp;
    pp.epsilon = parts[0];
    if (parts.size() > 1) pp.C0 = parts[1];
    return DomainSpec::perforated(DomainSpec::unit_square(), pp);
  }
  if (head == "polygon") {
    std::vector<Vec2> verts;
    for (const std::string& pair : split(args, ';')) {
      if (pair.empty()) continue;
      const auto xy = split(pair, ',');
      if (xy.size() != 2) throw std::invalid_argument("polygon vertex needs x,y: '" + pair + "'");
      verts.push_back({parse_double(xy[0], "vertex x"), parse_double(xy[1], "vertex y")});
    }
    if (verts.size() < 3) throw std::invalid_argument("polygon needs at least three vertices");
    return DomainSpec::polygon(verts);
  }
  throw std::invalid_argument("unknown domain '" + text + "'");
}

ShapeVelocity parse_velocity(const std::string& name) {
  if (name == "translate-x") return ShapeVelocity::translation_x();
  if (name == "translate-y") return ShapeVelocity::translation_y();
  if (name == "dilate") return ShapeVelocity::dilation();
  if (name == "squeeze") return ShapeVelocity::squeeze();
  throw std::invalid_argument("unknown velocity field '" + name +
                              "' (translate-x, translate-y, dilate, squeeze)");
}

void write_artifacts(const std::string& out_dir,
                     const std::vector<std::vector<std::string>>& table, const Json& summary,
                     const std::string& svg) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/table.csv", csv_join(table));
  write_text_file(out_dir + "/summary.json", summary.dump());
  write_text_file(out_dir + "/plot.svg", svg);
}

// Flags beat config values beat defaults.
struct Resolver {
  const CLI::App* cmd;
  const Config* cfg;

  double num(const CLI::Option* opt, double flag_value, const std::string& section,
             const std::string& key, double fallback) const {
    if (opt->count() > 0) return flag_value;
    return cfg->get(section, key, fallback);
  }
  int num(const CLI::Option* opt, int flag_value, const std::string& section,
          const std::string& key, int fallback) const {
    if (opt->count() > 0) return flag_value;
    return cfg->get(section, key, fallback);
  }
  std::string str(const CLI::Option* opt, const std::string& flag_value,
                  const std::string& section, const std::string& key,
                  const std::string& fallback) const {
    if (opt->count() > 0) return flag_value;
    return cfg->get(section, key, fallback);
  }
};

struct RunSettings {
  std::string domain_text;
  double h = 0.02;
  int levels = 2;
  std::string out = ".";
  bool assert_mode = false;
  int parallelism = 0;  // informational; every kernel is deterministic and serial
  double tol = 0.0;
};

int run_report(const RunSettings& rs) {
  const Domain dom = build_domain(parse_domain(rs.domain_text));
  const FunctionalReport rep = functional_report(dom, rs.h, rs.levels);
  const auto checks = bound_audit(dom, rep);

  bool ok = true;
  for (const auto& c : checks) ok = ok && c.status != "violated";

  Json summary = report_json(rep);
  summary.set("audit", audit_json(checks));
  summary.set("ok", Json::of(ok));

  std::vector<Series> series(2);
  series[0].name = "G per level";
  series[1].name = "F per level";
  for (const LevelRow& L : rep.levels) {
    series[0].points.push_back({L.h, L.M * L.lambda});
    series[1].points.push_back({L.h, L.T / (L.M * rep.area)});
  }
  write_artifacts(rs.out, report_csv(rep), summary,
                  svg_line_chart(rep.domain_label + ": functionals vs h", "h", "value", series));
  std::printf("G = %s  F = %s  (%s)\n", format_number(rep.G).c_str(),
              format_number(rep.F).c_str(), ok ? "audit ok" : "audit VIOLATED");
  return ok || !rs.assert_mode ? 0 : 1;
}

int run_audit(const RunSettings& rs) {
  const Domain dom = build_domain(parse_domain(rs.domain_text));
  const FunctionalReport rep = functional_report(dom, rs.h, rs.levels);
  const auto checks = bound_audit(dom, rep, rs.tol > 0 ? rs.tol : 0.005);

  bool ok = true;
  std::vector<Series> margins(1);
  margins[0].name = "margin";
  int idx = 0;
  for (const auto& c : checks) {
    ok = ok && c.status != "violated";
    if (c.status != "not-applicable") margins[0].points.push_back({double(idx), c.margin});
    ++idx;
  }
  Json summary = Json::object();
  summary.set("domain", Json::of(rep.domain_label));
  summary.set("F", Json::of(rep.F));
  summary.set("G", Json::of(rep.G));
  summary.set("checks", audit_json(checks));
  summary.set("ok", Json::of(ok));
  write_artifacts(rs.out, audit_csv(checks), summary,
                  svg_line_chart(rep.domain_label + ": audit margins", "check #", "margin",
                                 margins));
  for (const auto& c : checks)
    std::printf("%-24s %-38s %+12.6f  %s\n", c.name.c_str(), c.inequality.c_str(), c.margin,
                c.status.c_str());
  return ok || !rs.assert_mode ? 0 : 1;
}

int run_residual(const RunSettings& rs) {
  const Domain dom = build_domain(parse_domain(rs.domain_text));
  const CriticalityData data = criticality_data(dom, rs.h, rs.levels - 1);
  const BoundaryField rho = optimality_residual(data);
  const double scale = data.M * data.lambda1 / data.perimeter;

  double sup = 0.0, total_green = 0.0;
  const Mesh& mesh = *data.mesh;
  std::vector<std::vector<std::string>> table;
  table.push_back({"edge", "x_mid", "y_mid", "length", "flux_torsion", "flux_eigen", "flux_green",
                   "rho", "rho_normalized"});
  BoundaryField shown;
  shown.mesh = rho.mesh;
  shown.edge_value.resize(rho.edge_value.size());
  for (size_t e = 0; e < rho.edge_value.size(); ++e) {
    const Vec2 a = mesh.nodes[mesh.bedges[e][0]], b = mesh.nodes[mesh.bedges[e][1]];
    const double len = dist(a, b);
    const double normalized = rho.edge_value[e] / scale;
    sup = std::max(sup, std::abs(normalized));
    total_green += data.flux_green.edge_value[e] * len;
    shown.edge_value[e] = normalized;
    table.push_back({std::to_string(e), format_number(0.5 * (a.x + b.x)),
                     format_number(0.5 * (a.y + b.y)), format_number(len),
                     format_number(data.flux_u.edge_value[e]),
                     format_number(data.flux_phi.edge_value[e]),
                     format_number(data.flux_green.edge_value[e]),
                     format_number(rho.edge_value[e]), format_number(normalized)});
  }
  const double tol = rs.tol > 0 ? rs.tol : 0.02;
  const bool ok = sup <= tol && std::abs(total_green + 1.0) <= 1e-8;

  Json summary = Json::object();
  summary.set("domain", Json::of(dom.label));
  summary.set("M", Json::of(data.M));
  summary.set("lambda1", Json::of(data.lambda1));
  summary.set("perimeter", Json::of(data.perimeter));
  Json x0 = Json::array();
  x0.push(Json::of(data.max_point.x0.x)).push(Json::of(data.max_point.x0.y));
  summary.set("x0", std::move(x0));
  summary.set("sup_normalized_residual", Json::of(sup));
  summary.set("green_flux_total", Json::of(total_green));
  summary.set("tolerance", Json::of(tol));
  summary.set("ok", Json::of(ok));

  write_artifacts(rs.out, table, summary,
                  svg_boundary_field(mesh, shown, dom.label + ": normalized residual"));
  std::printf("sup |rho|/(M lambda1 / per) = %s   green flux = %s  (%s)\n",
              format_number(sup).c_str(), format_number(total_green).c_str(),
              ok ? "ok" : "FAILED");
  return ok || !rs.assert_mode ? 0 : 1;
}

int run_derivative(const RunSettings& rs, const std::string& field) {
  const Domain dom = build_domain(parse_domain(rs.domain_text));
  const ShapeVelocity V = parse_velocity(field);
  const GeometryReport geo = geometry_report(dom);
  const CriticalityData data = criticality_data(dom, rs.h, rs.levels - 1);
  const DerivativeReport rep = shape_derivative(data, V, geo.convex);

  const bool null_field = field == "translate-x" || field == "translate-y" || field == "dilate";
  const double tol = rs.tol > 0 ? rs.tol : 1e-3;
  const bool ok = !null_field || std::abs(rep.G_prime) <= tol * rep.G;

  std::vector<std::vector<std::string>> table;
  table.push_back({"field", "G_prime", "M_prime", "lambda1_prime", "M", "lambda1", "G",
                   "beyond_hypotheses"});
  table.push_back({V.name, format_number(rep.G_prime), format_number(rep.M_prime),
                   format_number(rep.lambda1_prime), format_number(rep.M),
                   format_number(rep.lambda1), format_number(rep.G),
                   rep.beyond_hypotheses ? "true" : "false"});

  Json summary = Json::object();
  summary.set("domain", Json::of(dom.label));
  summary.set("field", Json::of(V.name));
  summary.set("G_prime", Json::of(rep.G_prime));
  summary.set("M_prime", Json::of(rep.M_prime));
  summary.set("lambda1_prime", Json::of(rep.lambda1_prime));
  summary.set("G", Json::of(rep.G));
  summary.set("beyond_hypotheses", Json::of(rep.beyond_hypotheses));
  summary.set("ok", Json::of(ok));

  // Pointwise integrand rho (V.n) along the boundary.
  const Mesh& mesh = *data.mesh;
  const BoundaryField rho = optimality_residual(data);
  BoundaryField weighted;
  weighted.mesh = &mesh;
  weighted.edge_value.resize(rho.edge_value.size());
  for (size_t e = 0; e < rho.edge_value.size(); ++e) {
    const Vec2 a = mesh.nodes[mesh.bedges[e][0]], b = mesh.nodes[mesh.bedges[e][1]];
    const Vec2 t = b - a;
    const double len = norm(t);
    const Vec2 n{t.y / len, -t.x / len};
    weighted.edge_value[e] = rho.edge_value[e] * dot(V.V(0.5 * (a + b)), n);
  }
  write_artifacts(rs.out, table, summary,
                  svg_boundary_field(mesh, weighted, dom.label + ": rho (V.n) for " + V.name));
  std::printf("G' = %s (field %s)%s\n", format_number(rep.G_prime).c_str(), V.name.c_str(),
              ok ? "" : "  FAILED");
  return ok || !rs.assert_mode ? 0 : 1;
}

int run_topo(const RunSettings& rs, const std::string& points_text) {
  if (points_text.empty())
    throw std::invalid_argument("topo: pass --points \"x,y;x,y;...\"");
  const Domain dom = build_domain(parse_domain(rs.domain_text));
  std::vector<Vec2> points;
  for (const std::string& pair : split(points_text, ';')) {
    if (pair.empty()) continue;
    const auto xy = split(pair, ',');
    if (xy.size() != 2) throw std::invalid_argument("topo point needs x,y: '" + pair + "'");
    points.push_back({parse_double(xy[0], "point x"), parse_double(xy[1], "point y")});
  }
  const CriticalityData data = criticality_data(dom, rs.h, rs.levels - 1);
  const auto samples = topological_field(data, points);

  bool ok = true;
  std::vector<std::vector<std::string>> table;
  table.push_back({"x", "y", "R"});
  std::vector<Series> series(1);
  series[0].name = "R";
  for (size_t i = 0; i < samples.size(); ++i) {
    ok = ok && samples[i].R > 0.0;
    table.push_back({format_number(samples[i].x.x), format_number(samples[i].x.y),
                     format_number(samples[i].R)});
    series[0].points.push_back({static_cast<double>(i), samples[i].R});
  }
  Json summary = Json::object();
  summary.set("domain", Json::of(dom.label));
  Json arr = Json::array();
  for (const auto& s : samples) {
    Json row = Json::object();
    row.set("x", Json::of(s.x.x));
    row.set("y", Json::of(s.x.y));
    row.set("R", Json::of(s.R));
    arr.push(std::move(row));
  }
  summary.set("samples", std::move(arr));
  summary.set("all_positive", Json::of(ok));
  write_artifacts(rs.out, table, summary,
                  svg_line_chart(dom.label + ": hole sensitivity", "sample #", "R", series));
  return ok || !rs.assert_mode ? 0 : 1;
}

int write_study(const RunSettings& rs, const StudyTable& table, const std::string& x_quantity,
                const std::string& y_quantity) {
  Json summary = study_json(table);
  if (table.name == "triangle-criticality") {
    for (const StudyRow& r : table.rows)
      if (r.parameter == "tau + sigma/27" && !r.values.empty())
        summary.set("tau_plus_sigma_over_27", Json::of(r.values[0].second));
  }

  std::vector<Series> series(1);
  series[0].name = y_quantity;
  double xi = 0;
  for (const StudyRow& r : table.rows)
    for (const auto& [name, value] : r.values)
      if (name == y_quantity) {
        double x = xi;
        for (const auto& [n2, v2] : r.values)
          if (n2 == x_quantity) x = v2;
        series[0].points.push_back({x, value});
        xi += 1.0;
      }
  write_artifacts(rs.out, study_csv(table), summary,
                  svg_line_chart("study " + table.name, x_quantity.empty() ? "row" : x_quantity,
                                 y_quantity, series));
  for (const StudyRow& r : table.rows)
    if (r.status == "violated")
      std::printf("VIOLATED: %s %s (margin %s)\n", r.parameter.c_str(), r.target.c_str(),
                  format_number(r.margin).c_str());
  std::printf("study %s: %s\n", table.name.c_str(), table.all_ok ? "all ok" : "violations found");
  return table.all_ok || !rs.assert_mode ? 0 : 1;
}

int run_optimize(const RunSettings& rs, const std::string& seed_text, int max_iters) {
  const DomainSpec seed_spec = parse_domain(seed_text);
  const Domain seed_dom = build_domain(seed_spec);
  if (seed_dom.loops.size() != 1)
    throw std::invalid_argument("optimize: seed must be a single-loop polygon");
  const std::vector<Vec2>& seed = seed_dom.loops[0].pts;

  OptimizerParams params;
  params.h = rs.h;
  params.levels = rs.levels;
  if (max_iters > 0) params.max_iters = max_iters;
  const OptimTrace trace = maximize_G(seed, params);

  std::vector<std::vector<std::string>> table;
  table.push_back({"iteration", "G", "grad_norm", "step", "n_vertices"});
  std::vector<std::vector<Vec2>> polys;
  for (size_t i = 0; i < trace.iterates.size(); ++i) {
    const OptimStep& s = trace.iterates[i];
    table.push_back({std::to_string(i), format_number(s.G), format_number(s.grad_norm),
                     format_number(s.step), std::to_string(s.vertices.size())});
    polys.push_back(s.vertices);
  }
  Json summary = trace_json(trace);
  const bool ok = trace.status != "stalled" || trace.iterates.size() > 1;
  summary.set("ok", Json::of(ok));
  write_artifacts(rs.out, table, summary,
                  svg_polygon_sequence(polys, "ascent iterates (red = final)"));
  std::printf("optimize: %s after %zu accepted steps, best G = %s\n", trace.status.c_str(),
              trace.iterates.size() - 1, format_number(trace.best_G).c_str());
  return ok || !rs.assert_mode ? 0 : 1;
}

int run_mesh_export(const RunSettings& rs) {
  const Domain dom = build_domain(parse_domain(rs.domain_text));
  Mesh mesh = triangulate(dom, MeshParams{rs.h, 20.0});
  for (int i = 1; i < rs.levels; ++i) mesh = refine(mesh);
  const MeshQuality q = mesh_quality(mesh);

  std::filesystem::create_directories(rs.out);
  write_mesh_text(mesh, rs.out + "/mesh.txt");

  std::vector<std::vector<std::string>> table;
  table.push_back({"n_nodes", "n_tris", "n_bedges", "min_angle_deg", "max_edge", "area",
                   "euler_ok"});
  table.push_back({std::to_string(q.n_nodes), std::to_string(q.n_tris),
                   std::to_string(q.n_bedges), format_number(q.min_angle_deg),
                   format_number(q.max_edge), format_number(q.area),
                   q.euler_ok ? "true" : "false"});
  Json summary = Json::object();
  summary.set("domain", Json::of(dom.label));
  summary.set("n_nodes", Json::of(q.n_nodes));
  summary.set("n_tris", Json::of(q.n_tris));
  summary.set("n_bedges", Json::of(q.n_bedges));
  summary.set("min_angle_deg", Json::of(q.min_angle_deg));
  summary.set("max_edge", Json::of(q.max_edge));
  summary.set("area", Json::of(q.area));
  summary.set("euler_ok", Json::of(q.euler_ok));
  const bool ok = q.euler_ok && q.min_angle_deg >= 20.0 && q.max_edge <= rs.h * (1 + 1e-9);
  summary.set("ok", Json::of(ok));

  std::vector<std::vector<Vec2>> outlines;
  for (const Loop& loop : dom.loops) outlines.push_back(loop.pts);
  write_artifacts(rs.out, table, summary, svg_polygon_sequence(outlines, dom.label));
  std::printf("mesh: %d nodes, %d tris, min angle %.3f deg, max edge %s (%s)\n", q.n_nodes,
              q.n_tris, q.min_angle_deg, format_number(q.max_edge).c_str(),
              ok ? "ok" : "FAILED");
  return ok || !rs.assert_mode ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for torsion shape functionals"};
  app.set_help_flag("--help", "print help");  // keep -h free for the mesh size
  app.require_subcommand(1);

  std::string config_path, domain_text, out_dir, field = "dilate", points_text, seed_text;
  std::string entries_text, widths_text, counts_text, screens_text, eps_text;
  double h = 0, tol = 0, C0 = 0, h_floor = 0;
  int levels = 0, parallelism = 0, max_iters = 0;
  bool assert_mode = false;

  auto add_common = [&](CLI::App* cmd, bool with_domain) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--config", config_path, "sectioned key=value config file");
    cmd->add_option("--out", out_dir, "output directory (default .)");
    cmd->add_option("--h", h, "mesh target edge length");
    cmd->add_option("--levels", levels, "nested mesh levels (>= 2)");
    cmd->add_option("--threads", parallelism, "parallelism degree (results are identical)");
    cmd->add_flag("--assert", assert_mode, "exit 1 when a check fails");
    cmd->add_option("--tol", tol, "override the command's assertion tolerance");
    if (with_domain) cmd->add_option("--domain", domain_text, "domain spec, e.g. ellipse:2,1");
    return cmd;
  };

  CLI::App* c_report = add_common(app.add_subcommand("report", "functionals with extrapolation"),
                                  true);
  CLI::App* c_audit = add_common(app.add_subcommand("audit", "bound audit"), true);
  CLI::App* c_residual =
      add_common(app.add_subcommand("residual", "boundary optimality residual"), true);
  CLI::App* c_derivative =
      add_common(app.add_subcommand("derivative", "shape derivative of G"), true);
  c_derivative->add_option("--field", field, "translate-x | translate-y | dilate | squeeze");
  CLI::App* c_topo = add_common(app.add_subcommand("topo", "hole-sensitivity field R"), true);
  c_topo->add_option("--points", points_text, "sample points x,y;x,y;...");

  CLI::App* c_study = app.add_subcommand("study", "canned study tables");
  c_study->set_help_flag("--help", "print help");
  c_study->require_subcommand(1);
  CLI::App* s_rect = add_common(c_study->add_subcommand("rectangle", "long rectangles"), false);
  s_rect->add_option("--widths", widths_text, "half-widths, e.g. 5,10,50");
  CLI::App* s_cluster = add_common(c_study->add_subcommand("cluster", "ball clusters"), false);
  s_cluster->add_option("--counts", counts_text, "satellite counts, e.g. 1,16,81");
  CLI::App* s_homog = add_common(c_study->add_subcommand("homog", "screened problem"), false);
  s_homog->add_option("--screens", screens_text, "screen constants, e.g. 100,1000,10000");
  s_homog->add_option("--h-floor", h_floor, "finest admissible mesh");
  CLI::App* s_perf = add_common(c_study->add_subcommand("perforated", "perforated square"),
                                false);
  s_perf->add_option("--epsilons", eps_text, "lattice half-pitches");
  s_perf->add_option("--C0", C0, "perforation constant");
  CLI::App* s_tric =
      add_common(c_study->add_subcommand("triangle-crit", "triangle moment system"), false);
  CLI::App* s_league = add_common(c_study->add_subcommand("league", "G ranking"), false);
  s_league->add_option("--entries", entries_text, "domains, e.g. triangle;square;disk");

  CLI::App* c_opt = add_common(app.add_subcommand("optimize", "projected ascent of G"), false);
  c_opt->add_option("--seed", seed_text, "seed polygon domain");
  c_opt->add_option("--max-iters", max_iters, "iteration cap");
  CLI::App* c_mesh = add_common(app.add_subcommand("mesh-export", "triangulate and export"),
                                true);

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg;
    if (!config_path.empty()) cfg = Config::load(config_path);

    auto passed = [](CLI::App* cmd, const std::string& name) {
      const CLI::Option* opt = cmd->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    auto settings = [&](CLI::App* cmd, double h_dflt, int levels_dflt,
                        const std::string& domain_dflt) {
      RunSettings rs;
      rs.domain_text = passed(cmd, "--domain") ? domain_text
                                               : cfg.get("run", "domain", domain_dflt);
      rs.h = passed(cmd, "--h") ? h : cfg.get("run", "h", h_dflt);
      rs.levels = passed(cmd, "--levels") ? levels : cfg.get("run", "levels", levels_dflt);
      rs.out = passed(cmd, "--out") ? out_dir : cfg.get("run", "out", std::string("."));
      rs.assert_mode = assert_mode || cfg.get("run", "assert", false);
      rs.parallelism = passed(cmd, "--threads") ? parallelism : cfg.get("run", "parallelism", 0);
      rs.tol = passed(cmd, "--tol") ? tol : cfg.get("tolerances", cmd->get_name(), 0.0);
      if (rs.h <= 0) throw std::invalid_argument("h must be positive");
      if (rs.levels < 2) throw std::invalid_argument("levels must be >= 2");
      if (rs.tol < 0) throw std::invalid_argument("tolerances must be positive");
      return rs;
    };

    if (app.got_subcommand(c_report)) return run_report(settings(c_report, 0.02, 3, "square"));
    if (app.got_subcommand(c_audit)) return run_audit(settings(c_audit, 0.02, 2, "square"));
    if (app.got_subcommand(c_residual))
      return run_residual(settings(c_residual, 0.02, 2, "disk"));
    if (app.got_subcommand(c_derivative)) {
      const RunSettings rs = settings(c_derivative, 0.02, 2, "disk");
      const std::string f = c_derivative->count("--field") ? field
                                                           : cfg.get("run", "field", field);
      return run_derivative(rs, f);
    }
    if (app.got_subcommand(c_topo)) {
      const RunSettings rs = settings(c_topo, 0.01, 3, "disk");
      const std::string pts = c_topo->count("--points") ? points_text
                                                        : cfg.get("run", "points", points_text);
      return run_topo(rs, pts);
    }
    if (app.got_subcommand(c_study)) {
      if (c_study->got_subcommand(s_rect)) {
        const RunSettings rs = settings(s_rect, 0.08, 2, "");
        const std::string w = s_rect->count("--widths")
                                  ? widths_text
                                  : cfg.get("study", "widths", std::string("5,10,50"));
        return write_study(rs, run_rectangle_study(parse_list(w, "widths"), rs.h, rs.levels),
                           "", "F");
      }
      if (c_study->got_subcommand(s_cluster)) {
        const RunSettings rs = settings(s_cluster, 0.05, 2, "");
        const std::string c = s_cluster->count("--counts")
                                  ? counts_text
                                  : cfg.get("study", "counts", std::string("1,16,81"));
        std::vector<int> counts;
        for (double v : parse_list(c, "counts")) counts.push_back(static_cast<int>(v));
        return write_study(rs, run_cluster_study(counts, rs.h, rs.levels), "", "F");
      }
      if (c_study->got_subcommand(s_homog)) {
        const RunSettings rs = settings(s_homog, 0.05, 2, "");
        const std::string s = s_homog->count("--screens")
                                  ? screens_text
                                  : cfg.get("study", "screens", std::string("100,1000,10000"));
        const double floor_v = s_homog->count("--h-floor") ? h_floor
                                                           : cfg.get("study", "h_floor", 2e-3);
        return write_study(rs,
                           run_homogenized_study(DomainSpec::unit_square(),
                                                 parse_list(s, "screens"), rs.h, floor_v),
                           "", "F_screen");
      }
      if (c_study->got_subcommand(s_perf)) {
        const RunSettings rs = settings(s_perf, 0.006, 2, "");
        const std::string e =
            s_perf->count("--epsilons")
                ? eps_text
                : cfg.get("study", "epsilons", std::string("0.142857142857,0.125,0.1"));
        const double c0 = s_perf->count("--C0") ? C0 : cfg.get("study", "C0", 0.05);
        return write_study(rs, run_perforated_study(parse_list(e, "epsilons"), c0, rs.h,
                                                    rs.levels),
                           "", "F");
      }
      if (c_study->got_subcommand(s_tric)) {
        const RunSettings rs = settings(s_tric, 0.02, 2, "");
        return write_study(rs, run_triangle_criticality(), "", "value");
      }
      if (c_study->got_subcommand(s_league)) {
        const RunSettings rs = settings(s_league, 0.02, 2, "");
        const std::string e = s_league->count("--entries")
                                  ? entries_text
                                  : cfg.get("study", "entries",
                                            std::string("triangle;square;disk"));
        std::vector<DomainSpec> specs;
        for (const std::string& tok : split(e, ';'))
          if (!tok.empty()) specs.push_back(parse_domain(tok));
        return write_study(rs, run_league_table(specs, rs.h, rs.levels), "", "G");
      }
    }
    if (app.got_subcommand(c_opt)) {
      const RunSettings rs = settings(c_opt, 0.04, 2, "");
      const std::string seed = c_opt->count("--seed")
                                   ? seed_text
                                   : cfg.get("optimize", "seed", std::string("rectangle:1.5"));
      const int iters = c_opt->count("--max-iters") ? max_iters
                                                    : cfg.get("optimize", "max_iters", 0);
      return run_optimize(rs, seed, iters);
    }
    if (app.got_subcommand(c_mesh))
      return run_mesh_export(settings(c_mesh, 0.05, 2, "square"));

    std::cerr << "no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
