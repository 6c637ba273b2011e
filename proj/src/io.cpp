#include "green/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace green {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
  throw GreenError(ErrorKind::Validation, "config: " + msg);
}

double want_number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + " must be a number");
  return j.get<double>();
}

Coord want_coord(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || j.empty() || j.size() > 3)
    bad(where + " must be an array of 1..3 numbers");
  if (static_cast<int>(j.size()) != dim)
    bad(where + " must have " + std::to_string(dim) + " components for this model");
  Coord c{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < j.size(); ++i)
    c[i] = want_number(j[i], where + " component");
  return c;
}

Support parse_support(const json& j, int dim) {
  if (!j.is_object()) bad("centers[].support must be an object");
  const std::string type = j.value("type", "");
  if (type == "point") {
    if (!j.contains("position")) bad("point support needs \"position\"");
    return PointSupport{want_coord(j.at("position"), dim, "support.position")};
  }
  if (type == "circle") {
    if (!j.contains("center") || !j.contains("radius"))
      bad("circle support needs \"center\" and \"radius\"");
    const Coord c = want_coord(j.at("center"), 2, "support.center");
    const double r = want_number(j.at("radius"), "support.radius");
    const int order = j.value("order", 64);
    return make_circle(c[0], c[1], r, order);
  }
  if (type == "sphere") {
    if (!j.contains("center") || !j.contains("radius"))
      bad("sphere support needs \"center\" and \"radius\"");
    const Coord c = want_coord(j.at("center"), 3, "support.center");
    const double r = want_number(j.at("radius"), "support.radius");
    const int order = j.value("order", 16);
    return make_sphere(c, r, order);
  }
  bad("unknown support type \"" + type + "\" (expected point, circle, or sphere)");
}

Coupling parse_coupling(const json& j) {
  if (!j.is_object()) bad("centers[].coupling must be an object");
  const bool has_lambda = j.contains("lambda"), has_mu = j.contains("mu");
  if (has_lambda == has_mu) bad("coupling needs exactly one of \"lambda\" or \"mu\"");
  if (has_lambda) return BareCoupling{want_number(j.at("lambda"), "coupling.lambda")};
  return RenormCoupling{want_number(j.at("mu"), "coupling.mu")};
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open \"" + path + "\"");
  json root;
  try {
    root = json::parse(in);
  } catch (const std::exception& e) {
    bad(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) bad("top level must be an object");
  static const char* known[] = {"units", "model", "centers", "energy", "probes", "bench", "scan"};
  for (auto it = root.begin(); it != root.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) bad("unknown section \"" + it.key() + "\"");
  }

  RunConfig rc;
  if (root.contains("units")) {
    const json& u = root.at("units");
    if (!u.is_object()) bad("units must be an object");
    rc.model.units.hbar = u.contains("hbar") ? want_number(u.at("hbar"), "units.hbar") : 1.0;
    rc.model.units.mass2 = u.contains("mass2") ? want_number(u.at("mass2"), "units.mass2") : 1.0;
  }

  if (!root.contains("model")) bad("missing \"model\" section");
  const json& m = root.at("model");
  if (!m.is_object() || !m.contains("kind")) bad("model needs a \"kind\" string");
  const auto kind = model_kind_from_name(m.at("kind").get<std::string>());
  if (!kind) bad("unknown model kind \"" + m.at("kind").get<std::string>() + "\"");
  rc.model.kind = *kind;
  if (m.contains("torus")) {
    const json& t = m.at("torus");
    rc.model.torus = TorusGeometry{want_number(t.at("L1"), "model.torus.L1"),
                                   want_number(t.at("L2"), "model.torus.L2")};
  }
  if (m.contains("sphere")) {
    const json& s = m.at("sphere");
    rc.model.sphere = SphereGeometry{want_number(s.at("R"), "model.sphere.R")};
  }

  const int dim = ambient_dim(rc.model.kind);
  if (root.contains("centers")) {
    const json& cs = root.at("centers");
    if (!cs.is_array()) bad("centers must be an array");
    for (const json& c : cs) {
      if (!c.is_object() || !c.contains("support") || !c.contains("coupling"))
        bad("each center needs \"support\" and \"coupling\"");
      rc.model.centers.push_back({parse_support(c.at("support"), dim),
                                  parse_coupling(c.at("coupling"))});
    }
  }

  if (root.contains("energy")) {
    const json& e = root.at("energy");
    if (!e.is_object() || !e.contains("re")) bad("energy needs at least \"re\"");
    rc.energy = Cx(want_number(e.at("re"), "energy.re"),
                   e.contains("im") ? want_number(e.at("im"), "energy.im") : 0.0);
  }

  if (root.contains("probes")) {
    const json& ps = root.at("probes");
    if (!ps.is_array()) bad("probes must be an array");
    for (const json& p : ps) {
      if (!p.is_object() || !p.contains("x") || !p.contains("y"))
        bad("each probe needs \"x\" and \"y\"");
      rc.probes.push_back(
          {want_coord(p.at("x"), dim, "probe.x"), want_coord(p.at("y"), dim, "probe.y")});
    }
  }

  if (root.contains("bench")) {
    const json& b = root.at("bench");
    if (b.contains("n_max")) {
      if (!b.at("n_max").is_number_integer()) bad("bench.n_max must be an integer");
      rc.bench_n_max = b.at("n_max").get<int>();
    }
    if (b.contains("seed")) rc.bench_seed = b.at("seed").get<std::uint64_t>();
  }

  if (root.contains("scan")) {
    const json& s = root.at("scan");
    if (s.contains("e_lo")) rc.scan.e_lo = want_number(s.at("e_lo"), "scan.e_lo");
    if (s.contains("e_hi")) rc.scan.e_hi = want_number(s.at("e_hi"), "scan.e_hi");
    if (s.contains("grid")) rc.scan.grid = s.at("grid").get<int>();
    if (s.contains("tol")) rc.scan.tol = want_number(s.at("tol"), "scan.tol");
  }

  validate_or_throw(rc.model);
  return rc;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Cell num_cell(double v) { return {format_double(v), true}; }
Cell int_cell(long long v) { return {std::to_string(v), true}; }
Cell str_cell(const std::string& s) { return {s, false}; }

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

void append_json_value(std::string& out, const Cell& c) {
  if (c.is_number)
    out += c.text.empty() ? "null" : c.text;
  else
    out += "\"" + json_escape(c.text) + "\"";
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i].text;
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  std::string out = "{\n  \"meta\": {";
  for (std::size_t i = 0; i < t.meta.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += "\"" + json_escape(t.meta[i].first) + "\": ";
    append_json_value(out, t.meta[i].second);
  }
  out += t.meta.empty() ? "},\n" : "\n  },\n";
  out += "  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",\n    {" : "\n    {";
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      out += i ? ", " : "";
      out += "\"" + json_escape(t.columns[i]) + "\": ";
      append_json_value(out, t.rows[r][i]);
    }
    out += "}";
  }
  out += t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void write_output(const Table& t, const std::string& format, const std::string& out_path) {
  std::string payload;
  if (format == "csv")
    payload = to_csv(t);
  else if (format == "json")
    payload = to_json(t);
  else
    throw GreenError(ErrorKind::Validation, "format must be csv or json");
  if (out_path.empty()) {
    std::cout << payload;
    std::cout.flush();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw GreenError(ErrorKind::Validation, "cannot write \"" + out_path + "\"");
    out << payload;
  }
}

}  // namespace green
