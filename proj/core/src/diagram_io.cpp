#include "hbk/diagram_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hbk {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string require_string(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string())
    throw make_error("Syntax", where + ": missing or non-string field '" + key + "'");
  return j[key].get<std::string>();
}

Dir parse_dir(const std::string& s, const std::string& where) {
  if (s == "in") return Dir::in;
  if (s == "out") return Dir::out;
  throw make_error("Syntax", where + ": dir must be \"in\" or \"out\", got \"" + s + "\"");
}

Side parse_side(const std::string& s, const std::string& where) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw make_error("Syntax", where + ": side must be \"left\" or \"right\", got \"" + s + "\"");
}

}  // namespace

std::string serialize(const Diagram& d) {
  ordered_json j;
  j["name"] = d.name();
  j["crossings"] = ordered_json::array();
  for (const auto& c : d.crossings()) {  // already sorted by id
    ordered_json jc;
    jc["id"] = c.id;
    jc["sign"] = c.sign;
    jc["under_in"] = c.under_in;
    jc["under_out"] = c.under_out;
    jc["over_in"] = c.over_in;
    jc["over_out"] = c.over_out;
    j["crossings"].push_back(jc);
  }
  j["vertices"] = ordered_json::array();
  for (const auto& v : d.vertices()) {
    ordered_json jv;
    jv["id"] = v.id;
    jv["slots"] = ordered_json::array();
    for (const auto& s : v.slots) {
      ordered_json js;
      js["semi_arc"] = s.semi_arc;
      js["dir"] = to_string(s.dir);
      jv["slots"].push_back(js);
    }
    j["vertices"].push_back(jv);
  }
  if (d.outer()) {
    ordered_json jo;
    jo["semi_arc"] = d.outer()->semi_arc;
    jo["side"] = to_string(d.outer()->side);
    j["outer"] = jo;
  }
  return j.dump(2) + "\n";
}

Diagram parse_diagram(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw make_error("Syntax", e.what());
  }
  if (!j.is_object()) throw make_error("Syntax", "top level must be an object");

  std::string name = j.contains("name") ? require_string(j, "name", "top level") : "";

  std::vector<Crossing> crossings;
  if (j.contains("crossings")) {
    if (!j["crossings"].is_array()) throw make_error("Syntax", "'crossings' must be an array");
    for (const auto& jc : j["crossings"]) {
      Crossing c;
      c.id = require_string(jc, "id", "crossing");
      const std::string where = "crossing " + c.id;
      if (!jc.contains("sign") || !jc["sign"].is_number_integer())
        throw make_error("BadSign", where + ": missing integer 'sign'");
      c.sign = jc["sign"].get<int>();
      if (c.sign != 1 && c.sign != -1)
        throw make_error("BadSign", where + ": sign must be +1 or -1");
      c.under_in = require_string(jc, "under_in", where);
      c.under_out = require_string(jc, "under_out", where);
      c.over_in = require_string(jc, "over_in", where);
      c.over_out = require_string(jc, "over_out", where);
      crossings.push_back(std::move(c));
    }
  }

  std::vector<Vertex> vertices;
  if (j.contains("vertices")) {
    if (!j["vertices"].is_array()) throw make_error("Syntax", "'vertices' must be an array");
    for (const auto& jv : j["vertices"]) {
      Vertex v;
      v.id = require_string(jv, "id", "vertex");
      const std::string where = "vertex " + v.id;
      if (!jv.contains("slots") || !jv["slots"].is_array() || jv["slots"].size() != 3)
        throw make_error("Syntax", where + ": 'slots' must be an array of exactly 3 entries");
      for (size_t i = 0; i < 3; ++i) {
        const auto& js = jv["slots"][i];
        v.slots[i].semi_arc = require_string(js, "semi_arc", where);
        v.slots[i].dir = parse_dir(require_string(js, "dir", where), where);
      }
      vertices.push_back(std::move(v));
    }
  }

  std::optional<OuterSpec> outer;
  if (j.contains("outer") && !j["outer"].is_null()) {
    const auto& jo = j["outer"];
    OuterSpec o;
    o.semi_arc = require_string(jo, "semi_arc", "outer");
    o.side = parse_side(require_string(jo, "side", "outer"), "outer");
    outer = o;
  }

  return Diagram(std::move(name), std::move(crossings), std::move(vertices), std::move(outer));
}

Diagram load_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw make_error("Syntax", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str());
}

void save_diagram_file(const Diagram& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw make_error("Syntax", "cannot write " + path);
  out << serialize(d);
}

}  // namespace hbk
