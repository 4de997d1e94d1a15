// hbk: compute Alexander-biquandle coloring invariants of handlebody-knot
// diagrams and the derived lower bounds for unknotting number and Gordian
// distance. All arithmetic is exact; output is deterministic JSON.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbk/bounds.hpp"
#include "hbk/builders.hpp"
#include "hbk/coloring.hpp"
#include "hbk/diagram_io.hpp"
#include "hbk/moves.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<int64_t> parse_poly(const std::string& text) {
  std::vector<int64_t> out;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (cur.empty()) throw hbk::make_error("Syntax", "empty coefficient in '" + text + "'");
      out.push_back(std::stoll(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  return out;
}

struct FieldSpec {
  uint32_t p = 2;
  std::string f = "1,1,1";
  std::string s = "1";
  uint64_t m = 0;

  hbk::AlexanderBiquandle make_biquandle() const {
    hbk::Field field = hbk::Field::make(p, parse_poly(f));
    hbk::AlexanderBiquandle ab = hbk::AlexanderBiquandle::make(field, field.element(parse_poly(s)));
    if (m != 0) ab.require_zm_family(m);
    return ab;
  }

  void add_options(CLI::App* cmd, bool with_m = true) {
    cmd->add_option("--p", p, "prime characteristic")->required();
    cmd->add_option("--f", f, "modulus polynomial, ascending coefficients (e.g. 1,1,1)")
        ->required();
    cmd->add_option("--s", s, "the unit s, ascending coefficients")->required();
    if (with_m) cmd->add_option("--m", m, "flow modulus (a multiple of the type)")->required();
  }
};

hbk::Flow flow_from_arg(const hbk::Diagram& d, uint64_t m, const std::string& arg) {
  if (arg.empty()) return hbk::make_flow(d, m, {});
  std::map<hbk::SemiArcId, int64_t> values;
  std::string cur;
  for (char ch : arg + ",") {
    if (ch != ',') {
      cur.push_back(ch);
      continue;
    }
    auto eq = cur.find('=');
    if (eq == std::string::npos)
      throw hbk::make_error("Syntax", "--flow expects arc=value pairs, got '" + cur + "'");
    values[cur.substr(0, eq)] = std::stoll(cur.substr(eq + 1));
    cur.clear();
  }
  return hbk::make_flow(d, m, values);
}

ordered_json profile_json(const hbk::DimProfile& profile) {
  ordered_json per_gcd = ordered_json::object();
  for (const auto& [g, dims] : profile.classes) {
    ordered_json entry = ordered_json::object();
    for (const auto& [dim, mult] : dims) entry[std::to_string(dim)] = mult;
    per_gcd[std::to_string(g)] = entry;
  }
  return per_gcd;
}

void emit(const ordered_json& j, bool text_mode) {
  if (text_mode) {
    for (const auto& [key, value] : j.items())
      std::cout << key << ": " << value.dump() << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alexander-biquandle coloring invariants of handlebody-knot diagrams"};
  app.require_subcommand(1);
  app.fallthrough();
  bool text_mode = false;
  app.add_flag("--text{true},--json{false}", text_mode, "output format (default json)");

  std::string file, file2, flow_arg, apply_arg, out_file;
  uint64_t cap = 1000000;
  uint64_t seed = 0;
  unsigned jobs = 1;
  bool list_flag = false;
  long randomize_steps = -1;
  FieldSpec spec;

  auto* validate_cmd = app.add_subcommand("validate", "check a diagram file");
  validate_cmd->add_option("file", file)->required();

  auto* flows_cmd = app.add_subcommand("flows", "count (and list) Z_m-flows");
  flows_cmd->add_option("file", file)->required();
  flows_cmd->add_option("--m", spec.m, "flow modulus")->required();
  flows_cmd->add_flag("--list", list_flag, "list every flow");
  flows_cmd->add_option("--cap", cap, "enumeration cap");

  auto* color_cmd = app.add_subcommand("color", "coloring rank/dimension for one flow");
  color_cmd->add_option("file", file)->required();
  spec.add_options(color_cmd);
  color_cmd->add_option("--flow", flow_arg, "arc=value,... (default: zero flow)");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force count vs (#X)^dim");
  oracle_cmd->add_option("file", file)->required();
  spec.add_options(oracle_cmd);
  oracle_cmd->add_option("--flow", flow_arg, "arc=value,... (default: zero flow)");
  oracle_cmd->add_option("--cap", cap, "work cap for the backtracking search");

  auto* relation_cmd = app.add_subcommand("check-relation", "linear relation residual, all flows");
  relation_cmd->add_option("file", file)->required();
  spec.add_options(relation_cmd);
  relation_cmd->add_option("--cap", cap, "flow enumeration cap");

  auto* unknot_cmd = app.add_subcommand("bound-unknot", "lower bound for the unknotting number");
  unknot_cmd->add_option("file", file)->required();
  spec.add_options(unknot_cmd);
  unknot_cmd->add_option("--cap", cap, "flow enumeration cap");
  unknot_cmd->add_option("--jobs", jobs, "parallel flow evaluation");

  auto* distance_cmd = app.add_subcommand("bound-distance", "lower bound for the Gordian distance");
  distance_cmd->add_option("file", file)->required();
  distance_cmd->add_option("file2", file2)->required();
  spec.add_options(distance_cmd);
  distance_cmd->add_option("--cap", cap, "flow enumeration cap");
  distance_cmd->add_option("--jobs", jobs, "parallel flow evaluation");

  auto* moves_cmd = app.add_subcommand("moves", "list or apply local rewrites");
  moves_cmd->add_option("file", file)->required();
  moves_cmd->add_flag("--list", list_flag, "list applicable sites");
  moves_cmd->add_option("--apply", apply_arg, "apply one site, e.g. R1+:x1,under,+");
  auto* rand_opt = moves_cmd->add_option("--randomize", randomize_steps, "apply N random moves");
  auto* seed_opt = moves_cmd->add_option("--seed", seed, "seed for --randomize");
  rand_opt->needs(seed_opt);
  moves_cmd->add_option("--out", out_file, "write the resulting diagram here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) {
      hbk::Diagram d = hbk::load_diagram_file(file);
      hbk::ValidationReport report = d.validate();
      ordered_json j;
      j["valid"] = report.ok();
      j["violations"] = report.violations;
      j["crossings"] = d.crossings().size();
      j["vertices"] = d.vertices().size();
      j["semi_arcs"] = d.semi_arc_count();
      j["components"] = d.component_count();
      if (report.ok()) j["faces"] = d.faces().count();
      emit(j, text_mode);
      return report.ok() ? 0 : 2;
    }

    if (flows_cmd->parsed()) {
      hbk::Diagram d = hbk::load_diagram_file(file);
      hbk::FlowSpace fs = hbk::flow_space(d, spec.m);
      ordered_json j;
      j["m"] = spec.m;
      j["arcs"] = fs.arc_count();
      j["rank"] = fs.rank();
      j["elementary_divisors"] = fs.elementary_divisors();
      j["count"] = fs.count_string();
      if (list_flag) {
        ordered_json flows = ordered_json::array();
        fs.for_each_flow(
            [&](const hbk::Flow& f) {
              ordered_json one = ordered_json::object();
              for (const auto& repr : fs.arc_order()) one[repr] = f.at(repr);
              flows.push_back(one);
            },
            cap);
        j["flows"] = flows;
      }
      if (text_mode) {
        std::cout << "count: " << fs.count_string() << "\n";
        if (list_flag)
          fs.for_each_flow(
              [&](const hbk::Flow& f) {
                bool first = true;
                for (const auto& repr : fs.arc_order()) {
                  std::cout << (first ? "" : " ") << repr << "=" << f.at(repr);
                  first = false;
                }
                std::cout << "\n";
              },
              cap);
      } else {
        emit(j, false);
      }
      return 0;
    }

    if (color_cmd->parsed()) {
      hbk::Diagram d = hbk::load_diagram_file(file);
      hbk::AlexanderBiquandle ab = spec.make_biquandle();
      hbk::Flow flow = flow_from_arg(d, spec.m, flow_arg);
      hbk::ColoringMatrix mx = hbk::coloring_matrix(d, flow, ab);
      size_t r = hbk::rank(mx);
      size_t dim = mx.col_count() - r;
      ordered_json j;
      j["type"] = ab.type();
      j["rank"] = r;
      j["dim"] = dim;
      j["count"] = hbk::coloring_count_string(ab.field(), dim);
      j["residual_zero"] = hbk::residual_is_zero(d, flow, ab);
      emit(j, text_mode);
      return 0;
    }

    if (oracle_cmd->parsed()) {
      hbk::Diagram d = hbk::load_diagram_file(file);
      hbk::AlexanderBiquandle ab = spec.make_biquandle();
      hbk::Flow flow = flow_from_arg(d, spec.m, flow_arg);
      uint64_t brute = hbk::coloring_count_bruteforce(d, flow, ab, cap);
      size_t dim = hbk::coloring_dimension(d, flow, ab);
      uint64_t algebraic = 1;
      for (size_t i = 0; i < dim; ++i) algebraic *= ab.field().order();
      ordered_json j;
      j["bruteforce"] = brute;
      j["dim"] = dim;
      j["algebraic"] = hbk::coloring_count_string(ab.field(), dim);
      j["match"] = (brute == algebraic);
      emit(j, text_mode);
      return j["match"].get<bool>() ? 0 : 2;
    }

    if (relation_cmd->parsed()) {
      hbk::Diagram d = hbk::load_diagram_file(file);
      hbk::AlexanderBiquandle ab = spec.make_biquandle();
      hbk::FlowSpace fs = hbk::flow_space(d, spec.m);
      bool all_zero = true;
      uint64_t n = 0;
      fs.for_each_flow(
          [&](const hbk::Flow& f) {
            ++n;
            if (!hbk::residual_is_zero(d, f, ab)) all_zero = false;
          },
          cap);
      ordered_json j;
      j["flows"] = n;
      j["residual_zero"] = all_zero;
      emit(j, text_mode);
      return all_zero ? 0 : 2;
    }

    if (unknot_cmd->parsed()) {
      hbk::Diagram d = hbk::load_diagram_file(file);
      hbk::AlexanderBiquandle ab = spec.make_biquandle();
      hbk::DimProfile profile = hbk::flow_dim_profile(d, ab, spec.m, cap, jobs);
      ordered_json j;
      j["bound"] = profile.max_dim() - 1;
      j["flows_examined"] = profile.flows_examined;
      j["per_gcd_summary"] = profile_json(profile);
      emit(j, text_mode);
      return 0;
    }

    if (distance_cmd->parsed()) {
      hbk::Diagram d1 = hbk::load_diagram_file(file);
      hbk::Diagram d2 = hbk::load_diagram_file(file2);
      hbk::AlexanderBiquandle ab = spec.make_biquandle();
      hbk::DimProfile p1 = hbk::flow_dim_profile(d1, ab, spec.m, cap, jobs);
      hbk::DimProfile p2 = hbk::flow_dim_profile(d2, ab, spec.m, cap, jobs);
      if (p1.flows_examined != p2.flows_examined)
        std::cerr << "warning: flow counts differ (" << p1.flows_examined << " vs "
                  << p2.flows_examined << "); the diagrams may not have equal genus\n";
      size_t fwd = hbk::gordian_lower_bound(p1, p2);
      size_t bwd = hbk::gordian_lower_bound(p2, p1);
      ordered_json j;
      j["bound"] = std::max(fwd, bwd);
      j["direction_details"] = {{"d1_to_d2", fwd}, {"d2_to_d1", bwd}};
      j["flows_examined"] = p1.flows_examined + p2.flows_examined;
      j["per_gcd_summary"] = {{"d1", profile_json(p1)}, {"d2", profile_json(p2)}};
      emit(j, text_mode);
      return 0;
    }

    if (moves_cmd->parsed()) {
      hbk::Diagram d = hbk::load_diagram_file(file);
      if (list_flag) {
        ordered_json j;
        ordered_json sites = ordered_json::array();
        for (const auto& site : hbk::enumerate_applicable(d)) sites.push_back(site.to_string());
        j["sites"] = sites;
        emit(j, text_mode);
        return 0;
      }
      hbk::Diagram result = d;
      if (!apply_arg.empty()) {
        result = hbk::apply_move(d, hbk::MoveSite::parse(apply_arg)).diagram;
      } else if (randomize_steps >= 0) {
        result = hbk::random_equivalent(d, seed, static_cast<size_t>(randomize_steps));
      } else {
        throw hbk::make_error("Syntax", "moves needs --list, --apply or --randomize");
      }
      std::string text = hbk::serialize(result);
      if (out_file.empty())
        std::cout << text;
      else
        hbk::save_diagram_file(result, out_file);
      return 0;
    }
  } catch (const hbk::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
