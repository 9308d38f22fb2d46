// cartdec: construct, verify, classify and cross-check Cartesian
// decompositions left invariant by innately transitive permutation groups.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "cartdec/io.hpp"

using namespace cartdec;
using json = cartdec::io::json;

namespace {

struct Options {
  bool json_only = false;
  std::string check_level = "fast";
  std::uint64_t element_cap = 0;  // 0 = not overridden
  int max_len = 3;
};

int emit(const json& report, const Options& opt, int exit_code) {
  if (opt.json_only) {
    std::cout << report.dump(2) << "\n";
    return exit_code;
  }
  // human rendering derived from the JSON, never parsed back
  std::function<void(const json&, int)> render = [&](const json& node, int depth) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (node.is_object()) {
      for (const auto& [key, value] : node.items()) {
        if (value.is_object() || value.is_array()) {
          std::cout << pad << key << ":\n";
          render(value, depth + 1);
        } else {
          std::cout << pad << key << ": " << value.dump() << "\n";
        }
      }
    } else if (node.is_array()) {
      for (const auto& value : node) {
        if (value.is_object() || value.is_array()) {
          std::cout << pad << "-\n";
          render(value, depth + 1);
        } else {
          std::cout << pad << "- " << value.dump() << "\n";
        }
      }
    } else {
      std::cout << pad << node.dump() << "\n";
    }
  };
  render(report, 0);
  return exit_code;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return j;
}

io::Caps effective_caps(const Options& opt) {
  io::Caps caps = io::caps_from_env();
  if (opt.element_cap > 0) {
    caps.element_cap = opt.element_cap;
    caps.point_cap = std::max(caps.point_cap, opt.element_cap);
    caps.element_cap_overridden = true;
  }
  return caps;
}

io::ParsedInstance load_instance(const std::string& path, const Options& opt) {
  return io::parse_instance(load_file(path), effective_caps(opt));
}

CartesianSystem require_system(const io::ParsedInstance& pin) {
  if (!pin.system) fail(ErrorKind::ParseError, "instance file carries no system_members block");
  return *pin.system;
}

json instance_summary(const io::ParsedInstance& pin) {
  json j;
  j["t_order"] = pin.instance->m().factor().order();
  j["k"] = pin.instance->m().k();
  j["m_order"] = pin.instance->m().big().order();
  j["m_omega_order"] = pin.instance->m_omega().order();
  j["omega_size"] = pin.instance->omega_size();
  j["g_omega_order"] = pin.instance->g_omega().order();
  return j;
}

int cmd_verify(const std::string& path, const Options& opt) {
  io::ParsedInstance pin = load_instance(path, opt);
  CartesianSystem s = require_system(pin);
  SystemReport rep = verify_system(s);
  json j;
  j["command"] = "verify";
  j["instance"] = instance_summary(pin);
  j["system"] = io::system_to_json(s);
  j["checks"] = io::to_json(rep.checks);
  j["invariant"] = s.is_g_invariant();
  j["transitive"] = s.is_transitive();
  if (opt.check_level == "full") {
    std::vector<const ProductSubgroup*> ptrs;
    for (const auto& k : s.members()) ptrs.push_back(&k);
    bool oracle_ok = oracle_system_predicate(s.instance(), ptrs);
    j["oracle_predicate_agrees"] = oracle_ok == rep.valid;
  }
  j["valid"] = rep.valid;
  return emit(j, opt, rep.valid ? 0 : 1);
}

json classification_to_json(const Classification& cls) {
  json j;
  j["label"] = class_label_name(cls.label);
  j["invariant"] = cls.invariant;
  j["transitive"] = cls.transitive;
  json fi = json::array();
  for (std::size_t i = 0; i < cls.fi.per_coordinate.size(); ++i) {
    json fj = json::array();
    for (const FiEntry& e : cls.fi.per_coordinate[i]) {
      json ej;
      ej["member"] = "K" + std::to_string(e.member + 1);
      ej["order"] = e.projection.order();
      fj.push_back(std::move(ej));
    }
    fi.push_back(std::move(fj));
  }
  j["f_i"] = fi;
  json strips = json::array();
  for (std::size_t x = 0; x < cls.strips.strips.size(); ++x) {
    json sj;
    sj["id"] = "X" + std::to_string(x + 1);
    sj["support"] = cls.strips.strips[x].support;
    sj["order"] = cls.strips.strips[x].subgroup.order();
    sj["member"] = "K" + std::to_string(cls.strips.owner[x] + 1);
    strips.push_back(std::move(sj));
  }
  j["strips"] = strips;
  j["checks"] = io::to_json(cls.checks);
  if (cls.conjugacy_witness) {
    json w;
    w["coord_perm"] = cls.conjugacy_witness->coord_perm().to_cycles();
    json tw = json::array();
    for (const Perm& t : cls.conjugacy_witness->twists()) tw.push_back(t.to_cycles());
    w["twists"] = tw;
    j["conjugacy_witness"] = w;
  }
  return j;
}

int cmd_classify(const std::string& path, const Options& opt) {
  io::ParsedInstance pin = load_instance(path, opt);
  CartesianSystem s = require_system(pin);
  ClassifyOptions copts;
  copts.throw_on_violation = false;
  Classification cls = classify(s, copts);
  json j;
  j["command"] = "classify";
  j["instance"] = instance_summary(pin);
  j["classification"] = classification_to_json(cls);
  if (opt.check_level == "full") {
    json strip_checks = json::array();
    for (const Strip& x : cls.strips.strips) {
      json sx;
      sx["support"] = x.support;
      sx["formula_matches_scan"] = normalizer_of_strip(x).same_subgroup(normalizer_of_strip_brute(x));
      strip_checks.push_back(std::move(sx));
    }
    j["strip_normalizer_cross_check"] = strip_checks;
  }
  bool ok = cls.checks.all_pass();
  j["valid"] = ok;
  return emit(j, opt, ok ? 0 : 1);
}

int cmd_quotient(const std::string& path, const Options& opt) {
  io::ParsedInstance pin = load_instance(path, opt);
  CartesianSystem s = require_system(pin);
  ClassifyOptions copts;
  copts.throw_on_violation = false;
  Classification cls = classify(s, copts);
  json j;
  j["command"] = "quotient";
  j["instance"] = instance_summary(pin);
  j["label"] = class_label_name(cls.label);
  if (cls.label != ClassLabel::C2Sim && cls.label != ClassLabel::C2Nsim && cls.label != ClassLabel::C1S) {
    j["note"] = "no quotient construction for this label";
    return emit(j, opt, 0);
  }
  QuotientSystemResult q = quotient_system(s, cls.label, copts);
  j["equals_original"] = q.equals_original;
  j["stabilizer_order"] = q.stabilizer.order();
  j["quotient_label"] = class_label_name(q.classification.label);
  j["checks"] = io::to_json(q.checks);
  bool ok = q.checks.all_pass();
  j["valid"] = ok;
  return emit(j, opt, ok ? 0 : 1);
}

int cmd_properties(const std::string& path, const Options& opt) {
  io::ParsedInstance pin = load_instance(path, opt);
  CartesianSystem s = require_system(pin);
  ClassifyOptions copts;
  copts.throw_on_violation = false;
  PropertyRunReport rep = run_property_suites(s, copts);
  json j;
  j["command"] = "properties";
  j["instance"] = instance_summary(pin);
  j["label"] = class_label_name(rep.label);
  j["transitive"] = rep.transitive;
  j["factorisation"] = io::to_json(rep.factorisation);
  j["combinatorial"] = io::to_json(rep.combinatorial);
  j["quotient"] = io::to_json(rep.quotient);
  j["isomorphism"] = io::to_json(rep.isomorphism);
  if (rep.row) j["table_row"] = {{"row", rep.row->row}, {"t", rep.row->t_name},
                                 {"a", rep.row->a_name}, {"meet", rep.row->meet_name}};
  bool ok = rep.all_pass();
  j["valid"] = ok;
  return emit(j, opt, ok ? 0 : 1);
}

int cmd_extract_graph(const std::string& path, const Options& opt) {
  io::ParsedInstance pin = load_instance(path, opt);
  CartesianSystem s = require_system(pin);
  ClassifyOptions copts;
  copts.throw_on_violation = false;
  Classification cls = classify(s, copts);
  json j;
  j["command"] = "extract-graph";
  j["label"] = class_label_name(cls.label);
  bool ok = true;
  switch (cls.label) {
    case ClassLabel::C2Sim: {
      GraphExtraction ex = extract_2sim(s, copts);
      j["graph"] = io::graph_to_json(ex.graph);
      j["checks"] = io::to_json(ex.checks);
      ok = ex.checks.all_pass();
      break;
    }
    case ClassLabel::C2Nsim: {
      DiGraphExtraction ex = extract_2nsim(s, copts);
      j["digraph"] = io::digraph_to_json(ex.graph);
      j["checks"] = io::to_json(ex.checks);
      ok = ex.checks.all_pass();
      break;
    }
    case ClassLabel::C1S: {
      BipartiteExtraction ex = extract_1s(s, copts);
      j["bipartite"] = io::bipartite_to_json(ex.graph);
      j["checks"] = io::to_json(ex.checks);
      ok = ex.checks.all_pass();
      break;
    }
    default:
      fail(ErrorKind::WrongClass, std::string("no graph extraction for label ") +
                                      class_label_name(cls.label));
  }
  j["valid"] = ok;
  return emit(j, opt, ok ? 0 : 1);
}

int cmd_construct(const std::string& kind, const std::string& path, const Options& opt) {
  io::ParsedInstance pin = load_instance(path, opt);
  auto run = [&]() -> ConstructionResult {
    if (kind == "2sim") return construct_2sim(io::parse_2sim_spec(pin));
    if (kind == "2nsim") return construct_2nsim(io::parse_2nsim_spec(pin));
    if (kind == "1s") return construct_1s(io::parse_1s_spec(pin));
    fail(ErrorKind::ParseError, "construction kind must be one of 2sim, 2nsim, 1s");
  };
  ConstructionResult res = run();
  json j;
  j["command"] = "construct";
  j["kind"] = kind;
  j["instance"] = instance_summary(pin);
  j["system"] = io::system_to_json(res.system);
  j["label"] = class_label_name(res.classification.label);
  j["checks"] = io::to_json(res.checks);
  j["warnings"] = io::to_json(res.warnings);
  bool ok = res.checks.all_pass();
  j["valid"] = ok;
  return emit(j, opt, ok ? 0 : 1);
}

int cmd_oracle(const std::string& path, const Options& opt) {
  io::ParsedInstance pin = load_instance(path, opt);
  OracleSearchResult res = enumerate_systems(pin.instance, opt.max_len);
  json j;
  j["command"] = "oracle";
  j["instance"] = instance_summary(pin);
  j["interval_size"] = res.catalog.subgroups.size();
  json orders = json::array();
  for (const auto& h : res.catalog.subgroups) orders.push_back(h.order());
  j["interval_orders"] = orders;
  j["subsets_tested"] = res.subsets_tested;
  j["predicate_agreements"] = res.predicate_agreements;
  j["predicate_disagreements"] = res.predicate_disagreements;
  json systems = json::array();
  std::vector<CartesianSystem> found;
  for (const auto& entry : res.systems) {
    json sj;
    json morders = json::array();
    std::vector<ProductSubgroup> members;
    for (int i : entry.member_indices) {
      morders.push_back(res.catalog.subgroups[i].order());
      members.push_back(res.catalog.subgroups[i]);
    }
    sj["member_orders"] = morders;
    sj["invariant"] = entry.invariant;
    sj["transitive"] = entry.transitive;
    if (entry.label) sj["label"] = class_label_name(*entry.label);
    systems.push_back(std::move(sj));
    found.emplace_back(pin.instance, members);
  }
  j["systems"] = systems;
  BijectionCrossCheck cross = cross_check_bijection(pin.instance, found);
  j["bijection_checks"] = io::to_json(cross.checks);
  bool ok = res.predicate_disagreements == 0 && cross.checks.all_pass();
  j["valid"] = ok;
  return emit(j, opt, ok ? 0 : 1);
}

int cmd_certificates(const Options& opt) {
  NonexistenceCertificates certs = exhaustive_nonexistence_searches();
  json j;
  j["command"] = "certificates";
  json a;
  a["labeled_graphs_scanned"] = certs.graphs.labeled_graphs_scanned;
  a["generalized_scanned"] = certs.graphs.generalized_scanned;
  json classes = json::object();
  for (const auto& [shape, count] : certs.graphs.qualifying_classes) classes[shape] = count;
  a["qualifying_classes"] = classes;
  a["first_conclusion_violations"] = certs.graphs.first_conclusion_violations;
  a["checks"] = io::to_json(certs.graphs.checks);
  j["graphs"] = a;
  json b;
  b["configurations_scanned"] = certs.digraphs.configurations_scanned;
  b["qualifying"] = certs.digraphs.qualifying;
  b["checks"] = io::to_json(certs.digraphs.checks);
  j["digraphs"] = b;
  json c;
  c["configurations_scanned"] = certs.bipartite.configurations_scanned;
  c["qualifying"] = certs.bipartite.qualifying;
  c["checks"] = io::to_json(certs.bipartite.checks);
  j["bipartite"] = c;
  bool ok = certs.all_pass();
  j["valid"] = ok;
  return emit(j, opt, ok ? 0 : 1);
}

int cmd_demo(const std::string& name, bool outer, const std::string& out_path, const Options& opt) {
  json j = io::demo_file(name, outer);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + out_path);
    out << j.dump(2) << "\n";
    if (!opt.json_only) std::cout << "wrote " << out_path << "\n";
    return 0;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartesian decompositions invariant under innately transitive groups"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json_only, "emit machine-readable JSON only");
  app.add_option("--element-cap", opt.element_cap, "override the closure enumeration cap");
  app.add_option("--check-level", opt.check_level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));

  std::string file, kind, name, out_path;
  bool outer = false;

  CLI::App* verify = app.add_subcommand("verify", "check the defining equations of a system");
  verify->fallthrough();
  verify->add_option("file", file)->required();

  CLI::App* classify_cmd = app.add_subcommand("classify", "six-way classification with evidence");
  classify_cmd->fallthrough();
  classify_cmd->add_option("file", file)->required();

  CLI::App* quotient = app.add_subcommand("quotient", "class-specific coarsening and its checks");
  quotient->fallthrough();
  quotient->add_option("file", file)->required();

  CLI::App* properties = app.add_subcommand("properties", "run every applicable property suite");
  properties->fallthrough();
  properties->add_option("file", file)->required();

  CLI::App* extract = app.add_subcommand("extract-graph", "class-appropriate invariant graph");
  extract->fallthrough();
  extract->add_option("file", file)->required();

  CLI::App* construct = app.add_subcommand("construct", "build a system from a construction spec");
  construct->fallthrough();
  construct->add_option("kind", kind, "2sim, 2nsim or 1s")->required();
  construct->add_option("file", file)->required();

  CLI::App* oracle = app.add_subcommand("oracle", "interval + exhaustive system search + cross-checks");
  oracle->fallthrough();
  oracle->add_option("file", file)->required();
  oracle->add_option("--max-len", opt.max_len, "maximal system length to search");

  CLI::App* certificates =
      app.add_subcommand("certificates", "exhaustive nonexistence searches for the small graph shapes");
  certificates->fallthrough();

  CLI::App* demo = app.add_subcommand("demo", "materialize a bundled instance file");
  demo->fallthrough();
  demo->add_option("name", name, "a5-2nsim, a6-2sim, a6a6-1s, m12-2sim")->required();
  demo->add_flag("--experimental-outer", outer, "degree-24 action with the class-fusing twist (m12)");
  demo->add_option("--out", out_path, "write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(file, opt);
    if (classify_cmd->parsed()) return cmd_classify(file, opt);
    if (quotient->parsed()) return cmd_quotient(file, opt);
    if (properties->parsed()) return cmd_properties(file, opt);
    if (extract->parsed()) return cmd_extract_graph(file, opt);
    if (construct->parsed()) return cmd_construct(kind, file, opt);
    if (oracle->parsed()) return cmd_oracle(file, opt);
    if (certificates->parsed()) return cmd_certificates(opt);
    if (demo->parsed()) return cmd_demo(name, outer, out_path, opt);
  } catch (const Error& e) {
    json err;
    err["error"] = error_kind_name(e.kind());
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
      case ErrorKind::InvalidPermutation:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"Internal\", \"message\": \"" << e.what() << "\"}\n";
    return 2;
  }
  return 2;
}
