#include "maxshape/cli.hpp"

#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <set>

#include "maxshape/json_io.hpp"
#include "maxshape/optimizer.hpp"
#include "maxshape/svg.hpp"

namespace maxshape::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {"command", "domain",  "domain_file", "network",
                                        "network_file", "functional", "coefficients",
                                        "grid_h",  "optimizer", "audit", "out", "render",
                                        "seed", "quiet", "fixtures"};
const std::set<std::string> kFunctionalKeys = {"name", "k", "p", "q", "composite"};
const std::set<std::string> kCoeffKeys = {"sigma", "rho", "potential"};
const std::set<std::string> kOptKeys = {"L", "iterations", "seed", "t0", "cooling", "length_tol",
                                        "arcs", "moves", "capacity_fraction", "perturb_scale"};
const std::set<std::string> kAuditKeys = {"c1", "c2", "radii", "depth"};
const std::set<std::string> kCommands = {"solve", "evaluate", "audit", "properties", "fixtures"};
const std::set<std::string> kFunctionalNames = {"Inradius",   "TorsionMax",
                                                "TorsionalRigidity", "Eigenvalue",
                                                "SpectralComposite", "PoincareSobolev"};
const std::set<std::string> kMoves = {"PerturbVertex", "SplitEdge", "SlideBranch",
                                      "BallSurgery", "EnlargeSpur", "PruneSpur"};

void collect_unknown(const json& j, const std::set<std::string>& known, const std::string& prefix,
                     std::vector<std::string>& diags) {
  if (!j.is_object()) return;
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) diags.push_back("unknown key: " + prefix + key);
  }
}

DomainSpec load_domain(const json& cfg, const std::string& base_dir) {
  if (cfg.contains("domain")) return domain_from_json(cfg.at("domain"));
  if (cfg.contains("domain_file")) {
    const fs::path p = fs::path(base_dir) / cfg.at("domain_file").get<std::string>();
    return domain_from_json(json::parse(read_text_file(p.string())));
  }
  throw Error(ErrorCode::InvalidInput, "config needs 'domain' or 'domain_file'");
}

CurveNetwork load_network(const json& cfg, const std::string& base_dir) {
  if (cfg.contains("network")) return network_from_json(cfg.at("network"));
  if (cfg.contains("network_file")) {
    const fs::path p = fs::path(base_dir) / cfg.at("network_file").get<std::string>();
    return network_from_json(json::parse(read_text_file(p.string())));
  }
  throw Error(ErrorCode::InvalidInput, "config needs 'network' or 'network_file'");
}

SetFunctional load_functional(const json& cfg) {
  if (!cfg.contains("functional")) return SetFunctional::inradius();
  const json& f = cfg.at("functional");
  const std::string name = f.value("name", "Inradius");
  if (name == "Inradius") return SetFunctional::inradius();
  if (name == "TorsionMax") return SetFunctional::torsion_max();
  if (name == "TorsionalRigidity") return SetFunctional::torsional_rigidity();
  if (name == "Eigenvalue") return SetFunctional::eigenvalue(f.value("k", 1));
  if (name == "PoincareSobolev")
    return SetFunctional::poincare_sobolev(f.value("p", 2.0), f.value("q", 2.0));
  if (name == "SpectralComposite") {
    const std::string comp = f.value("composite", "inv_lambda_k");
    const int k = f.value("k", 1);
    if (comp == "inv_lambda_k") return SetFunctional::composite_inv_lambda_k(k);
    if (comp == "sum_inv") return SetFunctional::composite_sum_inv(k);
    throw Error(ErrorCode::InvalidInput, "unknown composite: " + comp);
  }
  throw Error(ErrorCode::InvalidInput, "unknown functional: " + name);
}

Coefficients load_coefficients(const json& cfg) {
  if (!cfg.contains("coefficients")) return Coefficients::laplacian();
  const json& c = cfg.at("coefficients");
  return Coefficients::constant(c.value("sigma", 1.0), c.value("rho", 1.0),
                                c.value("potential", 0.0));
}

OptConfig load_opt_config(const json& cfg, const DomainSpec& domain) {
  OptConfig oc;
  oc.domain = domain;
  oc.functional = load_functional(cfg);
  oc.coeff = load_coefficients(cfg);
  oc.grid_h = cfg.value("grid_h", 1.0 / 64);
  if (cfg.contains("optimizer")) {
    const json& o = cfg.at("optimizer");
    oc.L = o.value("L", 1.0);
    oc.iterations = o.value("iterations", 2000);
    oc.seed = o.value("seed", 1ull);
    oc.t0 = o.value("t0", -1.0);
    oc.cooling = o.value("cooling", -1.0);
    oc.length_tol = o.value("length_tol", 1e-6);
    oc.surgery_arcs = o.value("arcs", 24);
    oc.capacity_fraction = o.value("capacity_fraction", 0.25);
    oc.perturb_scale = o.value("perturb_scale", 0.0);
    if (o.contains("moves")) {
      oc.move_weights.clear();
      for (const auto& [name, w] : o.at("moves").items()) {
        MoveKind kind;
        if (name == "PerturbVertex") kind = MoveKind::PerturbVertex;
        else if (name == "SplitEdge") kind = MoveKind::SplitEdge;
        else if (name == "SlideBranch") kind = MoveKind::SlideBranch;
        else if (name == "BallSurgery") kind = MoveKind::BallSurgery;
        else if (name == "EnlargeSpur") kind = MoveKind::EnlargeSpur;
        else if (name == "PruneSpur") kind = MoveKind::PruneSpur;
        else throw Error(ErrorCode::InvalidInput, "unknown move: " + name);
        oc.move_weights[kind] = w.get<double>();
      }
    }
  }
  if (cfg.contains("seed")) oc.seed = cfg.at("seed").get<std::uint64_t>();
  return oc;
}

struct Emitter {
  fs::path dir;
  bool render = false;
  bool quiet = false;
  void text(const std::string& name, const std::string& content) const {
    write_text_file((dir / name).string(), content);
    if (!quiet) std::cout << "wrote " << (dir / name).string() << "\n";
  }
};

int cmd_solve(const json& cfg, const Emitter& em, const OptConfig& oc) {
  const OptResult res = minimize(oc);

  json out;
  out["command"] = "solve";
  out["functional"] = oc.functional.name;
  out["best_value"] = res.best_value;
  out["best_length"] = total_length(res.best);
  out["network"] = to_json(res.best);
  out["iterations"] = static_cast<int>(res.trace.size());
  out["evaluations"] = res.evaluations;
  out["cache_hits"] = res.cache_hits;
  out["seed"] = oc.seed;
  out["grid_h"] = oc.grid_h;
  out["audit"] = to_json(res.audit);
  const bool constraints_ok = res.best.connected() &&
                              std::abs(total_length(res.best) - oc.L) <= oc.length_tol * 10.0;
  out["constraints"] = {{"connected", res.best.connected()},
                        {"length_ok", std::abs(total_length(res.best) - oc.L) <= oc.length_tol * 10.0},
                        {"audit_pass", res.audit.all_pass}};

  em.text("result.json", out.dump(2) + "\n");
  em.text("trace.csv", trace_csv(res.trace));
  em.text("density.csv", profiles_csv(res.audit));
  if (em.render) {
    em.text("network.svg", svg_network(oc.domain, res.best));
    const auto grid = rasterize(oc.domain, &res.best, oc.grid_h);
    em.text("field.svg", svg_heatmap(distance_transform(grid), &res.best));
    em.text("density.svg", svg_density_chart(res.audit));
  }
  return (constraints_ok && res.audit.all_pass) ? 0 : 2;
}

int cmd_evaluate(const json& cfg, const Emitter& em, const std::string& base_dir) {
  const DomainSpec domain = load_domain(cfg, base_dir);
  const SetFunctional F = load_functional(cfg);
  const Coefficients coeff = load_coefficients(cfg);
  const double h = cfg.value("grid_h", 1.0 / 64);
  CurveNetwork net;
  bool has_net = cfg.contains("network") || cfg.contains("network_file");
  if (has_net) net = load_network(cfg, base_dir);
  const auto grid = rasterize(domain, has_net ? &net : nullptr, h);
  const OpenRegion region = components(grid);
  const double value = evaluate(F, region, coeff);

  json out;
  out["command"] = "evaluate";
  out["functional"] = F.name;
  out["value"] = value;
  out["components"] = region.components.size();
  out["free_nodes"] = region.free_nodes.size();
  out["grid_h"] = h;
  em.text("result.json", out.dump(2) + "\n");
  if (em.render) {
    const DensityField dt = distance_transform(grid);
    em.text("field.svg", svg_heatmap(dt, has_net ? &net : nullptr));
    em.text("field.csv", field_csv(dt));
  }
  return 0;
}

int cmd_audit(const json& cfg, const Emitter& em, const std::string& base_dir) {
  const CurveNetwork net = load_network(cfg, base_dir);
  net.validate();
  double c1 = 1.0, c2 = 2.0 * M_PI;
  std::vector<double> radii;
  if (cfg.contains("audit")) {
    const json& a = cfg.at("audit");
    c1 = a.value("c1", 1.0);
    c2 = a.value("c2", 2.0 * M_PI);
    if (a.contains("radii")) for (const auto& r : a.at("radii")) radii.push_back(r.get<double>());
  }
  if (radii.empty()) {
    const double r0 = net.diameter() / 2.0;
    for (double r = r0; r >= r0 / 64.0; r /= 2.0) radii.push_back(r);
  }
  const AhlforsReport rep = ahlfors_profile(net, nullptr, radii, c1, c2);
  json out;
  out["command"] = "audit";
  out["report"] = to_json(rep);
  em.text("audit.json", out.dump(2) + "\n");
  em.text("density.csv", profiles_csv(rep));
  if (em.render) em.text("density.svg", svg_density_chart(rep));
  return rep.all_pass ? 0 : 2;
}

int cmd_properties(const Emitter& em) {
  const auto records = run_property_battery();
  json arr = json::array();
  bool all = true;
  for (const auto& rec : records) {
    arr.push_back(to_json(rec));
    all = all && rec.pass;
  }
  json out;
  out["command"] = "properties";
  out["records"] = arr;
  out["all_pass"] = all;
  em.text("properties.json", out.dump(2) + "\n");
  return all ? 0 : 2;
}

int cmd_fixtures(const json& cfg, const Emitter& em) {
  int depth = 10;
  if (cfg.contains("fixtures")) depth = cfg.at("fixtures").value("depth", 10);
  else if (cfg.contains("audit")) depth = cfg.at("audit").value("depth", 10);
  for (const auto& [name, net] : builtin_fixtures(depth)) {
    em.text(name + ".json", to_json(net).dump(2) + "\n");
    std::vector<double> radii;
    for (int n = 0; n <= depth; ++n) radii.push_back(std::pow(2.0, -n));
    const AhlforsReport rep = ahlfors_profile(net, nullptr, radii, 1.0, 2.0 * M_PI);
    em.text(name + "_density.csv", profiles_csv(rep));
  }
  return 0;
}

}  // namespace

std::vector<std::string> validate_config(const std::string& config_path) {
  std::vector<std::string> diags;
  std::string text;
  try {
    text = read_text_file(config_path);
  } catch (const Error& e) {
    return {std::string("fatal: ") + e.what()};
  }
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const std::exception& e) {
    return {std::string("fatal: config is not valid JSON: ") + e.what()};
  }
  if (!cfg.is_object()) return {"fatal: config must be a JSON object"};

  collect_unknown(cfg, kTopKeys, "", diags);
  if (!cfg.contains("command"))
    diags.push_back("missing field: command");
  else if (!cfg.at("command").is_string() || !kCommands.count(cfg.at("command").get<std::string>()))
    diags.push_back("invalid command (expected solve|evaluate|audit|properties|fixtures)");

  if (cfg.contains("functional")) {
    collect_unknown(cfg.at("functional"), kFunctionalKeys, "functional.", diags);
    const std::string name = cfg.at("functional").value("name", "");
    if (!kFunctionalNames.count(name)) diags.push_back("invalid functional.name: " + name);
  }
  if (cfg.contains("coefficients")) collect_unknown(cfg.at("coefficients"), kCoeffKeys, "coefficients.", diags);
  if (cfg.contains("audit")) collect_unknown(cfg.at("audit"), kAuditKeys, "audit.", diags);
  if (cfg.contains("optimizer")) {
    collect_unknown(cfg.at("optimizer"), kOptKeys, "optimizer.", diags);
    if (cfg.at("optimizer").contains("moves"))
      for (const auto& [name, w] : cfg.at("optimizer").at("moves").items()) {
        (void)w;
        if (!kMoves.count(name)) diags.push_back("unknown move: optimizer.moves." + name);
      }
  }

  const std::string cmd = cfg.value("command", "");
  if (cmd == "solve" || cmd == "evaluate") {
    if (!cfg.contains("domain") && !cfg.contains("domain_file"))
      diags.push_back("missing field: domain (or domain_file)");
  }
  if (cmd == "audit" && !cfg.contains("network") && !cfg.contains("network_file"))
    diags.push_back("missing field: network (or network_file)");

  // feasibility of the length constraint
  if (cmd == "solve" && (cfg.contains("domain") || cfg.contains("domain_file"))) {
    try {
      const std::string base = fs::path(config_path).parent_path().string();
      const DomainSpec domain = load_domain(cfg, base);
      const OptConfig oc = load_opt_config(cfg, domain);
      if (oc.L >= oc.length_capacity())
        diags.push_back("InfeasibleLength: L = " + format_double(oc.L) +
                        " exceeds capacity " + format_double(oc.length_capacity()));
    } catch (const std::exception& e) {
      diags.push_back(std::string("invalid value: ") + e.what());
    }
  }
  return diags;
}

int run(const std::string& config_path, const Overrides& overrides) {
  json cfg;
  try {
    cfg = json::parse(read_text_file(config_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    const std::string base = fs::path(config_path).parent_path().string();
    Emitter em;
    em.dir = overrides.out_dir ? fs::path(*overrides.out_dir)
                               : fs::path(cfg.value("out", std::string("out")));
    em.render = cfg.value("render", false);
    em.quiet = overrides.quiet || cfg.value("quiet", false);
    fs::create_directories(em.dir);
    if (overrides.seed) cfg["seed"] = *overrides.seed;

    const std::string cmd = cfg.value("command", "");
    if (cmd == "solve") {
      const DomainSpec domain = load_domain(cfg, base);
      return cmd_solve(cfg, em, load_opt_config(cfg, domain));
    }
    if (cmd == "evaluate") return cmd_evaluate(cfg, em, base);
    if (cmd == "audit") return cmd_audit(cfg, em, base);
    if (cmd == "properties") return cmd_properties(em);
    if (cmd == "fixtures") return cmd_fixtures(cfg, em);
    std::cerr << "error: unknown command '" << cmd << "'\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace maxshape::cli
