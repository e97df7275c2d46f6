#include "cutdg/config.hpp"

#include <fstream>
#include <set>

#include "cutdg/errors.hpp"

#ifndef CUTDG_GIT_HASH
#define CUTDG_GIT_HASH "unknown"
#endif

namespace cutdg {

using nlohmann::json;

namespace {

AlphaSpec parse_alpha(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "random") return RandomAlpha{};
  if (j.is_object()) {
    RandomAlpha r;
    r.seed = j.value("seed", std::uint64_t{42});
    r.scale = j.value("scale", 1e-2);
    return r;
  }
  if (j.is_array()) return j.get<std::vector<double>>();
  throw DomainError("alpha must be a number, \"random\", {seed, scale} or a list");
}

json alpha_json(const AlphaSpec& alpha) {
  if (const auto* c = std::get_if<double>(&alpha)) return *c;
  if (const auto* r = std::get_if<RandomAlpha>(&alpha)) {
    return json{{"seed", r->seed}, {"scale", r->scale}};
  }
  return std::get<std::vector<double>>(alpha);
}

StabilizationMode parse_stabilization(const std::string& key) {
  if (key == "full") return StabilizationMode::full;
  if (key == "legacy") return StabilizationMode::legacy;
  if (key == "off") return StabilizationMode::off;
  throw DomainError("unknown stabilization mode '" + key + "'");
}

std::string stabilization_key(StabilizationMode mode) {
  switch (mode) {
    case StabilizationMode::full: return "full";
    case StabilizationMode::legacy: return "legacy";
    case StabilizationMode::off: return "off";
  }
  return "full";
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) {
      throw DomainError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

}  // namespace

SolverSettings RunConfig::solver_settings() const {
  SolverSettings s;
  s.flux = flux;
  s.p = p;
  s.nu = nu;
  s.boundary = boundary;
  s.stabilization = stabilization;
  s.limiter = limiter;
  s.flux_options.roe_jacobian = roe_jacobian;
  s.flux_options.entropy_fix = entropy_fix;
  return s;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw DomainError("configuration must be a JSON object");
  reject_unknown(j,
                 {"problem", "equation", "flux", "mesh", "p", "nu", "t_final", "bc", "stabilization",
                  "limiter", "positivity", "roe_average", "roe_jacobian", "entropy_fix",
                  "convergence", "spectrum", "outputs"},
                 "configuration");
  RunConfig c;
  try {
    c.problem = j.value("problem", c.problem);
    c.equation = j.value("equation", c.equation);
    c.flux = j.value("flux", c.flux);
    c.p = j.value("p", c.p);
    c.nu = j.value("nu", c.nu);
    c.t_final = j.value("t_final", c.t_final);
    if (j.contains("bc")) c.boundary = parse_boundary(j.at("bc").get<std::string>());
    if (j.contains("stabilization")) {
      c.stabilization = parse_stabilization(j.at("stabilization").get<std::string>());
    }
    if (j.contains("limiter")) {
      const auto key = j.at("limiter").get<std::string>();
      if (key != "off" && key != "tvdm") throw DomainError("limiter must be 'off' or 'tvdm'");
      c.limiter.enabled = key == "tvdm";
    }
    c.limiter.positivity = j.value("positivity", false);
    if (j.contains("roe_average")) {
      const auto key = j.at("roe_average").get<std::string>();
      if (key == "standard") {
        c.roe_average = RoeAverageMode::standard;
      } else if (key == "literal") {
        c.roe_average = RoeAverageMode::literal;
      } else {
        throw DomainError("roe_average must be 'standard' or 'literal'");
      }
    }
    if (j.contains("roe_jacobian")) {
      const auto key = j.at("roe_jacobian").get<std::string>();
      if (key == "frozen") {
        c.roe_jacobian = RoeJacobianMode::frozen;
      } else if (key == "fd") {
        c.roe_jacobian = RoeJacobianMode::finite_difference;
      } else {
        throw DomainError("roe_jacobian must be 'frozen' or 'fd'");
      }
    }
    c.entropy_fix = j.value("entropy_fix", false);

    if (j.contains("mesh")) {
      const auto& m = j.at("mesh");
      reject_unknown(m, {"kind", "n", "x_left", "x_right", "band", "alpha", "split_index", "seed"},
                     "mesh");
      c.mesh.kind = m.value("kind", c.mesh.kind);
      c.mesh.n = m.value("n", c.mesh.n);
      c.mesh.x_left = m.value("x_left", c.mesh.x_left);
      c.mesh.x_right = m.value("x_right", c.mesh.x_right);
      if (m.contains("band")) {
        const auto band = m.at("band").get<std::vector<double>>();
        if (band.size() != 2) throw DomainError("mesh.band needs two numbers");
        c.mesh.band = {band[0], band[1]};
      }
      if (m.contains("alpha")) c.mesh.alpha = parse_alpha(m.at("alpha"));
      c.mesh.split_index = m.value("split_index", c.mesh.split_index);
      c.mesh.seed = m.value("seed", c.mesh.seed);
    }
    if (j.contains("convergence")) {
      const auto& cv = j.at("convergence");
      reject_unknown(cv, {"n_list", "p_list", "alpha_modes"}, "convergence");
      if (cv.contains("n_list")) c.n_list = cv.at("n_list").get<std::vector<int>>();
      if (cv.contains("p_list")) c.p_list = cv.at("p_list").get<std::vector<int>>();
      if (cv.contains("alpha_modes")) {
        c.alpha_modes.clear();
        for (const auto& a : cv.at("alpha_modes")) c.alpha_modes.push_back(parse_alpha(a));
      }
    }
    if (j.contains("spectrum")) {
      const auto& sp = j.at("spectrum");
      reject_unknown(sp, {"alphas", "variant"}, "spectrum");
      if (sp.contains("alphas")) c.spectrum_alphas = sp.at("alphas").get<std::vector<double>>();
      c.variant = sp.value("variant", c.variant);
    }
    if (j.contains("outputs")) {
      const auto& o = j.at("outputs");
      reject_unknown(o, {"dir", "errors", "snapshot", "spectrum", "metadata"}, "outputs");
      c.output_dir = o.value("dir", c.output_dir);
      c.errors_file = o.value("errors", c.errors_file);
      c.snapshot_file = o.value("snapshot", c.snapshot_file);
      c.spectrum_file = o.value("spectrum", c.spectrum_file);
      c.metadata_file = o.value("metadata", c.metadata_file);
    }
  } catch (const json::exception& err) {
    throw DomainError(std::string("malformed configuration: ") + err.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open configuration file " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::exception& err) {
    throw DomainError("cannot parse " + path + ": " + err.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json modes = json::array();
  for (const auto& a : c.alpha_modes) modes.push_back(alpha_json(a));
  return json{
      {"problem", c.problem},
      {"equation", c.equation},
      {"flux", c.flux},
      {"mesh",
       {{"kind", c.mesh.kind},
        {"n", c.mesh.n},
        {"x_left", c.mesh.x_left},
        {"x_right", c.mesh.x_right},
        {"band", {c.mesh.band.lower, c.mesh.band.upper}},
        {"alpha", alpha_json(c.mesh.alpha)},
        {"split_index", c.mesh.split_index},
        {"seed", c.mesh.seed}}},
      {"p", c.p},
      {"nu", c.nu},
      {"t_final", c.t_final},
      {"bc", std::string(to_string(c.boundary))},
      {"stabilization", stabilization_key(c.stabilization)},
      {"limiter", c.limiter.enabled ? "tvdm" : "off"},
      {"positivity", c.limiter.positivity},
      {"roe_average", c.roe_average == RoeAverageMode::standard ? "standard" : "literal"},
      {"roe_jacobian", c.roe_jacobian == RoeJacobianMode::frozen ? "frozen" : "fd"},
      {"entropy_fix", c.entropy_fix},
      {"convergence", {{"n_list", c.n_list}, {"p_list", c.p_list}, {"alpha_modes", modes}}},
      {"spectrum", {{"alphas", c.spectrum_alphas}, {"variant", c.variant}}},
      {"outputs",
       {{"dir", c.output_dir},
        {"errors", c.errors_file},
        {"snapshot", c.snapshot_file},
        {"spectrum", c.spectrum_file},
        {"metadata", c.metadata_file}}},
  };
}

std::string build_revision() { return CUTDG_GIT_HASH; }

}  // namespace cutdg
