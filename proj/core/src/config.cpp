#include "povatlas/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "povatlas/errors.hpp"

namespace povatlas {

namespace {

using json = nlohmann::json;

void expect_keys(const json& obj, const char* where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError(std::string("unknown config key '") + key + "' in " + where);
}

template <class T>
void get_to(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) obj.at(key).get_to(out);
}

json simplex_to_json(const SimplexOptions& s) {
  return {{"initial_scale", s.initial_scale}, {"spread_tol", s.spread_tol},
          {"max_iters", s.max_iters},         {"restarts", s.restarts},
          {"restart_scale", s.restart_scale}, {"seed", s.seed}};
}

void simplex_from_json(const json& j, SimplexOptions& s) {
  expect_keys(j, "compensation.simplex",
              {"initial_scale", "spread_tol", "max_iters", "restarts", "restart_scale", "seed"});
  get_to(j, "initial_scale", s.initial_scale);
  get_to(j, "spread_tol", s.spread_tol);
  get_to(j, "max_iters", s.max_iters);
  get_to(j, "restarts", s.restarts);
  get_to(j, "restart_scale", s.restart_scale);
  get_to(j, "seed", s.seed);
}

json cca_to_json(const CcaParams& c) {
  return {{"epochs", c.epochs},
          {"alpha0", c.alpha0},
          {"alpha1", c.alpha1},
          {"lambda_final_frac", c.lambda_final_frac},
          {"seed", c.seed}};
}

void cca_from_json(const json& j, const char* where, CcaParams& c) {
  expect_keys(j, where, {"epochs", "alpha0", "alpha1", "lambda_final_frac", "seed"});
  get_to(j, "epochs", c.epochs);
  get_to(j, "alpha0", c.alpha0);
  get_to(j, "alpha1", c.alpha1);
  get_to(j, "lambda_final_frac", c.lambda_final_frac);
  get_to(j, "seed", c.seed);
}

json to_json(const ExperimentConfig& c) {
  return {
      {"seed", c.seed},
      {"arm", {{"segments", c.arm.segments}, {"joints", c.arm.joints}}},
      {"retina", {{"receptors", c.retina.receptors}}},
      {"object", {{"sources", c.object.sources}, {"offset_radius", c.object.offset_radius}}},
      {"grid",
       {{"n", c.grid.n},
        {"extent", c.grid.extent},
        {"center", {c.grid.center.x(), c.grid.center.y()}}}},
      {"state_change_prob", c.state_change_prob},
      {"pov",
       {{"eps", c.pov.eps},
        {"min_samples", c.pov.min_samples},
        {"closure_tol", c.pov.closure_tol},
        {"members", c.pov.members},
        {"pose_tol", c.pov.pose_tol},
        {"step_budget", c.pov.step_budget}}},
      {"compensation",
       {{"xi", c.compensation.xi},
        {"sensory_tol", c.compensation.sensory_tol},
        {"simplex", simplex_to_json(c.compensation.simplex)}}},
      {"cca", {{"dim2", cca_to_json(c.cca_dim2)}, {"dim3", cca_to_json(c.cca_dim3)}}},
      {"regularization", {{"iters", c.regularization_iters}}},
      {"reaching",
       {{"prune", c.reaching.prune},
        {"pairs", c.reaching.pairs},
        {"min_separation", c.reaching.min_separation}}},
      {"m0", {c.m0[0], c.m0[1], c.m0[2], c.m0[3]}},
  };
}

ExperimentConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config document must be a JSON object");
  expect_keys(j, "config",
              {"seed", "arm", "retina", "object", "grid", "state_change_prob", "pov",
               "compensation", "cca", "regularization", "reaching", "m0"});
  ExperimentConfig c;
  get_to(j, "seed", c.seed);
  if (j.contains("arm")) {
    const json& a = j.at("arm");
    expect_keys(a, "arm", {"segments", "joints"});
    get_to(a, "segments", c.arm.segments);
    get_to(a, "joints", c.arm.joints);
  }
  if (j.contains("retina")) {
    const json& r = j.at("retina");
    expect_keys(r, "retina", {"receptors"});
    get_to(r, "receptors", c.retina.receptors);
  }
  if (j.contains("object")) {
    const json& o = j.at("object");
    expect_keys(o, "object", {"sources", "offset_radius"});
    get_to(o, "sources", c.object.sources);
    get_to(o, "offset_radius", c.object.offset_radius);
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    expect_keys(g, "grid", {"n", "extent", "center"});
    get_to(g, "n", c.grid.n);
    get_to(g, "extent", c.grid.extent);
    if (g.contains("center")) {
      auto v = g.at("center").get<std::vector<double>>();
      if (v.size() != 2) throw ConfigError("grid.center must have 2 entries");
      c.grid.center = {v[0], v[1]};
    }
  }
  get_to(j, "state_change_prob", c.state_change_prob);
  if (j.contains("pov")) {
    const json& p = j.at("pov");
    expect_keys(p, "pov",
                {"eps", "min_samples", "closure_tol", "members", "pose_tol", "step_budget"});
    get_to(p, "eps", c.pov.eps);
    get_to(p, "min_samples", c.pov.min_samples);
    get_to(p, "closure_tol", c.pov.closure_tol);
    get_to(p, "members", c.pov.members);
    get_to(p, "pose_tol", c.pov.pose_tol);
    get_to(p, "step_budget", c.pov.step_budget);
  }
  if (j.contains("compensation")) {
    const json& k = j.at("compensation");
    expect_keys(k, "compensation", {"xi", "sensory_tol", "simplex"});
    get_to(k, "xi", c.compensation.xi);
    get_to(k, "sensory_tol", c.compensation.sensory_tol);
    if (k.contains("simplex")) simplex_from_json(k.at("simplex"), c.compensation.simplex);
  }
  if (j.contains("cca")) {
    const json& k = j.at("cca");
    expect_keys(k, "cca", {"dim2", "dim3"});
    if (k.contains("dim2")) cca_from_json(k.at("dim2"), "cca.dim2", c.cca_dim2);
    if (k.contains("dim3")) cca_from_json(k.at("dim3"), "cca.dim3", c.cca_dim3);
  }
  if (j.contains("regularization")) {
    const json& k = j.at("regularization");
    expect_keys(k, "regularization", {"iters"});
    get_to(k, "iters", c.regularization_iters);
  }
  if (j.contains("reaching")) {
    const json& k = j.at("reaching");
    expect_keys(k, "reaching", {"prune", "pairs", "min_separation"});
    get_to(k, "prune", c.reaching.prune);
    get_to(k, "pairs", c.reaching.pairs);
    get_to(k, "min_separation", c.reaching.min_separation);
  }
  if (j.contains("m0")) {
    auto v = j.at("m0").get<std::vector<double>>();
    if (v.size() != 4) throw ConfigError("m0 must have 4 entries");
    c.m0 = Motor(v[0], v[1], v[2], v[3]);
  }
  return c;
}

}  // namespace

void validate_config(const ExperimentConfig& c) {
  if (c.arm.segments != 3 || c.arm.joints != 4)
    throw ConfigError("only the 3-segment, 4-joint arm is supported");
  if (c.retina.receptors < 1) throw ConfigError("retina.receptors must be >= 1");
  if (c.object.sources < 1) throw ConfigError("object.sources must be >= 1");
  if (c.object.offset_radius <= 0) throw ConfigError("object.offset_radius must be > 0");
  if (c.grid.n < 2) throw ConfigError("grid.n must be >= 2");
  if (c.grid.extent <= 0) throw ConfigError("grid.extent must be > 0");
  if (c.state_change_prob < 0 || c.state_change_prob >= 1)
    throw ConfigError("state_change_prob must be in [0, 1)");
  if (c.pov.eps <= 0 || c.pov.closure_tol <= 0 || c.pov.pose_tol <= 0)
    throw ConfigError("pov tolerances must be positive");
  if (c.pov.members < 1 || c.pov.min_samples < 1 || c.pov.step_budget < 1)
    throw ConfigError("pov counts must be positive");
  if (c.compensation.xi <= 0 || c.compensation.sensory_tol <= 0)
    throw ConfigError("compensation thresholds must be positive");
  const auto& s = c.compensation.simplex;
  if (s.initial_scale <= 0 || s.spread_tol <= 0 || s.max_iters < 1 || s.restarts < 0 ||
      s.restart_scale <= 0)
    throw ConfigError("simplex options must be positive");
  for (const CcaParams* p : {&c.cca_dim2, &c.cca_dim3}) {
    if (p->epochs < 1) throw ConfigError("cca.epochs must be >= 1");
    if (p->alpha0 <= 0 || p->alpha1 <= 0) throw ConfigError("cca learning rates must be > 0");
    if (p->lambda_final_frac <= 0 || p->lambda_final_frac > 1)
      throw ConfigError("cca.lambda_final_frac must be in (0, 1]");
  }
  if (c.regularization_iters < 1) throw ConfigError("regularization.iters must be >= 1");
  if (c.reaching.prune <= 0) throw ConfigError("reaching.prune must be > 0");
  if (c.reaching.pairs < 1) throw ConfigError("reaching.pairs must be >= 1");
  if (c.reaching.min_separation < 0) throw ConfigError("reaching.min_separation must be >= 0");
}

std::string config_to_json(const ExperimentConfig& config) {
  return to_json(config).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a wrongly typed field: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json(text);
}

void save_config(const ExperimentConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file " + path.string());
  out << config_to_json(config);
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  std::string text = config_to_json(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace povatlas
