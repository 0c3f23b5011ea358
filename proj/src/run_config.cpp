#include "modrecon/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace modrecon {

using nlohmann::json;

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::dequant_only: return "dequant_only";
    case Scenario::rqm: return "rqm";
    case Scenario::rqm_multishot: return "rqm_multishot";
    case Scenario::rqm_sparse: return "rqm_sparse";
    case Scenario::rqm_multishot_sparse: return "rqm_multishot_sparse";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "dequant_only") return Scenario::dequant_only;
  if (s == "rqm") return Scenario::rqm;
  if (s == "rqm_multishot") return Scenario::rqm_multishot;
  if (s == "rqm_sparse") return Scenario::rqm_sparse;
  if (s == "rqm_multishot_sparse") return Scenario::rqm_multishot_sparse;
  throw DomainError("unknown scenario: " + s);
}

const char* to_string(DKind kind) {
  return kind == DKind::random ? "random" : "geometric";
}

DKind d_kind_from_string(const std::string& s) {
  if (s == "random") return DKind::random;
  if (s == "geometric") return DKind::geometric;
  throw DomainError("unknown D kind: " + s);
}

ModelConfig RunConfig::model() const {
  ModelConfig m;
  m.n = n;
  m.q = q;
  m.k = k;
  m.k_prime = k_prime;
  m.delta = delta;
  m.sparsity = sparsity;
  m.seed = seed;
  return m;
}

FreqGrid RunConfig::grid() const {
  FreqGrid g;
  g.lo = grid_lo;
  g.hi = grid_hi;
  g.resolution = grid_resolution;
  return g;
}

void RunConfig::validate() const {
  model().validate();
  if (input_scale != "unit" && input_scale != "raw")
    throw DomainError("RunConfig: input_scale must be 'unit' or 'raw'");
  if (trials < 1) throw DomainError("RunConfig: trials must be >= 1");
  if (threads < 0) throw DomainError("RunConfig: threads must be >= 0");
  for (Index kv : k_sweep)
    if (kv < 1) throw DomainError("RunConfig: k_sweep entries must be >= 1");
}

std::string RunConfig::to_json_string() const {
  json j;
  j["n"] = n;
  j["q"] = q;
  j["k"] = k;
  j["k_prime"] = k_prime;
  j["delta"] = delta;
  j["range"] = 2.0 * delta;  // informational; always bound to 2*delta
  j["sparsity"] = sparsity;
  j["seed"] = seed;
  j["mode"] = to_string(mode);
  j["d_kind"] = to_string(d_kind);
  j["t_bound"] = t_bound;
  j["b_kind"] = to_string(b_kind);
  j["point_rule"] = to_string(point_rule);
  j["variant"] = to_string(variant);
  j["grid"] = {{"lo", grid_lo}, {"hi", grid_hi},
               {"resolution", grid_resolution}};
  j["refine"] = refine;
  j["refine_factor"] = refine_factor;
  j["input_scale"] = input_scale;
  j["image_side"] = image_side;
  j["image"] = image;
  j["scenario"] = to_string(scenario);
  j["k_sweep"] = k_sweep;
  j["trials"] = trials;
  j["threads"] = threads;
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");

  static const std::set<std::string> known = {
      "n", "q", "k", "k_prime", "delta", "range", "sparsity", "seed",
      "mode", "d_kind", "t_bound", "b_kind", "point_rule", "variant",
      "grid", "refine", "refine_factor", "input_scale", "image_side",
      "image", "scenario", "k_sweep", "trials", "threads"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ParseError("config: unknown key '" + key + "'");

  RunConfig c;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("n", c.n);
  get("q", c.q);
  get("k", c.k);
  get("k_prime", c.k_prime);
  get("delta", c.delta);
  get("sparsity", c.sparsity);
  get("seed", c.seed);
  get("t_bound", c.t_bound);
  get("refine", c.refine);
  get("refine_factor", c.refine_factor);
  get("input_scale", c.input_scale);
  get("image_side", c.image_side);
  get("image", c.image);
  get("trials", c.trials);
  get("threads", c.threads);
  if (j.contains("mode"))
    c.mode = measure_mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("d_kind"))
    c.d_kind = d_kind_from_string(j.at("d_kind").get<std::string>());
  if (j.contains("b_kind"))
    c.b_kind = b_kind_from_string(j.at("b_kind").get<std::string>());
  if (j.contains("point_rule"))
    c.point_rule = point_rule_from_string(j.at("point_rule").get<std::string>());
  if (j.contains("variant"))
    c.variant =
        recovery_variant_from_string(j.at("variant").get<std::string>());
  if (j.contains("scenario"))
    c.scenario = scenario_from_string(j.at("scenario").get<std::string>());
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    static const std::set<std::string> grid_keys = {"lo", "hi", "resolution"};
    for (const auto& [key, value] : g.items())
      if (!grid_keys.count(key))
        throw ParseError("config: unknown grid key '" + key + "'");
    if (g.contains("lo")) c.grid_lo = g.at("lo").get<double>();
    if (g.contains("hi")) c.grid_hi = g.at("hi").get<double>();
    if (g.contains("resolution"))
      c.grid_resolution = g.at("resolution").get<double>();
  }
  if (j.contains("k_sweep"))
    c.k_sweep = j.at("k_sweep").get<std::vector<Index>>();
  if (j.contains("range")) {
    const double r = j.at("range").get<double>();
    if (c.delta > 0.0 && std::abs(r - 2.0 * c.delta) > 1e-9 * c.delta)
      throw DomainError("config: range must equal 2*delta (fixed binding)");
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

void RunConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << to_json_string();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace modrecon
