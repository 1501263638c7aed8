#include "fgk/config.hpp"

#include <cmath>
#include <fstream>

#include "fgk/criteria.hpp"

namespace fgk {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError(std::string("config: unknown key '") + it.key() +
                        "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) {
    try {
      out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: bad value for '") + key + "': " +
                        e.what());
    }
  }
}

GridSpec parse_grid(const json& obj, const char* where) {
  require_keys(obj, where, {"min", "max", "points", "log"});
  GridSpec g;
  read(obj, "min", g.min);
  read(obj, "max", g.max);
  read(obj, "points", g.points);
  read(obj, "log", g.log_spaced);
  return g;
}

json grid_json(const GridSpec& g) {
  return json{{"min", g.min}, {"max", g.max}, {"points", g.points},
              {"log", g.log_spaced}};
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (points < 2 || !(max > min))
    throw DomainError("GridSpec: need min < max and >= 2 points");
  if (log_spaced) return make_log_grid(min, max, points);
  std::vector<double> out(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i)
    out[static_cast<size_t>(i)] = min + (max - min) * i / (points - 1);
  return out;
}

ScenarioConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  require_keys(doc, "top level",
               {"schema_version", "scenario", "model", "volume", "measure",
                "grids", "discrete", "picard", "output"});

  ScenarioConfig cfg;
  if (!doc.contains("schema_version"))
    throw ConfigError("config: schema_version is required");
  read(doc, "schema_version", cfg.schema_version);
  if (cfg.schema_version != 1)
    throw ConfigError("config: unsupported schema_version (expected 1)");
  read(doc, "scenario", cfg.scenario);

  if (doc.contains("model")) {
    const json& m = doc.at("model");
    require_keys(m, "model", {"n", "alpha", "q", "gamma", "r0", "a"});
    read(m, "n", cfg.model.n);
    read(m, "alpha", cfg.model.alpha);
    read(m, "q", cfg.model.q);
    read(m, "gamma", cfg.model.gamma);
    read(m, "r0", cfg.model.r0);
    read(m, "a", cfg.model.a);
  }

  if (doc.contains("volume")) {
    const json& v = doc.at("volume");
    require_keys(v, "volume",
                 {"kind", "c", "exponent", "breakpoints", "exponents", "r",
                  "v", "tail_exponent"});
    read(v, "kind", cfg.volume.kind);
    if (v.contains("c")) cfg.volume.c = v.at("c").get<double>();
    if (v.contains("exponent"))
      cfg.volume.exponent = v.at("exponent").get<double>();
    read(v, "breakpoints", cfg.volume.breakpoints);
    read(v, "exponents", cfg.volume.exponents);
    read(v, "r", cfg.volume.r);
    read(v, "v", cfg.volume.v);
    if (v.contains("tail_exponent"))
      cfg.volume.tail_exponent = v.at("tail_exponent").get<double>();
  }

  if (doc.contains("measure")) {
    const json& m = doc.at("measure");
    require_keys(m, "measure", {"kind", "r", "s", "tail_exponent"});
    read(m, "kind", cfg.measure.kind);
    read(m, "r", cfg.measure.r);
    read(m, "s", cfg.measure.s);
    if (m.contains("tail_exponent"))
      cfg.measure.tail_exponent = m.at("tail_exponent").get<double>();
  }

  if (doc.contains("grids")) {
    const json& g = doc.at("grids");
    require_keys(g, "grids", {"x", "r", "t"});
    if (g.contains("x")) cfg.x_grid = parse_grid(g.at("x"), "grids.x");
    if (g.contains("r")) cfg.r_grid = parse_grid(g.at("r"), "grids.r");
    if (g.contains("t")) cfg.t_grid = parse_grid(g.at("t"), "grids.t");
  }

  if (doc.contains("discrete")) {
    const json& d = doc.at("discrete");
    require_keys(d, "discrete", {"points", "seed", "kernel", "depth"});
    read(d, "points", cfg.discrete.points);
    read(d, "seed", cfg.discrete.seed);
    read(d, "kernel", cfg.discrete.kernel);
    read(d, "depth", cfg.discrete.depth);
    if (cfg.discrete.kernel != "riesz" && cfg.discrete.kernel != "random")
      throw ConfigError("config: discrete.kernel must be 'riesz' or 'random'");
  }

  if (doc.contains("picard")) {
    const json& p = doc.at("picard");
    require_keys(p, "picard",
                 {"R_max", "h", "tol", "max_iters", "eta_radius",
                  "eta_strength"});
    read(p, "R_max", cfg.picard.R_max);
    read(p, "h", cfg.picard.h);
    read(p, "tol", cfg.picard.tol);
    read(p, "max_iters", cfg.picard.max_iters);
    read(p, "eta_radius", cfg.picard.eta_radius);
    read(p, "eta_strength", cfg.picard.eta_strength);
  }

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    require_keys(o, "output", {"format", "path"});
    read(o, "format", cfg.output.format);
    read(o, "path", cfg.output.path);
    if (cfg.output.format != "json" && cfg.output.format != "csv")
      throw ConfigError("config: output.format must be 'json' or 'csv'");
  }

  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  nlohmann::json doc;
  try {
    is >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: parse failure: ") + e.what());
  }
  return parse_config(doc);
}

nlohmann::json ScenarioConfig::to_json() const {
  json v{{"kind", volume.kind}};
  if (volume.c) v["c"] = *volume.c;
  if (volume.exponent) v["exponent"] = *volume.exponent;
  if (!volume.breakpoints.empty()) v["breakpoints"] = volume.breakpoints;
  if (!volume.exponents.empty()) v["exponents"] = volume.exponents;
  if (!volume.r.empty()) {
    v["r"] = volume.r;
    v["v"] = volume.v;
  }
  if (volume.tail_exponent) v["tail_exponent"] = *volume.tail_exponent;

  json m{{"kind", measure.kind}};
  if (!measure.r.empty()) {
    m["r"] = measure.r;
    m["s"] = measure.s;
  }
  if (measure.tail_exponent) m["tail_exponent"] = *measure.tail_exponent;

  return json{
      {"schema_version", schema_version},
      {"scenario", scenario},
      {"model",
       {{"n", model.n},
        {"alpha", model.alpha},
        {"q", model.q},
        {"gamma", model.gamma},
        {"r0", model.r0},
        {"a", model.a}}},
      {"volume", v},
      {"measure", m},
      {"grids",
       {{"x", grid_json(x_grid)},
        {"r", grid_json(r_grid)},
        {"t", grid_json(t_grid)}}},
      {"discrete",
       {{"points", discrete.points},
        {"seed", discrete.seed},
        {"kernel", discrete.kernel},
        {"depth", discrete.depth}}},
      {"picard",
       {{"R_max", picard.R_max},
        {"h", picard.h},
        {"tol", picard.tol},
        {"max_iters", picard.max_iters},
        {"eta_radius", picard.eta_radius},
        {"eta_strength", picard.eta_strength}}},
      {"output", {{"format", output.format}, {"path", output.path}}}};
}

VolumeProfile make_volume(const ScenarioConfig& cfg) {
  const auto& v = cfg.volume;
  if (v.kind == "power") {
    const double n = v.exponent.value_or(cfg.model.n);
    const double c = v.c.value_or(std::pow(M_PI, 0.5 * n) /
                                  std::tgamma(0.5 * n + 1.0));
    return VolumeProfile::power_law(c, n);
  }
  if (v.kind == "piecewise") {
    const double c = v.c.value_or(1.0);
    return VolumeProfile::piecewise_power(c, v.breakpoints, v.exponents);
  }
  if (v.kind == "table")
    return VolumeProfile::table(v.r, v.v, v.tail_exponent);
  throw ConfigError("config: volume.kind must be power, piecewise, or table");
}

MeasureProfile make_measure(const ScenarioConfig& cfg) {
  const auto& m = cfg.measure;
  if (m.kind == "power-density")
    return MeasureProfile::power_density(cfg.model.n, cfg.model.gamma);
  if (m.kind == "dirac") return MeasureProfile::dirac_at_origin();
  if (m.kind == "same-as-volume")
    return MeasureProfile::same_as_volume(make_volume(cfg));
  if (m.kind == "table")
    return MeasureProfile::table(m.r, m.s, m.tail_exponent);
  throw ConfigError(
      "config: measure.kind must be power-density, dirac, same-as-volume, or "
      "table");
}

}  // namespace fgk
