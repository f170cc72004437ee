#include "stabgeo/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "stabgeo/geometry.hpp"

namespace stabgeo {

using nlohmann::json;

namespace {

Vec parse_vec(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError("field '" + field + "' must be an array of numbers");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError("field '" + field + "' must be numeric");
    v.push_back(x.get<double>());
  }
  return v;
}

Matrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError("field '" + field + "' must be a matrix");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw ConfigError("field '" + field + "' has ragged rows");
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

}  // namespace

ModelConfig parse_model_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse: ") + e.what());
  }
  ModelConfig cfg;
  cfg.schema_version = j.value("schema_version", 1);
  if (cfg.schema_version != 1) throw ConfigError("unsupported schema_version");
  if (!j.contains("alpha")) throw ConfigError("missing field 'alpha'");
  double alpha = j["alpha"].get<double>();
  std::string kind = j.value("kind", "symmetric");
  if (!j.contains("dimension")) throw ConfigError("missing field 'dimension'");
  int dim = j["dimension"].get<int>();
  cfg.seed = j.value("seed", 0ull);
  if (j.contains("levels")) {
    cfg.sphere_level = j["levels"].value("sphere", 0);
    cfg.radial_level = j["levels"].value("radial", 16);
  }

  Kind mkind;
  double core_alpha = alpha;
  if (kind == "symmetric") {
    mkind = Kind::Symmetric;
  } else if (kind == "one-sided") {
    mkind = Kind::OneSided;
  } else if (kind == "p-sum") {
    mkind = Kind::OneSided;
    if (!j.contains("p")) throw ConfigError("p-sum kind requires field 'p'");
    if (j["p"].is_string() && (j["p"] == "inf" || j["p"] == "infinity")) {
      cfg.p = std::numeric_limits<double>::infinity();
    } else {
      cfg.p = j["p"].get<double>();
    }
    if (!(*cfg.p > 0)) throw ConfigError("p must be positive");
    if (!std::isinf(*cfg.p)) core_alpha = alpha / *cfg.p;
  } else {
    throw ConfigError("kind must be symmetric | one-sided | p-sum");
  }

  if (!j.contains("spectral")) throw ConfigError("missing field 'spectral'");
  const json& sp = j["spectral"];
  if (sp.contains("atoms")) {
    std::vector<Vec> dirs;
    std::vector<double> w;
    for (const auto& atom : sp["atoms"]) {
      if (!atom.contains("direction") || !atom.contains("weight"))
        throw ConfigError("atom entries need 'direction' and 'weight'");
      Vec dir = parse_vec(atom["direction"], "direction");
      if (static_cast<int>(dir.size()) != dim)
        throw ConfigError("atom direction has wrong dimension");
      dirs.push_back(std::move(dir));
      w.push_back(atom["weight"].get<double>());
    }
    cfg.model = make_discrete(core_alpha, mkind, std::move(dirs), std::move(w));
  } else if (sp.contains("isotropic_mass")) {
    if (mkind != Kind::Symmetric) throw ConfigError("isotropic spectral blocks are symmetric-only");
    cfg.model = make_isotropic(core_alpha, dim, sp["isotropic_mass"].get<double>());
  } else if (sp.contains("isotropic_scale")) {
    if (mkind != Kind::Symmetric) throw ConfigError("isotropic spectral blocks are symmetric-only");
    cfg.model = make_isotropic_scale(core_alpha, dim, sp["isotropic_scale"].get<double>());
  } else if (sp.contains("ellipsoid")) {
    if (mkind != Kind::Symmetric) throw ConfigError("explicit-gauge blocks are symmetric-only");
    Matrix C = parse_matrix(sp["ellipsoid"], "ellipsoid");
    if (C.rows != dim || C.cols != dim) throw ConfigError("ellipsoid matrix has wrong dimension");
    try {
      cfg.model = make_subgaussian(core_alpha, C);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  } else if (sp.contains("star_body")) {
    const json& sb = sp["star_body"];
    int level = sp.value("level", 0);
    auto rule = std::make_shared<SphereRule>(
        level > 0 ? sphere_rule(dim, level, std::optional<std::uint64_t>(cfg.seed))
                  : default_sphere_rule(dim, cfg.seed));
    std::string shape = sb.value("shape", "");
    std::function<double(const Vec&)> rho;
    if (shape == "ball") {
      double radius = sb.value("radius", 1.0);
      rho = [radius](const Vec&) { return radius; };
    } else if (shape == "ellipsoid") {
      Matrix M = parse_matrix(sb["matrix"], "star_body.matrix");
      rho = [M](const Vec& u) { return 1.0 / std::sqrt(dot(u, matvec(M, u))); };
    } else {
      throw ConfigError("star_body.shape must be ball | ellipsoid");
    }
    cfg.model = spectral_from_star_body(rho, core_alpha, rule, mkind);
  } else {
    throw ConfigError("spectral block must contain atoms | isotropic_mass | isotropic_scale | "
                      "ellipsoid | star_body");
  }
  if (cfg.model.dim != dim) throw ConfigError("spectral block dimension disagrees with 'dimension'");

  if (cfg.p.has_value() && std::isinf(*cfg.p)) {
    // Max-stable spectral atoms: positive orthant, positive weights; the
    // one-sided alpha < 1 restriction does not apply to max-sums.
    if (!cfg.model.is_discrete()) throw ConfigError("max-stable configs need discrete atoms");
    for (const Vec& s : cfg.model.atoms().directions)
      for (double c : s)
        if (c < -1e-12) throw ConfigError("max-stable atoms must lie in the positive orthant");
    for (double w : cfg.model.atoms().weights)
      if (!(w > 0)) throw ConfigError("max-stable atom weights must be positive");
    return cfg;
  }
  Diagnostics diag = validate_model(cfg.model);
  if (!diag.ok()) {
    std::string msg = "model fails validation:";
    for (const auto& e : diag.errors) msg += " [" + e + "]";
    throw ConfigError(msg);
  }
  return cfg;
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_model_config(ss.str());
}

std::string render_model_config(const ModelConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  j["dimension"] = cfg.model.dim;
  j["seed"] = cfg.seed;
  if (cfg.sphere_level > 0) j["levels"]["sphere"] = cfg.sphere_level;
  j["levels"]["radial"] = cfg.radial_level;
  if (cfg.p.has_value()) {
    j["kind"] = "p-sum";
    if (std::isinf(*cfg.p))
      j["p"] = "inf";
    else
      j["p"] = *cfg.p;
    j["alpha"] = std::isinf(*cfg.p) ? cfg.model.alpha : cfg.model.alpha * *cfg.p;
  } else {
    j["kind"] = cfg.model.kind == Kind::Symmetric ? "symmetric" : "one-sided";
    j["alpha"] = cfg.model.alpha;
  }
  if (const auto* atoms = std::get_if<DiscreteAtoms>(&cfg.model.spectral)) {
    json arr = json::array();
    for (std::size_t k = 0; k < atoms->directions.size(); ++k) {
      json a;
      a["direction"] = atoms->directions[k];
      a["weight"] = atoms->weights[k];
      arr.push_back(a);
    }
    j["spectral"]["atoms"] = arr;
  } else if (const auto* iso = std::get_if<IsotropicMass>(&cfg.model.spectral)) {
    j["spectral"]["isotropic_mass"] = iso->mass;
  } else if (const auto* ell = std::get_if<EllipsoidGauge>(&cfg.model.spectral)) {
    Matrix C = ell->m;
    for (auto& x : C.a) x *= 2.0;  // back to the sub-Gaussian C convention
    json rows = json::array();
    for (int r = 0; r < C.rows; ++r) {
      json row = json::array();
      for (int c = 0; c < C.cols; ++c) row.push_back(C(r, c));
      rows.push_back(row);
    }
    j["spectral"]["ellipsoid"] = rows;
  } else {
    throw ConfigError("render_model_config: only atoms, isotropic and ellipsoid blocks render");
  }
  return j.dump(2) + "\n";
}

void save_model_config(const std::string& path, const ModelConfig& cfg) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open output config: " + path);
  f << render_model_config(cfg);
}

SphereRule config_sphere_rule(const ModelConfig& cfg) {
  if (cfg.sphere_level > 0)
    return sphere_rule(cfg.model.dim, cfg.sphere_level, std::optional<std::uint64_t>(cfg.seed));
  return default_sphere_rule(cfg.model.dim, cfg.seed);
}

}  // namespace stabgeo
