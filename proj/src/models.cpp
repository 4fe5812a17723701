#include "abcmab/models.hpp"

#include <fmt/format.h>

#include <fstream>
#include <map>

#include "abcmab/errors.hpp"

namespace abcmab {

namespace {

// Small builder so model tables read like reaction lists.
class NetworkBuilder {
 public:
  NetworkBuilder(std::string name, std::vector<Species> species, std::vector<std::string> params)
      : name_(std::move(name)), species_(std::move(species)), params_(std::move(params)) {}

  NetworkBuilder& add(std::string name, std::string_view rate,
                      std::vector<std::pair<std::string_view, int>> reactants,
                      std::vector<std::pair<std::string_view, int>> products) {
    Reaction r;
    r.name = std::move(name);
    r.rate_param = param(rate);
    int order = 0;
    for (auto [s, n] : reactants) {
      r.reactants.push_back({species(s), n});
      order += n;
    }
    for (auto [s, n] : products) r.products.push_back({species(s), n});
    r.kind = order == 0 ? PropensityKind::zeroth
             : order == 1 ? PropensityKind::first_order
                          : PropensityKind::second_order;
    reactions_.push_back(std::move(r));
    return *this;
  }

  ReactionNetwork build(std::string_view observable) {
    return ReactionNetwork(name_, species_, params_, reactions_, species(observable));
  }

 private:
  std::size_t species(std::string_view n) const {
    for (std::size_t i = 0; i < species_.size(); ++i)
      if (species_[i].name == n) return i;
    throw ModelError(fmt::format("unknown species '{}'", n));
  }
  std::size_t param(std::string_view n) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == n) return i;
    throw ModelError(fmt::format("unknown parameter '{}'", n));
  }

  std::string name_;
  std::vector<Species> species_;
  std::vector<std::string> params_;
  std::vector<Reaction> reactions_;
};

// Vilar-Kueh-Barkai-Leibler circadian oscillator, as distributed with the
// GillesPy/StochSS example models. Activator A is released from the bound
// promoters through the s_A1/s_A2 channels.
ReactionNetwork vilar_oscillator() {
  NetworkBuilder b("vilar_oscillator",
                   {{"Da", 1}, {"Da_prime", 0}, {"Ma", 0}, {"Dr", 1}, {"Dr_prime", 0},
                    {"Mr", 0}, {"C", 0}, {"A", 0}, {"R", 0}},
                   {"alpha_A", "alpha_A_prime", "alpha_R", "alpha_R_prime", "beta_A", "beta_R",
                    "delta_MA", "delta_MR", "delta_A", "delta_R", "gamma_A", "gamma_R", "gamma_C",
                    "theta_A", "theta_R"});
  b.add("s_Da", "theta_A", {{"Da_prime", 1}}, {{"Da", 1}})
      .add("s_Da_prime", "gamma_A", {{"Da", 1}, {"A", 1}}, {{"Da_prime", 1}})
      .add("s_Dr", "theta_R", {{"Dr_prime", 1}}, {{"Dr", 1}})
      .add("s_Dr_prime", "gamma_R", {{"Dr", 1}, {"A", 1}}, {{"Dr_prime", 1}})
      .add("s_Mr1", "alpha_R", {{"Dr", 1}}, {{"Dr", 1}, {"Mr", 1}})
      .add("s_Mr2", "alpha_R_prime", {{"Dr_prime", 1}}, {{"Dr_prime", 1}, {"Mr", 1}})
      .add("s_Ma1", "alpha_A", {{"Da", 1}}, {{"Da", 1}, {"Ma", 1}})
      .add("s_Ma2", "alpha_A_prime", {{"Da_prime", 1}}, {{"Da_prime", 1}, {"Ma", 1}})
      .add("a_A", "beta_A", {{"Ma", 1}}, {{"Ma", 1}, {"A", 1}})
      .add("a_R", "beta_R", {{"Mr", 1}}, {{"Mr", 1}, {"R", 1}})
      .add("s_A1", "theta_A", {{"Da_prime", 1}}, {{"Da_prime", 1}, {"A", 1}})
      .add("s_A2", "theta_R", {{"Dr_prime", 1}}, {{"Dr_prime", 1}, {"A", 1}})
      .add("s_C", "gamma_C", {{"A", 1}, {"R", 1}}, {{"C", 1}})
      .add("S_Ma", "delta_MA", {{"Ma", 1}}, {})
      .add("S_Mr", "delta_MR", {{"Mr", 1}}, {})
      .add("S_A", "delta_A", {{"A", 1}}, {})
      .add("S_R", "delta_R", {{"R", 1}}, {})
      .add("S_C", "delta_A", {{"C", 1}}, {{"R", 1}});
  return b.build("R");
}

ReactionNetwork birth_death() {
  NetworkBuilder b("birth_death", {{"X", 0}}, {"lambda", "mu"});
  b.add("birth", "lambda", {}, {{"X", 1}}).add("death", "mu", {{"X", 1}}, {});
  return b.build("X");
}

ReactionNetwork dimerization() {
  NetworkBuilder b("dimerization", {{"P", 0}, {"D", 0}}, {"k_prod", "k_dim", "k_diss", "k_deg"});
  b.add("production", "k_prod", {}, {{"P", 1}})
      .add("dimerize", "k_dim", {{"P", 2}}, {{"D", 1}})
      .add("dissociate", "k_diss", {{"D", 1}}, {{"P", 2}})
      .add("degrade", "k_deg", {{"P", 1}}, {});
  return b.build("D");
}

ReactionNetwork lotka_volterra() {
  NetworkBuilder b("lotka_volterra", {{"prey", 100}, {"predator", 100}}, {"c1", "c2", "c3"});
  b.add("prey_birth", "c1", {{"prey", 1}}, {{"prey", 2}})
      .add("predation", "c2", {{"prey", 1}, {"predator", 1}}, {{"predator", 2}})
      .add("predator_death", "c3", {{"predator", 1}}, {});
  return b.build("prey");
}

}  // namespace

std::vector<std::string> builtin_model_names() {
  return {"vilar_oscillator", "birth_death", "dimerization", "lotka_volterra"};
}

ReactionNetwork builtin_model(std::string_view name) {
  if (name == "vilar_oscillator") return vilar_oscillator();
  if (name == "birth_death") return birth_death();
  if (name == "dimerization") return dimerization();
  if (name == "lotka_volterra") return lotka_volterra();
  throw LookupError(fmt::format("unknown builtin model '{}'", name));
}

nlohmann::json network_to_json(const ReactionNetwork& network) {
  using nlohmann::json;
  const auto species = network.species();
  const auto params = network.parameter_names();
  json doc;
  doc["format"] = "abcmab-network";
  doc["version"] = 1;
  doc["name"] = network.name();
  doc["species"] = json::array();
  for (const auto& s : species) doc["species"].push_back({{"name", s.name}, {"initial", s.initial}});
  doc["parameters"] = json(std::vector<std::string>(params.begin(), params.end()));
  doc["observable"] = species[network.observable()].name;
  doc["reactions"] = json::array();
  for (const auto& r : network.reactions()) {
    json rx;
    rx["name"] = r.name;
    rx["rate"] = params[r.rate_param];
    rx["kind"] = std::string(to_string(r.kind));
    rx["reactants"] = json::object();
    rx["products"] = json::object();
    for (const auto& t : r.reactants) rx["reactants"][species[t.species].name] = t.count;
    for (const auto& t : r.products) rx["products"][species[t.species].name] = t.count;
    if (r.hill) {
      rx["hill"] = {{"species", species[r.hill->species].name},
                    {"half_saturation", params[r.hill->half_saturation_param]},
                    {"coefficient", r.hill->coefficient},
                    {"repressive", r.hill->repressive}};
    }
    doc["reactions"].push_back(std::move(rx));
  }
  return doc;
}

ReactionNetwork network_from_json(const nlohmann::json& doc) {
  try {
    if (doc.value("version", 1) != 1) throw ModelError("unsupported model-definition version");
    std::vector<Species> species;
    std::map<std::string, std::size_t> species_idx;
    for (const auto& s : doc.at("species")) {
      species_idx[s.at("name").get<std::string>()] = species.size();
      species.push_back({s.at("name").get<std::string>(), s.value("initial", std::int64_t{0})});
    }
    auto params = doc.at("parameters").get<std::vector<std::string>>();
    auto param_idx = [&](const std::string& n) {
      for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i] == n) return i;
      throw ModelError(fmt::format("unknown parameter '{}'", n));
    };
    auto species_of = [&](const std::string& n) {
      auto it = species_idx.find(n);
      if (it == species_idx.end()) throw ModelError(fmt::format("unknown species '{}'", n));
      return it->second;
    };
    std::vector<Reaction> reactions;
    for (const auto& rx : doc.at("reactions")) {
      Reaction r;
      r.name = rx.value("name", fmt::format("r{}", reactions.size()));
      r.rate_param = param_idx(rx.at("rate").get<std::string>());
      r.kind = parse_propensity_kind(rx.at("kind").get<std::string>());
      const auto reactants = rx.value("reactants", nlohmann::json::object());
      const auto products = rx.value("products", nlohmann::json::object());
      for (const auto& [n, c] : reactants.items()) r.reactants.push_back({species_of(n), c.get<int>()});
      for (const auto& [n, c] : products.items()) r.products.push_back({species_of(n), c.get<int>()});
      if (rx.contains("hill")) {
        const auto& h = rx["hill"];
        r.hill = HillTerm{species_of(h.at("species").get<std::string>()),
                          param_idx(h.at("half_saturation").get<std::string>()),
                          h.value("coefficient", 1.0), h.value("repressive", false)};
      }
      reactions.push_back(std::move(r));
    }
    const auto observable = species_of(doc.at("observable").get<std::string>());
    return ReactionNetwork(doc.value("name", std::string("custom")), std::move(species),
                           std::move(params), std::move(reactions), observable);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(fmt::format("malformed model definition: {}", e.what()));
  }
}

ReactionNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(fmt::format("cannot open model file '{}'", path));
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(fmt::format("model file '{}': {}", path, e.what()));
  }
  return network_from_json(doc);
}

}  // namespace abcmab
