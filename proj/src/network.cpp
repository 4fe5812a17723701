#include "abcmab/network.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "abcmab/errors.hpp"

namespace abcmab {

std::string_view to_string(PropensityKind kind) {
  switch (kind) {
    case PropensityKind::zeroth: return "zeroth";
    case PropensityKind::first_order: return "first";
    case PropensityKind::second_order: return "second";
    case PropensityKind::hill: return "hill";
  }
  return "unknown";
}

PropensityKind parse_propensity_kind(std::string_view text) {
  if (text == "zeroth") return PropensityKind::zeroth;
  if (text == "first") return PropensityKind::first_order;
  if (text == "second") return PropensityKind::second_order;
  if (text == "hill") return PropensityKind::hill;
  throw ModelError(fmt::format("unknown propensity kind '{}'", text));
}

namespace {

int reaction_order(const Reaction& r) {
  int order = 0;
  for (const auto& t : r.reactants) order += t.count;
  return order;
}

void check_reaction(const Reaction& r, std::size_t n_species, std::size_t n_params) {
  auto fail = [&](std::string_view what) {
    throw ModelError(fmt::format("reaction '{}': {}", r.name, what));
  };
  if (r.rate_param >= n_params) fail("rate parameter index out of range");
  std::set<std::size_t> seen;
  for (const auto& t : r.reactants) {
    if (t.species >= n_species) fail("reactant species out of range");
    if (t.count <= 0) fail("reactant count must be positive");
    if (!seen.insert(t.species).second) fail("duplicate reactant species");
  }
  for (const auto& t : r.products) {
    if (t.species >= n_species) fail("product species out of range");
    if (t.count < 0) fail("product count must be non-negative");
  }
  const int order = reaction_order(r);
  switch (r.kind) {
    case PropensityKind::zeroth:
      if (order != 0) fail("zeroth-order reaction cannot have reactants");
      break;
    case PropensityKind::first_order:
      if (order != 1) fail("first-order reaction needs exactly one reactant molecule");
      break;
    case PropensityKind::second_order:
      if (order != 2) fail("second-order reaction needs exactly two reactant molecules");
      break;
    case PropensityKind::hill:
      if (order > 1) fail("hill reaction supports at most one reactant molecule");
      if (!r.hill) fail("hill reaction needs a modifier term");
      if (r.hill->species >= n_species) fail("hill modifier species out of range");
      if (r.hill->half_saturation_param >= n_params) fail("hill parameter index out of range");
      if (!(r.hill->coefficient > 0.0)) fail("hill coefficient must be positive");
      break;
  }
  if (r.kind != PropensityKind::hill && r.hill) fail("modifier term only valid for hill kind");
}

}  // namespace

ReactionNetwork::ReactionNetwork(std::string name, std::vector<Species> species,
                                 std::vector<std::string> parameter_names,
                                 std::vector<Reaction> reactions, std::size_t observable)
    : name_(std::move(name)),
      species_(std::move(species)),
      parameter_names_(std::move(parameter_names)),
      reactions_(std::move(reactions)),
      observable_(observable) {
  if (species_.empty()) throw ModelError("network has no species");
  if (observable_ >= species_.size()) throw ModelError("observable species index out of range");
  for (const auto& s : species_)
    if (s.initial < 0) throw ModelError(fmt::format("species '{}' has negative initial count", s.name));
  for (const auto& r : reactions_) check_reaction(r, species_.size(), parameter_names_.size());

  net_change_.resize(reactions_.size());
  std::vector<std::set<std::size_t>> readers(species_.size());
  for (std::size_t r = 0; r < reactions_.size(); ++r) {
    const auto& rx = reactions_[r];
    std::map<std::size_t, int> delta;
    for (const auto& t : rx.reactants) {
      delta[t.species] -= t.count;
      readers[t.species].insert(r);
    }
    for (const auto& t : rx.products) delta[t.species] += t.count;
    if (rx.hill) readers[rx.hill->species].insert(r);
    for (auto [s, d] : delta)
      if (d != 0) net_change_[r].push_back({s, d});
  }
  dependents_.resize(reactions_.size());
  for (std::size_t r = 0; r < reactions_.size(); ++r) {
    std::set<std::size_t> deps;
    for (const auto& t : net_change_[r]) deps.insert(readers[t.species].begin(), readers[t.species].end());
    dependents_[r].assign(deps.begin(), deps.end());
  }
}

std::size_t ReactionNetwork::species_index(std::string_view species_name) const {
  for (std::size_t i = 0; i < species_.size(); ++i)
    if (species_[i].name == species_name) return i;
  throw LookupError(fmt::format("network '{}' has no species '{}'", name_, species_name));
}

ReactionNetwork ReactionNetwork::with_observable(std::string_view species_name) const {
  ReactionNetwork copy = *this;
  copy.observable_ = species_index(species_name);
  return copy;
}

std::vector<std::int64_t> ReactionNetwork::initial_state() const {
  std::vector<std::int64_t> state;
  state.reserve(species_.size());
  for (const auto& s : species_) state.push_back(s.initial);
  return state;
}

double ReactionNetwork::propensity(std::size_t r, std::span<const std::int64_t> state,
                                   std::span<const double> theta) const {
  const auto& rx = reactions_[r];
  double a = theta[rx.rate_param];
  for (const auto& t : rx.reactants) {
    const auto x = static_cast<double>(state[t.species]);
    if (t.count == 1) {
      a *= x;
    } else {
      // Combinatorial factor x(x-1)/2 for a homodimer.
      a *= x * (x - 1.0) / 2.0;
    }
  }
  if (rx.hill) {
    const auto x = static_cast<double>(state[rx.hill->species]);
    const double kn = std::pow(theta[rx.hill->half_saturation_param], rx.hill->coefficient);
    const double xn = std::pow(x, rx.hill->coefficient);
    const double denom = kn + xn;
    const double f = denom > 0.0 ? (rx.hill->repressive ? kn : xn) / denom : (rx.hill->repressive ? 1.0 : 0.0);
    a *= f;
  }
  if (!std::isfinite(a))
    throw ModelError(fmt::format("non-finite propensity in reaction '{}'", rx.name));
  return a;
}

}  // namespace abcmab
