#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abcmab {

enum class PropensityKind { zeroth, first_order, second_order, hill };

std::string_view to_string(PropensityKind kind);
PropensityKind parse_propensity_kind(std::string_view text);

struct Species {
  std::string name;
  std::int64_t initial = 0;
};

struct StoichTerm {
  std::size_t species = 0;
  int count = 0;
};

/// Hill modulation f(x) = x^n / (K^n + x^n), or K^n / (K^n + x^n) when
/// repressive, where x is the modifier population and K = theta[half_saturation_param].
struct HillTerm {
  std::size_t species = 0;
  std::size_t half_saturation_param = 0;
  double coefficient = 1.0;
  bool repressive = false;
};

struct Reaction {
  std::string name;
  std::size_t rate_param = 0;
  std::vector<StoichTerm> reactants;
  std::vector<StoichTerm> products;
  PropensityKind kind = PropensityKind::zeroth;
  std::optional<HillTerm> hill;
};

/// Immutable mass-action (plus Hill) reaction network. Safe to share across
/// threads once constructed.
class ReactionNetwork {
 public:
  ReactionNetwork(std::string name, std::vector<Species> species,
                  std::vector<std::string> parameter_names, std::vector<Reaction> reactions,
                  std::size_t observable);

  const std::string& name() const noexcept { return name_; }
  std::span<const Species> species() const noexcept { return species_; }
  std::span<const Reaction> reactions() const noexcept { return reactions_; }
  std::span<const std::string> parameter_names() const noexcept { return parameter_names_; }
  std::size_t num_parameters() const noexcept { return parameter_names_.size(); }
  std::size_t observable() const noexcept { return observable_; }

  std::size_t species_index(std::string_view species_name) const;
  ReactionNetwork with_observable(std::string_view species_name) const;

  std::vector<std::int64_t> initial_state() const;

  /// Propensity of reaction r. Throws ModelError if the result is not finite.
  double propensity(std::size_t r, std::span<const std::int64_t> state,
                    std::span<const double> theta) const;

  /// Net population change per species when reaction r fires.
  std::span<const StoichTerm> net_change(std::size_t r) const noexcept { return net_change_[r]; }

  /// Reactions whose propensity must be refreshed after reaction r fires.
  std::span<const std::size_t> dependents(std::size_t r) const noexcept { return dependents_[r]; }

 private:
  std::string name_;
  std::vector<Species> species_;
  std::vector<std::string> parameter_names_;
  std::vector<Reaction> reactions_;
  std::size_t observable_;
  std::vector<std::vector<StoichTerm>> net_change_;
  std::vector<std::vector<std::size_t>> dependents_;
};

}  // namespace abcmab
