#include "molent/units.hpp"

namespace molent {

double atomic_mass_amu(Species species) {
  switch (species) {
    case Species::potassium40: return 39.96399848;
    case Species::lithium6: return 6.0151228874;
  }
  return 0.0;
}

double atomic_mass(Species species) {
  return atomic_mass_amu(species) * units::atomic_mass_unit;
}

std::optional<Species> parse_species(std::string_view name) {
  if (name == "K40" || name == "40K") return Species::potassium40;
  if (name == "Li6" || name == "6Li") return Species::lithium6;
  return std::nullopt;
}

std::string_view species_name(Species species) {
  switch (species) {
    case Species::potassium40: return "K40";
    case Species::lithium6: return "Li6";
  }
  return "?";
}

}  // namespace molent
