#pragma once

#include <optional>
#include <string_view>

// Everything inside the library is SI. Gauss is the one non-SI unit kept
// internally because every field value in the model is quoted in it; field
// rates are therefore G/s.
namespace molent::units {

inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline constexpr double nanometer = 1e-9;
inline constexpr double micrometer = 1e-6;
inline constexpr double millisecond = 1e-3;
inline constexpr double microsecond = 1e-6;
inline constexpr double kilohertz = 1e3;
inline constexpr double pi = 3.14159265358979323846;

/// G/ms -> G/s.
constexpr double gauss_per_ms(double value) { return value / millisecond; }

}  // namespace molent::units

namespace molent {

struct PhysicalConstants {
  double hbar = units::hbar;
  double atomic_mass_unit = units::atomic_mass_unit;
};

enum class Species { potassium40, lithium6 };

/// Isotope mass in kg from the built-in table.
double atomic_mass(Species species);
double atomic_mass_amu(Species species);
std::optional<Species> parse_species(std::string_view name);
std::string_view species_name(Species species);

}  // namespace molent
