#include "movingwell/units.hpp"

#include <cmath>
#include <stdexcept>

namespace movingwell {

PhysicalParams::PhysicalParams(double hbar, double mass, UnitSystem units)
    : hbar_(hbar), mass_(mass), units_(units) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("hbar must be positive and finite");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("mass must be positive and finite");
  }
}

PhysicalParams PhysicalParams::natural(double mass) {
  return PhysicalParams(1.0, mass, UnitSystem::natural);
}

PhysicalParams PhysicalParams::si(double mass) {
  return PhysicalParams(kHbarSI, mass, UnitSystem::si);
}

std::string_view to_string(UnitSystem u) {
  return u == UnitSystem::natural ? "natural" : "si";
}

UnitSystem parse_unit_system(std::string_view s) {
  if (s == "natural") return UnitSystem::natural;
  if (s == "si" || s == "SI") return UnitSystem::si;
  throw std::invalid_argument("unknown unit system '" + std::string(s) +
                              "' (expected natural|si)");
}

}  // namespace movingwell
