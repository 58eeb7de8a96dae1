#pragma once

#include <string>
#include <string_view>

namespace movingwell {

enum class UnitSystem { natural, si };

inline constexpr double kHbarSI = 1.054571817e-34;          // J s
inline constexpr double kElectronMassSI = 9.1093837015e-31;  // kg

/// hbar and the particle mass. Kernels never assume a unit system; every
/// formula carries hbar and m explicitly.
class PhysicalParams {
 public:
  PhysicalParams() = default;
  PhysicalParams(double hbar, double mass, UnitSystem units);

  static PhysicalParams natural(double mass = 1.0);
  static PhysicalParams si(double mass = kElectronMassSI);

  double hbar() const { return hbar_; }
  double mass() const { return mass_; }
  UnitSystem units() const { return units_; }
  double hbar_over_mass() const { return hbar_ / mass_; }

 private:
  double hbar_ = 1.0;
  double mass_ = 1.0;
  UnitSystem units_ = UnitSystem::natural;
};

std::string_view to_string(UnitSystem u);
UnitSystem parse_unit_system(std::string_view s);

}  // namespace movingwell
