#pragma once

#include <string>

namespace emtopo {

enum class Units { SI, Natural };

/// Physical constants of one unit system. SI uses the exact defining values
/// for e, c and hbar and the CODATA 2018 mu0; epsilon0 is derived from
/// epsilon0 mu0 c^2 = 1. Natural units set e = c = hbar = epsilon0 = 1.
struct PhysicalConstants {
  Units mode = Units::Natural;
  double e = 1.0;
  double epsilon0 = 1.0;
  double mu0 = 1.0;
  double c = 1.0;
  double hbar = 1.0;

  static PhysicalConstants si() {
    PhysicalConstants k;
    k.mode = Units::SI;
    k.e = 1.602176634e-19;
    k.c = 299792458.0;
    k.hbar = 1.054571817e-34;
    k.mu0 = 1.25663706212e-6;
    k.epsilon0 = 1.0 / (k.mu0 * k.c * k.c);
    return k;
  }
  static PhysicalConstants natural() { return {}; }
  static PhysicalConstants of(Units u) { return u == Units::SI ? si() : natural(); }
};

Units parse_units(const std::string& name);
std::string units_name(Units u);

}  // namespace emtopo
