#pragma once

#include <string>
#include <vector>

namespace griphand {

/// Elastic constants in MPa (N/mm^2) and the object/finger friction
/// coefficient. Defaults are typical ABS values.
struct MaterialSpec {
  double E = 2200.0;
  double G = 800.0;
  double mu_fingers = 0.3;
};

std::vector<std::string> violations(const MaterialSpec& mat);

}  // namespace griphand
