#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cast/tiling.hpp"

namespace cast {

// Robinson triangles, n = 5, eta = golden ratio.
RuleSet penrose_robinson();
// Rhomb and half-square triangle, n = 4, eta = 1 + sqrt 2.
RuleSet ammann_beenker();
// Generalized Lancon-Billard rhomb tilings, 4 <= n <= 8, eta = 1 + zeta_2n.
RuleSet lancon_billard(int n);

// "penrose_robinson", "ammann_beenker", "lancon_billard(7)" (also "lancon_billard7").
RuleSet builtin(const std::string& name);
std::vector<std::string> builtin_names();

// Placement mapping the prototile exactly onto target (a CCW vertex cycle,
// any starting vertex), if one exists.
std::optional<Placement> fit_placement(const Prototile& t, const Polygon& target);

}  // namespace cast
