#pragma once

#include "prepot/model.hpp"

#include <string>
#include <vector>

namespace prepot {

struct Preset {
  std::string name;
  std::string family; // "sinusoidal" or "non-sinusoidal"
  ModelSpec model;
};

// The ten built-in models, sorted by name.
const std::vector<Preset>& preset_registry();

// Throws InputError listing the known names.
const Preset& find_preset(const std::string& name);

// min(5, highest bound level).
int default_n_max(const ModelSpec& model);

} // namespace prepot
