#pragma once
#include <string>

namespace arccount {

// Raw JSON text of the preset data file (oracle representations, filling
// registry, arc systems). Embedded at build time; the ARCCOUNT_DATA
// environment variable points at an override file.
const std::string& preset_data_text();

}  // namespace arccount
