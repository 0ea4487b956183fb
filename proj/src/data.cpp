#include "arccount/data.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "embedded_data.hpp"

namespace arccount {

const std::string& preset_data_text() {
  static const std::string text = [] {
    if (const char* path = std::getenv("ARCCOUNT_DATA")) {
      std::ifstream in(path);
      if (!in) throw std::runtime_error(std::string("cannot open ARCCOUNT_DATA file ") + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
    return std::string(detail::kEmbeddedPresets);
  }();
  return text;
}

}  // namespace arccount
