#pragma once

#include <string>

#include "swipegan/layout.hpp"
#include "swipegan/path.hpp"

namespace swipegan {

// Keyboard keys with letter labels plus the path as per-segment lines whose
// stroke fades from green (#00a000) at the start to yellow (#e0c000) at the
// end. viewBox is "0 0 1000 333".
std::string render_svg(const KeyboardLayout& layout, const Path& path);

}  // namespace swipegan
