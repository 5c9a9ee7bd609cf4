#pragma once

#include <optional>

#include "klr/klr_algebra.hpp"

namespace klr {

// ASCII strand diagram of a generator word, read bottom to top (the
// rightmost atom acts first).  The word must contain an idempotent fixing
// the source sequence.  With a doubling, each doubled-vertex strand becomes
// a parallel pair, crossings expand through the hat-letter table and dots
// sit on the first strand of the pair.
std::string render_diagram(const GeneratorWord& word, const Quiver& quiver,
                           const DoubledQuiver* doubling = nullptr);

}  // namespace klr
