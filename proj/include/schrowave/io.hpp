#pragma once

#include <iosfwd>

#include "schrowave/types.hpp"

namespace schrowave {

/// State vector text: one "index real imag" line per entry.
void write_state(std::ostream& os, const DenseVec& v);
DenseVec read_state(std::istream& is);

}  // namespace schrowave
