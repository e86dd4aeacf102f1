#pragma once

#include "cyclelab/lexer.hpp"
#include "cyclelab/poly.hpp"

namespace cyclelab {

/// Parses one polynomial expression from a token stream, stopping at the first token that
/// cannot continue it.
Poly parse_poly(TokenStream& ts, const RingPtr& ring);

}  // namespace cyclelab
