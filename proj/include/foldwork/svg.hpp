#pragma once

#include <string>

#include "foldwork/flaps.hpp"
#include "foldwork/foldcore.hpp"

namespace foldwork::svg {

/// Arrangement cells filled on a fixed grayscale ramp by ply (ply 0 white,
/// darker per layer), arrangement edges on top.
std::string arrangement(const FoldedArrangement& fa);

/// The crease pattern on the unfolded paper; mountains red, valleys blue.
std::string crease_pattern(const CreasePattern& cp);

/// Hinges as thick strokes. With a state, each placed square is drawn
/// translucent from the bottom of the stack up, so overlaps read darker.
std::string flaps(const FlapInstance& inst, const FlapState* st = nullptr);

}  // namespace foldwork::svg
