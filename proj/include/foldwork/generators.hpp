#pragma once

#include <optional>
#include <random>
#include <vector>

#include "foldwork/foldcore.hpp"

namespace foldwork::gen {

using Labels = std::vector<std::optional<FoldLabel>>;

/// 1 x n strip [0,n] x [0,1] with creases x = 1..n-1. `labels` is empty or
/// has one entry per crease.
CreasePattern strip(int n, const Labels& labels = {});

/// rows x cols unit grid [0,cols] x [0,rows]. Grid lines are split at every
/// grid point; vertical pieces come first, column by column, bottom to top,
/// then horizontal pieces row by row, left to right.
CreasePattern map(int rows, int cols, const Labels& labels = {});
int map_crease_count(int rows, int cols);

/// Single-vertex fan on the whole plane: one ray from the origin per
/// direction vector.
CreasePattern fan(const std::vector<Point>& directions, const Labels& labels = {});

/// Directions of k rays around the origin whose alternating angle sums are
/// equal, so a local flat folding exists. Random rational slopes; k even.
/// Fans where two creases fold onto the same image ray are rejected.
std::vector<Point> kawasaki_directions(int k, std::mt19937& rng);

/// Strip with random rational crease positions (a generalized stamp strip).
CreasePattern random_strip(int n, std::mt19937& rng);

/// Grid with random rational row and column spacings.
CreasePattern random_grid(int rows, int cols, std::mt19937& rng);

/// Every assignment of {none, M, V} (or {M, V} when `allow_none` is false).
std::vector<Labels> all_labelings(int creases, bool allow_none);

CreasePattern with_labels(CreasePattern cp, const Labels& labels);

}  // namespace foldwork::gen
