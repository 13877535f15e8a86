#pragma once

#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "lomo/grid.hpp"

namespace lomo {

/// GridFunction files carry a header {dim, side, n_points} and the row-major
/// float64 samples. For N <= 64 per axis both live in one JSON document
/// {"dim", "side", "n_points", "samples"}; larger grids are written as the
/// header document followed by a second document holding the bare array.
/// The reader accepts either layout.
void write_grid_function(std::ostream& out, const GridFunction& f);
GridFunction read_grid_function(std::istream& in);

void save_grid_function(const std::filesystem::path& path, const GridFunction& f);
GridFunction load_grid_function(const std::filesystem::path& path);

/// Largest per-axis size written as a single document.
inline constexpr std::size_t kSingleDocumentLimit = 64;

}  // namespace lomo
