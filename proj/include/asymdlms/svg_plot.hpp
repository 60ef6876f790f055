#pragma once

#include <string>
#include <string_view>

namespace asymdlms {

// Renders the MSD CSV (iteration,algorithm,msd_db) as a deterministic SVG
// line chart. Colors are assigned by sorted algorithm name, so the output is
// independent of row order. Throws on malformed input or an empty body.
std::string render_svg_from_csv(std::string_view csv_text);

}  // namespace asymdlms
