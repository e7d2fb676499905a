#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "orthokin/workspace.hpp"

namespace orthokin {

// Deterministic float formatting used by every text export: 17 significant
// digits (round-trip exact), lowercase "nan"/"inf".
std::string fmt_g17(double v);

// ASCII PLY mesh of the boundary faces of the Inside cells; faces shared by
// two Inside cells are suppressed. Quads wind counter-clockwise seen from
// outside the region.
void write_workspace_ply(const WorkspaceModel& model, std::ostream& out);

// Header "axis,offset,resolution", one row with those values, then
// `resolution` rows of comma-separated 0/1 flags (row-major, 1 = feasible).
void write_cross_section_csv(const CrossSection& cs, std::ostream& out);

// JSON summary: bounds, depth, cell/label counts, volume bracket, component
// count, inscribed cube edge, and the synthesized limits when provided.
std::string workspace_summary_json(const WorkspaceModel& model,
                                   const std::optional<SynthesizedLimits>& limits);

}  // namespace orthokin
