#pragma once

#include <iosfwd>
#include <string>

#include "lpt/diffusion.hpp"

namespace lpt {

/// JSON schema: {"family": <name>, "params": {...}, "interval": [lo, hi],
/// "alpha": a}. Infinite endpoints are written as the strings "-inf"/"inf".
/// Round-trips are lossless for all catalog families; GenericDiffusion is
/// not serializable and throws DomainError.
std::string spec_to_json(const DiffusionSpec& spec);
DiffusionSpec spec_from_json(const std::string& text);

DiffusionSpec load_spec_file(const std::string& path);
void save_spec_file(const DiffusionSpec& spec, const std::string& path);

} // namespace lpt
