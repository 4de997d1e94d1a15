#pragma once

#include <string>

#include "hbk/diagram.hpp"

namespace hbk {

/// Diagram file format: UTF-8 JSON with top-level keys `name`, `crossings`,
/// `vertices` and optional `outer`. serialize() emits keys in that order with
/// arrays sorted by id, so output is byte-stable; parse(serialize(D)) == D.
std::string serialize(const Diagram& d);

/// Throws Syntax / DuplicateSlot / MissingSlot / BadSign on malformed input.
Diagram parse_diagram(const std::string& text);

Diagram load_diagram_file(const std::string& path);
void save_diagram_file(const Diagram& d, const std::string& path);

}  // namespace hbk
