#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gridsight/street_graph.hpp"

namespace gridsight {

using Json = nlohmann::ordered_json;

/// Throws ParseError with the failing byte offset on malformed JSON.
Json parse_json(std::string_view text);

/// Canonical text form shared by the CLI and the service: 2-space indent, trailing newline.
std::string to_document(const Json& value);

/// Throws Error(kIo) naming the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

/// Graph interchange document:
/// {"vertices":[{"id","lat","lon"}],"edges":[{"u","v","length_m","directed"}],"profile"}.
/// Planar graphs additionally carry "metric":"planar".
Json graph_to_json(const StreetGraph& graph);
StreetGraph graph_from_json(const Json& document);

}  // namespace gridsight
