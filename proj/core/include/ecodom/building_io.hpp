#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ecodom/building.hpp"

namespace ecodom {

inline constexpr int kBuildingSchemaVersion = 1;

/// Parses a building document without running validate(). Unknown keys,
/// wrong types and a schema version other than kBuildingSchemaVersion are
/// InputErrors naming the JSON path.
BuildingDescription parse_building(const nlohmann::json& doc, std::string_view source = "<json>");

/// Reads, parses and validates; throws InputError or ValidationFailed.
BuildingDescription load_building(const std::filesystem::path& path);

/// Inverse of parse_building (canonical key order, orientations as names).
nlohmann::ordered_json building_to_json(const BuildingDescription& building);

}  // namespace ecodom
