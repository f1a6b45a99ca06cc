#pragma once

#include <nlohmann/json.hpp>

#include "helix/cube.hpp"
#include "helix/decomp.hpp"
#include "helix/infotheory.hpp"
#include "helix/stats.hpp"

namespace helix {

inline constexpr int kReportSchemaVersion = 1;

/// Cube fixture shape:
///
///     {"axes": {"G": [...], "O": [...], "T": [...]},
///      "cells": [{"g": 0, "o": 1, "t": 2, "nat": 3, "int": 0}, ...]}
///
/// Indices refer to the axis label lists.
nlohmann::json cube_to_json(const ContingencyCube& cube);
ContingencyCube cube_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EntropyProfile& profile);
nlohmann::json to_json(const SynergyDecomposition& d);
nlohmann::json to_json(const ChiSquareResult& r);

/// Region report body. Undefined ratios are written as null and listed in the
/// "undefined" array.
nlohmann::json to_json(const RegionReport& report);

const char* log_base_unit(LogBase base);

}  // namespace helix
