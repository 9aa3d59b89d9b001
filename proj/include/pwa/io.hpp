// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pwa/abstraction.hpp"
#include "pwa/synthesis.hpp"

namespace pwa::io {

using Json = nlohmann::ordered_json;

/// Rationals are strings ("3/4", "-0.25", "2") or JSON integers.
/// Throws ParseError for floats and anything malformed.
Scalar scalar_from_json(const Json& j);
Json scalar_to_json(const Scalar& s);

Vector vector_from_json(const Json& j, std::size_t expected);
Json vector_to_json(const Vector& v);

/// Either a list of {"a": [...], "b": ...} halfspaces or {"lower": [...], "upper": [...]}.
std::vector<Halfspace> halfspaces_from_json(const Json& j, std::size_t dim);
Json halfspaces_to_json(const std::vector<Halfspace>& hs);
Polytope polytope_from_json(const Json& j, std::size_t dim);

/// Throws ParseError for structural problems and ModelError for invalid models.
PwaSystem system_from_json(const Json& j);
/// Canonical form: region and input set as reduced halfspaces, guards as given.
Json system_to_json(const PwaSystem& sys);

SpecAutomaton spec_from_json(const Json& j, std::size_t mode_count);
Json spec_to_json(const SpecAutomaton& spec);

struct RunSettings {
    Scalar lambda;
    int max_level = 1;
    Scalar epsilon;
};

Json level_to_json(const Level& level);
Json report_to_json(const PwaSystem& sys, const RunSettings& settings, const std::vector<Level>& levels);

/// A controller file: the spec, the cells of the abstraction and their assignments.
struct Controller {
    SpecAutomaton spec;
    SymbolicSystem cells;
    ControlStrategy strategy;
    Scalar bound;
};

Json controller_to_json(const SpecAutomaton& spec, const SymbolicSystem& am, const ControlStrategy& k);
Controller controller_from_json(const Json& j, const PwaSystem& sys);

Json trace_to_json(const ClosedLoopRun& run);

/// Throws ParseError when the file is unreadable or not valid JSON.
Json read_json(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace pwa::io
