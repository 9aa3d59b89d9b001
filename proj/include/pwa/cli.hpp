// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "pwa/scalar.hpp"

namespace pwa::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kModel = 3,
    kSpec = 4,
    kRuntime = 5,
};

struct AbstractOptions {
    std::filesystem::path system;
    Scalar lambda{1, 2};
    int max_level = 4;
    Scalar epsilon{0};
    std::filesystem::path out;
};

struct SynthesizeOptions {
    std::filesystem::path system;
    std::filesystem::path spec;
    Scalar lambda{1, 2};
    int max_level = 4;
    std::filesystem::path out;
    std::optional<std::filesystem::path> report;
    std::size_t trials = 100;
    std::size_t horizon = 50;
    std::uint64_t seed = 1;
};

struct SimulateOptions {
    std::filesystem::path system;
    std::filesystem::path controller;
    std::string x0;
    std::size_t horizon = 50;
    std::uint64_t seed = 1;
    std::filesystem::path out;
};

struct RenderOptions {
    std::filesystem::path system;
    std::filesystem::path input;
    /// Level to draw from a report; zero selects the last one.
    int level = 0;
    std::filesystem::path out;
};

int cmd_abstract(const AbstractOptions& opt, std::ostream& err);
int cmd_synthesize(const SynthesizeOptions& opt, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& err);
int cmd_render(const RenderOptions& opt, std::ostream& err);
int cmd_report(const std::filesystem::path& report, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Sets log verbosity from the PWA_LOG environment variable.
void configure_logging();

} // namespace pwa::cli
