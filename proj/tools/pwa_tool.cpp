// Copyright (c) pwa-abstraction contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "pwa/cli.hpp"

int main(int argc, char** argv) {
    return pwa::cli::run(argc, argv, std::cout, std::cerr);
}
