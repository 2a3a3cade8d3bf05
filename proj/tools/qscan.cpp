// SPDX-License-Identifier: Apache-2.0

#include "tsallis/cli.hpp"

int main(int argc, char** argv) { return tsallis::cli::run_cli(argc, argv); }
