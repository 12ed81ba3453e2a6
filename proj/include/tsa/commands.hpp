#pragma once

#include <tsa/interaction.hpp>
#include <tsa/network.hpp>

#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tsa {

struct CommandOptions {
    std::filesystem::path scenario;
    std::filesystem::path out_dir = "tsa-out";
    std::optional<int> alpha_s;
    std::optional<double> min_elevation_deg;
    std::optional<int> coarse_step_s;
    int jobs = 0;  // 0: all processors
    std::vector<std::string> stations;        // access filter
    std::vector<std::string> satellites;      // access filter
    std::vector<std::string> constellations;  // restricts every command
    bool aggregate = false;  // access: one windows file instead of one per pair
    bool all_pairs = false;  // access: include cross-constellation pairs
    PmfOptions pmf;
};

struct CommandResult {
    std::filesystem::path out_dir;
    std::vector<std::filesystem::path> outputs;  // relative to out_dir, manifest.json last
    std::string summary;                         // human-readable, for stdout
};

// Each command loads the scenario, applies overrides, computes, and writes
// its data files plus manifest.json into out_dir.
CommandResult cmd_access(const CommandOptions& options);
CommandResult cmd_intra(const CommandOptions& options);
CommandResult cmd_inter(const CommandOptions& options);

// 2 input error, 3 empty network, 4 numerical failure, 1 anything else.
int exit_code_for(const std::exception& e);

// File-name-safe form of an id.
std::string safe_file_stem(const std::string& id);

}  // namespace tsa
