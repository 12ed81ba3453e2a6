#pragma once

#include <tsa/interaction.hpp>
#include <tsa/spectra.hpp>
#include <tsa/visibility.hpp>

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace tsa {

// Plain CSV field: quoted only when it holds a comma, quote or newline.
std::string csv_field(const std::string& s);

// station,satellite,start_iso8601,end_iso8601,duration_s
void write_windows_header(std::ostream& out);
void write_windows_rows(std::ostream& out, const TemporalSpectrum& spectrum);

// station,satellite,time_iso8601,h  -- one row per level change of h(t),
// starting at span.start and closing at span.end.
void write_step_header(std::ostream& out);
void write_step_rows(std::ostream& out, const TemporalSpectrum& spectrum, const TimeSpan& span);

// station,<satellite ids...>; values in seconds.
void write_h_csv(std::ostream& out, const SpectrumMatrix& h);

std::string intra_json(const IntraResult& result);

// from,to,k,probability
void write_pmf_header(std::ostream& out);
void write_pmf_rows(std::ostream& out, const PulsePmf& pmf);

// from,<constellation ids...>
void write_p_csv(std::ostream& out, const InteractionMatrix& p);

// from,to,station,satellite,pulse_count,density_per_s
void write_pulse_stats_header(std::ostream& out);
void write_pulse_stats_rows(std::ostream& out, const PairInteraction& pair);

std::string inter_json(const InterResult& result, const PmfOptions& pmf);

// Shortest round-trip decimal form; identical doubles give identical text.
std::string format_number(double v);

std::string sha256_hex(const std::filesystem::path& file);
std::string sha256_hex_of(const std::string& bytes);

// Records every file a command writes. Paths are stored relative to the
// output directory.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }

    // Writes `content` to dir/relative (creating parents) and records it.
    void write(const std::filesystem::path& relative, const std::string& content);
    const std::vector<std::filesystem::path>& files() const { return files_; }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> files_;
};

struct RunManifest {
    std::string tool_version;
    std::string command;
    std::filesystem::path scenario;
    std::filesystem::path output_dir;
    int alpha_s = 1;
    double min_elevation_deg = 0.0;
    int coarse_step_s = 30;
    double wall_clock_s = 0.0;
    std::vector<std::filesystem::path> inputs;
    std::vector<std::filesystem::path> outputs;  // relative to output_dir
    std::vector<std::pair<std::string, std::string>> settings;  // command-specific, e.g. pmf bin
};

// manifest.json text, including SHA-256 of every input and output file.
std::string manifest_json(const RunManifest& manifest);

}  // namespace tsa
