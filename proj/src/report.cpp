#include <tsa/report.hpp>

#include <tsa/errors.hpp>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <sstream>

namespace tsa {

using nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string format_number(double v) { return fmt::format("{}", v); }

void write_windows_header(std::ostream& out) { out << "station,satellite,start_iso8601,end_iso8601,duration_s\n"; }

void write_windows_rows(std::ostream& out, const TemporalSpectrum& s) {
    for (const auto& w : s.windows) {
        out << csv_field(s.station_id) << ',' << csv_field(s.satellite_id) << ',' << format_iso8601(w.start) << ','
            << format_iso8601(w.end) << ',' << w.duration().count() << '\n';
    }
}

void write_step_header(std::ostream& out) { out << "station,satellite,time_iso8601,h\n"; }

void write_step_rows(std::ostream& out, const TemporalSpectrum& s, const TimeSpan& span) {
    const auto prefix = csv_field(s.station_id) + ',' + csv_field(s.satellite_id) + ',';
    const auto row = [&](UtcSeconds t, int h) { out << prefix << format_iso8601(t) << ',' << h << '\n'; };
    if (s.windows.empty() || s.windows.front().start > span.start) {
        row(span.start, 0);
    }
    for (const auto& w : s.windows) {
        row(w.start, 1);
        row(w.end, 0);
    }
    if (s.windows.empty() || s.windows.back().end < span.end) {
        row(span.end, 0);
    }
}

void write_h_csv(std::ostream& out, const SpectrumMatrix& h) {
    out << "station";
    for (const auto& x : h.satellite_ids) {
        out << ',' << csv_field(x);
    }
    out << '\n';
    for (std::size_t i = 0; i < h.rows(); ++i) {
        out << csv_field(h.station_ids[i]);
        for (std::size_t x = 0; x < h.cols(); ++x) {
            out << ',' << h.at(i, x);
        }
        out << '\n';
    }
}

namespace {

ordered_json window_json(const TimeSpan& w) {
    return {{"start", format_iso8601(w.start)}, {"end", format_iso8601(w.end)}, {"duration_s", w.duration().count()}};
}

ordered_json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

std::string intra_json(const IntraResult& r) {
    ordered_json j;
    j["constellation"] = r.h.constellation_id;
    j["global_window"] = window_json(r.h.global_window);
    j["alpha_s"] = r.h.alpha_s;
    j["stations"] = r.h.station_ids;
    j["satellite_count"] = r.h.cols();
    j["dense_h_memory_bits"] = r.dense_memory_bits;
    j["eigenvalues"] = r.eigen.eigenvalues;
    std::vector<double> lead;
    for (std::size_t i = 0; i < r.h.rows(); ++i) {
        lead.push_back(r.eigen.eigenvectors(i, 0));
    }
    j["leading_eigenvector"] = lead;
    j["leading_multiplicity"] = r.ranking.leading_multiplicity;
    j["jacobi_sweeps"] = r.eigen.sweeps;
    j["dominant_station"] = r.ranking.dominant_id;
    j["isolated_station"] = r.ranking.isolated_id;
    ordered_json per = ordered_json::array();
    for (const auto i : r.ranking.order) {
        const auto& s = r.ranking.scores[i];
        per.push_back({{"station", s.station_id},
                       {"score", s.score},
                       {"j_ii", s.j_ii},
                       {"total_visibility_s", r.h.row_total(i)}});
    }
    j["ranking"] = per;
    return j.dump(2) + "\n";
}

void write_pmf_header(std::ostream& out) { out << "from,to,k,probability\n"; }

void write_pmf_rows(std::ostream& out, const PulsePmf& pmf) {
    for (std::size_t i = 0; i < pmf.support.size(); ++i) {
        out << csv_field(pmf.from_constellation) << ',' << csv_field(pmf.to_constellation) << ',' << pmf.support[i]
            << ',' << format_number(pmf.probabilities[i]) << '\n';
    }
}

void write_p_csv(std::ostream& out, const InteractionMatrix& p) {
    out << "from";
    for (const auto& c : p.constellation_ids) {
        out << ',' << csv_field(c);
    }
    out << '\n';
    for (std::size_t i = 0; i < p.size(); ++i) {
        out << csv_field(p.constellation_ids[i]);
        for (std::size_t j = 0; j < p.size(); ++j) {
            out << ',' << p.at(i, j);
        }
        out << '\n';
    }
}

void write_pulse_stats_header(std::ostream& out) { out << "from,to,station,satellite,pulse_count,density_per_s\n"; }

void write_pulse_stats_rows(std::ostream& out, const PairInteraction& pair) {
    for (const auto& s : pair.stats) {
        out << csv_field(pair.from) << ',' << csv_field(pair.to) << ',' << csv_field(s.station_id) << ','
            << csv_field(s.satellite_id) << ',' << s.pulse_count << ',' << format_number(s.density) << '\n';
    }
}

std::string inter_json(const InterResult& r, const PmfOptions& pmf) {
    ordered_json j;
    j["constellations"] = r.p.constellation_ids;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < r.p.size(); ++i) {
        std::vector<std::int64_t> row;
        for (std::size_t k = 0; k < r.p.size(); ++k) {
            row.push_back(r.p.at(i, k));
        }
        rows.push_back(row);
    }
    j["P"] = rows;
    ordered_json vals = ordered_json::array();
    ordered_json vecs = ordered_json::array();
    for (std::size_t k = 0; k < r.p.eigen.values.size(); ++k) {
        vals.push_back(complex_json(r.p.eigen.values[k]));
        ordered_json v = ordered_json::array();
        for (const auto& c : r.p.eigen.vectors[k]) {
            v.push_back(complex_json(c));
        }
        vecs.push_back(v);
    }
    j["eigenvalues"] = vals;
    j["eigenvectors"] = vecs;
    j["pmf_bin_s"] = pmf.bin_s;
    j["pmf_pooling"] = pmf.pooling == PmfPooling::all_pairs ? "all_pairs" : "best_station";
    ordered_json pairs = ordered_json::array();
    for (const auto& p : r.pairs) {
        ordered_json e;
        e["from"] = p.from;
        e["to"] = p.to;
        e["has_windows"] = p.has_windows;
        e["global_window"] = window_json(p.gw);
        e["strongest_station"] = p.strongest_station_id;
        e["strongest_count"] = p.strongest_count;
        std::int64_t total = 0;
        for (const auto t : p.station_totals) {
            total += t;
        }
        e["total_pulses"] = total;
        e["pair_count"] = p.stats.size();
        ordered_json f;
        f["bin_s"] = p.pmf.bin_s;
        f["bins_per_pair"] = p.pmf.bins;
        f["observations"] = p.pmf.observations;
        f["mode"] = p.pmf.mode();
        f["support"] = p.pmf.support;
        f["probabilities"] = p.pmf.probabilities;
        e["pmf"] = f;
        pairs.push_back(e);
    }
    j["pairs"] = pairs;
    return j.dump(2) + "\n";
}

std::string sha256_hex_of(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 failed");
    }
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += fmt::format("{:02x}", md[i]);
    }
    return out;
}

std::string sha256_hex(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw MissingFileError(fmt::format("cannot read {}", file.string()));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex_of(ss.str());
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

void OutputSet::write(const std::filesystem::path& relative, const std::string& content) {
    const auto full = dir_ / relative;
    std::error_code ec;
    std::filesystem::create_directories(full.parent_path(), ec);
    std::ofstream out(full, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw MissingFileError(fmt::format("cannot write {}", full.string()));
    }
    out << content;
    if (!out) {
        throw MissingFileError(fmt::format("write failed: {}", full.string()));
    }
    files_.push_back(relative);
}

std::string manifest_json(const RunManifest& m) {
    ordered_json j;
    j["tool"] = "tsa";
    j["tool_version"] = m.tool_version;
    j["command"] = m.command;
    j["scenario"] = m.scenario.string();
    j["output_dir"] = m.output_dir.string();
    j["alpha_s"] = m.alpha_s;
    j["min_elevation_deg"] = m.min_elevation_deg;
    j["coarse_step_s"] = m.coarse_step_s;
    for (const auto& [k, v] : m.settings) {
        j[k] = v;
    }
    j["wall_clock_s"] = m.wall_clock_s;
    ordered_json inputs = ordered_json::array();
    for (const auto& p : m.inputs) {
        inputs.push_back({{"path", p.string()}, {"sha256", sha256_hex(p)}});
    }
    j["inputs"] = inputs;
    ordered_json outputs = ordered_json::array();
    for (const auto& p : m.outputs) {
        outputs.push_back({{"path", p.generic_string()}, {"sha256", sha256_hex(m.output_dir / p)}});
    }
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

}  // namespace tsa
