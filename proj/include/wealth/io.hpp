#pragma once

// Plain-text formats. Doubles are written with 17 significant digits and
// parsed with from_chars, so density files round-trip bit-exactly.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "wealth/agent_sim.hpp"
#include "wealth/grid.hpp"
#include "wealth/operator.hpp"

namespace wealth::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);

std::string density_csv(const Density& y);
/// Rebuilds the grid from the x column; rejects non-uniform nodes, a first
/// node other than 0, and negative or non-finite values.
Density parse_density_csv(const std::string& text);
Density read_density_csv(const std::filesystem::path& path);

std::string report_csv(const Trajectory& trajectory);
std::string ensemble_csv(const AgentEnsemble& ensemble);
std::string histogram_csv(const HistogramEstimate& hist);
std::string fit_json(const ExponentialFit& fit, const AgentEnsemble& ensemble);

/// Writes a set of files only after all contents exist, so that a failing
/// run leaves nothing half-written behind.
struct PendingFile {
    std::filesystem::path name;
    std::string contents;
};

void write_all(const std::filesystem::path& dir, const std::vector<PendingFile>& files);

}  // namespace wealth::io
