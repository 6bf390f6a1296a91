#include "wealth/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wealth::io {
namespace {

double parse_field(std::string_view s, std::size_t line) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw FormatError("line " + std::to_string(line) + ": not a number: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string density_csv(const Density& y) {
    std::string out = "x,density\n";
    out.reserve(out.size() + y.size() * 48);
    for (std::size_t i = 0; i < y.size(); ++i) {
        out += format_double(y.grid().node(i));
        out += ',';
        out += format_double(y[i]);
        out += '\n';
    }
    return out;
}

Density parse_density_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty density file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,density") throw FormatError("expected header 'x,density'");

    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw FormatError("line " + std::to_string(line_no) + ": expected two columns");
        const std::string_view view(line);
        xs.push_back(parse_field(view.substr(0, comma), line_no));
        ys.push_back(parse_field(view.substr(comma + 1), line_no));
    }
    if (xs.size() < kMinGridPoints) throw FormatError("density file has fewer than 16 rows");
    if (xs.front() != 0.0) throw FormatError("first node must be 0");

    const Grid grid(xs.size(), xs.back());
    const double tol = 1e-9 * grid.spacing();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(xs[i] - grid.node(i)) > tol) {
            throw FormatError("nodes are not uniform at row " + std::to_string(i + 1));
        }
        if (!std::isfinite(ys[i]) || ys[i] < 0.0) {
            throw FormatError("density must be finite and nonnegative at row " + std::to_string(i + 1));
        }
    }
    return Density(grid, std::move(ys));
}

Density read_density_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_density_csv(buf.str());
}

std::string report_csv(const Trajectory& trajectory) {
    std::string out = "step,norm,mean,mass_defect,dist_to_target,step_delta\n";
    auto row = [&out](const IterationReport& r) {
        out += std::to_string(r.step);
        for (double v : {r.norm, r.mean, r.mass_defect, r.dist_to_target, r.step_delta}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    };
    row(trajectory.initial);
    for (const auto& r : trajectory.reports) row(r);
    return out;
}

std::string ensemble_csv(const AgentEnsemble& ensemble) {
    std::string out = "agent_id,money\n";
    const auto money = ensemble.money();
    for (std::size_t i = 0; i < money.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(money[i]);
        out += '\n';
    }
    return out;
}

std::string histogram_csv(const HistogramEstimate& hist) {
    std::string out = "bin_left,bin_right,density\n";
    for (std::size_t b = 0; b < hist.densities.size(); ++b) {
        out += format_double(hist.bin_edges[b]) + ',' + format_double(hist.bin_edges[b + 1]) + ',' +
               format_double(hist.densities[b]) + '\n';
    }
    return out;
}

std::string fit_json(const ExponentialFit& fit, const AgentEnsemble& ensemble) {
    nlohmann::ordered_json j;
    j["beta_hat"] = fit.beta_hat;
    j["ks_statistic"] = fit.ks_statistic;
    j["n_samples"] = fit.n_samples;
    j["transactions_done"] = ensemble.transactions_done();
    j["seed"] = ensemble.seed();
    return j.dump(2) + "\n";
}

void write_all(const std::filesystem::path& dir, const std::vector<PendingFile>& files) {
    std::filesystem::create_directories(dir);
    for (const auto& f : files) {
        const auto path = dir / f.name;
        const auto tmp = path.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + tmp);
            out << f.contents;
            if (!out) throw std::runtime_error("write failed: " + tmp);
        }
        std::filesystem::rename(tmp, path);
    }
}

}  // namespace wealth::io
