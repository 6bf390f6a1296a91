// wealthop: iterate the wealth-exchange operator, simulate the agent gas,
// run the property suite, and sweep the analytic families. Every run writes
// manifest.json next to its data; its "command" array re-executes the run.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wealth/agent_sim.hpp"
#include "wealth/families.hpp"
#include "wealth/io.hpp"
#include "wealth/operator.hpp"
#include "wealth/simd.hpp"
#include "wealth/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace wealth;

struct Config {
    std::string subcommand;
    // grid and numerics
    std::size_t n_points = kDefaultGridPoints;
    double x_max = 0.0;  // 0: 40 * mean of the initial condition
    std::string method = "fft";
    std::string quadrature = "gregory";
    std::string kernels = "auto";
    std::string out = "out";
    std::uint64_t seed = 7;
    // initial condition
    std::string family = "triangle";
    double alpha = 1.0;
    double beta = 3.0;
    int n = 1;
    double epsilon = 0.5;
    double mean = 1.0;
    std::string initial;
    // iterate
    std::size_t steps = 5;
    bool early_stop = false;
    // simulate
    std::size_t agents = 100000;
    std::uint64_t transactions = 10000000;
    double m0 = 1.0;
    std::size_t bins = 200;
    double m_max = 0.0;  // 0: 20 * mean money
    // verify
    std::size_t samples = 50;
    // families: a single spec instead of the lattice when any is given
    bool families_single = false;
};

OperatorOptions operator_options(const Config& c) {
    return {convolution_method_from_string(c.method), quadrature_from_string(c.quadrature)};
}

FamilySpec named_family(const Config& c) {
    if (c.family == "exponential") return FamilySpec::exponential(c.alpha);
    if (c.family == "gamma") return FamilySpec::gamma(c.alpha, c.n);
    if (c.family == "mix") return FamilySpec::two_exponential_mix(c.alpha, c.beta);
    if (c.family == "epsmix") return FamilySpec::epsilon_mix(c.epsilon, c.alpha, c.n);
    throw std::invalid_argument("unknown family '" + c.family + "'");
}

std::string step_name(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "density_%03zu.csv", k);
    return buf;
}

std::vector<std::string> command_line(const Config& c) {
    std::vector<std::string> a{"wealthop", c.subcommand};
    auto opt = [&a](const char* flag, const std::string& v) {
        a.emplace_back(flag);
        a.push_back(v);
    };
    auto num = [](double v) { return io::format_double(v); };
    opt("--n-points", std::to_string(c.n_points));
    opt("--x-max", num(c.x_max));
    opt("--method", c.method);
    opt("--quadrature", c.quadrature);
    opt("--kernels", c.kernels);
    opt("--out", c.out);
    opt("--seed", std::to_string(c.seed));
    if (c.subcommand == "iterate" || c.subcommand == "families") {
        if (c.subcommand == "iterate" && !c.initial.empty()) {
            opt("--initial", c.initial);
        } else if (c.subcommand == "iterate" || c.families_single) {
            opt("--family", c.family);
            opt("--alpha", num(c.alpha));
            opt("--beta", num(c.beta));
            opt("--n", std::to_string(c.n));
            opt("--epsilon", num(c.epsilon));
            if (c.subcommand == "iterate") opt("--mean", num(c.mean));
        }
    }
    if (c.subcommand == "iterate") {
        opt("--steps", std::to_string(c.steps));
        if (c.early_stop) a.emplace_back("--early-stop");
    }
    if (c.subcommand == "simulate") {
        opt("--agents", std::to_string(c.agents));
        opt("--transactions", std::to_string(c.transactions));
        opt("--m0", num(c.m0));
        opt("--bins", std::to_string(c.bins));
        opt("--m-max", num(c.m_max));
        if (!c.initial.empty()) opt("--initial", c.initial);
    }
    if (c.subcommand == "verify") opt("--samples", std::to_string(c.samples));
    return a;
}

io::PendingFile manifest(const Config& c) {
    ordered_json j;
    j["subcommand"] = c.subcommand;
    j["version"] = WEALTHOP_VERSION;
    j["seed"] = c.seed;
    j["method"] = c.method;
    j["quadrature"] = c.quadrature;
    j["kernels"] = simd::active_kernels().name;
    ordered_json o;
    o["n_points"] = c.n_points;
    o["x_max"] = c.x_max;
    if (c.subcommand == "iterate") {
        if (c.initial.empty()) {
            o["family"] = c.family;
            o["alpha"] = c.alpha;
            o["beta"] = c.beta;
            o["n"] = c.n;
            o["epsilon"] = c.epsilon;
            o["mean"] = c.mean;
        } else {
            o["initial"] = c.initial;
        }
        o["steps"] = c.steps;
        o["early_stop"] = c.early_stop;
    } else if (c.subcommand == "simulate") {
        o["agents"] = c.agents;
        o["transactions"] = c.transactions;
        o["m0"] = c.m0;
        o["bins"] = c.bins;
        o["m_max"] = c.m_max;
        if (!c.initial.empty()) o["initial"] = c.initial;
    } else if (c.subcommand == "verify") {
        o["samples"] = c.samples;
    } else if (c.families_single) {
        o["family"] = c.family;
        o["alpha"] = c.alpha;
        o["beta"] = c.beta;
        o["n"] = c.n;
        o["epsilon"] = c.epsilon;
    }
    j["options"] = o;
    j["command"] = command_line(c);
    return {"manifest.json", j.dump(2) + "\n"};
}

int cmd_iterate(Config& c) {
    std::optional<Density> y0;
    if (!c.initial.empty()) {
        y0 = io::read_density_csv(c.initial);
        c.n_points = y0->size();
        c.x_max = y0->grid().x_max();
    } else {
        const bool triangle = c.family == "triangle";
        const double mean = triangle ? c.mean : family_mean(named_family(c));
        if (!(mean > 0.0)) throw std::invalid_argument("--mean must be positive");
        if (c.x_max == 0.0) c.x_max = kDefaultDomainMeans * mean;
        const Grid grid = make_grid(c.n_points, c.x_max);
        y0 = triangle ? triangle_density(grid, c.mean, quadrature_from_string(c.quadrature))
                      : sample_family(named_family(c), grid);
    }

    IterationOptions opts;
    opts.op = operator_options(c);
    opts.early_stop = c.early_stop;
    opts.keep_states = true;
    const Trajectory t = iterate_T(*y0, c.steps, opts);

    std::vector<io::PendingFile> files;
    for (std::size_t k = 0; k < t.states.size(); ++k) files.push_back({step_name(k), io::density_csv(t.states[k])});
    files.push_back({"report.csv", io::report_csv(t)});
    files.push_back(manifest(c));
    io::write_all(c.out, files);

    std::printf("%-6s %-22s %-22s %-22s\n", "step", "norm", "mean", "dist_to_target");
    std::printf("%-6zu %-22.15g %-22.15g %-22.15g\n", t.initial.step, t.initial.norm, t.initial.mean,
                t.initial.dist_to_target);
    for (const auto& r : t.reports) {
        std::printf("%-6zu %-22.15g %-22.15g %-22.15g\n", r.step, r.norm, r.mean, r.dist_to_target);
    }
    return 0;
}

int cmd_simulate(Config& c) {
    AgentEnsemble ens = [&] {
        if (c.initial.empty()) return AgentEnsemble::equal(c.agents, c.m0, c.seed);
        return AgentEnsemble::from_density(c.agents, io::read_density_csv(c.initial), c.seed);
    }();
    if (c.m_max == 0.0) c.m_max = 20.0 * ens.total() / static_cast<double>(ens.size());
    const double before = ens.total();
    ens.run_transactions(c.transactions);
    const auto hist = histogram(ens, c.bins, c.m_max);
    const auto fit = fit_exponential(ens);

    io::write_all(c.out, {
                             {"ensemble.csv", io::ensemble_csv(ens)},
                             {"histogram.csv", io::histogram_csv(hist)},
                             {"fit.json", io::fit_json(fit, ens)},
                             manifest(c),
                         });
    std::printf("beta_hat      %.15g\n", fit.beta_hat);
    std::printf("ks_statistic  %.15g\n", fit.ks_statistic);
    std::printf("total drift   %.3g\n", std::abs(ens.current_total() - before) / before);
    return 0;
}

int cmd_verify(Config& c) {
    if (c.x_max == 0.0) c.x_max = kDefaultDomainMeans;
    VerifyOptions o;
    o.n_points = c.n_points;
    o.x_max = c.x_max;
    o.op = operator_options(c);
    o.seed = c.seed;
    o.samples = c.samples;
    const VerifyReport report = run_property_suite(o);

    ordered_json props = ordered_json::array();
    for (const auto& p : report.properties) {
        props.push_back({{"name", p.name},
                         {"relation", p.relation == Relation::at_most ? "<=" : ">="},
                         {"measured", p.measured},
                         {"threshold", p.threshold},
                         {"passed", p.passed},
                         {"detail", p.detail}});
        std::printf("%-4s %-30s %-14.6g %s %-10g\n", p.passed ? "ok" : "FAIL", p.name.c_str(), p.measured,
                    p.relation == Relation::at_most ? "<=" : ">=", p.threshold);
    }
    ordered_json j;
    j["all_passed"] = report.all_passed();
    j["properties"] = props;
    io::write_all(c.out, {{"verify.json", j.dump(2) + "\n"}, manifest(c)});

    if (!report.all_passed()) {
        std::string names;
        for (const auto& f : report.failed()) names += " " + f;
        std::fprintf(stderr, "failed properties:%s\n", names.c_str());
        return 1;
    }
    return 0;
}

int cmd_families(Config& c) {
    std::vector<FamilySpec> specs;
    if (c.families_single) {
        if (c.family == "triangle") c.family = "gamma";
        specs.push_back(named_family(c));
    } else {
        specs = parameter_lattice();
    }
    const OperatorOptions op = operator_options(c);

    std::string csv = "family,alpha,beta,n,epsilon,d_before,d_after,contracted,oracle_l1_gap\n";
    bool all_contracted = true;
    for (const auto& spec : specs) {
        const Grid grid = c.x_max == 0.0 ? make_grid(c.n_points, kDefaultDomainMeans * family_mean(spec))
                                         : make_grid(c.n_points, c.x_max);
        const auto check = contraction_check(spec, grid);
        double gap = 0.0;
        if (spec.kind != FamilyKind::exponential) {
            gap = l1_distance(apply_T(sample_family(spec, grid), op), closed_form_T(spec, grid), op.quadrature);
        }
        const bool ok = check.contracted || check.degenerate;
        all_contracted = all_contracted && ok;
        csv += std::string(to_string(spec.kind)) + ',' + io::format_double(spec.alpha) + ',' +
               io::format_double(spec.beta) + ',' + std::to_string(spec.n) + ',' + io::format_double(spec.epsilon) +
               ',' + io::format_double(check.d_before) + ',' + io::format_double(check.d_after) + ',' +
               (check.degenerate ? "degenerate" : (check.contracted ? "true" : "false")) + ',' +
               io::format_double(gap) + '\n';
        std::printf("%-36s d_before=%-12.4g d_after=%-12.4g gap=%.3g\n", spec.describe().c_str(), check.d_before,
                    check.d_after, gap);
    }
    io::write_all(c.out, {{"families.csv", csv}, manifest(c)});
    return all_contracted ? 0 : 1;
}

void add_common(CLI::App* sub, Config& c) {
    sub->add_option("--n-points", c.n_points, "grid nodes")->capture_default_str();
    sub->add_option("--x-max", c.x_max, "domain end (0 = 40 x mean)")->capture_default_str();
    sub->add_option("--method", c.method, "autoconvolution method")
        ->check(CLI::IsMember({"fft", "direct"}))
        ->capture_default_str();
    sub->add_option("--quadrature", c.quadrature, "quadrature rule")
        ->check(CLI::IsMember({"gregory", "trapezoid"}))
        ->capture_default_str();
    sub->add_option("--kernels", c.kernels, "reduction kernels")
        ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}))
        ->capture_default_str();
    sub->add_option("--out", c.out, "output directory")->capture_default_str();
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
}

void add_family(CLI::App* sub, Config& c, bool with_triangle) {
    std::vector<std::string> names{"exponential", "gamma", "mix", "epsmix"};
    if (with_triangle) names.insert(names.begin(), "triangle");
    sub->add_option("--family", c.family, "initial condition")->check(CLI::IsMember(names));
    sub->add_option("--alpha", c.alpha, "rate parameter");
    sub->add_option("--beta", c.beta, "second rate (mix)");
    sub->add_option("--n", c.n, "gamma order");
    sub->add_option("--epsilon", c.epsilon, "mixing weight (epsmix)");
}

}  // namespace

int main(int argc, char** argv) {
    Config c;
    CLI::App app{"Continuous gas-like wealth exchange: operator iteration and agent simulation"};
    app.set_version_flag("--version", WEALTHOP_VERSION);
    app.require_subcommand(1);

    auto* iterate = app.add_subcommand("iterate", "apply T repeatedly to an initial density");
    add_common(iterate, c);
    add_family(iterate, c, true);
    iterate->add_option("--mean", c.mean, "triangle mean")->capture_default_str();
    iterate->add_option("--initial", c.initial, "initial density CSV (x,density)");
    iterate->add_option("--steps", c.steps, "number of applications")->capture_default_str();
    iterate->add_flag("--early-stop", c.early_stop, "stop once step_delta < 1e-9");

    auto* simulate = app.add_subcommand("simulate", "random pairwise money exchange");
    add_common(simulate, c);
    simulate->add_option("--agents", c.agents, "number of agents")->capture_default_str();
    simulate->add_option("--transactions", c.transactions, "number of transactions")->capture_default_str();
    simulate->add_option("--m0", c.m0, "initial money per agent")->capture_default_str();
    simulate->add_option("--initial", c.initial, "sample initial money from a density CSV");
    simulate->add_option("--bins", c.bins, "histogram bins")->capture_default_str();
    simulate->add_option("--m-max", c.m_max, "histogram range (0 = 20 x mean)")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the property suite");
    add_common(verify, c);
    verify->add_option("--samples", c.samples, "random inputs per property")->capture_default_str();

    auto* families = app.add_subcommand("families", "closed-form first iterates and contraction sweep");
    add_common(families, c);
    add_family(families, c, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c.kernels == "auto") {
            simd::select_best_kernels();
        } else {
            simd::select_kernels(simd::isa_from_string(c.kernels));
        }
        // Pin the resolved table so that the manifest command reproduces
        // this run bit for bit.
        c.kernels = simd::active_kernels().name;
        if (iterate->parsed()) {
            c.subcommand = "iterate";
            return cmd_iterate(c);
        }
        if (simulate->parsed()) {
            c.subcommand = "simulate";
            return cmd_simulate(c);
        }
        if (verify->parsed()) {
            c.subcommand = "verify";
            return cmd_verify(c);
        }
        c.subcommand = "families";
        for (const char* flag : {"--family", "--alpha", "--beta", "--n", "--epsilon"}) {
            if (families->count(flag) > 0) c.families_single = true;
        }
        return cmd_families(c);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
