// Command-line front end: pmf tables, convolution tables, moments, the
// overdispersion curve, Monte Carlo simulation, and the verification
// reports. All numerics live in the library; this file only parses
// arguments and formats output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracmix/compound.hpp"
#include "fracmix/subord.hpp"
#include "fracmix/verify.hpp"

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitNumerical = 3;

struct FamilyOpts {
    std::string family;  // pa | pig | nb | ztnb
    double p = 0.5;
    double beta = 1.0;
    double mu = 1.0;
    double alpha = 0.5;
    double r = 1.0;
    std::optional<double> lambda;
};

void add_family_flags(CLI::App* cmd, FamilyOpts& f) {
    cmd->add_option("--family", f.family, "pa | pig | nb | ztnb")->required();
    cmd->add_option("--p", f.p, "success parameter for pa / nb");
    cmd->add_option("--beta", f.beta, "pig shape parameter");
    cmd->add_option("--mu", f.mu, "pig mean parameter");
    cmd->add_option("--alpha", f.alpha, "raw ztnb alpha in (0,1)");
    cmd->add_option("--r", f.r, "raw ztnb order r > -1");
    cmd->add_option("--lambda", f.lambda, "Poisson intensity (pa and ztnb)");
}

fracmix::jumplaws::LawWithRate resolve_family(const FamilyOpts& f) {
    using namespace fracmix::jumplaws;
    if (f.family == "pa") return make_pa(f.p, f.lambda.value_or(1.0));
    if (f.family == "pig") {
        if (f.lambda) throw CLI::ValidationError("--lambda", "fixed by --beta/--mu for pig");
        return make_pig(f.beta, f.mu);
    }
    if (f.family == "nb") {
        if (f.lambda) throw CLI::ValidationError("--lambda", "fixed at -log(p) for nb");
        return make_nb(f.p);
    }
    if (f.family == "ztnb") {
        if (!f.lambda) throw CLI::ValidationError("--lambda", "required for ztnb");
        return {make_jump_law(f.alpha, f.r), *f.lambda};
    }
    throw CLI::ValidationError("--family", "must be pa, pig, nb or ztnb");
}

struct OutputOpts {
    std::string format = "csv";
    std::string path;  // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputOpts& o) {
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.path, "output file (default stdout)");
}

void emit(const OutputOpts& o, const std::string& text) {
    if (o.path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(o.path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + o.path);
    out << text;
}

std::string fmt9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

// "start:stop:step" inclusive of stop up to half a step.
std::vector<double> parse_grid(const std::string& s) {
    double a, b, step;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0)) {
        throw CLI::ValidationError("--nu-grid", "expected start:stop:step with step > 0");
    }
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = a + i * step;
        if (v > b + step / 2.0) break;
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("--nu-grid", "empty grid");
    return out;
}

std::string table_csv(const std::string& header, const std::vector<std::pair<double, double>>& rows) {
    std::string out = header + "\n";
    for (const auto& [a, b] : rows) out += fmt9(a) + "," + fmt9(b) + "\n";
    return out;
}

std::string table_json(const char* akey, const char* bkey,
                       const std::vector<std::pair<double, double>>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [a, b] : rows) arr.push_back({{akey, a}, {bkey, b}});
    return arr.dump(2) + "\n";
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FRACMIX_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional compound / mixed Poisson process toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags override");

    using namespace fracmix;

    // pmf
    auto* pmf_cmd = app.add_subcommand("pmf", "count pmf table at a fixed time");
    FamilyOpts pmf_fam;
    OutputOpts pmf_out;
    double pmf_nu = 0.5, pmf_t = 1.0;
    int pmf_kmax = 10;
    add_family_flags(pmf_cmd, pmf_fam);
    add_output_flags(pmf_cmd, pmf_out);
    pmf_cmd->add_option("--nu", pmf_nu, "fractional order, in (0,1) or (1,inf)")->required();
    pmf_cmd->add_option("--t", pmf_t, "time")->required();
    pmf_cmd->add_option("--k-max", pmf_kmax, "largest k");

    // conv
    auto* conv_cmd = app.add_subcommand("conv", "n-fold jump convolution table");
    FamilyOpts conv_fam;
    OutputOpts conv_out;
    int conv_n = 1, conv_kmax = 10;
    add_family_flags(conv_cmd, conv_fam);
    add_output_flags(conv_cmd, conv_out);
    conv_cmd->add_option("--n", conv_n, "convolution order")->required();
    conv_cmd->add_option("--k-max", conv_kmax, "largest k");

    // moments
    auto* mom_cmd = app.add_subcommand("moments", "mean / variance / overdispersion gap");
    FamilyOpts mom_fam;
    OutputOpts mom_out;
    double mom_nu = 0.5, mom_t = 1.0;
    add_family_flags(mom_cmd, mom_fam);
    add_output_flags(mom_cmd, mom_out);
    mom_cmd->add_option("--nu", mom_nu, "fractional order in (0,1]")->required();
    mom_cmd->add_option("--t", mom_t, "time")->required();

    // zcurve
    auto* z_cmd = app.add_subcommand("zcurve", "overdispersion factor Z over a nu grid");
    OutputOpts z_out;
    std::string z_grid = "0.01:1.0:0.01";
    add_output_flags(z_cmd, z_out);
    z_cmd->add_option("--nu-grid", z_grid, "start:stop:step, values in (0,1]");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo count draws");
    FamilyOpts sim_fam;
    OutputOpts sim_out;
    double sim_nu = 0.5, sim_t = 1.0, sim_eta = 1.0;
    int sim_n = 1000;
    std::uint64_t sim_seed = default_seed();
    add_family_flags(sim_cmd, sim_fam);
    add_output_flags(sim_cmd, sim_out);
    sim_cmd->add_option("--nu", sim_nu, "fractional order")->required();
    sim_cmd->add_option("--eta", sim_eta, "inner order in (0,1]");
    sim_cmd->add_option("--t", sim_t, "time")->required();
    sim_cmd->add_option("--n", sim_n, "number of draws");
    sim_cmd->add_option("--seed", sim_seed, "rng seed (default env FRACMIX_SEED or 0)");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "residual report for a governing system");
    FamilyOpts ver_fam;
    OutputOpts ver_out;
    ver_out.format = "json";
    std::string ver_system = "first-order";
    double ver_nu = 0.5, ver_eta = 1.0;
    int ver_kmax = 5;
    std::vector<double> ver_t{0.5, 1.0};
    verify::OperatorParams ver_params;
    add_family_flags(ver_cmd, ver_fam);
    add_output_flags(ver_cmd, ver_out);
    ver_cmd->add_option("--system", ver_system,
                        "first-order | pa-recursion | pa-two-param | pig-second-order | "
                        "space-op | space-alt")
        ->check(CLI::IsMember({"first-order", "pa-recursion", "pa-two-param",
                               "pig-second-order", "space-op", "space-alt"}));
    ver_cmd->add_option("--nu", ver_nu, "fractional order")->required();
    ver_cmd->add_option("--eta", ver_eta, "inner order in (0,1]");
    ver_cmd->add_option("--k-max", ver_kmax, "largest k");
    ver_cmd->add_option("--t", ver_t, "evaluation times (multiples of --step)");
    ver_cmd->add_option("--step", ver_params.h, "Caputo grid step");
    ver_cmd->add_option("--quad-tol", ver_params.quad_tol, "quadrature budget");
    ver_cmd->add_option("--fd-step", ver_params.fd_step, "finite-difference step");
    ver_cmd->add_option("--inner-refine", ver_params.inner_refine, "nested grid factor");
    ver_cmd->add_option("--mc-seed", ver_params.mc_seed, "seed for the eta < 1 path");
    ver_cmd->add_option("--mc-samples", ver_params.mc_samples, "draws for the eta < 1 path");

    // transform-check
    auto* tr_cmd = app.add_subcommand("transform-check", "Monte Carlo transform identities");
    OutputOpts tr_out;
    tr_out.format = "json";
    std::uint64_t tr_seed = default_seed();
    int tr_n = 100000;
    add_output_flags(tr_cmd, tr_out);
    tr_cmd->add_option("--seed", tr_seed, "rng seed (default env FRACMIX_SEED or 0)");
    tr_cmd->add_option("--n", tr_n, "samples per check point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadArgs;
    }

    try {
        if (pmf_cmd->parsed()) {
            auto spec = compound::make_spec(resolve_family(pmf_fam), pmf_nu);
            jumplaws::ConvolutionTable conv(spec.law);
            std::vector<std::pair<double, double>> rows;
            for (int k = 0; k <= pmf_kmax; ++k) {
                rows.emplace_back(k, compound_pmf(spec, conv, pmf_t, k));
            }
            emit(pmf_out, pmf_out.format == "csv" ? table_csv("k,prob", rows)
                                                  : table_json("k", "prob", rows));
        } else if (conv_cmd->parsed()) {
            auto law = resolve_family(conv_fam).law;
            jumplaws::ConvolutionTable conv(law);
            std::vector<std::pair<double, double>> rows;
            for (int k = 0; k <= conv_kmax; ++k) rows.emplace_back(k, conv.conv(conv_n, k));
            emit(conv_out, conv_out.format == "csv" ? table_csv("k,prob", rows)
                                                    : table_json("k", "prob", rows));
        } else if (mom_cmd->parsed()) {
            auto spec = compound::make_spec(resolve_family(mom_fam),
                                            mom_nu == 1.0 ? 0.5 : mom_nu);
            // nu = 1 is the classical reference; the moment formulas accept it
            // even though the process type does not represent it.
            const auto m = mom_nu == 1.0
                               ? compound::compound_moments_from_jumps(
                                     spec.lambda, 1.0, mom_t, jumplaws::jump_mean(spec.law),
                                     jumplaws::jump_second_moment(spec.law))
                               : compound::compound_moments(spec, mom_t);
            if (mom_out.format == "csv") {
                emit(mom_out, "mean,variance,gap\n" + fmt9(m.mean) + "," + fmt9(m.variance) +
                                  "," + fmt9(m.gap) + "\n");
            } else {
                nlohmann::json j{{"mean", m.mean}, {"variance", m.variance}, {"gap", m.gap}};
                emit(mom_out, j.dump(2) + "\n");
            }
        } else if (z_cmd->parsed()) {
            std::vector<std::pair<double, double>> rows;
            for (double nu : parse_grid(z_grid)) {
                rows.emplace_back(nu, fracpoisson::z_factor(nu));
            }
            emit(z_out, z_out.format == "csv" ? table_csv("nu,Z", rows)
                                              : table_json("nu", "Z", rows));
        } else if (sim_cmd->parsed()) {
            auto spec = compound::make_spec(resolve_family(sim_fam), sim_nu, sim_eta);
            subord::RandomStream rng(sim_seed);
            std::string out = sim_out.format == "csv" ? "count\n" : "";
            nlohmann::json arr = nlohmann::json::array();
            for (int i = 0; i < sim_n; ++i) {
                const auto c = subord::simulate_count(spec, sim_t, rng);
                if (sim_out.format == "csv") {
                    out += std::to_string(c) + "\n";
                } else {
                    arr.push_back(c);
                }
            }
            emit(sim_out, sim_out.format == "csv" ? out : arr.dump() + "\n");
        } else if (ver_cmd->parsed()) {
            verify::ResidualReport report;
            if (ver_system == "space-op") {
                const double lambda = ver_fam.lambda.value_or(resolve_family(ver_fam).lambda);
                report = verify::spacefrac_op_residuals(lambda, ver_nu, ver_kmax, ver_t,
                                                        ver_params);
            } else {
                auto spec = compound::make_spec(resolve_family(ver_fam), ver_nu, ver_eta);
                if (ver_system == "first-order") {
                    report = verify::kolmogorov_residuals(spec, ver_kmax, ver_t, ver_params);
                } else if (ver_system == "pa-recursion") {
                    report = verify::pa_recursion_residuals(spec, ver_kmax, ver_t, ver_params);
                } else if (ver_system == "pa-two-param") {
                    report = verify::two_param_residuals(spec, verify::TwoParamFamily::PA,
                                                         ver_kmax, ver_t, ver_params);
                } else if (ver_system == "pig-second-order") {
                    report = verify::two_param_residuals(spec, verify::TwoParamFamily::PIG,
                                                         ver_kmax, ver_t, ver_params);
                } else {
                    report = verify::space_alt_form_residuals(spec, ver_kmax, ver_t,
                                                                  ver_params);
                }
            }
            emit(ver_out, report.to_json().dump(2) + "\n");
            return report.pass || report.exploratory ? 0 : kExitNumerical;
        } else if (tr_cmd->parsed()) {
            const auto report = verify::transform_checks(tr_seed, tr_n);
            emit(tr_out, report.to_json().dump(2) + "\n");
            return report.pass ? 0 : kExitNumerical;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const fracmix::series_error& e) {
        std::cerr << "numerical failure: " << e.what() << " (partial sum " << e.partial_sum()
                  << " after " << e.terms_used() << " terms)\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
