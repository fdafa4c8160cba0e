// nhlab: verification suites for the exactly solvable non-Hermitian models

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "nhlab/coalescence.hpp"
#include "nhlab/identity_resolution.hpp"
#include "nhlab/observables.hpp"
#include "nhlab/scattering.hpp"
#include "nhlab/suites.hpp"

using namespace nhlab;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string model = "jordan-bound";
    double alpha = 1.0, beta = 0.3, z_re = 0.0, z_im = 1.0;
    int n = 1;
    double tol = 1e-9;
    std::string out, format, config;
    std::uint64_t seed = 20240601;
    bool all = false;

    // subcommand specific
    std::string variant = "full", test = "gaussian", kind;
    double epsilon = 1e-3, sigma = 1.0, center = 0.0;
    std::vector<double> xs, values;
    int count = 100;
    bool study = false;
    bool values_given = false; // an explicit, possibly empty, grid
};

ModelParams params_of(const Options& o) {
    ModelParams p;
    p.model = model_from_string(o.model);
    p.alpha = o.alpha;
    p.beta = p.model == ModelId::TwoLevel ? o.beta : 0.0;
    p.z = cplx(o.z_re, o.z_im);
    p.n = o.n;
    validate(p);
    return p;
}

json options_json(const Options& o, const std::string& cmd) {
    json j{{"model", o.model}, {"alpha", o.alpha}, {"z", to_json(cplx(o.z_re, o.z_im))}, {"n", o.n}, {"tol", o.tol},
           {"seed", o.seed}};
    if (o.model == "two-level") j["beta"] = o.beta;
    if (cmd == "identity") {
        j["variant"] = o.variant;
        j["epsilon"] = o.epsilon;
        j["test"] = o.test;
        if (o.test == "gaussian") j["sigma"] = o.sigma, j["center"] = o.center;
    }
    if (cmd == "sweep") j["kind"] = o.kind;
    if (!o.values.empty()) j["values"] = o.values;
    if (cmd == "finite") j["count"] = o.count;
    return j;
}

// common flags on every subcommand
void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--model", o.model, "jordan-bound | two-level | threshold | continuum-bs");
    sub->add_option("--alpha", o.alpha, "real momentum scale");
    sub->add_option("--beta", o.beta, "level splitting (two-level)");
    sub->add_option("--z-re", o.z_re, "Re z");
    sub->add_option("--z-im", o.z_im, "Im z, nonzero");
    sub->add_option("--n", o.n, "threshold family order");
    sub->add_option("--tol", o.tol, "quadrature tolerance of kernel transforms (identity)");
    sub->add_option("--out", o.out, "report path (temp file + rename)");
    sub->add_option("--format", o.format, "json | csv (default from the --out extension)")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "seed for randomized suites");
    sub->add_option("--config", o.config, "JSON file with the same keys as the flags");
}

// fills options that were not given on the command line; unknown keys are errors
void apply_config(CLI::App* sub, Options& o) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot read config file " + o.config);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    std::map<std::string, std::function<void(const json&)>> setters{
        {"model", [&](const json& v) { o.model = v.get<std::string>(); }},
        {"alpha", [&](const json& v) { o.alpha = v.get<double>(); }},
        {"beta", [&](const json& v) { o.beta = v.get<double>(); }},
        {"z-re", [&](const json& v) { o.z_re = v.get<double>(); }},
        {"z-im", [&](const json& v) { o.z_im = v.get<double>(); }},
        {"n", [&](const json& v) { o.n = v.get<int>(); }},
        {"tol", [&](const json& v) { o.tol = v.get<double>(); }},
        {"out", [&](const json& v) { o.out = v.get<std::string>(); }},
        {"format", [&](const json& v) { o.format = v.get<std::string>(); }},
        {"seed", [&](const json& v) { o.seed = v.get<std::uint64_t>(); }},
        {"variant", [&](const json& v) { o.variant = v.get<std::string>(); }},
        {"test", [&](const json& v) { o.test = v.get<std::string>(); }},
        {"epsilon", [&](const json& v) { o.epsilon = v.get<double>(); }},
        {"sigma", [&](const json& v) { o.sigma = v.get<double>(); }},
        {"center", [&](const json& v) { o.center = v.get<double>(); }},
        {"x", [&](const json& v) { o.xs = v.get<std::vector<double>>(); }},
        {"kind", [&](const json& v) { o.kind = v.get<std::string>(); }},
        {"values", [&](const json& v) { o.values = v.get<std::vector<double>>(), o.values_given = true; }},
        {"count", [&](const json& v) { o.count = v.get<int>(); }},
        {"all", [&](const json& v) { o.all = v.get<bool>(); }},
        {"study", [&](const json& v) { o.study = v.get<bool>(); }},
    };
    for (auto& [key, value] : j.items()) {
        auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
        CLI::Option* flag = nullptr;
        try {
            flag = sub->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw ConfigError("config key '" + key + "' does not apply to " + sub->get_name());
        }
        if (flag->count() > 0) continue; // the command line wins
        try {
            it->second(value);
        } catch (const json::exception& e) {
            throw ConfigError("config key '" + key + "' has the wrong type");
        }
    }
}

Suite identity_command(const Options& o) {
    const ModelParams p = params_of(o);
    KernelFamily fam{p, variant_from_string(o.variant), o.epsilon};
    validate(fam);
    TestFunction phi = o.test == "psi0"       ? TestFunction::bound_state(Model(p))
                       : o.test == "gaussian" ? TestFunction::gaussian(o.sigma, o.center)
                                              : throw ParameterError("--test must be gaussian or psi0");
    if (!(o.sigma > 0.0)) throw ParameterError("--sigma must be positive");
    std::vector<double> xs = o.xs.empty() ? default_probe_points() : o.xs;
    Suite s;
    s.name = "identity/" + o.model + "/" + o.variant;
    const std::string anchor = o.model + "/resolution-" + o.variant;
    KernelEvaluator ev(p, phi, o.tol);
    const bool annihilate = fam.variant == KernelVariant::Reduced && o.test == "psi0";
    const double tol = fam.variant == KernelVariant::Full ? 1e-4 : 1e-3;
    Table tab;
    tab.columns = {"x", "value_re", "value_im", "target_re", "target_im", "error"};
    for (double xp : xs) {
        const std::string id = "x'=" + format_number(xp);
        try {
            KernelValue v = ev.apply(fam, xp);
            const cplx target = annihilate ? cplx(0.0) : phi(xp);
            s.add(check_close(id, anchor, v.value, target, tol,
                              annihilate ? "reduced kernel annihilates psi0" : "reproduces the test function"));
            tab.rows.push_back({xp, v.value.real(), v.value.imag(), target.real(), target.imag(),
                                std::abs(v.value - target)});
        } catch (const ParameterError&) {
            throw;
        } catch (const std::exception& e) {
            s.add(failure(id, anchor, e));
        }
    }
    s.tables.push_back(tab);
    if (o.study) {
        ConvergenceStudy c = convergence_study(fam, default_epsilons(), phi, xs.front(), o.tol);
        Table st;
        st.columns = {"epsilon", "value_re", "value_im", "error"};
        for (size_t i = 0; i < c.epsilon.size(); ++i)
            st.rows.push_back({c.epsilon[i], c.value[i].real(), c.value[i].imag(), c.error[i]});
        s.tables.push_back(st);
        s.add(info("convergence rate", anchor, c.rate, "slope of log error against log epsilon"));
    }
    return s;
}

Suite sweep_command(Options o) {
    if (o.values_given && o.values.empty()) throw ParameterError("empty sweep grid");
    if (o.kind != "beta" && o.kind != "epsilon" && o.kind != "k") throw ParameterError("--kind must be beta, epsilon or k");
    if (!o.values_given)
        o.values = o.kind == "beta" ? default_betas() : o.kind == "epsilon" ? default_packet_epsilons()
                                                                             : std::vector<double>{0.5, 1.0, 2.0};
    const cplx z(o.z_re, o.z_im);
    if (z.imag() == 0.0) throw ParameterError("Im z must be nonzero");
    if (o.kind == "beta") {
        if (!(o.alpha > 0.0)) throw ParameterError("--alpha must be positive");
        for (double b : o.values)
            if (!(b > 0.0)) throw ParameterError("beta values must be positive");
        return coalescence_suite(o.alpha, z, o.values);
    }
    if (o.kind == "epsilon") {
        for (double e : o.values)
            if (!(e > 0.0 && e <= 1.0)) throw ParameterError("epsilon values must lie in (0, 1]");
        if (o.values.size() < 2) throw ParameterError("epsilon sweep needs two or more values");
        return packet_suite(z, o.values);
    }
    if (o.kind == "k") return scattering_suite(params_of(o), o.values);
    throw ParameterError("--kind must be beta, epsilon or k");
}

void emit(const Report& r, const Options& o, const std::string& cmd) {
    std::string path = o.out.empty() ? cmd + "_report.json" : o.out;
    std::string fmt = o.format;
    if (fmt.empty()) fmt = std::filesystem::path(path).extension() == ".csv" ? "csv" : "json";
    std::string body;
    if (fmt == "json") {
        body = r.to_json().dump(2) + "\n";
    } else {
        // plot data when the command produced a table, else one line per record
        const Table* t = nullptr;
        for (auto& s : r.suites)
            if (!s.tables.empty() && !t) t = &s.tables.front();
        body = t ? t->csv() : r.csv();
    }
    write_atomic(path, body);
    std::cout << r.summary() << " -> " << path << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nhlab: numerical checks for non-Hermitian Hamiltonians with Jordan cells"};
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify", "chain, binorm, limit and scattering checks (--all: every suite)");
    add_common(verify, o);
    verify->add_flag("--all", o.all, "run every suite on the default parameter sets");

    auto* identity = app.add_subcommand("identity", "apply a resolution-of-identity kernel to a test function");
    add_common(identity, o);
    identity->add_option("--variant", o.variant, "full | reduced | extended");
    identity->add_option("--epsilon", o.epsilon, "regularization parameter");
    identity->add_option("--test", o.test, "gaussian | psi0");
    identity->add_option("--sigma", o.sigma, "Gaussian width");
    identity->add_option("--center", o.center, "Gaussian center");
    identity->add_option("--x", o.xs, "probe points x'");
    identity->add_flag("--study", o.study, "also run the epsilon convergence study at the first probe point");

    auto* coalesce = app.add_subcommand("coalesce", "beta -> 0 coalescence of two-level into jordan-bound");
    add_common(coalesce, o);
    coalesce->add_option("--values", o.values, "beta sequence (default 0.1 ... 0.00625)");

    auto* packet = app.add_subcommand("packet", "wave-packet expectation values of the threshold state");
    add_common(packet, o);
    packet->add_option("--values", o.values, "epsilon values (default 1e-3 ... 1e-1)");

    auto* scatter = app.add_subcommand("scatter", "Green function poles, transmission and reflection");
    add_common(scatter, o);
    scatter->add_option("--values", o.values, "momenta k");

    auto* finite = app.add_subcommand("finite", "finite-dimensional Jordan algebra on seeded random specs");
    add_common(finite, o);
    finite->add_option("--count", o.count, "number of random specs");

    auto* sweep = app.add_subcommand("sweep", "grid of runs, one row per point");
    add_common(sweep, o);
    sweep->add_option("--kind", o.kind, "beta | epsilon | k")->required();
    sweep->add_option("--values", o.values, "grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    try {
        apply_config(sub, o);
        if (auto* v = sub->get_option_no_throw("--values"); v && v->count() > 0) o.values_given = true;
        if (o.format.size() && o.format != "json" && o.format != "csv") throw ConfigError("--format must be json or csv");
        r.command = cmd;
        r.config = options_json(o, cmd);
        if (cmd == "verify") {
            if (o.all) {
                r = verify_all(o.seed);
            } else {
                r = verify_model(params_of(o));
            }
            r.config = options_json(o, cmd);
            r.config["all"] = o.all;
        } else if (cmd == "identity") {
            r.suites.push_back(identity_command(o));
        } else if (cmd == "coalesce") {
            if (!(o.alpha > 0.0)) throw ParameterError("--alpha must be positive");
            if (o.z_im == 0.0) throw ParameterError("Im z must be nonzero");
            r.suites.push_back(coalescence_suite(o.alpha, cplx(o.z_re, o.z_im), o.values.empty() ? default_betas() : o.values));
        } else if (cmd == "packet") {
            if (o.z_im == 0.0) throw ParameterError("Im z must be nonzero");
            r.suites.push_back(packet_suite(cplx(o.z_re, o.z_im), o.values.empty() ? default_packet_epsilons() : o.values));
        } else if (cmd == "scatter") {
            r.suites.push_back(scattering_suite(params_of(o), o.values));
        } else if (cmd == "finite") {
            if (o.count < 1) throw ParameterError("--count must be positive");
            r.suites.push_back(finite_suite(o.seed, o.count));
        } else if (cmd == "sweep") {
            r.suites.push_back(sweep_command(o));
        }
    } catch (const ConfigError& e) {
        std::cerr << "nhlab: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "nhlab: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "nhlab: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "nhlab: " << e.what() << "\n";
        return 1;
    }
    r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        emit(r, o, cmd);
    } catch (const std::exception& e) {
        std::cerr << "nhlab: " << e.what() << "\n";
        return 1;
    }
    return r.pass() ? 0 : 1;
}
