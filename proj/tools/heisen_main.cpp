// Command-line interface: verification suites, a factorization demo, the
// convergence export, and generator-family archives.
//
// Exit codes: 0 on success, 1 when a verification or relation gate fails
// (reports are still written), 2 on usage errors (bad flags, bad
// configuration values, unreadable inputs).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "heisen/factorizer.hpp"
#include "heisen/report.hpp"

namespace fs = std::filesystem;

namespace {

enum class Action { None, Verify, DemoFactorize, ExportConvergence, SpecDump, SpecLoad };

struct CliOptions {
    heis::RunConfig cfg;
    std::string out;
    std::string format = "json";
    std::string configPath;
    int blocks = 2;
    int dimResidual = 0;
    std::vector<int> degrees = {2, 4, 6, 10};
    std::string specFile;
};

void add_common_options(CLI::App* sub, CliOptions& o) {
    sub->add_option("--n", o.cfg.n, "complex dimension of the underlying phase space");
    sub->add_option("--lambda", o.cfg.lambdas,
                    "representation parameters (repeatable; nonzero)");
    sub->add_option("--max-degree", o.cfg.maxDegree, "basis truncation degree");
    sub->add_option("--quad-points", o.cfg.quadPointsPerAxis,
                    "phase-space quadrature points per axis");
    sub->add_option("--box", o.cfg.boxHalfWidth, "phase-space box half-width");
    sub->add_option("--seed", o.cfg.seed, "seed for every randomized probe");
    sub->add_option("--tol-basis", o.cfg.tolBasis, "tolerance override for the basis suite");
    sub->add_option("--tol-representation", o.cfg.tolRepresentation,
                    "tolerance override for the representation suite");
    sub->add_option("--tol-twisted", o.cfg.tolTwisted,
                    "tolerance override for the twisted suite");
    sub->add_option("--tol-weyl", o.cfg.tolWeyl, "tolerance override for the weyl suite");
    sub->add_option("--tol-fourier", o.cfg.tolFourier,
                    "tolerance override for the fourier suite");
    sub->add_option("--tol-factorizer", o.cfg.tolFactorizer,
                    "tolerance override for the factorizer suite");
    sub->add_option("--out", o.out,
                    "output path (defaults into $HEISEN_OUT_DIR when that is set)");
    sub->add_option("--format", o.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--config", o.configPath,
                    "JSON configuration file; explicit flags take precedence");
}

/// Fills options the user did not pass explicitly from the JSON config file.
/// Precedence: explicit flag > config file > built-in default.
void apply_config_file(CLI::App* sub, CliOptions& o) {
    if (o.configPath.empty()) return;
    std::ifstream in(o.configPath);
    if (!in) throw std::invalid_argument("cannot open config file '" + o.configPath + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config file '" + o.configPath + "' is not valid JSON: " +
                                    e.what());
    }
    auto unset = [&](const std::string& flag) {
        const CLI::Option* opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() == 0;
    };
    try {
        if (j.contains("n") && unset("--n")) o.cfg.n = j.at("n").get<int>();
        if (j.contains("lambdas") && unset("--lambda"))
            o.cfg.lambdas = j.at("lambdas").get<std::vector<double>>();
        if (j.contains("max_degree") && unset("--max-degree"))
            o.cfg.maxDegree = j.at("max_degree").get<int>();
        if (j.contains("quad_points_per_axis") && unset("--quad-points"))
            o.cfg.quadPointsPerAxis = j.at("quad_points_per_axis").get<int>();
        if (j.contains("box_half_width") && unset("--box"))
            o.cfg.boxHalfWidth = j.at("box_half_width").get<double>();
        if (j.contains("seed") && unset("--seed")) o.cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("out") && unset("--out")) o.out = j.at("out").get<std::string>();
        if (j.contains("format") && unset("--format"))
            o.format = j.at("format").get<std::string>();
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            auto tol = [&](const char* key, const std::string& flag,
                           std::optional<double>& slot) {
                if (t.contains(key) && unset(flag)) slot = t.at(key).get<double>();
            };
            tol("basis", "--tol-basis", o.cfg.tolBasis);
            tol("representation", "--tol-representation", o.cfg.tolRepresentation);
            tol("twisted", "--tol-twisted", o.cfg.tolTwisted);
            tol("weyl", "--tol-weyl", o.cfg.tolWeyl);
            tol("fourier", "--tol-fourier", o.cfg.tolFourier);
            tol("factorizer", "--tol-factorizer", o.cfg.tolFactorizer);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config file '" + o.configPath +
                                    "' has a field of the wrong type: " + e.what());
    }
}

std::string resolve_out(const std::string& given, const std::string& defaultName) {
    if (!given.empty()) return given;
    const char* dir = std::getenv("HEISEN_OUT_DIR");
    if (dir && *dir) return (fs::path(dir) / defaultName).string();
    return {};
}

void ensure_parent_directory(const std::string& path) {
    fs::path parent = fs::path(path).parent_path();
    if (parent.empty()) return;
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec)
        throw std::invalid_argument("cannot create output directory '" + parent.string() +
                                    "': " + ec.message());
}

void write_file(const std::string& path, const std::string& content) {
    ensure_parent_directory(path);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot write to '" + path + "'");
    os << content;
    if (!os) throw std::invalid_argument("write to '" + path + "' failed");
}

Eigen::MatrixXcd seeded_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd G(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) G(r, c) = heis::Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        heis::Complex r = R(k, k);
        if (std::abs(r) > 0) Q.col(k) *= r / std::abs(r);
    }
    return Q;
}

int run_verify(const CliOptions& o) {
    auto records = heis::run_suite(o.cfg);
    std::cout << "suite '" << o.cfg.suite << "': n=" << o.cfg.n
              << " max-degree=" << o.cfg.maxDegree << " seed=" << o.cfg.seed << "\n";
    std::cout << heis::report_text(records);
    std::string path = resolve_out(
        o.out, "heisen_report." + std::string(o.format == "csv" ? "csv" : "json"));
    if (!path.empty()) {
        write_file(path, o.format == "csv" ? heis::report_csv(records)
                                           : heis::report_json_with_timing(o.cfg, records));
        std::cout << "report written to " << path << "\n";
    }
    return heis::all_passed(records) ? 0 : 1;
}

int run_demo(const CliOptions& o) {
    heis::validate_config(o.cfg);
    const double lambda = o.cfg.lambdas.front();
    heis::TruncationScheme scheme(o.cfg.n, o.cfg.maxDegree);
    const int D = scheme.dimension();
    std::mt19937_64 rng(o.cfg.seed);
    std::vector<Eigen::MatrixXcd> unitaries;
    for (int j = 0; j < o.blocks; ++j) unitaries.push_back(seeded_unitary(D, rng));
    auto spec = heis::synthesize_homomorphism(lambda, scheme, unitaries, o.dimResidual,
                                              o.cfg.seed + 1);
    heis::Decomposition dec = heis::factorize(spec);
    const bool structureOk =
        dec.blockCount() == o.blocks && dec.residualDim() == o.dimResidual;

    std::cout << "synthesized: blocks=" << o.blocks << " residual-dim=" << o.dimResidual
              << " generator-dim=" << D << " target-dim=" << spec.targetDim() << "\n";
    std::cout << "recovered:   blocks=" << dec.blockCount()
              << " residual-dim=" << dec.residualDim() << "\n";
    char line[160];
    std::snprintf(line, sizeof(line),
                  "defects: orthonormality=%.3e intertwining=%.3e residual-activation=%.3e\n",
                  dec.orthonormalityDefect, dec.intertwiningResidual, dec.residualActivation);
    std::cout << line;
    std::cout << (structureOk ? "structure recovered" : "STRUCTURE MISMATCH") << "\n";

    std::string path = resolve_out(o.out, "demo_factorize.json");
    if (!path.empty()) {
        nlohmann::ordered_json j;
        j["demo"] = "factorize";
        j["config"] = {{"n", o.cfg.n},
                       {"lambda", lambda},
                       {"max_degree", o.cfg.maxDegree},
                       {"generator_dim", D},
                       {"target_dim", spec.targetDim()},
                       {"seed", o.cfg.seed}};
        j["synthesized"] = {{"blocks", o.blocks}, {"residual_dim", o.dimResidual}};
        j["recovered"] = {{"blocks", dec.blockCount()},
                          {"residual_dim", dec.residualDim()},
                          {"orthonormality_defect", dec.orthonormalityDefect},
                          {"intertwining_residual", dec.intertwiningResidual},
                          {"residual_activation", dec.residualActivation},
                          {"relation_product_residual", dec.relations.productResidual},
                          {"relation_adjoint_residual", dec.relations.adjointResidual}};
        j["structure_recovered"] = structureOk;
        write_file(path, j.dump(2) + "\n");
        std::cout << "report written to " << path << "\n";
    }
    return structureOk ? 0 : 1;
}

int run_export(const CliOptions& o) {
    std::string csv = heis::convergence_csv(o.cfg, o.degrees);
    std::string path = resolve_out(o.out, "convergence.csv");
    if (path.empty()) {
        std::cout << csv;
    } else {
        write_file(path, csv);
        std::cout << "convergence table written to " << path << "\n";
    }
    return 0;
}

int run_spec_dump(const CliOptions& o) {
    heis::validate_config(o.cfg);
    const double lambda = o.cfg.lambdas.front();
    heis::TruncationScheme scheme(o.cfg.n, o.cfg.maxDegree);
    std::mt19937_64 rng(o.cfg.seed);
    std::vector<Eigen::MatrixXcd> unitaries;
    for (int j = 0; j < o.blocks; ++j)
        unitaries.push_back(seeded_unitary(scheme.dimension(), rng));
    auto spec = heis::synthesize_homomorphism(lambda, scheme, unitaries, o.dimResidual,
                                              o.cfg.seed + 1);
    std::string path = resolve_out(o.out, "family.hspec");
    if (path.empty())
        throw std::invalid_argument(
            "spec dump needs --out or the HEISEN_OUT_DIR environment variable");
    ensure_parent_directory(path);
    heis::save_spec(spec, path);
    std::cout << "archived generator family: n=" << o.cfg.n << " lambda=" << lambda
              << " max-degree=" << o.cfg.maxDegree << " generator-dim=" << scheme.dimension()
              << " target-dim=" << spec.targetDim() << "\n";
    std::cout << "archive written to " << path << "\n";
    return 0;
}

int run_spec_load(const CliOptions& o) {
    heis::HomomorphismSpec spec = [&] {
        try {
            return heis::load_spec(o.specFile);
        } catch (const std::exception& e) {
            throw std::invalid_argument("cannot load '" + o.specFile + "': " + e.what());
        }
    }();
    const double tol = o.cfg.tolFactorizer.value_or(1e-8);
    heis::RelationReport rep = heis::check_relations(spec, tol * spec.generatorScale());
    std::cout << "loaded generator family: n=" << spec.n() << " lambda=" << spec.lambda()
              << " max-degree=" << spec.scheme().maxDegree()
              << " generator-dim=" << spec.generatorDim()
              << " target-dim=" << spec.targetDim() << "\n";
    char line[160];
    std::snprintf(line, sizeof(line),
                  "relation residuals: product=%.3e adjoint=%.3e (gate %.1e * scale)\n",
                  rep.productResidual, rep.adjointResidual, tol);
    std::cout << line;
    std::cout << (rep.pass() ? "relations hold" : "RELATIONS FAIL") << "\n";
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical harmonic analysis on the Heisenberg group: verification "
                 "suites, factorization demos, and generator-family archives"};
    app.require_subcommand(1);

    CliOptions o;
    Action action = Action::None;
    CLI::App* merged = nullptr;

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suiteArg;
    verify
        ->add_option("suite", suiteArg,
                     "one of: basis, representation, twisted, weyl, fourier, factorizer, all")
        ->required();
    add_common_options(verify, o);
    verify->callback([&] {
        action = Action::Verify;
        merged = verify;
        o.cfg.suite = suiteArg;
    });

    CLI::App* demo = app.add_subcommand("demo", "run a demonstration");
    CLI::App* demoFac = demo->add_subcommand(
        "factorize", "synthesize a concealed block family and factorize it");
    demoFac->add_option("--blocks", o.blocks, "number of conjugated blocks")
        ->check(CLI::Range(1, 12));
    demoFac->add_option("--dim-residual", o.dimResidual, "annihilated dimensions appended")
        ->check(CLI::Range(0, 64));
    add_common_options(demoFac, o);
    demoFac->callback([&] {
        action = Action::DemoFactorize;
        merged = demoFac;
    });
    demo->require_subcommand(1);

    CLI::App* exp = app.add_subcommand("export", "export data tables");
    CLI::App* expConv = exp->add_subcommand(
        "convergence", "CSV of window defects against the truncation degree");
    expConv->add_option("--degrees", o.degrees, "truncation degrees to sweep (repeatable)");
    add_common_options(expConv, o);
    expConv->callback([&] {
        action = Action::ExportConvergence;
        merged = expConv;
    });
    exp->require_subcommand(1);

    CLI::App* spec = app.add_subcommand("spec", "generator-family archives");
    CLI::App* specDump =
        spec->add_subcommand("dump", "synthesize a family and write its archive");
    specDump->add_option("--blocks", o.blocks, "number of conjugated blocks")
        ->check(CLI::Range(1, 12));
    specDump->add_option("--dim-residual", o.dimResidual, "annihilated dimensions appended")
        ->check(CLI::Range(0, 64));
    add_common_options(specDump, o);
    specDump->callback([&] {
        action = Action::SpecDump;
        merged = specDump;
    });
    CLI::App* specLoad =
        spec->add_subcommand("load", "load an archive and check its relations");
    specLoad->add_option("file", o.specFile, "archive path")->required();
    add_common_options(specLoad, o);
    specLoad->callback([&] {
        action = Action::SpecLoad;
        merged = specLoad;
    });
    spec->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help / --version
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        apply_config_file(merged, o);
        switch (action) {
            case Action::Verify: return run_verify(o);
            case Action::DemoFactorize: return run_demo(o);
            case Action::ExportConvergence: return run_export(o);
            case Action::SpecDump: return run_spec_dump(o);
            case Action::SpecLoad: return run_spec_load(o);
            case Action::None: break;
        }
        std::cerr << "error: no action selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
