// hillspec: spectra, portraits, the scalar-type criterion and spectral
// projections for periodic Schrodinger operators with complex potentials.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hill/criterion.hpp"
#include "hill/io.hpp"
#include "hill/projection.hpp"
#include "hill/validate.hpp"

using namespace hill;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 64;
constexpr int kExitNumerical = 65;

struct RunConfig {
    std::string subcommand;
    json potential = {{"preset", "zero"}};
    int k_max = 8;
    double tol = 1e-12;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out = ".";
    // project / expand
    int band = 1;
    double t_lo = 0.0, t_hi = kPi;
    int band_max = 8;
    bool allow_singular = false;
    int cells = 16, ppc = 64;
    std::string g = "gaussian";
    double center = 0.3, width = 1.0;
    // greens
    std::string z = "auto";
    double x_min = -kPi, x_max = kPi;
    int n = 41;

    json to_json() const {
        json j;
        j["subcommand"] = subcommand;
        j["potential"] = potential;
        j["k_max"] = k_max;
        j["tol"] = tol;
        j["seed"] = seed;
        j["format"] = format;
        if (subcommand == "project" || subcommand == "expand") {
            json g_ = {{"shape", g}, {"center", center}, {"width", width}, {"cells", cells}, {"points_per_cell", ppc}};
            j["g"] = g_;
            if (subcommand == "project") j["band"] = band, j["t_lo"] = t_lo, j["t_hi"] = t_hi;
            else j["band_max"] = band_max, j["allow_singular"] = allow_singular;
        }
        if (subcommand == "greens") j["z"] = z, j["x_min"] = x_min, j["x_max"] = x_max, j["n"] = n;
        return j;
    }

    void merge(const json& j) {
        const auto take = [&](const char* key, auto& field) {
            if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
        };
        try {
            if (j.contains("potential")) potential = j["potential"];
            take("k_max", k_max);
            take("tol", tol);
            take("seed", seed);
            take("format", format);
            take("out", out);
            take("band", band);
            take("t_lo", t_lo);
            take("t_hi", t_hi);
            take("band_max", band_max);
            take("allow_singular", allow_singular);
            take("z", z);
            take("x_min", x_min);
            take("x_max", x_max);
            take("n", n);
            if (j.contains("g")) {
                const json& gj = j["g"];
                if (gj.contains("shape")) g = gj["shape"].get<std::string>();
                if (gj.contains("center")) center = gj["center"].get<double>();
                if (gj.contains("width")) width = gj["width"].get<double>();
                if (gj.contains("cells")) cells = gj["cells"].get<int>();
                if (gj.contains("points_per_cell")) ppc = gj["points_per_cell"].get<int>();
            }
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    void check() const {
        if (k_max < 2 || k_max > 64) throw ConfigError("--kmax must lie in [2, 64]");
        if (!(tol > 0.0 && tol < 1e-3)) throw ConfigError("--tol must lie in (0, 1e-3)");
        if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
        if (cells < 1 || ppc < 8) throw ConfigError("grid needs >= 1 cell and >= 8 points per cell");
        if (g != "gaussian" && g != "bump") throw ConfigError("--g must be gaussian or bump");
        if (!(width > 0.0)) throw ConfigError("--width must be positive");
        if (n < 2) throw ConfigError("--n must be >= 2");
    }
};

FloquetOptions ode_options(const RunConfig& c) {
    FloquetOptions o;
    o.rtol = c.tol;
    o.atol = 1e-2 * c.tol;
    return o;
}

PortraitOptions portrait_options(const RunConfig& c) {
    PortraitOptions p;
    p.trace.ode = ode_options(c);
    p.spectra.ode = ode_options(c);
    return p;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const RunConfig& c, const std::string& name, const std::string& text) {
    write_text_file((fs::path(c.out) / name).string(), text);
}

json header(const RunConfig& c, const Potential& V) {
    json j;
    j["potential"] = potential_to_json(V);
    j["k_max"] = c.k_max;
    j["tol"] = c.tol;
    return j;
}

int threads_for(int jobs) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* e = std::getenv("HILL_THREADS")) n = std::atoi(e);
    return std::clamp(n, 1, std::max(1, jobs));
}

GridFunction test_function(const RunConfig& c) {
    return c.g == "bump" ? bump(c.cells, c.ppc, c.center, c.width) : gaussian(c.cells, c.ppc, c.center, c.width);
}

int run_spectra(const RunConfig& c, const Potential& V, cplx mean) {
    SpectraOptions so;
    so.ode = ode_options(c);
    const SpectraCatalog cat = spectra_catalog(V, c.k_max, so);
    if (c.format == "csv") {
        std::ostringstream os;
        write_catalog_csv(os, cat);
        emit(c, "spectra.csv", os.str());
    } else {
        json j = header(c, V);
        j["mean_shift"] = to_json(mean);
        j["catalog"] = to_json(cat);
        emit(c, "spectra.json", dump(j));
    }
    std::cout << "spectra: " << cat.dirichlet.size() << " Dirichlet, " << expand_multiplicity(cat.periodic).size()
              << " periodic, " << expand_multiplicity(cat.antiperiodic).size() << " antiperiodic, "
              << cat.critical.size() << " critical points\n";
    return 0;
}

int run_portrait(const RunConfig& c, const Potential& V, cplx mean) {
    const SpectrumPortrait P = spectrum_portrait(V, c.k_max, portrait_options(c));
    std::ostringstream os;
    write_portrait_csv(os, P);
    emit(c, "portrait.csv", os.str());
    json j = header(c, V);
    j["mean_shift"] = to_json(mean);
    j["portrait"] = portrait_summary(P);
    emit(c, "portrait.json", dump(j));
    int open = 0;
    for (const json& g : j["portrait"]["gaps"]) open += g["open"].get<bool>();
    int sing = 0;
    for (const SingularPoint& s : P.singular_points) sing += s.spectral_singularity;
    std::cout << "portrait: " << P.arcs.size() << " bands, " << open << " open gaps, " << sing
              << " spectral singularities\n";
    return 0;
}

int run_criterion(const RunConfig& c, const Potential& V, cplx mean) {
    CriterionOptions o;
    o.portrait = portrait_options(c);
    const CriterionReport R = evaluate_criterion(V, c.k_max, o);
    json j = header(c, V);
    j["mean_shift"] = to_json(mean);
    j["report"] = to_json(R);
    emit(c, "criterion.json", dump(j));
    if (c.format == "csv") {
        std::ostringstream os;
        os << "band,t,re,im,r1,r2,r3\n";
        for (const RatioSample& s : R.ratios.samples)
            os << s.band << ',' << csv_number(s.t) << ',' << csv_number(s.lambda.real()) << ','
               << csv_number(s.lambda.imag()) << ',' << csv_number(s.r[0]) << ',' << csv_number(s.r[1]) << ','
               << csv_number(s.r[2]) << '\n';
        emit(c, "ratios.csv", os.str());
    }
    std::cout << "verdict: " << verdict_name(R.verdict) << " (critical points " << verdict_name(R.crit_check.verdict)
              << ", ratio growth " << verdict_name(R.growth_check.verdict) << ", multiplicities "
              << verdict_name(R.mult_check.verdict) << ")\n";
    for (const Singularity& s : R.singularities)
        std::cout << "spectral singularity near " << s.lambda.real() << (s.lambda.imag() < 0 ? "-" : "+")
                  << std::abs(s.lambda.imag()) << "i\n";
    switch (R.verdict) {
        case Verdict::pass: return 0;
        case Verdict::fail: return 1;
        default: return 2;
    }
}

json grid_diagnostics(const GridFunction& g) {
    return {{"cells", g.cells}, {"points_per_cell", g.points_per_cell}, {"norm", g.norm()},
            {"support", json::array({g.support_lo, g.support_hi})}};
}

int run_project(const RunConfig& c, const Potential& V, cplx mean) {
    const SpectrumPortrait P = spectrum_portrait(V, std::max(c.k_max, c.band), portrait_options(c));
    if (c.band < 1 || c.band > static_cast<int>(P.arcs.size())) throw ConfigError("--band outside the traced window");
    ProjectionOptions po;
    po.ode = ode_options(c);
    po.t_lo = c.t_lo;
    po.t_hi = c.t_hi;
    const SpectralArc& arc = P.arcs[c.band - 1];
    const GridFunction g = test_function(c);
    const GridFunction pg = project(V, arc, g, po);
    const GridFunction ppg = project(V, arc, pg, po);
    std::ostringstream os;
    write_grid_csv(os, pg);
    emit(c, "project.csv", os.str());
    json j = header(c, V);
    j["mean_shift"] = to_json(mean);
    j["band"] = c.band;
    j["t_range"] = {c.t_lo, c.t_hi};
    j["g"] = grid_diagnostics(g);
    j["projection"] = grid_diagnostics(pg);
    const double idem = pg.norm() > 0.0 ? (ppg - pg).norm() / pg.norm() : 0.0;
    j["idempotence"] = idem;
    emit(c, "project.json", dump(j));
    std::cout << "project: band " << c.band << ", |g| " << g.norm() << ", |P g| " << pg.norm() << ", idempotence "
              << idem << "\n";
    return 0;
}

int run_expand(const RunConfig& c, const Potential& V, cplx mean) {
    const SpectrumPortrait P = spectrum_portrait(V, std::max(c.k_max, c.band_max), portrait_options(c));
    if (c.band_max < 1 || c.band_max > static_cast<int>(P.arcs.size()))
        throw ConfigError("--band-max outside the traced window");
    ProjectionOptions po;
    po.ode = ode_options(c);
    const GridFunction g = test_function(c);
    for (int b = 0; b < c.band_max; ++b)
        if (P.arcs[b].flagged_singular && !c.allow_singular)
            throw SingularArcError("band " + std::to_string(b + 1) +
                                   " ends at a spectral singularity; pass --allow-singular to expand anyway");
    // bands are independent; the sum is taken in band order afterwards
    std::vector<GridFunction> parts(c.band_max);
    std::vector<std::string> errors(c.band_max);
    const int nt = threads_for(c.band_max);
    std::vector<std::thread> pool;
    for (int w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            for (int b = w; b < c.band_max; b += nt) {
                try {
                    SpectralArc arc = P.arcs[b];
                    arc.flagged_singular = false;
                    parts[b] = project(V, arc, g, po);
                } catch (const Error& e) {
                    errors[b] = std::string(e.name()) + ": " + e.what();
                }
            }
        });
    for (std::thread& t : pool) t.join();
    for (const std::string& e : errors)
        if (!e.empty()) throw NonconvergenceError(e);
    GridFunction sum = GridFunction::zeros(g.cells, g.points_per_cell);
    json norms = json::array();
    for (const GridFunction& p : parts) {
        sum = sum + p;
        norms.push_back(p.norm());
    }
    std::ostringstream os;
    write_grid_csv(os, sum);
    emit(c, "expand.csv", os.str());
    const double resid = (g - sum).norm() / g.norm();
    json j = header(c, V);
    j["mean_shift"] = to_json(mean);
    j["band_max"] = c.band_max;
    j["g"] = grid_diagnostics(g);
    j["band_norms"] = norms;
    j["relative_residual"] = resid;
    emit(c, "expand.json", dump(j));
    std::cout << "expand: bands 1.." << c.band_max << ", relative residual " << resid << "\n";
    return 0;
}

int run_greens(const RunConfig& c, const Potential& V, cplx mean) {
    const cplx z = c.z == "auto" ? cplx(V.semistrip().m3 - 1.0) : parse_complex(c.z);
    const FloquetOptions o = ode_options(c);
    std::ostringstream os;
    os << "x,y,re,im\n";
    double asym = 0.0;
    for (int i = 0; i < c.n; ++i)
        for (int k = 0; k < c.n; ++k) {
            const double x = c.x_min + (c.x_max - c.x_min) * i / (c.n - 1);
            const double y = c.x_min + (c.x_max - c.x_min) * k / (c.n - 1);
            const cplx G = greens_function(V, z, x, y, o);
            if (k < i) asym = std::max(asym, std::abs(G - greens_function(V, z, y, x, o)));
            os << csv_number(x) << ',' << csv_number(y) << ',' << csv_number(G.real()) << ',' << csv_number(G.imag())
               << '\n';
        }
    emit(c, "greens.csv", os.str());
    json j = header(c, V);
    j["mean_shift"] = to_json(mean);
    j["z"] = to_json(z);
    j["grid"] = {{"x_min", c.x_min}, {"x_max", c.x_max}, {"n", c.n}};
    j["max_asymmetry"] = asym;
    emit(c, "greens.json", dump(j));
    std::cout << "greens: " << c.n << "x" << c.n << " kernel at z = " << z << ", max asymmetry " << asym << "\n";
    return 0;
}

int run_validate(const RunConfig& c, const Potential& V) {
    ValidateOptions vo;
    vo.k_max = std::min(c.k_max, 6);
    vo.seed = c.seed;
    vo.ode = ode_options(c);
    const ValidationReport r = validate_suite(V, vo);
    const auto status = [](const CheckResult& k) { return k.skipped ? "SKIP" : (k.pass ? "PASS" : "FAIL"); };
    if (c.format == "csv") {
        std::ostringstream os;
        os << "check,status,value,threshold,detail\n";
        for (const CheckResult& k : r.checks)
            os << k.name << ',' << status(k) << ',' << csv_number(k.value) << ',' << csv_number(k.threshold) << ",\""
               << k.detail << "\"\n";
        emit(c, "validate.csv", os.str());
    } else {
        json j;
        j["potential"] = potential_to_json(V);
        j["seed"] = r.seed;
        json checks = json::array();
        for (const CheckResult& k : r.checks)
            checks.push_back({{"name", k.name},
                              {"status", status(k)},
                              {"value", k.value},
                              {"threshold", k.threshold},
                              {"detail", k.detail}});
        j["checks"] = checks;
        j["all_pass"] = r.all_pass();
        emit(c, "validate.json", dump(j));
    }
    for (const CheckResult& k : r.checks)
        std::cout << std::left << std::setw(24) << k.name << ' ' << status(k) << "  " << k.value << " / "
                  << k.threshold << (k.detail.empty() ? "" : "  " + k.detail) << "\n";
    return r.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of periodic Schrodinger operators with complex potentials"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string preset, potential_file, config_file;
    // a config file seeds the fields before parsing, so explicit flags win
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        std::string path;
        if (a == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
        if (path.empty()) continue;
        try {
            cfg.merge(read_json_file(path));
        } catch (const Error& e) {
            std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
            return kExitConfig;
        }
    }

    const auto common = [&](CLI::App* s) {
        s->add_option("--preset", preset, "zero, mathieu:<c>, gasymov:<g>, constant:<c>");
        s->add_option("--potential-file", potential_file, "JSON potential {\"fourier\": ...} or {\"samples\": ...}");
        s->add_option("--config", config_file, "re-run an emitted config.json");
        s->add_option("--kmax", cfg.k_max, "number of bands / spectral window");
        s->add_option("--tol", cfg.tol, "relative ODE tolerance");
        s->add_option("--out", cfg.out, "output directory");
        s->add_option("--seed", cfg.seed, "seed for randomized checks");
        s->add_option("--format", cfg.format, "json or csv");
    };
    const auto grid = [&](CLI::App* s) {
        s->add_option("--cells", cfg.cells, "cells of length pi on each side of 0");
        s->add_option("--ppc", cfg.ppc, "grid points per cell");
        s->add_option("--g", cfg.g, "test function: gaussian or bump");
        s->add_option("--center", cfg.center, "test function center");
        s->add_option("--width", cfg.width, "gaussian sigma or bump half-width");
    };

    CLI::App* spectra = app.add_subcommand("spectra", "Dirichlet, periodic/antiperiodic spectra and critical points");
    CLI::App* portrait = app.add_subcommand("portrait", "trace the spectral arcs");
    CLI::App* criterion = app.add_subcommand("criterion", "scalar-type criterion; exit 0/1/2 = PASS/FAIL/INCONCLUSIVE");
    CLI::App* project = app.add_subcommand("project", "spectral projection of a test function onto one band");
    CLI::App* expand = app.add_subcommand("expand", "eigenfunction expansion over the first bands");
    CLI::App* greens = app.add_subcommand("greens", "Green's kernel on a square grid");
    CLI::App* validate = app.add_subcommand("validate", "invariant suite with a pass/fail table");
    for (CLI::App* s : {spectra, portrait, criterion, project, expand, greens, validate}) common(s);
    grid(project);
    grid(expand);
    project->add_option("--band", cfg.band, "band index (1-based)");
    project->add_option("--t-lo", cfg.t_lo, "lower arc parameter");
    project->add_option("--t-hi", cfg.t_hi, "upper arc parameter");
    expand->add_option("--band-max", cfg.band_max, "last band of the partial sum");
    expand->add_flag("--allow-singular", cfg.allow_singular, "expand across spectral singularities");
    greens->add_option("--z", cfg.z, "spectral parameter (default: left of the semi-strip)");
    greens->add_option("--x-min", cfg.x_min);
    greens->add_option("--x-max", cfg.x_max);
    greens->add_option("--n", cfg.n, "grid points per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    try {
        if (!preset.empty() && !potential_file.empty())
            throw ConfigError("--preset and --potential-file are mutually exclusive");
        if (!preset.empty()) cfg.potential = {{"preset", preset}};
        if (!potential_file.empty()) cfg.potential = read_json_file(potential_file);
        cfg.check();

        const Potential V_in = potential_from_json(cfg.potential);
        const cplx mean = V_in.mean();
        const Potential V = V_in.shifted_to_zero_mean();

        fs::create_directories(cfg.out);
        emit(cfg, "config.json", dump(cfg.to_json()));

        const std::string& s = cfg.subcommand;
        if (s == "spectra") return run_spectra(cfg, V, mean);
        if (s == "portrait") return run_portrait(cfg, V, mean);
        if (s == "criterion") return run_criterion(cfg, V, mean);
        if (s == "project") return run_project(cfg, V, mean);
        if (s == "expand") return run_expand(cfg, V, mean);
        if (s == "greens") return run_greens(cfg, V, mean);
        return run_validate(cfg, V_in);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return kExitNumerical;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: ConfigError: " << e.what() << "\n";
        return kExitConfig;
    }
}
