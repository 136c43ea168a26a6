#pragma once

#include "casimir/analysis.hpp"
#include "casimir/csv.hpp"
#include "casimir/kramers_kronig.hpp"
#include "casimir/materials.hpp"
#include "casimir/presets.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace casimir::cli {

inline constexpr const char* tool_name = "casimir";
inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int { ok = 0, failure = 1, usage = 2, partial = 3 };

struct RunConfig {
    std::string preset;
    std::string plate1;
    std::string medium;
    std::string plate2;
    std::string light = "off";
    double temperature = 300.0;
    double a_min = 50e-9;
    double a_max = 500e-9;
    int points = 100;
    std::optional<double> carrier_density;
    double rel_tol = 1e-6;
    int max_matsubara = 5000;
    double tol_m = 0.1e-9;
    double separation = 300e-9;
    std::optional<double> plate_area;
    std::optional<double> spring_constant;
    unsigned threads = 0;
    std::string materials_dir;
    std::string output;
    // material-eval
    std::string name;
    std::vector<double> xi;
    // kk-build
    std::string input;
    std::string material_name;
};

namespace detail {

using csv::sig12;

inline QuadratureSettings settings_of(const RunConfig& c) {
    QuadratureSettings s;
    s.rel_tol = c.rel_tol;
    s.max_matsubara = c.max_matsubara;
    s.validate();
    return s;
}

inline MaterialDatabase open_database(const RunConfig& c) {
    const std::filesystem::path dir = c.materials_dir.empty() ? default_materials_dir() : std::filesystem::path(c.materials_dir);
    return MaterialDatabase::from_directory(dir);
}

struct ResolvedSystem {
    LayerSystem system;
    std::string description;
    std::string reproduce; // flags that select the system
};

inline ResolvedSystem resolve_system(const RunConfig& c, const MaterialDatabase& db) {
    if (c.light != "on" && c.light != "off") throw InputError("--light must be 'on' or 'off'");
    const bool lit = c.light == "on";
    ResolvedSystem r;
    if (!c.preset.empty()) {
        if (!c.plate1.empty() || !c.medium.empty() || !c.plate2.empty())
            throw InputError("--preset cannot be combined with --plate1/--medium/--plate2");
        const auto scenario = make_preset_scenario(db, c.preset, c.temperature, c.carrier_density);
        r.system = lit ? scenario.lit_system : scenario.dark_system;
        r.description = c.preset + " light=" + c.light;
        r.reproduce = "--preset " + c.preset + " --light " + c.light;
        if (lit) {
            const auto& p = find_preset(c.preset);
            const auto& rec = db.record(std::string(p.plate2_lit));
            double n = std::get<CarrierRecord>(rec.params).carriers.n_density;
            if (c.carrier_density) n = *c.carrier_density;
            r.description += " carrier_density_m3=" + sig12(n);
            if (c.carrier_density) r.reproduce += " --carrier-density " + csv::exact(n);
        }
        return r;
    }
    if (c.plate1.empty() || c.medium.empty() || c.plate2.empty())
        throw InputError("give either --preset or all of --plate1, --medium, --plate2");
    if (lit) throw InputError("--light on needs --preset; name an illuminated material with --plate2 instead");
    if (c.carrier_density) throw InputError("--carrier-density needs --preset");
    r.system = LayerSystem{db.model(c.plate1), db.model(c.medium), db.model(c.plate2), c.temperature};
    r.system.validate();
    r.description = "plate1=" + c.plate1 + " medium=" + c.medium + " plate2=" + c.plate2;
    r.reproduce = "--plate1 " + c.plate1 + " --medium " + c.medium + " --plate2 " + c.plate2;
    return r;
}

inline void write_header(std::ostream& out, const std::string& command, const std::string& scenario,
                         const RunConfig& c, const std::string& extra_settings, const std::string& reproduce) {
    out << "# " << tool_name << ' ' << tool_version << '\n';
    out << "# command: " << command << '\n';
    out << "# scenario: " << scenario << '\n';
    out << "# temperature_K: " << sig12(c.temperature) << '\n';
    out << "# sign convention: pressure < 0 is attraction, pressure > 0 is repulsion\n";
    out << "# settings: rel_tol=" << sig12(c.rel_tol) << " max_matsubara=" << c.max_matsubara
        << " y_upper_margin=60 max_subdivisions=30" << extra_settings << '\n';
    out << "# reproduce: " << tool_name << ' ' << command << ' ' << reproduce << " --temperature "
        << csv::exact(c.temperature) << " --rel-tol " << csv::exact(c.rel_tol) << " --max-matsubara "
        << c.max_matsubara << '\n';
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto db = open_database(c);
    const auto sys = resolve_system(c, db);
    const auto settings = settings_of(c);
    const auto result = sweep(sys.system, c.a_min, c.a_max, c.points, settings, c.threads);
    const std::string range = " grid=log a_min_m=" + sig12(c.a_min) + " a_max_m=" + sig12(c.a_max) +
                              " points=" + std::to_string(c.points);
    const std::string repro = sys.reproduce + " --a-min " + csv::exact(c.a_min) + " --a-max " + csv::exact(c.a_max) +
                              " --points " + std::to_string(c.points);
    write_header(out, "sweep", sys.description, c, range, repro);
    out << "a_m,pressure_pa,est_error_pa\n";
    for (const auto& e : result.entries) {
        if (e.ok())
            out << sig12(e.separation) << ',' << sig12(e.point->pressure) << ',' << sig12(e.point->est_error) << '\n';
        else
            out << sig12(e.separation) << ",nan,nan\n";
    }
    for (const auto& e : result.entries)
        if (!e.ok()) {
            out << "# failed: a_m=" << sig12(e.separation) << ": " << e.error << '\n';
            err << "sweep: point a = " << sig12(e.separation) << " m failed: " << e.error << '\n';
        }
    return result.failures() ? partial : ok;
}

inline int cmd_crossover(const RunConfig& c, std::ostream& out, std::ostream&) {
    const auto db = open_database(c);
    const auto sys = resolve_system(c, db);
    const auto settings = settings_of(c);
    const auto r = find_crossover(sys.system, c.a_min, c.a_max, c.tol_m, settings, 64, c.threads);
    const std::string extra = " scan_points=64 tol_m=" + sig12(c.tol_m) + " a_min_m=" + sig12(c.a_min) +
                              " a_max_m=" + sig12(c.a_max);
    const std::string repro = sys.reproduce + " --a-min " + csv::exact(c.a_min) + " --a-max " + csv::exact(c.a_max) +
                              " --tol " + csv::exact(c.tol_m);
    write_header(out, "crossover", sys.description, c, extra, repro);
    out << "separation_m,a_lo_m,a_hi_m,sign_below,sign_above,sign_changes\n";
    if (!r) {
        out << "# no sign change on the scanned range\n";
        out << "nan,nan,nan,0,0,0\n";
        return ok;
    }
    out << sig12(r->separation) << ',' << sig12(r->a_lo) << ',' << sig12(r->a_hi) << ',' << r->sign_below << ','
        << r->sign_above << ',' << r->sign_changes << '\n';
    return ok;
}

inline int cmd_modulate(const RunConfig& c, std::ostream& out, std::ostream&) {
    if (c.preset.empty()) throw InputError("modulate needs --preset");
    const auto db = open_database(c);
    auto scenario = make_preset_scenario(db, c.preset, c.temperature, c.carrier_density);
    scenario.a_min = c.a_min;
    scenario.a_max = c.a_max;
    const auto settings = settings_of(c);
    const auto m = modulation_depth(scenario, c.separation, settings);
    const bool displacement = c.plate_area && c.spring_constant;
    if (c.plate_area.has_value() != c.spring_constant.has_value())
        throw InputError("--plate-area and --spring-constant must be given together");

    RunConfig shown = c;
    std::string repro = "--preset " + c.preset + " --a " + csv::exact(c.separation);
    if (c.carrier_density) repro += " --carrier-density " + csv::exact(*c.carrier_density);
    std::string extra;
    if (displacement) {
        repro += " --plate-area " + csv::exact(*c.plate_area) + " --spring-constant " + csv::exact(*c.spring_constant);
        extra = " plate_area_m2=" + sig12(*c.plate_area) + " spring_constant_n_m=" + sig12(*c.spring_constant);
    }
    write_header(out, "modulate", c.preset + " dark vs lit", shown, extra, repro);
    out << "a_m,p_dark_pa,p_dark_err_pa,p_lit_pa,p_lit_err_pa,delta_pa";
    if (displacement) out << ",x_dark_m,x_lit_m";
    out << '\n';
    out << sig12(c.separation) << ',' << sig12(m.dark.pressure) << ',' << sig12(m.dark.est_error) << ','
        << sig12(m.lit.pressure) << ',' << sig12(m.lit.est_error) << ',' << sig12(m.delta);
    if (displacement)
        out << ',' << sig12(quasi_static_displacement(m.dark.pressure, *c.plate_area, *c.spring_constant)) << ','
            << sig12(quasi_static_displacement(m.lit.pressure, *c.plate_area, *c.spring_constant));
    out << '\n';
    return ok;
}

inline int cmd_material_eval(const RunConfig& c, std::ostream& out, std::ostream&) {
    const auto db = open_database(c);
    const auto model = db.model(c.name);
    out << "# " << tool_name << ' ' << tool_version << '\n';
    out << "# command: material-eval\n";
    out << "# material: " << c.name << " kind=" << to_string(model.kind()) << '\n';
    out << "xi_rad_s,eps\n";
    for (double xi : c.xi) {
        const double v = (xi == 0.0) ? model.static_value() : model.evaluate(xi);
        out << sig12(xi) << ',' << (std::isinf(v) ? std::string("inf") : sig12(v)) << '\n';
    }
    return ok;
}

inline int cmd_kk_build(const RunConfig& c, std::ostream& out, std::ostream&) {
    if (c.input.empty()) throw InputError("kk-build needs --input");
    const auto cols = csv::read_two_columns(c.input);
    OpticalDataTable data{cols.first, cols.second};
    const auto table = build_tabulated(data, data.omega);
    std::ostringstream body;
    body << "# " << tool_name << ' ' << tool_version << '\n';
    body << "# command: kk-build from " << std::filesystem::path(c.input).filename().string() << '\n';
    body << "# first row is the static value at xi = 0\n";
    std::vector<double> xi{0.0};
    std::vector<double> eps{table.static_value};
    xi.insert(xi.end(), table.grid.begin(), table.grid.end());
    eps.insert(eps.end(), table.values.begin(), table.values.end());
    csv::write_two_columns(body, "xi_rad_s,eps", xi, eps);
    out << body.str();

    if (!c.material_name.empty()) {
        if (c.output.empty()) throw InputError("--material-name needs --output");
        const std::filesystem::path csv_path(c.output);
        MaterialRecord rec;
        rec.name = c.material_name;
        rec.description = "Kramers-Kronig table";
        rec.params = TabulatedRecord{csv_path.filename().string(), table};
        const auto ini = csv_path.parent_path() / (c.material_name + ".ini");
        std::ofstream f(ini);
        if (!f) throw InputError("cannot write " + ini.string());
        f << to_ini(rec);
    }
    return ok;
}

} // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
/// Output goes to `--output` when given, otherwise to `out`.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Lifshitz Casimir pressure between plates in a liquid", tool_name};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);
    RunConfig c;

    auto common = [&](CLI::App* s) {
        s->add_option("--materials-dir", c.materials_dir, "Material database directory (default: $CASIMIR_MATERIALS_DIR)");
        s->add_option("--output,-o", c.output, "Output file (default: stdout)");
    };
    auto system_opts = [&](CLI::App* s) {
        s->add_option("--preset", c.preset, "au-ethanol-si | si-ethanol-si | al2o3-ethanol-si");
        s->add_option("--plate1", c.plate1, "Material name of plate 1");
        s->add_option("--medium", c.medium, "Material name of the gap medium");
        s->add_option("--plate2", c.plate2, "Material name of plate 2");
        s->add_option("--light", c.light, "Illuminate the Si plate of a preset: on | off")->check(CLI::IsMember({"on", "off"}));
        s->add_option("--carrier-density", c.carrier_density, "Photo-carrier density of lit Si, m^-3");
    };
    auto numeric_opts = [&](CLI::App* s) {
        s->add_option("--temperature", c.temperature, "Temperature, K")->check(CLI::PositiveNumber);
        s->add_option("--a-min", c.a_min, "Smallest separation, m")->check(CLI::PositiveNumber);
        s->add_option("--a-max", c.a_max, "Largest separation, m")->check(CLI::PositiveNumber);
        s->add_option("--rel-tol", c.rel_tol, "Relative tolerance of the pressure");
        s->add_option("--max-matsubara", c.max_matsubara, "Largest Matsubara index");
        s->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
    };

    auto* sweep_cmd = app.add_subcommand("sweep", "Pressure on a log-spaced separation grid");
    common(sweep_cmd);
    system_opts(sweep_cmd);
    numeric_opts(sweep_cmd);
    sweep_cmd->add_option("--points", c.points, "Number of separations")->check(CLI::Range(2, 1000000));

    auto* cross_cmd = app.add_subcommand("crossover", "Separation where the pressure changes sign");
    common(cross_cmd);
    system_opts(cross_cmd);
    numeric_opts(cross_cmd);
    cross_cmd->add_option("--tol", c.tol_m, "Bracket width, m")->check(CLI::PositiveNumber);

    auto* mod_cmd = app.add_subcommand("modulate", "Dark and lit pressure at one separation");
    common(mod_cmd);
    mod_cmd->add_option("--preset", c.preset, "au-ethanol-si | si-ethanol-si | al2o3-ethanol-si")->required();
    mod_cmd->add_option("--carrier-density", c.carrier_density, "Photo-carrier density of lit Si, m^-3");
    numeric_opts(mod_cmd);
    mod_cmd->add_option("--a", c.separation, "Separation, m")->check(CLI::PositiveNumber);
    mod_cmd->add_option("--plate-area", c.plate_area, "Plate area for the spring deflection, m^2");
    mod_cmd->add_option("--spring-constant", c.spring_constant, "Spring constant, N/m");

    auto* eval_cmd = app.add_subcommand("material-eval", "Evaluate eps(i xi) of a material");
    common(eval_cmd);
    eval_cmd->add_option("--name", c.name, "Material name")->required();
    eval_cmd->add_option("--xi", c.xi, "Imaginary frequencies, rad/s")->required();

    auto* kk_cmd = app.add_subcommand("kk-build", "Tabulate eps(i xi) from Im eps(omega) via Kramers-Kronig");
    common(kk_cmd);
    kk_cmd->add_option("--input", c.input, "Two-column CSV omega_rad_s,im_eps")->required();
    kk_cmd->add_option("--material-name", c.material_name, "Also write <name>.ini next to the output table");

    std::vector<std::string> argv_store{tool_name};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        std::ostringstream buffer;
        std::ostream& sink = c.output.empty() ? out : static_cast<std::ostream&>(buffer);
        int status = failure;
        if (*sweep_cmd) status = detail::cmd_sweep(c, sink, err);
        else if (*cross_cmd) status = detail::cmd_crossover(c, sink, err);
        else if (*mod_cmd) status = detail::cmd_modulate(c, sink, err);
        else if (*eval_cmd) status = detail::cmd_material_eval(c, sink, err);
        else if (*kk_cmd) status = detail::cmd_kk_build(c, sink, err);
        if (!c.output.empty()) {
            std::ofstream f(c.output, std::ios::binary);
            if (!f) throw InputError("cannot write output file: " + c.output);
            f << buffer.str();
        }
        return status;
    } catch (const std::exception& e) {
        err << tool_name << ": error: " << e.what() << '\n';
        return failure;
    }
}

} // namespace casimir::cli
