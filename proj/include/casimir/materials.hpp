#pragma once

#include "casimir/constants.hpp"
#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "casimir/permittivity.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#ifndef CASIMIR_MATERIALS_DIR_DEFAULT
#define CASIMIR_MATERIALS_DIR_DEFAULT "data/materials"
#endif

/// File-persisted material definitions.
///
/// A material file is an INI document with one `[material]` section:
///
///     [material]
///     name = ethanol
///     kind = oscillator
///     c_ir = 23.84
///     ...
///
/// Full-line comments start with '#' or ';'. Frequencies are rad/s and
/// densities m^-3. A tabulated material points at a two-column CSV
/// `xi_rad_s,eps` through `table_csv`, resolved relative to the INI file.
namespace casimir {

struct CarrierRecord {
    std::string base; // name of the dark material
    CarrierParameters carriers;
    double gamma_e = silicon_carriers::gamma_e;
    double gamma_h = silicon_carriers::gamma_h;

    bool operator==(const CarrierRecord& o) const {
        return base == o.base && carriers.n_density == o.carriers.n_density && carriers.m_eff_e == o.carriers.m_eff_e &&
               carriers.m_eff_h == o.carriers.m_eff_h && gamma_e == o.gamma_e && gamma_h == o.gamma_h;
    }
};

struct TabulatedRecord {
    std::string table_csv; // as written in the file
    TabulatedPermittivity table;

    bool operator==(const TabulatedRecord& o) const {
        return table.grid == o.table.grid && table.values == o.table.values && table.static_value == o.table.static_value;
    }
};

inline bool operator==(const OscillatorModel& a, const OscillatorModel& b) {
    return a.c_ir == b.c_ir && a.c_uv == b.c_uv && a.omega_ir == b.omega_ir && a.omega_uv == b.omega_uv;
}
inline bool operator==(const DrudeModel& a, const DrudeModel& b) { return a.omega_p == b.omega_p && a.gamma == b.gamma; }
inline bool operator==(const ConstantModel& a, const ConstantModel& b) { return a.value == b.value; }
inline bool operator==(const IdealMetal&, const IdealMetal&) { return true; }

struct MaterialRecord {
    using Params = std::variant<OscillatorModel, CarrierRecord, DrudeModel, TabulatedRecord, ConstantModel, IdealMetal>;

    std::string name;
    std::string description;
    Params params;

    [[nodiscard]] ModelKind kind() const {
        switch (params.index()) {
        case 0: return ModelKind::oscillator;
        case 1: return ModelKind::carriers;
        case 2: return ModelKind::drude;
        case 3: return ModelKind::tabulated;
        case 4: return ModelKind::constant;
        default: return ModelKind::ideal_metal;
        }
    }

    bool operator==(const MaterialRecord& o) const {
        return name == o.name && description == o.description && params == o.params;
    }
};

namespace detail {

struct IniEntry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct IniSection {
    int header_line = 0;
    std::map<std::string, IniEntry, std::less<>> entries;
};

inline IniSection parse_material_ini(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<IniSection> section;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = csv::trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(source, lineno, "unterminated section header");
            const auto title = csv::trim(line.substr(1, line.size() - 2));
            if (title != "material") throw ParseError(source, lineno, "unknown section [" + std::string(title) + "]");
            if (section) throw ParseError(source, lineno, "duplicate [material] section");
            section.emplace();
            section->header_line = lineno;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(source, lineno, "expected 'key = value'");
        if (!section) throw ParseError(source, lineno, "key outside of [material] section");
        std::string key(csv::trim(line.substr(0, eq)));
        std::string value(csv::trim(line.substr(eq + 1)));
        if (key.empty()) throw ParseError(source, lineno, "empty key");
        if (section->entries.contains(key)) throw ParseError(source, lineno, "duplicate key '" + key + "'");
        section->entries.emplace(std::move(key), IniEntry{std::move(value), lineno});
    }
    if (!section) throw ParseError(source, lineno == 0 ? 1 : lineno, "missing [material] section");
    return *section;
}

class KeyReader {
  public:
    KeyReader(IniSection& s, std::string source) : s_(s), source_(std::move(source)) {}

    std::string text(const std::string& key) {
        auto& e = entry(key);
        return e.value;
    }

    std::optional<std::string> optional_text(const std::string& key) {
        auto it = s_.entries.find(key);
        if (it == s_.entries.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    double number(const std::string& key) {
        auto& e = entry(key);
        double v = 0.0;
        if (!csv::parse_double(e.value, v)) throw ParseError(source_, e.line, "key '" + key + "': not a number");
        return v;
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!s_.entries.contains(key)) return std::nullopt;
        return number(key);
    }

    int line_of(const std::string& key) const {
        auto it = s_.entries.find(key);
        return it == s_.entries.end() ? s_.header_line : it->second.line;
    }

    void reject_unused() const {
        for (const auto& [k, e] : s_.entries)
            if (!e.used) throw ParseError(source_, e.line, "unknown key '" + k + "'");
    }

  private:
    IniEntry& entry(const std::string& key) {
        auto it = s_.entries.find(key);
        if (it == s_.entries.end()) throw ParseError(source_, s_.header_line, "missing required key '" + key + "'");
        it->second.used = true;
        return it->second;
    }

    IniSection& s_;
    std::string source_;
};

inline TabulatedPermittivity read_table_csv(const std::string& path, std::optional<double> static_eps) {
    auto cols = csv::read_two_columns(path);
    TabulatedPermittivity t;
    std::optional<double> zero_row;
    for (std::size_t i = 0; i < cols.first.size(); ++i) {
        if (cols.first[i] == 0.0 && i == 0) {
            zero_row = cols.second[i];
            continue;
        }
        t.grid.push_back(cols.first[i]);
        t.values.push_back(cols.second[i]);
    }
    if (t.grid.empty()) throw InvariantError(path + ": table has no data rows");
    if (static_eps && zero_row && *static_eps != *zero_row)
        throw InvariantError(path + ": static_eps disagrees with the xi = 0 table row");
    t.static_value = static_eps ? *static_eps : zero_row ? *zero_row : t.values.front();
    return t;
}

template <class Fn>
void with_invariants(const std::string& source, int line, Fn&& fn) {
    try {
        fn();
    } catch (const InvariantError& e) {
        throw InvariantError(source + ":" + std::to_string(line) + ": " + e.what());
    }
}

} // namespace detail

/// Parse a material from INI text. `base_dir` resolves relative table paths.
inline MaterialRecord parse_material(const std::string& text, const std::string& source = "<memory>",
                                     const std::filesystem::path& base_dir = {}) {
    auto section = detail::parse_material_ini(text, source);
    detail::KeyReader keys(section, source);
    MaterialRecord rec;
    rec.name = keys.text("name");
    if (rec.name.empty()) throw ParseError(source, keys.line_of("name"), "empty material name");
    rec.description = keys.optional_text("description").value_or("");
    const std::string kind = keys.text("kind");
    const int kind_line = keys.line_of("kind");

    if (kind == "oscillator") {
        OscillatorModel m{keys.number("c_ir"), keys.number("c_uv"), keys.number("omega_ir_rad_s"),
                          keys.number("omega_uv_rad_s")};
        detail::with_invariants(source, kind_line, [&] { m.validate(); });
        rec.params = m;
    } else if (kind == "carriers") {
        CarrierRecord c;
        c.base = keys.text("base");
        c.carriers = {keys.number("n_density_m3"), keys.number("m_eff_e"), keys.number("m_eff_h")};
        c.gamma_e = keys.number("gamma_e_rad_s");
        c.gamma_h = keys.number("gamma_h_rad_s");
        detail::with_invariants(source, kind_line, [&] {
            c.carriers.validate();
            detail::require_positive(c.gamma_e, "gamma_e");
            detail::require_positive(c.gamma_h, "gamma_h");
            if (c.base.empty() || c.base == rec.name) throw InvariantError("carriers: base must name another material");
        });
        rec.params = c;
    } else if (kind == "drude") {
        DrudeModel m{keys.number("omega_p_rad_s"), keys.number("gamma_rad_s")};
        detail::with_invariants(source, kind_line, [&] { m.validate(); });
        rec.params = m;
    } else if (kind == "tabulated") {
        TabulatedRecord t;
        t.table_csv = keys.text("table_csv");
        const auto static_eps = keys.optional_number("static_eps");
        std::filesystem::path p(t.table_csv);
        if (p.is_relative()) p = base_dir / p;
        detail::with_invariants(source, keys.line_of("table_csv"), [&] {
            t.table = detail::read_table_csv(p.string(), static_eps);
            t.table.validate();
        });
        rec.params = std::move(t);
    } else if (kind == "constant") {
        ConstantModel m{keys.number("eps")};
        detail::with_invariants(source, kind_line, [&] { m.validate(); });
        rec.params = m;
    } else if (kind == "ideal_metal") {
        rec.params = IdealMetal{};
    } else {
        throw ParseError(source, kind_line, "unknown material kind '" + kind + "'");
    }
    keys.reject_unused();
    return rec;
}

inline MaterialRecord load_material(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open material file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_material(ss.str(), path.string(), path.parent_path());
}

/// Serialize to INI text. Numbers use the shortest exact representation, so
/// parse_material(to_ini(r)) == r.
inline std::string to_ini(const MaterialRecord& rec) {
    std::ostringstream out;
    out << "[material]\n";
    out << "name = " << rec.name << '\n';
    if (!rec.description.empty()) out << "description = " << rec.description << '\n';
    out << "kind = " << to_string(rec.kind()) << '\n';
    using csv::exact;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OscillatorModel>) {
                out << "c_ir = " << exact(p.c_ir) << "\nc_uv = " << exact(p.c_uv) << "\nomega_ir_rad_s = "
                    << exact(p.omega_ir) << "\nomega_uv_rad_s = " << exact(p.omega_uv) << '\n';
            } else if constexpr (std::is_same_v<T, CarrierRecord>) {
                out << "base = " << p.base << "\nn_density_m3 = " << exact(p.carriers.n_density)
                    << "\nm_eff_e = " << exact(p.carriers.m_eff_e) << "\nm_eff_h = " << exact(p.carriers.m_eff_h)
                    << "\ngamma_e_rad_s = " << exact(p.gamma_e) << "\ngamma_h_rad_s = " << exact(p.gamma_h) << '\n';
            } else if constexpr (std::is_same_v<T, DrudeModel>) {
                out << "omega_p_rad_s = " << exact(p.omega_p) << "\ngamma_rad_s = " << exact(p.gamma) << '\n';
            } else if constexpr (std::is_same_v<T, TabulatedRecord>) {
                out << "table_csv = " << p.table_csv << "\nstatic_eps = " << exact(p.table.static_value) << '\n';
            } else if constexpr (std::is_same_v<T, ConstantModel>) {
                out << "eps = " << exact(p.value) << '\n';
            }
        },
        rec.params);
    return out.str();
}

/// Write the INI file; a tabulated record also writes its CSV next to it
/// (at `table_csv`, relative to the INI directory unless absolute).
inline void save_material(const MaterialRecord& rec, const std::filesystem::path& path) {
    if (const auto* t = std::get_if<TabulatedRecord>(&rec.params)) {
        std::filesystem::path table(t->table_csv);
        if (table.is_relative()) table = path.parent_path() / table;
        std::ofstream tout(table);
        if (!tout) throw InputError("cannot write table file: " + table.string());
        csv::write_two_columns(tout, "xi_rad_s,eps", t->table.grid, t->table.values);
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write material file: " + path.string());
    out << to_ini(rec);
}

/// Directory holding the shipped material files; CASIMIR_MATERIALS_DIR overrides it.
inline std::filesystem::path default_materials_dir() {
    if (const char* env = std::getenv("CASIMIR_MATERIALS_DIR"); env && *env) return env;
    return CASIMIR_MATERIALS_DIR_DEFAULT;
}

/// Named material records with base-material resolution for carrier models.
class MaterialDatabase {
  public:
    MaterialDatabase() = default;

    /// Load every `*.ini` file in `dir`, in sorted path order.
    static MaterialDatabase from_directory(const std::filesystem::path& dir) {
        if (!std::filesystem::is_directory(dir)) throw InputError("material directory not found: " + dir.string());
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".ini") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        MaterialDatabase db;
        for (const auto& f : files) db.add(load_material(f));
        return db;
    }

    void add(MaterialRecord rec) {
        const std::string name = rec.name;
        if (records_.contains(name)) throw InputError("duplicate material name '" + name + "'");
        records_.emplace(name, std::move(rec));
    }

    /// Insert or replace.
    void put(MaterialRecord rec) {
        const std::string name = rec.name;
        records_.insert_or_assign(name, std::move(rec));
    }

    [[nodiscard]] bool contains(const std::string& name) const { return records_.contains(name); }

    [[nodiscard]] const MaterialRecord& record(const std::string& name) const {
        auto it = records_.find(name);
        if (it == records_.end()) throw InputError("unknown material '" + name + "'");
        return it->second;
    }

    [[nodiscard]] std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [n, r] : records_) out.push_back(n);
        return out;
    }

    [[nodiscard]] PermittivityModel model(const std::string& name, const PhysicalConstants& k = codata2018) const {
        std::set<std::string> visiting;
        return build(name, visiting, k);
    }

  private:
    PermittivityModel build(const std::string& name, std::set<std::string>& visiting, const PhysicalConstants& k) const {
        if (!visiting.insert(name).second) throw InputError("cyclic base reference through material '" + name + "'");
        const auto& rec = record(name);
        return std::visit(
            [&](const auto& p) -> PermittivityModel {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, CarrierRecord>)
                    return make_carrier_augmented(build(p.base, visiting, k), p.carriers, p.gamma_e, p.gamma_h, k);
                else if constexpr (std::is_same_v<T, TabulatedRecord>)
                    return p.table;
                else
                    return p;
            },
            rec.params);
    }

    std::map<std::string, MaterialRecord> records_;
};

} // namespace casimir
