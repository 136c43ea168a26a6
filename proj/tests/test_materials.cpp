#include "casimir/materials.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

using namespace casimir;
namespace fs = std::filesystem;

namespace {

fs::path shipped_dir() { return default_materials_dir(); }

class TempDir {
  public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("casimir_test_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

  private:
    fs::path path_;
};

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

} // namespace

TEST(MaterialFiles, EthanolParameters) {
    const auto rec = load_material(shipped_dir() / "ethanol.ini");
    EXPECT_EQ(rec.name, "ethanol");
    ASSERT_EQ(rec.kind(), ModelKind::oscillator);
    const auto& m = std::get<OscillatorModel>(rec.params);
    EXPECT_EQ(m.c_ir, 23.84);
    EXPECT_EQ(m.c_uv, 0.852);
    EXPECT_EQ(m.omega_ir, 6.600e14);
    EXPECT_EQ(m.omega_uv, 1.140e16);
}

TEST(MaterialFiles, ShippedSetRoundTripsExactly) {
    TempDir tmp;
    for (const auto& entry : fs::directory_iterator(shipped_dir())) {
        if (entry.path().extension() != ".ini") continue;
        const auto rec = load_material(entry.path());
        const auto out = tmp.path() / entry.path().filename();
        save_material(rec, out);
        EXPECT_EQ(load_material(out), rec) << entry.path();
    }
}

TEST(MaterialFiles, TabulatedRoundTripKeepsFullPrecision) {
    TempDir tmp;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TabulatedRecord t;
    t.table_csv = "random_table.csv";
    double v = 40.0 + u(rng);
    for (int i = 0; i < 50; ++i) {
        t.table.grid.push_back(1e12 * std::pow(10.0, 0.1 * i + 0.01 * u(rng)));
        v = 1.0 + (v - 1.0) * (0.5 + 0.5 * u(rng));
        t.table.values.push_back(v);
    }
    t.table.static_value = 41.0 + 1.0 / 3.0;
    const MaterialRecord rec{"random", "round trip", t};
    save_material(rec, tmp.path() / "random.ini");
    const auto back = load_material(tmp.path() / "random.ini");
    EXPECT_EQ(back, rec);
    EXPECT_EQ(std::get<TabulatedRecord>(back.params).table.values, t.table.values);
}

TEST(MaterialFiles, NegativeOscillatorStrengthIsInvariantError) {
    const std::string text = "[material]\nname = bad\nkind = oscillator\nc_ir = -1\nc_uv = 1\n"
                             "omega_ir_rad_s = 1e14\nomega_uv_rad_s = 1e16\n";
    EXPECT_THROW(parse_material(text), InvariantError);
}

TEST(MaterialFiles, ParseErrorsCarryLineNumbers) {
    try {
        parse_material("# comment\n[material]\nname = x\nkind = oscillator\nc_ir = abc\n", "f.ini");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5);
        EXPECT_NE(std::string(e.what()).find("f.ini:5"), std::string::npos);
    }
    try {
        parse_material("[material]\nname = x\nkind = constant\neps = 2\ncolour = red\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5);
    }
    try {
        parse_material("[material]\nname = x\nkind = constant\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1); // missing key reported at the section header
    }
    EXPECT_THROW(parse_material("name = x\n"), ParseError);
    EXPECT_THROW(parse_material("[other]\n"), ParseError);
    EXPECT_THROW(parse_material("[material]\nname = a\nname = b\n"), ParseError);
    EXPECT_THROW(parse_material("[material]\nname such\n"), ParseError);
}

TEST(MaterialFiles, UnknownKindRejected) {
    try {
        parse_material("[material]\nname = x\nkind = plasma\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
}

TEST(MaterialFiles, TabulatedStaticFromZeroRow) {
    TempDir tmp;
    write(tmp.path() / "t.csv", "xi_rad_s,eps\n0,12\n1e13,11\n1e14,8\n1e15,2\n");
    write(tmp.path() / "t.ini", "[material]\nname = t\nkind = tabulated\ntable_csv = t.csv\n");
    const auto rec = load_material(tmp.path() / "t.ini");
    const auto& tab = std::get<TabulatedRecord>(rec.params).table;
    EXPECT_EQ(tab.static_value, 12.0);
    EXPECT_EQ(tab.grid.size(), 3u);
}

TEST(MaterialFiles, TabulatedInvariantsCheckedOnLoad) {
    TempDir tmp;
    write(tmp.path() / "t.csv", "1e13,5\n1e14,8\n");
    write(tmp.path() / "t.ini", "[material]\nname = t\nkind = tabulated\ntable_csv = t.csv\n");
    EXPECT_THROW(load_material(tmp.path() / "t.ini"), InvariantError);
    write(tmp.path() / "u.ini", "[material]\nname = u\nkind = tabulated\ntable_csv = missing.csv\n");
    EXPECT_THROW(load_material(tmp.path() / "u.ini"), InputError);
}

TEST(MaterialDatabaseTest, LoadsShippedDirectoryAndResolvesBases) {
    const auto db = MaterialDatabase::from_directory(shipped_dir());
    for (const char* n : {"ethanol", "alumina", "silicon", "silicon_lit", "gold", "vacuum", "ideal_metal"})
        EXPECT_TRUE(db.contains(n)) << n;
    const auto lit = db.model("silicon_lit");
    EXPECT_EQ(lit.kind(), ModelKind::carriers);
    const auto dark = db.model("silicon");
    EXPECT_DOUBLE_EQ(dark.static_value(), 11.66);
    EXPECT_GT(lit.evaluate(1e14), dark.evaluate(1e14));
    EXPECT_THROW(db.model("unobtainium"), InputError);
}

TEST(MaterialDatabaseTest, CyclicBasesRejected) {
    MaterialDatabase db;
    db.add(parse_material("[material]\nname = a\nkind = carriers\nbase = b\nn_density_m3 = 1e25\nm_eff_e = 1\n"
                          "m_eff_h = 1\ngamma_e_rad_s = 1e13\ngamma_h_rad_s = 1e13\n"));
    db.add(parse_material("[material]\nname = b\nkind = carriers\nbase = a\nn_density_m3 = 1e25\nm_eff_e = 1\n"
                          "m_eff_h = 1\ngamma_e_rad_s = 1e13\ngamma_h_rad_s = 1e13\n"));
    EXPECT_THROW(db.model("a"), InputError);
    EXPECT_THROW(db.add(db.record("a")), InputError);
}

TEST(MaterialDatabaseTest, EnvironmentOverridesDirectory) {
    TempDir tmp;
    write(tmp.path() / "water.ini", "[material]\nname = water\nkind = constant\neps = 1.77\n");
    const char* old = std::getenv("CASIMIR_MATERIALS_DIR");
    const std::string saved = old ? old : "";
    setenv("CASIMIR_MATERIALS_DIR", tmp.path().c_str(), 1);
    const auto db = MaterialDatabase::from_directory(default_materials_dir());
    EXPECT_TRUE(db.contains("water"));
    EXPECT_FALSE(db.contains("ethanol"));
    if (old)
        setenv("CASIMIR_MATERIALS_DIR", saved.c_str(), 1);
    else
        unsetenv("CASIMIR_MATERIALS_DIR");
}
