// Dark and lit pressure for the three shipped plate pairs, plus the first
// sign change of each curve on 50-500 nm.
#include "casimir/casimir.hpp"

#include <cstdio>

int main() {
    using namespace casimir;
    const auto db = MaterialDatabase::from_directory(default_materials_dir());
    for (const auto& preset : presets) {
        const auto s = make_preset_scenario(db, preset.name);
        const auto m = modulation_depth(s, 200e-9);
        std::printf("%-18s  a = 200 nm  dark %+.4e Pa  lit %+.4e Pa\n", std::string(preset.name).c_str(),
                    m.dark.pressure, m.lit.pressure);
        for (const auto* sys : {&s.dark_system, &s.lit_system}) {
            const auto c = find_crossover(*sys, s.a_min, s.a_max);
            const char* tag = sys == &s.dark_system ? "dark" : "lit ";
            if (c)
                std::printf("    %s crossover at %.2f nm\n", tag, c->separation * 1e9);
            else
                std::printf("    %s no sign change\n", tag);
        }
    }
}
