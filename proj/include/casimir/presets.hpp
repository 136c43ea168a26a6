#pragma once

#include "casimir/analysis.hpp"
#include "casimir/materials.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace casimir {

struct PresetSpec {
    std::string_view name;
    std::string_view plate1;
    std::string_view medium;
    std::string_view plate2;
    std::string_view plate2_lit;
};

/// The three illuminated-Si plate pairs in ethanol. Plate 2 is the Si plate.
inline constexpr std::array<PresetSpec, 3> presets{{
    {"au-ethanol-si", "gold", "ethanol", "silicon", "silicon_lit"},
    {"si-ethanol-si", "silicon", "ethanol", "silicon", "silicon_lit"},
    {"al2o3-ethanol-si", "alumina", "ethanol", "silicon", "silicon_lit"},
}};

inline const PresetSpec& find_preset(std::string_view name) {
    for (const auto& p : presets)
        if (p.name == name) return p;
    throw InputError("unknown preset '" + std::string(name) + "' (expected au-ethanol-si, si-ethanol-si or al2o3-ethanol-si)");
}

/// Lit model for plate 2, optionally with a different carrier density.
inline PermittivityModel lit_model(const MaterialDatabase& db, std::string_view lit_name,
                                   std::optional<double> carrier_density = std::nullopt) {
    if (!carrier_density) return db.model(std::string(lit_name));
    MaterialDatabase copy = db;
    MaterialRecord rec = db.record(std::string(lit_name));
    auto* c = std::get_if<CarrierRecord>(&rec.params);
    if (!c) throw InputError("material '" + std::string(lit_name) + "' is not a carrier model");
    c->carriers.n_density = *carrier_density;
    c->carriers.validate();
    copy.put(std::move(rec));
    return copy.model(std::string(lit_name));
}

inline Scenario make_preset_scenario(const MaterialDatabase& db, std::string_view preset, double temperature = 300.0,
                                     std::optional<double> carrier_density = std::nullopt) {
    const auto& p = find_preset(preset);
    LayerSystem dark{db.model(std::string(p.plate1)), db.model(std::string(p.medium)), db.model(std::string(p.plate2)),
                     temperature};
    return make_scenario(std::string(p.name), dark, lit_model(db, p.plate2_lit, carrier_density));
}

} // namespace casimir
