#pragma once

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

/// Dielectric permittivities evaluated on the imaginary frequency axis, eps(i xi).
/// All frequencies are angular frequencies in rad/s.
namespace casimir {

inline constexpr double infinite_permittivity = std::numeric_limits<double>::infinity();

namespace detail {

inline void require_xi(double xi) {
    if (!(xi >= 0.0)) throw DomainError("permittivity: imaginary frequency must be >= 0, got " + std::to_string(xi));
}

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvariantError(std::string(name) + " must be finite and > 0");
}

inline void require_non_negative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvariantError(std::string(name) + " must be finite and >= 0");
}

} // namespace detail

/// Two-term Ninham-Parsegian form
///   eps(i xi) = 1 + C_IR / (1 + xi^2/w_IR^2) + C_UV / (1 + xi^2/w_UV^2).
struct OscillatorModel {
    double c_ir = 0.0;
    double c_uv = 0.0;
    double omega_ir = 1.0;
    double omega_uv = 1.0;

    void validate() const {
        detail::require_non_negative(c_ir, "c_ir");
        detail::require_non_negative(c_uv, "c_uv");
        detail::require_positive(omega_ir, "omega_ir");
        detail::require_positive(omega_uv, "omega_uv");
    }

    [[nodiscard]] double static_value() const { return 1.0 + c_ir + c_uv; }

    [[nodiscard]] double evaluate(double xi) const {
        detail::require_xi(xi);
        if (std::isinf(xi)) return 1.0;
        const double sir = xi / omega_ir;
        const double suv = xi / omega_uv;
        return 1.0 + c_ir / (1.0 + sir * sir) + c_uv / (1.0 + suv * suv);
    }
};

inline double eval_oscillator(const OscillatorModel& model, double xi) { return model.evaluate(xi); }

/// Single Drude term eps = 1 + w_p^2 / (xi (xi + gamma)). Diverges as xi -> 0.
struct DrudeModel {
    double omega_p = 1.0;
    double gamma = 1.0;

    void validate() const {
        detail::require_positive(omega_p, "omega_p");
        detail::require_positive(gamma, "gamma");
    }

    [[nodiscard]] double evaluate(double xi) const {
        detail::require_xi(xi);
        if (xi == 0.0) throw DivergenceError("drude permittivity diverges at xi = 0");
        return 1.0 + omega_p * omega_p / (xi * (xi + gamma));
    }
};

/// Frequency-independent permittivity (vacuum is value 1).
struct ConstantModel {
    double value = 1.0;

    void validate() const {
        if (!(value >= 1.0) || !std::isfinite(value)) throw InvariantError("constant permittivity must be finite and >= 1");
    }

    [[nodiscard]] double evaluate(double xi) const {
        detail::require_xi(xi);
        return value;
    }
};

/// Perfect conductor: infinite permittivity at every frequency, both
/// polarizations reflect with coefficient 1 including at xi = 0.
struct IdealMetal {
    void validate() const {}

    [[nodiscard]] double evaluate(double xi) const {
        detail::require_xi(xi);
        return infinite_permittivity;
    }
};

/// eps(i xi) sampled on a strictly increasing grid.
///
/// Inside the grid: linear interpolation in log xi (monotone between nodes).
/// Above the last node: eps - 1 decays as 1/xi^2.
/// Below the first node: linear in xi towards `static_value` when it is finite,
/// otherwise eps - 1 grows as 1/xi (metal-like).
struct TabulatedPermittivity {
    std::vector<double> grid;
    std::vector<double> values;
    double static_value = infinite_permittivity;

    void validate() const {
        if (grid.empty()) throw InvariantError("tabulated permittivity: empty table");
        if (grid.size() != values.size()) throw InvariantError("tabulated permittivity: grid/value size mismatch");
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (!(grid[j] > 0.0) || !std::isfinite(grid[j]))
                throw InvariantError("tabulated permittivity: grid frequencies must be finite and > 0");
            if (j > 0 && !(grid[j] > grid[j - 1]))
                throw InvariantError("tabulated permittivity: grid must be strictly increasing");
            if (!(values[j] >= 1.0) || !std::isfinite(values[j]))
                throw InvariantError("tabulated permittivity: values must be finite and >= 1");
            if (j > 0 && values[j] > values[j - 1])
                throw InvariantError("tabulated permittivity: values must be non-increasing in xi");
        }
        if (!(static_value >= values.front()))
            throw InvariantError("tabulated permittivity: static value must be >= first tabulated value");
    }

    [[nodiscard]] bool diverges_at_zero() const { return std::isinf(static_value); }

    [[nodiscard]] double evaluate(double xi) const {
        detail::require_xi(xi);
        if (xi == 0.0) {
            if (diverges_at_zero()) throw DivergenceError("tabulated permittivity diverges at xi = 0");
            return static_value;
        }
        const double x0 = grid.front();
        if (xi <= x0) {
            if (xi == x0) return values.front();
            if (diverges_at_zero()) return 1.0 + (values.front() - 1.0) * (x0 / xi);
            return static_value + (values.front() - static_value) * (xi / x0);
        }
        const double xn = grid.back();
        if (xi >= xn) {
            const double s = xn / xi;
            return 1.0 + (values.back() - 1.0) * s * s;
        }
        const auto hi = static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), xi) - grid.begin());
        const std::size_t lo = hi - 1;
        const double t = std::log(xi / grid[lo]) / std::log(grid[hi] / grid[lo]);
        return values[lo] + t * (values[hi] - values[lo]);
    }
};

struct CarrierAugmentedModel;

enum class ModelKind { oscillator, carriers, drude, tabulated, constant, ideal_metal };

inline std::string_view to_string(ModelKind k) {
    switch (k) {
    case ModelKind::oscillator: return "oscillator";
    case ModelKind::carriers: return "carriers";
    case ModelKind::drude: return "drude";
    case ModelKind::tabulated: return "tabulated";
    case ModelKind::constant: return "constant";
    case ModelKind::ideal_metal: return "ideal_metal";
    }
    return "unknown";
}

/// Value-semantic handle over any permittivity model. Copies share immutable
/// state, so a model can be evaluated from many threads at once.
class PermittivityModel {
  public:
    PermittivityModel() : PermittivityModel(ConstantModel{}) {}
    PermittivityModel(OscillatorModel m);
    PermittivityModel(DrudeModel m);
    PermittivityModel(ConstantModel m);
    PermittivityModel(IdealMetal m);
    PermittivityModel(TabulatedPermittivity m);
    PermittivityModel(CarrierAugmentedModel m);

    /// eps(i xi). Throws DivergenceError at xi = 0 for models with infinite static value.
    [[nodiscard]] double evaluate(double xi) const;
    [[nodiscard]] double operator()(double xi) const { return evaluate(xi); }

    [[nodiscard]] bool diverges_at_zero() const;
    /// eps(0); +infinity for divergent models.
    [[nodiscard]] double static_value() const;
    /// xi -> 0 limit of the TE reflection coefficient against a finite-permittivity
    /// medium. Only a perfect conductor keeps a nonzero TE reflection at zero frequency.
    [[nodiscard]] double te_zero_frequency_limit() const;

    [[nodiscard]] ModelKind kind() const;

    template <class T>
    [[nodiscard]] const T* get_if() const {
        if constexpr (std::is_same_v<T, CarrierAugmentedModel>)
            return carriers_.get();
        else
            return simple_ ? std::get_if<T>(simple_.get()) : nullptr;
    }

  private:
    using Simple = std::variant<OscillatorModel, DrudeModel, ConstantModel, IdealMetal, TabulatedPermittivity>;
    template <class M>
    static std::shared_ptr<const Simple> make_simple(M m) {
        m.validate();
        return std::make_shared<const Simple>(std::move(m));
    }

    std::shared_ptr<const Simple> simple_;
    std::shared_ptr<const CarrierAugmentedModel> carriers_;
};

/// Dark permittivity plus Drude terms for photo-excited electrons and holes:
///   eps_L = eps_base + w_pe^2 / (xi (xi + g_e)) + w_ph^2 / (xi (xi + g_h)).
struct CarrierAugmentedModel {
    PermittivityModel base;
    double omega_p_e = 1.0;
    double omega_p_h = 1.0;
    double gamma_e = 1.0;
    double gamma_h = 1.0;

    void validate() const {
        detail::require_positive(omega_p_e, "omega_p_e");
        detail::require_positive(omega_p_h, "omega_p_h");
        detail::require_positive(gamma_e, "gamma_e");
        detail::require_positive(gamma_h, "gamma_h");
    }

    /// Drude contribution of both carrier species alone.
    [[nodiscard]] double carrier_terms(double xi) const {
        detail::require_xi(xi);
        if (xi == 0.0) throw DivergenceError("carrier-augmented permittivity diverges at xi = 0");
        return omega_p_e * omega_p_e / (xi * (xi + gamma_e)) + omega_p_h * omega_p_h / (xi * (xi + gamma_h));
    }

    [[nodiscard]] double evaluate(double xi) const {
        const double extra = carrier_terms(xi);
        return base.evaluate(xi) + extra;
    }
};

inline double eval_with_carriers(const CarrierAugmentedModel& model, double xi) { return model.evaluate(xi); }

struct CarrierParameters {
    double n_density = 0.0; // m^-3
    double m_eff_e = 1.0;   // units of the free electron mass
    double m_eff_h = 1.0;

    void validate() const {
        detail::require_positive(n_density, "n_density");
        detail::require_positive(m_eff_e, "m_eff_e");
        detail::require_positive(m_eff_h, "m_eff_h");
    }
};

enum class Species { electron, hole };

/// w_p = sqrt(n e^2 / (m* eps_0)).
inline double plasma_frequency(const CarrierParameters& params, Species species,
                               const PhysicalConstants& k = codata2018) {
    params.validate();
    const double m_star = (species == Species::electron ? params.m_eff_e : params.m_eff_h) * k.m_electron;
    return std::sqrt(params.n_density * k.e_charge * k.e_charge / (m_star * k.eps_vacuum));
}

/// Silicon carrier relaxation rates and effective masses used by the shipped lit-Si material.
namespace silicon_carriers {
inline constexpr double gamma_e = 1.8e13;  // rad/s
inline constexpr double gamma_h = 5.0e12;  // rad/s
inline constexpr double m_eff_e = 0.2588;
inline constexpr double m_eff_h = 0.2063;
inline constexpr double n_illuminated = 2.1e25; // m^-3
} // namespace silicon_carriers

inline CarrierAugmentedModel make_carrier_augmented(PermittivityModel base, const CarrierParameters& carriers,
                                                    double gamma_e, double gamma_h,
                                                    const PhysicalConstants& k = codata2018) {
    CarrierAugmentedModel m{std::move(base), plasma_frequency(carriers, Species::electron, k),
                            plasma_frequency(carriers, Species::hole, k), gamma_e, gamma_h};
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------

inline PermittivityModel::PermittivityModel(OscillatorModel m) : simple_(make_simple(m)) {}
inline PermittivityModel::PermittivityModel(DrudeModel m) : simple_(make_simple(m)) {}
inline PermittivityModel::PermittivityModel(ConstantModel m) : simple_(make_simple(m)) {}
inline PermittivityModel::PermittivityModel(IdealMetal m) : simple_(make_simple(m)) {}
inline PermittivityModel::PermittivityModel(TabulatedPermittivity m) : simple_(make_simple(std::move(m))) {}
inline PermittivityModel::PermittivityModel(CarrierAugmentedModel m)
    : carriers_(std::make_shared<const CarrierAugmentedModel>((m.validate(), std::move(m)))) {}

inline double PermittivityModel::evaluate(double xi) const {
    if (carriers_) return carriers_->evaluate(xi);
    return std::visit([xi](const auto& m) { return m.evaluate(xi); }, *simple_);
}

inline bool PermittivityModel::diverges_at_zero() const {
    if (carriers_) return true;
    switch (simple_->index()) {
    case 1: // drude
    case 3: // ideal metal
        return true;
    case 4: return std::get<TabulatedPermittivity>(*simple_).diverges_at_zero();
    default: return false;
    }
}

inline double PermittivityModel::static_value() const {
    if (diverges_at_zero()) return infinite_permittivity;
    return evaluate(0.0);
}

inline double PermittivityModel::te_zero_frequency_limit() const {
    return (simple_ && std::holds_alternative<IdealMetal>(*simple_)) ? 1.0 : 0.0;
}

inline ModelKind PermittivityModel::kind() const {
    if (carriers_) return ModelKind::carriers;
    switch (simple_->index()) {
    case 0: return ModelKind::oscillator;
    case 1: return ModelKind::drude;
    case 2: return ModelKind::constant;
    case 3: return ModelKind::ideal_metal;
    default: return ModelKind::tabulated;
    }
}

/// Sample `model` on `grid` into a table, keeping its static behaviour.
inline TabulatedPermittivity tabulate(const PermittivityModel& model, std::span<const double> grid) {
    TabulatedPermittivity t;
    t.grid.assign(grid.begin(), grid.end());
    t.values.reserve(grid.size());
    for (double xi : grid) t.values.push_back(model.evaluate(xi));
    t.static_value = model.static_value();
    t.validate();
    return t;
}

} // namespace casimir
