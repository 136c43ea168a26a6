#pragma once

#include "casimir/analysis.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/kramers_kronig.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"
#include "casimir/permittivity.hpp"
#include "casimir/presets.hpp"
