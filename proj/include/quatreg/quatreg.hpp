#pragma once

// Umbrella header: quaternion algebra, second-order jets, the expression
// language, quaternion-valued differential forms, the regularity
// characterizations and their randomized identity suite.  JSON serialization
// lives separately in quatreg/serialize.hpp because it pulls in a vendored
// dependency.

#include "quatreg/quaternion.hpp"
#include "quatreg/jet.hpp"
#include "quatreg/expr.hpp"
#include "quatreg/forms.hpp"
#include "quatreg/regularity.hpp"
#include "quatreg/sampling.hpp"
#include "quatreg/identities.hpp"
