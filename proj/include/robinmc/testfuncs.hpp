#pragma once

#include <string>
#include <vector>

#include "robinmc/estimators.hpp"
#include "robinmc/geometry.hpp"

namespace robinmc {

// Built-in test-function registry: new functions are code, not config.
// Sup-norm bounds are taken over the closed domain.
TestFunction make_test_function(const std::string& name, const Domain& dom);

std::vector<std::string> test_function_names();

}  // namespace robinmc
