#pragma once

#include <string>
#include <vector>

namespace iqsim::recipes {

struct Recipe {
    std::string name;
    std::string description;
    std::string config_text;
};

const std::vector<Recipe>& all();

// Throws ConfigError when the name is unknown.
const Recipe& find(const std::string& name);

} // namespace iqsim::recipes
