#ifndef PROCOMP_CONFIG_HPP
#define PROCOMP_CONFIG_HPP

#include <string>

#include "procomp/harness.hpp"

namespace procomp {

// Strict JSON <-> ExperimentSpec mapping: keys are named exactly as the
// struct fields, unknown keys are rejected. See docs/config.md for the
// grammar and the defaults.
ExperimentSpec parse_experiment_json(const std::string& text);
ExperimentSpec load_experiment_file(const std::string& path);
std::string experiment_to_json(const ExperimentSpec& spec);

}  // namespace procomp

#endif
