#include "procomp/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace procomp {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!known.count(key))
            throw std::invalid_argument("unknown key '" + key + "' in " + where);
}

ProblemConfig parse_problem(const json& j) {
    ProblemConfig p;
    reject_unknown(j, {"kind", "dim", "matrix_seed", "n_parts", "q", "mass", "alpha_field", "x0",
                       "v0", "energy", "angmom", "charge", "r0", "theta0", "p_theta0", "h_value",
                       "paper_literal"},
                   "problem");
    p.kind = j.value("kind", p.kind);
    if (p.kind != "linear" && p.kind != "lorentz" && p.kind != "rn")
        throw std::invalid_argument("problem.kind must be linear, lorentz or rn");
    p.dim = j.value("dim", p.dim);
    p.matrix_seed = j.value("matrix_seed", p.matrix_seed);
    p.n_parts = j.value("n_parts", p.n_parts);
    p.q = j.value("q", p.q);
    p.mass = j.value("mass", p.mass);
    p.alpha_field = j.value("alpha_field", p.alpha_field);
    if (j.count("x0")) p.x0 = j.at("x0").get<std::array<double, 3>>();
    if (j.count("v0")) p.v0 = j.at("v0").get<std::array<double, 3>>();
    p.energy = j.value("energy", p.energy);
    p.angmom = j.value("angmom", p.angmom);
    p.charge = j.value("charge", p.charge);
    p.r0 = j.value("r0", p.r0);
    p.theta0 = j.value("theta0", p.theta0);
    p.p_theta0 = j.value("p_theta0", p.p_theta0);
    p.h_value = j.value("h_value", p.h_value);
    p.paper_literal = j.value("paper_literal", p.paper_literal);
    return p;
}

}  // namespace

ExperimentSpec parse_experiment_json(const std::string& text) {
    json j = json::parse(text);
    reject_unknown(j, {"experiment", "problem", "methods", "optional_methods", "map_kind",
                       "ordering", "cost_budget", "h_values", "t_f", "sweep_variable",
                       "sweep_grid", "seed", "checkpoints", "full_orderings", "error_metric",
                       "jobs"},
                   "experiment spec");
    ExperimentSpec s;
    s.experiment = j.at("experiment").get<std::string>();
    if (j.count("problem")) s.problem = parse_problem(j.at("problem"));
    s.methods = j.value("methods", s.methods);
    s.optional_methods = j.value("optional_methods", s.optional_methods);
    s.map_kind = j.value("map_kind", s.map_kind);
    s.ordering = j.value("ordering", s.ordering);
    s.cost_budget = j.value("cost_budget", s.cost_budget);
    s.h_values = j.value("h_values", s.h_values);
    s.t_f = j.value("t_f", s.t_f);
    s.sweep_variable = j.value("sweep_variable", s.sweep_variable);
    s.sweep_grid = j.value("sweep_grid", s.sweep_grid);
    s.seed = j.value("seed", s.seed);
    s.checkpoints = j.value("checkpoints", s.checkpoints);
    s.full_orderings = j.value("full_orderings", s.full_orderings);
    s.error_metric = j.value("error_metric", s.error_metric);
    s.jobs = j.value("jobs", s.jobs);
    return s;
}

ExperimentSpec load_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_experiment_json(text);
}

std::string experiment_to_json(const ExperimentSpec& s) {
    json j;
    j["experiment"] = s.experiment;
    json p;
    p["kind"] = s.problem.kind;
    if (s.problem.kind == "linear") {
        p["dim"] = s.problem.dim;
        p["matrix_seed"] = s.problem.matrix_seed;
        p["n_parts"] = s.problem.n_parts;
    } else if (s.problem.kind == "lorentz") {
        p["q"] = s.problem.q;
        p["mass"] = s.problem.mass;
        p["alpha_field"] = s.problem.alpha_field;
        p["x0"] = s.problem.x0;
        p["v0"] = s.problem.v0;
    } else {
        p["energy"] = s.problem.energy;
        p["angmom"] = s.problem.angmom;
        p["charge"] = s.problem.charge;
        p["r0"] = s.problem.r0;
        p["theta0"] = s.problem.theta0;
        p["p_theta0"] = s.problem.p_theta0;
        p["h_value"] = s.problem.h_value;
    }
    p["paper_literal"] = s.problem.paper_literal;
    j["problem"] = std::move(p);
    j["methods"] = s.methods;
    if (!s.optional_methods.empty()) j["optional_methods"] = s.optional_methods;
    j["map_kind"] = s.map_kind;
    if (!s.ordering.empty()) j["ordering"] = s.ordering;
    if (s.cost_budget > 0) j["cost_budget"] = s.cost_budget;
    if (!s.h_values.empty()) j["h_values"] = s.h_values;
    j["t_f"] = s.t_f;
    if (!s.sweep_variable.empty()) j["sweep_variable"] = s.sweep_variable;
    if (!s.sweep_grid.empty()) j["sweep_grid"] = s.sweep_grid;
    j["seed"] = s.seed;
    j["checkpoints"] = s.checkpoints;
    j["full_orderings"] = s.full_orderings;
    j["error_metric"] = s.error_metric;
    j["jobs"] = s.jobs;
    return j.dump(2);
}

}  // namespace procomp
