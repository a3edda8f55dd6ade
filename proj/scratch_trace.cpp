#include <algorithm>
#include <cstdio>
#include <vector>

#include "procomp/catalog.hpp"
#include "procomp/harness.hpp"
#include "procomp/order_conditions.hpp"

using namespace procomp;

namespace {

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<int> idx(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return v[x] < v[y]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
        return r;
    };
    const std::vector<double> ra = ranks(a), rb = ranks(b);
    const double n = static_cast<double>(a.size());
    double d2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace

int main(int argc, char** argv) {
    const double budget = argc > 1 ? std::atof(argv[1]) : 40.0;
    const std::uint64_t mseed = argc > 2 ? std::atoll(argv[2]) : 12345;
    ExperimentSpec s;
    s.experiment = "trace";
    s.problem.kind = "linear";
    s.problem.dim = 50;
    s.problem.matrix_seed = mseed;
    s.map_kind = "first_order";
    s.methods = {"PSI4_4", "PSI5_4", "PSI6_4", "PSI7_4", "PSI8_4", "PSI9_4"};
    s.t_f = 10.0;
    s.cost_budget = budget;
    s.jobs = 6;

    ExperimentResult result = run_trace_test(s);
    std::vector<double> errors, eff5;
    for (const auto& id : s.methods) {
        for (const auto& r : result.rows)
            if (r.method == id) {
                errors.push_back(r.value);
                std::printf("%s h=%.4f trace_err=%.6e\n", id.c_str(), r.h, r.value);
            }
        eff5.push_back(kernel_report(catalog_get(id).scheme()).eff5);
    }
    std::printf("budget %.1f seed %llu: spearman(error, eff5) = %.3f\n", budget,
                static_cast<unsigned long long>(mseed), spearman(errors, eff5));
    return 0;
}
