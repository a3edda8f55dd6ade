#include "procomp/composition.hpp"

#include <cmath>
#include <stdexcept>

namespace procomp {

std::vector<double> palindromic_expand(std::span<const double> half) {
    std::vector<double> full(half.begin(), half.end());
    full.insert(full.end(), half.rbegin(), half.rend());
    return full;
}

std::vector<double> CompositionScheme::full_alpha() const {
    if (palindromic) return palindromic_expand(half_alpha);
    return half_alpha;  // non-palindromic schemes carry the full vector
}

void CompositionScheme::require_consistent(double tol) const {
    double sum = 0.0;
    for (double a : full_alpha()) sum += a;
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("scheme '" + name + "' inconsistent: coefficients sum to " +
                                    std::to_string(sum) + ", expected 1");
}

double ProcessorScheme::one_norm() const {
    double n = 0.0;
    for (double b : beta) n += std::abs(b);
    return n;
}

SplittingScheme to_splitting(std::span<const double> alpha_full) {
    if (alpha_full.size() % 2 != 0)
        throw std::invalid_argument("to_splitting: need an even-length alpha vector");
    const std::size_t s = alpha_full.size() / 2;
    auto alpha = [&](std::size_t i) {  // 1-based, alpha_{2s+1} = 0
        return i <= 2 * s ? alpha_full[i - 1] : 0.0;
    };
    SplittingScheme out;
    out.a.resize(s + 1);
    out.b.resize(s);
    out.a[0] = alpha(1);
    for (std::size_t j = 1; j <= s; ++j) {
        out.a[j] = alpha(2 * j) + alpha(2 * j + 1);
        out.b[j - 1] = alpha(2 * j - 1) + alpha(2 * j);
    }
    return out;
}

SplittingScheme to_splitting(const CompositionScheme& scheme) {
    return to_splitting(std::span<const double>(scheme.full_alpha()));
}

}  // namespace procomp
