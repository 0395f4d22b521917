#include "tattoo/closed_forms.hpp"

#include <stdexcept>

namespace tattoo {

FamilyFormulaResult fr3_formulas(long n) {
    if (n < 2) throw std::domain_error("Fr(3,n) formulas need n >= 2, got " + std::to_string(n));
    long b = 2 * (n - 1);
    return {b, Rational(3 * n, b * (3 * n * n - 5 * n + 6)), "friendship-3"};
}

FamilyFormulaResult general_fr_formulas(const std::vector<std::pair<long, long>>& families) {
    if (families.empty()) throw std::domain_error("general friendship formulas need at least one family");
    long kappa = 0, edges = 0;
    for (const auto& [len, copies] : families) {
        if (len < 3) throw std::domain_error("cycle length must be >= 3, got " + std::to_string(len));
        if (copies < 1) throw std::domain_error("copy count must be >= 1, got " + std::to_string(copies));
        kappa += copies;
        edges += len * copies;
    }
    if (kappa < 2) throw std::domain_error("general friendship formulas need kappa >= 2, got " + std::to_string(kappa));
    auto [t, q] = families.back();
    for (const auto& [len, copies] : families) {
        if (len < t) throw std::domain_error("the last family must have the smallest cycle length");
    }
    long weight = 10;
    for (size_t i = 0; i + 1 < families.size(); ++i) weight += families[i].second * (families[i].first + 1);
    long b = 2 * (kappa - 1);
    if (q >= 2) {
        weight += (q - 1) * (t + 1);
        return {b, Rational(edges, b * weight), "general-friendship q>=2"};
    }
    return {b, Rational(edges, b * weight), "general-friendship q=1"};
}

FamilyFormulaResult joost_formulas(long n, long k) {
    if (n < 3) throw std::domain_error("Joost formulas need n >= 3, got " + std::to_string(n));
    if (k < 1) throw std::domain_error("Joost formulas need k >= 1, got " + std::to_string(k));
    if (k == 1) return {k, Rational(1), "joost k=1"};
    if (k == 2) return {k, Rational(2 * (n - 1), 2 * n - 1), "joost k=2"};
    return {k, Rational(2 * k * (n - 1), 2 * n + (n - 1) * k * (k - 1)), "joost k>=3"};
}

long cycle_tau(long n) {
    if (n < 3) throw std::domain_error("cycles need n >= 3, got " + std::to_string(n));
    return 2;
}

}  // namespace tattoo
