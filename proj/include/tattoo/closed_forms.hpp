#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tattoo/rational.hpp"

namespace tattoo {

/// Printed closed forms for named families, evaluated exactly. These are the
/// published values, kept independent of the engine so the two can be
/// compared; they are transcribed as stated, not corrected.
struct FamilyFormulaResult {
    long b_tau;
    Rational fsg_index;
    std::string source;  // which formula (and case) produced the values
};

/// Fr(3,n): b_tau = 2(n-1), index = 3n / (2(n-1)(3n^2 - 5n + 6)). n >= 2.
FamilyFormulaResult fr3_formulas(long n);

/// General friendship graph from (cycle length, copies) families. The last
/// family must have the smallest cycle length; its copy count q selects the
/// case of the index formula. kappa = total copies >= 2.
FamilyFormulaResult general_fr_formulas(const std::vector<std::pair<long, long>>& families);

/// Joost graph with k paths of order n: b_tau = k and a three-case index.
FamilyFormulaResult joost_formulas(long n, long k);

/// Tattoo number of the cycle C_n, n >= 3.
long cycle_tau(long n);

}  // namespace tattoo
