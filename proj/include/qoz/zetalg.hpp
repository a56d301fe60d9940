#pragma once
#include <map>
#include <string>
#include <vector>

#include "qoz/numfield.hpp"

namespace qoz {

// ---- rational functions in s with factored linear denominators ----
//
// value = num(s) / prod (N s + nu)^mult, with (N, nu) primitive integer pairs.
// Cancellation is exact: a factor is cancelled only when the numerator is
// exactly divisible by N s + nu.
struct RatFuncS {
    std::vector<Rat> num;                    // dense in s, no trailing zeros; empty == 0
    std::map<std::pair<Int, Int>, int> den;  // (N, nu) -> multiplicity
};

RatFuncS rf_zero();
RatFuncS rf_const(const Rat& c);
// c / prod (N s + nu) over the given pairs (repeats allowed)
RatFuncS rf_atom(const Rat& c, const std::vector<std::pair<Int, Int>>& dens);
RatFuncS rf_add(const RatFuncS& a, const RatFuncS& b);
RatFuncS rf_sub(const RatFuncS& a, const RatFuncS& b);
RatFuncS rf_neg(const RatFuncS& a);
RatFuncS rf_mul(const RatFuncS& a, const RatFuncS& b);
RatFuncS rf_scale(const RatFuncS& a, const Rat& c);
bool rf_is_zero(const RatFuncS& a);
bool rf_eq(const RatFuncS& a, const RatFuncS& b);
// poles as (N, nu) -> order, for the canonical (fully cancelled) form; N > 0 only
std::map<std::pair<Int, Int>, int> rf_poles(const RatFuncS& a);
std::string rf_to_string(const RatFuncS& a);

// dense polynomial helpers in s (shared with the chi-specialization machinery)
std::vector<Rat> sp_trim(std::vector<Rat> p);
std::vector<Rat> sp_add(const std::vector<Rat>& a, const std::vector<Rat>& b);
std::vector<Rat> sp_mul(const std::vector<Rat>& a, const std::vector<Rat>& b);
Rat sp_eval(const std::vector<Rat>& p, const Rat& x);

// ---- motivic expressions ----
//
// Sum of terms  num(L, T) / prod (1 - L^{-a} T^b)^mult  with num a Laurent
// polynomial in L and polynomial in T.  (a, b) has a >= 0, b >= 0, not both 0;
// b = 0 factors (1 - L^{-a}) are T-free and legal.
using LTPoly = std::map<std::pair<long, long>, Rat>; // (L-exponent, T-exponent) -> coeff

LTPoly lt_monomial(long le, long te, const Rat& c);
LTPoly lt_add(const LTPoly& a, const LTPoly& b);
LTPoly lt_mul(const LTPoly& a, const LTPoly& b);
LTPoly lt_neg(const LTPoly& a);
bool lt_is_zero(const LTPoly& a);
// (L - 1)^k as an LTPoly
LTPoly lt_Lminus1_pow(int k);

struct METerm {
    LTPoly num;
    std::map<std::pair<long, long>, int> den; // (a, b) -> multiplicity
};
struct MotivicExpr {
    std::vector<METerm> terms;
};

MotivicExpr me_zero();
MotivicExpr me_from(const LTPoly& num,
                    const std::vector<std::pair<long, long>>& dens = {});
MotivicExpr me_add(const MotivicExpr& a, const MotivicExpr& b);
MotivicExpr me_sub(const MotivicExpr& a, const MotivicExpr& b);
MotivicExpr me_neg(const MotivicExpr& a);
MotivicExpr me_mul(const MotivicExpr& a, const MotivicExpr& b);
MotivicExpr me_scale(const MotivicExpr& a, const LTPoly& c);
bool me_eq(const MotivicExpr& a, const MotivicExpr& b);
bool me_is_zero(const MotivicExpr& a);
std::string me_to_string(const MotivicExpr& a);

// power-series expansion in T up to degree maxdeg: result[k] = coefficient of
// T^k as a Laurent polynomial in L.  Requires every denominator to have b > 0.
std::vector<std::map<long, Rat>> me_series_T(const MotivicExpr& a, int maxdeg);

// T = L^{-s}, L = 1 + eps, expand in eps, require no negative powers survive,
// return the eps^0 coefficient (the topological specialization)
RatFuncS chi_specialize(const MotivicExpr& a);

} // namespace qoz
