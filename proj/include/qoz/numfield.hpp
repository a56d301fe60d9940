#pragma once
#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "qoz/error.hpp"

namespace qoz {

using Int = mpz_class;
using Rat = mpq_class; // kept canonical by gmp (coprime, positive denominator)

struct AlgNum;
using UPoly = std::vector<AlgNum>; // dense, coeff[i] at degree i, no trailing zeros; empty == 0

// Element of a number-field tower.  lvl == 0 holds a plain rational; lvl == k > 0
// holds a coefficient vector over level k-1 (power basis of the k-th generator),
// already reduced mod the minimal polynomial and with trailing zeros trimmed.
// A value whose vector would have length <= 1 is stored demoted at a lower level,
// so equal elements have identical representations.
struct AlgNum {
    int lvl = 0;
    Rat q;
    std::vector<AlgNum> c;

    AlgNum() = default;
    explicit AlgNum(const Rat& r) : q(r) { q.canonicalize(); } // mpq_class(a,b) is not auto-reduced
    explicit AlgNum(long v) : q(v) {}
};

class FieldTower {
public:
    struct Level {
        std::string name;
        UPoly minpoly; // monic, coefficients of level strictly below this one
    };

    std::vector<Level> levels;

    int depth() const { return (int)levels.size(); }
    int level_degree(int k) const { return (int)levels[k].minpoly.size() - 1; }
    long total_degree() const;

    static AlgNum from_rat(const Rat& r) { return AlgNum(r); }
    static AlgNum zero() { return AlgNum(); }
    static AlgNum one() { return AlgNum(Rat(1)); }
    AlgNum generator(int k) const; // the k-th generator as an element of level k+1

    bool is_zero(const AlgNum& a) const;
    bool eq(const AlgNum& a, const AlgNum& b) const;
    bool is_rat(const AlgNum& a) const { return a.lvl == 0; }

    AlgNum add(const AlgNum& a, const AlgNum& b) const;
    AlgNum sub(const AlgNum& a, const AlgNum& b) const;
    AlgNum neg(const AlgNum& a) const;
    AlgNum mul(const AlgNum& a, const AlgNum& b) const;
    AlgNum inv(const AlgNum& a) const;
    AlgNum div(const AlgNum& a, const AlgNum& b) const { return mul(a, inv(b)); }
    AlgNum pow(const AlgNum& a, long e) const;

    // Flatten to coordinates over Q in the full tower basis (size = total_degree()).
    std::vector<Rat> flatten(const AlgNum& a) const;
    // Deterministic total order used for reproducible factor/root choices.
    int cmp(const AlgNum& a, const AlgNum& b) const;

    std::string to_string(const AlgNum& a) const;

    // ---- univariate polynomials over the tower ----
    static UPoly up_from(std::vector<AlgNum> v) {
        UPoly p(std::move(v));
        while (!p.empty() && p.back().lvl == 0 && p.back().q == 0) p.pop_back();
        return p;
    }
    UPoly up_trim(UPoly p) const;
    static int up_deg(const UPoly& p) { return (int)p.size() - 1; } // -1 for 0
    bool up_is_zero(const UPoly& p) const { return p.empty(); }
    UPoly up_add(const UPoly& a, const UPoly& b) const;
    UPoly up_sub(const UPoly& a, const UPoly& b) const;
    UPoly up_neg(const UPoly& a) const;
    UPoly up_mul(const UPoly& a, const UPoly& b) const;
    UPoly up_scale(const UPoly& a, const AlgNum& s) const;
    // division with remainder; leading coefficient of b must be invertible
    void up_divmod(const UPoly& a, const UPoly& b, UPoly& quo, UPoly& rem) const;
    UPoly up_mod(const UPoly& a, const UPoly& b) const;
    UPoly up_monic(const UPoly& a) const;
    UPoly up_gcd(const UPoly& a, const UPoly& b) const; // monic gcd
    // extended gcd: g = s*a + t*b, g monic
    UPoly up_xgcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) const;
    UPoly up_derivative(const UPoly& a) const;
    AlgNum up_eval(const UPoly& a, const AlgNum& x) const;
    UPoly up_pow_mod(const UPoly& a, const Int& e, const UPoly& m) const;
    // substitute x -> x + sh
    UPoly up_shift(const UPoly& a, const AlgNum& sh) const;
    // resultant of two polynomials over the tower (Euclidean method)
    AlgNum up_resultant(const UPoly& a, const UPoly& b) const;
    std::string up_to_string(const UPoly& a, const std::string& var = "t") const;

private:
    AlgNum normalize(int lvl, std::vector<AlgNum> c) const;
    AlgNum lift_to(const AlgNum& a, int lvl) const;
    std::vector<AlgNum> coeffs_at(const AlgNum& a, int lvl) const;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

// ---- factorization (see factor.cpp) ----

struct FactorPart {
    UPoly factor; // monic
    int multiplicity;
};

// p = lc * prod q_i^{m_i}, q_i monic squarefree pairwise coprime (Yun)
std::vector<FactorPart> squarefree_decomposition(const FieldTower& F, const UPoly& p);

// complete factorization into monic irreducibles over the tower; the constant
// is dropped (recover it from the leading coefficient of p if needed)
std::vector<FactorPart> factor_irreducible(const FieldTower& F, const UPoly& p);

// returns the extended tower (may be the input tower) and a root of p in it;
// picks the (degree, coefficient-lex) first irreducible factor
std::pair<FieldTower, AlgNum> adjoin_root(const FieldTower& F, const UPoly& p,
                                          const std::string& name_hint = "");

// helper used by factor ordering and adjoin_root: true if a sorts before b
bool factor_order_less(const FieldTower& F, const UPoly& a, const UPoly& b);

} // namespace qoz
