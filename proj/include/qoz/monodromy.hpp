#pragma once
#include "qoz/zeta.hpp"

namespace qoz {

// product of factors (1 - t^a)^e, exact
struct CycloProduct {
    std::map<Int, int> factors;  // a -> nonzero exponent
};

CycloProduct cp_one();
CycloProduct cp_factor(const Int& a, int e = 1);
CycloProduct cp_mul(const CycloProduct& x, const CycloProduct& y);
CycloProduct cp_pow(const CycloProduct& x, int e);
bool cp_eq(const CycloProduct& x, const CycloProduct& y);
std::string cp_to_string(const CycloProduct& x);
// degree of the rational function (= Euler characteristic of the Milnor fiber)
Int cp_degree(const CycloProduct& x);

// monodromy zeta function at the origin of a plane-curve pair (d = 1)
CycloProduct zeta_monodromy_curve(const QOPair& p);

// monodromy zeta function at the origin of an arbitrary plane-curve germ
// h(x, z), possibly non-reduced (repeated factors and monomial factors are
// allowed); used for coordinate-plane restrictions of higher-dimensional input
CycloProduct zeta_monodromy_plane(TowerPtr tower, const MPoly& h);

// monodromy zeta function at the origin of a quasi-ordinary pair: for d >= 2
// either the shortcut 1 - t^n (several nonzero entries in the smallest
// characteristic exponent) or reduction to a coordinate plane
CycloProduct zeta_monodromy_qo(const QOPair& p);

// true iff exp(-2 pi i nu / N) is a zero or pole of the product
bool eigenvalue_check(const Int& N, const Int& nu, const CycloProduct& zeta);

struct PoleVerdict {
    std::pair<Int, Int> pole;  // (N, nu), candidate s = -nu/N
    std::string status;        // VERIFIED_AT_ORIGIN | VERIFIED_ON_COORDINATE_STRATUM |
                               // DEFERRED_TO_TRANSVERSAL_SECTION
    std::string witness;       // the zeta function (or stratum) used
};

std::vector<PoleVerdict> check_conjecture(const QOPair& p);

}  // namespace qoz
