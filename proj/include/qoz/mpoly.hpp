#pragma once
#include <map>
#include <string>
#include <vector>

#include "qoz/numfield.hpp"

namespace qoz {

// Polynomial in x1..xd and the distinguished last variable z, coefficients in a
// number-field tower.  Exponent vectors have length d+1 (z last); no zero
// coefficients are stored.
struct MPoly {
    int d = 0; // number of x variables
    std::map<std::vector<int>, AlgNum> terms;
};

// ---- ring operations (tower context passed explicitly, like UPoly) ----
MPoly mp_zero(int d);
MPoly mp_const(int d, const AlgNum& c);
MPoly mp_monomial(int d, const std::vector<int>& e, const AlgNum& c);
bool mp_is_zero(const MPoly& a);
bool mp_eq(const FieldTower& F, const MPoly& a, const MPoly& b);
MPoly mp_add(const FieldTower& F, const MPoly& a, const MPoly& b);
MPoly mp_sub(const FieldTower& F, const MPoly& a, const MPoly& b);
MPoly mp_neg(const FieldTower& F, const MPoly& a);
MPoly mp_mul(const FieldTower& F, const MPoly& a, const MPoly& b);
MPoly mp_scale(const FieldTower& F, const MPoly& a, const AlgNum& c);
MPoly mp_pow(const FieldTower& F, const MPoly& a, int e);
int mp_deg_z(const MPoly& a);               // -1 for zero
int mp_deg_var(const MPoly& a, int v);      // degree in variable v (0..d, d == z)
// coefficients of a as a polynomial in z (index = z-degree), entries have z-exp 0
std::vector<MPoly> mp_z_coeffs(const MPoly& a);
MPoly mp_from_z_coeffs(const FieldTower& F, int d, const std::vector<MPoly>& cs);
// substitute z -> z + s(x) (s must have z-degree <= 0)
MPoly mp_shift_z(const FieldTower& F, const MPoly& a, const MPoly& s);
// evaluate variable v at a rational value (result keeps the same variable count,
// with exponent 0 in v)
MPoly mp_eval_var(const FieldTower& F, const MPoly& a, int v, const AlgNum& val);
// exact division (errors InternalError if not exact)
MPoly mp_div_exact(const FieldTower& F, const MPoly& a, const MPoly& b);
// largest monomial x^m z^k dividing a; divides it out
MPoly mp_extract_monomial(const MPoly& a, std::vector<int>& mono);
std::string mp_to_string(const FieldTower& F, const MPoly& a,
                         const std::vector<std::string>& names);

// ---- parsing ----
// var_names lists the variables in order; the last one is z
MPoly parse(const FieldTower& F, const std::string& text,
            const std::vector<std::string>& var_names);

// ---- discriminant / quasi-ordinarity ----
// Res_z(f, df/dz) divided by the leading z-coefficient (raw sign convention)
MPoly discriminant_z(const FieldTower& F, const MPoly& f);
// true + exponent of the unique componentwise-minimal support element of D_z(f)
std::pair<bool, std::vector<int>> is_quasi_ordinary(const FieldTower& F, const MPoly& f);

// ---- the (h, omega) pair ----
struct FormExponents {
    std::vector<int> nu; // nu_j >= 1
};
struct QOPair {
    TowerPtr tower;
    MPoly residual;      // not divisible by z or by any x_j
    FormExponents nu;
    std::vector<int> N;  // monomial exponents factored out of h
    int epsilon = 0;     // 1 iff z divides h
    int d() const { return residual.d; }
};

// builds the pair from a full polynomial h: factors out x^N z^eps, checks the
// support condition N_j = 0 => nu_j = 1 and quasi-ordinarity of the z-squarefree part
QOPair make_qopair(TowerPtr tower, const MPoly& h, const FormExponents& nu);
// same, but skips the (expensive) discriminant test; for polynomials obtained
// from an already-validated pair by operations that preserve quasi-ordinarity
// (Newton-map pullbacks, z-shifts)
QOPair make_qopair_trusted(TowerPtr tower, const MPoly& h, const FormExponents& nu);
// the full polynomial x^N z^eps * residual
MPoly qopair_full(const QOPair& p);

struct ShiftLogEntry {
    MPoly shift;         // a(x) with z = z_new + a(x)
};
std::pair<QOPair, std::vector<ShiftLogEntry>> good_coordinates(const QOPair& p,
                                                               int max_shifts = 50);

struct EdgeData; // Newton-path edge (see cones.hpp)
QOPair newton_map_substitute(const QOPair& p, const EdgeData& e, const AlgNum& alpha);

// z-order of residual(0,...,0,z): 0 for a unit, 1 for a single smooth branch
// (possibly with an infinite-series root that no shift can remove), >= 2 otherwise
int residual_z_order(const QOPair& p);

std::vector<int> essential_variables(const QOPair& p);
// drops the variables not in essential_variables (their nu is forced to 1 by the
// support condition); returns the reduced pair and the kept variable indices
std::pair<QOPair, std::vector<int>> reduce_to_essential(const QOPair& p);

} // namespace qoz
