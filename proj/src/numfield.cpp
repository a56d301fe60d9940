#include "qoz/numfield.hpp"

#include <algorithm>
#include <sstream>

namespace qoz {

long FieldTower::total_degree() const {
    long d = 1;
    for (int k = 0; k < depth(); ++k) d *= level_degree(k);
    return d;
}

AlgNum FieldTower::generator(int k) const {
    check(k >= 0 && k < depth(), "InvalidInput", "generator level out of range");
    AlgNum g;
    g.lvl = k + 1;
    g.c = {zero(), one()};
    // a generator of a degree-1 "extension" cannot occur (levels have degree >= 2)
    return g;
}

AlgNum FieldTower::normalize(int lvl, std::vector<AlgNum> c) const {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
    if (c.empty()) return zero();
    if (c.size() == 1) return c[0]; // demote into the subfield
    AlgNum r;
    r.lvl = lvl;
    r.c = std::move(c);
    return r;
}

AlgNum FieldTower::lift_to(const AlgNum& a, int lvl) const {
    if (a.lvl == lvl) return a;
    check(a.lvl < lvl, "InternalError", "cannot lift downward");
    AlgNum r;
    r.lvl = lvl;
    r.c = {a};
    return r; // non-canonical on purpose; callers renormalize
}

std::vector<AlgNum> FieldTower::coeffs_at(const AlgNum& a, int lvl) const {
    if (a.lvl < lvl) return {a};
    return a.c;
}

bool FieldTower::is_zero(const AlgNum& a) const {
    if (a.lvl == 0) return a.q == 0;
    return false; // canonical form: nonzero vectors only
}

bool FieldTower::eq(const AlgNum& a, const AlgNum& b) const {
    if (a.lvl != b.lvl) return false;
    if (a.lvl == 0) return a.q == b.q;
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!eq(a.c[i], b.c[i])) return false;
    return true;
}

AlgNum FieldTower::add(const AlgNum& a, const AlgNum& b) const {
    if (a.lvl == 0 && b.lvl == 0) return AlgNum(Rat(a.q + b.q));
    int lvl = std::max(a.lvl, b.lvl);
    std::vector<AlgNum> ca = coeffs_at(a, lvl), cb = coeffs_at(b, lvl);
    std::vector<AlgNum> r(std::max(ca.size(), cb.size()), zero());
    for (size_t i = 0; i < ca.size(); ++i) r[i] = ca[i];
    for (size_t i = 0; i < cb.size(); ++i) r[i] = add(r[i], cb[i]);
    return normalize(lvl, std::move(r));
}

AlgNum FieldTower::neg(const AlgNum& a) const {
    if (a.lvl == 0) return AlgNum(Rat(-a.q));
    AlgNum r;
    r.lvl = a.lvl;
    r.c.reserve(a.c.size());
    for (auto& x : a.c) r.c.push_back(neg(x));
    return r;
}

AlgNum FieldTower::sub(const AlgNum& a, const AlgNum& b) const { return add(a, neg(b)); }

AlgNum FieldTower::mul(const AlgNum& a, const AlgNum& b) const {
    if (a.lvl == 0 && b.lvl == 0) return AlgNum(Rat(a.q * b.q));
    if (is_zero(a) || is_zero(b)) return zero();
    int lvl = std::max(a.lvl, b.lvl);
    std::vector<AlgNum> ca = coeffs_at(a, lvl), cb = coeffs_at(b, lvl);
    std::vector<AlgNum> r(ca.size() + cb.size() - 1, zero());
    for (size_t i = 0; i < ca.size(); ++i)
        for (size_t j = 0; j < cb.size(); ++j)
            r[i + j] = add(r[i + j], mul(ca[i], cb[j]));
    // reduce mod the minimal polynomial of level lvl-1
    const UPoly& m = levels[lvl - 1].minpoly;
    size_t n = m.size() - 1;
    while (r.size() > n) {
        AlgNum lead = r.back();
        size_t off = r.size() - 1 - n;
        if (!is_zero(lead)) {
            for (size_t j = 0; j < n; ++j)
                r[off + j] = sub(r[off + j], mul(lead, m[j]));
        }
        r.pop_back();
    }
    return normalize(lvl, std::move(r));
}

AlgNum FieldTower::inv(const AlgNum& a) const {
    check(!is_zero(a), "InvalidInput", "division by zero");
    if (a.lvl == 0) return AlgNum(Rat(1 / a.q));
    // extended euclid of (vector of a) against the minimal polynomial, one level down
    // Both polys have coefficients of level <= a.lvl-1, so UPoly machinery applies.
    const UPoly& m = levels[a.lvl - 1].minpoly;
    UPoly av = up_from(a.c);
    UPoly s, t;
    UPoly g = up_xgcd(av, m, s, t);
    check(up_deg(g) == 0, "InternalError",
          "minimal polynomial not irreducible (gcd found during inversion)");
    // g is monic constant 1 => s*a = 1 mod m
    std::vector<AlgNum> sc(s.begin(), s.end());
    return normalize(a.lvl, std::move(sc));
}

AlgNum FieldTower::pow(const AlgNum& a, long e) const {
    check(e >= 0, "InvalidInput", "negative exponent in pow");
    AlgNum r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::vector<Rat> FieldTower::flatten(const AlgNum& a) const {
    std::vector<Rat> out;
    long n = total_degree();
    out.assign(n, Rat(0));
    struct Flat {
        const FieldTower* F;
        std::vector<Rat>* out;
        void rec(const AlgNum& x, int lvl, long base, long stride) {
            if (lvl == 0) {
                (*out)[base] += x.q;
                return;
            }
            long sub = stride / F->level_degree(lvl - 1);
            if (x.lvl < lvl) {
                rec(x, lvl - 1, base, sub);
                return;
            }
            for (size_t i = 0; i < x.c.size(); ++i) rec(x.c[i], lvl - 1, base + (long)i * sub, sub);
        }
    } fl{this, &out};
    fl.rec(a, depth(), 0, n);
    return out;
}

int FieldTower::cmp(const AlgNum& a, const AlgNum& b) const {
    std::vector<Rat> fa = flatten(a), fb = flatten(b);
    for (size_t i = 0; i < fa.size(); ++i) {
        if (fa[i] < fb[i]) return -1;
        if (fa[i] > fb[i]) return 1;
    }
    return 0;
}

std::string FieldTower::to_string(const AlgNum& a) const {
    if (a.lvl == 0) return a.q.get_str();
    std::ostringstream os;
    os << "(";
    const std::string& g = levels[a.lvl - 1].name;
    bool first = true;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (is_zero(a.c[i])) continue;
        if (!first) os << " + ";
        first = false;
        os << to_string(a.c[i]);
        if (i >= 1) os << "*" << g;
        if (i >= 2) os << "^" << i;
    }
    os << ")";
    return os.str();
}

// ---------------- univariate polynomials ----------------

UPoly FieldTower::up_trim(UPoly p) const {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
    return p;
}

UPoly FieldTower::up_add(const UPoly& a, const UPoly& b) const {
    UPoly r(std::max(a.size(), b.size()), zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
    return up_trim(std::move(r));
}

UPoly FieldTower::up_neg(const UPoly& a) const {
    UPoly r;
    r.reserve(a.size());
    for (auto& x : a) r.push_back(neg(x));
    return r;
}

UPoly FieldTower::up_sub(const UPoly& a, const UPoly& b) const { return up_add(a, up_neg(b)); }

UPoly FieldTower::up_mul(const UPoly& a, const UPoly& b) const {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = add(r[i + j], mul(a[i], b[j]));
    return up_trim(std::move(r));
}

UPoly FieldTower::up_scale(const UPoly& a, const AlgNum& s) const {
    if (is_zero(s)) return {};
    UPoly r;
    r.reserve(a.size());
    for (auto& x : a) r.push_back(mul(x, s));
    return r;
}

void FieldTower::up_divmod(const UPoly& a, const UPoly& b, UPoly& quo, UPoly& rem) const {
    check(!b.empty(), "InvalidInput", "polynomial division by zero");
    rem = a;
    quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, zero());
    AlgNum lcinv = inv(b.back());
    while (rem.size() >= b.size()) {
        AlgNum q = mul(rem.back(), lcinv);
        size_t off = rem.size() - b.size();
        quo[off] = q;
        for (size_t j = 0; j < b.size(); ++j)
            rem[off + j] = sub(rem[off + j], mul(q, b[j]));
        rem = up_trim(std::move(rem));
        if (rem.empty()) break;
        if (rem.size() < b.size()) break;
    }
    quo = up_trim(std::move(quo));
}

UPoly FieldTower::up_mod(const UPoly& a, const UPoly& b) const {
    UPoly q, r;
    up_divmod(a, b, q, r);
    return r;
}

UPoly FieldTower::up_monic(const UPoly& a) const {
    if (a.empty()) return a;
    return up_scale(a, inv(a.back()));
}

UPoly FieldTower::up_gcd(const UPoly& a, const UPoly& b) const {
    UPoly x = a, y = b;
    while (!y.empty()) {
        UPoly r = up_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return up_monic(x);
}

UPoly FieldTower::up_xgcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) const {
    UPoly r0 = a, r1 = b;
    UPoly s0 = {one()}, s1 = {}, t0 = {}, t1 = {one()};
    while (!r1.empty()) {
        UPoly q, r2;
        up_divmod(r0, r1, q, r2);
        UPoly s2 = up_sub(s0, up_mul(q, s1));
        UPoly t2 = up_sub(t0, up_mul(q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.empty()) { s = {}; t = {}; return {}; }
    AlgNum lcinv = inv(r0.back());
    s = up_scale(s0, lcinv);
    t = up_scale(t0, lcinv);
    return up_scale(r0, lcinv);
}

UPoly FieldTower::up_derivative(const UPoly& a) const {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1, zero());
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], AlgNum((long)i));
    return up_trim(std::move(r));
}

AlgNum FieldTower::up_eval(const UPoly& a, const AlgNum& x) const {
    AlgNum r = zero();
    for (size_t i = a.size(); i-- > 0;) r = add(mul(r, x), a[i]);
    return r;
}

UPoly FieldTower::up_pow_mod(const UPoly& a, const Int& e, const UPoly& m) const {
    UPoly r = {one()};
    UPoly b = up_mod(a, m);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = up_mod(up_mul(r, b), m);
        b = up_mod(up_mul(b, b), m);
        k >>= 1;
    }
    return r;
}

UPoly FieldTower::up_shift(const UPoly& a, const AlgNum& sh) const {
    // Horner: p(x+sh)
    UPoly r;
    for (size_t i = a.size(); i-- > 0;) {
        // r = r*(x+sh) + a[i]
        UPoly rx(r.size() + 1, zero());
        for (size_t j = 0; j < r.size(); ++j) rx[j + 1] = r[j];
        UPoly rs = up_scale(r, sh);
        r = up_add(rx, rs);
        r = up_add(r, UPoly{a[i]});
    }
    return r;
}

AlgNum FieldTower::up_resultant(const UPoly& a, const UPoly& b) const {
    if (a.empty() || b.empty()) return zero();
    UPoly A = a, B = b;
    AlgNum res = one();
    bool swapped = false;
    if (up_deg(A) < up_deg(B)) {
        std::swap(A, B);
        if ((up_deg(A) % 2) && (up_deg(B) % 2)) res = neg(res);
        swapped = true;
    }
    (void)swapped;
    while (up_deg(B) > 0) {
        UPoly R = up_mod(A, B);
        int da = up_deg(A), db = up_deg(B), dr = up_deg(R);
        if ((da % 2) && (db % 2)) res = neg(res);
        res = mul(res, pow(B.back(), da - (R.empty() ? 0 : dr)));
        if (R.empty()) return zero();
        A = std::move(B);
        B = std::move(R);
    }
    res = mul(res, pow(B[0], up_deg(A)));
    return res;
}

std::string FieldTower::up_to_string(const UPoly& a, const std::string& var) const {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.size(); i-- > 0;) {
        if (is_zero(a[i])) continue;
        if (!first) os << " + ";
        first = false;
        os << to_string(a[i]);
        if (i >= 1) os << "*" << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

} // namespace qoz
