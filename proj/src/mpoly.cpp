#include <algorithm>
#include <sstream>

#include "qoz/mpoly.hpp"

namespace qoz {

// ---------------- ring operations ----------------

MPoly mp_zero(int d) {
    MPoly p;
    p.d = d;
    return p;
}

MPoly mp_const(int d, const AlgNum& c) {
    MPoly p;
    p.d = d;
    if (!(c.lvl == 0 && c.q == 0)) p.terms[std::vector<int>(d + 1, 0)] = c;
    return p;
}

MPoly mp_monomial(int d, const std::vector<int>& e, const AlgNum& c) {
    check((int)e.size() == d + 1, "InvalidInput", "monomial exponent dimension mismatch");
    MPoly p;
    p.d = d;
    if (!(c.lvl == 0 && c.q == 0)) p.terms[e] = c;
    return p;
}

bool mp_is_zero(const MPoly& a) { return a.terms.empty(); }

static void mp_insert(const FieldTower& F, MPoly& p, const std::vector<int>& e, const AlgNum& c) {
    auto it = p.terms.find(e);
    if (it == p.terms.end()) {
        if (!F.is_zero(c)) p.terms[e] = c;
    } else {
        AlgNum s = F.add(it->second, c);
        if (F.is_zero(s))
            p.terms.erase(it);
        else
            it->second = s;
    }
}

MPoly mp_add(const FieldTower& F, const MPoly& a, const MPoly& b) {
    check(a.d == b.d, "InvalidInput", "variable count mismatch");
    MPoly r = a;
    for (auto& [e, c] : b.terms) mp_insert(F, r, e, c);
    return r;
}

MPoly mp_neg(const FieldTower& F, const MPoly& a) {
    MPoly r = a;
    for (auto& [e, c] : r.terms) c = F.neg(c);
    return r;
}

MPoly mp_sub(const FieldTower& F, const MPoly& a, const MPoly& b) {
    return mp_add(F, a, mp_neg(F, b));
}

MPoly mp_mul(const FieldTower& F, const MPoly& a, const MPoly& b) {
    check(a.d == b.d, "InvalidInput", "variable count mismatch");
    MPoly r = mp_zero(a.d);
    std::vector<int> e(a.d + 1);
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            for (int i = 0; i <= a.d; ++i) e[i] = ea[i] + eb[i];
            mp_insert(F, r, e, F.mul(ca, cb));
        }
    return r;
}

MPoly mp_scale(const FieldTower& F, const MPoly& a, const AlgNum& c) {
    if (F.is_zero(c)) return mp_zero(a.d);
    MPoly r = a;
    for (auto& [e, v] : r.terms) v = F.mul(v, c);
    return r;
}

MPoly mp_pow(const FieldTower& F, const MPoly& a, int e) {
    check(e >= 0, "InvalidInput", "negative exponent");
    MPoly r = mp_const(a.d, FieldTower::one());
    MPoly b = a;
    while (e > 0) {
        if (e & 1) r = mp_mul(F, r, b);
        b = mp_mul(F, b, b);
        e >>= 1;
    }
    return r;
}

bool mp_eq(const FieldTower& F, const MPoly& a, const MPoly& b) {
    return mp_is_zero(mp_sub(F, a, b));
}

int mp_deg_z(const MPoly& a) { return mp_deg_var(a, a.d); }

int mp_deg_var(const MPoly& a, int v) {
    int m = -1;
    for (auto& [e, c] : a.terms) m = std::max(m, e[v]);
    return m;
}

std::vector<MPoly> mp_z_coeffs(const MPoly& a) {
    int dz = mp_deg_z(a);
    std::vector<MPoly> cs(std::max(dz + 1, 0), mp_zero(a.d));
    for (auto& [e, c] : a.terms) {
        std::vector<int> e2 = e;
        e2[a.d] = 0;
        cs[e[a.d]].terms[e2] = c;
    }
    return cs;
}

MPoly mp_from_z_coeffs(const FieldTower& F, int d, const std::vector<MPoly>& cs) {
    MPoly r = mp_zero(d);
    for (int k = 0; k < (int)cs.size(); ++k)
        for (auto& [e, c] : cs[k].terms) {
            std::vector<int> e2 = e;
            e2[d] += k;
            mp_insert(F, r, e2, c);
        }
    return r;
}

MPoly mp_shift_z(const FieldTower& F, const MPoly& a, const MPoly& s) {
    check(mp_deg_z(s) <= 0, "InvalidInput", "shift must not involve z");
    // z -> z + s: Horner over the z-coefficients
    std::vector<MPoly> cs = mp_z_coeffs(a);
    MPoly z = mp_monomial(a.d, [&] {
        std::vector<int> e(a.d + 1, 0);
        e[a.d] = 1;
        return e;
    }(), FieldTower::one());
    MPoly sub = mp_add(F, z, s);
    MPoly r = mp_zero(a.d);
    for (int k = (int)cs.size() - 1; k >= 0; --k) r = mp_add(F, mp_mul(F, r, sub), cs[k]);
    return r;
}

MPoly mp_eval_var(const FieldTower& F, const MPoly& a, int v, const AlgNum& val) {
    MPoly r = mp_zero(a.d);
    for (auto& [e, c] : a.terms) {
        std::vector<int> e2 = e;
        e2[v] = 0;
        mp_insert(F, r, e2, F.mul(c, F.pow(val, e[v])));
    }
    return r;
}

MPoly mp_div_exact(const FieldTower& F, const MPoly& a, const MPoly& b) {
    check(!mp_is_zero(b), "InvalidInput", "division by zero polynomial");
    MPoly rem = a, quo = mp_zero(a.d);
    auto lead = [&](const MPoly& p) { return std::prev(p.terms.end()); };
    auto lb = lead(b);
    AlgNum lbinv = F.inv(lb->second);
    while (!mp_is_zero(rem)) {
        auto lr = lead(rem);
        std::vector<int> e(a.d + 1);
        for (int i = 0; i <= a.d; ++i) {
            e[i] = lr->first[i] - lb->first[i];
            check(e[i] >= 0, "InternalError", "inexact polynomial division");
        }
        AlgNum c = F.mul(lr->second, lbinv);
        MPoly t = mp_monomial(a.d, e, c);
        quo = mp_add(F, quo, t);
        rem = mp_sub(F, rem, mp_mul(F, t, b));
    }
    return quo;
}

MPoly mp_extract_monomial(const MPoly& a, std::vector<int>& mono) {
    if (mp_is_zero(a)) {
        mono.assign(a.d + 1, 0);
        return a;
    }
    mono.assign(a.d + 1, 1 << 30);
    for (auto& [e, c] : a.terms)
        for (int i = 0; i <= a.d; ++i) mono[i] = std::min(mono[i], e[i]);
    MPoly r = mp_zero(a.d);
    for (auto& [e, c] : a.terms) {
        std::vector<int> e2(a.d + 1);
        for (int i = 0; i <= a.d; ++i) e2[i] = e[i] - mono[i];
        r.terms[e2] = c;
    }
    return r;
}

// ---------------- printing ----------------

std::string mp_to_string(const FieldTower& F, const MPoly& a,
                         const std::vector<std::string>& names) {
    check((int)names.size() == a.d + 1, "InvalidInput", "variable name count mismatch");
    if (mp_is_zero(a)) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        bool is_const_exp = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        std::string cs;
        bool neg = false;
        if (c.lvl == 0) {
            Rat q = c.q;
            if (q < 0) {
                neg = true;
                q = -q;
            }
            if (q != 1 || is_const_exp) {
                std::ostringstream cc;
                cc << q;
                cs = cc.str();
            }
        } else {
            cs = "(" + F.to_string(c) + ")";
        }
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        bool printed = false;
        if (!cs.empty()) {
            out << cs;
            printed = true;
        }
        for (int i = 0; i <= a.d; ++i) {
            if (e[i] == 0) continue;
            if (printed) out << "*";
            out << names[i];
            if (e[i] > 1) out << "^" << e[i];
            printed = true;
        }
        if (!printed) out << "1";
    }
    return out.str();
}

// ---------------- parser ----------------

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const FieldTower& F;
    const std::vector<std::string>& names;
    int d;

    Parser(const FieldTower& f, const std::string& text, const std::vector<std::string>& nm)
        : s(text), F(f), names(nm), d((int)nm.size() - 1) {}

    [[noreturn]] void err(const std::string& msg) {
        fail("SyntaxError", msg + " at position " + std::to_string(pos));
    }
    void skip() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n')) ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    Int integer() {
        skip();
        size_t start = pos;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) err("expected integer");
        return Int(s.substr(start, pos - start));
    }

    MPoly atom() {
        skip();
        if (pos >= s.size()) err("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            MPoly e = expr();
            if (!eat(')')) err("expected ')'");
            return e;
        }
        if (isdigit((unsigned char)c)) {
            Int n = integer();
            if (eat('/')) { // tolerated extension: rational literal p/q
                Int q = integer();
                if (q == 0) err("zero denominator");
                return mp_const(d, AlgNum(Rat(n, q)));
            }
            return mp_const(d, AlgNum(Rat(n)));
        }
        if (isalpha((unsigned char)c) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
            std::string name = s.substr(start, pos - start);
            for (int i = 0; i <= d; ++i)
                if (names[i] == name) {
                    std::vector<int> e(d + 1, 0);
                    e[i] = 1;
                    return mp_monomial(d, e, FieldTower::one());
                }
            pos = start;
            err("unknown variable '" + name + "'");
        }
        err("unexpected character");
    }

    MPoly factor() {
        skip();
        if (eat('-')) return mp_neg(F, factor());
        if (eat('+')) return factor();
        MPoly a = atom();
        if (eat('^')) {
            skip();
            if (pos < s.size() && s[pos] == '-') err("negative exponent");
            Int e = integer();
            check(e >= 0 && e < 10000, "SyntaxError", "exponent out of range");
            return mp_pow(F, a, (int)e.get_si());
        }
        return a;
    }

    MPoly term() {
        MPoly a = factor();
        while (eat('*')) a = mp_mul(F, a, factor());
        return a;
    }

    MPoly expr() {
        MPoly a = term();
        for (;;) {
            skip();
            if (eat('+'))
                a = mp_add(F, a, term());
            else if (eat('-'))
                a = mp_sub(F, a, term());
            else
                return a;
        }
    }
};

} // namespace

MPoly parse(const FieldTower& F, const std::string& text,
            const std::vector<std::string>& var_names) {
    check(!var_names.empty(), "InvalidInput", "need at least the variable z");
    Parser p(F, text, var_names);
    MPoly r = p.expr();
    p.skip();
    if (p.pos != text.size()) p.err("trailing input");
    return r;
}

// ---------------- resultant / discriminant ----------------

namespace {

// leading z-coefficient as a z-free polynomial
MPoly lc_z(const MPoly& a) {
    int dz = mp_deg_z(a);
    MPoly r = mp_zero(a.d);
    for (auto& [e, c] : a.terms)
        if (e[a.d] == dz) {
            std::vector<int> e2 = e;
            e2[a.d] = 0;
            r.terms[e2] = c;
        }
    return r;
}

// multiply by z^k
MPoly shift_up_z(const MPoly& a, int k) {
    MPoly r = mp_zero(a.d);
    for (auto& [e, c] : a.terms) {
        std::vector<int> e2 = e;
        e2[a.d] += k;
        r.terms[std::move(e2)] = c;
    }
    return r;
}

// pseudo-remainder of A by B in z: lc_z(B)^{deg A - deg B + 1} A mod B
MPoly prem_z(const FieldTower& F, MPoly A, const MPoly& B) {
    int dB = mp_deg_z(B);
    MPoly lB = lc_z(B);
    int e = mp_deg_z(A) - dB + 1;
    while (!mp_is_zero(A) && mp_deg_z(A) >= dB) {
        MPoly t = shift_up_z(lc_z(A), mp_deg_z(A) - dB);
        A = mp_sub(F, mp_mul(F, lB, A), mp_mul(F, t, B));
        --e;
    }
    for (; e > 0; --e) A = mp_mul(F, lB, A);
    return A;
}

// resultant of f and g with respect to z by the subresultant
// polynomial-remainder sequence (Brown-Traub), exact over the tower
MPoly resultant_z_prs(const FieldTower& F, MPoly A, MPoly B) {
    int d = A.d;
    if (mp_is_zero(A) || mp_is_zero(B)) return mp_zero(d);
    bool neg = false;
    if (mp_deg_z(A) < mp_deg_z(B)) {
        std::swap(A, B);
        if ((mp_deg_z(A) & 1) && (mp_deg_z(B) & 1)) neg = !neg;
    }
    if (mp_deg_z(B) == 0) {
        MPoly r = mp_pow(F, B, mp_deg_z(A));
        return neg ? mp_neg(F, r) : r;
    }
    MPoly g = mp_const(d, FieldTower::one());
    MPoly h = g;
    for (;;) {
        int dA = mp_deg_z(A), dB = mp_deg_z(B);
        int delta = dA - dB;
        if ((dA & 1) && (dB & 1)) neg = !neg;
        MPoly R = prem_z(F, A, B);
        A = B;
        B = mp_div_exact(F, R, mp_mul(F, g, mp_pow(F, h, delta)));
        g = lc_z(A);
        if (delta > 0) h = mp_div_exact(F, mp_pow(F, g, delta), mp_pow(F, h, delta - 1));
        if (mp_is_zero(B)) return mp_zero(d);
        if (mp_deg_z(B) == 0) {
            int da = mp_deg_z(A);
            MPoly r = mp_div_exact(F, mp_pow(F, B, da), mp_pow(F, h, da - 1));
            return neg ? mp_neg(F, r) : r;
        }
    }
}

// resultant of f and g with respect to z, by recursive evaluation/interpolation
// in the x variables (degrees in z must not drop at the chosen points)
MPoly resultant_z_rec(const FieldTower& F, const MPoly& f, const MPoly& g) {
    int d = f.d;
    int dzf = mp_deg_z(f), dzg = mp_deg_z(g);
    // pick a variable that actually appears
    int v = -1;
    for (int i = d - 1; i >= 0; --i)
        if (mp_deg_var(f, i) > 0 || mp_deg_var(g, i) > 0) {
            v = i;
            break;
        }
    if (v < 0) {
        // both univariate in z: convert and use the exact univariate resultant
        UPoly uf(dzf + 1, FieldTower::zero()), ug(dzg + 1, FieldTower::zero());
        for (auto& [e, c] : f.terms) uf[e[d]] = c;
        for (auto& [e, c] : g.terms) ug[e[d]] = c;
        return mp_const(d, F.up_resultant(FieldTower::up_from(uf), FieldTower::up_from(ug)));
    }
    std::vector<MPoly> fz = mp_z_coeffs(f), gz = mp_z_coeffs(g);
    const MPoly& lcf = fz.back();
    const MPoly& lcg = gz.back();
    int bound = mp_deg_var(f, v) * dzg + mp_deg_var(g, v) * dzf;
    std::vector<AlgNum> xs;
    std::vector<MPoly> ys;
    for (long t = 0; (int)xs.size() < bound + 1; ++t) {
        AlgNum tv((long)t);
        if (mp_is_zero(mp_eval_var(F, lcf, v, tv))) continue;
        if (mp_is_zero(mp_eval_var(F, lcg, v, tv))) continue;
        xs.push_back(tv);
        ys.push_back(resultant_z_rec(F, mp_eval_var(F, f, v, tv), mp_eval_var(F, g, v, tv)));
    }
    // Lagrange interpolation in x_v with polynomial values
    MPoly res = mp_zero(d);
    std::vector<int> ev(d + 1, 0);
    ev[v] = 1;
    MPoly xv = mp_monomial(d, ev, FieldTower::one());
    for (int i = 0; i <= bound; ++i) {
        MPoly li = mp_const(d, FieldTower::one());
        AlgNum denom = FieldTower::one();
        for (int j = 0; j <= bound; ++j) {
            if (j == i) continue;
            li = mp_mul(F, li, mp_sub(F, xv, mp_const(d, xs[j])));
            denom = F.mul(denom, F.sub(xs[i], xs[j]));
        }
        res = mp_add(F, res, mp_scale(F, mp_mul(F, li, ys[i]), F.inv(denom)));
    }
    return res;
}

} // namespace

MPoly discriminant_z(const FieldTower& F, const MPoly& f) {
    check(mp_deg_z(f) >= 1, "InvalidInput", "discriminant needs positive z-degree");
    std::vector<MPoly> fz = mp_z_coeffs(f);
    MPoly df = mp_zero(f.d);
    for (int k = 1; k < (int)fz.size(); ++k)
        df = mp_add(F, df, mp_from_z_coeffs(F, f.d, [&] {
                        std::vector<MPoly> c(k, mp_zero(f.d));
                        c[k - 1] = mp_scale(F, fz[k], AlgNum((long)k));
                        return c;
                    }()));
    if (mp_is_zero(df)) return mp_zero(f.d);
    MPoly res = resultant_z_prs(F, f, df);
    return mp_div_exact(F, res, fz.back());
}

std::pair<bool, std::vector<int>> is_quasi_ordinary(const FieldTower& F, const MPoly& f) {
    MPoly D = discriminant_z(F, f);
    check(!mp_is_zero(D), "NotSquarefree", "zero z-discriminant: input not squarefree in z");
    // unique componentwise-minimal support element = the componentwise minimum,
    // provided it is itself in the support
    std::vector<int> alpha(f.d, 1 << 30);
    for (auto& [e, c] : D.terms)
        for (int i = 0; i < f.d; ++i) alpha[i] = std::min(alpha[i], e[i]);
    std::vector<int> key(f.d + 1, 0);
    for (int i = 0; i < f.d; ++i) key[i] = alpha[i];
    if (D.terms.count(key)) return {true, alpha};
    return {false, {}};
}

// ---------------- the (h, omega) pair ----------------

static QOPair make_qopair_impl(TowerPtr tower, const MPoly& h, const FormExponents& nu,
                               bool validate_qo) {
    check((bool)tower, "InvalidInput", "missing tower");
    check(!mp_is_zero(h), "InvalidInput", "zero polynomial");
    check((int)nu.nu.size() == h.d, "InvalidInput", "nu dimension mismatch");
    for (int v : nu.nu) check(v >= 1, "InvalidInput", "nu entries must be >= 1");
    const FieldTower& F = *tower;
    QOPair p;
    p.tower = tower;
    p.nu = nu;
    std::vector<int> mono;
    p.residual = mp_extract_monomial(h, mono);
    p.N.assign(mono.begin(), mono.begin() + h.d);
    check(mono[h.d] <= 1, "NotSquarefree", "z^2 divides the input");
    p.epsilon = mono[h.d];
    for (int i = 0; i < h.d; ++i)
        check(p.N[i] > 0 || nu.nu[i] == 1, "InvalidInput",
              "support condition violated: N_j = 0 requires nu_j = 1");
    // the residual must be unit * Weierstrass-in-z: it cannot vanish identically
    // at x = 0 (that would hide a z-free non-monomial factor)
    {
        MPoly r0 = p.residual;
        for (int v = 0; v < h.d; ++v) r0 = mp_eval_var(F, r0, v, AlgNum(Rat(0)));
        check(!mp_is_zero(r0), "NotQuasiOrdinaryInZ",
              "residual has a z-free non-unit factor");
    }
    // quasi-ordinarity of the Weierstrass part z^eps * residual
    MPoly w = p.residual;
    if (p.epsilon) {
        std::vector<int> ez(h.d + 1, 0);
        ez[h.d] = 1;
        w = mp_mul(F, w, mp_monomial(h.d, ez, FieldTower::one()));
    }
    if (validate_qo && mp_deg_z(w) >= 1) {
        auto [ok, alpha] = is_quasi_ordinary(F, w);
        (void)alpha;
        check(ok, "NotQuasiOrdinaryInZ", "z-discriminant is not a monomial times a unit");
    }
    return p;
}

QOPair make_qopair(TowerPtr tower, const MPoly& h, const FormExponents& nu) {
    return make_qopair_impl(std::move(tower), h, nu, true);
}

QOPair make_qopair_trusted(TowerPtr tower, const MPoly& h, const FormExponents& nu) {
    return make_qopair_impl(std::move(tower), h, nu, false);
}

MPoly qopair_full(const QOPair& p) {
    const FieldTower& F = *p.tower;
    std::vector<int> e(p.d() + 1, 0);
    for (int i = 0; i < p.d(); ++i) e[i] = p.N[i];
    e[p.d()] = p.epsilon;
    return mp_mul(F, mp_monomial(p.d(), e, FieldTower::one()), p.residual);
}

std::vector<int> essential_variables(const QOPair& p) {
    const FieldTower& F = *p.tower;
    std::vector<bool> ess(p.d(), false);
    for (int i = 0; i < p.d(); ++i)
        if (p.N[i] > 0) ess[i] = true;
    MPoly w = p.residual;
    if (p.epsilon) {
        std::vector<int> ez(p.d() + 1, 0);
        ez[p.d()] = 1;
        w = mp_mul(F, w, mp_monomial(p.d(), ez, FieldTower::one()));
    }
    if (mp_deg_z(w) >= 1) {
        auto [ok, alpha] = is_quasi_ordinary(F, w);
        check(ok, "NotQuasiOrdinaryInZ", "input is not quasi-ordinary");
        for (int i = 0; i < p.d(); ++i)
            if (alpha[i] > 0) ess[i] = true;
    }
    std::vector<int> out;
    for (int i = 0; i < p.d(); ++i)
        if (ess[i]) out.push_back(i);
    return out;
}

std::pair<QOPair, std::vector<int>> reduce_to_essential(const QOPair& p) {
    std::vector<int> ess = essential_variables(p);
    std::vector<bool> keep(p.d(), false);
    for (int i : ess) keep[i] = true;
    // only drop variables entirely absent from the residual (a unit factor may
    // mention a non-essential variable; absence is the safe exact test)
    for (int i = 0; i < p.d(); ++i)
        if (!keep[i] && mp_deg_var(p.residual, i) > 0) keep[i] = true;
    std::vector<int> kept;
    for (int i = 0; i < p.d(); ++i)
        if (keep[i]) kept.push_back(i);
    if ((int)kept.size() == p.d()) return {p, kept};
    QOPair q;
    q.tower = p.tower;
    MPoly r = mp_zero((int)kept.size());
    for (auto& [e, c] : p.residual.terms) {
        std::vector<int> e2;
        for (int i : kept) e2.push_back(e[i]);
        e2.push_back(e[p.d()]);
        r.terms[e2] = c;
    }
    q.residual = r;
    for (int i : kept) {
        q.N.push_back(p.N[i]);
        q.nu.nu.push_back(p.nu.nu[i]);
    }
    q.epsilon = p.epsilon;
    return {q, kept};
}

} // namespace qoz
