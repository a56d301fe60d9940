#include <algorithm>
#include <sstream>

#include "qoz/zetalg.hpp"

namespace qoz {

// ---------------- dense polynomials in s ----------------

std::vector<Rat> sp_trim(std::vector<Rat> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

std::vector<Rat> sp_add(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return sp_trim(std::move(r));
}

std::vector<Rat> sp_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return sp_trim(std::move(r));
}

Rat sp_eval(const std::vector<Rat>& p, const Rat& x) {
    Rat r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

// divide p by (N s + nu); returns true and the quotient when exact
static bool sp_div_linear(const std::vector<Rat>& p, const Int& N, const Int& nu,
                          std::vector<Rat>& quo) {
    if (p.empty()) {
        quo.clear();
        return true;
    }
    if (p.size() == 1) return false;
    std::vector<Rat> r = p;
    quo.assign(p.size() - 1, Rat(0));
    Rat rn(N), rnu(nu);
    for (size_t i = p.size() - 1; i >= 1; --i) {
        Rat q = r[i] / rn;
        quo[i - 1] = q;
        r[i] = 0;
        r[i - 1] -= q * rnu;
    }
    return r[0] == 0;
}

// ---------------- RatFuncS ----------------

static void rf_canon(RatFuncS& a) {
    a.num = sp_trim(std::move(a.num));
    if (a.num.empty()) {
        a.den.clear();
        return;
    }
    // primitive denominator pairs
    std::map<std::pair<Int, Int>, int> den;
    for (auto& [p, m] : a.den) {
        auto [N, nu] = p;
        check(m >= 0, "InternalError", "negative denominator multiplicity");
        if (m == 0) continue;
        check(N > 0 || nu > 0, "InternalError", "zero denominator factor");
        Int g = gcd(N, nu);
        if (g > 1) {
            Rat f(1, 1);
            mpz_pow_ui(f.get_den().get_mpz_t(), g.get_mpz_t(), m);
            f.canonicalize();
            for (auto& c : a.num) c *= f;
            N /= g;
            nu /= g;
        }
        if (N == 0 && nu == 1) continue; // factor is 1
        den[{N, nu}] += m;
    }
    // exact cancellation
    for (auto it = den.begin(); it != den.end();) {
        auto [N, nu] = it->first;
        while (it->second > 0 && N > 0) {
            std::vector<Rat> q;
            if (sp_eval(a.num, Rat(-nu, N)) != 0) break;
            if (!sp_div_linear(a.num, N, nu, q)) break;
            a.num = sp_trim(std::move(q));
            --it->second;
        }
        if (it->second == 0)
            it = den.erase(it);
        else
            ++it;
    }
    a.den = std::move(den);
}

RatFuncS rf_zero() { return RatFuncS{}; }

RatFuncS rf_const(const Rat& c) {
    RatFuncS r;
    if (c != 0) r.num = {c};
    return r;
}

RatFuncS rf_atom(const Rat& c, const std::vector<std::pair<Int, Int>>& dens) {
    RatFuncS r;
    if (c == 0) return r;
    r.num = {c};
    for (auto& p : dens) r.den[p] += 1;
    rf_canon(r);
    return r;
}

bool rf_is_zero(const RatFuncS& a) { return a.num.empty(); }

RatFuncS rf_neg(const RatFuncS& a) {
    RatFuncS r = a;
    for (auto& c : r.num) c = -c;
    return r;
}

RatFuncS rf_scale(const RatFuncS& a, const Rat& c) {
    if (c == 0) return rf_zero();
    RatFuncS r = a;
    for (auto& x : r.num) x *= c;
    return r;
}

static std::vector<Rat> lin_pow(const Int& N, const Int& nu, int m) {
    std::vector<Rat> p = {Rat(1)};
    std::vector<Rat> f = {Rat(nu), Rat(N)};
    for (int i = 0; i < m; ++i) p = sp_mul(p, f);
    return p;
}

RatFuncS rf_add(const RatFuncS& a, const RatFuncS& b) {
    if (rf_is_zero(a)) return b;
    if (rf_is_zero(b)) return a;
    RatFuncS r;
    // common denominator: pointwise max
    std::map<std::pair<Int, Int>, int> D = a.den;
    for (auto& [p, m] : b.den) D[p] = std::max(D[p], m);
    std::vector<Rat> na = a.num, nb = b.num;
    for (auto& [p, m] : D) {
        int ma = 0, mb = 0;
        if (auto it = a.den.find(p); it != a.den.end()) ma = it->second;
        if (auto it = b.den.find(p); it != b.den.end()) mb = it->second;
        if (m > ma) na = sp_mul(na, lin_pow(p.first, p.second, m - ma));
        if (m > mb) nb = sp_mul(nb, lin_pow(p.first, p.second, m - mb));
    }
    r.num = sp_add(na, nb);
    r.den = std::move(D);
    rf_canon(r);
    return r;
}

RatFuncS rf_sub(const RatFuncS& a, const RatFuncS& b) { return rf_add(a, rf_neg(b)); }

RatFuncS rf_mul(const RatFuncS& a, const RatFuncS& b) {
    if (rf_is_zero(a) || rf_is_zero(b)) return rf_zero();
    RatFuncS r;
    r.num = sp_mul(a.num, b.num);
    r.den = a.den;
    for (auto& [p, m] : b.den) r.den[p] += m;
    rf_canon(r);
    return r;
}

bool rf_eq(const RatFuncS& a, const RatFuncS& b) { return rf_is_zero(rf_sub(a, b)); }

std::map<std::pair<Int, Int>, int> rf_poles(const RatFuncS& a) {
    std::map<std::pair<Int, Int>, int> out;
    for (auto& [p, m] : a.den)
        if (p.first > 0 && m > 0) out[p] = m;
    return out;
}

std::string rf_to_string(const RatFuncS& a) {
    if (rf_is_zero(a)) return "0";
    std::ostringstream o;
    o << "(";
    bool first = true;
    for (size_t i = a.num.size(); i-- > 0;) {
        if (a.num[i] == 0) continue;
        Rat c = a.num[i];
        if (first) {
            if (c < 0) {
                o << "-";
                c = -c;
            }
        } else {
            o << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (c != 1 || i == 0) o << c;
        if (i >= 1) {
            if (c != 1) o << "*";
            o << "s";
            if (i > 1) o << "^" << i;
        }
    }
    o << ")";
    if (!a.den.empty()) {
        o << " / (";
        bool f2 = true;
        for (auto& [p, m] : a.den) {
            if (!f2) o << "*";
            f2 = false;
            o << "(";
            if (p.first != 0) {
                if (p.first != 1) o << p.first << "*";
                o << "s";
                if (p.second != 0) o << "+" << p.second;
            } else {
                o << p.second;
            }
            o << ")";
            if (m > 1) o << "^" << m;
        }
        o << ")";
    }
    return o.str();
}

// ---------------- LTPoly ----------------

LTPoly lt_monomial(long le, long te, const Rat& c) {
    LTPoly p;
    if (c != 0) p[{le, te}] = c;
    return p;
}

LTPoly lt_add(const LTPoly& a, const LTPoly& b) {
    LTPoly r = a;
    for (auto& [e, c] : b) {
        auto it = r.find(e);
        if (it == r.end())
            r[e] = c;
        else {
            it->second += c;
            if (it->second == 0) r.erase(it);
        }
    }
    return r;
}

LTPoly lt_mul(const LTPoly& a, const LTPoly& b) {
    LTPoly r;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            std::pair<long, long> e = {ea.first + eb.first, ea.second + eb.second};
            auto it = r.find(e);
            Rat v = ca * cb;
            if (it == r.end()) {
                if (v != 0) r[e] = v;
            } else {
                it->second += v;
                if (it->second == 0) r.erase(it);
            }
        }
    return r;
}

LTPoly lt_neg(const LTPoly& a) {
    LTPoly r = a;
    for (auto& [e, c] : r) c = -c;
    return r;
}

bool lt_is_zero(const LTPoly& a) { return a.empty(); }

LTPoly lt_Lminus1_pow(int k) {
    LTPoly r = lt_monomial(0, 0, Rat(1));
    LTPoly f = lt_add(lt_monomial(1, 0, Rat(1)), lt_monomial(0, 0, Rat(-1)));
    for (int i = 0; i < k; ++i) r = lt_mul(r, f);
    return r;
}

// ---------------- MotivicExpr ----------------

MotivicExpr me_zero() { return MotivicExpr{}; }

MotivicExpr me_from(const LTPoly& num, const std::vector<std::pair<long, long>>& dens) {
    MotivicExpr e;
    if (lt_is_zero(num)) return e;
    METerm t;
    t.num = num;
    for (auto& d : dens) {
        check(d.first >= 0 && d.second >= 0 && (d.first > 0 || d.second > 0), "InvalidInput",
              "motivic denominator (a,b) must be nonnegative and nonzero");
        t.den[d] += 1;
    }
    e.terms.push_back(std::move(t));
    return e;
}

MotivicExpr me_add(const MotivicExpr& a, const MotivicExpr& b) {
    MotivicExpr r = a;
    for (auto& t : b.terms)
        if (!lt_is_zero(t.num)) r.terms.push_back(t);
    return r;
}

MotivicExpr me_neg(const MotivicExpr& a) {
    MotivicExpr r = a;
    for (auto& t : r.terms) t.num = lt_neg(t.num);
    return r;
}

MotivicExpr me_sub(const MotivicExpr& a, const MotivicExpr& b) { return me_add(a, me_neg(b)); }

MotivicExpr me_mul(const MotivicExpr& a, const MotivicExpr& b) {
    MotivicExpr r;
    for (auto& ta : a.terms)
        for (auto& tb : b.terms) {
            METerm t;
            t.num = lt_mul(ta.num, tb.num);
            if (lt_is_zero(t.num)) continue;
            t.den = ta.den;
            for (auto& [d, m] : tb.den) t.den[d] += m;
            r.terms.push_back(std::move(t));
        }
    return r;
}

MotivicExpr me_scale(const MotivicExpr& a, const LTPoly& c) {
    MotivicExpr r;
    for (auto& t : a.terms) {
        METerm u;
        u.num = lt_mul(t.num, c);
        if (lt_is_zero(u.num)) continue;
        u.den = t.den;
        r.terms.push_back(std::move(u));
    }
    return r;
}

static LTPoly den_factor_poly(long a, long b) {
    // 1 - L^{-a} T^b
    return lt_add(lt_monomial(0, 0, Rat(1)), lt_monomial(-a, b, Rat(-1)));
}

// numerator of the whole expression over the pointwise-max common denominator
static LTPoly me_cleared_num(const MotivicExpr& e,
                             std::map<std::pair<long, long>, int>& Dout) {
    std::map<std::pair<long, long>, int> D;
    for (auto& t : e.terms)
        for (auto& [d, m] : t.den) D[d] = std::max(D[d], m);
    LTPoly total;
    for (auto& t : e.terms) {
        LTPoly n = t.num;
        for (auto& [d, m] : D) {
            int mt = 0;
            if (auto it = t.den.find(d); it != t.den.end()) mt = it->second;
            for (int i = mt; i < m; ++i) n = lt_mul(n, den_factor_poly(d.first, d.second));
        }
        total = lt_add(total, n);
    }
    Dout = std::move(D);
    return total;
}

bool me_is_zero(const MotivicExpr& a) {
    std::map<std::pair<long, long>, int> D;
    return lt_is_zero(me_cleared_num(a, D));
}

bool me_eq(const MotivicExpr& a, const MotivicExpr& b) { return me_is_zero(me_sub(a, b)); }

std::string me_to_string(const MotivicExpr& a) {
    std::ostringstream o;
    bool first = true;
    for (auto& t : a.terms) {
        if (!first) o << " + ";
        first = false;
        o << "[";
        bool f2 = true;
        for (auto& [e, c] : t.num) {
            if (!f2) o << " + ";
            f2 = false;
            o << c;
            if (e.first != 0) o << "*L^" << e.first;
            if (e.second != 0) o << "*T^" << e.second;
        }
        o << "]";
        for (auto& [d, m] : t.den) {
            o << "/(1-L^-" << d.first << "*T^" << d.second << ")";
            if (m > 1) o << "^" << m;
        }
    }
    if (first) o << "0";
    return o.str();
}

std::vector<std::map<long, Rat>> me_series_T(const MotivicExpr& a, int maxdeg) {
    using LSer = std::map<long, Rat>; // Laurent in L
    std::vector<LSer> out(maxdeg + 1);
    auto add_to = [&](std::vector<LSer>& dst, const std::vector<LSer>& src) {
        for (int k = 0; k <= maxdeg; ++k)
            for (auto& [e, c] : src[k]) {
                dst[k][e] += c;
                if (dst[k][e] == 0) dst[k].erase(e);
            }
    };
    for (auto& t : a.terms) {
        std::vector<LSer> cur(maxdeg + 1);
        for (auto& [e, c] : t.num)
            if (e.second <= maxdeg) cur[e.second][e.first] += c;
        for (auto& [d, m] : t.den) {
            check(d.second > 0, "InvalidInput",
                  "T-series expansion requires positive T-exponent in denominators");
            for (int rep = 0; rep < m; ++rep) {
                // multiply by sum_{k>=0} L^{-a k} T^{b k}
                std::vector<LSer> nxt(maxdeg + 1);
                for (int k = 0; (long)k * d.second <= maxdeg; ++k) {
                    long tshift = (long)k * d.second, lshift = -(long)k * d.first;
                    for (int j = 0; j + tshift <= maxdeg; ++j)
                        for (auto& [e, c] : cur[j]) {
                            nxt[j + tshift][e + lshift] += c;
                            if (nxt[j + tshift][e + lshift] == 0)
                                nxt[j + tshift].erase(e + lshift);
                        }
                }
                cur = std::move(nxt);
            }
        }
        add_to(out, cur);
    }
    return out;
}

// ---------------- chi specialization ----------------

namespace {

// series in eps with RatFuncS coefficients, truncated at fixed order
struct EpsSeries {
    std::vector<RatFuncS> c; // c[k] = coeff of eps^k
};

EpsSeries es_mul(const EpsSeries& a, const EpsSeries& b, int ord) {
    EpsSeries r;
    r.c.assign(ord + 1, rf_zero());
    for (int i = 0; i <= ord; ++i)
        for (int j = 0; i + j <= ord; ++j)
            r.c[i + j] = rf_add(r.c[i + j], rf_mul(a.c[i], b.c[j]));
    return r;
}

// binomial-style coefficient B_k(x) = x(x-1)...(x-k+1)/k! with x = x0 + x1*s,
// returned as a numerator-only RatFuncS
RatFuncS binom_poly(const Rat& x0, const Rat& x1, int k) {
    std::vector<Rat> p = {Rat(1)};
    for (int t = 0; t < k; ++t) p = sp_mul(p, {x0 - Rat(t), x1});
    Rat kf(1);
    for (int t = 2; t <= k; ++t) kf *= t;
    RatFuncS r;
    r.num = p;
    return rf_scale(r, 1 / kf);
}

// (1+eps)^(x0 + x1 s) truncated
EpsSeries es_pow1p(const Rat& x0, const Rat& x1, int ord) {
    EpsSeries r;
    r.c.resize(ord + 1);
    for (int k = 0; k <= ord; ++k) r.c[k] = binom_poly(x0, x1, k);
    return r;
}

// inverse of a series with invertible constant term
EpsSeries es_inv(const EpsSeries& a, int ord) {
    EpsSeries r;
    r.c.assign(ord + 1, rf_zero());
    // 1/c0 expressed exactly: c0 is c/prod(Ns+nu) -> inverse = prod/(c) ... we only
    // ever invert g0 = (a + b s)/1 scaled; handle the general monomial-over-factors
    // case by explicit reciprocal construction
    const RatFuncS& g0 = a.c[0];
    check(!rf_is_zero(g0), "InternalError", "series inversion with zero constant term");
    // reciprocal of g0: numerator must be a single linear or constant factor here
    RatFuncS inv0;
    {
        std::vector<Rat> n = g0.num;
        check(n.size() <= 2, "InternalError", "unexpected nonlinear leading coefficient");
        RatFuncS numpart = rf_const(Rat(1));
        for (auto& [p, m] : g0.den)
            for (int i = 0; i < m; ++i)
                numpart = rf_mul(numpart, RatFuncS{{Rat(p.second), Rat(p.first)}, {}});
        if (n.size() == 1) {
            inv0 = rf_scale(numpart, 1 / n[0]);
        } else {
            // 1 / (n0 + n1 s): scale to primitive integer pair
            Rat n0 = n[0], n1 = n[1];
            // write n0 + n1 s = (q/r)(N s + nu) with integers N, nu
            Int den0 = n0.get_den(), den1 = n1.get_den();
            Int l = den0 / gcd(den0, den1) * den1;
            Int nu = Rat(n0 * Rat(l)).get_num();
            Int N = Rat(n1 * Rat(l)).get_num();
            Int g = gcd(N, nu);
            if (g > 1) {
                N /= g;
                nu /= g;
            }
            // n0 + n1 s = (g/l)(N s + nu)
            inv0 = rf_mul(numpart, rf_atom(Rat(l, g), {{N, nu}}));
        }
    }
    r.c[0] = inv0;
    for (int k = 1; k <= ord; ++k) {
        RatFuncS acc = rf_zero();
        for (int j = 1; j <= k && j < (int)a.c.size(); ++j)
            acc = rf_add(acc, rf_mul(a.c[j], r.c[k - j]));
        r.c[k] = rf_neg(rf_mul(inv0, acc));
    }
    return r;
}

} // namespace

RatFuncS chi_specialize(const MotivicExpr& a) {
    // pole order bound: total denominator multiplicity of the worst term
    int maxm = 0;
    for (auto& t : a.terms) {
        int m = 0;
        for (auto& [d, k] : t.den) m += k;
        maxm = std::max(maxm, m);
    }
    int ord = maxm; // we need eps^0 of terms with eps^{-m} prefactor
    // accumulate coefficients of eps^{-maxm} .. eps^{0}
    std::vector<RatFuncS> total(maxm + 1, rf_zero()); // index i = eps^{i - maxm}
    for (auto& t : a.terms) {
        int m = 0;
        for (auto& [d, k] : t.den) m += k;
        // numerator series
        EpsSeries num;
        num.c.assign(ord + 1, rf_zero());
        for (auto& [e, c] : t.num) {
            // c * (1+eps)^(i - j s)
            EpsSeries p = es_pow1p(Rat(e.first), Rat(-e.second), ord);
            for (int k = 0; k <= ord; ++k) num.c[k] = rf_add(num.c[k], rf_scale(p.c[k], c));
        }
        EpsSeries prod = num;
        for (auto& [d, k] : t.den) {
            // 1 - (1+eps)^{-(a + b s)} = eps * g(eps)
            EpsSeries f = es_pow1p(Rat(-d.first), Rat(-d.second), ord + 1);
            EpsSeries g;
            g.c.assign(ord + 1, rf_zero());
            for (int i = 0; i <= ord; ++i) g.c[i] = rf_neg(f.c[i + 1]);
            EpsSeries ig = es_inv(g, ord);
            for (int rep = 0; rep < k; ++rep) prod = es_mul(prod, ig, ord);
        }
        // term value = eps^{-m} * prod; add coefficients for eps^{-maxm..0}
        for (int k = 0; k <= ord; ++k) {
            int e = k - m; // eps exponent
            if (e > 0) continue;
            int idx = e + maxm;
            if (idx < 0) continue;
            total[idx] = rf_add(total[idx], prod.c[k]);
        }
    }
    for (int i = 0; i < maxm; ++i)
        check(rf_is_zero(total[i]), "SpecializationPole",
              "negative eps power survives chi-specialization");
    return total[maxm];
}

} // namespace qoz
