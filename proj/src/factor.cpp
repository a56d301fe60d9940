#include <algorithm>
#include <random>

#include "qoz/numfield.hpp"

namespace qoz {

// ---------------- squarefree decomposition (Yun) ----------------

std::vector<FactorPart> squarefree_decomposition(const FieldTower& F, const UPoly& p) {
    check(!p.empty(), "InvalidInput", "squarefree decomposition of the zero polynomial");
    std::vector<FactorPart> out;
    if (F.up_deg(p) == 0) return out;
    UPoly f = F.up_monic(p);
    UPoly fp = F.up_derivative(f);
    UPoly a = F.up_gcd(f, fp);
    UPoly b, c, d;
    {
        UPoly q, r;
        F.up_divmod(f, a, q, r);
        b = q;
        F.up_divmod(fp, a, q, r);
        c = q;
        d = F.up_sub(c, F.up_derivative(b));
    }
    int m = 1;
    while (F.up_deg(b) > 0) {
        UPoly t = F.up_gcd(b, d);
        if (F.up_deg(t) > 0) out.push_back({F.up_monic(t), m});
        UPoly q, r;
        F.up_divmod(b, t, q, r);
        b = q;
        F.up_divmod(d, t, q, r);
        c = q;
        d = F.up_sub(c, F.up_derivative(b));
        ++m;
    }
    return out;
}

// ---------------- integer polynomial helpers ----------------

using ZPoly = std::vector<Int>; // dense, no trailing zeros

static ZPoly z_trim(ZPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

static ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

static bool z_divides(const ZPoly& f, const ZPoly& g, ZPoly& quo) {
    // exact division test f = quo*g over Z
    ZPoly r = f;
    quo.assign(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, Int(0));
    while (r.size() >= g.size() && !r.empty()) {
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), g.back().get_mpz_t());
        if (rem != 0) return false;
        size_t off = r.size() - g.size();
        quo[off] = q;
        for (size_t j = 0; j < g.size(); ++j) r[off + j] -= q * g[j];
        if (r.back() != 0) return false;
        r = z_trim(std::move(r));
    }
    return r.empty();
}

static Int z_content(const ZPoly& p) {
    Int g = 0;
    for (auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// ---------------- arithmetic mod m (m = p or p^k) ----------------

namespace {

struct ModCtx {
    Int m;
    Int red(const Int& x) const {
        Int r = x % m;
        if (r < 0) r += m;
        return r;
    }
    Int sym(const Int& x) const { // symmetric representative in (-m/2, m/2]
        Int r = red(x);
        if (r * 2 > m) r -= m;
        return r;
    }
    Int inv(const Int& x) const {
        Int r;
        int ok = mpz_invert(r.get_mpz_t(), red(x).get_mpz_t(), m.get_mpz_t());
        check(ok != 0, "InternalError", "non-invertible element mod m");
        return r;
    }
};

using MPolyZ = ZPoly; // poly with coefficients already reduced

MPolyZ m_trim(const ModCtx& M, MPolyZ p) {
    (void)M;
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

MPolyZ m_red(const ModCtx& M, const ZPoly& p) {
    MPolyZ r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = M.red(p[i]);
    return m_trim(M, std::move(r));
}

MPolyZ m_add(const ModCtx& M, const MPolyZ& a, const MPolyZ& b) {
    MPolyZ r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = M.red(r[i] + b[i]);
    return m_trim(M, std::move(r));
}

MPolyZ m_sub(const ModCtx& M, const MPolyZ& a, const MPolyZ& b) {
    MPolyZ r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = M.red(r[i] - b[i] + M.m);
    return m_trim(M, std::move(r));
}

MPolyZ m_mul(const ModCtx& M, const MPolyZ& a, const MPolyZ& b) {
    if (a.empty() || b.empty()) return {};
    MPolyZ r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = M.red(r[i + j] + a[i] * b[j]);
    return m_trim(M, std::move(r));
}

MPolyZ m_scale(const ModCtx& M, const MPolyZ& a, const Int& s) {
    MPolyZ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = M.red(a[i] * s);
    return m_trim(M, std::move(r));
}

void m_divmod(const ModCtx& M, const MPolyZ& a, const MPolyZ& b, MPolyZ& quo, MPolyZ& rem) {
    rem = a;
    quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
    Int lcinv = M.inv(b.back());
    while (rem.size() >= b.size() && !rem.empty()) {
        Int q = M.red(rem.back() * lcinv);
        size_t off = rem.size() - b.size();
        quo[off] = q;
        for (size_t j = 0; j < b.size(); ++j) rem[off + j] = M.red(rem[off + j] - q * b[j]);
        rem = m_trim(M, std::move(rem));
    }
    quo = m_trim(M, std::move(quo));
}

MPolyZ m_mod(const ModCtx& M, const MPolyZ& a, const MPolyZ& b) {
    MPolyZ q, r;
    m_divmod(M, a, b, q, r);
    return r;
}

MPolyZ m_monic(const ModCtx& M, const MPolyZ& a) {
    if (a.empty()) return a;
    return m_scale(M, a, M.inv(a.back()));
}

MPolyZ m_gcd(const ModCtx& M, MPolyZ a, MPolyZ b) {
    while (!b.empty()) {
        MPolyZ r = m_mod(M, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return m_monic(M, a);
}

MPolyZ m_powmod(const ModCtx& M, MPolyZ a, Int e, const MPolyZ& f) {
    MPolyZ r = {Int(1)};
    a = m_mod(M, a, f);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = m_mod(M, m_mul(M, r, a), f);
        a = m_mod(M, m_mul(M, a, a), f);
        e >>= 1;
    }
    return r;
}

// distinct-degree + equal-degree factorization of a squarefree monic poly mod p
void cz_factor_modp(const ModCtx& M, const MPolyZ& f, std::vector<MPolyZ>& out,
                    std::mt19937& rng) {
    int n = (int)f.size() - 1;
    if (n <= 0) return;
    if (n == 1) {
        out.push_back(f);
        return;
    }
    // distinct degree
    MPolyZ x = {Int(0), Int(1)};
    MPolyZ h = x;
    MPolyZ rest = f;
    std::vector<std::pair<MPolyZ, int>> buckets; // (product of irreducibles of degree d, d)
    for (int d = 1; (int)rest.size() - 1 >= 2 * d; ++d) {
        h = m_powmod(M, h, M.m, rest); // note: M.m is the prime here
        MPolyZ g = m_gcd(M, m_sub(M, h, x), rest);
        if (!g.empty() && (int)g.size() - 1 > 0) {
            buckets.push_back({g, d});
            MPolyZ q, r;
            m_divmod(M, rest, g, q, r);
            rest = q;
            h = m_mod(M, h, rest);
        }
    }
    if ((int)rest.size() - 1 > 0) buckets.push_back({rest, (int)rest.size() - 1});
    // equal degree, Cantor-Zassenhaus (p odd)
    Int exp;
    for (auto& [prod, d] : buckets) {
        std::vector<MPolyZ> stack = {prod};
        mpz_pow_ui(exp.get_mpz_t(), M.m.get_mpz_t(), d);
        exp = (exp - 1) / 2;
        while (!stack.empty()) {
            MPolyZ g = stack.back();
            stack.pop_back();
            int dg = (int)g.size() - 1;
            if (dg == d) {
                out.push_back(m_monic(M, g));
                continue;
            }
            // random split
            for (;;) {
                MPolyZ r(dg, Int(0));
                for (int i = 0; i < dg; ++i) r[i] = Int((unsigned long)(rng() % mpz_get_ui(M.m.get_mpz_t())));
                r = m_trim(M, std::move(r));
                if (r.empty() || (int)r.size() - 1 < 1) continue;
                MPolyZ t = m_powmod(M, r, exp, g);
                t = m_sub(M, t, MPolyZ{Int(1)});
                MPolyZ u = m_gcd(M, t, g);
                int du = (int)u.size() - 1;
                if (du > 0 && du < dg) {
                    MPolyZ q, rr;
                    m_divmod(M, g, u, q, rr);
                    stack.push_back(u);
                    stack.push_back(q);
                    break;
                }
            }
        }
    }
}

// Hensel lift: f ≡ lc * prod factors (mod p), factors monic mod p; lift to mod target.
// Factor-tree quadratic lifting.
struct HenselNode {
    MPolyZ f;                      // current value mod m (product of children, monic except root)
    std::unique_ptr<HenselNode> l, r;
    MPolyZ s, t;                   // Bezout: s*l.f + t*r.f = 1 mod m
};

std::unique_ptr<HenselNode> build_tree(const ModCtx& Mp, std::vector<MPolyZ>::iterator b,
                                       std::vector<MPolyZ>::iterator e) {
    auto node = std::make_unique<HenselNode>();
    if (e - b == 1) {
        node->f = *b;
        return node;
    }
    auto mid = b + (e - b) / 2;
    node->l = build_tree(Mp, b, mid);
    node->r = build_tree(Mp, mid, e);
    node->f = m_mul(Mp, node->l->f, node->r->f);
    // Bezout coefficients mod p via extended euclid
    MPolyZ a = node->l->f, bb = node->r->f;
    MPolyZ r0 = a, r1 = bb, s0 = {Int(1)}, s1 = {}, t0 = {}, t1 = {Int(1)};
    while (!r1.empty()) {
        MPolyZ q, r2;
        m_divmod(Mp, r0, r1, q, r2);
        MPolyZ s2 = m_sub(Mp, s0, m_mul(Mp, q, s1));
        MPolyZ t2 = m_sub(Mp, t0, m_mul(Mp, q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    // r0 must be a nonzero constant
    check((int)r0.size() == 1, "InternalError", "hensel tree: factors not coprime mod p");
    Int cinv = Mp.inv(r0[0]);
    node->s = m_scale(Mp, s0, cinv);
    node->t = m_scale(Mp, t0, cinv);
    return node;
}

// lift node (whose data is valid mod m) to mod m^2 given the target product F mod m^2
void hensel_step(const Int& m, HenselNode* node, const MPolyZ& F) {
    if (!node->l) {
        node->f = F;
        return;
    }
    ModCtx M2{m * m};
    MPolyZ g = node->l->f, h = node->r->f, s = node->s, t = node->t;
    // standard quadratic lift: e = F - g*h
    MPolyZ e = m_sub(M2, m_red(M2, F), m_mul(M2, g, h));
    MPolyZ q, r;
    m_divmod(M2, m_mul(M2, s, e), h, q, r);
    MPolyZ g1 = m_add(M2, g, m_add(M2, m_mul(M2, t, e), m_mul(M2, q, g)));
    MPolyZ h1 = m_add(M2, h, r);
    // lift bezout: b = s*g1 + t*h1 - 1
    MPolyZ b = m_sub(M2, m_add(M2, m_mul(M2, s, g1), m_mul(M2, t, h1)), MPolyZ{Int(1)});
    MPolyZ c, d;
    m_divmod(M2, m_mul(M2, s, b), h1, c, d);
    MPolyZ s1 = m_sub(M2, s, d);
    MPolyZ t1 = m_sub(M2, t, m_add(M2, m_mul(M2, t, b), m_mul(M2, c, g1)));
    node->s = s1;
    node->t = t1;
    hensel_step(m, node->l.get(), g1);
    hensel_step(m, node->r.get(), h1);
    node->f = m_mul(M2, node->l->f, node->r->f);
}

void collect_leaves(HenselNode* n, std::vector<MPolyZ>& out) {
    if (!n->l) {
        out.push_back(n->f);
        return;
    }
    collect_leaves(n->l.get(), out);
    collect_leaves(n->r.get(), out);
}

// factor a primitive squarefree integer polynomial with positive leading coeff
std::vector<ZPoly> factor_z_squarefree(const ZPoly& f) {
    int n = (int)f.size() - 1;
    std::vector<ZPoly> out;
    if (n <= 0) return out;
    if (n == 1) {
        out.push_back(f);
        return out;
    }
    // pick a prime
    static const unsigned long primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                           37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                                           79, 83, 89, 97, 101, 103, 107, 109, 113, 127};
    std::mt19937 rng(0x5eed1234u); // fixed seed: reproducible splits
    for (unsigned long pu : primes) {
        Int p(pu);
        if (f.back() % p == 0) continue;
        ModCtx Mp{p};
        MPolyZ fp = m_red(Mp, f);
        MPolyZ fpd;
        { // derivative mod p
            ZPoly d;
            for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (long)i);
            fpd = m_red(Mp, d);
        }
        if (m_gcd(Mp, fp, fpd).size() != 1) continue; // not squarefree mod p
        MPolyZ fmonic = m_monic(Mp, fp);
        std::vector<MPolyZ> mods;
        cz_factor_modp(Mp, fmonic, mods, rng);
        // deterministic order of modular factors
        std::sort(mods.begin(), mods.end(), [](const MPolyZ& a, const MPolyZ& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            for (size_t i = a.size(); i-- > 0;)
                if (a[i] != b[i]) return a[i] < b[i];
            return false;
        });
        if (mods.size() == 1) {
            out.push_back(f);
            return out;
        }
        // Mignotte-style bound: |coeff of any factor| <= 2^n * sqrt(n+1) * H(f) * |lc|
        Int H = 0;
        for (auto& c : f) { Int a = abs(c); if (a > H) H = a; }
        Int B = H * abs(f.back());
        mpz_mul_2exp(B.get_mpz_t(), B.get_mpz_t(), n + 2);
        B = B * (Int((long)n) + 1);
        // lift until p^(2^j) > 2B
        auto tree = build_tree(Mp, mods.begin(), mods.end());
        Int m = p;
        MPolyZ target;
        while (m <= 2 * B) {
            ModCtx M2{m * m};
            // root target: monic version of f times nothing: we lift lc-adjusted later;
            // lift the monic image of f
            MPolyZ fm = m_red(M2, f);
            Int lcinv = M2.inv(f.back());
            target = m_scale(M2, fm, lcinv);
            hensel_step(m, tree.get(), target);
            m = m * m;
        }
        ModCtx Mk{m};
        std::vector<MPolyZ> lifted;
        collect_leaves(tree.get(), lifted);
        // recombination
        ZPoly rest = f;
        std::vector<int> avail(lifted.size());
        for (size_t i = 0; i < avail.size(); ++i) avail[i] = (int)i;
        size_t take = 1;
        while (2 * take <= avail.size()) {
            bool found = false;
            std::vector<size_t> idx(take);
            for (size_t i = 0; i < take; ++i) idx[i] = i;
            for (;;) {
                // try subset idx of avail
                MPolyZ prod = {Mk.red(Int(rest.back()))};
                for (size_t i = 0; i < take; ++i) prod = m_mul(Mk, prod, lifted[avail[idx[i]]]);
                // symmetric lift
                ZPoly cand(prod.size());
                for (size_t i = 0; i < prod.size(); ++i) cand[i] = Mk.sym(prod[i]);
                Int ct = z_content(cand);
                if (ct != 0)
                    for (auto& cc : cand) cc /= ct;
                ZPoly quo;
                if (!cand.empty() && z_divides(z_mul(rest, ZPoly{rest.back()}), cand, quo)) {
                    // cand * quo = lc(rest)*rest ; normalize: primitive part of quo
                    if (cand.back() < 0) for (auto& cc : cand) cc = -cc;
                    out.push_back(cand);
                    Int cq = z_content(quo);
                    ZPoly newrest = quo;
                    if (cq != 0)
                        for (auto& cc : newrest) cc /= cq;
                    if (newrest.back() < 0) for (auto& cc : newrest) cc = -cc;
                    rest = newrest;
                    // remove used leaves
                    std::vector<int> na;
                    for (size_t i = 0, j = 0; i < avail.size(); ++i) {
                        if (j < take && idx[j] == i) { ++j; continue; }
                        na.push_back(avail[i]);
                    }
                    avail = na;
                    found = true;
                    break;
                }
                // next combination
                size_t k = take;
                while (k > 0 && idx[k - 1] == avail.size() - (take - (k - 1))) --k;
                if (k == 0) break;
                ++idx[k - 1];
                for (size_t i = k; i < take; ++i) idx[i] = idx[i - 1] + 1;
            }
            if (!found) ++take;
        }
        if ((int)rest.size() - 1 > 0) out.push_back(rest);
        return out;
    }
    fail("InternalError", "no suitable prime found for factorization");
}

} // namespace

// ---------------- factorization over the tower ----------------

static UPoly upoly_from_z(const ZPoly& p) {
    UPoly r;
    r.reserve(p.size());
    for (auto& c : p) r.push_back(AlgNum(Rat(c)));
    return r;
}

// factor a monic squarefree polynomial over level-0 (rationals) into monic irreducibles
static std::vector<UPoly> factor_q_squarefree(const FieldTower& F, const UPoly& p) {
    // clear denominators
    Int den = 1;
    for (auto& c : p) {
        check(c.lvl == 0, "InternalError", "rational factorization with non-rational coeffs");
        Int d = c.q.get_den();
        den = den / gcd(den, d) * d;
    }
    ZPoly z(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Rat v = p[i].q * Rat(den);
        z[i] = v.get_num();
    }
    Int ct = z_content(z);
    if (ct != 0)
        for (auto& c : z) c /= ct;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    std::vector<ZPoly> zf = factor_z_squarefree(z);
    std::vector<UPoly> out;
    for (auto& f : zf) out.push_back(F.up_monic(upoly_from_z(f)));
    return out;
}

// Trager: factor a monic squarefree polynomial over level k >= 1
static std::vector<UPoly> factor_ext_squarefree(const FieldTower& F, const UPoly& p, int lvl);

// Factor a monic squarefree polynomial over the subtower of the first `lvl` levels.
// Irreducibility over a subfield does not imply irreducibility over the full tower,
// so callers start at F.depth() and the Trager recursion descends one level at a time.
static std::vector<UPoly> factor_squarefree_at(const FieldTower& F, const UPoly& p, int lvl) {
    if (lvl == 0) return factor_q_squarefree(F, p);
    return factor_ext_squarefree(F, p, lvl);
}

// substitute the top-level generator (level lvl) by the indeterminate Y:
// returns the coefficients of x-degree i as polynomials in Y over level lvl-1.
// Used to build G(x, Y) for the norm resultant.
static std::vector<UPoly> split_generator(const FieldTower& F, const UPoly& p, int lvl) {
    std::vector<UPoly> out; // out[i] = coeff of x^i, as poly in Y
    for (auto& c : p) {
        if (c.lvl < lvl)
            out.push_back(UPoly{c});
        else
            out.push_back(F.up_from(c.c));
    }
    return out;
}

static std::vector<UPoly> factor_ext_squarefree(const FieldTower& F, const UPoly& p, int lvl) {
    const UPoly& m = F.levels[lvl - 1].minpoly;
    int n = F.up_deg(m);
    int dp = F.up_deg(p);
    AlgNum gen = F.generator(lvl - 1);
    // find a shift s so that Norm(p(x - s*gen)) is squarefree over level lvl-1
    for (int trial = 0;; ++trial) {
        long s = (trial % 2 == 0) ? trial / 2 : -(trial / 2 + 1); // 0, -1, 1, -2, 2, ...
        check(trial < 80, "InternalError", "Trager: no squarefree norm shift found");
        AlgNum sh = F.mul(AlgNum(-s), gen);
        UPoly g = F.up_shift(p, sh); // g(x) = p(x - s*gen)
        // norm(x) = Res_Y(m(Y), G(x,Y)) computed by evaluation/interpolation
        std::vector<UPoly> G = split_generator(F, g, lvl);
        int dn = n * dp; // degree of the norm
        std::vector<AlgNum> xs, ys;
        for (int t = 0; (int)xs.size() < dn + 1; ++t) {
            AlgNum xv((long)t);
            // A(Y) = G(t, Y) over level lvl-1
            UPoly A;
            for (size_t i = G.size(); i-- > 0;) {
                A = F.up_mul(A, UPoly{xv});
                A = F.up_add(A, G[i]);
            }
            // Horner above multiplies by constant xv; that computes sum G_i * t^i correctly
            AlgNum r = F.up_resultant(m, A);
            xs.push_back(xv);
            ys.push_back(r);
        }
        // Lagrange interpolation over the tower (coefficients at level <= lvl-1)
        UPoly norm; // zero
        for (int i = 0; i <= dn; ++i) {
            UPoly li = {F.one()};
            AlgNum denom = F.one();
            for (int j = 0; j <= dn; ++j) {
                if (j == i) continue;
                li = F.up_mul(li, UPoly{F.neg(xs[j]), F.one()});
                denom = F.mul(denom, F.sub(xs[i], xs[j]));
            }
            norm = F.up_add(norm, F.up_scale(li, F.div(ys[i], denom)));
        }
        norm = F.up_monic(norm);
        if (F.up_deg(F.up_gcd(norm, F.up_derivative(norm))) != 0) continue; // not squarefree
        // factor the norm one level down (recursively)
        std::vector<UPoly> nf = factor_squarefree_at(F, norm, lvl - 1);
        std::vector<UPoly> out;
        if (nf.size() == 1) {
            out.push_back(F.up_monic(p));
            return out;
        }
        for (auto& Ni : nf) {
            UPoly fi = F.up_gcd(g, Ni);
            check(F.up_deg(fi) > 0, "InternalError", "Trager: factor with trivial gcd");
            // undo the shift: factor of p is fi(x + s*gen)
            out.push_back(F.up_monic(F.up_shift(fi, F.neg(sh))));
        }
        return out;
    }
}

bool factor_order_less(const FieldTower& F, const UPoly& a, const UPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        int c = F.cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::vector<FactorPart> factor_irreducible(const FieldTower& F, const UPoly& p) {
    check(!p.empty(), "InvalidInput", "factorization of the zero polynomial");
    std::vector<FactorPart> out;
    if (F.up_deg(p) == 0) return out;
    std::vector<FactorPart> sq = squarefree_decomposition(F, p);
    for (auto& part : sq) {
        std::vector<UPoly> irr = factor_squarefree_at(F, part.factor, F.depth());
        for (auto& f : irr) out.push_back({f, part.multiplicity});
    }
    std::sort(out.begin(), out.end(), [&](const FactorPart& a, const FactorPart& b) {
        return factor_order_less(F, a.factor, b.factor);
    });
    return out;
}

std::pair<FieldTower, AlgNum> adjoin_root(const FieldTower& F, const UPoly& p,
                                          const std::string& name_hint) {
    check(F.up_deg(p) >= 1, "InvalidInput", "adjoin_root needs a nonconstant polynomial");
    std::vector<FactorPart> irr = factor_irreducible(F, p);
    // (degree, coefficient-lex) first; factor_irreducible already sorted that way
    const UPoly& f = irr.front().factor;
    if (F.up_deg(f) == 1) {
        // monic x + c => root -c, tower unchanged
        return {F, F.neg(f[0])};
    }
    FieldTower G = F;
    std::string name = name_hint.empty() ? ("g" + std::to_string(G.depth() + 1)) : name_hint;
    G.levels.push_back({name, f});
    return {G, G.generator(G.depth() - 1)};
}

} // namespace qoz
