#include <algorithm>
#include <numeric>
#include <set>

#include "qoz/cones.hpp"

namespace qoz {

namespace {

Int idot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int ipow(const Int& a, int e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

// determinant of a square rational matrix
Rat rat_det(std::vector<std::vector<Rat>> A) {
    int n = (int)A.size();
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = col; r < n; ++r)
            if (A[r][col] != 0) { pr = r; break; }
        if (pr < 0) return Rat(0);
        if (pr != col) {
            std::swap(A[pr], A[col]);
            det = -det;
        }
        det *= A[col][col];
        Rat inv = 1 / A[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (A[r][col] == 0) continue;
            Rat f = A[r][col] * inv;
            for (int j = col; j < n; ++j) A[r][j] -= f * A[col][j];
        }
    }
    return det;
}

// gcd of all k x k minors of a k x n integer matrix (rows independent); this is
// the index of the row lattice inside its saturation
Int minor_gcd(const std::vector<std::vector<Int>>& rows) {
    int k = (int)rows.size();
    if (k == 0) return 1;
    int n = (int)rows[0].size();
    check(k <= n, "InvalidCone", "more generators than ambient dimension");
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    Int g = 0;
    for (;;) {
        std::vector<std::vector<Rat>> A(k, std::vector<Rat>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) A[i][j] = Rat(rows[i][idx[j]]);
        Rat dgt = rat_det(std::move(A));
        g = gcd(g, dgt.get_num());
        int t = k;
        while (t > 0 && idx[t - 1] == n - (k - (t - 1))) --t;
        if (t == 0) break;
        ++idx[t - 1];
        for (int i = t; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (g < 0) g = -g;
    return g;
}

} // namespace

Int sigma_weight(const FormExponents& nu, const std::vector<Int>& k) {
    Int s = 0;
    for (size_t i = 0; i < nu.nu.size(); ++i) s += Int(nu.nu[i]) * k[i];
    s += k[nu.nu.size()];
    return s;
}

Int min_support_value(const std::vector<std::vector<Int>>& support, const std::vector<Int>& k) {
    check(!support.empty(), "InvalidInput", "empty support");
    Int m = idot(k, support[0]);
    for (auto& p : support) m = std::min(m, idot(k, p));
    return m;
}

// ---------------- newton path ----------------

NewtonPath build_newton_path(const QOPair& p) {
    const FieldTower& F = *p.tower;
    MPoly h = qopair_full(p);
    int d = p.d();
    std::vector<std::vector<Int>> support;
    for (auto& [e, c] : h.terms) {
        std::vector<Int> v(d + 1);
        for (int i = 0; i <= d; ++i) v[i] = e[i];
        support.push_back(std::move(v));
    }
    Hull H = build_hull(support);
    // any compact face of dimension >= 2 breaks the path shape
    for (auto& f : H.faces)
        check(!(f.compact && f.dim >= 2), "NotMonotonePath",
              "compact face of dimension >= 2 in the Newton polyhedron");
    std::vector<int> vidx = H.vertices();
    NewtonPath path;
    struct V {
        std::vector<Int> x;
        Int z;
        int pt;
    };
    std::vector<V> vs;
    for (int fi : vidx) {
        const auto& pt = H.pts[H.faces[fi].pts[0]];
        V v;
        v.x.assign(pt.begin(), pt.begin() + d);
        v.z = pt[d];
        v.pt = H.faces[fi].pts[0];
        vs.push_back(std::move(v));
    }
    std::sort(vs.begin(), vs.end(), [](const V& a, const V& b) { return a.z < b.z; });
    for (size_t i = 0; i + 1 < vs.size(); ++i)
        check(vs[i].z != vs[i + 1].z, "NotMonotonePath", "two vertices at the same z-height");
    // edges must join consecutive vertices
    std::vector<int> eidx = H.compact_faces_of_dim(1);
    check(eidx.size() + 1 == std::max<size_t>(vs.size(), 1), "NotMonotonePath",
          "compact edges do not form a chain over the vertices");
    for (auto& v : vs) {
        path.vertex_x.push_back(v.x);
        path.vertex_z.push_back(v.z);
    }
    for (size_t q = 0; q + 1 < vs.size(); ++q) {
        // find the edge joining vertex q and q+1
        int found = -1;
        for (int fi : eidx) {
            auto& fp = H.faces[fi].pts;
            bool a = std::find(fp.begin(), fp.end(), vs[q].pt) != fp.end();
            bool b = std::find(fp.begin(), fp.end(), vs[q + 1].pt) != fp.end();
            if (a && b) found = fi;
        }
        check(found >= 0, "NotMonotonePath", "consecutive vertices not joined by an edge");
        EdgeData e;
        Int n1full = vs[q + 1].z - vs[q].z;
        std::vector<Int> bfull(d);
        Int g = n1full;
        for (int i = 0; i < d; ++i) {
            bfull[i] = vs[q].x[i] - vs[q + 1].x[i];
            check(bfull[i] >= 0, "NotMonotonePath", "x-coordinates increase along the path");
            g = gcd(g, bfull[i]);
        }
        e.n1 = n1full / g;
        e.lattice_len = (int)g.get_si();
        e.b.resize(d);
        e.c.resize(d);
        e.p.resize(d);
        e.bbar.resize(d);
        e.M.resize(d);
        e.lambda.resize(d);
        for (int i = 0; i < d; ++i) {
            e.b[i] = bfull[i] / g;
            e.c[i] = gcd(e.n1, e.b[i]);
            e.p[i] = e.n1 / e.c[i];
            e.bbar[i] = e.b[i] / e.c[i];
            e.M[i] = e.n1 * vs[q + 1].x[i] + e.b[i] * vs[q + 1].z;
            e.lambda[i] = Rat(e.b[i], e.n1);
            e.lambda[i].canonicalize();
            std::vector<Int> w(d + 1, Int(0));
            w[i] = e.p[i];
            w[d] = e.bbar[i];
            e.w.push_back(std::move(w));
        }
        // face polynomial in w: lattice points of the edge bottom-up
        std::vector<AlgNum> cs(e.lattice_len + 1, FieldTower::zero());
        for (int t = 0; t <= e.lattice_len; ++t) {
            std::vector<int> key(d + 1);
            for (int i = 0; i < d; ++i) {
                Int xi = vs[q].x[i] - Int(t) * e.b[i];
                key[i] = (int)xi.get_si();
            }
            key[d] = (int)Int(vs[q].z + Int(t) * e.n1).get_si();
            auto it = h.terms.find(key);
            if (it != h.terms.end()) cs[t] = it->second;
        }
        e.face_poly_w = FieldTower::up_from(cs);
        check(F.up_deg(e.face_poly_w) == e.lattice_len, "InternalError",
              "face polynomial degree mismatch");
        check(!F.is_zero(e.face_poly_w[0]), "InternalError",
              "face polynomial has a zero root");
        for (auto& part : factor_irreducible(F, e.face_poly_w)) {
            RootClass rc;
            rc.factor = part.factor;
            rc.multiplicity = part.multiplicity;
            rc.distinct = F.up_deg(part.factor);
            e.v += rc.distinct;
            e.roots.push_back(std::move(rc));
        }
        path.edges.push_back(std::move(e));
    }
    // multi-slopes weakly decrease componentwise, strictly somewhere
    for (size_t q = 0; q + 1 < path.edges.size(); ++q) {
        bool strict = false;
        for (int i = 0; i < d; ++i) {
            check(path.edges[q].lambda[i] >= path.edges[q + 1].lambda[i], "NotMonotonePath",
                  "multi-slopes are not decreasing along the path");
            if (path.edges[q].lambda[i] > path.edges[q + 1].lambda[i]) strict = true;
        }
        check(strict, "NotMonotonePath", "equal multi-slopes on consecutive edges");
    }
    return path;
}

// ---------------- fundamental sets ----------------

SimplicialCone fundamental_set(const std::vector<std::vector<Int>>& gens) {
    check(!gens.empty(), "InvalidCone", "empty generator list");
    int k = (int)gens.size();
    int n = (int)gens[0].size();
    check(int_rank(gens) == k, "InvalidCone", "dependent cone generators");
    Int D = minor_gcd(gens);
    check(D > 0, "InternalError", "zero lattice index");
    long Dl = D.get_si();
    SimplicialCone cone;
    cone.gens = gens;
    // enumerate mu_l in {1/D, ..., D/D}
    std::vector<long> mu(k, 1);
    for (;;) {
        std::vector<Rat> x(n, Rat(0));
        for (int l = 0; l < k; ++l)
            for (int j = 0; j < n; ++j) x[j] += Rat(mu[l], Dl) * Rat(gens[l][j]);
        bool integral = true;
        std::vector<Int> xi(n);
        for (int j = 0; j < n; ++j) {
            x[j].canonicalize();
            if (x[j].get_den() != 1) {
                integral = false;
                break;
            }
            xi[j] = x[j].get_num();
        }
        if (integral) cone.fset.push_back(std::move(xi));
        int t = k - 1;
        while (t >= 0 && mu[t] == Dl) {
            mu[t] = 1;
            --t;
        }
        if (t < 0) break;
        ++mu[t];
    }
    std::sort(cone.fset.begin(), cone.fset.end());
    cone.multiplicity = (long)cone.fset.size();
    check(cone.multiplicity == D, "InternalError",
          "fundamental set size disagrees with the lattice index");
    return cone;
}

MotivicExpr genfun(const SimplicialCone& cone, const ConeWeight& weight) {
    LTPoly num;
    for (auto& g : cone.fset) {
        auto [a, b] = weight(g);
        num = lt_add(num, lt_monomial(-a.get_si(), b.get_si(), Rat(1)));
    }
    std::vector<std::pair<long, long>> dens;
    for (auto& g : cone.gens) {
        auto [a, b] = weight(g);
        dens.push_back({a.get_si(), b.get_si()});
    }
    return me_from(num, dens);
}

// ---------------- J-terms ----------------

RatFuncS J_edge(const EdgeData& e, const FormExponents& nu) {
    int d = (int)e.b.size();
    check((int)nu.nu.size() == d, "InvalidInput", "nu dimension mismatch");
    std::vector<std::pair<Int, Int>> dens;
    for (int l = 0; l < d; ++l) dens.push_back({e.M[l], Int(nu.nu[l]) * e.n1 + e.b[l]});
    return rf_atom(Rat(ipow(e.n1, d - 1)), dens);
}

static RatFuncS J_tilde(const EdgeData& e, const FormExponents& nu, int d) {
    // (n1)^d / prod T~_l
    std::vector<std::pair<Int, Int>> dens;
    for (int l = 0; l < d; ++l) dens.push_back({e.M[l], Int(nu.nu[l]) * e.n1 + e.b[l]});
    return rf_atom(Rat(ipow(e.n1, d)), dens);
}

RatFuncS J_vertex(const NewtonPath& path, int q, const FormExponents& nu,
                  const std::vector<int>& N, int epsilon) {
    int r = path.r();
    check(r >= 1, "InvalidInput", "J_vertex needs a path with at least one edge");
    check(q >= 0 && q <= r, "InvalidInput", "vertex index out of range");
    int d = (int)nu.nu.size();
    if (q == 0) {
        std::vector<std::pair<Int, Int>> dens;
        if (epsilon) dens.push_back({1, 1});
        for (int l = 0; l < d; ++l)
            dens.push_back({path.edges[0].M[l], Int(nu.nu[l]) * path.edges[0].n1 + path.edges[0].b[l]});
        return rf_atom(Rat(ipow(path.edges[0].n1, d)), dens);
    }
    Int dq = path.vertex_z[q];
    RatFuncS pref = rf_atom(Rat(1), {{dq, 1}});
    if (q < r) {
        return rf_mul(pref, rf_sub(J_tilde(path.edges[q], nu, d), J_tilde(path.edges[q - 1], nu, d)));
    }
    // top vertex: 1/prod T_i with T_i = N_i s + nu_i over N_i > 0
    std::vector<std::pair<Int, Int>> dens;
    for (int i = 0; i < d; ++i)
        if (N[i] > 0) dens.push_back({N[i], nu.nu[i]});
    return rf_mul(pref, rf_sub(rf_atom(Rat(1), dens), J_tilde(path.edges[r - 1], nu, d)));
}

// ---------------- cone triangulation ----------------

namespace {

using RVec = std::vector<Rat>;

std::vector<RVec> to_rat(const std::vector<std::vector<Int>>& v) {
    std::vector<RVec> r;
    for (auto& x : v) {
        RVec y(x.size());
        for (size_t i = 0; i < x.size(); ++i) y[i] = Rat(x[i]);
        r.push_back(std::move(y));
    }
    return r;
}

int rat_rank(const std::vector<RVec>& rows) {
    if (rows.empty()) return 0;
    int k = (int)rows[0].size();
    return k - (int)rat_nullspace(rows, k).size();
}

Rat rdot(const RVec& a, const RVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// rays in arbitrary rational coordinates; returns simplices as lists of
// original indices (pulling triangulation from the first ray)
void tri_rec(const std::vector<RVec>& rays, const std::vector<int>& idx,
             std::vector<std::vector<int>>& out) {
    int m = (int)rays.size();
    check(m >= 1, "InvalidCone", "empty cone");
    int k = rat_rank(rays);
    if (m == k) {
        out.push_back(idx);
        return;
    }
    // rewrite in full-rank coordinates: pick k independent rays as basis
    std::vector<RVec> basis;
    std::vector<int> bidx;
    for (int i = 0; i < m && (int)basis.size() < k; ++i) {
        basis.push_back(rays[i]);
        if (rat_rank(basis) < (int)basis.size())
            basis.pop_back();
        else
            bidx.push_back(i);
    }
    int n = (int)rays[0].size();
    // coords: solve basis^T * c = ray
    std::vector<RVec> coords;
    for (auto& rr : rays) {
        // least-structure exact solve via augmented elimination
        std::vector<RVec> A(n, RVec(k + 1));
        for (int row = 0; row < n; ++row) {
            for (int j = 0; j < k; ++j) A[row][j] = basis[j][row];
            A[row][k] = rr[row];
        }
        // gaussian elimination
        int prow = 0;
        std::vector<int> pivots;
        for (int col = 0; col < k && prow < n; ++col) {
            int pr = -1;
            for (int rw = prow; rw < n; ++rw)
                if (A[rw][col] != 0) { pr = rw; break; }
            check(pr >= 0, "InternalError", "basis not independent");
            std::swap(A[prow], A[pr]);
            Rat inv = 1 / A[prow][col];
            for (int j = col; j <= k; ++j) A[prow][j] *= inv;
            for (int rw = 0; rw < n; ++rw) {
                if (rw == prow || A[rw][col] == 0) continue;
                Rat f = A[rw][col];
                for (int j = col; j <= k; ++j) A[rw][j] -= f * A[prow][j];
            }
            pivots.push_back(prow);
            ++prow;
        }
        RVec c(k);
        for (int j = 0; j < k; ++j) c[j] = A[pivots[j]][k];
        coords.push_back(std::move(c));
    }
    // facets of the full-dim cone in R^k: normals from (k-1)-subsets
    std::set<std::vector<Rat>> seen;
    std::vector<std::pair<RVec, std::vector<int>>> facets; // normal, touching local ids
    std::vector<int> sub(k - 1);
    for (int i = 0; i < k - 1; ++i) sub[i] = i;
    if (k == 1) {
        // cone of rank 1 with m > 1 rays: all rays proportional; single simplex
        out.push_back({idx[0]});
        return;
    }
    for (;;) {
        std::vector<RVec> A;
        for (int i = 0; i < k - 1; ++i) A.push_back(coords[sub[i]]);
        auto ker = rat_nullspace(A, k);
        if (ker.size() == 1) {
            RVec a = ker[0];
            bool pos = false, neg = false;
            for (auto& rr : coords) {
                Rat v = rdot(a, rr);
                if (v > 0) pos = true;
                if (v < 0) neg = true;
            }
            if (!(pos && neg)) {
                if (neg)
                    for (auto& x : a) x = -x;
                // normalize for dedupe
                std::vector<Int> prim = rat_to_primitive(a);
                RVec key(prim.size());
                for (size_t i = 0; i < prim.size(); ++i) key[i] = Rat(prim[i]);
                if (!seen.count(key)) {
                    seen.insert(key);
                    std::vector<int> touch;
                    std::vector<RVec> span;
                    for (int i = 0; i < m; ++i)
                        if (rdot(key, coords[i]) == 0) {
                            touch.push_back(i);
                            span.push_back(coords[i]);
                        }
                    if (rat_rank(span) == k - 1) facets.push_back({key, touch});
                }
            }
        }
        int t = k - 1;
        while (t > 0 && sub[t - 1] == m - ((k - 1) - (t - 1))) --t;
        if (t == 0) break;
        ++sub[t - 1];
        for (int i = t; i < k - 1; ++i) sub[i] = sub[i - 1] + 1;
    }
    // pull from the first ray
    const RVec& r0 = coords[0];
    bool used = false;
    for (auto& [a, touch] : facets) {
        if (rdot(a, r0) == 0) continue; // facet contains r0
        used = true;
        std::vector<RVec> sub_rays;
        std::vector<int> sub_idx;
        for (int i : touch) {
            sub_rays.push_back(coords[i]);
            sub_idx.push_back(idx[i]);
        }
        std::vector<std::vector<int>> sub_out;
        tri_rec(sub_rays, sub_idx, sub_out);
        for (auto& s : sub_out) {
            std::vector<int> simplex = {idx[0]};
            simplex.insert(simplex.end(), s.begin(), s.end());
            out.push_back(std::move(simplex));
        }
    }
    check(used, "InternalError", "pulling triangulation made no progress");
}

} // namespace

std::vector<std::vector<Int>> cone_facet_normals(const std::vector<std::vector<Int>>& rays) {
    check(!rays.empty(), "InvalidCone", "empty ray list");
    int n = (int)rays[0].size();
    std::vector<RVec> rr = to_rat(rays);
    int k = rat_rank(rr);
    check(k == n, "InvalidCone", "cone is not full-dimensional");
    std::vector<std::vector<Int>> out;
    std::set<std::vector<Int>> seen;
    int m = (int)rays.size();
    std::vector<int> sub(n - 1);
    for (int i = 0; i < n - 1; ++i) sub[i] = i;
    for (;;) {
        std::vector<RVec> A;
        for (int i = 0; i < n - 1; ++i) A.push_back(rr[sub[i]]);
        auto ker = rat_nullspace(A, n);
        if (ker.size() == 1) {
            std::vector<Int> a = rat_to_primitive(ker[0]);
            bool pos = false, neg = false;
            for (auto& ray : rays) {
                Int v = idot(a, ray);
                if (v > 0) pos = true;
                if (v < 0) neg = true;
            }
            if (!(pos && neg)) {
                if (neg)
                    for (auto& x : a) x = -x;
                std::vector<std::vector<Int>> span;
                for (auto& ray : rays)
                    if (idot(a, ray) == 0) span.push_back(ray);
                if (int_rank(span) == n - 1 && !seen.count(a)) {
                    seen.insert(a);
                    out.push_back(a);
                }
            }
        }
        int t = n - 1;
        while (t > 0 && sub[t - 1] == m - ((n - 1) - (t - 1))) --t;
        if (t == 0) break;
        ++sub[t - 1];
        for (int i = t; i < n - 1; ++i) sub[i] = sub[i - 1] + 1;
    }
    return out;
}

std::vector<std::vector<std::vector<Int>>> triangulate_cone(
    const std::vector<std::vector<Int>>& rays) {
    std::vector<int> idx(rays.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<int>> simplices;
    tri_rec(to_rat(rays), idx, simplices);
    std::vector<std::vector<std::vector<Int>>> out;
    for (auto& s : simplices) {
        std::vector<std::vector<Int>> gens;
        for (int i : s) gens.push_back(rays[i]);
        out.push_back(std::move(gens));
    }
    return out;
}

// ---------------- general fan ----------------

GeneralFaceFan build_general_fan(const MPoly& h) {
    int n = h.d + 1;
    check(n <= 5, "DimensionGuard", "general fan supports at most 5 variables in total");
    check(!mp_is_zero(h), "InvalidInput", "zero polynomial");
    GeneralFaceFan fan;
    fan.n = n;
    for (auto& [e, c] : h.terms) {
        std::vector<Int> v(n);
        for (int i = 0; i < n; ++i) v[i] = e[i];
        fan.support.push_back(std::move(v));
    }
    Hull H = build_hull(fan.support);
    for (auto& f : H.faces) {
        if (!f.compact) continue;
        FanFace face;
        face.pts = f.pts;
        face.dim = f.dim;
        // normalized volume: triangulate the polytope by lifting to a cone
        if (f.dim == 0) {
            face.normalized_volume = 1;
        } else {
            std::vector<std::vector<Int>> lifted;
            for (int pi : f.pts) {
                std::vector<Int> v = H.pts[pi];
                v.push_back(1);
                lifted.push_back(std::move(v));
            }
            std::vector<int> idx(lifted.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::vector<std::vector<int>> simplices;
            tri_rec(to_rat(lifted), idx, simplices);
            Int vol = 0;
            for (auto& s : simplices) {
                // edge matrix relative to the first vertex of the simplex
                std::vector<std::vector<Int>> edges;
                for (size_t i = 1; i < s.size(); ++i) {
                    std::vector<Int> e2(n);
                    for (int j = 0; j < n; ++j)
                        e2[j] = H.pts[f.pts[s[i]]][j] - H.pts[f.pts[s[0]]][j];
                    edges.push_back(std::move(e2));
                }
                vol += minor_gcd(edges);
            }
            face.normalized_volume = vol;
        }
        // dual cone rays = normals of facets containing the face
        for (int fi : f.facets) face.rays.push_back(H.facets[fi].normal);
        check(!face.rays.empty(), "InternalError", "compact face with empty dual cone");
        for (auto& gens : triangulate_cone(face.rays))
            face.simplices.push_back(fundamental_set(gens));
        fan.faces.push_back(std::move(face));
    }
    return fan;
}

} // namespace qoz
