#include <algorithm>
#include <set>

#include "qoz/hull.hpp"

namespace qoz {

// basis of the nullspace of an m x k rational matrix
std::vector<std::vector<Rat>> rat_nullspace(std::vector<std::vector<Rat>> A, int k) {
    int m = (int)A.size();
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < k && row < m; ++col) {
        int pr = -1;
        for (int r = row; r < m; ++r)
            if (A[r][col] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(A[row], A[pr]);
        Rat inv = 1 / A[row][col];
        for (int j = col; j < k; ++j) A[row][j] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == row || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (int j = col; j < k; ++j) A[r][j] -= f * A[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(k, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int freec = 0; freec < k; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<Rat> v(k, Rat(0));
        v[freec] = 1;
        for (int r = 0; r < (int)pivot_col.size(); ++r) v[pivot_col[r]] = -A[r][freec];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Int> rat_to_primitive(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (auto& x : v) {
        Int d = x.get_den();
        lcm = lcm / gcd(lcm, d) * d;
    }
    std::vector<Int> r(v.size());
    Int g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(lcm);
        r[i] = s.get_num();
        g = gcd(g, r[i]);
    }
    if (g > 1)
        for (auto& x : r) x /= g;
    return r;
}

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

int int_rank(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return 0;
    int k = (int)rows[0].size();
    std::vector<std::vector<Rat>> A;
    for (auto& r : rows) {
        std::vector<Rat> rr(k);
        for (int j = 0; j < k; ++j) rr[j] = Rat(r[j]);
        A.push_back(std::move(rr));
    }
    int nul = (int)rat_nullspace(std::move(A), k).size();
    return k - nul;
}

Hull build_hull(const std::vector<std::vector<Int>>& points) {
    check(!points.empty(), "InvalidInput", "hull of an empty support");
    int n = (int)points[0].size();
    check(n >= 1 && n <= 5, "DimensionGuard", "hull dimension out of supported range (<= 5)");
    for (auto& p : points)
        check((int)p.size() == n, "InvalidInput", "inconsistent point dimensions");
    Hull H;
    H.n = n;
    H.pts = points;

    int np = (int)points.size();
    // constraint rows acting on the unknown (a_1..a_n, c):
    //   point s: a.s - c = 0  -> (s, -1)
    //   direction e_j in the facet: a_j = 0 -> (e_j, 0)
    struct Row { std::vector<Rat> r; };
    std::vector<Row> rows;
    for (auto& s : points) {
        std::vector<Rat> r(n + 1);
        for (int j = 0; j < n; ++j) r[j] = Rat(s[j]);
        r[n] = Rat(-1);
        rows.push_back({std::move(r)});
    }
    for (int j = 0; j < n; ++j) {
        std::vector<Rat> r(n + 1, Rat(0));
        r[j] = 1;
        rows.push_back({std::move(r)});
    }
    int nr = (int)rows.size();

    std::set<std::vector<Int>> seen; // primitive (normal, offset)
    // choose n of the rows; 1-dim nullspace -> candidate supporting hyperplane
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (;;) {
        std::vector<std::vector<Rat>> A;
        bool has_point = false;
        for (int i = 0; i < n; ++i) {
            A.push_back(rows[idx[i]].r);
            if (idx[i] < np) has_point = true;
        }
        if (has_point) {
            auto ker = rat_nullspace(std::move(A), n + 1);
            if (ker.size() == 1) {
                std::vector<Int> u = rat_to_primitive(ker[0]);
                // orient: normal componentwise >= 0
                bool anyneg = false, anypos = false;
                for (int j = 0; j < n; ++j) {
                    if (u[j] < 0) anyneg = true;
                    if (u[j] > 0) anypos = true;
                }
                if (anypos || anyneg) {
                    if (anyneg && !anypos)
                        for (auto& x : u) x = -x;
                    if (!(anyneg && anypos)) {
                        std::vector<Int> a(u.begin(), u.begin() + n);
                        Int c = u[n];
                        // must support the polyhedron: a.s >= c with equality attained
                        bool ok = true;
                        Int minv;
                        bool first = true;
                        for (auto& s : points) {
                            Int v = dot(a, s);
                            if (first || v < minv) minv = v;
                            first = false;
                        }
                        ok = (minv == c);
                        if (ok && !seen.count(u)) {
                            seen.insert(u);
                            Hull::Facet f;
                            f.normal = a;
                            f.offset = c;
                            for (int i = 0; i < np; ++i)
                                if (dot(a, points[i]) == c) f.touch_pts.push_back(i);
                            for (int j = 0; j < n; ++j)
                                if (a[j] == 0) f.touch_dirs.push_back(j);
                            // facet test: touching set affinely spans dimension n-1
                            std::vector<std::vector<Int>> span;
                            for (size_t i = 1; i < f.touch_pts.size(); ++i) {
                                std::vector<Int> dgt(n);
                                for (int j = 0; j < n; ++j)
                                    dgt[j] = points[f.touch_pts[i]][j] - points[f.touch_pts[0]][j];
                                span.push_back(std::move(dgt));
                            }
                            for (int j : f.touch_dirs) {
                                std::vector<Int> e(n, Int(0));
                                e[j] = 1;
                                span.push_back(std::move(e));
                            }
                            if (int_rank(span) == n - 1) H.facets.push_back(std::move(f));
                        }
                    }
                }
            }
        }
        // next combination
        int k = n;
        while (k > 0 && idx[k - 1] == nr - (n - (k - 1))) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (int i = k; i < n; ++i) idx[i] = idx[i - 1] + 1;
    }

    // face lattice: close facet touch sets under intersection
    using Key = std::pair<std::vector<int>, std::vector<int>>; // (pts, dirs)
    std::set<Key> cand;
    for (auto& f : H.facets) cand.insert({f.touch_pts, f.touch_dirs});
    for (;;) {
        std::set<Key> next = cand;
        for (auto& a : cand)
            for (auto& b : cand) {
                std::vector<int> ip, id;
                std::set_intersection(a.first.begin(), a.first.end(), b.first.begin(),
                                      b.first.end(), std::back_inserter(ip));
                std::set_intersection(a.second.begin(), a.second.end(), b.second.begin(),
                                      b.second.end(), std::back_inserter(id));
                if (!ip.empty()) next.insert({ip, id});
            }
        if (next.size() == cand.size()) break;
        cand = std::move(next);
    }
    for (auto& [fp, fd] : cand) {
        Hull::Face face;
        face.pts = fp;
        face.dirs = fd;
        for (int fi = 0; fi < (int)H.facets.size(); ++fi) {
            auto& f = H.facets[fi];
            bool inc = std::includes(f.touch_pts.begin(), f.touch_pts.end(), fp.begin(), fp.end()) &&
                       std::includes(f.touch_dirs.begin(), f.touch_dirs.end(), fd.begin(), fd.end());
            if (inc) face.facets.push_back(fi);
        }
        std::vector<std::vector<Int>> span;
        for (size_t i = 1; i < fp.size(); ++i) {
            std::vector<Int> dgt(n);
            for (int j = 0; j < n; ++j) dgt[j] = points[fp[i]][j] - points[fp[0]][j];
            span.push_back(std::move(dgt));
        }
        for (int j : fd) {
            std::vector<Int> e(n, Int(0));
            e[j] = 1;
            span.push_back(std::move(e));
        }
        face.dim = int_rank(span);
        face.compact = fd.empty();
        H.faces.push_back(std::move(face));
    }
    std::sort(H.faces.begin(), H.faces.end(), [](const Hull::Face& a, const Hull::Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.pts < b.pts;
    });
    return H;
}

std::vector<int> Hull::compact_faces_of_dim(int k) const {
    std::vector<int> out;
    for (int i = 0; i < (int)faces.size(); ++i)
        if (faces[i].compact && faces[i].dim == k) out.push_back(i);
    return out;
}

} // namespace qoz
