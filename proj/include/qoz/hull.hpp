#pragma once
#include <vector>

#include "qoz/numfield.hpp"

namespace qoz {

// Exact face structure of P = conv(points) + R_{>=0}^n (Newton polyhedron of a
// support set).  All data integral/rational; no floating point anywhere.
//
// Facets carry primitive integer inner normals a >= 0 with offset c = min a.x;
// faces are intersections of facets.  A face is compact iff no coordinate
// direction lies in every facet containing it.
struct Hull {
    int n = 0;                               // ambient dimension
    std::vector<std::vector<Int>> pts;       // the input support points

    struct Facet {
        std::vector<Int> normal;             // primitive, componentwise >= 0, != 0
        Int offset;                          // min over pts of normal . p
        std::vector<int> touch_pts;          // indices of pts on the facet
        std::vector<int> touch_dirs;         // coordinate dirs j with normal[j] == 0
    };
    std::vector<Facet> facets;

    struct Face {
        std::vector<int> pts;                // support points on the face (sorted)
        std::vector<int> dirs;               // recession coordinate directions (sorted)
        std::vector<int> facets;             // indices of facets containing the face
        int dim = 0;
        bool compact = false;
    };
    std::vector<Face> faces;                 // all proper faces, including vertices

    // convenience: indices into `faces`
    std::vector<int> compact_faces_of_dim(int k) const;
    std::vector<int> vertices() const { return compact_faces_of_dim(0); }
};

// points must be nonempty, all of the same dimension n with n <= 5
Hull build_hull(const std::vector<std::vector<Int>>& points);

// rank of a set of integer vectors (exact)
int int_rank(const std::vector<std::vector<Int>>& rows);

// basis of the nullspace of an m x k rational matrix (exact Gauss)
std::vector<std::vector<Rat>> rat_nullspace(std::vector<std::vector<Rat>> A, int k);
// scale a rational vector to a primitive integer vector
std::vector<Int> rat_to_primitive(const std::vector<Rat>& v);

} // namespace qoz
