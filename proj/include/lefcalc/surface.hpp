#pragma once

// Compact oriented surfaces with boundary, homology classes of curves on
// them, and the homological action of signed Dehn twists.
//
// H_1 basis order: a_1, b_1, ..., a_g, b_g, d_1, ..., d_{b-1}, with
// <a_i, b_i> = 1 and the boundary-parallel classes d_j in the radical of
// the intersection form.

#include <cstddef>
#include <utility>
#include <vector>

#include "lefcalc/numeric.hpp"

namespace lefcalc {

struct Surface {
    int genus = 0;
    int boundary_count = 1;

    Surface() = default;
    Surface(int g, int b) : genus(g), boundary_count(b) {
        if (g < 0 || b < 0) throw InputError("surface genus and boundary count must be nonnegative");
    }

    static Surface disk() { return {0, 1}; }
    static Surface annulus() { return {0, 2}; }

    std::size_t h1_rank() const {
        return static_cast<std::size_t>(2 * genus + std::max(boundary_count - 1, 0));
    }
    int euler_characteristic() const { return 2 - 2 * genus - boundary_count; }

    std::size_t a_index(int i) const { return static_cast<std::size_t>(2 * i); }
    std::size_t b_index(int i) const { return static_cast<std::size_t>(2 * i + 1); }
    std::size_t d_index(int j) const { return static_cast<std::size_t>(2 * genus + j); }

    bool operator==(const Surface&) const = default;
};

/// Block-diagonal standard symplectic pairing, zero on boundary classes.
inline Matrix intersection_form(const Surface& s) {
    Matrix J(s.h1_rank(), s.h1_rank());
    for (int i = 0; i < s.genus; ++i) {
        J(s.a_index(i), s.b_index(i)) = 1;
        J(s.b_index(i), s.a_index(i)) = -1;
    }
    return J;
}

struct CurveClass {
    Surface surface;
    IntVector coeffs;
    // The caller asserts an embedded representative exists; never checked.
    bool embedded_hint = true;

    CurveClass() = default;
    CurveClass(Surface s, IntVector c, bool embedded = true)
        : surface(s), coeffs(std::move(c)), embedded_hint(embedded) {
        if (coeffs.size() != surface.h1_rank())
            throw InputError("curve class length does not match the surface's H1 rank");
    }

    static CurveClass zero(const Surface& s) { return {s, IntVector(s.h1_rank())}; }
    static CurveClass basis(const Surface& s, std::size_t i) {
        IntVector v(s.h1_rank());
        v.at(i) = 1;
        return {s, std::move(v)};
    }

    bool is_zero() const { return lefcalc::is_zero(coeffs); }

    CurveClass operator+(const CurveClass& o) const {
        if (!(surface == o.surface)) throw SurfaceMismatch();
        CurveClass r = *this;
        for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
        return r;
    }
    CurveClass operator*(const Int& k) const {
        CurveClass r = *this;
        for (auto& c : r.coeffs) c *= k;
        return r;
    }
    CurveClass operator-() const { return *this * Int(-1); }

    // Equality is on homology data only.
    bool operator==(const CurveClass& o) const { return surface == o.surface && coeffs == o.coeffs; }
};

struct SignedTwist {
    CurveClass curve;
    int sign = 1;  // +1 right-handed D_c, -1 left-handed D_c^{-1}

    SignedTwist() = default;
    SignedTwist(CurveClass c, int s) : curve(std::move(c)), sign(s) {
        if (s != 1 && s != -1) throw InputError("twist sign must be +1 or -1");
    }

    SignedTwist inverse() const { return {curve, -sign}; }
    bool operator==(const SignedTwist&) const = default;
};

/// Bilinear form on H_1 of a page with L - L^T = J; L(c, c) is the page
/// framing of c against the 0-reference, L(y, x) the linking of x with a
/// push-off of y to a later page.
struct SeifertForm {
    Surface surface;
    Matrix matrix;

    SeifertForm() = default;
    SeifertForm(Surface s, Matrix m) : surface(s), matrix(std::move(m)) {
        const std::size_t n = surface.h1_rank();
        if (matrix.rows() != n || matrix.cols() != n) throw InputError("Seifert matrix has wrong dimensions");
        const Matrix J = intersection_form(surface);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (matrix(i, j) - matrix(j, i) != J(i, j))
                    throw InputError("Seifert matrix does not antisymmetrize to the intersection form");
    }

    /// Strict upper-triangular part of J: every basis curve has framing 0.
    static SeifertForm standard(const Surface& s) {
        Matrix L(s.h1_rank(), s.h1_rank());
        for (int i = 0; i < s.genus; ++i) L(s.a_index(i), s.b_index(i)) = 1;
        return {s, std::move(L)};
    }

    Int operator()(const CurveClass& x, const CurveClass& y) const {
        if (!(x.surface == surface) || !(y.surface == surface)) throw SurfaceMismatch();
        return dot(x.coeffs, matrix * std::span<const Int>(y.coeffs));
    }

    bool operator==(const SeifertForm&) const = default;
};

inline Int intersection_number(const CurveClass& x, const CurveClass& y) {
    if (!(x.surface == y.surface)) throw SurfaceMismatch();
    const Surface& s = x.surface;
    Int r = 0;
    for (int i = 0; i < s.genus; ++i) {
        const auto a = s.a_index(i), b = s.b_index(i);
        r += x.coeffs[a] * y.coeffs[b] - x.coeffs[b] * y.coeffs[a];
    }
    return r;
}

/// Transvection x -> x + sign * <c, x> * c. With <a_1, b_1> = 1 a positive
/// twist about a_1 sends b_1 to b_1 + a_1.
inline CurveClass twist_action(const SignedTwist& t, const CurveClass& x) {
    if (!(t.curve.surface == x.surface)) throw SurfaceMismatch();
    const Int k = t.sign * intersection_number(t.curve, x);
    if (k == 0) return x;
    return x + t.curve * k;
}

inline Matrix transvection_matrix(const SignedTwist& t) {
    const Surface& s = t.curve.surface;
    Matrix T(s.h1_rank(), s.h1_rank());
    for (std::size_t j = 0; j < s.h1_rank(); ++j) {
        const CurveClass image = twist_action(t, CurveClass::basis(s, j));
        for (std::size_t i = 0; i < s.h1_rank(); ++i) T(i, j) = image.coeffs[i];
    }
    return T;
}

inline Int seifert_framing(const SeifertForm& L, const CurveClass& c) { return L(c, c); }

// ---------------------------------------------------------------------------
// Growing the page.

enum class HandleKind {
    split,  // both feet on one boundary circle: (g, b) -> (g, b + 1)
    join,   // feet on two boundary circles: (g, b) -> (g + 1, b - 1)
    torus,  // connected sum with a torus: (g, b) -> (g + 1, b)
};

/// A surface grown by one move, with the inclusion on H_1.
struct SurfaceExtension {
    Surface source;
    Surface target;
    HandleKind kind = HandleKind::split;
    Matrix embedding;                      // target rank x source rank
    std::vector<std::size_t> new_classes;  // target basis indices outside the image

    CurveClass transport(const CurveClass& x) const {
        if (!(x.surface == source)) throw SurfaceMismatch();
        return {target, embedding * std::span<const Int>(x.coeffs), x.embedded_hint};
    }

    SeifertForm transport(const SeifertForm& L) const {
        if (!(L.surface == source)) throw SurfaceMismatch();
        Matrix m = embedding * L.matrix * embedding.transpose();
        if (kind != HandleKind::split) m(target.a_index(source.genus), target.b_index(source.genus)) += 1;
        return {target, std::move(m)};
    }

    SignedTwist transport(const SignedTwist& t) const { return {transport(t.curve), t.sign}; }

    /// The class meeting the new cocore once (last new basis vector).
    CurveClass new_class() const { return CurveClass::basis(target, new_classes.back()); }
};

inline SurfaceExtension extend_surface(const Surface& s, HandleKind kind) {
    if (s.boundary_count < 1) throw InputError("cannot attach a handle to a closed surface");
    SurfaceExtension ext;
    ext.source = s;
    ext.kind = kind;
    switch (kind) {
        case HandleKind::split: ext.target = Surface(s.genus, s.boundary_count + 1); break;
        case HandleKind::torus: ext.target = Surface(s.genus + 1, s.boundary_count); break;
        case HandleKind::join:
            if (s.boundary_count < 2) throw InputError("joining handle needs two boundary components");
            ext.target = Surface(s.genus + 1, s.boundary_count - 1);
            break;
    }
    const Surface& t = ext.target;
    ext.embedding = Matrix(t.h1_rank(), s.h1_rank());
    for (int i = 0; i < s.genus; ++i) {
        ext.embedding(t.a_index(i), s.a_index(i)) = 1;
        ext.embedding(t.b_index(i), s.b_index(i)) = 1;
    }
    const int old_d = std::max(s.boundary_count - 1, 0);
    switch (kind) {
        case HandleKind::split:
            for (int j = 0; j < old_d; ++j) ext.embedding(t.d_index(j), s.d_index(j)) = 1;
            ext.new_classes = {t.d_index(old_d)};
            break;
        case HandleKind::torus:
            for (int j = 0; j < old_d; ++j) ext.embedding(t.d_index(j), s.d_index(j)) = 1;
            ext.new_classes = {t.a_index(s.genus), t.b_index(s.genus)};
            break;
        case HandleKind::join:
            // The last boundary class becomes the new a; the handle core is the new b.
            for (int j = 0; j + 1 < old_d; ++j) ext.embedding(t.d_index(j), s.d_index(j)) = 1;
            ext.embedding(t.a_index(s.genus), s.d_index(old_d - 1)) = 1;
            ext.new_classes = {t.b_index(s.genus)};
            break;
    }
    return ext;
}

inline Surface add_page_handle(const Surface& s) { return extend_surface(s, HandleKind::split).target; }

}  // namespace lefcalc
