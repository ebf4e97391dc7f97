#pragma once

// Homology of 4-dimensional handlebodies described by Kirby data: Euler
// characteristic, signature, H_1 of the total space and of its boundary,
// cocore images, and the square of a relative class.

#include <utility>
#include <vector>

#include "lefcalc/smith.hpp"

namespace lefcalc {

/// 0-handle, n1 one-handles, 2-handles attached along classes `attach`
/// (row i = class of the i-th attaching circle in H_1 of the 1-handlebody
/// boundary) with linking matrix `linking` (diagonal = framings), and
/// n3/n4 upper handles that only enter the Euler characteristic.
struct KirbyData {
    std::size_t n1 = 0;
    Matrix attach;
    Matrix linking;
    std::size_t n3 = 0;
    std::size_t n4 = 0;

    KirbyData() = default;
    KirbyData(std::size_t ones, Matrix a, Matrix q, std::size_t threes = 0, std::size_t fours = 0)
        : n1(ones), attach(std::move(a)), linking(std::move(q)), n3(threes), n4(fours) {
        if (linking.rows() != linking.cols()) throw InputError("linking matrix must be square");
        if (!linking.symmetric()) throw InputError("linking matrix must be symmetric");
        if (attach.rows() != linking.rows()) throw InputError("attaching classes and linking matrix disagree on the 2-handle count");
        if (attach.cols() != n1) throw InputError("attaching classes must have one entry per 1-handle");
    }

    static KirbyData ball() { return {0, Matrix(0, 0), Matrix(0, 0)}; }

    std::size_t two_handles() const { return linking.rows(); }
    bool operator==(const KirbyData&) const = default;
};

inline Int euler_characteristic(const KirbyData& k) {
    return Int(1) - Int(k.n1) + Int(k.two_handles()) - Int(k.n3) + Int(k.n4);
}

/// Signature of a symmetric integer matrix, by congruence over Q.
inline int signature_of(const Matrix& G) {
    if (!G.symmetric()) throw InputError("signature needs a symmetric matrix");
    const std::size_t n = G.rows();
    std::vector<std::vector<Rational>> S(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) S[i][j] = Rational(G(i, j));

    std::vector<bool> done(n, false);
    int sig = 0;
    for (;;) {
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n && pivot == n; ++i)
            if (!done[i] && S[i][i] != 0) pivot = i;
        if (pivot == n) {
            // No diagonal pivot: S(i,i) = S(j,j) = 0 != S(i,j), so i <- i + j makes one.
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && S[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;
            for (std::size_t c = 0; c < n; ++c) S[pi][c] += S[pj][c];
            for (std::size_t r = 0; r < n; ++r) S[r][pi] += S[r][pj];
            pivot = pi;
        }
        const Rational p = S[pivot][pivot];
        sig += p > 0 ? 1 : -1;
        done[pivot] = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (done[j] || S[j][pivot] == 0) continue;
            const Rational f = S[j][pivot] / p;
            for (std::size_t c = 0; c < n; ++c) S[j][c] -= f * S[pivot][c];
            for (std::size_t r = 0; r < n; ++r) S[r][j] -= f * S[r][pivot];
        }
    }
    return sig;
}

/// Z-basis (rows) of H_2: combinations of 2-handles whose attaching
/// classes cancel in H_1 of the 1-handlebody.
inline Matrix second_homology_basis(const KirbyData& k) { return left_kernel(k.attach); }

/// Intersection form on the H_2 basis above.
inline Matrix intersection_form(const KirbyData& k) {
    const Matrix B = second_homology_basis(k);
    return B * k.linking * B.transpose();
}

inline int signature(const KirbyData& k) { return signature_of(intersection_form(k)); }

/// H_1 of the total space: Z^{n1} modulo the attaching classes.
inline PresentedGroup h1_total(const KirbyData& k) { return PresentedGroup(k.attach.transpose()); }

struct BoundaryClassImage {
    std::size_t index = 0;
    IntVector vector;  // normal-form coordinates in the boundary presentation

    bool operator==(const BoundaryClassImage&) const = default;
};

/// H_1 of the boundary 3-manifold. Generators: the n1 one-handle circles
/// followed by the meridians of the 2-handles. Relations (columns of
/// [[0, A^T], [A, Q]]): each 1-handle circle bounds, giving sum_i A_im mu_i;
/// each 2-handle's framed longitude gives sum_m A_im x_m + sum_j Q_ij mu_j.
struct BoundaryHomology {
    PresentedGroup presentation;
    std::vector<BoundaryClassImage> cocores;  // c_i = meridian of the i-th 2-handle
    std::size_t n1 = 0;

    const AbelianGroup& group() const { return presentation.group(); }

    /// sum_i w_i c_i in normal-form coordinates.
    IntVector combine(std::span<const Int> weights) const {
        if (weights.size() != cocores.size()) throw InputError("one weight per 2-handle required");
        IntVector raw(presentation.generator_count());
        for (std::size_t i = 0; i < weights.size(); ++i) raw[n1 + i] = weights[i];
        return presentation.reduce(raw);
    }
};

inline Matrix boundary_presentation_matrix(const KirbyData& k) {
    const std::size_t n = k.n1 + k.two_handles();
    Matrix P(n, n);
    for (std::size_t i = 0; i < k.two_handles(); ++i) {
        for (std::size_t m = 0; m < k.n1; ++m) {
            P(k.n1 + i, m) = k.attach(i, m);
            P(m, k.n1 + i) = k.attach(i, m);
        }
        for (std::size_t j = 0; j < k.two_handles(); ++j) P(k.n1 + i, k.n1 + j) = k.linking(i, j);
    }
    return P;
}

inline BoundaryHomology h1_boundary(const KirbyData& k) {
    BoundaryHomology h{PresentedGroup(boundary_presentation_matrix(k)), {}, k.n1};
    for (std::size_t i = 0; i < k.two_handles(); ++i) h.cocores.push_back({i, h.presentation.generator(k.n1 + i)});
    return h;
}

/// Square of the class with Poincare dual sum_i r_i C_i, lifted to
/// H^2(X, dX). Requires sum_i r_i c_i = 0 in H_1(dX). Any solution
/// (y, x) of [[0, A^T], [A, Q]] (y, x) = (0, r) gives the same r^T x.
inline Rational c_squared(const KirbyData& k, std::span<const Int> r) {
    if (r.size() != k.two_handles()) throw InputError("one rotation number per 2-handle required");
    const BoundaryHomology h = h1_boundary(k);
    if (!is_zero(h.combine(r)))
        throw NotSolvable("c1 is nonzero in H_1 of the boundary; the class does not lift to relative cohomology");
    IntVector rhs(k.n1 + k.two_handles());
    std::copy(r.begin(), r.end(), rhs.begin() + static_cast<std::ptrdiff_t>(k.n1));
    const auto z = solve_integer(h.presentation.relations(), rhs);
    if (!z) throw NotSolvable("rotation vector is not in the image of the linking form on H_2");
    const std::span<const Int> x(z->data() + k.n1, k.two_handles());
    return Rational(dot(r, x));
}

}  // namespace lefcalc
