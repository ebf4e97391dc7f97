#pragma once

// Smith normal form over the integers and the linear algebra built on it:
// integer solves, lattice kernels, and finitely generated abelian groups
// given by presentation matrices.

#include <optional>
#include <utility>

#include "lefcalc/numeric.hpp"

namespace lefcalc {

/// U * M * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithForm {
    Matrix U;
    Matrix D;
    Matrix V;
    std::size_t rank = 0;

    const Int& factor(std::size_t i) const { return D(i, i); }
};

namespace detail {

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace detail

inline SmithForm smith_normal_form(const Matrix& M) {
    const std::size_t m = M.rows();
    const std::size_t n = M.cols();
    SmithForm s{Matrix::identity(m), M, Matrix::identity(n), 0};
    Matrix& D = s.D;

    // Row operations on D are mirrored on U, column operations on V.
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        D.swap_rows(a, b);
        s.U.swap_rows(a, b);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        D.swap_cols(a, b);
        s.V.swap_cols(a, b);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& k) {
        D.add_row(dst, src, k);
        s.U.add_row(dst, src, k);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& k) {
        D.add_col(dst, src, k);
        s.V.add_col(dst, src, k);
    };

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D(i, j) != 0 && (!best || detail::abs_int(D(i, j)) < detail::abs_int(D(best->first, best->second))))
                        best = {i, j};
            if (!best) {
                s.rank = t;
                return s;
            }
            swap_rows(t, best->first);
            swap_cols(t, best->second);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                add_row(i, t, -(D(i, t) / D(t, t)));
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                add_col(j, t, -(D(t, j) / D(t, t)));
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            s.U.negate_row(t);
        }
        s.rank = t + 1;
    }
    return s;
}

/// Some integer x with M * x == b, or nullopt when none exists.
inline std::optional<IntVector> solve_integer(const Matrix& M, std::span<const Int> b) {
    if (b.size() != M.rows()) throw InputError("solve_integer: right-hand side has wrong length");
    const SmithForm s = smith_normal_form(M);
    const IntVector ub = s.U * b;
    IntVector w(M.cols());
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < s.rank) {
            if (ub[i] % s.factor(i) != 0) return std::nullopt;
            w[i] = ub[i] / s.factor(i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V * std::span<const Int>(w);
}

/// Z-basis (as rows) of the left kernel { y : y^T M == 0 }.
inline Matrix left_kernel(const Matrix& M) {
    const SmithForm s = smith_normal_form(M);
    Matrix K(M.rows() - s.rank, M.rows());
    for (std::size_t i = s.rank; i < M.rows(); ++i)
        for (std::size_t c = 0; c < M.rows(); ++c) K(i - s.rank, c) = s.U(i, c);
    return K;
}

/// Z-basis (as columns) of the right kernel { x : M x == 0 }.
inline Matrix right_kernel(const Matrix& M) {
    const SmithForm s = smith_normal_form(M);
    Matrix K(M.cols(), M.cols() - s.rank);
    for (std::size_t r = 0; r < M.cols(); ++r)
        for (std::size_t c = s.rank; c < M.cols(); ++c) K(r, c - s.rank) = s.V(r, c);
    return K;
}

// ---------------------------------------------------------------------------
// Lattice reduction, for picking short representatives of solution cosets.

inline Int round_nearest(const Rational& x) {
    // floor(x + 1/2)
    const Rational y = x + Rational(1, 2);
    const Int p = boost::multiprecision::numerator(y), q = boost::multiprecision::denominator(y);
    return p >= 0 ? Int(p / q) : Int(-((-p + q - 1) / q));
}

/// LLL reduction (delta = 3/4) of linearly independent integer vectors.
inline std::vector<IntVector> lll_reduce(std::vector<IntVector> b) {
    const std::size_t n = b.size();
    if (n < 2) return b;
    const std::size_t dim = b[0].size();
    std::vector<std::vector<Rational>> star(n, std::vector<Rational>(dim)), mu(n, std::vector<Rational>(n));
    std::vector<Rational> norm(n);
    auto orthogonalize = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) star[i][d] = b[i][d];
            for (std::size_t j = 0; j < i; ++j) {
                Rational num = 0;
                for (std::size_t d = 0; d < dim; ++d) num += Rational(b[i][d]) * star[j][d];
                mu[i][j] = norm[j] == 0 ? Rational(0) : num / norm[j];
                for (std::size_t d = 0; d < dim; ++d) star[i][d] -= mu[i][j] * star[j][d];
            }
            norm[i] = 0;
            for (std::size_t d = 0; d < dim; ++d) norm[i] += star[i][d] * star[i][d];
        }
    };
    orthogonalize();
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            const Int q = round_nearest(mu[k][j]);
            if (q == 0) continue;
            for (std::size_t d = 0; d < dim; ++d) b[k][d] -= q * b[j][d];
            orthogonalize();
        }
        if (norm[k] >= (Rational(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            orthogonalize();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

/// A short element of x + L, L spanned by independent `basis` vectors:
/// nearest-plane rounding against an LLL basis, then greedy L1 descent.
inline IntVector reduce_modulo_lattice(IntVector x, const std::vector<IntVector>& basis) {
    if (basis.empty()) return x;
    const std::vector<IntVector> b = lll_reduce(basis);
    const std::size_t n = b.size(), dim = x.size();
    std::vector<std::vector<Rational>> star(n, std::vector<Rational>(dim));
    std::vector<Rational> norm(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) star[i][d] = b[i][d];
        for (std::size_t j = 0; j < i; ++j) {
            Rational num = 0;
            for (std::size_t d = 0; d < dim; ++d) num += Rational(b[i][d]) * star[j][d];
            for (std::size_t d = 0; d < dim; ++d) star[i][d] -= num / norm[j] * star[j][d];
        }
        for (std::size_t d = 0; d < dim; ++d) norm[i] += star[i][d] * star[i][d];
    }
    for (std::size_t i = n; i-- > 0;) {
        Rational num = 0;
        for (std::size_t d = 0; d < dim; ++d) num += Rational(x[d]) * star[i][d];
        const Int q = round_nearest(num / norm[i]);
        for (std::size_t d = 0; d < dim; ++d) x[d] -= q * b[i][d];
    }
    auto l1 = [](const IntVector& v) {
        Int s = 0;
        for (const auto& e : v) s += e < 0 ? Int(-e) : e;
        return s;
    };
    for (bool improved = true; improved;) {
        improved = false;
        for (const auto& v : b)
            for (int sign : {1, -1}) {
                IntVector y = x;
                for (std::size_t d = 0; d < dim; ++d) y[d] += sign * v[d];
                if (l1(y) < l1(x)) {
                    x = std::move(y);
                    improved = true;
                }
            }
    }
    return x;
}

/// Finitely generated abelian group Z^free_rank + (+)_i Z/torsion[i].
struct AbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;  // invariant factors, each > 1, d_i | d_{i+1}

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool has_even_torsion() const {
        return std::any_of(torsion.begin(), torsion.end(), [](const Int& d) { return d % 2 == 0; });
    }
    bool operator==(const AbelianGroup&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const AbelianGroup& g) {
        if (g.trivial()) return os << "0";
        bool first = true;
        for (const Int& d : g.torsion) {
            os << (first ? "" : " + ") << "Z/" << d;
            first = false;
        }
        if (g.free_rank > 0) {
            os << (first ? "" : " + ") << "Z";
            if (g.free_rank > 1) os << "^" << g.free_rank;
        }
        return os;
    }
};

/// The cokernel of a relation matrix (generators index rows, relations are
/// columns) together with the normal-form coordinates of its elements.
///
/// Elements are written on the nontrivial cyclic factors: first the torsion
/// factors (coordinate reduced into [0, d)), then the free factors.
class PresentedGroup {
  public:
    PresentedGroup() = default;
    explicit PresentedGroup(Matrix relations)
        : relations_(std::move(relations)), smith_(smith_normal_form(relations_)) {
        for (std::size_t i = 0; i < relations_.rows(); ++i) {
            if (i < smith_.rank) {
                if (smith_.factor(i) != 1) {
                    factor_rows_.push_back(i);
                    group_.torsion.push_back(smith_.factor(i));
                }
            } else {
                factor_rows_.push_back(i);
                ++group_.free_rank;
            }
        }
    }

    const AbelianGroup& group() const { return group_; }
    const Matrix& relations() const { return relations_; }
    const SmithForm& smith() const { return smith_; }
    std::size_t generator_count() const { return relations_.rows(); }
    std::size_t coordinate_count() const { return factor_rows_.size(); }

    // Order of the k-th cyclic factor, 0 for free factors.
    Int factor_order(std::size_t k) const {
        return k < group_.torsion.size() ? group_.torsion[k] : Int(0);
    }

    IntVector reduce(std::span<const Int> v) const {
        if (v.size() != generator_count()) throw InputError("group element has wrong length");
        const IntVector uv = smith_.U * v;
        IntVector out(factor_rows_.size());
        for (std::size_t k = 0; k < factor_rows_.size(); ++k) {
            out[k] = uv[factor_rows_[k]];
            const Int d = factor_order(k);
            if (d != 0) {
                out[k] %= d;
                if (out[k] < 0) out[k] += d;
            }
        }
        return out;
    }

    IntVector generator(std::size_t i) const {
        IntVector e(generator_count());
        e.at(i) = 1;
        return reduce(e);
    }

    bool is_zero(std::span<const Int> v) const { return lefcalc::is_zero(reduce(v)); }

  private:
    Matrix relations_;
    SmithForm smith_;
    AbelianGroup group_;
    std::vector<std::size_t> factor_rows_;
};

}  // namespace lefcalc
