#pragma once

// Homotopy invariants of the plane field induced on the boundary of an
// ALF: the Poincare dual of c1 as a sum of rotation-weighted cocore
// images, and for c1 = 0 the rational d3 = (c^2 - 3 sigma - 2 chi) / 4 + q.
// Also the two normalizations the assembly needs: killing c1 by changing
// rotation numbers in steps of 2, and equalizing d3 by negative
// stabilization.

#include <optional>
#include <utility>
#include <vector>

#include "lefcalc/alf.hpp"

namespace lefcalc {

struct ChernClass {
    IntVector element;  // normal-form coordinates in H_1(boundary)
    AbelianGroup group;
    // Even-order torsion in H_1: the formulas are used outside the
    // no-2-torsion setting they were derived for.
    bool two_torsion_regime = false;

    bool is_zero() const { return lefcalc::is_zero(element); }
};

inline ChernClass chern_class(const ALF& a) {
    const BoundaryHomology h = h1_boundary(induced_kirby_data(a));
    return {h.combine(a.rotations()), h.group(), h.group().has_even_torsion()};
}

/// The four ingredients of d3 for an ALF with c1 = 0.
struct D3Terms {
    Rational c_squared;
    int sigma = 0;
    Int chi = 0;
    std::size_t q = 0;

    Rational d3() const { return (c_squared - 3 * sigma - 2 * Rational(chi)) / 4 + Int(q); }

    // Same value through the almost complex Y = X #_q CP^2:
    // c1(Y)^2 = c^2 + 9q, sigma(Y) = sigma + q, chi(Y) = chi + q.
    Rational d3_via_blowup() const {
        const Rational c1y_sq = c_squared + 9 * Int(q);
        const Int sigma_y = Int(sigma) + Int(q);
        const Int chi_y = chi + Int(q);
        return (c1y_sq - 3 * Rational(sigma_y) - 2 * Rational(chi_y)) / 4;
    }
};

inline D3Terms d3_terms(const ALF& a) {
    const KirbyData k = induced_kirby_data(a);
    const IntVector r = a.rotations();
    return {c_squared(k, r), signature(k), euler_characteristic(k), a.q()};
}

/// Throws NotSolvable when c1 != 0.
inline Rational d3(const ALF& a) { return d3_terms(a).d3(); }

struct HomotopyClass {
    ChernClass c1;
    std::optional<Rational> d3;  // present only when c1 = 0
    std::size_t q = 0;
};

inline HomotopyClass homotopy_class(const ALF& a) {
    HomotopyClass h{chern_class(a), std::nullopt, a.q()};
    if (h.c1.is_zero()) h.d3 = d3(a);
    return h;
}

// ---------------------------------------------------------------------------
// Normalizations.

struct StabilizationPlan {
    struct Move {
        std::size_t cycle = 0;
        Int count = 0;  // a_i: the rotation of this cycle changes by -2 * a_i
        StabilizationPattern pattern = kPositiveNegative;

        bool operator==(const Move&) const = default;
    };
    std::vector<Move> moves;
    std::size_t extra_negative_stabs = 0;

    bool empty() const { return moves.empty() && extra_negative_stabs == 0; }
    bool operator==(const StabilizationPlan&) const = default;
};

/// Pushes cycle i over two new fiber handles (one positive, one negative
/// stabilization), shifting its rotation by 2 * sign. Page framing and
/// total space are preserved.
inline ALF stabilize_cycle_double(const ALF& a, std::size_t i, int sign) {
    if (i >= a.cycles.size()) throw InputError("cycle index out of range");
    const OpenBook ob = boundary_open_book(a);
    const MarkedKnot knot{a.cycles[i].curve, a.cycles[i].rotation, i};
    const auto [book, moved] = stabilize_knot_double(ob, knot, sign, kPositiveNegative);

    const SurfaceExtension first = extend_surface(a.fiber, HandleKind::split);
    const SurfaceExtension second = extend_surface(first.target, HandleKind::split);
    ALF out = transport(second, transport(first, a));
    out.cycles[i].curve = moved.curve;
    out.cycles[i].rotation = moved.rotation;
    for (std::size_t t = a.cycles.size(); t < book.monodromy.size(); ++t)
        out.cycles.push_back({book.monodromy[t].curve, book.monodromy[t].sign, 0});
    return out;
}

inline ALF apply_plan(ALF a, const StabilizationPlan& plan) {
    for (const auto& m : plan.moves) {
        if (m.pattern != kPositiveNegative) throw InputError("only the positive/negative double move changes rotations");
        const int dir = m.count > 0 ? -1 : 1;
        for (Int n = 0; n < (m.count < 0 ? Int(-m.count) : m.count); ++n) a = stabilize_cycle_double(a, m.cycle, dir);
    }
    for (std::size_t n = 0; n < plan.extra_negative_stabs; ++n) a = stabilize_alf(a, -1);
    return a;
}

/// Solves sum_i a_i (2 c_i) = PD c1 in H_1(boundary) and applies the moves,
/// leaving c1 = 0 with every rotation changed by an even amount.
inline std::pair<ALF, StabilizationPlan> adjust_rotations(const ALF& a) {
    const BoundaryHomology h = h1_boundary(induced_kirby_data(a));
    const IntVector c1 = h.combine(a.rotations());
    if (is_zero(c1)) return {a, {}};

    const std::size_t l = a.cycles.size();
    const std::size_t coords = h.presentation.coordinate_count();
    const std::size_t torsion = h.group().torsion.size();
    // Unknowns: a_1..a_l, then one multiplier per torsion factor.
    Matrix B(coords, l + torsion);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t k = 0; k < coords; ++k) B(k, i) = 2 * h.cocores[i].vector[k];
    for (std::size_t k = 0; k < torsion; ++k) B(k, l + k) = h.presentation.factor_order(k);

    const auto sol = solve_integer(B, c1);
    if (!sol) throw NotSolvable("PD c1 is not in the subgroup generated by 2c_1, ..., 2c_l");

    // Short representative modulo the kernel; the kernel projects
    // injectively onto the a-coordinates.
    const Matrix K = right_kernel(B);
    std::vector<IntVector> lattice;
    for (std::size_t c = 0; c < K.cols(); ++c) {
        IntVector v = K.col_vector(c);
        v.resize(l);
        lattice.push_back(std::move(v));
    }
    const IntVector counts = reduce_modulo_lattice(IntVector(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(l)), lattice);

    StabilizationPlan plan;
    for (std::size_t i = 0; i < l; ++i)
        if (counts[i] != 0) plan.moves.push_back({i, counts[i], kPositiveNegative});
    return {apply_plan(a, plan), plan};
}

struct D3Match {
    ALF first;
    ALF second;
    StabilizationPlan first_plan;
    StabilizationPlan second_plan;
    Rational d3;
};

/// One negative stabilization on each side, then the lower side absorbs
/// the (integral) gap. Both sides end up overtwisted with equal d3.
inline D3Match match_d3(const ALF& a1, const ALF& a2) {
    if (!chern_class(a1).is_zero() || !chern_class(a2).is_zero())
        throw NotSolvable("d3 matching needs c1 = 0 on both sides");
    const Rational gap = d3(a2) - d3(a1);
    if (boost::multiprecision::denominator(gap) != 1)
        throw NotSolvable("d3 values differ by " + to_string(gap) + ", not an integer");
    const Int n = boost::multiprecision::numerator(gap);

    StabilizationPlan p1, p2;
    p1.extra_negative_stabs = 1;
    p2.extra_negative_stabs = 1;
    if (n > 0) p1.extra_negative_stabs += static_cast<std::size_t>(n);
    if (n < 0) p2.extra_negative_stabs += static_cast<std::size_t>(-n);

    D3Match m{apply_plan(a1, p1), apply_plan(a2, p2), p1, p2, 0};
    m.d3 = d3(m.first);
    if (d3(m.second) != m.d3) throw IntegrityError("d3 matching failed to equalize the two sides");
    return m;
}

}  // namespace lefcalc
