#pragma once

// Open books as monodromy factorizations: stabilization, surgery on page
// curves, and Legendrian knots sitting on pages.

#include <array>
#include <utility>
#include <vector>

#include "lefcalc/surface.hpp"

namespace lefcalc {

struct OpenBook {
    Surface page;
    std::vector<SignedTwist> monodromy;

    OpenBook() = default;
    OpenBook(Surface p, std::vector<SignedTwist> word) : page(p), monodromy(std::move(word)) {
        if (page.boundary_count < 1) throw InputError("open book page needs nonempty binding");
        for (const auto& t : monodromy)
            if (!(t.curve.surface == page)) throw InputError("monodromy twist does not lie on the page");
    }

    int binding_components() const { return page.boundary_count; }
    bool operator==(const OpenBook&) const = default;
};

/// Oriented Legendrian knot on the page_index-th page, kept as homology data.
struct MarkedKnot {
    CurveClass curve;
    Int rotation = 0;
    std::size_t page_index = 0;

    bool operator==(const MarkedKnot&) const = default;
};

inline void check_knot(const OpenBook& ob, const MarkedKnot& k) {
    if (!(k.curve.surface == ob.page)) throw SurfaceMismatch();
    if (k.page_index > ob.monodromy.size()) throw InputError("knot page index outside the monodromy word");
}

/// Product of the transvections in word order.
inline Matrix abelianized_monodromy(const OpenBook& ob) {
    Matrix M = Matrix::identity(ob.page.h1_rank());
    for (const auto& t : ob.monodromy) M = M * transvection_matrix(t);
    return M;
}

/// Word with adjacent inverse pairs (same curve, opposite sign) cancelled.
inline std::vector<SignedTwist> freely_reduced(const std::vector<SignedTwist>& word) {
    std::vector<SignedTwist> out;
    for (const auto& t : word) {
        if (!out.empty() && out.back().curve == t.curve && out.back().sign == -t.sign)
            out.pop_back();
        else
            out.push_back(t);
    }
    return out;
}

inline bool syntactically_equal(const OpenBook& x, const OpenBook& y) {
    return x.page == y.page && freely_reduced(x.monodromy) == freely_reduced(y.monodromy);
}

inline OpenBook transport(const SurfaceExtension& ext, const OpenBook& ob) {
    std::vector<SignedTwist> word;
    word.reserve(ob.monodromy.size());
    for (const auto& t : ob.monodromy) word.push_back(ext.transport(t));
    return {ext.target, std::move(word)};
}

/// Adds a page handle and a twist of the given sign about the new class.
inline OpenBook stabilize(const OpenBook& ob, int sign, HandleKind kind = HandleKind::split) {
    if (kind == HandleKind::torus) throw InputError("stabilization attaches a single handle");
    const SurfaceExtension ext = extend_surface(ob.page, kind);
    OpenBook out = transport(ext, ob);
    out.monodromy.emplace_back(ext.new_class(), sign);
    return out;
}

/// Twist signs of the two stabilizations used by a knot-stabilizing move.
using StabilizationPattern = std::array<int, 2>;
inline constexpr StabilizationPattern kDoublePositive{1, 1};
inline constexpr StabilizationPattern kPositiveNegative{1, -1};

/// Stabilizes twice and pushes the knot across both new handles. The new
/// knot class is k + e1 + sign * e2; the rotation number moves by 2 * sign.
/// Both new classes are boundary-parallel, so the page framing of the knot
/// is unchanged under any Seifert form extended by the split moves.
inline std::pair<OpenBook, MarkedKnot> stabilize_knot_double(const OpenBook& ob, const MarkedKnot& k, int sign,
                                                             StabilizationPattern pattern = kDoublePositive) {
    check_knot(ob, k);
    if (sign != 1 && sign != -1) throw InputError("knot stabilization sign must be +1 or -1");
    const SurfaceExtension first = extend_surface(ob.page, HandleKind::split);
    const SurfaceExtension second = extend_surface(first.target, HandleKind::split);

    OpenBook out = transport(second, transport(first, ob));
    const CurveClass e1 = second.transport(first.new_class());
    const CurveClass e2 = second.new_class();
    out.monodromy.emplace_back(e1, pattern[0]);
    out.monodromy.emplace_back(e2, pattern[1]);

    MarkedKnot moved = k;
    moved.curve = second.transport(first.transport(k.curve)) + e1 + e2 * Int(sign);
    moved.rotation = k.rotation + 2 * sign;
    return {std::move(out), std::move(moved)};
}

/// Contact (+1) surgery appends a left twist, contact (-1) a right twist.
inline OpenBook page_surgery(const OpenBook& ob, const CurveClass& c, int contact_coeff) {
    if (contact_coeff != 1 && contact_coeff != -1) throw InputError("contact surgery coefficient must be +1 or -1");
    if (!(c.surface == ob.page)) throw SurfaceMismatch();
    OpenBook out = ob;
    out.monodromy.emplace_back(c, -contact_coeff);
    return out;
}

}  // namespace lefcalc
