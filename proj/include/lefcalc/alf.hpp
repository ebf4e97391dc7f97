#pragma once

// Achiral Lefschetz fibrations over D^2 with bounded fibers, recorded as a
// fiber surface plus vanishing cycles in counter-clockwise arc order.

#include <algorithm>
#include <utility>
#include <vector>

#include "lefcalc/kirby.hpp"
#include "lefcalc/openbook.hpp"

namespace lefcalc {

struct VanishingCycle {
    CurveClass curve;
    int sign = 1;  // -1 for a negative (orientation-reversing) critical point
    Int rotation = 0;

    bool operator==(const VanishingCycle&) const = default;
};

struct ALF {
    Surface fiber;
    std::vector<VanishingCycle> cycles;
    SeifertForm seifert;

    ALF() : ALF(Surface::disk()) {}
    explicit ALF(Surface f, std::vector<VanishingCycle> cs = {})
        : ALF(f, std::move(cs), SeifertForm::standard(f)) {}
    ALF(Surface f, std::vector<VanishingCycle> cs, SeifertForm L)
        : fiber(f), cycles(std::move(cs)), seifert(std::move(L)) {
        if (fiber.boundary_count < 1) throw InputError("ALF fibers must have boundary");
        if (!(seifert.surface == fiber)) throw InputError("Seifert form lives on a different surface");
        for (const auto& c : cycles) {
            if (!(c.curve.surface == fiber)) throw InputError("vanishing cycle does not lie on the fiber");
            if (c.sign != 1 && c.sign != -1) throw InputError("vanishing cycle sign must be +1 or -1");
        }
    }

    std::size_t q() const {
        return static_cast<std::size_t>(std::count_if(cycles.begin(), cycles.end(), [](const auto& c) { return c.sign < 0; }));
    }
    IntVector rotations() const {
        IntVector r;
        r.reserve(cycles.size());
        for (const auto& c : cycles) r.push_back(c.rotation);
        return r;
    }

    bool operator==(const ALF&) const = default;
};

/// Closed fibration over S^2: capped fibers, cycles, and section data.
struct ClosedALF {
    int fiber_genus = 0;
    std::vector<VanishingCycle> cycles;
    std::vector<Int> section_self_intersections;

    Int euler_characteristic() const { return Int(2 * (2 - 2 * fiber_genus)) + Int(cycles.size()); }
    bool operator==(const ClosedALF&) const = default;
};

/// Negative cycles contribute left-handed twists.
inline OpenBook boundary_open_book(const ALF& a) {
    std::vector<SignedTwist> word;
    word.reserve(a.cycles.size());
    for (const auto& c : a.cycles) word.emplace_back(c.curve, c.sign);
    return {a.fiber, std::move(word)};
}

/// Sigma x D^2 as a 1-handlebody (one 1-handle per H_1 basis class) plus
/// one 2-handle per cycle, framed one less (positive) or one more
/// (negative) than the page framing. For i < j the later cycle sits on a
/// later page, so lk(i, j) = L(c_j, c_i).
inline KirbyData induced_kirby_data(const ALF& a) {
    const std::size_t n1 = a.fiber.h1_rank();
    const std::size_t k = a.cycles.size();
    Matrix A(k, n1), Q(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& ci = a.cycles[i].curve;
        for (std::size_t m = 0; m < n1; ++m) A(i, m) = ci.coeffs[m];
        Q(i, i) = a.seifert(ci, ci) - a.cycles[i].sign;
        for (std::size_t j = i + 1; j < k; ++j) {
            Q(i, j) = a.seifert(a.cycles[j].curve, ci);
            Q(j, i) = Q(i, j);
        }
    }
    return {n1, std::move(A), std::move(Q)};
}

inline ALF transport(const SurfaceExtension& ext, const ALF& a) {
    std::vector<VanishingCycle> cs;
    cs.reserve(a.cycles.size());
    for (const auto& c : a.cycles) cs.push_back({ext.transport(c.curve), c.sign, c.rotation});
    return {ext.target, std::move(cs), ext.transport(a.seifert)};
}

/// Adds a fiber handle and a rotation-0 cycle of the given sign about the
/// class dual to its cocore. The total space is unchanged.
inline ALF stabilize_alf(const ALF& a, int sign, HandleKind kind = HandleKind::split) {
    if (sign != 1 && sign != -1) throw InputError("stabilization sign must be +1 or -1");
    if (kind == HandleKind::torus) throw InputError("stabilization attaches a single handle");
    const SurfaceExtension ext = extend_surface(a.fiber, kind);
    ALF out = transport(ext, a);
    out.cycles.push_back({ext.new_class(), sign, 0});
    return out;
}

/// Positive joining stabilizations until the fiber has one boundary circle.
inline ALF connect_boundary(ALF a) {
    while (a.fiber.boundary_count > 1) a = stabilize_alf(a, 1, HandleKind::join);
    return a;
}

/// Caps every fiber with a disk; the capping disks form one section.
inline ClosedALF cap_to_closed(const ALF& a, std::vector<Int> section_framings) {
    if (a.fiber.boundary_count != 1)
        throw InputError("capping needs fibers with connected boundary; stabilize first");
    if (section_framings.empty()) section_framings.push_back(0);
    return {a.fiber.genus, a.cycles, std::move(section_framings)};
}

}  // namespace lefcalc
