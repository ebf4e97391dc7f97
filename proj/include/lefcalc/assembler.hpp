#pragma once

// From a handle decomposition of a closed 4-manifold X to an ALF over S^2
// on X surgered along a circle:
//
//   split    Y1 = 0/1/2-handles, Y2 = 3/4-handles upside down (Sigma_k x D^2)
//   fiber    Harer on Y1, the trivial fibration on Y2
//   c1       rotation changes on Y1 until c1 = 0 (Y2 has c1 = 0 already)
//   d3       negative stabilizations until d3 agrees, at least one per side
//   glue     W = Y1 u Y2 along the page bundles, capped by D^2 x S^2
//
// The common positive stabilization of the two boundary open books exists
// but is not computed; the closed fibration is emitted only when the two
// books already agree word for word.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lefcalc/harer.hpp"
#include "lefcalc/invariants.hpp"

namespace lefcalc {

struct ClosedManifoldInput {
    KirbyData kirby;
    std::optional<ProjectedLink> link;  // synthesized from `kirby` when absent
};

struct SplitResult {
    ProjectedLink y1;
    KirbyData y1_kirby;
    bool added_cancelling_pair = false;
    std::size_t y2_one_handles = 0;  // 2k after the parity fix
    int y2_genus = 0;

    Surface y2_fiber() const { return {y2_genus, 1}; }
};

inline SplitResult split(const ClosedManifoldInput& in) {
    if (in.kirby.n4 != 1) throw InputError("closed connected input needs exactly one 4-handle (n4 = " + std::to_string(in.kirby.n4) + ")");
    SplitResult s;
    s.y1 = in.link ? *in.link : synthesize_projection(in.kirby);
    const KirbyData direct = direct_kirby_data(s.y1);
    if (direct.n1 != in.kirby.n1 || direct.attach != in.kirby.attach || direct.linking != in.kirby.linking)
        throw InputError("projected link does not present the given Kirby data");

    s.y2_one_handles = in.kirby.n3;
    if (s.y2_one_handles % 2 == 1) {
        // A 0-framed unknot split from everything, cancelled by a new 3-handle.
        s.y1.components.push_back({{}, 0, std::nullopt});
        s.added_cancelling_pair = true;
        ++s.y2_one_handles;
    }
    s.y1_kirby = direct_kirby_data(s.y1);
    s.y2_genus = static_cast<int>(s.y2_one_handles / 2);

    const AbelianGroup h1 = h1_boundary(s.y1_kirby).group();
    if (!h1.torsion.empty() || h1.free_rank != s.y2_one_handles)
        throw InputError("boundary of the 2-handlebody is not a connected sum of S1xS2's matching the 3-handles");
    return s;
}

struct MatchCertificate {
    bool c1_side1_zero = false;
    bool c1_side2_zero = false;
    Rational d3_common;
    std::array<std::size_t, 2> negative_stabs{0, 0};
    std::string note;

    bool both_overtwisted() const { return negative_stabs[0] >= 1 && negative_stabs[1] >= 1; }
};

struct FramingVariant {
    Int framing = 0;  // integer lift relative to the page framing of the binding
    int bit = 0;      // class in pi_1(SO(3)) = Z/2
    Int section_self_intersection = 0;
    OpenBook binding_book;
    std::string summand;  // S2xS2 or S2~xS2 (meaningful for simply-connected input)
};

/// Two positive stabilizations on the binding's page; the induced framing
/// drops by one, flipping the Z/2 bit.
inline FramingVariant double_stabilization_framing(const FramingVariant& v) {
    FramingVariant out = v;
    out.binding_book = stabilize(stabilize(v.binding_book, 1), 1);
    out.framing = v.framing - 1;
    out.bit = static_cast<int>(((out.framing % 2) + 2) % 2);
    out.section_self_intersection = out.framing;
    out.summand = out.bit == 0 ? "S2xS2" : "S2~xS2";
    return out;
}

struct SurgeryOutput {
    std::optional<ClosedALF> closed_alf;
    OpenBook binding_book;  // the common page bundle along which Y1 and Y2 are glued (side 1)
    Int chi_input = 0;
    Int chi_w = 0;       // chi(Y1) + chi(Y2) read off the two fibrations
    Int chi_output = 0;  // chi(W) + 2
    int sigma_input = 0;
    std::string description = "X = W u S1xD3; output = W u D2xS2";
    std::array<FramingVariant, 2> framing_variants;
};

inline std::array<FramingVariant, 2> framing_variants_of(const SurgeryOutput& out) {
    FramingVariant base;
    base.binding_book = out.binding_book;
    base.summand = "S2xS2";
    return {base, double_stabilization_framing(base)};
}

struct PipelineStep {
    std::string stage;
    int side = 0;
    int fiber_genus = 0;
    int fiber_boundary = 0;
    std::size_t cycles = 0;
    std::size_t q = 0;
    std::optional<Rational> d3;

    bool operator==(const PipelineStep&) const = default;
};

struct PipelineResult {
    SplitResult split;
    HarerTranscript harer;
    ALF side1;
    ALF side2;
    StabilizationPlan rotation_plan;
    StabilizationPlan d3_plan1;
    StabilizationPlan d3_plan2;
    MatchCertificate certificate;
    SurgeryOutput output;
    std::vector<PipelineStep> transcript;
};

inline Int total_space_euler_characteristic(const ALF& a) {
    return Int(a.fiber.euler_characteristic()) + Int(a.cycles.size());
}

inline PipelineResult run_pipeline(const ClosedManifoldInput& in) {
    PipelineResult res;
    res.split = split(in);
    auto log = [&res](std::string stage, int side, const ALF& a) {
        const ChernClass c1 = chern_class(a);
        std::optional<Rational> d;
        if (c1.is_zero()) d = d3(a);
        res.transcript.push_back({std::move(stage), side, a.fiber.genus, a.fiber.boundary_count, a.cycles.size(), a.q(), d});
    };

    auto [alf1, harer_t] = harer_alf(res.split.y1);
    res.harer = std::move(harer_t);
    if (!harer_oracle(res.split.y1, alf1).pass()) throw IntegrityError("Harer output does not reproduce the 2-handlebody");
    ALF alf2(res.split.y2_fiber());
    log("harer", 1, alf1);
    log("trivial", 2, alf2);

    alf1 = connect_boundary(alf1);
    alf2 = connect_boundary(alf2);
    log("connect", 1, alf1);

    try {
        std::tie(alf1, res.rotation_plan) = adjust_rotations(alf1);
    } catch (const NotSolvable& e) {
        throw IntegrityError(std::string("rotation adjustment infeasible: ") + e.what());
    }
    if (!chern_class(alf2).is_zero()) throw IntegrityError("trivial fibration on Y2 has nonzero c1");
    log("adjust-rotations", 1, alf1);

    D3Match m;
    try {
        m = match_d3(alf1, alf2);
    } catch (const NotSolvable& e) {
        throw IntegrityError(std::string("d3 matching failed: ") + e.what());
    }
    res.d3_plan1 = m.first_plan;
    res.d3_plan2 = m.second_plan;
    log("match-d3", 1, m.first);
    log("match-d3", 2, m.second);

    res.side1 = connect_boundary(m.first);
    res.side2 = connect_boundary(m.second);
    log("reconnect", 1, res.side1);
    log("reconnect", 2, res.side2);

    MatchCertificate& cert = res.certificate;
    cert.c1_side1_zero = chern_class(res.side1).is_zero();
    cert.c1_side2_zero = chern_class(res.side2).is_zero();
    cert.d3_common = d3(res.side1);
    if (!cert.c1_side1_zero || !cert.c1_side2_zero || d3(res.side2) != cert.d3_common)
        throw IntegrityError("boundary plane fields differ after matching");
    cert.negative_stabs = {m.first_plan.extra_negative_stabs, m.second_plan.extra_negative_stabs};
    cert.note = "equal c1 = 0 and d3 on overtwisted structures: isotopic by Eliashberg; "
                "the open books agree after common positive stabilization by Giroux";

    SurgeryOutput& out = res.output;
    out.binding_book = boundary_open_book(res.side1);
    out.chi_input = euler_characteristic(in.kirby);
    out.sigma_input = signature(in.kirby);
    out.chi_w = total_space_euler_characteristic(res.side1) + total_space_euler_characteristic(res.side2);
    out.chi_output = out.chi_w + 2;
    if (out.chi_w != out.chi_input) throw IntegrityError("Euler characteristic of W does not match the input");
    out.framing_variants = framing_variants_of(out);

    if (syntactically_equal(boundary_open_book(res.side1), boundary_open_book(res.side2))) {
        std::vector<VanishingCycle> cycles = res.side1.cycles;
        cycles.insert(cycles.end(), res.side2.cycles.begin(), res.side2.cycles.end());
        out.closed_alf = cap_to_closed(ALF(res.side1.fiber, std::move(cycles), res.side1.seifert),
                                       {out.framing_variants[0].section_self_intersection});
        if (out.closed_alf->euler_characteristic() != out.chi_output)
            throw IntegrityError("closed fibration has the wrong Euler characteristic");
    }
    return res;
}

}  // namespace lefcalc
