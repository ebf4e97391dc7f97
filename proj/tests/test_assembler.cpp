#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace lefcalc;

namespace {

ClosedManifoldInput closed(std::size_t n1, Matrix A, Matrix Q, std::size_t n3) {
    return {KirbyData(n1, std::move(A), std::move(Q), n3, 1), std::nullopt};
}

ClosedManifoldInput s4() { return closed(0, Matrix(0, 0), Matrix(0, 0), 0); }
ClosedManifoldInput cp2() { return closed(0, Matrix(1, 0), Matrix{{1}}, 0); }
ClosedManifoldInput s1xs3() { return closed(1, Matrix(0, 1), Matrix(0, 0), 1); }
ClosedManifoldInput two_s1xs3() { return closed(2, Matrix(0, 2), Matrix(0, 0), 2); }
ClosedManifoldInput s2xs2() { return closed(0, Matrix(2, 0), Matrix{{0, 1}, {1, 0}}, 0); }

void expect_certificate_laws(const ClosedManifoldInput& in, const PipelineResult& r) {
    EXPECT_TRUE(r.certificate.c1_side1_zero);
    EXPECT_TRUE(r.certificate.c1_side2_zero);
    EXPECT_TRUE(r.certificate.both_overtwisted());
    EXPECT_EQ(d3(r.side1), d3(r.side2));
    EXPECT_EQ(d3(r.side1), r.certificate.d3_common);
    EXPECT_EQ(r.side1.fiber.boundary_count, 1);
    EXPECT_EQ(r.side2.fiber.boundary_count, 1);
    EXPECT_EQ(r.output.chi_input, oracle::euler_characteristic(in.kirby));
    EXPECT_EQ(r.output.chi_output, r.output.chi_input + 2);
    EXPECT_EQ(r.output.sigma_input, oracle::signature(in.kirby));
    EXPECT_NE(r.output.framing_variants[0].bit, r.output.framing_variants[1].bit);
    // Stabilizations never change the pieces: Y1 is the 2-handlebody, Y2 a
    // boundary sum of S1 x D3's.
    const KirbyData y1 = induced_kirby_data(r.side1);
    EXPECT_EQ(oracle::signature(y1), oracle::signature(r.split.y1_kirby));
    EXPECT_EQ(oracle::euler_characteristic(y1), oracle::euler_characteristic(r.split.y1_kirby));
    const KirbyData y2 = induced_kirby_data(r.side2);
    EXPECT_EQ(oracle::euler_characteristic(y2), 1 - Int(r.split.y2_one_handles));
    EXPECT_EQ(h1_boundary(y1).group(), h1_boundary(y2).group());
}

}  // namespace

TEST(Split, SphereNeedsNothing) {
    const SplitResult s = split(s4());
    EXPECT_FALSE(s.added_cancelling_pair);
    EXPECT_EQ(s.y2_one_handles, 0u);
    EXPECT_EQ(s.y2_fiber(), Surface::disk());
    EXPECT_EQ(s.y1_kirby.two_handles(), 0u);
}

TEST(Split, OddThreeHandlesGetACancellingPair) {
    const SplitResult s = split(s1xs3());
    EXPECT_TRUE(s.added_cancelling_pair);
    EXPECT_EQ(s.y2_one_handles, 2u);
    EXPECT_EQ(s.y2_genus, 1);
    EXPECT_EQ(s.y1_kirby.two_handles(), 1u);
    EXPECT_EQ(s.y1_kirby.linking, Matrix{{0}});
}

TEST(Split, EvenThreeHandlesKept) {
    const SplitResult s = split(two_s1xs3());
    EXPECT_FALSE(s.added_cancelling_pair);
    EXPECT_EQ(s.y2_genus, 1);
}

TEST(Split, Preconditions) {
    ClosedManifoldInput no4 = s4();
    no4.kirby.n4 = 0;
    EXPECT_THROW(split(no4), InputError);
    // S1 x S2 boundary with no 3-handle cannot close up.
    EXPECT_THROW(split(closed(0, Matrix(1, 0), Matrix{{0}}, 0)), InputError);
    ClosedManifoldInput mismatch = cp2();
    mismatch.link = ProjectedLink{0, {{{}, -1, std::nullopt}}, {}, std::nullopt};
    EXPECT_THROW(split(mismatch), InputError);
}

TEST(Pipeline, FourSphere) {
    const PipelineResult r = run_pipeline(s4());
    expect_certificate_laws(s4(), r);
    EXPECT_EQ(r.certificate.negative_stabs, (std::array<std::size_t, 2>{1, 1}));
    EXPECT_EQ(r.certificate.d3_common, Rational(1, 2));
    EXPECT_EQ(r.output.chi_input, 2);
    EXPECT_EQ(r.output.chi_output, 4);
    ASSERT_TRUE(r.output.closed_alf);
    EXPECT_EQ(r.output.closed_alf->euler_characteristic(), 4);
    EXPECT_EQ(r.output.framing_variants[0].summand, "S2xS2");
    EXPECT_EQ(r.output.framing_variants[1].summand, "S2~xS2");
}

TEST(Pipeline, ClosedFibrationConcatenatesSides) {
    const PipelineResult r = run_pipeline(s4());
    ASSERT_TRUE(r.output.closed_alf);
    std::vector<VanishingCycle> expected = r.side1.cycles;
    expected.insert(expected.end(), r.side2.cycles.begin(), r.side2.cycles.end());
    EXPECT_EQ(r.output.closed_alf->cycles, expected);
}

TEST(Pipeline, ComplexProjectivePlane) {
    const PipelineResult r = run_pipeline(cp2());
    expect_certificate_laws(cp2(), r);
    EXPECT_EQ(r.output.chi_output, 5);
    EXPECT_EQ(r.output.sigma_input, 1);
}

TEST(Pipeline, MoreInputs) {
    for (const auto& in : {s1xs3(), two_s1xs3(), s2xs2(), closed(0, Matrix(2, 0), Matrix{{1, 0}, {0, -1}}, 0)}) {
        const PipelineResult r = run_pipeline(in);
        expect_certificate_laws(in, r);
    }
}

TEST(Pipeline, TranscriptRecordsEveryStage) {
    const PipelineResult r = run_pipeline(cp2());
    std::vector<std::string> stages;
    for (const auto& s : r.transcript) stages.push_back(s.stage);
    EXPECT_EQ(stages, (std::vector<std::string>{"harer", "trivial", "connect", "adjust-rotations", "match-d3", "match-d3",
                                                "reconnect", "reconnect"}));
    EXPECT_EQ(run_pipeline(cp2()).transcript, r.transcript);
}

TEST(FramingVariants, BitFlipsAndPageGrows) {
    const PipelineResult r = run_pipeline(s4());
    const auto& [v0, v1] = r.output.framing_variants;
    EXPECT_NE(v0.bit, v1.bit);
    EXPECT_EQ(v1.binding_book.page.h1_rank(), v0.binding_book.page.h1_rank() + 2);
    EXPECT_EQ(double_stabilization_framing(v1).bit, v0.bit);
    EXPECT_EQ(v1.section_self_intersection, v1.framing);
}
