#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lefcalc/cli.hpp"

using namespace lefcalc;
namespace fs = std::filesystem;

namespace {

std::string data(const char* name) { return std::string(LEFCALC_TEST_DATA) + "/" + name; }

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("lefcalc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const char* name) const { return (dir_ / name).string(); }

    io::Json invariants(const std::string& file) {
        const CliRun r = run({"invariants", file, "--json"});
        EXPECT_EQ(r.code, 0) << r.err;
        return io::Json::parse(r.out);
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, InvariantsOfDisk) {
    const CliRun r = run({"invariants", data("disk_alf.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("d3      -1/2"), std::string::npos);
}

TEST_F(CliTest, InvariantsOfNegativeHopf) {
    const io::Json j = invariants(data("negative_hopf.json"));
    EXPECT_EQ(j["d3"], "1/2");
    EXPECT_EQ(j["q"], 1);
}

TEST_F(CliTest, MalformedFileReportsPosition) {
    const CliRun r = run({"invariants", data("malformed.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("malformed.json:4:33:"), std::string::npos) << r.err;
}

TEST_F(CliTest, JsonOutputIsStable) {
    const CliRun a = run({"invariants", data("negative_hopf.json"), "--json"});
    const CliRun b = run({"invariants", data("negative_hopf.json"), "--json"});
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, InvariantsNeedsAnALF) {
    EXPECT_EQ(run({"invariants", data("s4.json")}).code, 2);
    EXPECT_EQ(run({"invariants", path("missing.json")}).code, 2);
}

TEST_F(CliTest, NonzeroChernClassIsNotAFailure) {
    std::ofstream(path("c1.json")) << R"({"schema_version": 1, "kind": "alf", "fiber": {"genus": 0, "boundary": 2},
        "cycles": [{"curve": [1], "sign": -1, "rotation": 1}, {"curve": [1], "sign": 1, "rotation": 0}]})";
    const CliRun r = run({"invariants", path("c1.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("undefined"), std::string::npos);
}

TEST_F(CliTest, HarerEmptyLink) {
    const CliRun r = run({"harer", data("empty_link_two_handles.json"), "-o", path("alf.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    const ALF a = std::get<ALF>(io::read_document(path("alf.json")));
    EXPECT_EQ(a.fiber, Surface(0, 3));
    EXPECT_TRUE(a.cycles.empty());
}

TEST_F(CliTest, HarerUnknots) {
    CliRun r = run({"harer", data("unknot_minus1.json"), "-o", path("m1.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("oracle PASS"), std::string::npos);
    const ALF a = std::get<ALF>(io::read_document(path("m1.json")));
    ASSERT_EQ(a.cycles.size(), 1u);
    EXPECT_EQ(a.cycles[0].sign, 1);

    r = run({"harer", data("unknot_zero.json"), "-o", path("z.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("oracle PASS"), std::string::npos);
    EXPECT_EQ(std::get<ALF>(io::read_document(path("z.json"))).cycles.size(), 2u);
    EXPECT_TRUE(fs::exists(path("z.transcript.json")));
}

TEST_F(CliTest, HarerTranscriptReplays) {
    ASSERT_EQ(run({"harer", data("hopf_link.json"), "-o", path("h.json")}).code, 0);
    const auto link = std::get<ProjectedLink>(io::read_document(data("hopf_link.json")));
    const auto moves = io::harer_moves_from_json(io::Json::parse(slurp(path("h.transcript.json"))));
    EXPECT_EQ(replay(link, moves), std::get<ALF>(io::read_document(path("h.json"))));
}

TEST_F(CliTest, AssembleFourSphere) {
    const CliRun r = run({"assemble", data("s4.json"), "-o", path("out")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("variant 0: framing 0, Z/2 bit 0"), std::string::npos);
    EXPECT_NE(r.out.find("variant 1: framing -1, Z/2 bit 1"), std::string::npos);
    for (const char* f : {"certificate.json", "surgery_output.json", "variant_0.json", "variant_1.json", "transcript.json"})
        EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
    const io::Json out = io::Json::parse(slurp(dir_ / "out" / "surgery_output.json"));
    EXPECT_EQ(out["chi_input"], 2);
    EXPECT_EQ(out["chi_output"], 4);
    const io::Json cert = io::Json::parse(slurp(dir_ / "out" / "certificate.json"));
    EXPECT_EQ(cert["d3_common"], "1/2");
    EXPECT_TRUE(cert["both_overtwisted"].get<bool>());
}

TEST_F(CliTest, AssembleIsDeterministic) {
    ASSERT_EQ(run({"assemble", data("cp2.json"), "-o", path("a")}).code, 0);
    ASSERT_EQ(run({"assemble", data("cp2.json"), "-o", path("b")}).code, 0);
    for (const char* f : {"certificate.json", "surgery_output.json", "transcript.json"})
        EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f));
    const io::Json cert = io::Json::parse(slurp(dir_ / "a" / "certificate.json"));
    EXPECT_EQ(cert["d3_common"], "1/2");
}

TEST_F(CliTest, AssembleRejectsMissingFourHandle) {
    EXPECT_EQ(run({"assemble", data("no_4handle.json"), "-o", path("out")}).code, 2);
}

TEST_F(CliTest, StabilizeNegativeRaisesD3) {
    ASSERT_EQ(run({"stabilize", data("disk_alf.json"), "--neg", "1", "-o", path("n.json")}).code, 0);
    EXPECT_EQ(invariants(path("n.json"))["d3"], "1/2");
    ASSERT_EQ(run({"stabilize", data("disk_alf.json"), "--pos", "1", "-o", path("p.json")}).code, 0);
    EXPECT_EQ(invariants(path("p.json"))["d3"], "-1/2");
}

TEST_F(CliTest, RotationAdjustShiftsByTwo) {
    ASSERT_EQ(run({"stabilize", data("negative_hopf.json"), "--rot-adjust", "i=0,a=1", "-o", path("r.json")}).code, 0);
    const ALF a = std::get<ALF>(io::read_document(path("r.json")));
    EXPECT_EQ(a.cycles[0].rotation, -2);
    const io::Json before = invariants(data("negative_hopf.json")), after = invariants(path("r.json"));
    EXPECT_EQ(after["chi"], before["chi"]);
    EXPECT_EQ(after["sigma"], before["sigma"]);
    EXPECT_TRUE(after["c1_zero"].get<bool>());
}

TEST_F(CliTest, StabilizeOpenBook) {
    const CliRun r = run({"stabilize", data("open_book_annulus.json"), "--rot-adjust", "i=0,a=-1", "--pos", "2", "-o", path("ob.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto d = std::get<io::OpenBookDocument>(io::read_document(path("ob.json")));
    EXPECT_EQ(d.book.page.h1_rank(), 5u);
    EXPECT_EQ(d.knots[0].rotation, 2);
    EXPECT_EQ(d.knots[0].curve.surface, d.book.page);
}

TEST_F(CliTest, StabilizeErrors) {
    EXPECT_EQ(run({"stabilize", data("negative_hopf.json"), "--rot-adjust", "i=4,a=1", "-o", path("x.json")}).code, 2);
    EXPECT_EQ(run({"stabilize", data("negative_hopf.json"), "--rot-adjust", "zero", "-o", path("x.json")}).code, 2);
    EXPECT_EQ(run({"stabilize", data("s4.json"), "-o", path("x.json")}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"harer", data("unknot_zero.json")}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}
