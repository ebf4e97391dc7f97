#pragma once

// The `lefcalc` command line, as a function over argument vectors and
// streams so it can be driven from tests.
//
//   lefcalc invariants FILE [--json]
//   lefcalc harer FILE -o OUT
//   lefcalc assemble FILE -o OUTDIR
//   lefcalc stabilize FILE [--pos N] [--neg N] [--rot-adjust i=I,a=A]... -o OUT
//
// Exit codes: 0 success, 2 input error, 3 internal integrity failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "lefcalc/io.hpp"

namespace lefcalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIntegrity = 3;

struct RotAdjust {
    std::size_t index = 0;
    Int amount = 0;
};

inline RotAdjust parse_rot_adjust(const std::string& s) {
    static const std::regex re(R"(\s*i\s*=\s*(\d+)\s*,\s*a\s*=\s*(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw InputError("--rot-adjust expects i=I,a=A, got '" + s + "'");
    return {static_cast<std::size_t>(std::stoull(m[1].str())), Int(m[2].str())};
}

inline std::string transcript_path(const std::string& out) {
    const std::filesystem::path p(out);
    if (p.extension() == ".json") return (p.parent_path() / (p.stem().string() + ".transcript.json")).string();
    return out + ".transcript.json";
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path.string() + "'");
    f << text;
}

template <class T>
const T& expect(const io::Document& d, const char* what) {
    if (const T* v = std::get_if<T>(&d)) return *v;
    throw InputError(std::string("expected a ") + what + " document, got '" + io::kind_name(d) + "'");
}

// ---------------------------------------------------------------------------

inline int cmd_invariants(const std::string& file, bool json, std::ostream& out) {
    const ALF a = expect<ALF>(io::read_document(file), "alf");
    const io::Json r = io::invariants_report(a);
    if (json) {
        out << io::dump(r);
        return kExitOk;
    }
    out << "chi     " << r["chi"].dump() << "\n"
        << "sigma   " << r["sigma"].dump() << "\n"
        << "q       " << r["q"].dump() << "\n"
        << "H1(dX)  " << r["h1_boundary"]["text"].get<std::string>() << "\n"
        << "c1      " << r["c1"].dump() << (r["c1_zero"].get<bool>() ? " (zero)" : "") << "\n";
    if (r["d3"].is_null())
        out << "d3      undefined: " << r["diagnosis"].get<std::string>() << "\n";
    else
        out << "d3      " << r["d3"].get<std::string>() << "\n";
    if (r["two_torsion_regime"].get<bool>()) out << "note    H1(dX) has 2-torsion\n";
    return kExitOk;
}

inline int cmd_harer(const std::string& file, const std::string& out_path, std::ostream& out) {
    const io::Document doc = io::read_document(file);
    ProjectedLink link;
    if (const auto* k = std::get_if<KirbyData>(&doc))
        link = synthesize_projection(*k);
    else
        link = expect<ProjectedLink>(doc, "projected_link");

    const auto [alf, transcript] = harer_alf(link);
    const HarerOracle o = harer_oracle(link, alf);
    write_file(out_path, io::dump(io::to_json(alf)));
    write_file(transcript_path(out_path), io::dump(io::harer_transcript_json(transcript)));

    std::ostringstream h1d, h1a;
    h1d << o.h1_direct;
    h1a << o.h1_alf;
    out << "fiber genus " << alf.fiber.genus << ", boundary components " << alf.fiber.boundary_count << "\n"
        << "cycles " << alf.cycles.size() << ", q " << alf.q() << "\n"
        << "oracle chi " << o.chi_direct << " / " << o.chi_alf << ", sigma " << o.sigma_direct << " / " << o.sigma_alf
        << ", H1 " << h1d.str() << " / " << h1a.str() << "\n"
        << "oracle " << (o.pass() ? "PASS" : "FAIL") << "\n";
    return o.pass() ? kExitOk : kExitIntegrity;
}

inline int cmd_assemble(const std::string& file, const std::string& out_dir, std::ostream& out) {
    const ClosedManifoldInput in = expect<ClosedManifoldInput>(io::read_document(file), "closed_manifold");
    const PipelineResult r = run_pipeline(in);

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "certificate.json", io::dump(io::certificate_json(r.certificate)));
    write_file(dir / "surgery_output.json", io::dump(io::surgery_output_json(r.output)));
    write_file(dir / "variant_0.json", io::dump(io::variant_json(r.output.framing_variants[0])));
    write_file(dir / "variant_1.json", io::dump(io::variant_json(r.output.framing_variants[1])));
    write_file(dir / "side1_alf.json", io::dump(io::to_json(r.side1)));
    write_file(dir / "side2_alf.json", io::dump(io::to_json(r.side2)));
    write_file(dir / "transcript.json", io::dump(io::pipeline_transcript_json(r)));

    const auto& c = r.certificate;
    out << "d3 " << to_string(c.d3_common) << " on both sides, negative stabilizations " << c.negative_stabs[0] << " / "
        << c.negative_stabs[1] << "\n"
        << "chi " << r.output.chi_input << " -> " << r.output.chi_output << ", sigma " << r.output.sigma_input << "\n";
    for (std::size_t v = 0; v < 2; ++v) {
        const auto& f = r.output.framing_variants[v];
        out << "variant " << v << ": framing " << f.framing << ", Z/2 bit " << f.bit << ", summand " << f.summand << "\n";
    }
    out << "closed fibration " << (r.output.closed_alf ? "written" : "not written (boundary books differ)") << "\n";
    return kExitOk;
}

inline int cmd_stabilize(const std::string& file, std::size_t pos, std::size_t neg, const std::vector<std::string>& rot,
                         const std::string& out_path, std::ostream& out) {
    std::vector<RotAdjust> moves;
    for (const auto& s : rot) moves.push_back(parse_rot_adjust(s));
    io::Document doc = io::read_document(file);

    if (auto* a = std::get_if<ALF>(&doc)) {
        StabilizationPlan plan;
        for (const auto& m : moves) {
            if (m.index >= a->cycles.size()) throw InputError("cycle index " + std::to_string(m.index) + " out of range");
            plan.moves.push_back({m.index, m.amount, kPositiveNegative});
        }
        ALF res = apply_plan(*a, plan);
        for (std::size_t n = 0; n < pos; ++n) res = stabilize_alf(res, 1);
        for (std::size_t n = 0; n < neg; ++n) res = stabilize_alf(res, -1);
        write_file(out_path, io::dump(io::to_json(res)));
        out << "alf: fiber genus " << res.fiber.genus << ", boundary components " << res.fiber.boundary_count << ", cycles "
            << res.cycles.size() << ", q " << res.q() << "\n";
        return kExitOk;
    }

    auto d = expect<io::OpenBookDocument>(doc, "alf or open_book");
    auto grow = [&d](int sign) {
        const SurfaceExtension ext = extend_surface(d.book.page, HandleKind::split);
        for (auto& k : d.knots) k.curve = ext.transport(k.curve);
        d.book = stabilize(d.book, sign);
    };
    for (const auto& m : moves) {
        if (m.index >= d.knots.size()) throw InputError("knot index " + std::to_string(m.index) + " out of range");
        const int dir = m.amount > 0 ? -1 : 1;
        for (Int n = 0; n < (m.amount < 0 ? Int(-m.amount) : m.amount); ++n) {
            const SurfaceExtension e1 = extend_surface(d.book.page, HandleKind::split);
            const SurfaceExtension e2 = extend_surface(e1.target, HandleKind::split);
            auto [book, moved] = stabilize_knot_double(d.book, d.knots[m.index], dir, kPositiveNegative);
            for (std::size_t j = 0; j < d.knots.size(); ++j)
                d.knots[j] = j == m.index ? moved : MarkedKnot{e2.transport(e1.transport(d.knots[j].curve)), d.knots[j].rotation, d.knots[j].page_index};
            d.book = std::move(book);
        }
    }
    for (std::size_t n = 0; n < pos; ++n) grow(1);
    for (std::size_t n = 0; n < neg; ++n) grow(-1);
    write_file(out_path, io::dump(io::to_json(d)));
    out << "open book: page genus " << d.book.page.genus << ", binding components " << d.book.binding_components()
        << ", twists " << d.book.monodromy.size() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Achiral Lefschetz fibrations, open books and the c1/d3 invariants", "lefcalc"};
    app.require_subcommand(1);

    std::string file, out_path;
    bool json = false;
    std::size_t pos = 0, neg = 0;
    std::vector<std::string> rot;

    auto* inv = app.add_subcommand("invariants", "chi, sigma, q, c1 and d3 of an ALF");
    inv->add_option("FILE", file, "alf document")->required();
    inv->add_flag("--json", json, "machine-readable output");

    auto* har = app.add_subcommand("harer", "ALF on a 2-handlebody from a projected link");
    har->add_option("FILE", file, "projected_link or kirby document")->required();
    har->add_option("-o,--output", out_path, "ALF document to write")->required();

    auto* asmb = app.add_subcommand("assemble", "fibration of a closed 4-manifold surgered along a circle");
    asmb->add_option("FILE", file, "closed_manifold document")->required();
    asmb->add_option("-o,--output", out_path, "output directory")->required();

    auto* stab = app.add_subcommand("stabilize", "stabilizations and rotation moves");
    stab->add_option("FILE", file, "alf or open_book document")->required();
    stab->add_option("--pos", pos, "positive stabilizations");
    stab->add_option("--neg", neg, "negative stabilizations");
    stab->add_option("--rot-adjust", rot, "i=I,a=A: shift rotation of cycle I by -2A")->take_all();
    stab->add_option("-o,--output", out_path, "document to write")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "lefcalc: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (*inv) return cmd_invariants(file, json, out);
        if (*har) return cmd_harer(file, out_path, out);
        if (*asmb) return cmd_assemble(file, out_path, out);
        return cmd_stabilize(file, pos, neg, rot, out_path, out);
    } catch (const io::ParseError& e) {
        err << file << ":" << e.what() << "\n";
        return kExitInput;
    } catch (const InputError& e) {
        err << "lefcalc: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotSolvable& e) {
        err << "lefcalc: " << e.what() << "\n";
        return kExitInput;
    } catch (const IntegrityError& e) {
        err << "lefcalc: integrity failure: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "lefcalc: " << e.what() << "\n";
        return kExitInput;
    }
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace lefcalc::cli
