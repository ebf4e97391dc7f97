#pragma once

// Versioned JSON documents for ALFs, open books, Kirby data, projected
// links and closed manifolds, plus JSON renderings of reports.
//
// Every document carries "schema_version" and "kind"; unknown fields are
// rejected. Integers may be written as JSON numbers or as decimal strings
// (for values outside 64 bits). Rationals are always "p/q" strings.

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include "lefcalc/assembler.hpp"

namespace lefcalc::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed document. Syntax errors carry a 1-based line/column.
class ParseError : public InputError {
  public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : InputError(line ? std::to_string(line) + ":" + std::to_string(column) + ": " + what : what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

struct OpenBookDocument {
    OpenBook book;
    std::vector<MarkedKnot> knots;

    bool operator==(const OpenBookDocument&) const = default;
};

using Document = std::variant<ALF, OpenBookDocument, KirbyData, ProjectedLink, ClosedManifoldInput>;

inline const char* kind_name(const Document& d) {
    static constexpr const char* names[] = {"alf", "open_book", "kirby", "projected_link", "closed_manifold"};
    return names[d.index()];
}

// ---------------------------------------------------------------------------
// Reading helpers; `path` is a JSON pointer used in diagnostics.

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

inline void check_fields(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.contains(key)) fail(path, "unknown field '" + key + "'");
}

inline const Json& field(const Json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline const Json& optional_array(const Json& j, const char* key) {
    static const Json empty = Json::array();
    return j.contains(key) ? j.at(key) : empty;
}

inline Int read_int(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<std::uint64_t>()) : Int(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        const bool digits = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                            s != "-";
        if (digits) return Int(s);
    }
    fail(path, "expected an integer");
}

inline long long read_small(const Json& j, const std::string& path, long long lo, long long hi) {
    const Int v = read_int(j, path);
    if (v < lo || v > hi) fail(path, "value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<long long>(v);
}

inline std::size_t read_count(const Json& j, const std::string& path) {
    return static_cast<std::size_t>(read_small(j, path, 0, 1'000'000));
}

inline int read_sign(const Json& j, const std::string& path) {
    const long long s = read_small(j, path, -1, 1);
    if (s == 0) fail(path, "sign must be +1 or -1");
    return static_cast<int>(s);
}

inline const Json& read_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

inline IntVector read_vector(const Json& j, const std::string& path) {
    IntVector v;
    std::size_t i = 0;
    for (const auto& x : read_array(j, path)) v.push_back(read_int(x, path + "/" + std::to_string(i++)));
    return v;
}

inline Matrix read_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
    if (read_array(j, path).size() != rows) fail(path, "expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = path + "/" + std::to_string(r);
        const IntVector row = read_vector(j[r], rp);
        if (row.size() != cols) fail(rp, "expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
}

inline Surface read_surface(const Json& j, const std::string& path) {
    check_fields(j, path, {"genus", "boundary"});
    return {static_cast<int>(read_small(field(j, path, "genus"), path + "/genus", 0, 100000)),
            static_cast<int>(read_small(field(j, path, "boundary"), path + "/boundary", 0, 100000))};
}

inline CurveClass read_curve(const Json& j, const std::string& path, const Surface& s) {
    IntVector v = read_vector(j, path);
    if (v.size() != s.h1_rank()) fail(path, "curve needs " + std::to_string(s.h1_rank()) + " coefficients");
    return {s, std::move(v)};
}

inline ALF read_alf(const Json& j, const std::string& path) {
    check_fields(j, path, {"schema_version", "kind", "fiber", "seifert", "cycles"});
    const Surface fiber = read_surface(field(j, path, "fiber"), path + "/fiber");
    if (fiber.boundary_count < 1) fail(path + "/fiber", "ALF fibers must have boundary");
    SeifertForm L = SeifertForm::standard(fiber);
    if (j.contains("seifert")) {
        try {
            L = SeifertForm(fiber, read_matrix(j["seifert"], path + "/seifert", fiber.h1_rank(), fiber.h1_rank()));
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            fail(path + "/seifert", e.what());
        }
    }
    std::vector<VanishingCycle> cycles;
    const std::string cp = path + "/cycles";
    std::size_t i = 0;
    for (const auto& c : read_array(optional_array(j, "cycles"), cp)) {
        const std::string p = cp + "/" + std::to_string(i++);
        check_fields(c, p, {"curve", "sign", "rotation"});
        cycles.push_back({read_curve(field(c, p, "curve"), p + "/curve", fiber), read_sign(field(c, p, "sign"), p + "/sign"),
                          c.contains("rotation") ? read_int(c["rotation"], p + "/rotation") : Int(0)});
    }
    return {fiber, std::move(cycles), std::move(L)};
}

inline OpenBookDocument read_open_book(const Json& j, const std::string& path) {
    check_fields(j, path, {"schema_version", "kind", "page", "monodromy", "knots"});
    const Surface page = read_surface(field(j, path, "page"), path + "/page");
    if (page.boundary_count < 1) fail(path + "/page", "open book page needs nonempty binding");
    std::vector<SignedTwist> word;
    std::size_t i = 0;
    for (const auto& t : read_array(optional_array(j, "monodromy"), path + "/monodromy")) {
        const std::string p = path + "/monodromy/" + std::to_string(i++);
        check_fields(t, p, {"curve", "sign"});
        word.emplace_back(read_curve(field(t, p, "curve"), p + "/curve", page), read_sign(field(t, p, "sign"), p + "/sign"));
    }
    OpenBookDocument doc{{page, std::move(word)}, {}};
    i = 0;
    for (const auto& k : read_array(optional_array(j, "knots"), path + "/knots")) {
        const std::string p = path + "/knots/" + std::to_string(i++);
        check_fields(k, p, {"curve", "rotation", "page_index"});
        MarkedKnot knot{read_curve(field(k, p, "curve"), p + "/curve", page),
                        k.contains("rotation") ? read_int(k["rotation"], p + "/rotation") : Int(0),
                        k.contains("page_index") ? read_count(k["page_index"], p + "/page_index") : 0};
        if (knot.page_index > doc.book.monodromy.size()) fail(p + "/page_index", "page index outside the monodromy word");
        doc.knots.push_back(std::move(knot));
    }
    return doc;
}

inline KirbyData read_kirby(const Json& j, const std::string& path, bool top_level) {
    if (top_level)
        check_fields(j, path, {"schema_version", "kind", "n1", "attach", "linking", "n3", "n4"});
    else
        check_fields(j, path, {"n1", "attach", "linking", "n3", "n4"});
    const std::size_t n1 = j.contains("n1") ? read_count(j["n1"], path + "/n1") : 0;
    const Json& lk = optional_array(j, "linking");
    const std::size_t k = read_array(lk, path + "/linking").size();
    const Matrix Q = read_matrix(lk, path + "/linking", k, k);
    Matrix A(k, n1);
    if (j.contains("attach"))
        A = read_matrix(j["attach"], path + "/attach", k, n1);
    else if (n1 > 0 && k > 0)
        fail(path, "missing field 'attach'");
    if (!Q.symmetric()) fail(path + "/linking", "linking matrix must be symmetric");
    return {n1, A, Q, j.contains("n3") ? read_count(j["n3"], path + "/n3") : 0,
            j.contains("n4") ? read_count(j["n4"], path + "/n4") : 0};
}

inline std::pair<std::size_t, std::size_t> read_strand(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [component, strand]");
    return {read_count(j[0], path + "/0"), read_count(j[1], path + "/1")};
}

inline ProjectedLink read_link(const Json& j, const std::string& path, bool top_level) {
    if (top_level)
        check_fields(j, path, {"schema_version", "kind", "n1", "components", "double_points", "bridge_number"});
    else
        check_fields(j, path, {"n1", "components", "double_points", "bridge_number"});
    ProjectedLink p;
    p.n1 = j.contains("n1") ? read_count(j["n1"], path + "/n1") : 0;
    std::size_t i = 0;
    for (const auto& c : read_array(optional_array(j, "components"), path + "/components")) {
        const std::string cp = path + "/components/" + std::to_string(i++);
        check_fields(c, cp, {"band_word", "target_framing", "rotation"});
        LinkComponent comp;
        std::size_t b = 0;
        for (const auto& h : read_array(optional_array(c, "band_word"), cp + "/band_word"))
            comp.band_word.push_back(static_cast<int>(read_small(h, cp + "/band_word/" + std::to_string(b++), -1'000'000, 1'000'000)));
        comp.target_framing = read_int(field(c, cp, "target_framing"), cp + "/target_framing");
        if (c.contains("rotation")) comp.rotation = read_int(c["rotation"], cp + "/rotation");
        p.components.push_back(std::move(comp));
    }
    i = 0;
    for (const auto& d : read_array(optional_array(j, "double_points"), path + "/double_points")) {
        const std::string dp = path + "/double_points/" + std::to_string(i++);
        check_fields(d, dp, {"over", "under", "sign"});
        const auto [oc, os] = read_strand(field(d, dp, "over"), dp + "/over");
        const auto [uc, us] = read_strand(field(d, dp, "under"), dp + "/under");
        p.double_points.push_back({oc, os, uc, us, read_sign(field(d, dp, "sign"), dp + "/sign")});
    }
    if (j.contains("bridge_number")) p.declared_bridge_number = read_int(j["bridge_number"], path + "/bridge_number");
    try {
        validate(p);
    } catch (const InputError& e) {
        fail(path, e.what());
    }
    return p;
}

// Writing.

inline Json write_int(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(v));
    return Json(v.str());
}

inline Json write_vector(std::span<const Int> v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(write_int(x));
    return a;
}

inline Json write_matrix(const Matrix& m) {
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(write_vector(m.row(r)));
    return a;
}

inline Json write_surface(const Surface& s) { return Json{{"genus", s.genus}, {"boundary", s.boundary_count}}; }

inline Json header(const char* kind) { return Json{{"schema_version", kSchemaVersion}, {"kind", kind}}; }

inline Json kirby_body(const KirbyData& k, Json j = Json::object()) {
    j["n1"] = k.n1;
    j["attach"] = write_matrix(k.attach);
    j["linking"] = write_matrix(k.linking);
    j["n3"] = k.n3;
    j["n4"] = k.n4;
    return j;
}

inline Json link_body(const ProjectedLink& p, Json j = Json::object()) {
    j["n1"] = p.n1;
    Json comps = Json::array();
    for (const auto& c : p.components) {
        Json cj{{"band_word", c.band_word}, {"target_framing", write_int(c.target_framing)}};
        if (c.rotation) cj["rotation"] = write_int(*c.rotation);
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    Json dps = Json::array();
    for (const auto& d : p.double_points)
        dps.push_back(Json{{"over", {d.over_component, d.over_strand}}, {"under", {d.under_component, d.under_strand}}, {"sign", d.sign}});
    j["double_points"] = std::move(dps);
    if (p.declared_bridge_number) j["bridge_number"] = write_int(*p.declared_bridge_number);
    return j;
}

}  // namespace detail

inline Json to_json(const ALF& a) {
    Json j = detail::header("alf");
    j["fiber"] = detail::write_surface(a.fiber);
    if (!(a.seifert == SeifertForm::standard(a.fiber))) j["seifert"] = detail::write_matrix(a.seifert.matrix);
    Json cycles = Json::array();
    for (const auto& c : a.cycles)
        cycles.push_back(Json{{"curve", detail::write_vector(c.curve.coeffs)}, {"sign", c.sign}, {"rotation", detail::write_int(c.rotation)}});
    j["cycles"] = std::move(cycles);
    return j;
}

inline Json to_json(const OpenBookDocument& d) {
    Json j = detail::header("open_book");
    j["page"] = detail::write_surface(d.book.page);
    Json word = Json::array();
    for (const auto& t : d.book.monodromy) word.push_back(Json{{"curve", detail::write_vector(t.curve.coeffs)}, {"sign", t.sign}});
    j["monodromy"] = std::move(word);
    if (!d.knots.empty()) {
        Json knots = Json::array();
        for (const auto& k : d.knots)
            knots.push_back(Json{{"curve", detail::write_vector(k.curve.coeffs)}, {"rotation", detail::write_int(k.rotation)}, {"page_index", k.page_index}});
        j["knots"] = std::move(knots);
    }
    return j;
}

inline Json to_json(const OpenBook& b) { return to_json(OpenBookDocument{b, {}}); }
inline Json to_json(const KirbyData& k) { return detail::kirby_body(k, detail::header("kirby")); }
inline Json to_json(const ProjectedLink& p) { return detail::link_body(p, detail::header("projected_link")); }

inline Json to_json(const ClosedManifoldInput& c) {
    Json j = detail::header("closed_manifold");
    j["kirby"] = detail::kirby_body(c.kirby);
    if (c.link) j["projected_link"] = detail::link_body(*c.link);
    return j;
}

inline Json to_json(const Document& d) {
    return std::visit([](const auto& v) { return to_json(v); }, d);
}

inline Document from_json(const Json& j) {
    if (!j.is_object()) detail::fail("", "document must be an object");
    const Int version = detail::read_int(detail::field(j, "", "schema_version"), "/schema_version");
    if (version != kSchemaVersion) detail::fail("/schema_version", "unsupported schema version " + version.str());
    const Json& kind = detail::field(j, "", "kind");
    if (!kind.is_string()) detail::fail("/kind", "expected a string");
    const auto& k = kind.get_ref<const std::string&>();
    if (k == "alf") return detail::read_alf(j, "");
    if (k == "open_book") return detail::read_open_book(j, "");
    if (k == "kirby") return detail::read_kirby(j, "", true);
    if (k == "projected_link") return detail::read_link(j, "", true);
    if (k == "closed_manifold") {
        detail::check_fields(j, "", {"schema_version", "kind", "kirby", "projected_link"});
        ClosedManifoldInput c{detail::read_kirby(detail::field(j, "", "kirby"), "/kirby", false), std::nullopt};
        if (j.contains("projected_link")) c.link = detail::read_link(j["projected_link"], "/projected_link", false);
        return c;
    }
    detail::fail("/kind", "unknown document kind '" + k + "'");
}

inline Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is the 1-based offset of the offending character.
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError(msg, line, col);
    }
    return from_json(j);
}

inline Document read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Reports.

inline Json group_json(const AbelianGroup& g) {
    std::ostringstream os;
    os << g;
    Json j{{"free_rank", g.free_rank}, {"torsion", detail::write_vector(g.torsion)}, {"text", os.str()}};
    return j;
}

inline Json invariants_report(const ALF& a) {
    const KirbyData k = induced_kirby_data(a);
    const HomotopyClass h = homotopy_class(a);
    Json j{{"chi", detail::write_int(euler_characteristic(k))},
           {"sigma", signature(k)},
           {"q", h.q},
           {"h1_total", group_json(h1_total(k).group())},
           {"h1_boundary", group_json(h.c1.group)},
           {"c1", detail::write_vector(h.c1.element)},
           {"c1_zero", h.c1.is_zero()},
           {"two_torsion_regime", h.c1.two_torsion_regime}};
    if (h.d3) {
        j["c_squared"] = to_string(d3_terms(a).c_squared);
        j["d3"] = to_string(*h.d3);
    } else {
        j["d3"] = nullptr;
        j["diagnosis"] = "c1 != 0: d3 is not defined; adjust rotations first";
    }
    return j;
}

inline Json plan_json(const StabilizationPlan& p) {
    Json moves = Json::array();
    for (const auto& m : p.moves)
        moves.push_back(Json{{"cycle", m.cycle}, {"count", detail::write_int(m.count)}, {"pattern", {m.pattern[0], m.pattern[1]}}});
    return Json{{"moves", std::move(moves)}, {"extra_negative_stabs", p.extra_negative_stabs}};
}

inline Json harer_transcript_json(const HarerTranscript& t) {
    Json moves = Json::array();
    for (const auto& m : t.moves) {
        std::visit(
            [&moves](const auto& mv) {
                using T = std::decay_t<decltype(mv)>;
                if constexpr (std::is_same_v<T, TorusSum>)
                    moves.push_back(Json{{"move", "torus_sum"}, {"double_point", mv.double_point}});
                else if constexpr (std::is_same_v<T, CancellingPair>)
                    moves.push_back(Json{{"move", "cancelling_pair"}, {"double_point", mv.double_point},
                                         {"band", mv.band == Band::a ? "a" : "b"}, {"sign", mv.sign}});
                else
                    moves.push_back(Json{{"move", "framing_move"}, {"component", mv.component}, {"sign", mv.sign}});
            },
            m);
    }
    return Json{{"moves", std::move(moves)}, {"result", to_json(t.result)}};
}

inline std::vector<HarerMove> harer_moves_from_json(const Json& j) {
    std::vector<HarerMove> out;
    std::size_t i = 0;
    for (const auto& m : detail::read_array(detail::field(j, "", "moves"), "/moves")) {
        const std::string p = "/moves/" + std::to_string(i++);
        const Json& kind = detail::field(m, p, "move");
        if (kind == "torus_sum") {
            detail::check_fields(m, p, {"move", "double_point"});
            out.push_back(TorusSum{detail::read_count(detail::field(m, p, "double_point"), p)});
        } else if (kind == "cancelling_pair") {
            detail::check_fields(m, p, {"move", "double_point", "band", "sign"});
            const Json& band = detail::field(m, p, "band");
            if (band != "a" && band != "b") detail::fail(p + "/band", "band must be \"a\" or \"b\"");
            out.push_back(CancellingPair{detail::read_count(detail::field(m, p, "double_point"), p), band == "a" ? Band::a : Band::b,
                                         detail::read_sign(detail::field(m, p, "sign"), p + "/sign")});
        } else if (kind == "framing_move") {
            detail::check_fields(m, p, {"move", "component", "sign"});
            out.push_back(FramingMove{detail::read_count(detail::field(m, p, "component"), p),
                                      detail::read_sign(detail::field(m, p, "sign"), p + "/sign")});
        } else {
            detail::fail(p + "/move", "unknown move");
        }
    }
    return out;
}

inline Json certificate_json(const MatchCertificate& c) {
    return Json{{"c1_side1_zero", c.c1_side1_zero},
                {"c1_side2_zero", c.c1_side2_zero},
                {"d3_common", to_string(c.d3_common)},
                {"negative_stabs", {c.negative_stabs[0], c.negative_stabs[1]}},
                {"both_overtwisted", c.both_overtwisted()},
                {"note", c.note}};
}

inline Json closed_alf_json(const ClosedALF& c) {
    Json cycles = Json::array();
    for (const auto& v : c.cycles)
        cycles.push_back(Json{{"curve", detail::write_vector(v.curve.coeffs)}, {"sign", v.sign}, {"rotation", detail::write_int(v.rotation)}});
    return Json{{"fiber_genus", c.fiber_genus},
                {"cycles", std::move(cycles)},
                {"section_self_intersections", detail::write_vector(c.section_self_intersections)},
                {"chi", detail::write_int(c.euler_characteristic())}};
}

inline Json variant_json(const FramingVariant& v) {
    return Json{{"framing", detail::write_int(v.framing)},
                {"bit", v.bit},
                {"section_self_intersection", detail::write_int(v.section_self_intersection)},
                {"summand", v.summand},
                {"binding_open_book", to_json(v.binding_book)}};
}

inline Json surgery_output_json(const SurgeryOutput& s) {
    Json j{{"description", s.description},
           {"chi_input", detail::write_int(s.chi_input)},
           {"chi_w", detail::write_int(s.chi_w)},
           {"chi_output", detail::write_int(s.chi_output)},
           {"sigma_input", s.sigma_input},
           {"sigma_output", s.sigma_input},
           {"framing_bits", {s.framing_variants[0].bit, s.framing_variants[1].bit}}};
    j["closed_alf"] = s.closed_alf ? closed_alf_json(*s.closed_alf) : Json(nullptr);
    if (!s.closed_alf) j["closed_alf_note"] = "boundary open books differ syntactically; common stabilization not computed";
    return j;
}

inline Json pipeline_transcript_json(const PipelineResult& r) {
    Json steps = Json::array();
    for (const auto& s : r.transcript) {
        Json sj{{"stage", s.stage}, {"side", s.side}, {"fiber_genus", s.fiber_genus}, {"fiber_boundary", s.fiber_boundary},
                {"cycles", s.cycles}, {"q", s.q}};
        sj["d3"] = s.d3 ? Json(to_string(*s.d3)) : Json(nullptr);
        steps.push_back(std::move(sj));
    }
    return Json{{"added_cancelling_pair", r.split.added_cancelling_pair},
                {"y2_genus", r.split.y2_genus},
                {"steps", std::move(steps)},
                {"rotation_plan", plan_json(r.rotation_plan)},
                {"d3_plan_side1", plan_json(r.d3_plan1)},
                {"d3_plan_side2", plan_json(r.d3_plan2)},
                {"harer", harer_transcript_json(r.harer)}};
}

}  // namespace lefcalc::io
