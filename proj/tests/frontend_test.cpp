#include "support.hpp"

#include "bvw/error.hpp"
#include "bvw/frontend/cli.hpp"
#include "bvw/frontend/document.hpp"
#include "bvw/frontend/workspace.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bvw;
using namespace bvw::dsl;
using namespace bvw::testing;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> fixtures() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(BVW_FIXTURE_DIR))
    if (e.path().extension() == ".bvw") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string fixture(const std::string& name) { return std::string(BVW_FIXTURE_DIR) + "/" + name; }

struct CliRun {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Document parsed(const std::string& text) {
  auto r = parse(text);
  std::string diags;
  for (const auto& d : r.diagnostics) diags += d.str() + "\n";
  REQUIRE_MESSAGE(r.document.has_value(), diags);
  return *r.document;
}

}  // namespace

TEST_CASE("minimal site") {
  Document d = parsed("site S { objects pt; }");
  REQUIRE(d.sites.size() == 1);
  CHECK(d.sites[0].name == "S");
  CHECK(d.sites[0].objects == std::vector<std::string>{"pt"});
  CHECK_FALSE(d.sites[0].generator.has_value());
  Workspace ws(d);
  CHECK(ws.site("S")->object_count() == 1);
  CHECK(ws.site("S")->morphism_label(0) == "id_pt");
}

TEST_CASE("empty document prints as empty text") {
  Document d = parsed("");
  CHECK(print(d).empty());
  CHECK(parsed("  # only a comment\n") == Document{});
}

TEST_CASE("missing semicolon is reported right after the previous token") {
  const std::string text =
      "site S = finset(2);\n"
      "functor D on S over Z = counting\n"
      "theory F = simple(D);\n"
      "transform c : F -> F = bogus;\n";
  auto r = parse(text);
  CHECK_FALSE(r.document.has_value());
  REQUIRE(r.diagnostics.size() == 2);
  const Diagnostic& d = r.diagnostics[0];
  CHECK(d.severity == "error");
  CHECK(d.span.line == 2);
  CHECK(d.span.col == 33);
  CHECK(d.span.end_col == 34);
  CHECK(d.message == "expected ';' after 'counting'");
  CHECK(d.str() == "2:33-34: error: expected ';' after 'counting'");
  // Recovery resumes at the next block; the later error is independent.
  const Diagnostic& e = r.diagnostics[1];
  CHECK(e.span.line == 4);
  CHECK(e.span.col == 24);
  CHECK(e.span.end_col == 29);
  CHECK(e.message.find("unknown transform kind 'bogus'") == 0);
}

TEST_CASE("every error in a document is reported") {
  const std::string text =
      "site S { objects pt X; morphism f : X -> Y; }\n"
      "theory F = simple(D);\n"
      "orient o for F = units(;\n"
      "site S = finset(1);\n"
      "task frobnicate S;\n";
  auto r = parse(text);
  std::vector<std::string> msgs;
  for (const auto& d : r.diagnostics) msgs.push_back(std::to_string(d.span.line) + " " + d.message);
  REQUIRE(msgs.size() == 5);
  CHECK(msgs[0] == "1 undeclared object 'Y'");
  // F is declared even though its functor is not.
  CHECK(msgs[1] == "2 undeclared functor 'D'");
  CHECK(msgs[2] == "3 expected number, found ';'");
  CHECK(msgs[3] == "4 duplicate site 'S'");
  CHECK(msgs[4].find("5 unknown task 'frobnicate'") == 0);
}

TEST_CASE("lexical errors and matrices") {
  auto r = parse("site S = finset(2) $");
  REQUIRE(r.diagnostics.size() == 2);
  CHECK(r.diagnostics[0].message == "expected ';' after ')'");
  CHECK(r.diagnostics[0].span.col == 19);
  CHECK(r.diagnostics[1].message == "unexpected character '$'");
  CHECK(r.diagnostics[1].span.col == 20);

  auto bad = parse("site P { objects pt; }\nfunctor D on P over Z { rank pt 1; mult pt = [1 2; 3]; }");
  REQUIRE(bad.diagnostics.size() == 1);
  CHECK(bad.diagnostics[0].message == "matrix rows differ in length");
  CHECK(bad.diagnostics[0].span.line == 2);

  auto ring = parse("site P { objects pt; }\nfunctor D on P over F4 = counting;");
  REQUIRE(ring.diagnostics.size() == 1);
  CHECK(ring.diagnostics[0].message == "unknown coefficient ring 'F4' (use Z, Q or F<p>)");
}

TEST_CASE("printing is canonical and idempotent") {
  const std::string text =
      "site T = finset(1);\n"
      "site S { objects x pt; final pt; morphism p : x -> pt; confined p id_x; allowable all; }\n"
      "functor D on S over Q { rank pt 1; rank x 1; mult x = [1]; mult pt = [1]; unit x = [2/4]; unit pt = [1];"
      " pullback p = [1]; pushforward p = [-3/6]; }\n"
      "theory F = simple(D);\n"
      "task check-sb D;\n"
      "task check-axioms F;\n";
  Document d = parsed(text);
  std::string once = print(d);
  CHECK(once ==
        "site S {\n"
        "  objects pt x;\n"
        "  final pt;\n"
        "  morphism p : x -> pt;\n"
        "  confined id_x p;\n"
        "  allowable all;\n"
        "}\n"
        "\n"
        "site T = finset(1);\n"
        "\n"
        "functor D on S over Q {\n"
        "  rank pt 1;\n"
        "  rank x 1;\n"
        "  mult pt = [1];\n"
        "  mult x = [1];\n"
        "  unit pt = [1];\n"
        "  unit x = [1/2];\n"
        "  pullback p = [1];\n"
        "  pushforward p = [-1/2];\n"
        "}\n"
        "\n"
        "theory F = simple(D);\n"
        "\n"
        "task check-axioms F;\n"
        "task check-sb D;\n");
  Document again = parsed(once);
  CHECK(again == d);
  CHECK(print(again) == once);
}

TEST_CASE("fixtures round-trip and match their canonical form") {
  auto files = fixtures();
  REQUIRE(files.size() >= 8);
  for (const auto& p : files) {
    CAPTURE(p.string());
    Document d = parsed(slurp(p));
    std::string text = print(d);
    Document back = parsed(text);
    CHECK(back == d);
    CHECK(print(back) == text);
    CHECK(text == slurp(std::filesystem::path(BVW_GOLDEN_DIR) / p.filename()));
    CHECK_NOTHROW(Workspace{d});
  }
}

TEST_CASE("structural equality ignores spans only") {
  Document a = parsed("site S = finset(2);");
  Document b = parsed("\n\n   site   S=finset( 2 ) ;");
  CHECK(a == b);
  Document c = parsed("site S = finset(2, empty);");
  CHECK_FALSE(a == c);
}

TEST_CASE("loader resolves names and reduces scalars") {
  Document d = parsed(
      "site P { objects pt; square id_pt id_pt id_pt id_pt; confined all; allowable all; }\n"
      "functor D on P over F3 { rank pt 2; mult pt = [1 0 0 0; 0 1 1 0]; unit pt = [4 -3]; }\n"
      "theory F = simple(D);\n"
      "orient o for F { element pt = [5 0]; }\n");
  Workspace ws(d);
  const auto& data = ws.functor("D");
  CHECK(data.ring == CoeffRing::prime_field(3));
  CHECK(data.rings[0].unit == iv({1, 0}));
  CHECK(*ws.orientation("o").e[0] == iv({2, 0}));
  CHECK(ws.theory("F")->flavor() == Flavor::Full);
  CHECK(ws.theory("F") == ws.theory("F"));

  Document al = parsed("site S = finset(2) { alias f = S2_pt_00; }");
  Workspace wa(al);
  const Site& s = *wa.site("S");
  CHECK(s.morphism_label(wa.morphism(s, "f")) == "S2_pt_00");
  CHECK(s.morphism_label(wa.morphism(s, "id_S2")) == "id_S2");
  CHECK_THROWS_AS(wa.morphism(s, "nope"), Error);
}

TEST_CASE("loader errors name the declaration") {
  auto load_message = [](const std::string& text) -> std::string {
    try {
      Workspace ws(parsed(text));
      for (const auto& n : ws.theory_names()) ws.theory(n);
      for (const auto& n : ws.transform_names()) ws.transform(n);
      for (const auto& n : ws.orientation_names()) ws.orientation(n);
    } catch (const Error& e) {
      return e.what();
    }
    return "";
  };
  CHECK(load_message("site S = finset(2) { alias f = S9_pt_0; }") ==
        "InvalidArgument: line 1: site S: alias f names unknown morphism 'S9_pt_0'");
  CHECK(load_message("site S = finset(7);").find("InvalidArgument: line 1: site S: SizeTooLarge") == 0);
  CHECK(load_message("site P { objects pt; morphism p : pt -> pt; }\n"
                     "functor D on P over Z { rank pt 1; mult pt = [1]; unit pt = [1]; }") ==
        "InvalidArgument: line 2: functor D: no pullback for morphism p");
  CHECK(load_message("site P { objects pt; }\nfunctor D on P over Z { rank pt 2; mult pt = [1]; unit pt = [1 0]; }") ==
        "InvalidArgument: line 2: functor D mult pt: expected a 2x4 matrix, got 1x1");
  CHECK(load_message("site S = finset(2);\nfunctor D on S over Z = counting;\ntheory F = simple(D);\n"
                     "transform c : F -> F = mod2;") != "");
}

TEST_CASE("cli exit codes") {
  auto ok = cli({"check-axioms", fixture("counting.bvw")});
  CHECK(ok.code == 0);
  CHECK(ok.json()["ok"] == true);
  CHECK(ok.json()["schema"] == 1);
  CHECK(ok.err.empty());

  auto mem = cli({"member", fixture("scaled.bvw"), "--morphism", "f", "--element", "1,0"});
  CHECK(mem.code == 1);
  Json m = mem.json();
  CHECK(m["ok"] == false);
  CHECK(m["member"] == false);
  CHECK(m["witness"]["square"] == "[id_S2 S2_pt_00 id_pt S2_pt_00]");
  m.erase("file");
  CHECK(m.dump(2) + "\n" == slurp(std::string(BVW_GOLDEN_DIR) + "/member_scaled.json"));

  CHECK(cli({"member", fixture("scaled.bvw"), "--morphism", "f", "--element", "0,0"}).code == 0);
  CHECK(cli({"member", fixture("scaled.bvw"), "--morphism", "f", "--element", "1"}).code == 2);
  CHECK(cli({"member", fixture("scaled.bvw"), "--morphism", "nope", "--element", "1,0"}).code == 2);

  auto missing = cli({"validate", "missing.bvw"});
  CHECK(missing.code == 2);
  CHECK(missing.json()["error"]["message"] == "InvalidArgument: cannot open missing.bvw");
  CHECK_FALSE(missing.err.empty());

  CHECK(cli({}).code == 2);
  CHECK(cli({"bogus", fixture("counting.bvw")}).code == 2);
  CHECK(cli({"validate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);

  auto smith_z = cli({"extend", fixture("smith_z.bvw")});
  CHECK(smith_z.code == 1);
  CHECK(smith_z.json()["hypotheses"]["checks"][0]["witness"]["source_points"] == 2);
  CHECK(cli({"extend", fixture("smith.bvw")}).code == 0);
  CHECK(cli({"extend", fixture("scaled.bvw")}).code == 1);
  CHECK(cli({"validate", fixture("dual.bvw")}).code == 0);
  CHECK(cli({"check-sb", fixture("euler.bvw")}).code == 0);
  CHECK(cli({"check-axioms", fixture("mod2.bvw"), "--theory", "nope"}).code == 2);
  CHECK(cli({"extend", fixture("counting.bvw")}).code == 2);
}

TEST_CASE("cli reports parse errors on stderr") {
  auto path = std::filesystem::temp_directory_path() / "bvw_frontend_broken.bvw";
  std::ofstream(path) << "site S = finset(2)\nfunctor D on S over Z = counting;\n";
  auto r = cli({"validate", path.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find(path.string() + ":1:19-20: error: expected ';' after ')'") == 0);
  CHECK(r.json()["error"]["kind"] == "ParseError");
  std::filesystem::remove(path);
}

TEST_CASE("cli output is byte-stable") {
  for (const char* name : {"mod2.bvw", "smith.bvw", "scaled.bvw", "dual.bvw"}) {
    CAPTURE(name);
    auto a = cli({"report", fixture(name)});
    auto b = cli({"report", fixture(name)});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  auto wide = cli({"--json-indent", "4", "extend", fixture("identity.bvw")});
  auto flat = cli({"extend", fixture("identity.bvw"), "--json-indent", "-1"});
  CHECK(wide.code == 0);
  CHECK(flat.out.find('\n') == flat.out.size() - 1);
  CHECK(Json::parse(wide.out) == Json::parse(flat.out));
}
