#include "bvw/frontend/cli.hpp"

#include "bvw/bivariant/axioms.hpp"
#include "bvw/error.hpp"
#include "bvw/extend/extend.hpp"
#include "bvw/frontend/workspace.hpp"
#include "bvw/site/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace bvw {

namespace {

struct Options {
  std::string command;
  std::string file;
  int indent = 2;
  std::string theory, functor, transform, orient, morphism, element;
};

class Session {
 public:
  Session(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int run() {
    Json body;
    int code = 0;
    try {
      auto ws = load();
      if (!ws) return finish(Json{{"error", {{"kind", "ParseError"}, {"message", "document has errors"}}}}, false, 2);
      bool ok = dispatch(*ws, body);
      code = ok ? 0 : 1;
    } catch (const Error& e) {
      const bool check = e.kind() == ErrorKind::SBViolation || e.kind() == ErrorKind::NaturalityViolation ||
                         e.kind() == ErrorKind::OrientationViolation;
      err_ << "bvw: " << e.what() << '\n';
      return finish(Json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}, false, check ? 1 : 2);
    } catch (const std::exception& e) {
      err_ << "bvw: " << e.what() << '\n';
      return finish(Json{{"error", {{"kind", "InvalidArgument"}, {"message", e.what()}}}}, false, 2);
    }
    return finish(std::move(body), code == 0, code);
  }

 private:
  int finish(Json body, bool ok, int code) {
    Json j = Json::object();
    j["schema"] = 1;
    j["command"] = o_.command;
    j["file"] = o_.file;
    j["ok"] = ok;
    for (auto& [k, v] : body.items()) j[k] = v;
    out_ << j.dump(o_.indent < 0 ? -1 : o_.indent) << '\n';
    return code;
  }

  std::optional<dsl::Workspace> load() {
    std::ifstream in(o_.file, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + o_.file);
    std::stringstream ss;
    ss << in.rdbuf();
    auto r = dsl::parse(ss.str());
    for (const auto& d : r.diagnostics) err_ << o_.file << ':' << d.str() << '\n';
    if (!r.document) return std::nullopt;
    return dsl::Workspace(std::move(*r.document));
  }

  static std::string pick(const std::string& chosen, const std::vector<std::string>& names, const char* kind) {
    if (!chosen.empty()) return chosen;
    if (names.size() == 1) return names.front();
    throw Error(ErrorKind::InvalidArgument, std::string("document declares ") + std::to_string(names.size()) + " " + kind +
                                                "s; choose one with --" + kind);
  }

  bool dispatch(const dsl::Workspace& ws, Json& body) {
    if (o_.command == "validate") return validate(ws, body);
    if (o_.command == "check-sb") return check_sb_cmd(ws, o_.functor.empty() ? ws.functor_names() : std::vector{o_.functor}, body);
    if (o_.command == "check-axioms") return check_axioms_cmd(ws, o_.theory.empty() ? ws.theory_names() : std::vector{o_.theory}, body);
    if (o_.command == "extend") return extend(ws, pick(o_.transform, ws.transform_names(), "transform"), pick(o_.orient, ws.orientation_names(), "orient"), body);
    if (o_.command == "member") return member(ws, body);
    return report(ws, body);
  }

  bool validate(const dsl::Workspace& ws, Json& body) {
    bool ok = true;
    Json sites = Json::object();
    for (const auto& n : ws.site_names()) {
      Report r = validate_site(*ws.site(n));
      ok = ok && r.passed();
      sites[n] = r.to_json();
    }
    Json bars = Json::object();
    for (const auto& d : ws.document().bars) {
      Report r = validate_bar_functor(ws.bar(d.name));
      ok = ok && r.passed();
      bars[d.name] = r.to_json();
    }
    Json built = Json::array();
    for (const auto& n : ws.theory_names()) ws.theory(n), built.push_back("theory " + n);
    for (const auto& n : ws.transform_names()) ws.transform(n), built.push_back("transform " + n);
    for (const auto& n : ws.orientation_names()) ws.orientation(n), built.push_back("orient " + n);
    body["sites"] = sites;
    body["bars"] = bars;
    body["built"] = built;
    return ok;
  }

  bool check_sb_cmd(const dsl::Workspace& ws, const std::vector<std::string>& names, Json& body) {
    bool ok = true;
    Json reports = Json::object();
    for (const auto& n : names) {
      Report r = check_sb(ws.functor(n));
      ok = ok && r.passed();
      reports[n] = r.to_json();
    }
    body["functors"] = reports;
    return ok;
  }

  bool check_axioms_cmd(const dsl::Workspace& ws, const std::vector<std::string>& names, Json& body) {
    bool ok = true;
    Json reports = Json::object();
    for (const auto& n : names) {
      TheoryPtr t = ws.theory(n);
      Json e{{"flavor", to_string(t->flavor())}, {"commutativity", to_string(t->commutativity())}};
      Report a = check_axioms(*t);
      ok = ok && a.passed();
      e["axioms"] = a.to_json();
      if (t->commutativity() != Commutativity::None) {
        Report c = check_commutativity(*t);
        ok = ok && c.passed();
        e["commutativity_report"] = c.to_json();
      }
      reports[n] = e;
    }
    body["theories"] = reports;
    return ok;
  }

  static void require_matching(const dsl::Workspace& ws, const std::string& tname, const std::string& oname) {
    const auto& doc = ws.document();
    auto t = std::find_if(doc.transforms.begin(), doc.transforms.end(), [&](const auto& d) { return d.name == tname; });
    auto o = std::find_if(doc.orients.begin(), doc.orients.end(), [&](const auto& d) { return d.name == oname; });
    if (t->source != o->theory)
      throw Error(ErrorKind::InvalidArgument, "orientation " + oname + " is for " + o->theory + ", not for " + t->source);
  }

  bool extend(const dsl::Workspace& ws, const std::string& tname, const std::string& oname, Json& body) {
    const CovariantTransform& c = ws.transform(tname);
    const OrientationDatum& o = ws.orientation(oname);
    require_matching(ws, tname, oname);
    Report nat = check_naturality(c);
    if (!nat.passed()) {
      body["transform"] = tname;
      body["orientation"] = oname;
      body["hypotheses"] = nat.to_json();
      return false;
    }
    ExtensionResult r = run_extension(c, o);
    body["extension"] = r.to_json();
    return r.hypotheses.passed() && r.ledger.passed();
  }

  bool member(const dsl::Workspace& ws, Json& body) {
    if (o_.morphism.empty() || o_.element.empty())
      throw Error(ErrorKind::InvalidArgument, "member needs --morphism and --element");
    const std::string tname = pick(o_.transform, ws.transform_names(), "transform");
    const std::string oname = pick(o_.orient, ws.orientation_names(), "orient");
    const CovariantTransform& c = ws.transform(tname);
    const OrientationDatum& o = ws.orientation(oname);
    require_matching(ws, tname, oname);
    Extender e(c, o);
    const Site& s = e.F().site();
    MorId f = ws.morphism(s, o_.morphism);
    Vec alpha;
    std::stringstream ss(o_.element);
    for (std::string tok; std::getline(ss, tok, ',');) alpha.push_back(e.F().ring().normalize(parse_scalar(tok)));
    MembershipResult m = e.membership(f, alpha);
    body["transform"] = tname;
    body["orientation"] = oname;
    body["morphism"] = s.morphism_label(f);
    body["element"] = vec_str(alpha);
    body["member"] = m.member;
    if (!m.member) body["witness"] = m.witness;
    if (!m.not_evaluable.empty()) body["not_evaluable"] = m.not_evaluable;
    return m.member;
  }

  bool report(const dsl::Workspace& ws, Json& body) {
    bool ok = true;
    Json tasks = Json::array();
    for (const auto& t : ws.document().tasks) {
      Json b = Json::object();
      bool pass = false;
      if (t.verb == "validate") {
        Report r = validate_site(*ws.site(t.args[0]));
        pass = r.passed();
        b["report"] = r.to_json();
      } else if (t.verb == "check-sb") {
        pass = check_sb_cmd(ws, {t.args[0]}, b);
      } else if (t.verb == "check-axioms") {
        pass = check_axioms_cmd(ws, {t.args[0]}, b);
      } else {
        try {
          pass = extend(ws, t.args[0], t.args[1], b);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::OrientationViolation && e.kind() != ErrorKind::NaturalityViolation) throw;
          b["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        }
      }
      ok = ok && pass;
      b["task"] = t.str();
      b["ok"] = pass;
      tasks.push_back(b);
    }
    body["tasks"] = tasks;
    return ok;
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite bivariant theory workbench", "bvw"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--json-indent", o.indent, "JSON indentation; negative for one line")->capture_default_str();

  auto file_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, ".bvw document")->required();
    return c;
  };
  file_cmd("validate", "Check sites and bar functors and build every declaration");
  file_cmd("check-sb", "Check the functor conditions")->add_option("--functor", o.functor, "Functor to check (default: all)");
  file_cmd("check-axioms", "Check the bivariant axioms")->add_option("--theory", o.theory, "Theory to check (default: all)");
  for (const char* name : {"extend", "member"}) {
    CLI::App* c = file_cmd(name, std::string(name) == "extend" ? "Run the extension pipeline" : "Test membership in the extended theory");
    c->add_option("--transform", o.transform, "Covariant transformation");
    c->add_option("--orient", o.orient, "Orientation datum");
    if (std::string(name) == "member") {
      c->add_option("--morphism", o.morphism, "Morphism label or alias")->required();
      c->add_option("--element", o.element, "Comma-separated coordinates")->required();
    }
  }
  file_cmd("report", "Run the task directives of a document");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "bvw: " << e.what() << '\n';
    return 2;
  }
  o.command = app.get_subcommands().front()->get_name();
  try {
    return Session(o, out, err).run();
  } catch (...) {
    err << "bvw: internal error\n";
    return 2;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace bvw
