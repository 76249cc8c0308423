#include "bvw/frontend/document.hpp"

#include "bvw/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace bvw::dsl {

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << span.line << ':' << span.col << '-' << span.end_col << ": " << severity << ": " << message;
  return os.str();
}

std::string TaskDecl::str() const {
  std::string s = verb;
  for (const auto& a : args) s += " " + a;
  return s;
}

namespace {

enum class Tok { Ident, Number, Punct, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

const std::set<std::string> kBlockKeywords = {"site", "bar", "functor", "theory", "transform", "orient", "task"};
const std::set<std::string> kReserved = {
    "site",     "bar",      "functor",   "theory",  "transform", "orient", "task",   "objects",
    "final",    "morphism", "compose",   "confined", "allowable", "square", "alias",  "object",
    "rank",     "mult",     "unit",      "pullback", "pushforward", "one_sided", "map", "element",
    "on",       "over",     "for",       "via"};

std::vector<Token> lex(const std::string& text, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.span.line = line;
    t.span.col = col;
    std::size_t start = i;
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && is_ident_char(text[j])) {
        if (text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>') break;
        ++j;
      }
      t.kind = Tok::Ident;
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '/' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      t.kind = Tok::Number;
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.kind = Tok::Punct;
      advance(2);
    } else if (std::string("{}()[];:=,*").find(c) != std::string::npos) {
      t.kind = Tok::Punct;
      advance(1);
    } else {
      t.kind = Tok::Bad;
      advance(1);
    }
    t.text = text.substr(start, i - start);
    t.span.end_col = t.span.col + static_cast<int>(t.text.size());
    if (t.kind == Tok::Bad) {
      diags.push_back({"error", "unexpected character '" + t.text + "'", t.span});
      continue;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.span = {line, col, col + 1};
  out.push_back(end);
  return out;
}

struct Abort {};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

  Document run() {
    Document doc;
    while (peek().kind != Tok::End) {
      try {
        block(doc);
      } catch (const Abort&) {
        recover();
      }
    }
    return doc;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
  bool at(const std::string& text) const {
    const Token& t = peek();
    return (t.kind == Tok::Punct || t.kind == Tok::Ident) && t.text == text;
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind == Tok::Punct && t.text == "{") ++depth_;
    if (t.kind == Tok::Punct && t.text == "}") depth_ = std::max(0, depth_ - 1);
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& message, Span span) {
    diags_.push_back({"error", message, span});
    throw Abort{};
  }
  void note(const std::string& message, Span span) { diags_.push_back({"error", message, span}); }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  // Reports a missing terminator right after the previous token.
  void expect(const std::string& text) {
    if (at(text)) {
      take();
      return;
    }
    if (text == ";" && pos_ > 0) {
      Span s = prev().span;
      fail("expected ';' after " + describe(prev()), Span{s.line, s.end_col, s.end_col + 1});
    }
    fail("expected '" + text + "', found " + describe(peek()), peek().span);
  }

  std::string ident(const char* what = "identifier") {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kReserved.count(t.text)) fail(std::string("expected ") + what + ", found " + describe(t), t.span);
    return take().text;
  }

  void keyword(const std::string& kw) {
    if (!(peek().kind == Tok::Ident && peek().text == kw)) fail("expected '" + kw + "', found " + describe(peek()), peek().span);
    take();
  }

  Scalar number() {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail("expected number, found " + describe(t), t.span);
    take();
    try {
      return parse_scalar(t.text);
    } catch (const Error& e) {
      fail(e.what(), t.span);
    }
  }

  int small_int() {
    Span s = peek().span;
    Scalar v = number();
    if (!v.is_integral() || v.num < -1000000 || v.num > 1000000) fail("expected a small integer", s);
    return static_cast<int>(v.num);
  }

  // Identifiers until ';', each reserved word ending the list.
  std::vector<std::string> ident_list() {
    std::vector<std::string> out;
    while (peek().kind == Tok::Ident && !kReserved.count(peek().text)) out.push_back(take().text);
    if (out.empty()) fail("expected identifier, found " + describe(peek()), peek().span);
    return out;
  }

  MatrixLit matrix() {
    MatrixLit m;
    m.span = peek().span;
    expect("[");
    if (at("]")) {
      take();
      return m;
    }
    Vec row;
    while (true) {
      if (peek().kind == Tok::Number) {
        row.push_back(number());
      } else if (at(";")) {
        take();
        if (row.empty()) fail("empty matrix row", prev().span);
        m.rows.push_back(std::move(row));
        row.clear();
      } else if (at("]")) {
        take();
        if (row.empty()) fail("empty matrix row", prev().span);
        m.rows.push_back(std::move(row));
        break;
      } else {
        fail("expected number, ';' or ']' in matrix, found " + describe(peek()), peek().span);
      }
    }
    for (const auto& r : m.rows)
      if (r.size() != m.rows.front().size()) fail("matrix rows differ in length", m.span);
    return m;
  }

  std::string ring() {
    Span s = peek().span;
    std::string r = ident("coefficient ring");
    if (r == "Z" || r == "Q") return r;
    if (r.size() > 1 && r[0] == 'F' && std::all_of(r.begin() + 1, r.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      long long p = std::stoll(r.substr(1));
      if (is_prime(p)) return r;
    }
    fail("unknown coefficient ring '" + r + "' (use Z, Q or F<p>)", s);
  }

  void recover() {
    int depth = depth_;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (depth == 0 && t.kind == Tok::Ident && kBlockKeywords.count(t.text)) break;
      if (t.kind == Tok::Punct && t.text == "{") ++depth;
      if (t.kind == Tok::Punct && t.text == "}") depth = std::max(0, depth - 1);
      if (pos_ + 1 < toks_.size()) ++pos_;
    }
    depth_ = 0;
  }

  // Declared names of every kind, for use-before-declaration checks.
  void declare(std::map<std::string, Span>& table, const std::string& kind, const std::string& name, Span s) {
    if (table.count(name)) note("duplicate " + kind + " '" + name + "'", s);
    table[name] = s;
  }
  void require(const std::map<std::string, Span>& table, const std::string& kind, const std::string& name, Span s) {
    if (!table.count(name)) note("undeclared " + kind + " '" + name + "'", s);
  }

  void block(Document& doc) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || !kBlockKeywords.count(t.text))
      fail("expected a block (site, bar, functor, theory, transform, orient, task), found " + describe(t), t.span);
    std::string kw = t.text;
    if (kw == "site") doc.sites.push_back(site());
    else if (kw == "bar") doc.bars.push_back(bar());
    else if (kw == "functor") doc.functors.push_back(functor());
    else if (kw == "theory") doc.theories.push_back(theory());
    else if (kw == "transform") doc.transforms.push_back(transform());
    else if (kw == "orient") doc.orients.push_back(orient());
    else doc.tasks.push_back(task());
  }

  SiteDecl site() {
    SiteDecl d;
    d.span = take().span;
    Span name_span = peek().span;
    d.name = ident("site name");
    declare(sites_, "site", d.name, name_span);
    if (at("=")) {
      take();
      SiteGenerator g;
      Span ks = peek().span;
      g.kind = ident("site generator");
      if (g.kind != "finset" && g.kind != "involution" && g.kind != "graded")
        fail("unknown site generator '" + g.kind + "' (use finset, involution or graded)", ks);
      expect("(");
      if (g.kind == "graded") {
        do {
          expect("[");
          std::vector<int> prof;
          if (!at("]")) {
            prof.push_back(small_int());
            while (at(",")) {
              take();
              prof.push_back(small_int());
            }
          }
          expect("]");
          g.profiles.push_back(std::move(prof));
        } while (at(",") && (take(), true));
      } else {
        g.size = small_int();
        if (at(",")) {
          take();
          Span es = peek().span;
          std::string flag = ident("'empty'");
          if (flag != "empty") fail("expected 'empty', found '" + flag + "'", es);
          g.with_empty = true;
        }
      }
      expect(")");
      d.generator = std::move(g);
      if (at("{")) {
        take();
        while (!at("}")) {
          keyword("alias");
          Named<std::string> a;
          a.span = peek().span;
          a.name = ident("alias name");
          expect("=");
          a.value = ident("morphism label");
          expect(";");
          d.aliases.push_back(std::move(a));
        }
        take();
      } else {
        expect(";");
      }
      return d;
    }
    expect("{");
    std::set<std::string> objects, morphisms;
    auto need_obj = [&](const std::string& n, Span s) {
      if (!objects.count(n)) note("undeclared object '" + n + "'", s);
    };
    auto need_mor = [&](const std::string& n, Span s) {
      if (!morphisms.count(n)) note("undeclared morphism '" + n + "'", s);
    };
    while (!at("}")) {
      const Token& k = peek();
      if (k.kind != Tok::Ident) fail("expected a site statement, found " + describe(k), k.span);
      std::string stmt = k.text;
      Span ks = k.span;
      take();
      if (stmt == "objects") {
        for (auto& o : ident_list()) {
          if (objects.count(o)) note("duplicate object '" + o + "'", ks);
          objects.insert(o);
          morphisms.insert("id_" + o);
          d.objects.push_back(o);
        }
        expect(";");
      } else if (stmt == "final") {
        Span s = peek().span;
        d.final_object = ident("object");
        need_obj(d.final_object, s);
        expect(";");
      } else if (stmt == "morphism") {
        MorphismDecl m;
        m.span = peek().span;
        m.name = ident("morphism name");
        expect(":");
        Span ss = peek().span;
        m.source = ident("object");
        need_obj(m.source, ss);
        expect("->");
        Span ts = peek().span;
        m.target = ident("object");
        need_obj(m.target, ts);
        expect(";");
        if (morphisms.count(m.name)) note("duplicate morphism '" + m.name + "'", m.span);
        morphisms.insert(m.name);
        d.morphisms.push_back(std::move(m));
      } else if (stmt == "compose") {
        ComposeDecl c;
        c.span = peek().span;
        c.g = ident("morphism");
        need_mor(c.g, c.span);
        expect("*");
        Span fs = peek().span;
        c.f = ident("morphism");
        need_mor(c.f, fs);
        expect("=");
        Span hs = peek().span;
        c.h = ident("morphism");
        need_mor(c.h, hs);
        expect(";");
        d.composes.push_back(std::move(c));
      } else if (stmt == "confined" || stmt == "allowable") {
        bool& all = stmt == "confined" ? d.confine_all : d.allow_all;
        auto& list = stmt == "confined" ? d.confined : d.allowable;
        if (at("all")) {
          take();
          all = true;
        } else {
          Span ls = peek().span;
          for (auto& m : ident_list()) {
            need_mor(m, ls);
            list.push_back(m);
          }
        }
        expect(";");
      } else if (stmt == "square") {
        SquareDecl q;
        q.span = peek().span;
        std::string* parts[] = {&q.top, &q.right, &q.bottom, &q.left};
        for (auto* p : parts) {
          Span ps = peek().span;
          *p = ident("morphism");
          need_mor(*p, ps);
        }
        expect(";");
        d.squares.push_back(std::move(q));
      } else {
        fail("unknown site statement '" + stmt + "'", ks);
      }
    }
    take();
    if (d.objects.empty()) note("site '" + d.name + "' declares no objects", d.span);
    return d;
  }

  BarDecl bar() {
    BarDecl d;
    d.span = take().span;
    Span ns = peek().span;
    d.name = ident("bar name");
    declare(bars_, "bar", d.name, ns);
    expect(":");
    Span ss = peek().span;
    d.source = ident("site");
    require(sites_, "site", d.source, ss);
    expect("->");
    Span ts = peek().span;
    d.target = ident("site");
    require(sites_, "site", d.target, ts);
    if (at("=")) {
      take();
      Span ks = peek().span;
      d.kind = ident("bar kind");
      if (d.kind != "identity" && d.kind != "fixed_points") fail("unknown bar kind '" + d.kind + "' (use identity or fixed_points)", ks);
      expect(";");
      return d;
    }
    d.kind = "explicit";
    expect("{");
    while (!at("}")) {
      Span ks = peek().span;
      std::string stmt = peek().kind == Tok::Ident ? peek().text : "";
      if (stmt != "object" && stmt != "morphism") fail("expected 'object' or 'morphism', found " + describe(peek()), ks);
      take();
      Named<std::string> e;
      e.span = peek().span;
      e.name = ident();
      expect("->");
      e.value = ident();
      expect(";");
      (stmt == "object" ? d.objects : d.morphisms).push_back(std::move(e));
    }
    take();
    return d;
  }

  FunctorDecl functor() {
    FunctorDecl d;
    d.span = take().span;
    Span ns = peek().span;
    d.name = ident("functor name");
    declare(functors_, "functor", d.name, ns);
    keyword("on");
    Span ss = peek().span;
    d.site = ident("site");
    require(sites_, "site", d.site, ss);
    keyword("over");
    d.ring = ring();
    if (at("=")) {
      take();
      Span ks = peek().span;
      d.kind = ident("functor kind");
      if (d.kind != "counting" && d.kind != "euler" && d.kind != "invariant")
        fail("unknown functor kind '" + d.kind + "' (use counting, euler or invariant)", ks);
      expect(";");
      return d;
    }
    d.kind = "explicit";
    expect("{");
    while (!at("}")) {
      Span ks = peek().span;
      std::string stmt = peek().kind == Tok::Ident ? peek().text : "";
      if (stmt == "one_sided") {
        take();
        d.one_sided = true;
        expect(";");
        continue;
      }
      if (stmt == "rank") {
        take();
        Named<int> r;
        r.span = peek().span;
        r.name = ident("object");
        r.value = small_int();
        if (r.value < 0) fail("rank must be non-negative", r.span);
        expect(";");
        d.ranks.push_back(std::move(r));
        continue;
      }
      std::vector<Named<MatrixLit>>* list = nullptr;
      if (stmt == "mult") list = &d.mult;
      else if (stmt == "unit") list = &d.unit;
      else if (stmt == "pullback") list = &d.pullback;
      else if (stmt == "pushforward") list = &d.pushforward;
      else fail("expected rank, mult, unit, pullback, pushforward or one_sided, found " + describe(peek()), ks);
      take();
      Named<MatrixLit> e;
      e.span = peek().span;
      e.name = ident();
      expect("=");
      e.value = matrix();
      expect(";");
      list->push_back(std::move(e));
    }
    take();
    return d;
  }

  TheoryDecl theory() {
    TheoryDecl d;
    d.span = take().span;
    Span ns = peek().span;
    d.name = ident("theory name");
    declare(theories_, "theory", d.name, ns);
    expect("=");
    keyword_like("simple");
    expect("(");
    Span fs = peek().span;
    d.functor = ident("functor");
    require(functors_, "functor", d.functor, fs);
    expect(")");
    expect(";");
    return d;
  }

  void keyword_like(const std::string& word) {
    if (!(peek().kind == Tok::Ident && peek().text == word)) fail("expected '" + word + "', found " + describe(peek()), peek().span);
    take();
  }

  TransformDecl transform() {
    TransformDecl d;
    d.span = take().span;
    Span ns = peek().span;
    d.name = ident("transform name");
    declare(transforms_, "transform", d.name, ns);
    expect(":");
    Span ss = peek().span;
    d.source = ident("theory");
    require(theories_, "theory", d.source, ss);
    expect("->");
    Span ts = peek().span;
    d.target = ident("theory");
    require(theories_, "theory", d.target, ts);
    if (at("via")) {
      take();
      Span bs = peek().span;
      d.bar = ident("bar");
      require(bars_, "bar", d.bar, bs);
      d.kind = "explicit";
      expect("{");
      while (!at("}")) {
        keyword("map");
        Named<MatrixLit> e;
        e.span = peek().span;
        e.name = ident("object");
        expect("=");
        e.value = matrix();
        expect(";");
        d.maps.push_back(std::move(e));
      }
      take();
      return d;
    }
    expect("=");
    Span ks = peek().span;
    d.kind = ident("transform kind");
    if (d.kind == "scaled") {
      expect("(");
      d.scale = number();
      expect(")");
    } else if (d.kind == "smith") {
      expect("(");
      Span bs = peek().span;
      d.bar = ident("bar");
      require(bars_, "bar", d.bar, bs);
      expect(")");
    } else if (d.kind != "identity" && d.kind != "mod2") {
      fail("unknown transform kind '" + d.kind + "' (use identity, mod2, scaled(u) or smith(bar))", ks);
    }
    expect(";");
    return d;
  }

  OrientDecl orient() {
    OrientDecl d;
    d.span = take().span;
    Span ns = peek().span;
    d.name = ident("orientation name");
    declare(orients_, "orientation", d.name, ns);
    keyword("for");
    Span ts = peek().span;
    d.theory = ident("theory");
    require(theories_, "theory", d.theory, ts);
    if (at("=")) {
      take();
      Span ks = peek().span;
      d.kind = ident("orientation kind");
      if (d.kind != "units") fail("unknown orientation kind '" + d.kind + "' (use units or units(k))", ks);
      if (at("(")) {
        take();
        d.scale = number();
        expect(")");
      }
      expect(";");
      return d;
    }
    d.kind = "explicit";
    expect("{");
    while (!at("}")) {
      keyword("element");
      Named<MatrixLit> e;
      e.span = peek().span;
      e.name = ident("object");
      expect("=");
      e.value = matrix();
      if (e.value.rows.size() > 1) fail("an orientation element is a single row", e.value.span);
      expect(";");
      d.elements.push_back(std::move(e));
    }
    take();
    return d;
  }

  TaskDecl task() {
    TaskDecl d;
    d.span = take().span;
    Span vs = peek().span;
    d.verb = ident("task verb");
    auto arg = [&](const std::map<std::string, Span>& table, const std::string& kind) {
      Span s = peek().span;
      std::string a = ident(kind.c_str());
      require(table, kind, a, s);
      d.args.push_back(a);
    };
    if (d.verb == "check-axioms") {
      arg(theories_, "theory");
    } else if (d.verb == "check-sb") {
      arg(functors_, "functor");
    } else if (d.verb == "validate") {
      arg(sites_, "site");
    } else if (d.verb == "extend") {
      arg(transforms_, "transform");
      arg(orients_, "orientation");
    } else {
      fail("unknown task '" + d.verb + "' (use validate, check-sb, check-axioms or extend)", vs);
    }
    expect(";");
    return d;
  }

  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::map<std::string, Span> sites_, bars_, functors_, theories_, transforms_, orients_;
};

template <class T>
void sort_by_name(std::vector<T>& v) {
  std::stable_sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.name < b.name; });
}

void canonicalize(Document& doc) {
  sort_by_name(doc.sites);
  sort_by_name(doc.bars);
  sort_by_name(doc.functors);
  sort_by_name(doc.theories);
  sort_by_name(doc.transforms);
  sort_by_name(doc.orients);
  std::stable_sort(doc.tasks.begin(), doc.tasks.end(), [](const TaskDecl& a, const TaskDecl& b) { return a.str() < b.str(); });
  for (auto& s : doc.sites) {
    sort_by_name(s.aliases);
    std::sort(s.objects.begin(), s.objects.end());
    sort_by_name(s.morphisms);
    std::sort(s.composes.begin(), s.composes.end(), [](const ComposeDecl& a, const ComposeDecl& b) {
      return std::tie(a.g, a.f, a.h) < std::tie(b.g, b.f, b.h);
    });
    for (auto* l : {&s.confined, &s.allowable}) {
      std::sort(l->begin(), l->end());
      l->erase(std::unique(l->begin(), l->end()), l->end());
    }
    if (s.confine_all) s.confined.clear();
    if (s.allow_all) s.allowable.clear();
    std::sort(s.squares.begin(), s.squares.end(), [](const SquareDecl& a, const SquareDecl& b) {
      return std::tie(a.top, a.right, a.bottom, a.left) < std::tie(b.top, b.right, b.bottom, b.left);
    });
  }
  for (auto& b : doc.bars) {
    sort_by_name(b.objects);
    sort_by_name(b.morphisms);
  }
  for (auto& f : doc.functors) {
    sort_by_name(f.ranks);
    for (auto* l : {&f.mult, &f.unit, &f.pullback, &f.pushforward}) sort_by_name(*l);
  }
  for (auto& t : doc.transforms) sort_by_name(t.maps);
  for (auto& o : doc.orients) sort_by_name(o.elements);
}

template <class T>
void duplicates(const std::vector<Named<T>>& v, const std::string& what, std::vector<Diagnostic>& diags) {
  std::set<std::string> seen;
  for (const auto& e : v)
    if (!seen.insert(e.name).second) diags.push_back({"error", "duplicate " + what + " for '" + e.name + "'", e.span});
}

}  // namespace

ParseResult parse(const std::string& text) {
  ParseResult r;
  auto toks = lex(text, r.diagnostics);
  Parser p(std::move(toks), r.diagnostics);
  Document doc = p.run();
  for (const auto& s : doc.sites) duplicates(s.aliases, "alias", r.diagnostics);
  for (const auto& b : doc.bars) {
    duplicates(b.objects, "object image", r.diagnostics);
    duplicates(b.morphisms, "morphism image", r.diagnostics);
  }
  for (const auto& f : doc.functors) {
    duplicates(f.ranks, "rank", r.diagnostics);
    duplicates(f.mult, "mult", r.diagnostics);
    duplicates(f.unit, "unit", r.diagnostics);
    duplicates(f.pullback, "pullback", r.diagnostics);
    duplicates(f.pushforward, "pushforward", r.diagnostics);
  }
  for (const auto& t : doc.transforms) duplicates(t.maps, "map", r.diagnostics);
  for (const auto& o : doc.orients) duplicates(o.elements, "element", r.diagnostics);
  std::stable_sort(r.diagnostics.begin(), r.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.span.line, a.span.col) < std::tie(b.span.line, b.span.col);
  });
  if (r.diagnostics.empty()) {
    canonicalize(doc);
    r.document = std::move(doc);
  }
  return r;
}

}  // namespace bvw::dsl
