#pragma once

#include "bvw/zexact/matrix.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bvw::dsl {

// 1-based line and columns [col, end_col). Spans locate diagnostics only;
// they never distinguish two documents.
struct Span {
  int line = 0;
  int col = 0;
  int end_col = 0;

  friend bool operator==(const Span&, const Span&) { return true; }
};

struct Diagnostic {
  std::string severity = "error";
  std::string message;
  Span span;

  std::string str() const;
};

struct MatrixLit {
  std::vector<Vec> rows;
  Span span;

  friend bool operator==(const MatrixLit&, const MatrixLit&) = default;
};

template <class T>
struct Named {
  std::string name;
  T value;
  Span span;

  friend bool operator==(const Named&, const Named&) = default;
};

struct SiteGenerator {
  std::string kind;                       // finset, involution, graded
  int size = 0;
  bool with_empty = false;
  std::vector<std::vector<int>> profiles;  // graded only

  friend bool operator==(const SiteGenerator&, const SiteGenerator&) = default;
};

struct MorphismDecl {
  std::string name, source, target;
  Span span;
  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

struct ComposeDecl {
  std::string g, f, h;  // g * f = h
  Span span;
  friend bool operator==(const ComposeDecl&, const ComposeDecl&) = default;
};

struct SquareDecl {
  std::string top, right, bottom, left;
  Span span;
  friend bool operator==(const SquareDecl&, const SquareDecl&) = default;
};

struct SiteDecl {
  std::string name;
  Span span;
  std::optional<SiteGenerator> generator;
  std::vector<Named<std::string>> aliases;  // alias -> morphism label
  std::vector<std::string> objects;
  std::string final_object;
  std::vector<MorphismDecl> morphisms;
  std::vector<ComposeDecl> composes;
  bool confine_all = false, allow_all = false;
  std::vector<std::string> confined, allowable;
  std::vector<SquareDecl> squares;

  friend bool operator==(const SiteDecl&, const SiteDecl&) = default;
};

struct BarDecl {
  std::string name, source, target;
  Span span;
  std::string kind;  // identity, fixed_points, explicit
  std::vector<Named<std::string>> objects, morphisms;

  friend bool operator==(const BarDecl&, const BarDecl&) = default;
};

struct FunctorDecl {
  std::string name, site, ring;
  Span span;
  std::string kind;  // counting, euler, invariant, explicit
  std::vector<Named<int>> ranks;
  std::vector<Named<MatrixLit>> mult, unit, pullback, pushforward;
  bool one_sided = false;

  friend bool operator==(const FunctorDecl&, const FunctorDecl&) = default;
};

struct TheoryDecl {
  std::string name, functor;
  Span span;
  friend bool operator==(const TheoryDecl&, const TheoryDecl&) = default;
};

struct TransformDecl {
  std::string name, source, target;
  Span span;
  std::string kind;  // identity, mod2, scaled, smith, explicit
  Scalar scale{1};
  std::string bar;  // smith and explicit
  std::vector<Named<MatrixLit>> maps;

  friend bool operator==(const TransformDecl&, const TransformDecl&) = default;
};

struct OrientDecl {
  std::string name, theory;
  Span span;
  std::string kind;  // units, explicit
  Scalar scale{1};
  std::vector<Named<MatrixLit>> elements;

  friend bool operator==(const OrientDecl&, const OrientDecl&) = default;
};

struct TaskDecl {
  std::string verb;
  std::vector<std::string> args;
  Span span;
  friend bool operator==(const TaskDecl&, const TaskDecl&) = default;

  std::string str() const;
};

// Canonical form: each kind sorted by name (tasks by text), lists inside
// blocks sorted.
struct Document {
  std::vector<SiteDecl> sites;
  std::vector<BarDecl> bars;
  std::vector<FunctorDecl> functors;
  std::vector<TheoryDecl> theories;
  std::vector<TransformDecl> transforms;
  std::vector<OrientDecl> orients;
  std::vector<TaskDecl> tasks;

  friend bool operator==(const Document&, const Document&) = default;
};

struct ParseResult {
  std::optional<Document> document;  // empty when any error was reported
  std::vector<Diagnostic> diagnostics;
};

ParseResult parse(const std::string& text);
std::string print(const Document& doc);

}  // namespace bvw::dsl
