#include "bvw/frontend/document.hpp"

#include <sstream>

namespace bvw::dsl {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

std::string matrix(const MatrixLit& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    if (r) s += "; ";
    for (std::size_t c = 0; c < m.rows[r].size(); ++c) s += (c ? " " : "") + m.rows[r][c].str();
  }
  return s + "]";
}

void site(std::ostream& os, const SiteDecl& d) {
  if (d.generator) {
    const auto& g = *d.generator;
    os << "site " << d.name << " = " << g.kind << "(";
    if (g.kind == "graded") {
      for (std::size_t i = 0; i < g.profiles.size(); ++i) {
        os << (i ? ", " : "") << "[";
        for (std::size_t j = 0; j < g.profiles[i].size(); ++j) os << (j ? ", " : "") << g.profiles[i][j];
        os << "]";
      }
    } else {
      os << g.size << (g.with_empty ? ", empty" : "");
    }
    os << ")";
    if (d.aliases.empty()) {
      os << ";\n";
      return;
    }
    os << " {\n";
    for (const auto& a : d.aliases) os << "  alias " << a.name << " = " << a.value << ";\n";
    os << "}\n";
    return;
  }
  os << "site " << d.name << " {\n";
  os << "  objects " << join(d.objects) << ";\n";
  if (!d.final_object.empty()) os << "  final " << d.final_object << ";\n";
  for (const auto& m : d.morphisms) os << "  morphism " << m.name << " : " << m.source << " -> " << m.target << ";\n";
  for (const auto& c : d.composes) os << "  compose " << c.g << " * " << c.f << " = " << c.h << ";\n";
  if (d.confine_all) os << "  confined all;\n";
  else if (!d.confined.empty()) os << "  confined " << join(d.confined) << ";\n";
  if (d.allow_all) os << "  allowable all;\n";
  else if (!d.allowable.empty()) os << "  allowable " << join(d.allowable) << ";\n";
  for (const auto& q : d.squares) os << "  square " << q.top << " " << q.right << " " << q.bottom << " " << q.left << ";\n";
  os << "}\n";
}

void bar(std::ostream& os, const BarDecl& d) {
  os << "bar " << d.name << " : " << d.source << " -> " << d.target;
  if (d.kind != "explicit") {
    os << " = " << d.kind << ";\n";
    return;
  }
  os << " {\n";
  for (const auto& e : d.objects) os << "  object " << e.name << " -> " << e.value << ";\n";
  for (const auto& e : d.morphisms) os << "  morphism " << e.name << " -> " << e.value << ";\n";
  os << "}\n";
}

void functor(std::ostream& os, const FunctorDecl& d) {
  os << "functor " << d.name << " on " << d.site << " over " << d.ring;
  if (d.kind != "explicit") {
    os << " = " << d.kind << ";\n";
    return;
  }
  os << " {\n";
  for (const auto& r : d.ranks) os << "  rank " << r.name << " " << r.value << ";\n";
  auto list = [&](const char* kw, const std::vector<Named<MatrixLit>>& v) {
    for (const auto& e : v) os << "  " << kw << " " << e.name << " = " << matrix(e.value) << ";\n";
  };
  list("mult", d.mult);
  list("unit", d.unit);
  list("pullback", d.pullback);
  list("pushforward", d.pushforward);
  if (d.one_sided) os << "  one_sided;\n";
  os << "}\n";
}

void transform(std::ostream& os, const TransformDecl& d) {
  os << "transform " << d.name << " : " << d.source << " -> " << d.target;
  if (d.kind == "explicit") {
    os << " via " << d.bar << " {\n";
    for (const auto& e : d.maps) os << "  map " << e.name << " = " << matrix(e.value) << ";\n";
    os << "}\n";
    return;
  }
  os << " = " << d.kind;
  if (d.kind == "scaled") os << "(" << d.scale.str() << ")";
  if (d.kind == "smith") os << "(" << d.bar << ")";
  os << ";\n";
}

void orient(std::ostream& os, const OrientDecl& d) {
  os << "orient " << d.name << " for " << d.theory;
  if (d.kind == "explicit") {
    os << " {\n";
    for (const auto& e : d.elements) os << "  element " << e.name << " = " << matrix(e.value) << ";\n";
    os << "}\n";
    return;
  }
  os << " = units";
  if (!(d.scale == Scalar(1))) os << "(" << d.scale.str() << ")";
  os << ";\n";
}

}  // namespace

std::string print(const Document& doc) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << "\n";
    first = false;
  };
  for (const auto& d : doc.sites) sep(), site(os, d);
  for (const auto& d : doc.bars) sep(), bar(os, d);
  for (const auto& d : doc.functors) sep(), functor(os, d);
  for (const auto& d : doc.theories) sep(), os << "theory " << d.name << " = simple(" << d.functor << ");\n";
  for (const auto& d : doc.transforms) sep(), transform(os, d);
  for (const auto& d : doc.orients) sep(), orient(os, d);
  if (!doc.tasks.empty()) {
    sep();
    for (const auto& t : doc.tasks) os << "task " << t.str() << ";\n";
  }
  return os.str();
}

}  // namespace bvw::dsl
