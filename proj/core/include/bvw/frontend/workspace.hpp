#pragma once

#include "bvw/extend/transform.hpp"
#include "bvw/frontend/document.hpp"
#include "bvw/simple/simple.hpp"
#include "bvw/site/bar_functor.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bvw::dsl {

CoeffRing ring_from_name(const std::string& name);

// Resolved objects of a parsed document. Sites, bars and functor data are
// built on load; theories, transforms and orientations on first use.
// Load errors throw Error(InvalidArgument) naming the offending declaration.
class Workspace {
 public:
  explicit Workspace(Document doc);

  const Document& document() const { return doc_; }

  SitePtr site(const std::string& name) const;
  const BarFunctor& bar(const std::string& name) const;
  const SimpleFunctorData& functor(const std::string& name) const;
  TheoryPtr theory(const std::string& name) const;
  const CovariantTransform& transform(const std::string& name) const;
  const OrientationDatum& orientation(const std::string& name) const;

  // Name of the site declaration that built s.
  const std::string& site_name(const Site& s) const;
  // Alias or label.
  MorId morphism(const Site& s, const std::string& name) const;

  std::vector<std::string> site_names() const;
  std::vector<std::string> functor_names() const;
  std::vector<std::string> theory_names() const;
  std::vector<std::string> transform_names() const;
  std::vector<std::string> orientation_names() const;

 private:
  template <class T>
  static const T& find_decl(const std::vector<T>& v, const std::string& name, const char* kind);

  void load_site(const SiteDecl& d);
  void load_bar(const BarDecl& d);
  void load_functor(const FunctorDecl& d);

  Document doc_;
  std::map<std::string, SitePtr> sites_;
  std::map<const Site*, std::string> site_names_;
  std::map<std::string, std::map<std::string, std::string>> aliases_;
  std::map<std::string, BarFunctor> bars_;
  std::map<std::string, SimpleFunctorData> functors_;
  mutable std::map<std::string, TheoryPtr> theories_;
  mutable std::map<std::string, CovariantTransform> transforms_;
  mutable std::map<std::string, OrientationDatum> orients_;
};

}  // namespace bvw::dsl
