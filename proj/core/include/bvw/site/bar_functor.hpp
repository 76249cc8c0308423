#pragma once

#include "bvw/report.hpp"
#include "bvw/site/site.hpp"

#include <optional>
#include <vector>

namespace bvw {

struct BarFunctor {
  SitePtr source;
  SitePtr target;
  std::vector<ObjId> object_map;
  std::vector<MorId> morphism_map;

  ObjId obj(ObjId x) const { return object_map.at(static_cast<std::size_t>(x)); }
  MorId mor(MorId f) const { return morphism_map.at(static_cast<std::size_t>(f)); }
  Square square(const Square& s) const { return {mor(s.top), mor(s.right), mor(s.bottom), mor(s.left)}; }
  // Listed image of a listed square, if any.
  std::optional<SqId> map_square(SqId s) const;
};

BarFunctor identity_functor(const SitePtr& site);

// second after first.
BarFunctor compose_functors(const BarFunctor& second, const BarFunctor& first);

Report validate_bar_functor(const BarFunctor& b);

}  // namespace bvw
