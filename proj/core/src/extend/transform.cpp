#include "bvw/extend/transform.hpp"

#include "bvw/error.hpp"

namespace bvw {

void require_transform_shapes(const CovariantTransform& c) {
  auto bad = [&](const std::string& w) { throw Error(ErrorKind::InvalidArgument, c.name + ": " + w); };
  if (!c.F || !c.H) bad("missing theory");
  if (c.bar.source != c.F->site_ptr() || c.bar.target != c.H->site_ptr()) bad("bar functor does not connect the theory sites");
  const Site& s = c.F->site();
  if (c.maps.size() != s.object_count()) bad("one map per object required");
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const ModuleMap& m = c.maps[static_cast<std::size_t>(x)];
    const Module& src = c.F->group(map_to_point(s, x));
    const Module& tgt = c.H->group(map_to_point(c.H->site(), c.bar.obj(x)));
    if (!(m.source == src) || !(m.target == tgt)) bad("map at " + s.object_label(x) + " has the wrong modules");
  }
}

}  // namespace bvw
