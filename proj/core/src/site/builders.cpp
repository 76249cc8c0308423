#include "bvw/site/builders.hpp"

#include "bvw/error.hpp"

#include <algorithm>
#include <numeric>

namespace bvw {

namespace {

std::string table_suffix(const std::vector<int>& t) {
  bool wide = std::any_of(t.begin(), t.end(), [](int v) { return v > 9; });
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (wide && i) s += '.';
    s += std::to_string(t[i]);
  }
  return s;
}

bool equivariant(const ConcreteObject& a, const ConcreteObject& b, const std::vector<int>& t) {
  if (a.involution.empty() && b.involution.empty()) return true;
  for (int x = 0; x < a.cardinality; ++x)
    if (t[static_cast<std::size_t>(a.involution[static_cast<std::size_t>(x)])] !=
        b.involution[static_cast<std::size_t>(t[static_cast<std::size_t>(x)])])
      return false;
  return true;
}

}  // namespace

std::string graded_label(const std::vector<int>& dims) {
  if (dims == std::vector<int>{0}) return "pt";
  if (dims.empty()) return "E0";
  return "D" + table_suffix(dims);
}

SitePtr build_concrete_site(const std::vector<ConcreteObject>& objects, const std::string& final_label) {
  const std::size_t n = objects.size();
  for (const auto& o : objects) {
    if (!o.dims.empty() && static_cast<int>(o.dims.size()) != o.cardinality)
      throw Error(ErrorKind::InvalidArgument, "dimension profile of " + o.label + " has the wrong length");
    if (!o.involution.empty()) {
      if (static_cast<int>(o.involution.size()) != o.cardinality)
        throw Error(ErrorKind::InvalidArgument, "involution of " + o.label + " has the wrong length");
      for (int x = 0; x < o.cardinality; ++x)
        if (o.involution[static_cast<std::size_t>(o.involution[static_cast<std::size_t>(x)])] != x)
          throw Error(ErrorKind::InvalidArgument, "involution of " + o.label + " does not square to the identity");
    }
  }
  const bool graded = std::any_of(objects.begin(), objects.end(), [](const auto& o) { return !o.dims.empty(); });
  const bool with_involution =
      std::any_of(objects.begin(), objects.end(), [](const auto& o) { return !o.involution.empty(); });

  SiteBuilder b;
  ConcreteModel model;
  for (const auto& o : objects) {
    b.add_object(o.label);
    model.cardinality.push_back(o.cardinality);
    model.dims.push_back(o.dims);
    model.involution.push_back(o.involution);
  }
  std::map<std::tuple<ObjId, ObjId, std::vector<int>>, MorId> index;
  auto add_fn = [&](ObjId s, ObjId t, const std::vector<int>& table) {
    const auto& src = objects[static_cast<std::size_t>(s)];
    std::vector<int> id(static_cast<std::size_t>(src.cardinality));
    std::iota(id.begin(), id.end(), 0);
    std::string label = (s == t && table == id)
                            ? "id_" + src.label
                            : src.label + "_" + objects[static_cast<std::size_t>(t)].label +
                                  (table.empty() ? std::string() : "_" + table_suffix(table));
    MorId f = b.add_morphism(label, s, t);
    if (s == t && table == id) b.set_identity(s, f);
    model.table.push_back(table);
    index[{s, t, table}] = f;
  };
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      const int a = objects[s].cardinality, c = objects[t].cardinality;
      if (a > 0 && c == 0) continue;
      std::vector<int> table(static_cast<std::size_t>(a), 0);
      for (;;) {
        if (equivariant(objects[s], objects[t], table)) add_fn(static_cast<ObjId>(s), static_cast<ObjId>(t), table);
        int k = 0;
        while (k < a && table[static_cast<std::size_t>(k)] == c - 1) table[static_cast<std::size_t>(k++)] = 0;
        if (k == a) break;
        ++table[static_cast<std::size_t>(k)];
      }
    }
  const auto m = static_cast<MorId>(model.table.size());
  std::vector<ObjId> src(static_cast<std::size_t>(m)), tgt(static_cast<std::size_t>(m));
  for (const auto& [key, f] : index) {
    src[static_cast<std::size_t>(f)] = std::get<0>(key);
    tgt[static_cast<std::size_t>(f)] = std::get<1>(key);
  }
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g) {
      if (tgt[static_cast<std::size_t>(f)] != src[static_cast<std::size_t>(g)]) continue;
      const auto& tf = model.table[static_cast<std::size_t>(f)];
      const auto& tg = model.table[static_cast<std::size_t>(g)];
      std::vector<int> gf(tf.size());
      for (std::size_t x = 0; x < tf.size(); ++x) gf[x] = tg[static_cast<std::size_t>(tf[x])];
      b.set_compose(g, f, index.at({src[static_cast<std::size_t>(f)], tgt[static_cast<std::size_t>(g)], gf}));
    }

  // Cartesian squares for every cospan (f: X -> Y, g: Y' -> Y).
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g) {
      ObjId y = tgt[static_cast<std::size_t>(f)];
      if (tgt[static_cast<std::size_t>(g)] != y) continue;
      ObjId x = src[static_cast<std::size_t>(f)], yp = src[static_cast<std::size_t>(g)];
      const auto& tf = model.table[static_cast<std::size_t>(f)];
      const auto& tg = model.table[static_cast<std::size_t>(g)];
      const auto& ox = objects[static_cast<std::size_t>(x)];
      const auto& oyp = objects[static_cast<std::size_t>(yp)];
      const auto& oy = objects[static_cast<std::size_t>(y)];
      std::vector<std::pair<int, int>> pts;
      for (int a = 0; a < ox.cardinality; ++a)
        for (int c = 0; c < oyp.cardinality; ++c)
          if (tf[static_cast<std::size_t>(a)] == tg[static_cast<std::size_t>(c)]) pts.emplace_back(a, c);
      std::vector<int> pdims;
      if (graded)
        for (auto [a, c] : pts)
          pdims.push_back(ox.dims[static_cast<std::size_t>(a)] + oyp.dims[static_cast<std::size_t>(c)] -
                          oy.dims[static_cast<std::size_t>(tg[static_cast<std::size_t>(c)])]);
      std::vector<int> psigma;
      if (with_involution)
        for (auto [a, c] : pts) {
          std::pair<int, int> img{ox.involution[static_cast<std::size_t>(a)], oyp.involution[static_cast<std::size_t>(c)]};
          psigma.push_back(static_cast<int>(std::find(pts.begin(), pts.end(), img) - pts.begin()));
        }
      for (std::size_t q = 0; q < n; ++q) {
        const auto& oq = objects[q];
        if (oq.cardinality != static_cast<int>(pts.size())) continue;
        std::vector<int> phi(pts.size());
        std::iota(phi.begin(), phi.end(), 0);
        do {
          bool ok = true;
          for (std::size_t i = 0; ok && i < phi.size(); ++i) {
            if (graded && oq.dims[i] != pdims[static_cast<std::size_t>(phi[i])]) ok = false;
            if (with_involution &&
                phi[static_cast<std::size_t>(oq.involution[i])] != psigma[static_cast<std::size_t>(phi[i])])
              ok = false;
          }
          if (!ok) continue;
          std::vector<int> top(phi.size()), left(phi.size());
          for (std::size_t i = 0; i < phi.size(); ++i) {
            top[i] = pts[static_cast<std::size_t>(phi[i])].first;
            left[i] = pts[static_cast<std::size_t>(phi[i])].second;
          }
          b.add_square({index.at({static_cast<ObjId>(q), x, top}), f, g, index.at({static_cast<ObjId>(q), yp, left})});
        } while (std::next_permutation(phi.begin(), phi.end()));
      }
    }
  b.confine_all();
  b.allow_all();
  auto final_id = b.find_object(final_label);
  if (!final_id) throw Error(ErrorKind::InvalidArgument, "no final object '" + final_label + "'");
  b.set_final(*final_id);
  b.set_model(std::move(model));
  return b.build();
}

SitePtr build_finset_site(int max_size, bool with_empty) {
  if (max_size < 1 || max_size > 4)
    throw Error(ErrorKind::SizeTooLarge, "finset size bound must lie in 1..4, got " + std::to_string(max_size));
  std::vector<ConcreteObject> objs;
  if (with_empty) objs.push_back({"E0", 0, {}, {}});
  for (int k = 1; k <= max_size; ++k) objs.push_back({k == 1 ? "pt" : "S" + std::to_string(k), k, {}, {}});
  return build_concrete_site(objs, "pt");
}

SitePtr build_graded_site(const std::vector<std::vector<int>>& profiles) {
  std::vector<ConcreteObject> objs;
  bool has_pt = false;
  for (const auto& p : profiles) {
    if (p.size() > 4) throw Error(ErrorKind::SizeTooLarge, "graded objects are limited to 4 points");
    for (int d : p)
      if (d < 0) throw Error(ErrorKind::InvalidArgument, "dimensions must be nonnegative");
    std::string label = graded_label(p);
    for (const auto& o : objs)
      if (o.label == label) throw Error(ErrorKind::InvalidArgument, "duplicate profile " + label);
    has_pt = has_pt || label == "pt";
    objs.push_back({label, static_cast<int>(p.size()), p, {}});
  }
  if (!has_pt) throw Error(ErrorKind::InvalidArgument, "graded site needs the profile [0]");
  return build_concrete_site(objs, "pt");
}

SitePtr build_involution_site(int max_points, bool with_empty) {
  if (max_points < 1 || max_points > 4)
    throw Error(ErrorKind::SizeTooLarge, "involution site size bound must lie in 1..4");
  std::vector<ConcreteObject> objs;
  for (int total = with_empty ? 0 : 1; total <= max_points; ++total)
    for (int s = 0; 2 * s <= total; ++s) {
      int t = total - 2 * s;
      std::string label = total == 0 ? "E0" : (t == 1 && s == 0) ? "pt"
                                                                 : "F" + std::to_string(t) + "P" + std::to_string(s);
      std::vector<int> sigma(static_cast<std::size_t>(total));
      for (int i = 0; i < t; ++i) sigma[static_cast<std::size_t>(i)] = i;
      for (int k = 0; k < s; ++k) {
        sigma[static_cast<std::size_t>(t + 2 * k)] = t + 2 * k + 1;
        sigma[static_cast<std::size_t>(t + 2 * k + 1)] = t + 2 * k;
      }
      objs.push_back({label, total, {}, sigma});
    }
  return build_concrete_site(objs, "pt");
}

}  // namespace bvw
