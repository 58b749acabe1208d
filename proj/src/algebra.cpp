#include "dila/algebra.hpp"

#include <algorithm>

#include "dila/errors.hpp"

namespace dila {

namespace {

// Graph ring: renamed target variables first (eliminated), then the source
// variables. Returns the ring and the graph ideal.
struct Graph {
  RingPtr ring;
  std::vector<std::string> target_names;
  IdealHandle ideal;
};

Graph graph_of(const AlgebraHom& h) {
  const auto& src = *h.source.ring();
  std::vector<std::string> tnames;
  auto taken = [&](const std::string& n) {
    return src.index_of(n) || std::find(tnames.begin(), tnames.end(), n) != tnames.end();
  };
  for (const auto& v : h.target.vars()) {
    std::string n = "@" + v;
    for (int k = 2; taken(n); ++k) n = "@" + v + "_" + std::to_string(k);
    tnames.push_back(n);
  }
  std::vector<std::string> all = tnames;
  all.insert(all.end(), src.vars().begin(), src.vars().end());
  std::vector<std::size_t> blocks{tnames.size()};
  if (src.nvars()) blocks.push_back(src.nvars());
  auto ring = PolyRing::make(src.field(), all, MonomialOrder::block(blocks));

  std::vector<Polynomial> tvars;
  for (const auto& t : tnames) tvars.push_back(Polynomial::variable(ring, t));
  auto to_graph = [&](const Polynomial& p) { return p.substitute(tvars, ring); };
  std::vector<Polynomial> gens;
  for (const auto& r : h.target.relations().generators()) gens.push_back(to_graph(r));
  for (std::size_t i = 0; i < src.nvars(); ++i)
    gens.push_back(Polynomial::variable(ring, src.vars()[i]) - to_graph(h.images[i]));
  return {ring, tnames, IdealHandle(ring, std::move(gens))};
}

}  // namespace

PresentedAlgebra::PresentedAlgebra(RingPtr ring, IdealHandle relations)
    : ring_(std::move(ring)), rel_(std::move(relations)) {
  require_same_ring(*ring_, *rel_.ring(), "presented algebra");
}

IdealHandle PresentedAlgebra::extended_ideal(const std::vector<Polynomial>& extra) const {
  auto g = rel_.generators();
  g.insert(g.end(), extra.begin(), extra.end());
  return IdealHandle(ring_, std::move(g));
}

bool PresentedAlgebra::same_ideal(const std::vector<Polynomial>& j1, const std::vector<Polynomial>& j2) const {
  return extended_ideal(j1).equals(extended_ideal(j2));
}

std::string PresentedAlgebra::to_string() const {
  auto s = ring_->to_string();
  if (!rel_.generators().empty()) s += "/" + rel_.to_string();
  return s;
}

Polynomial AlgebraHom::apply(const Polynomial& f) const {
  require_same_ring(*source.ring(), *f.ring(), "hom application");
  return target.reduce(f.substitute(images, target.ring()));
}

std::string AlgebraHom::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < images.size(); ++i)
    s += (i ? ", " : "") + source.vars()[i] + " -> " + images[i].to_string();
  return s;
}

AlgebraHom make_hom(const PresentedAlgebra& source, const PresentedAlgebra& target, std::vector<Polynomial> images) {
  if (images.size() != source.vars().size())
    throw InputError("hom: " + std::to_string(images.size()) + " images for " +
                     std::to_string(source.vars().size()) + " source variables");
  for (const auto& p : images) require_same_ring(*target.ring(), *p.ring(), "hom image");
  return AlgebraHom{source, target, std::move(images)};
}

AlgebraHom parse_hom(const PresentedAlgebra& source, const PresentedAlgebra& target,
                     const std::vector<std::pair<std::string, std::string>>& images) {
  std::vector<Polynomial> img;
  for (const auto& v : source.vars()) {
    const std::string* text = nullptr;
    for (const auto& [name, t] : images)
      if (name == v) text = &t;
    if (text) {
      img.push_back(target.parse(*text));
    } else if (target.ring()->index_of(v)) {
      img.push_back(target.var(v));
    } else {
      throw InputError("hom: no image given for '" + v + "' and the target has no variable of that name");
    }
  }
  for (const auto& [name, t] : images)
    if (!source.ring()->index_of(name)) throw InputError("hom: '" + name + "' is not a source variable");
  return make_hom(source, target, std::move(img));
}

AlgebraHom identity_hom(const PresentedAlgebra& a) {
  std::vector<Polynomial> img;
  for (std::size_t i = 0; i < a.vars().size(); ++i) img.push_back(Polynomial::variable(a.ring(), i));
  return AlgebraHom{a, a, std::move(img), true};
}

bool is_well_defined(const AlgebraHom& h) {
  for (const auto& r : h.source.relations().generators())
    if (!h.apply(r).is_zero()) return false;
  return true;
}

bool check_hom(AlgebraHom& h) {
  if (h.images.size() != h.source.vars().size()) throw InputError("hom: image count does not match source");
  h.well_defined = is_well_defined(h);
  return h.well_defined;
}

IdealHandle hom_kernel(const AlgebraHom& h) {
  auto g = graph_of(h);
  return eliminate(g.ideal, g.target_names).map_to(h.source.ring());
}

bool is_injective(const AlgebraHom& h) { return hom_kernel(h).equals(h.source.relations()); }

std::optional<std::vector<Polynomial>> surjection_preimages(const AlgebraHom& h) {
  auto g = graph_of(h);
  const auto& gb = g.ideal.groebner();
  std::vector<Polynomial> out;
  for (const auto& t : g.target_names) {
    auto nf = normal_form(Polynomial::variable(g.ring, t), gb);
    for (std::size_t i = 0; i < g.target_names.size(); ++i)
      if (nf.uses_variable(i)) return std::nullopt;
    out.push_back(nf.map_to(h.source.ring()));
  }
  return out;
}

bool is_nzd(const PresentedAlgebra& a, const Polynomial& f) {
  if (a.is_zero_ring()) return true;
  auto r = a.reduce(f);
  if (r.is_zero()) return false;
  return colon(a.relations(), r).equals(a.relations());
}

bool maps_equal(const AlgebraHom& h1, const AlgebraHom& h2) {
  require_same_ring(*h1.source.ring(), *h2.source.ring(), "maps_equal source");
  require_same_ring(*h1.target.ring(), *h2.target.ring(), "maps_equal target");
  if (!h1.source.relations().equals(h2.source.relations()) || !h1.target.relations().equals(h2.target.relations()))
    throw InputError("maps_equal: endpoints differ");
  for (std::size_t i = 0; i < h1.images.size(); ++i)
    if (!h1.target.equal(h1.images[i], h2.images[i])) return false;
  return true;
}

AlgebraHom compose(const AlgebraHom& second, const AlgebraHom& first) {
  require_same_ring(*first.target.ring(), *second.source.ring(), "compose");
  std::vector<Polynomial> img;
  for (const auto& p : first.images) img.push_back(second.apply(p));
  return AlgebraHom{first.source, second.target, std::move(img), first.well_defined && second.well_defined};
}

}  // namespace dila
