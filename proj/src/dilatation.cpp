#include "dila/dilatation.hpp"

#include <algorithm>
#include <set>

#include "dila/errors.hpp"

namespace dila {

namespace {

// Cofactors of f over `gens` modulo the relations of `a` (relation
// cofactors are dropped), or nullopt when f is not in gens + P.
std::optional<std::vector<Polynomial>> lift_mod(const PresentedAlgebra& a, const std::vector<Polynomial>& gens,
                                                const Polynomial& f) {
  auto all = gens;
  for (const auto& p : a.relations().generators()) all.push_back(p);
  IdealHandle I(a.ring(), all);
  auto c = I.lift(f);
  if (!c) return std::nullopt;
  c->resize(gens.size(), Polynomial(a.ring()));
  return c;
}

std::vector<Polynomial> base_images(const PresentedAlgebra& from, const RingPtr& to) {
  std::vector<Polynomial> img;
  for (const auto& v : from.vars()) img.push_back(Polynomial::variable(to, v));
  return img;
}

// Images for a hom out of `from`: every variable also present in `to` maps to
// itself; the rest are filled in by the caller.
std::vector<Polynomial> same_name_images(const PresentedAlgebra& from, const RingPtr& to) {
  std::vector<Polynomial> img;
  for (const auto& v : from.vars())
    img.push_back(to->index_of(v) ? Polynomial::variable(to, v) : Polynomial(to));
  return img;
}

std::size_t var_index(const PresentedAlgebra& a, const std::string& name) {
  auto i = a.ring()->index_of(name);
  if (!i) throw InputError("internal: missing variable " + name);
  return *i;
}

std::optional<std::string> bad_relation(const AlgebraHom& h) {
  for (const auto& r : h.source.relations().generators()) {
    auto img = h.apply(r);
    if (!img.is_zero()) return r.to_string() + " maps to " + img.to_string();
  }
  return std::nullopt;
}

std::optional<std::string> non_identity(const AlgebraHom& comp) {
  for (std::size_t i = 0; i < comp.images.size(); ++i) {
    auto v = Polynomial::variable(comp.target.ring(), comp.source.vars()[i]);
    if (!comp.target.equal(comp.images[i], v)) return comp.source.vars()[i] + " -> " + comp.images[i].to_string();
  }
  return std::nullopt;
}

Polynomial product_except(const MultiCenter& c, std::size_t skip) {
  auto p = c.base.constant(1);
  for (std::size_t l = 0; l < c.size(); ++l)
    if (l != skip) p = p * c.centers[l].a;
  return p;
}

std::string index_list(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s + "}";
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) out.push_back(i);
  return out;
}

void validate_subset(const MultiCenter& c, const std::vector<std::size_t>& s) {
  std::set<std::size_t> seen;
  for (auto i : s) {
    if (i >= c.size()) throw InputError("center index " + std::to_string(i + 1) + " out of range");
    if (!seen.insert(i).second) throw InputError("center index " + std::to_string(i + 1) + " repeated");
  }
}

}  // namespace

// ------------------------------------------------------------ MultiCenter

IdealHandle MultiCenter::L(std::size_t i) const {
  auto g = centers[i].M.generators();
  g.push_back(centers[i].a);
  return IdealHandle(base.ring(), std::move(g));
}

Polynomial MultiCenter::product() const {
  auto p = base.constant(1);
  for (const auto& c : centers) p = p * c.a;
  return p;
}

MultiCenter MultiCenter::restrict(const std::vector<std::size_t>& indices) const {
  MultiCenter out{base, {}, declared_base};
  for (auto i : indices) out.centers.push_back(centers.at(i));
  return out;
}

std::string MultiCenter::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < centers.size(); ++i)
    s += (i ? ", " : "") + std::string("[") + centers[i].M.to_string() + ", " + centers[i].a.to_string() + "]";
  return s + "}";
}

MultiCenter make_center(const PresentedAlgebra& base,
                        const std::vector<std::pair<std::vector<std::string>, std::string>>& pairs) {
  MultiCenter c{base, {}, std::nullopt};
  for (const auto& [gens, a] : pairs) {
    std::vector<Polynomial> g;
    for (const auto& s : gens) g.push_back(base.parse(s));
    c.centers.push_back({IdealHandle(base.ring(), std::move(g)), base.parse(a)});
  }
  return c;
}

Polynomial DilatationResult::x(std::size_t i, std::size_t j) const {
  return Polynomial::variable(algebra.ring(), x_name(i, j));
}

std::string fresh_stem(const PolyRing& ring, const std::string& base, std::size_t ncenters,
                       const std::vector<std::size_t>& ngens) {
  for (int n = 1;; ++n) {
    std::string stem = n == 1 ? base : base + std::to_string(n);
    bool clash = false;
    for (std::size_t i = 0; i < ncenters && !clash; ++i)
      for (std::size_t j = 0; j < ngens[i] && !clash; ++j)
        clash = ring.index_of(stem + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1)).has_value();
    if (!clash) return stem;
  }
}

// ---------------------------------------------------------- normalization

MultiCenter normalize_center(const MultiCenter& c) {
  const auto& A = c.base;
  std::vector<Center> cs = c.centers;
  std::vector<char> dropped(cs.size(), 0);

  if (c.declared_base && !c.declared_base->is_constant()) {
    const auto& b = *c.declared_base;
    std::vector<int> expo(cs.size(), 0);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      int maxd = cs[i].a.total_degree() / std::max(1, b.total_degree()) + 1;
      auto p = b;
      for (int d = 1; d <= maxd; ++d, p = p * b)
        if (A.equal(cs[i].a, p)) {
          expo[i] = d;
          break;
        }
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!expo[i] || dropped[i]) continue;
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        if (!expo[j] || dropped[j]) continue;
        if (!A.extended_ideal(cs[i].M.generators()).equals(A.extended_ideal(cs[j].M.generators()))) continue;
        if (expo[j] > expo[i]) {
          dropped[i] = 1;
          break;
        }
        dropped[j] = 1;
      }
    }
  }

  std::vector<Center> merged;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (dropped[i]) continue;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Center& m) { return A.equal(m.a, cs[i].a); });
    if (it == merged.end()) {
      merged.push_back(cs[i]);
      continue;
    }
    auto g = it->M.generators();
    for (const auto& p : cs[i].M.generators())
      if (std::find(g.begin(), g.end(), p) == g.end()) g.push_back(p);
    it->M = IdealHandle(A.ring(), std::move(g));
  }
  std::stable_sort(merged.begin(), merged.end(), [](const Center& x, const Center& y) {
    auto ax = x.a.to_string(), ay = y.a.to_string();
    if (ax != ay) return ax < ay;
    return x.M.to_string() < y.M.to_string();
  });
  return MultiCenter{A, std::move(merged), c.declared_base};
}

// ------------------------------------------------------------------ dilate

DilatationResult dilate(const MultiCenter& c, const std::string& stem_base) {
  const auto& A = c.base;
  std::vector<std::size_t> ngens;
  for (const auto& ctr : c.centers) {
    require_same_ring(*A.ring(), *ctr.M.ring(), "center ideal");
    require_same_ring(*A.ring(), *ctr.a.ring(), "center element");
    ngens.push_back(ctr.M.generators().size());
  }
  if (c.centers.empty()) {
    return DilatationResult{c, A, identity_hom(A), {}, {}, A.relations(), false, A.is_zero_ring()};
  }
  auto stem = fresh_stem(*A.ring(), stem_base, c.size(), ngens);
  std::vector<std::string> fresh;
  std::vector<Fraction> fractions;
  std::vector<std::vector<std::size_t>> index(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < ngens[i]; ++j) {
      auto name = stem + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      index[i].push_back(fractions.size());
      fresh.push_back(name);
      fractions.push_back({name, i, j, c.centers[i].M.generators()[j], c.centers[i].a});
    }
  auto ring = A.ring()->extended(fresh);

  std::vector<Polynomial> gens;
  for (const auto& p : A.relations().generators()) gens.push_back(p.map_to(ring));
  for (const auto& fr : fractions)
    gens.push_back(fr.numerator.map_to(ring) - fr.denominator.map_to(ring) * Polynomial::variable(ring, fr.var));
  IdealHandle presat(ring, gens);

  auto f = c.product();
  bool zero = A.relations().radical_contains(f);
  bool changed;
  IdealHandle rel = presat;
  if (zero) {
    rel = IdealHandle::unit(ring);
    changed = !presat.is_unit();
  } else {
    auto sat = saturate(presat, f.map_to(ring));
    changed = !sat.equals(presat);
    if (changed) rel = IdealHandle(ring, sat.groebner());
  }
  PresentedAlgebra Ap(ring, rel);
  auto iota = make_hom(A, Ap, base_images(A, ring));
  iota.well_defined = true;
  return DilatationResult{c, Ap, iota, std::move(fractions), std::move(index), presat, changed, zero};
}

// ------------------------------------------------------------ certificates

void certify_iso(Report& r, AlgebraHom forward, AlgebraHom backward, const std::string& prefix) {
  bool fok = check_hom(forward);
  r.add(prefix + "forward well-defined", fok, fok ? "" : bad_relation(forward).value_or(""));
  bool bok = check_hom(backward);
  r.add(prefix + "backward well-defined", bok, bok ? "" : bad_relation(backward).value_or(""));
  if (!fok || !bok) {
    r.add(prefix + "backward after forward is identity", false, "skipped: a map is not well defined");
    r.add(prefix + "forward after backward is identity", false, "skipped: a map is not well defined");
    return;
  }
  auto w1 = non_identity(compose(backward, forward));
  r.add(prefix + "backward after forward is identity", !w1, w1.value_or(""));
  auto w2 = non_identity(compose(forward, backward));
  r.add(prefix + "forward after backward is identity", !w2, w2.value_or(""));
}

Report check_exceptional(const DilatationResult& R, const std::vector<Polynomial>& extra_nzd) {
  Report r{"exceptional"};
  const auto& A = R.center.base;
  const auto& Ap = R.algebra;
  r.fact("zero_ring", R.zero_ring ? "true" : "false");
  bool crit = A.relations().radical_contains(R.center.product());
  r.add("zero ring iff f nilpotent", crit == R.zero_ring && Ap.is_zero_ring() == R.zero_ring);
  for (std::size_t i = 0; i < R.center.size(); ++i) {
    auto tag = " [" + std::to_string(i + 1) + "]";
    auto ai = R.iota.apply(R.center.centers[i].a);
    std::vector<Polynomial> Li;
    auto L = R.center.L(i);
    for (const auto& g : L.generators()) Li.push_back(R.iota.apply(g));
    auto aI = Ap.extended_ideal({ai});
    std::string witness;
    for (const auto& g : Li)
      if (!aI.contains(g)) {
        witness = g.to_string() + " not in a_i A'";
        break;
      }
    r.add("L_i A' = a_i A'" + tag, witness.empty(), witness);
    bool reg = is_nzd(Ap, ai);
    r.add("a_i regular in A'" + tag, reg, reg ? "" : ai.to_string() + " is a zero-divisor");
  }
  for (const auto& c : extra_nzd) {
    if (!is_nzd(A, c)) {
      r.add("regular element stays regular [" + c.to_string() + "]", true, "vacuous: not regular in A");
      continue;
    }
    bool ok = is_nzd(Ap, R.iota.apply(c));
    r.add("regular element stays regular [" + c.to_string() + "]", ok);
  }
  return r;
}

// ------------------------------------------------------------------ forget

ForgetResult forget_map(const MultiCenter& c, const std::vector<std::size_t>& keep) {
  validate_subset(c, keep);
  const auto& A = c.base;
  auto RI = dilate(c);
  auto RK = dilate(c.restrict(keep));
  auto img = same_name_images(RK.algebra, RI.algebra.ring());
  for (std::size_t p = 0; p < keep.size(); ++p)
    for (std::size_t j = 0; j < c.centers[keep[p]].M.generators().size(); ++j)
      img[var_index(RK.algebra, RK.x_name(p, j))] = RI.x(keep[p], j);
  auto h = make_hom(RK.algebra, RI.algebra, img);

  Report r{"forget"};
  r.fact("kept", index_list(keep));
  bool ok = check_hom(h);
  r.add("map well-defined", ok, ok ? "" : bad_relation(h).value_or(""));

  auto drop = complement(c.size(), keep);
  bool surj_hyp = true, inj_hyp = true;
  for (auto i : drop) {
    surj_hyp = surj_hyp && A.extended_ideal({c.centers[i].a}).contains(c.centers[i].M);
    inj_hyp = inj_hyp && is_nzd(A, c.centers[i].a);
  }
  bool surj = ok && surjection_preimages(h).has_value();
  bool inj = ok && is_injective(h);
  r.fact("surjectivity_hypothesis", surj_hyp ? "true" : "false");
  r.fact("injectivity_hypothesis", inj_hyp ? "true" : "false");
  r.fact("surjective", surj ? "true" : "false");
  r.fact("injective", inj ? "true" : "false");
  if (surj_hyp) r.add("surjective", surj);
  if (inj_hyp) r.add("injective", inj);
  return {h, r};
}

// ---------------------------------------------------------------- monopoly

MonopolyResult monopoly_iso(const MultiCenter& c) {
  if (c.size() == 0) throw InputError("monopoly: at least one center is required");
  const auto& A = c.base;
  std::vector<Polynomial> n;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto others = product_except(c, i);
    for (std::size_t j = 0; j < c.centers[i].M.generators().size(); ++j) {
      n.push_back(c.centers[i].M.generators()[j] * others);
      origin.emplace_back(i, j);
    }
  }
  MultiCenter mono{A, {Center{IdealHandle(A.ring(), n), c.product()}}, std::nullopt};
  auto multi = dilate(c);
  auto single = dilate(mono);

  auto fwd = same_name_images(single.algebra, multi.algebra.ring());
  auto bwd = same_name_images(multi.algebra, single.algebra.ring());
  for (std::size_t k = 0; k < origin.size(); ++k) {
    auto [i, j] = origin[k];
    fwd[var_index(single.algebra, single.x_name(0, k))] = multi.x(i, j);
    bwd[var_index(multi.algebra, multi.x_name(i, j))] = single.x(0, k);
  }
  MonopolyResult out{mono, multi, single, make_hom(single.algebra, multi.algebra, fwd),
                     make_hom(multi.algebra, single.algebra, bwd), Report{"monopoly"}};
  out.report.fact("mono_center", mono.to_string());
  certify_iso(out.report, *out.forward, *out.backward);
  return out;
}

// --------------------------------------------------------------- two-stage

Report two_stage_iso(const MultiCenter& c, const std::vector<std::size_t>& first) {
  validate_subset(c, first);
  Report r{"two-stage"};
  r.fact("first_stage", index_list(first));
  auto rest = complement(c.size(), first);
  auto one = dilate(c);
  auto s1 = dilate(c.restrict(first));
  const auto& A1 = s1.algebra;
  MultiCenter pushed{A1, {}, std::nullopt};
  for (auto j : rest) {
    std::vector<Polynomial> g;
    for (const auto& p : c.centers[j].M.generators()) g.push_back(p.map_to(A1.ring()));
    pushed.centers.push_back({IdealHandle(A1.ring(), g), c.centers[j].a.map_to(A1.ring())});
  }
  auto s2 = dilate(pushed);
  const auto& A2 = s2.algebra;

  auto fwd = same_name_images(one.algebra, A2.ring());
  auto bwd = same_name_images(A2, one.algebra.ring());
  for (std::size_t p = 0; p < first.size(); ++p)
    for (std::size_t j = 0; j < c.centers[first[p]].M.generators().size(); ++j) {
      fwd[var_index(one.algebra, one.x_name(first[p], j))] = Polynomial::variable(A2.ring(), s1.x_name(p, j));
      bwd[var_index(A2, s1.x_name(p, j))] = one.x(first[p], j);
    }
  for (std::size_t q = 0; q < rest.size(); ++q)
    for (std::size_t j = 0; j < c.centers[rest[q]].M.generators().size(); ++j) {
      fwd[var_index(one.algebra, one.x_name(rest[q], j))] = s2.x(q, j);
      bwd[var_index(A2, s2.x_name(q, j))] = one.x(rest[q], j);
    }
  certify_iso(r, make_hom(one.algebra, A2, fwd), make_hom(A2, one.algebra, bwd));
  return r;
}

// -------------------------------------------------------------- localize

Report localize_compare(const MultiCenter& c) {
  Report r{"localize"};
  const auto& A = c.base;
  auto R = dilate(c);
  const auto& Ap = R.algebra;
  auto z = fresh_name(*Ap.ring(), "z");
  auto f = c.product();

  auto AL_ring = A.ring()->extended({z});
  auto zA = Polynomial::variable(AL_ring, z);
  auto AL_rel = A.relations().map_to(AL_ring).generators();
  AL_rel.push_back(zA * f.map_to(AL_ring) - Polynomial::constant(AL_ring, 1));
  PresentedAlgebra AL(AL_ring, IdealHandle(AL_ring, AL_rel));

  // x_ij -> g_ij * z * prod_{l != i} a_l
  auto fraction_images = [&](std::vector<Polynomial>& img, const PresentedAlgebra& src) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto others = product_except(c, i).map_to(AL_ring);
      for (std::size_t j = 0; j < c.centers[i].M.generators().size(); ++j)
        img[var_index(src, R.x_name(i, j))] = c.centers[i].M.generators()[j].map_to(AL_ring) * zA * others;
    }
  };

  auto ApL_ring = Ap.ring()->extended({z});
  auto ApL_rel = Ap.relations().map_to(ApL_ring).generators();
  ApL_rel.push_back(Polynomial::variable(ApL_ring, z) * f.map_to(ApL_ring) - Polynomial::constant(ApL_ring, 1));
  PresentedAlgebra ApL(ApL_ring, IdealHandle(ApL_ring, ApL_rel));
  auto fwd = same_name_images(ApL, AL_ring);
  fraction_images(fwd, ApL);
  auto bwd = same_name_images(AL, ApL_ring);
  certify_iso(r, make_hom(ApL, AL, fwd), make_hom(AL, ApL, bwd), "localized: ");

  bool all_unit = true;
  for (const auto& ctr : c.centers) all_unit = all_unit && A.extended_ideal(ctr.M.generators()).is_unit();
  r.fact("unit_ideals", all_unit ? "true" : "false");
  if (all_unit) {
    auto f2 = same_name_images(Ap, AL_ring);
    fraction_images(f2, Ap);
    // 1/f = prod_i (sum_j c_ij x_ij) where 1 = sum_j c_ij g_ij modulo P.
    auto inv = Polynomial::constant(Ap.ring(), 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto co = lift_mod(A, c.centers[i].M.generators(), A.constant(1));
      Polynomial s(Ap.ring());
      for (std::size_t j = 0; j < co->size(); ++j) s = s + (*co)[j].map_to(Ap.ring()) * R.x(i, j);
      inv = inv * s;
    }
    auto b2 = same_name_images(AL, Ap.ring());
    b2[var_index(AL, z)] = inv;
    certify_iso(r, make_hom(Ap, AL, f2), make_hom(AL, Ap, b2), "localization: ");
  }
  return r;
}

// ---------------------------------------------------------- open immersion

Report open_immersion_iso(const MultiCenter& c, const std::vector<std::size_t>& keep,
                          const std::map<std::size_t, std::size_t>& assign) {
  validate_subset(c, keep);
  Report r{"open-immersion"};
  const auto& A = c.base;
  auto rest = complement(c.size(), keep);
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t p = 0; p < keep.size(); ++p) pos[keep[p]] = p;
  for (auto i : rest) {
    auto it = assign.find(i);
    if (it == assign.end() || !pos.count(it->second))
      throw InputError("open immersion: center " + std::to_string(i + 1) + " needs an assigned kept center");
  }

  bool hyp = true;
  for (auto i : rest) {
    auto k = assign.at(i);
    auto tag = " [" + std::to_string(i + 1) + "->" + std::to_string(k + 1) + "]";
    auto Li = A.extended_ideal(c.L(i).generators());
    auto Lk = A.extended_ideal(c.L(k).generators());
    bool h1 = Li.contains(c.centers[k].a);
    bool h2 = Lk.contains(c.L(i));
    r.add("hypothesis a_k in L_i" + tag, h1);
    r.add("hypothesis L_i in L_k" + tag, h2);
    hyp = hyp && h1 && h2;
  }
  if (!hyp) {
    r.refused = true;
    return r;
  }

  auto RI = dilate(c);
  auto RK = dilate(c.restrict(keep));
  const auto& AK = RK.algebra;
  // Element of A_K equal to p / a_k for p in L_k.
  auto over_ak = [&](std::size_t k, const Polynomial& p) {
    auto gens = c.L(k).generators();
    auto co = lift_mod(A, gens, p);
    if (!co) throw InputError("open immersion: internal lift failure");
    std::size_t n = c.centers[k].M.generators().size();
    Polynomial s = (*co)[n].map_to(AK.ring());
    for (std::size_t j = 0; j < n; ++j) s = s + (*co)[j].map_to(AK.ring()) * RK.x(pos[k], j);
    return s;
  };
  // Element of A_I equal to p / a_i for p in L_i.
  auto over_ai = [&](std::size_t i, const Polynomial& p) {
    auto co = lift_mod(A, c.L(i).generators(), p);
    if (!co) throw InputError("open immersion: internal lift failure");
    std::size_t n = c.centers[i].M.generators().size();
    Polynomial s = (*co)[n].map_to(RI.algebra.ring());
    for (std::size_t j = 0; j < n; ++j) s = s + (*co)[j].map_to(RI.algebra.ring()) * RI.x(i, j);
    return s;
  };

  std::vector<std::string> znames;
  RingPtr loc_ring = AK.ring();
  for (auto i : rest) {
    auto z = fresh_name(*loc_ring, "z_" + std::to_string(i + 1));
    znames.push_back(z);
    loc_ring = loc_ring->extended({z});
  }
  auto loc_rel = AK.relations().map_to(loc_ring).generators();
  for (std::size_t q = 0; q < rest.size(); ++q) {
    auto e = over_ak(assign.at(rest[q]), c.centers[rest[q]].a).map_to(loc_ring);
    loc_rel.push_back(Polynomial::variable(loc_ring, znames[q]) * e - Polynomial::constant(loc_ring, 1));
    r.fact("fraction_" + std::to_string(rest[q] + 1), e.to_string());
  }
  PresentedAlgebra Loc(loc_ring, IdealHandle(loc_ring, loc_rel));

  auto fwd = same_name_images(RI.algebra, loc_ring);
  for (auto k : keep)
    for (std::size_t j = 0; j < c.centers[k].M.generators().size(); ++j)
      fwd[var_index(RI.algebra, RI.x_name(k, j))] = RK.x(pos[k], j).map_to(loc_ring);
  for (std::size_t q = 0; q < rest.size(); ++q) {
    auto i = rest[q];
    auto k = assign.at(i);
    for (std::size_t j = 0; j < c.centers[i].M.generators().size(); ++j)
      fwd[var_index(RI.algebra, RI.x_name(i, j))] =
          over_ak(k, c.centers[i].M.generators()[j]).map_to(loc_ring) * Polynomial::variable(loc_ring, znames[q]);
  }
  auto bwd = same_name_images(Loc, RI.algebra.ring());
  for (auto k : keep)
    for (std::size_t j = 0; j < c.centers[k].M.generators().size(); ++j)
      bwd[var_index(Loc, RK.x_name(pos[k], j))] = RI.x(k, j);
  for (std::size_t q = 0; q < rest.size(); ++q)
    bwd[var_index(Loc, znames[q])] = over_ai(rest[q], c.centers[assign.at(rest[q])].a);
  certify_iso(r, make_hom(RI.algebra, Loc, fwd), make_hom(Loc, RI.algebra, bwd));
  return r;
}

// ---------------------------------------------------------- center kernel

KernelResult center_kernel(const DilatationResult& R, const IdealHandle& M0, const Polynomial& a) {
  Report r{"center-kernel"};
  const auto& A = R.center.base;
  require_same_ring(*A.ring(), *M0.ring(), "center kernel");
  bool shape = true;
  std::string exps;
  for (std::size_t i = 0; i < R.center.size(); ++i) {
    const auto& ai = R.center.centers[i].a;
    int found = -1;
    auto p = A.constant(1);
    for (int s = 0; s <= 64; ++s, p = p * a) {
      if (A.equal(ai, p)) {
        found = s;
        break;
      }
      if (p.total_degree() > ai.total_degree() + 64) break;
    }
    if (found < 0) shape = false;
    exps += (i ? "," : "") + std::to_string(found);
  }
  r.add("single-divisor shape", shape, shape ? "" : "some a_i is not a power of " + a.to_string());
  r.fact("exponents", "(" + exps + ")");
  PresentedAlgebra quot(A.ring(), A.extended_ideal(M0.generators()));
  bool reg = is_nzd(quot, a);
  r.add("a regular modulo M0", reg);
  bool nested = true;
  for (const auto& ctr : R.center.centers) nested = nested && quot.relations().contains(ctr.M);
  r.add("M_i inside M0", nested);
  if (!shape || !reg || !nested) {
    r.refused = true;
    return {std::nullopt, r};
  }

  const auto& Ap = R.algebra;
  std::vector<Polynomial> alpha_gens;
  for (const auto& fr : R.fractions) alpha_gens.push_back(Polynomial::variable(Ap.ring(), fr.var));
  for (const auto& g : M0.generators()) alpha_gens.push_back(g.map_to(Ap.ring()));
  IdealHandle kernel(Ap.ring(), alpha_gens);

  auto img = same_name_images(Ap, A.ring());
  auto phi = make_hom(Ap, quot, img);
  bool ok = check_hom(phi);
  r.add("map to A/M0 well-defined", ok, ok ? "" : bad_relation(phi).value_or(""));
  if (!ok) return {std::nullopt, r};
  auto beta = hom_kernel(phi);
  auto alpha = Ap.extended_ideal(alpha_gens);
  r.add("generated ideal equals kernel", alpha.equals(beta));
  return {kernel, r};
}

// ----------------------------------------------------------------- iterate

Report iterate_iso(const PresentedAlgebra& base, const Polynomial& a, const std::vector<IdealHandle>& ideals,
                   const std::vector<unsigned>& s, unsigned t) {
  if (ideals.empty() || ideals.size() != s.size()) throw InputError("iterate: need one exponent per ideal");
  Report r{"iterate"};
  r.fact("t", std::to_string(t));
  bool tok = t <= s[0];
  r.add("t <= s_0", tok);
  if (!tok) {
    r.refused = true;
    return r;
  }
  MultiCenter C{base, {}, std::nullopt}, D{base, {}, std::nullopt};
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    C.centers.push_back({ideals[i], a.pow(s[i])});
    D.centers.push_back({ideals[i], a.pow(s[i] + t)});
  }
  auto R = dilate(C);
  auto K = center_kernel(R, ideals[0], a);
  r.absorb(K.report, "kernel: ");
  if (!K.kernel) {
    r.refused = true;
    return r;
  }
  const auto& Ap = R.algebra;
  MultiCenter second_c{Ap, {Center{*K.kernel, a.pow(t).map_to(Ap.ring())}}, std::nullopt};
  auto second = dilate(second_c);
  auto direct = dilate(D);
  const auto& S = second.algebra;
  const auto& Dr = direct.algebra;

  auto fwd = same_name_images(Dr, S.ring());
  auto bwd = same_name_images(S, Dr.ring());
  auto at = a.pow(t).map_to(Dr.ring());
  std::size_t q = 0;
  for (const auto& fr : R.fractions) {
    auto xd = direct.x(fr.center, fr.gen);
    fwd[var_index(Dr, direct.x_name(fr.center, fr.gen))] = second.x(0, q);
    bwd[var_index(S, fr.var)] = at * xd;
    bwd[var_index(S, second.x_name(0, q))] = xd;
    ++q;
  }
  auto as0 = a.pow(s[0]).map_to(Dr.ring());
  for (std::size_t j = 0; j < ideals[0].generators().size(); ++j, ++q)
    bwd[var_index(S, second.x_name(0, q))] = as0 * direct.x(0, j);
  certify_iso(r, make_hom(Dr, S, fwd), make_hom(S, Dr, bwd));
  return r;
}

// ------------------------------------------------------------ base change

Report base_change_compare(const MultiCenter& c, const AlgebraHom& h0) {
  Report r{"base-change"};
  auto h = h0;
  bool ok = check_hom(h);
  r.add("base map well-defined", ok, ok ? "" : bad_relation(h).value_or(""));
  if (!ok) {
    r.refused = true;
    return r;
  }
  const auto& A = c.base;
  const auto& B = h.target;
  require_same_ring(*A.ring(), *h.source.ring(), "base change");
  auto push = [&](const Polynomial& p) { return p.substitute(h.images, B.ring()); };
  MultiCenter pushed{B, {}, std::nullopt};
  for (const auto& ctr : c.centers) {
    std::vector<Polynomial> g;
    for (const auto& p : ctr.M.generators()) g.push_back(push(p));
    pushed.centers.push_back({IdealHandle(B.ring(), g), push(ctr.a)});
  }
  auto R = dilate(c);
  auto D = dilate(pushed);
  const auto& Tring = D.algebra.ring();

  // B tensor A': B's relations plus A' relations with A's variables pushed.
  std::vector<Polynomial> img;
  for (const auto& v : R.algebra.vars()) {
    if (auto i = A.ring()->index_of(v)) {
      img.push_back(h.images[*i].map_to(Tring));
    } else {
      auto fr = std::find_if(R.fractions.begin(), R.fractions.end(), [&](const Fraction& x) { return x.var == v; });
      img.push_back(D.x(fr->center, fr->gen));
    }
  }
  auto tgens = B.relations().map_to(Tring).generators();
  for (const auto& p : R.algebra.relations().generators()) tgens.push_back(p.substitute(img, Tring));
  IdealHandle T(Tring, tgens);
  auto fB = push(c.product()).map_to(Tring);
  auto Tsat = fB.is_zero() ? IdealHandle::unit(Tring) : saturate(T, fB);
  bool torsion_free = T.equals(Tsat);
  r.fact("T_b_zero", torsion_free ? "true" : "false");

  PresentedAlgebra tensor(Tring, Tsat);
  certify_iso(r, make_hom(tensor, D.algebra, base_images(tensor, Tring)),
              make_hom(D.algebra, tensor, base_images(D.algebra, Tring)));

  bool extension = true;
  for (std::size_t i = 0; i < A.vars().size() && extension; ++i)
    extension = B.ring()->index_of(A.vars()[i]) && h.images[i] == Polynomial::variable(B.ring(), A.vars()[i]);
  if (extension) extension = B.relations().equals(A.relations().map_to(B.ring()));
  r.fact("variable_extension", extension ? "true" : "false");
  if (extension) r.add("T_b = 0 for a variable extension", torsion_free);
  return r;
}

// ------------------------------------------------------------------- conic

Report conic_iso(const MultiCenter& c) {
  Report r{"conic"};
  const auto& A = c.base;
  bool reg = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool ok = is_nzd(A, c.centers[i].a);
    r.add("a_i regular in A [" + std::to_string(i + 1) + "]", ok);
    reg = reg && ok;
  }
  if (!reg) {
    r.refused = true;
    return r;
  }
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < c.size(); ++i) sizes.push_back(c.centers[i].M.generators().size() + 1);
  auto ustem = fresh_stem(*A.ring(), "u", c.size(), sizes);
  std::vector<std::vector<std::string>> u(c.size());
  std::vector<std::string> uall, tnames;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < sizes[i]; ++j) {
      u[i].push_back(ustem + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      uall.push_back(u[i].back());
    }
  auto Sring = A.ring()->extended(uall);
  RingPtr Tring = A.ring();
  for (std::size_t i = 0; i < c.size(); ++i) {
    tnames.push_back(fresh_name(*Sring->extended(tnames), "t_" + std::to_string(i + 1)));
    Tring = Tring->extended({tnames.back()});
  }
  PresentedAlgebra At(Tring, A.relations().map_to(Tring));
  PresentedAlgebra S(Sring);
  auto phi_img = same_name_images(S, Tring);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto gens = c.L(i).generators();
    auto ti = Polynomial::variable(Tring, tnames[i]);
    for (std::size_t j = 0; j < sizes[i]; ++j) phi_img[var_index(S, u[i][j])] = gens[j].map_to(Tring) * ti;
  }
  auto phi = make_hom(S, At, phi_img);
  auto K = hom_kernel(phi);
  r.fact("conic_relations", std::to_string(K.groebner().size()));
  auto zgens = K.generators();
  for (std::size_t i = 0; i < c.size(); ++i)
    zgens.push_back(Polynomial::variable(Sring, u[i].back()) - Polynomial::constant(Sring, 1));
  PresentedAlgebra Z(Sring, IdealHandle(Sring, zgens));

  auto R = dilate(c);
  const auto& Ap = R.algebra;
  auto fwd = same_name_images(Z, Ap.ring());
  auto bwd = same_name_images(Ap, Sring);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j + 1 < sizes[i]; ++j) {
      fwd[var_index(Z, u[i][j])] = R.x(i, j);
      bwd[var_index(Ap, R.x_name(i, j))] = Polynomial::variable(Sring, u[i][j]);
    }
    fwd[var_index(Z, u[i].back())] = Polynomial::constant(Ap.ring(), 1);
  }
  certify_iso(r, make_hom(Z, Ap, fwd), make_hom(Ap, Z, bwd));
  return r;
}

// --------------------------------------------------------------- universal

FactorResult universal_factor(const MultiCenter& c, const AlgebraHom& chi0,
                              const std::optional<AlgebraHom>& candidate) {
  Report r{"universal"};
  auto chi = chi0;
  require_same_ring(*c.base.ring(), *chi.source.ring(), "universal factor");
  bool ok = check_hom(chi);
  r.add("map well-defined", ok, ok ? "" : bad_relation(chi).value_or(""));
  if (!ok) {
    r.refused = true;
    return {std::nullopt, r};
  }
  const auto& B = chi.target;
  std::vector<std::vector<Polynomial>> q(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto tag = " [" + std::to_string(i + 1) + "]";
    auto bi = chi.apply(c.centers[i].a);
    bool reg = is_nzd(B, bi);
    r.add("image of a_i regular in B" + tag, reg, reg ? "" : bi.to_string() + " is a zero-divisor");
    bool contained = true;
    std::string witness;
    for (const auto& g : c.centers[i].M.generators()) {
      auto co = lift_mod(B, {bi}, chi.apply(g));
      if (!co) {
        contained = false;
        witness = "image of " + g.to_string() + " not in the ideal generated by " + bi.to_string();
        break;
      }
      q[i].push_back(B.reduce((*co)[0]));
    }
    r.add("image of M_i inside image of a_i times B" + tag, contained, witness);
    if (!reg || !contained) r.refused = true;
  }
  if (r.refused) return {std::nullopt, r};

  auto R = dilate(c);
  auto img = same_name_images(R.algebra, B.ring());
  for (std::size_t i = 0; i < c.base.vars().size(); ++i) img[i] = chi.images[i];
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < q[i].size(); ++j) img[var_index(R.algebra, R.x_name(i, j))] = q[i][j];
  auto factor = make_hom(R.algebra, B, img);
  bool wd = check_hom(factor);
  r.add("factor well-defined", wd, wd ? "" : bad_relation(factor).value_or(""));
  if (wd) r.add("factor restricts to the given map", maps_equal(compose(factor, R.iota), chi));
  if (candidate) {
    auto cand = *candidate;
    bool cwd = check_hom(cand) && maps_equal(compose(cand, R.iota), chi);
    r.fact("candidate_factors", cwd ? "true" : "false");
    if (cwd) r.add("candidate equals factor", maps_equal(cand, factor));
  }
  return {factor, r};
}

Report normalize_compare(const MultiCenter& c) {
  Report r{"normalize"};
  auto N = normalize_center(c);
  r.fact("normalized", N.to_string());
  auto R1 = dilate(c);
  auto R2 = dilate(N);
  auto to2 = universal_factor(c, R2.iota);
  auto to1 = universal_factor(N, R1.iota);
  r.absorb(to2.report, "to normalized: ");
  r.absorb(to1.report, "from normalized: ");
  if (!to2.factor || !to1.factor) {
    r.add("isomorphism", false, "no factorization");
    return r;
  }
  certify_iso(r, *to2.factor, *to1.factor);
  return r;
}

}  // namespace dila
