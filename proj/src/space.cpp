#include "tsnorm/space.hpp"

#include "tsnorm/estimates.hpp"

namespace tsnorm {

SpacePtr Space::make_ground(GroundSpace g) {
  auto s = std::make_shared<Space>();
  s->kind = SpaceKind::ground;
  s->ground = std::move(g);
  s->validate();
  return s;
}

SpacePtr Space::make_tsirelson(TsirelsonSpace t) {
  auto s = std::make_shared<Space>();
  s->kind = SpaceKind::tsirelson;
  s->ts = std::move(t);
  s->validate();
  return s;
}

SpacePtr Space::make_zv(FddSpec spec) {
  auto s = std::make_shared<Space>();
  s->kind = SpaceKind::zv;
  s->fdd = std::move(spec);
  s->validate();
  return s;
}

SpacePtr Space::make_dual(SpacePtr inner, SearchConfig cfg) {
  auto s = std::make_shared<Space>();
  s->kind = SpaceKind::dual;
  s->dual_inner = std::move(inner);
  s->dual_cfg = cfg;
  s->validate();
  return s;
}

void Space::validate() const {
  switch (kind) {
    case SpaceKind::ground: ground.validate(); break;
    case SpaceKind::tsirelson: ts.validate(); break;
    case SpaceKind::zv: fdd.validate(); break;
    case SpaceKind::dual:
      if (!dual_inner) throw std::invalid_argument("dual space needs an inner space");
      dual_inner->validate();
      dual_cfg.validate();
      break;
  }
}

std::string Space::to_string() const {
  switch (kind) {
    case SpaceKind::ground: return ground.to_string();
    case SpaceKind::tsirelson: return ts.to_string();
    case SpaceKind::zv: return fdd.to_string();
    case SpaceKind::dual: return "dual(" + dual_inner->to_string() + ")";
  }
  return "?";
}

bool Space::exact_capable() const {
  switch (kind) {
    case SpaceKind::ground: return ground.exact_capable();
    case SpaceKind::tsirelson: return ts.exact_capable();
    case SpaceKind::zv: {
      // beyond the enumeration cap only the lp segment DP evaluates; it is
      // exact precisely when the outer exponent is 1
      const bool evaluable =
          fdd.blocks() <= kZvEnumCap ||
          (fdd.v->kind == SpaceKind::ground && fdd.v->ground.is_lp(1));
      return evaluable && fdd.base->exact_capable() && fdd.v->exact_capable();
    }
    case SpaceKind::dual:
      // closed form only for ground inners, and only when the conjugate
      // exponent keeps the arithmetic rational
      return dual_inner->kind == SpaceKind::ground &&
             dual_ground(dual_inner->ground).exact_capable();
  }
  return false;
}

template <class S>
S space_norm(const Space& space, const Coeffs<S>& x) {
  switch (space.kind) {
    case SpaceKind::ground:
      return eval_ground_norm(space.ground, x);
    case SpaceKind::tsirelson:
      return ts_norm(space.ts, x);
    case SpaceKind::zv:
      return zv_norm(space.fdd, x).value;
    case SpaceKind::dual: {
      if (space.dual_inner->kind == SpaceKind::ground)
        return eval_ground_norm(dual_ground(space.dual_inner->ground), x);
      if constexpr (std::is_same_v<S, Rat>) {
        throw ExactUnsupported("dual norm of " + space.dual_inner->to_string() +
                               " is search-estimated; use float mode");
      } else {
        if (x.empty()) return 0.0;
        return dual_norm_estimate(*space.dual_inner, x, x.max_support(), space.dual_cfg);
      }
    }
  }
  throw std::logic_error("space_norm: unhandled kind");
}

template <class S>
S space_norm(const SpacePtr& space, const Coeffs<S>& x) {
  if (!space) throw std::invalid_argument("space_norm: null space");
  return space_norm<S>(*space, x);
}

template Rat space_norm<Rat>(const Space&, const Coeffs<Rat>&);
template double space_norm<double>(const Space&, const Coeffs<double>&);
template Rat space_norm<Rat>(const SpacePtr&, const Coeffs<Rat>&);
template double space_norm<double>(const SpacePtr&, const Coeffs<double>&);

}  // namespace tsnorm
