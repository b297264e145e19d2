"""Classification of points: rali, strong, stably strong; pullbacks; SSFL.

A point is rali exactly when its cone is the componentwise cone, and strong
exactly when its cone is the one generated from it.  Strongness is not stable
under pullback, so "stably strong" is only ever certified relative to an
explicit catalog of base morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .actions import PrecomposedAction, ProductAction
from .cones import (
    Cone,
    OrthantCone,
    PreorderedGroup,
    ProductCone,
    TrivialCone,
    cone_subset,
    cones_equal,
    is_monotone,
)
from .extensions import SplitExtension, minimal_cone, product_cone
from .groups import (
    CyclicGroup,
    DirectProduct,
    FreeAbelian,
    Group,
    Semidirect,
    ShapeError,
    StructureError,
    format_element,
)
from .homs import (
    Homomorphism,
    IdentityHom,
    ScalarHom,
    TableHom,
    compose,
    invert,
)
from .verdict import (
    DEFAULT_BUDGET,
    SaturationBudget,
    Verdict,
    no,
    unknown,
    vand,
    yes,
)


@dataclass(frozen=True)
class PointMorphism:
    """A triple (a, b, c) between split extensions, kernel / middle / base."""

    a: Homomorphism
    b: Homomorphism
    c: Homomorphism


def hom_leq(
    g: Homomorphism,
    h: Homomorphism,
    src: PreorderedGroup,
    dst: PreorderedGroup,
    budget: SaturationBudget = DEFAULT_BUDGET,
) -> Verdict:
    """g <= h pointwise on the positive elements of the source."""
    if g.source != h.source or g.target != h.target:
        raise ShapeError("maps are not a parallel pair")
    if g.source != src.group or g.target != dst.group:
        raise ShapeError("parallel pair does not match the given preorders")
    gens = src.cone.finite_generators()
    if gens is not None and dst.group.is_abelian() and dst.cone.known_cone():
        # The comparison x -> -g(x)+h(x) is additive into an abelian target,
        # so positivity on cone generators decides every positive element.
        pend = None
        for x in gens:
            v = dst.leq(g.apply(x), h.apply(x), budget)
            if v.is_no:
                return no(x, "comparison fails on a cone generator")
            if v.is_unknown and pend is None:
                pend = v
        return pend if pend is not None else yes("on cone generators")
    saw_unknown = False
    for x in src.group.window_elements(budget.window):
        vx = src.cone.contains(x, budget)
        if vx.is_yes:
            v = dst.leq(g.apply(x), h.apply(x), budget)
            if v.is_no:
                return no(x, "comparison fails on a positive element")
            if v.is_unknown:
                saw_unknown = True
        elif vx.is_unknown:
            saw_unknown = True
    if saw_unknown:
        return unknown("pointwise comparison hit undecided memberships")
    return yes("window-verified")


def is_rali(pt: SplitExtension, budget: SaturationBudget = DEFAULT_BUDGET) -> Verdict:
    """Cone equality with the componentwise cone, cross-checked by adjointness."""
    by_cone = cones_equal(pt.cone, product_cone(pt.shape), budget)
    sf = compose(pt.section_hom(), pt.projection_hom())
    for b in pt.b.group.window_elements(budget.window):
        if pt.projection_hom().apply(pt.section_hom().apply(b)) != b:
            raise AssertionError("projection after section is not the identity")
    by_adjoint = hom_leq(sf, IdentityHom(pt.carrier), pt.pre, pt.pre, budget)
    if (by_cone.is_yes and by_adjoint.is_no) or (by_cone.is_no and by_adjoint.is_yes):
        raise AssertionError(
            f"rali routes disagree: cone equality {by_cone} vs adjointness {by_adjoint}"
        )
    return by_cone


def is_strong(pt: SplitExtension, budget: SaturationBudget = DEFAULT_BUDGET) -> Verdict:
    """Cone equality with the least compatible cone."""
    minimal = minimal_cone(pt.shape, budget)
    lower = cone_subset(minimal, pt.cone, budget)
    upper = cone_subset(pt.cone, minimal, budget)
    return vand(lower, upper)


@dataclass(frozen=True)
class PullbackCone(Cone):
    """Positivity downstairs reads off the base cone and the upstairs cone."""

    group: Group
    base_cone: Cone
    upstairs: Cone
    along: Homomorphism

    def contains(self, el, budget=DEFAULT_BUDGET):
        self.group.check(el)
        x, c = el
        vb = self.base_cone.contains(c, budget)
        if vb.is_no:
            return no(el, "base part not positive")
        vu = self.upstairs.contains((x, self.along.apply(c)), budget)
        return vand(vb, vu)

    def __str__(self):
        return f"pullback[{self.upstairs}]"


def pullback(
    pt: SplitExtension,
    g: Homomorphism,
    base: PreorderedGroup,
    budget: SaturationBudget = DEFAULT_BUDGET,
) -> SplitExtension:
    """Base change of a point along a monotone map into its base."""
    if g.source != base.group or g.target != pt.b.group:
        raise ShapeError("pullback map must go from the new base into the old one")
    mono = is_monotone(g, base, pt.b, budget)
    if not mono.is_yes:
        raise StructureError(
            f"pullback map not monotone: {mono.note} at {format_element(mono.witness)}"
        )
    action = PrecomposedAction(pt.action, g)
    carrier = Semidirect(pt.x.group, base.group, action)
    cone = PullbackCone(carrier, base.cone, pt.cone, g)
    return SplitExtension(pt.x, base, action, cone)


@dataclass(frozen=True)
class StablyStrongReport:
    """Strongness after pullback along each catalog morphism.

    The aggregate Yes never means absolute stability: it is always relative
    to the catalog run, and the note says so.
    """

    entries: tuple[tuple[str, Verdict], ...]
    aggregate: Verdict
    note: str

    @property
    def yes_over_catalog(self) -> bool:
        return self.aggregate.is_yes


def stably_strong_over(
    pt: SplitExtension,
    catalog: list[tuple[PreorderedGroup, Homomorphism]],
    budget: SaturationBudget = DEFAULT_BUDGET,
) -> StablyStrongReport:
    entries = []
    verdicts = []
    for base, g in catalog:
        label = f"{g} : {base} -> {pt.b}"
        pb = pullback(pt, g, base, budget)
        v = is_strong(pb, budget)
        entries.append((label, v))
        verdicts.append(v)
    agg = vand(*verdicts) if verdicts else yes("empty catalog")
    return StablyStrongReport(
        entries=tuple(entries),
        aggregate=agg,
        note=f"relative to an explicit catalog of {len(entries)} base morphisms",
    )


def default_base_catalog(
    base: PreorderedGroup, bound: int = 4
) -> list[tuple[PreorderedGroup, Homomorphism]]:
    """Scalar maps n -> c n for |c| <= bound, plus a finite cyclic source."""
    if not (isinstance(base.group, FreeAbelian) and base.group.rank == 1):
        raise StructureError("default catalog is defined over base Z")
    Z = base.group
    out: list[tuple[PreorderedGroup, Homomorphism]] = []
    candidates = [
        PreorderedGroup(Z, base.cone),
        PreorderedGroup(Z, TrivialCone(Z)),
    ]
    for c in range(-bound, bound + 1):
        h = ScalarHom(Z, Z, Fraction(c))
        for cand in candidates:
            if is_monotone(h, cand, base).is_yes:
                out.append((cand, h))
                break
    z2 = CyclicGroup(2)
    from .cones import FullCone

    zero = TableHom.from_dict(z2, Z, {0: 0, 1: 0})
    out.append((PreorderedGroup(z2, FullCone(z2)), zero))
    return out


@dataclass(frozen=True)
class PointProductCone(Cone):
    """Membership of ((x1,x2),(b1,b2)) splits into the two component points."""

    group: Group
    first: Cone
    second: Cone

    def contains(self, el, budget=DEFAULT_BUDGET):
        self.group.check(el)
        (x1, x2), (b1, b2) = el
        return vand(self.first.contains((x1, b1), budget), self.second.contains((x2, b2), budget))

    def __str__(self):
        return f"({self.first} * {self.second})"


def point_product(pt1: SplitExtension, pt2: SplitExtension) -> SplitExtension:
    """Componentwise product of two points in the category of points."""
    x = PreorderedGroup(
        DirectProduct((pt1.x.group, pt2.x.group)),
        ProductCone(
            DirectProduct((pt1.x.group, pt2.x.group)), pt1.x.cone, pt2.x.cone
        ),
    )
    b = PreorderedGroup(
        DirectProduct((pt1.b.group, pt2.b.group)),
        ProductCone(
            DirectProduct((pt1.b.group, pt2.b.group)), pt1.b.cone, pt2.b.cone
        ),
    )
    action = ProductAction(pt1.action, pt2.action)
    carrier = Semidirect(x.group, b.group, action)
    cone = PointProductCone(carrier, pt1.cone, pt2.cone)
    return SplitExtension(x, b, action, cone)


def check_point_morphism(
    m: PointMorphism,
    src: SplitExtension,
    dst: SplitExtension,
    budget: SaturationBudget = DEFAULT_BUDGET,
) -> Verdict:
    """Commutation of the three squares plus monotonicity of all three maps."""
    window = budget.window
    k, f, s = src.kernel_hom(), src.projection_hom(), src.section_hom()
    k2, f2, s2 = dst.kernel_hom(), dst.projection_hom(), dst.section_hom()
    for x in src.x.group.window_elements(window):
        if k2.apply(m.a.apply(x)) != m.b.apply(k.apply(x)):
            return no(x, "kernel square does not commute")
    for el in src.carrier.window_elements(window):
        if f2.apply(m.b.apply(el)) != m.c.apply(f.apply(el)):
            return no(el, "projection square does not commute")
    for bb in src.b.group.window_elements(window):
        if s2.apply(m.c.apply(bb)) != m.b.apply(s.apply(bb)):
            return no(bb, "section square does not commute")
    return vand(
        is_monotone(m.a, src.x, dst.x, budget),
        is_monotone(m.b, src.pre, dst.pre, budget),
        is_monotone(m.c, src.b, dst.b, budget),
    )


def order_iso_check(
    h: Homomorphism,
    src: PreorderedGroup,
    dst: PreorderedGroup,
    budget: SaturationBudget = DEFAULT_BUDGET,
) -> Verdict:
    """Group isomorphism (via an exact inverse) monotone in both directions."""
    m = h.as_matrix()
    if m is not None and src.group == dst.group:
        from .linalg import determinant

        d = determinant(m)
        if isinstance(src.group, FreeAbelian) and abs(d) != 1:
            return no(d, "matrix determinant is not a unit over Z")
        if d == 0:
            return no(d, "matrix is singular")
    inv = invert(h)
    if inv is None:
        return unknown("no exact inverse available for this representation")
    for x in src.group.window_elements(budget.window):
        if inv.apply(h.apply(x)) != x:
            return no(x, "claimed inverse fails")
    return vand(
        is_monotone(h, src, dst, budget),
        is_monotone(inv, dst, src, budget),
    )


def ssfl_check(
    m: PointMorphism,
    src: SplitExtension,
    dst: SplitExtension,
    budget: SaturationBudget = DEFAULT_BUDGET,
) -> Verdict:
    """Is the middle map an order isomorphism, given iso kernel and base parts?

    For rows carrying their least compatible cones this must come out Yes;
    the check itself just verifies the middle map both ways.
    """
    comm = check_point_morphism(m, src, dst, budget)
    if comm.is_no:
        raise StructureError(f"not a point morphism: {comm.note} at {comm.witness}")
    for label, hom, s_pre, d_pre in (
        ("kernel", m.a, src.x, dst.x),
        ("base", m.c, src.b, dst.b),
    ):
        v = order_iso_check(hom, s_pre, d_pre, budget)
        if not v.is_yes:
            raise StructureError(f"{label} component is not an order isomorphism: {v}")
    return order_iso_check(m.b, src.pre, dst.pre, budget)


@dataclass(frozen=True)
class PointClassification:
    rali: Verdict
    strong: Verdict
    stably_strong: StablyStrongReport

    def __post_init__(self):
        if self.rali.is_yes and self.strong.is_no:
            raise AssertionError("a rali point must be strong")


def classify_point(
    pt: SplitExtension,
    catalog: list[tuple[PreorderedGroup, Homomorphism]] | None = None,
    budget: SaturationBudget = DEFAULT_BUDGET,
) -> PointClassification:
    if catalog is None:
        catalog = default_base_catalog(pt.b)
    return PointClassification(
        rali=is_rali(pt, budget),
        strong=is_strong(pt, budget),
        stably_strong=stably_strong_over(pt, catalog, budget),
    )
