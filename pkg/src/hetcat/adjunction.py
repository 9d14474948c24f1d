"""Adjunctions: transpose bijections, units and counits, adjunctive squares.

An adjunction is stored in one canonical internal form: the two functors plus
the transpose bijection family phi mapping Hom(Fx, a) to Hom(x, Ga) cellwise.
Units and counits are the transposes of identities and can be derived from
phi; when an adjunction is synthesized from a het-bifunctor, the het data
(universal families and both representation bijections) rides along so that
het units, het counits, and het adjunctive squares are available.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (ConsistencyError, FinCat, FunctorData, NatTransform,
                   Report, check_functor, check_nat_transform,
                   compose_functors, identity_functor)
from .het import HetBifunctor, HetNatTransform, check_het_nat_transform
from .represent import (LEFT, RIGHT, Representation, RepresentationResult,
                        find_representation)


@dataclass
class HetCore:
    """Het provenance of a synthesized adjunction."""

    het: HetBifunctor
    left_rep: Representation
    right_rep: Representation
    het_unit: dict[str, str]     # x -> h_x in Het(x, Fx)
    het_counit: dict[str, str]   # a -> e_a in Het(Ga, a)


@dataclass
class Adjunction:
    """A pair of adjoint functors with the transpose bijection family.

    phi[(x, a)] maps each g in Hom(Fx, a) to its transpose in Hom(x, Ga).
    """

    left: FunctorData                       # F : X -> A
    right: FunctorData                      # G : A -> X
    phi: dict[tuple[str, str], dict[str, str]]
    hom_unit: dict[str, str]                # x -> eta_x : x -> GFx
    hom_counit: dict[str, str]              # a -> eps_a : FGa -> a
    het_core: HetCore | None = None
    name: str = "adjunction"

    @property
    def sending(self) -> FinCat:
        return self.left.source

    @property
    def receiving(self) -> FinCat:
        return self.left.target

    def phi_inverse(self, x: str, a: str) -> dict[str, str]:
        return {f: g for g, f in self.phi[(x, a)].items()}

    def transpose_right(self, x: str, a: str, g: str) -> str:
        """phi: a morphism Fx -> a goes to its transpose x -> Ga."""
        try:
            return self.phi[(x, a)][g]
        except KeyError:
            raise LookupError(
                f"{g} is not in the hom cell ({self.left.obj_map[x]} -> {a})") from None

    def transpose_left(self, x: str, a: str, f: str) -> str:
        """phi inverse: a morphism x -> Ga goes to its transpose Fx -> a."""
        inv = self.phi_inverse(x, a)
        try:
            return inv[f]
        except KeyError:
            raise LookupError(
                f"{f} is not in the hom cell ({x} -> {self.right.obj_map[a]})") from None


def make_adjunction(left: FunctorData, right: FunctorData,
                    phi: dict[tuple[str, str], dict[str, str]],
                    hom_unit: dict[str, str] | None = None,
                    hom_counit: dict[str, str] | None = None,
                    het_core: HetCore | None = None,
                    name: str = "adjunction") -> Adjunction:
    """Assemble an Adjunction, deriving units and counits from phi if absent."""
    F, G = left, right
    if hom_unit is None:
        hom_unit = {}
        for x in F.source.objects:
            fx = F.obj_map[x]
            hom_unit[x] = phi[(x, fx)][F.target.identity_of(fx)]
    if hom_counit is None:
        hom_counit = {}
        for a in G.source.objects:
            ga = G.obj_map[a]
            inv = {f: g for g, f in phi[(ga, a)].items()}
            hom_counit[a] = inv[G.target.identity_of(ga)]
    return Adjunction(left=F, right=G, phi=phi, hom_unit=hom_unit,
                      hom_counit=hom_counit, het_core=het_core, name=name)


@dataclass
class SynthesisFailure:
    """Synthesis could not complete: at least one side is not representable.

    The embedded results carry the per-base universal elements that were found
    and the failure witnesses; a one-sided success is half-adjunction data.
    """

    het: HetBifunctor
    left_result: RepresentationResult
    right_result: RepresentationResult

    def describe(self) -> str:
        parts = []
        for r in (self.left_result, self.right_result):
            if r.ok:
                parts.append(f"{r.side}: representable")
            else:
                bases = ", ".join(sorted(r.failures))
                parts.append(f"{r.side}: not representable at {bases}")
        return "; ".join(parts)


def synthesize_adjunction(het: HetBifunctor) -> Adjunction | SynthesisFailure:
    """Build the adjunction of a birepresentable het-bifunctor.

    Runs the representation search on both sides; on success, phi is the
    composite of the two cellwise bijections through the het cell, and the
    hom/het units and counits are extracted and all invariants verified.
    """
    left_result = find_representation(het, LEFT)
    right_result = find_representation(het, RIGHT)
    if not (left_result.ok and right_result.ok):
        return SynthesisFailure(het=het, left_result=left_result,
                                right_result=right_result)

    lrep = left_result.representation
    rrep = right_result.representation
    F, G = lrep.functor, rrep.functor
    X, A = het.source, het.target

    phi: dict[tuple[str, str], dict[str, str]] = {}
    for x in X.objects:
        for a in A.objects:
            psi = lrep.bijections[(x, a)]          # hom(Fx,a) -> het(x,a)
            to_hom = rrep.bijections[(x, a)]       # het(x,a) -> hom(x,Ga)
            phi[(x, a)] = {g: to_hom[c] for g, c in psi.items()}

    core = HetCore(
        het=het, left_rep=lrep, right_rep=rrep,
        het_unit={x: lrep.universals[x].element for x in X.objects},
        het_counit={a: rrep.universals[a].element for a in A.objects})
    adj = make_adjunction(F, G, phi, het_core=core, name=f"adj_{het.name}")

    report = check_adjunction(adj)
    if not report.ok:
        raise ConsistencyError(
            "synthesized adjunction fails its own invariants: "
            + "; ".join(str(v) for v in report.violations))
    return adj


def check_adjunction(adj: Adjunction) -> Report:
    """Verify every adjunction invariant as a named check with witnesses.

    Covers functor laws, cell size agreement (reported before bijectivity),
    bijectivity of phi, naturality in both variables, unit/counit correlation,
    the two transpose formulas, the triangle identities, and the dom/cod
    directionality of both transpose composites.
    """
    rep = Report(subject=f"adjunction {adj.name}")
    F, G = adj.left, adj.right
    X, A = F.source, F.target

    rep.merge(check_functor(F), prefix="left-")
    rep.merge(check_functor(G), prefix="right-")
    if not rep.ok:
        return rep

    rep.ran("cell-sizes")
    for x in X.objects:
        for a in A.objects:
            n_left = len(A.hom(F.obj_map[x], a))
            n_right = len(X.hom(x, G.obj_map[a]))
            if n_left != n_right:
                rep.add("cell-sizes", (x, a, str(n_left), str(n_right)),
                        "hom cells have different sizes")
    if not rep.ok:
        return rep

    rep.ran("bijection")
    for x in X.objects:
        for a in A.objects:
            table = adj.phi.get((x, a))
            if table is None:
                rep.add("bijection", (x, a), "phi cell missing")
                continue
            dom_expected = set(A.hom(F.obj_map[x], a))
            img_expected = set(X.hom(x, G.obj_map[a]))
            if set(table) != dom_expected:
                rep.add("bijection", (x, a), "phi domain mismatch")
            vals = list(table.values())
            if len(set(vals)) != len(vals) or set(vals) != img_expected:
                rep.add("bijection", (x, a), "phi image mismatch or collision")
    if not rep.ok:
        return rep

    rep.ran("naturality-source")
    for a in A.objects:
        for j in X.morphisms:
            for g in A.hom(F.obj_map[j.cod], a):
                lhs = adj.phi[(j.dom, a)][A.compose(g, F.mor_map[j.name])]
                rhs = X.compose(adj.phi[(j.cod, a)][g], j.name)
                if lhs != rhs:
                    rep.add("naturality-source", (a, j.name, g, lhs, rhs),
                            "phi(g . Fj) != phi(g) . j")

    rep.ran("naturality-target")
    for x in X.objects:
        for k in A.morphisms:
            for g in A.hom(F.obj_map[x], k.dom):
                lhs = adj.phi[(x, k.cod)][A.compose(k.name, g)]
                rhs = X.compose(G.mor_map[k.name], adj.phi[(x, k.dom)][g])
                if lhs != rhs:
                    rep.add("naturality-target", (x, k.name, g, lhs, rhs),
                            "phi(k . g) != Gk . phi(g)")

    rep.ran("unit-correlation")
    for x in X.objects:
        fx = F.obj_map[x]
        expected = adj.phi[(x, fx)][A.identity_of(fx)]
        if adj.hom_unit.get(x) != expected:
            rep.add("unit-correlation", (x, str(adj.hom_unit.get(x)), expected),
                    "unit is not the transpose of the identity")

    rep.ran("counit-correlation")
    for a in A.objects:
        ga = G.obj_map[a]
        inv = adj.phi_inverse(ga, a)
        expected = inv[X.identity_of(ga)]
        if adj.hom_counit.get(a) != expected:
            rep.add("counit-correlation", (a, str(adj.hom_counit.get(a)), expected),
                    "counit is not the inverse transpose of the identity")

    rep.ran("transpose-counit-formula")
    for x in X.objects:
        for a in A.objects:
            inv = adj.phi_inverse(x, a)
            for f in X.hom(x, G.obj_map[a]):
                composite = A.compose(adj.hom_counit[a], F.mor_map[f])
                if inv[f] != composite:
                    rep.add("transpose-counit-formula", (x, a, f, inv[f], composite),
                            "phi^-1(f) != eps_a . Ff")

    rep.ran("transpose-unit-formula")
    for x in X.objects:
        for a in A.objects:
            for g in A.hom(F.obj_map[x], a):
                composite = X.compose(G.mor_map[g], adj.hom_unit[x])
                if adj.phi[(x, a)][g] != composite:
                    rep.add("transpose-unit-formula", (x, a, g, adj.phi[(x, a)][g], composite),
                            "phi(g) != Gg . eta_x")

    rep.ran("triangle-right")
    for a in A.objects:
        ga = G.obj_map[a]
        lhs = X.compose(G.mor_map[adj.hom_counit[a]], adj.hom_unit[ga])
        if lhs != X.identity_of(ga):
            rep.add("triangle-right", (a, lhs), "G(eps_a) . eta_Ga != id")

    rep.ran("triangle-left")
    for x in X.objects:
        fx = F.obj_map[x]
        lhs = A.compose(adj.hom_counit[fx], F.mor_map[adj.hom_unit[x]])
        if lhs != A.identity_of(fx):
            rep.add("triangle-left", (x, lhs), "eps_Fx . F(eta_x) != id")

    rep.ran("directionality")
    for x in X.objects:
        for a in A.objects:
            for g, f in adj.phi[(x, a)].items():
                if not (A.dom(g) == F.obj_map[x] and A.cod(g) == a):
                    rep.add("directionality", (x, a, g), "phi key does not run Fx -> a")
                if not (X.dom(f) == x and X.cod(f) == G.obj_map[a]):
                    rep.add("directionality", (x, a, f), "phi value does not run x -> Ga")
    return rep


def transpose(adj: Adjunction, x: str, a: str, m: str, direction: str) -> str:
    """Adjoint transpose of m across the (x, a) cell.

    direction="right" maps Hom(Fx, a) to Hom(x, Ga); "left" is the inverse.
    Raises LookupError when m is not in the stated cell.
    """
    if direction == "right":
        return adj.transpose_right(x, a, m)
    if direction == "left":
        return adj.transpose_left(x, a, m)
    raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")


@dataclass(frozen=True)
class HetAdjunctiveSquare:
    """Both unique factorizations of a het element, spliced along the diagonal.

    top: f(c): x -> Ga, bottom: g(c): Fx -> a, unit: h_x, counit: e_a, with
    g(c) acting on h_x and e_a acting on f(c) both giving back c.
    """

    x: str
    a: str
    het: str
    top: str
    bottom: str
    unit: str
    counit: str


def build_het_adjunctive_square(adj: Adjunction, c: str) -> HetAdjunctiveSquare:
    """Factor the het element c through the het unit and the het counit."""
    if adj.het_core is None:
        raise ValueError("adjunction has no het core; squares need het provenance")
    core = adj.het_core
    het = core.het
    x, a = het.home(c)
    f = core.right_rep.bijections[(x, a)][c]
    g = core.left_rep.inverse_bijection(x, a)[c]
    h_x = core.het_unit[x]
    e_a = core.het_counit[a]
    if het.right(g, h_x) != c:
        raise ConsistencyError(f"unit factorization failed for {c}")
    if het.left(f, e_a) != c:
        raise ConsistencyError(f"counit factorization failed for {c}")
    if adj.phi[(x, a)][g] != f:
        raise ConsistencyError(f"factor maps of {c} are not adjoint transposes")
    return HetAdjunctiveSquare(x=x, a=a, het=c, top=f, bottom=g, unit=h_x, counit=e_a)


@dataclass(frozen=True)
class HomPairAdjunctiveSquare:
    """The commutative square of transpose pairs in the product of the two
    categories, determined by a single morphism f: x -> Ga.

    Each field is a pair (first component in the sending category, second in
    the receiving category).  The two paths around the square compose to the
    diagonal (f, g) with g the transpose of f.
    """

    x: str
    a: str
    top: tuple[str, str]        # (f, Ff)
    left: tuple[str, str]       # (eta_x, id_Fx)
    right: tuple[str, str]      # (id_Ga, eps_a)
    bottom: tuple[str, str]     # (Gg, g)
    diagonal: tuple[str, str]   # (f, g)
    composite: tuple[str, str]  # common value of both paths


def build_hom_pair_adjunctive_square(adj: Adjunction, x: str, a: str,
                                     f: str) -> HomPairAdjunctiveSquare:
    """Complete the transpose-pair square over f: x -> Ga and verify it commutes.

    Commutativity is checked componentwise; the two triangle factorizations
    (f through the unit, g through the counit) are re-checked explicitly.
    """
    F, G = adj.left, adj.right
    X, A = F.source, F.target
    if f not in X.hom(x, G.obj_map[a]):
        raise LookupError(f"{f} is not a morphism {x} -> {G.obj_map[a]}")
    g = adj.transpose_left(x, a, f)

    top = (f, F.mor_map[f])
    left = (adj.hom_unit[x], A.identity_of(F.obj_map[x]))
    right = (X.identity_of(G.obj_map[a]), adj.hom_counit[a])
    bottom = (G.mor_map[g], g)
    diagonal = (f, g)

    via_left = (X.compose(bottom[0], left[0]), A.compose(bottom[1], left[1]))
    via_right = (X.compose(right[0], top[0]), A.compose(right[1], top[1]))
    if via_left != diagonal or via_right != diagonal:
        raise ConsistencyError(
            f"adjunctive square over {f} does not commute: "
            f"left path {via_left}, right path {via_right}, diagonal {diagonal}")
    if X.compose(G.mor_map[g], adj.hom_unit[x]) != f:
        raise ConsistencyError(f"unit triangle fails for {f}")
    if A.compose(adj.hom_counit[a], F.mor_map[f]) != g:
        raise ConsistencyError(f"counit triangle fails for {f}")
    return HomPairAdjunctiveSquare(x=x, a=a, top=top, left=left, right=right,
                                   bottom=bottom, diagonal=diagonal,
                                   composite=via_left)


def unit_counit_nat_transforms(adj: Adjunction):
    """The unit and counit as natural transformations, plus their het forms.

    Returns (eta: 1 -> GF, eps: FG -> 1, het_unit | None, het_counit | None);
    the het families exist only for adjunctions synthesized from het data.
    All four are verified before being returned.
    """
    F, G = adj.left, adj.right
    X, A = F.source, F.target
    eta = NatTransform(source=identity_functor(X),
                       target=compose_functors(G, F, name="GF"),
                       components=dict(adj.hom_unit), name="eta")
    eps = NatTransform(source=compose_functors(F, G, name="FG"),
                       target=identity_functor(A),
                       components=dict(adj.hom_counit), name="eps")
    for t in (eta, eps):
        r = check_nat_transform(t)
        if not r.ok:
            raise ConsistencyError(f"{t.name} fails naturality: "
                                   + "; ".join(str(v) for v in r.violations))

    het_unit = het_counit = None
    if adj.het_core is not None:
        core = adj.het_core
        het_unit = HetNatTransform(source=identity_functor(X), target=F,
                                   het=core.het, components=dict(core.het_unit),
                                   name="het_unit")
        het_counit = HetNatTransform(source=G, target=identity_functor(A),
                                     het=core.het, components=dict(core.het_counit),
                                     name="het_counit")
        for t in (het_unit, het_counit):
            r = check_het_nat_transform(t)
            if not r.ok:
                raise ConsistencyError(f"{t.name} fails het naturality: "
                                       + "; ".join(str(v) for v in r.violations))
    return eta, eps, het_unit, het_counit
