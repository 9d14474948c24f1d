"""Representability: universal element search and representing functor induction.

A het-bifunctor is representable on the left when every source object x has a
target object Fx and an element h_x through which every het element out of x
factors by a unique target morphism; dually on the right.  The search here is
exhaustive and deterministic: apex candidates are tried in category declaration
order and elements in cell order, and the first verified universal element
wins.  Universal elements are only unique up to isomorphism, so determinism is
what makes golden outputs reproducible.

From a full family of universal elements the representing functor is induced
on morphisms by unique fill-ins, and the natural bijections between hom cells
and het cells are assembled and verified exhaustively.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .core import ConsistencyError, FunctorData, Report, check_functor
from .het import HetBifunctor

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class UniversalElement:
    """An (apex, element) pair through which a slice of het cells factors uniquely.

    For side="left" the base is a source object x, the apex its representing
    target object, and the element lives in Het(base, apex).  For side="right"
    the base is a target object a, the apex a source object, and the element
    lives in Het(apex, base).
    """

    side: str
    base: str
    apex: str
    element: str


@dataclass(frozen=True)
class ApexWitness:
    """Why one candidate apex failed: a het element with 0 or >= 2 factorizations."""

    apex: str
    element: str | None      # candidate universal element tried (None: empty cell)
    counterexample: str | None
    factorizations: int

    def describe(self) -> str:
        if self.element is None:
            return f"apex {self.apex}: no candidate element in its cell"
        return (f"apex {self.apex}, candidate {self.element}: element "
                f"{self.counterexample} has {self.factorizations} factorization(s)")


@dataclass
class SearchFailure:
    """Not-found result of a universal element search, one witness per apex."""

    side: str
    base: str
    witnesses: list[ApexWitness] = field(default_factory=list)


@dataclass
class Representation:
    """One side of a birepresentation: functor, universal elements, bijections.

    For side="left" the bijection table at (x, a) maps hom ids in
    Hom(Fx, a) to het ids in Het(x, a) (the direction hom -> het).  For
    side="right" it maps het ids in Het(x, a) to hom ids in Hom(x, Ga).
    """

    het: HetBifunctor
    side: str
    functor: FunctorData
    universals: dict[str, UniversalElement]
    bijections: dict[tuple[str, str], dict[str, str]]

    def inverse_bijection(self, x: str, a: str) -> dict[str, str]:
        return {v: k for k, v in self.bijections[(x, a)].items()}


@dataclass
class RepresentationResult:
    """Outcome of a whole-side search: either a Representation or the partial data.

    When one side succeeds and the other fails, the successful side's functor
    together with its universal family is exactly a half-adjunction.
    """

    side: str
    universals: dict[str, UniversalElement]
    failures: dict[str, SearchFailure]
    representation: Representation | None = None
    naturality: Report | None = None

    @property
    def ok(self) -> bool:
        return self.representation is not None


def _left_ump_failure(het: HetBifunctor, x: str, apex: str, h: str):
    """First (c, count) violating "exactly one g with g.h == c", or None."""
    tgt = het.target
    for a in tgt.objects:
        counts = Counter(het.right(g, h) for g in tgt.hom(apex, a))
        for c in het.cell(x, a):
            if counts[c] != 1:
                return c, counts[c]
    return None


def _right_ump_failure(het: HetBifunctor, a: str, apex: str, e: str):
    src = het.source
    for x in src.objects:
        counts = Counter(het.left(f, e) for f in src.hom(x, apex))
        for c in het.cell(x, a):
            if counts[c] != 1:
                return c, counts[c]
    return None


def find_universal_element(het: HetBifunctor, base: str, side: str
                           ) -> UniversalElement | SearchFailure:
    """Search for a universal element over one base object.

    Returns the first (apex, element) verifying the universal mapping property
    exhaustively, or a SearchFailure keeping at most one witness per candidate
    apex.  Not-found is a value, not an error.
    """
    if side == LEFT:
        apexes = het.target.objects
        cell = lambda apex: het.cell(base, apex)
        failure = lambda apex, h: _left_ump_failure(het, base, apex, h)
    elif side == RIGHT:
        apexes = het.source.objects
        cell = lambda apex: het.cell(apex, base)
        failure = lambda apex, e: _right_ump_failure(het, base, apex, e)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    witnesses: list[ApexWitness] = []
    for apex in apexes:
        candidates = cell(apex)
        if not candidates:
            witnesses.append(ApexWitness(apex, None, None, 0))
            continue
        recorded = False
        for elem in candidates:
            bad = failure(apex, elem)
            if bad is None:
                return UniversalElement(side=side, base=base, apex=apex, element=elem)
            if not recorded:
                witnesses.append(ApexWitness(apex, elem, bad[0], bad[1]))
                recorded = True
    return SearchFailure(side=side, base=base, witnesses=witnesses)


class InduceError(Exception):
    """A fill-in required by functor induction was missing or not unique."""

    def __init__(self, message: str, witnesses: tuple[str, ...] = ()):
        super().__init__(message)
        self.witnesses = witnesses


def _unique_fill(candidates, predicate, what: str, witnesses) -> str:
    found = [g for g in candidates if predicate(g)]
    if len(found) != 1:
        raise InduceError(
            f"{what}: expected exactly one fill-in, found {len(found)}", witnesses)
    return found[0]


def induce_functor(het: HetBifunctor, universals: dict[str, UniversalElement],
                   side: str) -> Representation:
    """Extend a full family of universal elements to a representing functor.

    The morphism action is the unique fill-in determined by the universal
    property; functor laws are re-verified as a cross-check (they must hold if
    the universal elements were verified).  The bijection tables are assembled
    from the actions on the universal elements.
    """
    if side == LEFT:
        X, A = het.source, het.target
        missing = [x for x in X.objects if x not in universals]
        if missing:
            raise InduceError("universal element missing for base", tuple(missing))
        obj_map = {x: universals[x].apex for x in X.objects}
        mor_map: dict[str, str] = {}
        for j in X.morphisms:
            target_elem = het.left(j.name, universals[j.cod].element)
            mor_map[j.name] = _unique_fill(
                A.hom(obj_map[j.dom], obj_map[j.cod]),
                lambda g: het.right(g, universals[j.dom].element) == target_elem,
                f"morphism action at {j.name}", (j.name,))
        functor = FunctorData(source=X, target=A, obj_map=obj_map, mor_map=mor_map,
                              name=f"L_{het.name}")
        bijections = {
            (x, a): {g: het.right(g, universals[x].element)
                     for g in A.hom(obj_map[x], a)}
            for x in X.objects for a in A.objects}
    elif side == RIGHT:
        X, A = het.source, het.target
        missing = [a for a in A.objects if a not in universals]
        if missing:
            raise InduceError("universal element missing for base", tuple(missing))
        obj_map = {a: universals[a].apex for a in A.objects}
        mor_map = {}
        for k in A.morphisms:
            target_elem = het.right(k.name, universals[k.dom].element)
            mor_map[k.name] = _unique_fill(
                X.hom(obj_map[k.dom], obj_map[k.cod]),
                lambda f: het.left(f, universals[k.cod].element) == target_elem,
                f"morphism action at {k.name}", (k.name,))
        functor = FunctorData(source=A, target=X, obj_map=obj_map, mor_map=mor_map,
                              name=f"R_{het.name}")
        bijections = {}
        for x in X.objects:
            for a in A.objects:
                table = {}
                for f in X.hom(x, obj_map[a]):
                    c = het.left(f, universals[a].element)
                    table[c] = f
                bijections[(x, a)] = table
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    law_report = check_functor(functor)
    if not law_report.ok:
        raise ConsistencyError(
            f"induced functor violates laws despite verified universals: "
            f"{[str(v) for v in law_report.violations]}")
    return Representation(het=het, side=side, functor=functor,
                          universals=dict(universals), bijections=bijections)


def verify_naturality(rep: Representation) -> Report:
    """Exhaustively check bijectivity, the defining equations, and both
    naturality square families of a representation, with witnesses."""
    rep_out = Report(subject=f"representation ({rep.side}) of {rep.het.name}")
    het = rep.het
    X, A = het.source, het.target
    F = rep.functor

    rep_out.merge(check_functor(F), prefix="functor:")

    rep_out.ran("bijection")
    for (x, a), table in rep.bijections.items():
        if rep.side == LEFT:
            dom_expected = set(A.hom(F.obj_map[x], a))
            img_expected = set(het.cell(x, a))
        else:
            dom_expected = set(het.cell(x, a))
            img_expected = set(X.hom(x, F.obj_map[a]))
        if set(table) != dom_expected:
            rep_out.add("bijection", (x, a), "bijection domain mismatch")
        values = list(table.values())
        if len(set(values)) != len(values) or set(values) != img_expected:
            rep_out.add("bijection", (x, a), "bijection image mismatch or collision")

    rep_out.ran("defining-equation")
    if rep.side == LEFT:
        for (x, a), table in rep.bijections.items():
            h = rep.universals[x].element
            for g, c in table.items():
                if het.right(g, h) != c:
                    rep_out.add("defining-equation", (x, a, g), "psi(g) != g acting on h_x")
    else:
        for (x, a), table in rep.bijections.items():
            e = rep.universals[a].element
            for c, f in table.items():
                if het.left(f, e) != c:
                    rep_out.add("defining-equation", (x, a, c), "phi^-1(f) != e_a acting on f")

    rep_out.ran("naturality-covariant")
    rep_out.ran("naturality-contravariant")
    if rep.side == LEFT:
        for x in X.objects:
            for k in A.morphisms:
                psi_src = rep.bijections[(x, k.dom)]
                psi_tgt = rep.bijections[(x, k.cod)]
                for g in A.hom(F.obj_map[x], k.dom):
                    lhs = psi_tgt[A.compose(k.name, g)]
                    rhs = het.right(k.name, psi_src[g])
                    if lhs != rhs:
                        rep_out.add("naturality-covariant", (x, k.name, g, lhs, rhs),
                                    "naturality in the target variable fails")
        for a in A.objects:
            for j in X.morphisms:
                psi_cod = rep.bijections[(j.cod, a)]
                psi_dom = rep.bijections[(j.dom, a)]
                for g in A.hom(F.obj_map[j.cod], a):
                    lhs = psi_dom[A.compose(g, F.mor_map[j.name])]
                    rhs = het.left(j.name, psi_cod[g])
                    if lhs != rhs:
                        rep_out.add("naturality-contravariant", (a, j.name, g, lhs, rhs),
                                    "naturality in the source variable fails")
    else:
        for a in A.objects:
            for j in X.morphisms:
                phi_cod = rep.bijections[(j.cod, a)]
                phi_dom = rep.bijections[(j.dom, a)]
                for c in het.cell(j.cod, a):
                    lhs = phi_dom[het.left(j.name, c)]
                    rhs = X.compose(phi_cod[c], j.name)
                    if lhs != rhs:
                        rep_out.add("naturality-contravariant", (a, j.name, c, lhs, rhs),
                                    "naturality in the source variable fails")
        for x in X.objects:
            for k in A.morphisms:
                phi_src = rep.bijections[(x, k.dom)]
                phi_tgt = rep.bijections[(x, k.cod)]
                for c in het.cell(x, k.dom):
                    lhs = phi_tgt[het.right(k.name, c)]
                    rhs = X.compose(F.mor_map[k.name], phi_src[c])
                    if lhs != rhs:
                        rep_out.add("naturality-covariant", (x, k.name, c, lhs, rhs),
                                    "naturality in the target variable fails")
    return rep_out


def find_representation(het: HetBifunctor, side: str) -> RepresentationResult:
    """Search every base object for a universal element and, on total success,
    induce the representing functor and verify two-sided naturality.

    A partial outcome (some bases representable, some not) is returned as-is;
    that data is the half-adjunction content when the other side succeeds.
    """
    bases = het.source.objects if side == LEFT else het.target.objects
    universals: dict[str, UniversalElement] = {}
    failures: dict[str, SearchFailure] = {}
    for base in bases:
        outcome = find_universal_element(het, base, side)
        if isinstance(outcome, UniversalElement):
            universals[base] = outcome
        else:
            failures[base] = outcome
    result = RepresentationResult(side=side, universals=universals, failures=failures)
    if not failures:
        result.representation = induce_functor(het, universals, side)
        result.naturality = verify_naturality(result.representation)
    return result
