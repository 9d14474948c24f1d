"""Het-bifunctors: cross-category morphism data with two-sided category actions.

A het-bifunctor assigns to every pair (x, a) of a source object and a target
object a finite set of het elements, acted on contravariantly by source
morphisms (precomposition) and covariantly by target morphisms
(postcomposition), with the two actions commuting.

Element ids are unique across the whole bifunctor, not just within a cell, so
actions can be keyed by (morphism, element) alone and the home cell of an
element is recoverable.  Derived bifunctors synthesize ids canonically from
underlying morphism ids, tagging them with a cell coordinate where that
coordinate is not already determined.

Actions are stored as explicit tables for user-supplied bifunctors (the DSL
produces these) and as computed views for derived ones; both satisfy the same
interface.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .core import (FinCat, FunctorData, PreconditionError, Report,
                   full_subcategory, pair_id, split_pair)

Action = Callable[[str, str], str]


class HetBifunctor:
    """Finite het data between two categories, with left/right actions.

    ``cell(x, a)`` lists the het elements from source object x to target
    object a.  ``left(h, c)`` precomposes c with a source morphism h whose
    codomain is c's source coordinate; ``right(k, c)`` postcomposes with a
    target morphism k whose domain is c's target coordinate.
    """

    def __init__(self, source: FinCat, target: FinCat,
                 cells: Mapping[tuple[str, str], Iterable[str]],
                 left_action: Mapping[tuple[str, str], str] | Action,
                 right_action: Mapping[tuple[str, str], str] | Action,
                 name: str = "Het"):
        self.source = source
        self.target = target
        self.name = name
        self.cells: dict[tuple[str, str], tuple[str, ...]] = {}
        for x in source.objects:
            for a in target.objects:
                self.cells[(x, a)] = tuple(cells.get((x, a), ()))
        for key in cells:
            if key not in self.cells:
                self.cells[key] = tuple(cells[key])  # dangling; caught by the checker
        self._left = left_action
        self._right = right_action
        self._home: dict[str, tuple[str, str]] = {}
        self.duplicate_elements: list[str] = []
        for key, elems in self.cells.items():
            for c in elems:
                if c in self._home:
                    self.duplicate_elements.append(c)
                self._home[c] = key

    def cell(self, x: str, a: str) -> tuple[str, ...]:
        return self.cells.get((x, a), ())

    def home(self, c: str) -> tuple[str, str]:
        return self._home[c]

    def elements(self) -> Iterable[tuple[str, str, str]]:
        """All (x, a, c) triples in cell order."""
        for x in self.source.objects:
            for a in self.target.objects:
                for c in self.cells[(x, a)]:
                    yield x, a, c

    def _apply(self, table, key):
        if callable(table):
            return table(*key)
        try:
            return table[key]
        except KeyError:
            raise LookupError(f"{self.name}: action undefined for {key}") from None

    def left(self, h: str, c: str) -> str:
        """Act by a source morphism h: x' -> x on c in Het(x, a), yielding Het(x', a)."""
        return self._apply(self._left, (h, c))

    def right(self, k: str, c: str) -> str:
        """Act by a target morphism k: a -> a' on c in Het(x, a), yielding Het(x, a')."""
        return self._apply(self._right, (k, c))

    def __eq__(self, other) -> bool:
        """Extensional equality: same categories, cells, and action values."""
        if not isinstance(other, HetBifunctor):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        if self.cells != other.cells:
            return False
        for x, a, c in self.elements():
            for h in self.source.morphisms:
                if h.cod == x and self.left(h.name, c) != other.left(h.name, c):
                    return False
            for k in self.target.morphisms:
                if k.dom == a and self.right(k.name, c) != other.right(k.name, c):
                    return False
        return True

    def __repr__(self) -> str:
        total = sum(len(v) for v in self.cells.values())
        return (f"HetBifunctor({self.name!r}: {self.source.name} -/-> "
                f"{self.target.name}, {total} elements)")


def check_het_bifunctor(het: HetBifunctor) -> Report:
    """Validate the four action laws exhaustively; witnesses are (h, k, c) ids."""
    rep = Report(subject=f"het {het.name}")
    src, tgt = het.source, het.target

    rep.ran("structure")
    for c in het.duplicate_elements:
        rep.add("structure", (c,), "element id appears in more than one cell",
                kind="structural")
    objs = set(src.objects)
    tobjs = set(tgt.objects)
    for (x, a) in het.cells:
        if x not in objs:
            rep.add("structure", (x, a), "cell row is not a source object", kind="structural")
        if a not in tobjs:
            rep.add("structure", (x, a), "cell column is not a target object", kind="structural")
    if rep.structural_errors:
        return rep

    # Totality of both actions, and that results land in the declared cells.
    rep.ran("action-totality")
    rep.ran("action-cell")
    left_of: dict[str, list] = {}
    for m in src.morphisms:
        left_of.setdefault(m.cod, []).append(m)
    right_of: dict[str, list] = {}
    for m in tgt.morphisms:
        right_of.setdefault(m.dom, []).append(m)

    for x, a, c in het.elements():
        for h in left_of.get(x, ()):
            try:
                r = het.left(h.name, c)
            except LookupError:
                rep.add("action-totality", (h.name, c), "left action undefined",
                        kind="structural")
                continue
            if r not in het.cell(h.dom, a):
                rep.add("action-cell", (h.name, c, r),
                        f"left action does not land in cell ({h.dom}, {a})")
        for k in right_of.get(a, ()):
            try:
                r = het.right(k.name, c)
            except LookupError:
                rep.add("action-totality", (k.name, c), "right action undefined",
                        kind="structural")
                continue
            if r not in het.cell(x, k.cod):
                rep.add("action-cell", (k.name, c, r),
                        f"right action does not land in cell ({x}, {k.cod})")
    if not rep.ok:
        return rep

    rep.ran("identity-action")
    for x, a, c in het.elements():
        if het.left(src.identity_of(x), c) != c:
            rep.add("identity-action", (src.identity_of(x), c), "left identity action moves c")
        if het.right(tgt.identity_of(a), c) != c:
            rep.add("identity-action", (tgt.identity_of(a), c), "right identity action moves c")

    rep.ran("contravariant-functoriality")
    rep.ran("covariant-functoriality")
    rep.ran("commuting-actions")
    for x, a, c in het.elements():
        for h in left_of.get(x, ()):
            for h2 in left_of.get(h.dom, ()):
                lhs = het.left(src.compose(h.name, h2.name), c)
                rhs = het.left(h2.name, het.left(h.name, c))
                if lhs != rhs:
                    rep.add("contravariant-functoriality", (h.name, h2.name, c, lhs, rhs),
                            "(c.h).h' != c.(h.h')")
        for k in right_of.get(a, ()):
            for k2 in right_of.get(k.cod, ()):
                lhs = het.right(tgt.compose(k2.name, k.name), c)
                rhs = het.right(k2.name, het.right(k.name, c))
                if lhs != rhs:
                    rep.add("covariant-functoriality", (k.name, k2.name, c, lhs, rhs),
                            "(k'.k).c != k'.(k.c)")
        for h in left_of.get(x, ()):
            for k in right_of.get(a, ()):
                lhs = het.right(k.name, het.left(h.name, c))
                rhs = het.left(h.name, het.right(k.name, c))
                if lhs != rhs:
                    rep.add("commuting-actions", (h.name, k.name, c, lhs, rhs),
                            "(k.c).h != k.(c.h)")
    return rep


# ---------------------------------------------------------------------------
# Derived het-bifunctors

def hom_bifunctor(cat: FinCat) -> HetBifunctor:
    """The hom structure of a category viewed as het data from C to C."""
    cells = {(x, a): cat.hom(x, a) for x in cat.objects for a in cat.objects}
    return HetBifunctor(
        cat, cat, cells,
        left_action=lambda h, c: cat.compose(c, h),
        right_action=lambda k, c: cat.compose(k, c),
        name=f"Hom_{cat.name}")


def het_from_functor(fun: FunctorData, side: str) -> HetBifunctor:
    """Het data induced by a functor: hom cells out of (or into) its image.

    side="left" gives cells Hom(F x, a) from X to A; side="right" gives cells
    Hom(a, F x) from A to X.  Element ids pair the X coordinate with the
    underlying morphism id, since a non-injective functor makes the same
    morphism appear in several cells.
    """
    X, A = fun.source, fun.target
    if side == "left":
        cells = {(x, a): tuple(pair_id(x, u) for u in A.hom(fun.obj_map[x], a))
                 for x in X.objects for a in A.objects}

        def left(h: str, c: str) -> str:
            x, u = split_pair(c)
            return pair_id(X.dom(h), A.compose(u, fun.mor_map[h]))

        def right(k: str, c: str) -> str:
            x, u = split_pair(c)
            return pair_id(x, A.compose(k, u))

        return HetBifunctor(X, A, cells, left, right, name=f"Het_{fun.name}_left")

    if side == "right":
        cells = {(a, x): tuple(pair_id(x, u) for u in A.hom(a, fun.obj_map[x]))
                 for a in A.objects for x in X.objects}

        def left(h: str, c: str) -> str:  # h in A
            x, u = split_pair(c)
            return pair_id(x, A.compose(u, h))

        def right(k: str, c: str) -> str:  # k in X
            x, u = split_pair(c)
            return pair_id(X.cod(k), A.compose(fun.mor_map[k], u))

        return HetBifunctor(A, X, cells, left, right, name=f"Het_{fun.name}_right")

    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def reflective_het(ambient: FinCat, sub_objects: Iterable[str],
                   name: str | None = None) -> HetBifunctor:
    """Ambient morphisms with heads in a full subcategory, as het data.

    Source is the ambient category, target the full subcategory on the given
    objects; cells are the ambient hom-sets and both actions are ambient
    composition.
    """
    sub_objects = list(sub_objects)
    if not sub_objects:
        raise PreconditionError("sub_objects must be nonempty")
    sub, _ = full_subcategory(ambient, sub_objects)
    cells = {(b, a): ambient.hom(b, a) for b in ambient.objects for a in sub.objects}
    return HetBifunctor(
        ambient, sub, cells,
        left_action=lambda h, c: ambient.compose(c, h),
        right_action=lambda k, c: ambient.compose(k, c),
        name=name or f"Refl_{ambient.name}")


# ---------------------------------------------------------------------------
# Het natural transformations

@dataclass(frozen=True, eq=False)
class HetNatTransform:
    """A family of het elements between two functors with a common domain.

    source: F: X -> A, target: H: X -> B, relative to het data from A to B.
    Component at x lives in Het(F x, H x).
    """

    source: FunctorData
    target: FunctorData
    het: HetBifunctor
    components: Mapping[str, str]
    name: str = "phi"

    def component(self, x: str) -> str:
        return self.components[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HetNatTransform):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and dict(self.components) == dict(other.components))


def check_het_nat_transform(t: HetNatTransform) -> Report:
    """Naturality of a het transformation: both composites around each square agree."""
    rep = Report(subject=f"het nat transform {t.name}")
    F, H, het = t.source, t.target, t.het
    domain = F.source

    rep.ran("structure")
    for x in domain.objects:
        if x not in t.components:
            rep.add("structure", (x,), "component missing", kind="structural")
            continue
        fx, hx = F.obj_map[x], H.obj_map[x]
        if t.components[x] not in het.cell(fx, hx):
            rep.add("structure", (x, t.components[x]),
                    f"component not in cell ({fx}, {hx})", kind="structural")
    if rep.structural_errors:
        return rep

    rep.ran("het-naturality")
    for j in domain.morphisms:
        lhs = het.right(H.mor_map[j.name], t.components[j.dom])
        rhs = het.left(F.mor_map[j.name], t.components[j.cod])
        if lhs != rhs:
            rep.add("het-naturality", (j.name, lhs, rhs),
                    "het naturality square does not commute")
    return rep


def act_nat_transforms_on_het(alpha, t: HetNatTransform, beta) -> HetNatTransform:
    """Act on a het transformation by hom natural transformations on each side.

    alpha: F' -> F retunes the source side (contravariantly), beta: H -> H'
    the target side; the new component at x is beta_x . t_x . alpha_x.
    """
    from .core import NatTransform
    if not isinstance(alpha, NatTransform) or not isinstance(beta, NatTransform):
        raise TypeError("alpha and beta must be natural transformations")
    if alpha.target != t.source:
        raise ValueError("alpha must end at the het transformation's source functor")
    if beta.source != t.target:
        raise ValueError("beta must start at the het transformation's target functor")
    components = {
        x: t.het.right(beta.components[x], t.het.left(alpha.components[x], t.components[x]))
        for x in t.source.source.objects}
    return HetNatTransform(source=alpha.source, target=beta.target, het=t.het,
                           components=components, name=f"{beta.name}.{t.name}.{alpha.name}")
