"""Finite categories as explicit tables, plus functors and natural transformations.

Objects and morphisms are opaque string ids, unique within their category.
Composition tables are stored in diagram order: ``compose(g, f)`` means
"g after f" and is defined exactly when ``cod(f) == dom(g)``.

Values are immutable once built.  Construction is deliberately lenient so that
malformed tables can still be inspected; validation lives in
:func:`check_category`, :func:`check_functor` and :func:`check_nat_transform`,
which return reports instead of raising.  Structural problems (dangling ids,
missing table entries) are reported separately from law violations.

Pairs in product and functor categories use a canonical tuple encoding
``(a,b)`` so equality of derived ids is plain string equality.  Identity
morphisms are conventionally named ``id_<object>``; the constructors here and
the DSL both follow that convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple

DEFAULT_MAX_OBJECTS = 10_000
DEFAULT_MAX_MORPHISMS = 200_000


class CapacityError(Exception):
    """An enumeration would exceed the configured size guard."""


class PreconditionError(Exception):
    """An operation was called on input violating its stated precondition."""


class ConsistencyError(Exception):
    """An internal cross-check failed; indicates a bug or unverified input."""


# ---------------------------------------------------------------------------
# Reports

@dataclass(frozen=True)
class Violation:
    check: str
    witnesses: tuple[str, ...] = ()
    message: str = ""
    kind: str = "law"  # "law" | "structural"

    def __str__(self) -> str:
        w = ", ".join(self.witnesses)
        return f"[{self.kind}] {self.check} ({w}): {self.message}"


@dataclass
class Report:
    """Outcome of a validation pass: which checks ran and what they found."""

    subject: str
    checks: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def structural_errors(self) -> list[Violation]:
        return [v for v in self.violations if v.kind == "structural"]

    def ran(self, check: str) -> None:
        if check not in self.checks:
            self.checks.append(check)

    def add(self, check: str, witnesses: Iterable[str] = (), message: str = "",
            kind: str = "law") -> None:
        self.ran(check)
        self.violations.append(
            Violation(check, tuple(str(w) for w in witnesses), message, kind))

    def failed(self, check: str) -> list[Violation]:
        return [v for v in self.violations if v.check == check]

    def passed(self, check: str) -> bool:
        return check in self.checks and not self.failed(check)

    def merge(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.ran(prefix + c)
        for v in other.violations:
            self.violations.append(
                Violation(prefix + v.check, v.witnesses, v.message, v.kind))

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return f"{self.subject}: {status}"


# ---------------------------------------------------------------------------
# Tuple-encoded ids

def tuple_id(parts: Iterable[str]) -> str:
    return "(" + ",".join(parts) + ")"


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def split_tuple(s: str) -> tuple[str, ...]:
    """Split a tuple-encoded id at top level, respecting nested parentheses."""
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"not a tuple id: {s!r}")
    parts, depth, start = [], 0, 1
    for i in range(1, len(s) - 1):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(s[start:i])
            start = i + 1
    parts.append(s[start:len(s) - 1])
    return tuple(parts)


def split_pair(s: str) -> tuple[str, str]:
    parts = split_tuple(s)
    if len(parts) != 2:
        raise ValueError(f"not a pair id: {s!r}")
    return parts[0], parts[1]


def identity_name(obj: str) -> str:
    return f"id_{obj}"


# ---------------------------------------------------------------------------
# FinCat

class Morphism(NamedTuple):
    name: str
    dom: str
    cod: str


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category: object list, morphism list, identity and composition tables."""

    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identity: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]
    name: str = "C"

    def __post_init__(self):
        by_name: dict[str, Morphism] = {}
        dup: list[str] = []
        for m in self.morphisms:
            if m.name in by_name:
                dup.append(m.name)
            by_name[m.name] = m
        hom: dict[tuple[str, str], list[str]] = {}
        objset = set(self.objects)
        for m in self.morphisms:
            if m.dom in objset and m.cod in objset:
                hom.setdefault((m.dom, m.cod), []).append(m.name)
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_hom", hom)
        object.__setattr__(self, "_dup_morphisms", tuple(dup))
        ids = set(self.identity.values())
        object.__setattr__(self, "_identity_names", ids)

    # -- lookups ------------------------------------------------------------

    def morphism(self, name: str) -> Morphism:
        return self._by_name[name]

    def has_morphism(self, name: str) -> bool:
        return name in self._by_name

    def dom(self, name: str) -> str:
        return self._by_name[name].dom

    def cod(self, name: str) -> str:
        return self._by_name[name].cod

    def identity_of(self, obj: str) -> str:
        return self.identity[obj]

    def is_identity(self, name: str) -> bool:
        return name in self._identity_names

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return tuple(self._hom.get((x, y), ()))

    def compose(self, g: str, f: str) -> str:
        """Composite "g after f"; defined exactly when cod(f) == dom(g)."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise LookupError(
                f"{self.name}: no composite for ({g} . {f})") from None

    def morphism_names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.morphisms)

    def composable_pairs(self) -> Iterable[tuple[Morphism, Morphism]]:
        """All (g, f) with cod(f) == dom(g), in declaration order."""
        by_dom: dict[str, list[Morphism]] = {}
        for m in self.morphisms:
            by_dom.setdefault(m.dom, []).append(m)
        for f in self.morphisms:
            for g in by_dom.get(f.cod, ()):
                yield g, f

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (self.objects == other.objects
                and self.morphisms == other.morphisms
                and dict(self.identity) == dict(other.identity)
                and dict(self.composition) == dict(other.composition))

    def __repr__(self) -> str:
        return (f"FinCat({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


def make_category(name: str, objects: Iterable[str],
                  arrows: Iterable[tuple[str, str, str]] = (),
                  compose: Mapping[tuple[str, str], str] | None = None) -> FinCat:
    """Build a FinCat from non-identity data.

    ``arrows`` are (name, dom, cod) triples for the non-identity morphisms;
    ``compose`` gives composites of non-identity pairs.  Identities are added
    as ``id_<object>`` and all identity-involving composites are derived.
    """
    objects = tuple(objects)
    morphisms: list[Morphism] = [Morphism(identity_name(x), x, x) for x in objects]
    identity = {x: identity_name(x) for x in objects}
    morphisms.extend(Morphism(n, d, c) for n, d, c in arrows)
    table: dict[tuple[str, str], str] = {}
    for m in morphisms:
        table[(m.name, identity[m.dom])] = m.name
        table[(identity[m.cod], m.name)] = m.name
    if compose:
        for (g, f), h in compose.items():
            table[(g, f)] = h
    return FinCat(objects, tuple(morphisms), identity, table, name=name)


def check_category(cat: FinCat) -> Report:
    """Validate the category laws, reporting every violation with witnesses.

    Dangling references are structural errors and suppress the law checks,
    which could not run meaningfully on unresolvable tables.
    """
    rep = Report(subject=f"category {cat.name}")
    objset = set(cat.objects)

    rep.ran("structure")
    seen_obj = set()
    for x in cat.objects:
        if x in seen_obj:
            rep.add("structure", (x,), "duplicate object id", kind="structural")
        seen_obj.add(x)
    for d in cat._dup_morphisms:
        rep.add("structure", (d,), "duplicate morphism id", kind="structural")
    for m in cat.morphisms:
        if m.dom not in objset:
            rep.add("structure", (m.name, m.dom), "morphism dom is not a declared object",
                    kind="structural")
        if m.cod not in objset:
            rep.add("structure", (m.name, m.cod), "morphism cod is not a declared object",
                    kind="structural")
    for x, i in cat.identity.items():
        if x not in objset:
            rep.add("structure", (x,), "identity entry for unknown object", kind="structural")
        if not cat.has_morphism(i):
            rep.add("structure", (x, i), "identity entry is not a declared morphism",
                    kind="structural")
    for x in cat.objects:
        if x not in cat.identity:
            rep.add("structure", (x,), "object has no identity entry", kind="structural")
    for (g, f), h in cat.composition.items():
        for n in (g, f, h):
            if not cat.has_morphism(n):
                rep.add("structure", (g, f, h), f"composition entry references unknown morphism {n}",
                        kind="structural")
    if rep.structural_errors:
        return rep

    rep.ran("identity-endpoints")
    for x in cat.objects:
        i = cat.identity_of(x)
        if cat.dom(i) != x or cat.cod(i) != x:
            rep.add("identity-endpoints", (x, i), "identity is not an endomorphism of its object")

    rep.ran("composition-totality")
    rep.ran("composition-domain")
    rep.ran("endpoint-coherence")
    composable = set()
    for g, f in cat.composable_pairs():
        composable.add((g.name, f.name))
        if (g.name, f.name) not in cat.composition:
            rep.add("composition-totality", (g.name, f.name), "composable pair has no composite")
            continue
        h = cat.composition[(g.name, f.name)]
        if cat.dom(h) != f.dom or cat.cod(h) != g.cod:
            rep.add("endpoint-coherence", (g.name, f.name, h),
                    "composite endpoints disagree with dom(f), cod(g)")
    for (g, f) in cat.composition:
        if (g, f) not in composable:
            rep.add("composition-domain", (g, f), "composite defined for a non-composable pair")

    if not rep.ok:
        return rep

    rep.ran("identity-law")
    for m in cat.morphisms:
        left = cat.compose(cat.identity_of(m.cod), m.name)
        right = cat.compose(m.name, cat.identity_of(m.dom))
        if left != m.name:
            rep.add("identity-law", (m.name, left), "compose(id_cod, f) != f")
        if right != m.name:
            rep.add("identity-law", (m.name, right), "compose(f, id_dom) != f")

    rep.ran("associativity")
    by_dom: dict[str, list[Morphism]] = {}
    for m in cat.morphisms:
        by_dom.setdefault(m.dom, []).append(m)
    for f in cat.morphisms:
        for g in by_dom.get(f.cod, ()):
            gf = cat.compose(g.name, f.name)
            for h in by_dom.get(g.cod, ()):
                lhs = cat.compose(h.name, gf)
                rhs = cat.compose(cat.compose(h.name, g.name), f.name)
                if lhs != rhs:
                    rep.add("associativity", (h.name, g.name, f.name, lhs, rhs),
                            "h.(g.f) != (h.g).f")
    return rep


def opposite(cat: FinCat) -> FinCat:
    """Reverse all arrows; composition table transposes."""
    morphisms = tuple(Morphism(m.name, m.cod, m.dom) for m in cat.morphisms)
    composition = {(f, g): h for (g, f), h in cat.composition.items()}
    return FinCat(cat.objects, morphisms, dict(cat.identity), composition,
                  name=f"{cat.name}_op")


def full_subcategory(cat: FinCat, objects: Iterable[str],
                     name: str | None = None) -> tuple[FinCat, "FunctorData"]:
    """The full subcategory on a subset of objects, with its inclusion functor."""
    keep = [x for x in cat.objects if x in set(objects)]
    unknown = set(objects) - set(cat.objects)
    if unknown:
        raise PreconditionError(f"unknown object ids: {sorted(unknown)}")
    keepset = set(keep)
    morphisms = tuple(m for m in cat.morphisms if m.dom in keepset and m.cod in keepset)
    names = {m.name for m in morphisms}
    composition = {(g, f): h for (g, f), h in cat.composition.items()
                   if g in names and f in names}
    identity = {x: cat.identity_of(x) for x in keep}
    sub = FinCat(tuple(keep), morphisms, identity, composition,
                 name=name or f"{cat.name}_sub")
    incl = FunctorData(source=sub, target=cat,
                       obj_map={x: x for x in keep},
                       mor_map={m.name: m.name for m in morphisms},
                       name=f"incl_{sub.name}")
    return sub, incl


def _capacity(max_objects: int | None, max_morphisms: int | None) -> tuple[int, int]:
    return (DEFAULT_MAX_OBJECTS if max_objects is None else max_objects,
            DEFAULT_MAX_MORPHISMS if max_morphisms is None else max_morphisms)


def product_category(x_cat: FinCat, a_cat: FinCat, *,
                     max_objects: int | None = None,
                     max_morphisms: int | None = None,
                     ) -> tuple[FinCat, "FunctorData", "FunctorData"]:
    """Product category with componentwise composition, plus both projections.

    Object and morphism ids are tuple-encoded pairs; identity pairs follow the
    ``id_<object>`` convention rather than pairing the component identities.
    """
    max_objects, max_morphisms = _capacity(max_objects, max_morphisms)
    n_obj = len(x_cat.objects) * len(a_cat.objects)
    n_mor = len(x_cat.morphisms) * len(a_cat.morphisms)
    if n_obj > max_objects or n_mor > max_morphisms:
        raise CapacityError(
            f"product category would have {n_obj} objects / {n_mor} morphisms")

    objects = tuple(pair_id(x, a) for x in x_cat.objects for a in a_cat.objects)
    # canonical morphism order: identities first, in object order
    mor_name: dict[tuple[str, str], str] = {}
    morphisms: list[Morphism] = [
        Morphism(identity_name(o), o, o) for o in objects]
    for f in x_cat.morphisms:
        for k in a_cat.morphisms:
            if x_cat.is_identity(f.name) and a_cat.is_identity(k.name):
                mor_name[(f.name, k.name)] = identity_name(pair_id(f.dom, k.dom))
                continue
            name = pair_id(f.name, k.name)
            mor_name[(f.name, k.name)] = name
            morphisms.append(Morphism(name, pair_id(f.dom, k.dom), pair_id(f.cod, k.cod)))
    identity = {pair_id(x, a): identity_name(pair_id(x, a))
                for x in x_cat.objects for a in a_cat.objects}
    composition: dict[tuple[str, str], str] = {}
    for (g1, f1), h1 in x_cat.composition.items():
        for (g2, f2), h2 in a_cat.composition.items():
            composition[(mor_name[(g1, g2)], mor_name[(f1, f2)])] = mor_name[(h1, h2)]
    prod = FinCat(objects, tuple(morphisms), identity, composition,
                  name=f"{x_cat.name}x{a_cat.name}")
    proj1 = FunctorData(source=prod, target=x_cat,
                        obj_map={pair_id(x, a): x for x in x_cat.objects for a in a_cat.objects},
                        mor_map={mor_name[(f.name, k.name)]: f.name
                                 for f in x_cat.morphisms for k in a_cat.morphisms},
                        name="proj1")
    proj2 = FunctorData(source=prod, target=a_cat,
                        obj_map={pair_id(x, a): a for x in x_cat.objects for a in a_cat.objects},
                        mor_map={mor_name[(f.name, k.name)]: k.name
                                 for f in x_cat.morphisms for k in a_cat.morphisms},
                        name="proj2")
    return prod, proj1, proj2


def product_morphism_name(x_cat: FinCat, a_cat: FinCat, f: str, k: str) -> str:
    """Name of the pair (f, k) inside product_category(x_cat, a_cat)."""
    if x_cat.is_identity(f) and a_cat.is_identity(k):
        return identity_name(pair_id(x_cat.dom(f), a_cat.dom(k)))
    return pair_id(f, k)


# ---------------------------------------------------------------------------
# Functors

@dataclass(frozen=True, eq=False)
class FunctorData:
    source: FinCat
    target: FinCat
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]
    name: str = "F"

    def apply_obj(self, x: str) -> str:
        return self.obj_map[x]

    def apply_mor(self, f: str) -> str:
        return self.mor_map[f]

    def is_injective_on_objects(self) -> bool:
        vals = [self.obj_map[x] for x in self.source.objects if x in self.obj_map]
        return len(set(vals)) == len(vals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctorData):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and dict(self.obj_map) == dict(other.obj_map)
                and dict(self.mor_map) == dict(other.mor_map))

    def __repr__(self) -> str:
        return f"FunctorData({self.name!r}: {self.source.name} -> {self.target.name})"


def identity_functor(cat: FinCat) -> FunctorData:
    return FunctorData(source=cat, target=cat,
                       obj_map={x: x for x in cat.objects},
                       mor_map={m.name: m.name for m in cat.morphisms},
                       name=f"1_{cat.name}")


def compose_functors(outer: FunctorData, inner: FunctorData,
                     name: str | None = None) -> FunctorData:
    """The composite functor "outer after inner"."""
    if inner.target is not outer.source and inner.target != outer.source:
        raise PreconditionError("functors are not composable")
    return FunctorData(
        source=inner.source, target=outer.target,
        obj_map={x: outer.obj_map[inner.obj_map[x]] for x in inner.source.objects},
        mor_map={m.name: outer.mor_map[inner.mor_map[m.name]]
                 for m in inner.source.morphisms},
        name=name or f"{outer.name}.{inner.name}")


def check_functor(fun: FunctorData) -> Report:
    """Validate functor laws: totality, endpoint preservation, identities, composites."""
    rep = Report(subject=f"functor {fun.name}")
    src, tgt = fun.source, fun.target

    rep.ran("structure")
    for x in src.objects:
        if x not in fun.obj_map:
            rep.add("structure", (x,), "object map is not total", kind="structural")
        elif fun.obj_map[x] not in set(tgt.objects):
            rep.add("structure", (x, fun.obj_map[x]), "object image not in target",
                    kind="structural")
    for m in src.morphisms:
        if m.name not in fun.mor_map:
            rep.add("structure", (m.name,), "morphism map is not total", kind="structural")
        elif not tgt.has_morphism(fun.mor_map[m.name]):
            rep.add("structure", (m.name, fun.mor_map[m.name]),
                    "morphism image not in target", kind="structural")
    if rep.structural_errors:
        return rep

    rep.ran("endpoint-preservation")
    for m in src.morphisms:
        img = tgt.morphism(fun.mor_map[m.name])
        if img.dom != fun.obj_map[m.dom] or img.cod != fun.obj_map[m.cod]:
            rep.add("endpoint-preservation", (m.name, img.name),
                    "image endpoints disagree with mapped dom/cod")

    rep.ran("identity-preservation")
    for x in src.objects:
        img = fun.mor_map[src.identity_of(x)]
        expected = tgt.identity_of(fun.obj_map[x])
        if img != expected:
            rep.add("identity-preservation", (x, img, expected),
                    "identity mapped to a non-identity")

    rep.ran("composition-preservation")
    for (g, f), h in src.composition.items():
        try:
            lhs = tgt.compose(fun.mor_map[g], fun.mor_map[f])
        except LookupError:
            rep.add("composition-preservation", (g, f), "images are not composable")
            continue
        if lhs != fun.mor_map[h]:
            rep.add("composition-preservation", (g, f, lhs, fun.mor_map[h]),
                    "F(g.f) != F(g).F(f)")
    return rep


def image_subcategory(fun: FunctorData) -> tuple[FinCat, FunctorData]:
    """The image of a functor injective on objects, with inclusion into the target.

    Closure of the morphism image under composition is re-checked even though
    it follows from object-injectivity.
    """
    if not fun.is_injective_on_objects():
        raise PreconditionError(f"{fun.name} is not injective on objects")
    tgt = fun.target
    objects = []
    seen = set()
    for x in fun.source.objects:
        v = fun.obj_map[x]
        if v not in seen:
            seen.add(v)
            objects.append(v)
    mor_names: list[str] = []
    mor_seen = set()
    for m in fun.source.morphisms:
        v = fun.mor_map[m.name]
        if v not in mor_seen:
            mor_seen.add(v)
            mor_names.append(v)
    for g in mor_names:
        for f in mor_names:
            if tgt.cod(f) == tgt.dom(g):
                h = tgt.compose(g, f)
                if h not in mor_seen:
                    raise ConsistencyError(
                        f"image of {fun.name} not closed under composition: "
                        f"({g} . {f}) = {h}")
    morphisms = tuple(tgt.morphism(n) for n in mor_names)
    identity = {x: tgt.identity_of(x) for x in objects}
    composition = {(g, f): h for (g, f), h in tgt.composition.items()
                   if g in mor_seen and f in mor_seen}
    img = FinCat(tuple(objects), morphisms, identity, composition,
                 name=f"Im_{fun.name}")
    incl = FunctorData(source=img, target=tgt,
                       obj_map={x: x for x in objects},
                       mor_map={n: n for n in mor_names},
                       name=f"incl_Im_{fun.name}")
    return img, incl


# ---------------------------------------------------------------------------
# Natural transformations and functor categories

@dataclass(frozen=True, eq=False)
class NatTransform:
    source: FunctorData
    target: FunctorData
    components: Mapping[str, str]
    name: str = "t"

    def component(self, x: str) -> str:
        return self.components[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, NatTransform):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and dict(self.components) == dict(other.components))


def check_nat_transform(t: NatTransform) -> Report:
    rep = Report(subject=f"nat transform {t.name}")
    F, H = t.source, t.target
    cat = F.target

    rep.ran("structure")
    for x in F.source.objects:
        if x not in t.components:
            rep.add("structure", (x,), "component missing", kind="structural")
        elif not cat.has_morphism(t.components[x]):
            rep.add("structure", (x, t.components[x]), "component not in target category",
                    kind="structural")
    if rep.structural_errors:
        return rep

    rep.ran("component-endpoints")
    for x in F.source.objects:
        c = cat.morphism(t.components[x])
        if c.dom != F.obj_map[x] or c.cod != H.obj_map[x]:
            rep.add("component-endpoints", (x, c.name), "component is not F(x) -> H(x)")
    if not rep.ok:
        return rep

    rep.ran("naturality")
    for m in F.source.morphisms:
        lhs = cat.compose(t.components[m.cod], F.mor_map[m.name])
        rhs = cat.compose(H.mor_map[m.name], t.components[m.dom])
        if lhs != rhs:
            rep.add("naturality", (m.name, lhs, rhs), "naturality square does not commute")
    return rep


@dataclass
class FunctorCategory:
    """A functor category together with indexes back to the enumerated data."""

    cat: FinCat
    functors: dict[str, FunctorData]
    transforms: dict[str, NatTransform]

    def functor_id(self, fd: FunctorData) -> str:
        for oid, g in self.functors.items():
            if (dict(g.obj_map) == dict(fd.obj_map)
                    and dict(g.mor_map) == dict(fd.mor_map)):
                return oid
        raise LookupError("functor is not an object of this functor category")

    def transform_id(self, src_id: str, tgt_id: str, components: Mapping[str, str]) -> str:
        key = (src_id, tgt_id, tuple(sorted(components.items())))
        return self._tindex[key]


def _enumerate_functors(d_cat: FinCat, c_cat: FinCat) -> Iterable[FunctorData]:
    """All functors d_cat -> c_cat, by backtracking with early law pruning."""
    non_id = [m for m in d_cat.morphisms if not d_cat.is_identity(m.name)]
    entries = [(g, f, h) for (g, f), h in d_cat.composition.items()
               if not d_cat.is_identity(g) and not d_cat.is_identity(f)]

    for combo in itertools.product(c_cat.objects, repeat=len(d_cat.objects)):
        obj_map = dict(zip(d_cat.objects, combo))
        mor_map = {d_cat.identity_of(x): c_cat.identity_of(obj_map[x])
                   for x in d_cat.objects}

        def assign(i: int):
            if i == len(non_id):
                yield FunctorData(source=d_cat, target=c_cat,
                                  obj_map=dict(obj_map), mor_map=dict(mor_map))
                return
            m = non_id[i]
            for cand in c_cat.hom(obj_map[m.dom], obj_map[m.cod]):
                mor_map[m.name] = cand
                ok = True
                for (g, f, h) in entries:
                    if g in mor_map and f in mor_map and h in mor_map:
                        if c_cat.compose(mor_map[g], mor_map[f]) != mor_map[h]:
                            ok = False
                            break
                if ok:
                    yield from assign(i + 1)
            mor_map.pop(m.name, None)

        yield from assign(0)


def _nat_transform_components(d_cat: FinCat, c_cat: FinCat,
                              F: FunctorData, H: FunctorData) -> Iterable[dict[str, str]]:
    choices = [c_cat.hom(F.obj_map[x], H.obj_map[x]) for x in d_cat.objects]
    non_id = [m for m in d_cat.morphisms if not d_cat.is_identity(m.name)]
    for combo in itertools.product(*choices):
        comp = dict(zip(d_cat.objects, combo))
        if all(c_cat.compose(comp[m.cod], F.mor_map[m.name])
               == c_cat.compose(H.mor_map[m.name], comp[m.dom]) for m in non_id):
            yield comp


def functor_category(d_cat: FinCat, c_cat: FinCat, *,
                     max_objects: int | None = None,
                     max_morphisms: int | None = None) -> FunctorCategory:
    """Enumerate the category of all functors d_cat -> c_cat and all natural
    transformations between them.

    Functor categories explode combinatorially, so the enumeration aborts with
    a CapacityError once the configured guard is exceeded.
    """
    max_objects, max_morphisms = _capacity(max_objects, max_morphisms)
    functors: dict[str, FunctorData] = {}
    for fd in _enumerate_functors(d_cat, c_cat):
        oid = f"F{len(functors)}"
        functors[oid] = FunctorData(fd.source, fd.target, fd.obj_map, fd.mor_map, name=oid)
        if len(functors) > max_objects:
            raise CapacityError(f"functor category exceeds {max_objects} objects")

    transforms: dict[str, NatTransform] = {}
    tindex: dict[tuple, str] = {}
    identity: dict[str, str] = {}
    counter = 0
    obj_ids = list(functors)
    # canonical morphism order: identity transformations first
    morphisms: list[Morphism] = []
    for oid in obj_ids:
        F = functors[oid]
        tid = identity_name(oid)
        comp = {x: c_cat.identity_of(F.obj_map[x]) for x in d_cat.objects}
        identity[oid] = tid
        transforms[tid] = NatTransform(F, F, comp, name=tid)
        tindex[(oid, oid, tuple(sorted(comp.items())))] = tid
        morphisms.append(Morphism(tid, oid, oid))
    for src_id in obj_ids:
        for tgt_id in obj_ids:
            F, H = functors[src_id], functors[tgt_id]
            for comp in _nat_transform_components(d_cat, c_cat, F, H):
                key = (src_id, tgt_id, tuple(sorted(comp.items())))
                if key in tindex:
                    continue
                tid = f"n{counter}"
                counter += 1
                transforms[tid] = NatTransform(F, H, comp, name=tid)
                tindex[key] = tid
                morphisms.append(Morphism(tid, src_id, tgt_id))
                if len(morphisms) > max_morphisms:
                    raise CapacityError(
                        f"functor category exceeds {max_morphisms} morphisms")

    composition: dict[tuple[str, str], str] = {}
    for f_mor in morphisms:
        for g_mor in morphisms:
            if f_mor.cod != g_mor.dom:
                continue
            t1, t2 = transforms[f_mor.name], transforms[g_mor.name]
            comp = {x: c_cat.compose(t2.components[x], t1.components[x])
                    for x in d_cat.objects}
            key = (f_mor.dom, g_mor.cod, tuple(sorted(comp.items())))
            composition[(g_mor.name, f_mor.name)] = tindex[key]

    cat = FinCat(tuple(obj_ids), tuple(morphisms), identity, composition,
                 name=f"Fun_{d_cat.name}_{c_cat.name}")
    fc = FunctorCategory(cat=cat, functors=functors, transforms=transforms)
    fc._tindex = tindex
    return fc
