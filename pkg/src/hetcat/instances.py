"""Finite, executable instance builders: set skeletons, diagram shapes,
product/limit/colimit het data, order and monoid categories, the Pacioli
group reflection, and Freyd parsing of endo-adjunctions.

Everything here is desk-scale and exhaustively enumerable.  The limit and
colimit oracles (compatible tuples, union-find quotients) are deliberately
separate code paths from the representability search so the two can be
compared in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .core import (CapacityError, ConsistencyError, FinCat, FunctorData,
                   FunctorCategory, Morphism, PreconditionError, Report,
                   full_subcategory, functor_category, identity_name,
                   make_category, pair_id, product_category, split_tuple,
                   tuple_id)
from .het import HetBifunctor, het_from_functor, reflective_het
from .adjunction import (Adjunction, SynthesisFailure, check_adjunction,
                         make_adjunction, synthesize_adjunction)
from .represent import find_representation


# ---------------------------------------------------------------------------
# Finite set skeleton

def _fun_name(dom_size: int, cod_size: int, vals: tuple[int, ...]) -> str:
    if dom_size == cod_size and vals == tuple(range(dom_size)):
        return identity_name(f"s{dom_size}")
    suffix = "".join(f"_{v}" for v in vals)
    return f"m{dom_size}to{cod_size}{suffix}"


@dataclass
class FinSetSkeleton:
    """The category of sets {0..k-1} for k up to a bound, with all functions.

    Morphisms are encoded by their value tuples; ``values`` decodes them back.
    """

    bound: int
    cat: FinCat
    values: dict[str, tuple[int, ...]]
    sizes: dict[str, int]

    def obj(self, k: int) -> str:
        return f"s{k}"

    def size(self, obj: str) -> int:
        return self.sizes[obj]

    def mor(self, dom_size: int, cod_size: int, vals: Iterable[int]) -> str:
        name = _fun_name(dom_size, cod_size, tuple(vals))
        if name not in self.values:
            raise LookupError(f"no such function morphism: {name}")
        return name


def finset(n: int, *, max_morphisms: int | None = None) -> FinSetSkeleton:
    """Skeleton of finite sets with objects 0..n; hom(m, k) has k^m elements."""
    if n < 0:
        raise PreconditionError("bound must be >= 0")
    from .core import _capacity
    _, max_morphisms = _capacity(None, max_morphisms)
    total = sum(k ** m if (k, m) != (0, 0) else 1
                for m in range(n + 1) for k in range(n + 1))
    if total > max_morphisms:
        raise CapacityError(f"finset({n}) would have {total} morphisms")

    objects = tuple(f"s{k}" for k in range(n + 1))
    # canonical morphism order: identities first, then by (dom, cod, values)
    morphisms: list[Morphism] = [
        Morphism(identity_name(f"s{k}"), f"s{k}", f"s{k}") for k in range(n + 1)]
    values: dict[str, tuple[int, ...]] = {
        identity_name(f"s{k}"): tuple(range(k)) for k in range(n + 1)}
    for m in range(n + 1):
        for k in range(n + 1):
            for vals in itertools.product(range(k), repeat=m):
                name = _fun_name(m, k, vals)
                if name not in values:
                    morphisms.append(Morphism(name, f"s{m}", f"s{k}"))
                    values[name] = vals
    identity = {f"s{k}": identity_name(f"s{k}") for k in range(n + 1)}
    composition: dict[tuple[str, str], str] = {}
    sizes = {f"s{k}": k for k in range(n + 1)}
    dims = {name: (sizes[mor.dom], sizes[mor.cod])
            for name, mor in ((m.name, m) for m in morphisms)}
    for f_name, f_vals in values.items():
        fm, fk = dims[f_name]
        for g_name, g_vals in values.items():
            gm, gk = dims[g_name]
            if gm != fk:
                continue
            comp = tuple(g_vals[v] for v in f_vals)
            composition[(g_name, f_name)] = _fun_name(fm, gk, comp)
    cat = FinCat(objects, tuple(morphisms), identity, composition,
                 name=f"FinSet{n}")
    return FinSetSkeleton(bound=n, cat=cat, values=values, sizes=sizes)


# ---------------------------------------------------------------------------
# Diagram shapes

SHAPKIND = ("discrete", "single-arrow", "parallel-pair", "span", "cospan")


def shape(name: str) -> FinCat:
    """Named small diagram categories: discrete-k, single-arrow,
    parallel-pair, span, cospan."""
    if name.startswith("discrete-"):
        k = int(name.split("-")[1])
        return make_category(name, [f"d{i}" for i in range(k)])
    if name == "single-arrow":
        return make_category(name, ["i0", "i1"], [("u", "i0", "i1")])
    if name == "parallel-pair":
        return make_category(name, ["i0", "i1"],
                             [("u", "i0", "i1"), ("v", "i0", "i1")])
    if name == "span":
        return make_category(name, ["r", "s", "t"],
                             [("u", "r", "s"), ("v", "r", "t")])
    if name == "cospan":
        return make_category(name, ["r", "s", "t"],
                             [("u", "s", "r"), ("v", "t", "r")])
    raise PreconditionError(f"unknown shape {name!r}")


SHAPE_NAMES = ("discrete-2", "single-arrow", "parallel-pair", "span", "cospan")


# ---------------------------------------------------------------------------
# Product het: cones from a set to a pair of sets

@dataclass
class ProductHet:
    het: HetBifunctor
    skeleton: FinSetSkeleton
    pair_cat: FinCat


def product_het(n: int) -> ProductHet:
    """Cones (f1, f2): W => (X, Y), encoded as the pair morphisms (W,W) -> (X,Y)
    of the product category; actions are pre/post composition there.

    The full adjunction exists only at bound <= 1: the right representing
    object for (X, Y) is the size X*Y set, which escapes any larger bound, so
    higher bounds give genuinely partial representability.
    """
    fs = finset(n)
    pair_cat, _, _ = product_category(fs.cat, fs.cat)
    diag_mor = {m.name: _product_pair_name(fs.cat, m.name, m.name)
                for m in fs.cat.morphisms}

    cells = {}
    for w in fs.cat.objects:
        ww = pair_id(w, w)
        for pa in pair_cat.objects:
            cells[(w, pa)] = pair_cat.hom(ww, pa)

    het = HetBifunctor(
        fs.cat, pair_cat, cells,
        left_action=lambda h, c: pair_cat.compose(c, diag_mor[h]),
        right_action=lambda k, c: pair_cat.compose(k, c),
        name=f"Cones{n}")
    return ProductHet(het=het, skeleton=fs, pair_cat=pair_cat)


def _product_pair_name(x_cat: FinCat, f: str, k: str) -> str:
    from .core import product_morphism_name
    return product_morphism_name(x_cat, x_cat, f, k)


# ---------------------------------------------------------------------------
# Limit and colimit het data over diagram shapes

@dataclass
class DiagramHet:
    """Het data between a set skeleton and a category of diagrams.

    kind="limit": cells are cones W => D; the set side is the het source.
    kind="colimit": cells are cocones D => Z; the set side is the het target.
    The set skeleton bound is the square of the component bound so the
    representing objects for the shipped shapes stay inside it.
    """

    kind: str
    shape: FinCat
    skeleton: FinSetSkeleton
    component_cat: FinCat
    diagrams: FunctorCategory
    het: HetBifunctor


def _cones(big: FinCat, sh: FinCat, diagram: FunctorData, w: str) -> list[tuple[str, ...]]:
    arrows = [m for m in sh.morphisms if not sh.is_identity(m.name)]
    objs = sh.objects
    out: list[tuple[str, ...]] = []
    comp: dict[str, str] = {}

    def rec(idx: int):
        if idx == len(objs):
            out.append(tuple(comp[o] for o in objs))
            return
        o = objs[idx]
        for c in big.hom(w, diagram.obj_map[o]):
            comp[o] = c
            if all(big.compose(diagram.mor_map[m.name], comp[m.dom]) == comp[m.cod]
                   for m in arrows if m.dom in comp and m.cod in comp):
                rec(idx + 1)
        comp.pop(o, None)

    rec(0)
    return out


def _cocones(big: FinCat, sh: FinCat, diagram: FunctorData, z: str) -> list[tuple[str, ...]]:
    arrows = [m for m in sh.morphisms if not sh.is_identity(m.name)]
    objs = sh.objects
    out: list[tuple[str, ...]] = []
    comp: dict[str, str] = {}

    def rec(idx: int):
        if idx == len(objs):
            out.append(tuple(comp[o] for o in objs))
            return
        o = objs[idx]
        for c in big.hom(diagram.obj_map[o], z):
            comp[o] = c
            if all(big.compose(comp[m.cod], diagram.mor_map[m.name]) == comp[m.dom]
                   for m in arrows if m.dom in comp and m.cod in comp):
                rec(idx + 1)
        comp.pop(o, None)

    rec(0)
    return out


@lru_cache(maxsize=None)
def _diagram_base(shape_name: str, n: int, max_objects: int | None, max_morphisms: int | None):
    """Shared pieces of the limit and colimit constructions for one shape.

    Everything returned is immutable by convention, so caching is safe; the
    functor category enumeration is the expensive part.
    """
    sh = shape(shape_name)
    big = finset(n * n)
    small, _ = full_subcategory(big.cat, [f"s{k}" for k in range(n + 1)],
                                name=f"FinSet{n}")
    fc = functor_category(sh, small, max_objects=max_objects,
                          max_morphisms=max_morphisms)
    return sh, big, small, fc


def limit_het(shape_name: str, n: int = 2, *,
              max_objects: int | None = None, max_morphisms: int | None = None) -> DiagramHet:
    """Cones from sets to diagrams of a given shape, with diagram components
    bounded by n and the set side bounded by n*n."""
    sh, big, small, fc = _diagram_base(shape_name, n, max_objects, max_morphisms)

    cells: dict[tuple[str, str], list[str]] = {}
    for w in big.cat.objects:
        for d_id, diagram in fc.functors.items():
            cells[(w, d_id)] = [tuple_id((d_id,) + comps)
                                for comps in _cones(big.cat, sh, diagram, w)]

    objs = sh.objects

    def left(h: str, c: str) -> str:
        parts = split_tuple(c)
        comps = tuple(big.cat.compose(p, h) for p in parts[1:])
        return tuple_id((parts[0],) + comps)

    def right(t: str, c: str) -> str:
        parts = split_tuple(c)
        nt = fc.transforms[t]
        d_new = fc.cat.cod(t)
        comps = tuple(big.cat.compose(nt.components[o], p)
                      for o, p in zip(objs, parts[1:]))
        return tuple_id((d_new,) + comps)

    het = HetBifunctor(big.cat, fc.cat, cells, left, right,
                       name=f"Cones_{shape_name}_{n}")
    return DiagramHet(kind="limit", shape=sh, skeleton=big, component_cat=small,
                      diagrams=fc, het=het)


def colimit_het(shape_name: str, n: int = 2, *,
                max_objects: int | None = None, max_morphisms: int | None = None) -> DiagramHet:
    """Cocones from diagrams of a given shape to sets; bounds as in limit_het."""
    sh, big, small, fc = _diagram_base(shape_name, n, max_objects, max_morphisms)

    cells: dict[tuple[str, str], list[str]] = {}
    for d_id, diagram in fc.functors.items():
        for z in big.cat.objects:
            cells[(d_id, z)] = [tuple_id((d_id,) + comps)
                                for comps in _cocones(big.cat, sh, diagram, z)]

    objs = sh.objects

    def left(t: str, c: str) -> str:
        parts = split_tuple(c)
        nt = fc.transforms[t]
        d_new = fc.cat.dom(t)
        comps = tuple(big.cat.compose(p, nt.components[o])
                      for o, p in zip(objs, parts[1:]))
        return tuple_id((d_new,) + comps)

    def right(k: str, c: str) -> str:
        parts = split_tuple(c)
        comps = tuple(big.cat.compose(k, p) for p in parts[1:])
        return tuple_id((parts[0],) + comps)

    het = HetBifunctor(fc.cat, big.cat, cells, left, right,
                       name=f"Cocones_{shape_name}_{n}")
    return DiagramHet(kind="colimit", shape=sh, skeleton=big, component_cat=small,
                      diagrams=fc, het=het)


def limit_size(dh: DiagramHet, diagram_id: str) -> int:
    """Independent oracle: count compatible tuples of the diagram carriers."""
    diagram = dh.diagrams.functors[diagram_id]
    sh, fs = dh.shape, dh.skeleton
    objs = sh.objects
    arrows = [m for m in sh.morphisms if not sh.is_identity(m.name)]
    sizes = [fs.size(diagram.obj_map[o]) for o in objs]
    pos = {o: i for i, o in enumerate(objs)}
    count = 0
    for tup in itertools.product(*(range(s) for s in sizes)):
        if all(fs.values[diagram.mor_map[m.name]][tup[pos[m.dom]]] == tup[pos[m.cod]]
               for m in arrows):
            count += 1
    return count


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[rj] = ri


def colimit_size(dh: DiagramHet, diagram_id: str) -> int:
    """Independent oracle: union-find quotient of the disjoint union by the
    relation identifying each point with its images along the diagram arrows."""
    diagram = dh.diagrams.functors[diagram_id]
    sh, fs = dh.shape, dh.skeleton
    objs = sh.objects
    sizes = [fs.size(diagram.obj_map[o]) for o in objs]
    offset = {}
    total = 0
    for o, s in zip(objs, sizes):
        offset[o] = total
        total += s
    dsu = _DSU(total)
    for m in sh.morphisms:
        if sh.is_identity(m.name):
            continue
        vals = fs.values[diagram.mor_map[m.name]]
        for x in range(sizes[objs.index(m.dom)]):
            dsu.union(offset[m.dom] + x, offset[m.cod] + vals[x])
    return len({dsu.find(i) for i in range(total)})


# ---------------------------------------------------------------------------
# Finite orders and the forgetful-functor het data

@dataclass(frozen=True)
class OrderStructure:
    name: str
    size: int
    relation: frozenset[tuple[int, int]]

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.relation


def _relation_bits(rel: frozenset, size: int) -> str:
    return "".join("1" if (i, j) in rel else "0"
                   for i in range(size) for j in range(size))


def _is_transitive(rel: set[tuple[int, int]]) -> bool:
    return all((i, l) in rel for (i, j) in rel for (k, l) in rel if j == k)


def order_family(kind: str, max_size: int) -> list[OrderStructure]:
    """All preorders (or posets) on carriers 0..max_size, in a deterministic
    order: by size, then by relation matrix bits, so discrete orders come
    first and the indiscrete preorder last within each size."""
    if kind not in ("preorder", "poset"):
        raise PreconditionError(f"kind must be 'preorder' or 'poset', got {kind!r}")
    out = []
    for size in range(max_size + 1):
        nonrefl = [(i, j) for i in range(size) for j in range(size) if i != j]
        found = []
        for bits in itertools.product((0, 1), repeat=len(nonrefl)):
            rel = {(i, i) for i in range(size)}
            rel.update(p for p, b in zip(nonrefl, bits) if b)
            if not _is_transitive(rel):
                continue
            if kind == "poset" and any((j, i) in rel for (i, j) in rel if i != j):
                continue
            found.append(frozenset(rel))
        found.sort(key=lambda r: _relation_bits(r, size))
        for rel in found:
            name = f"{kind}{size}_{_relation_bits(rel, size)}" if size else f"{kind}0_e"
            out.append(OrderStructure(name, size, rel))
    return out


@dataclass
class AlgebraCategory:
    """A category of explicitly tabulated structures and structure-preserving maps."""

    cat: FinCat
    structures: dict[str, object]
    values: dict[str, tuple[int, ...]]
    encode: dict[tuple[str, str, tuple[int, ...]], str]

    def mor(self, dom: str, cod: str, vals: Iterable[int]) -> str:
        return self.encode[(dom, cod, tuple(vals))]


def _algebra_category(name: str, structures: Sequence, hom_values) -> AlgebraCategory:
    """Assemble a category from structures and an enumerator of hom value tuples."""
    sizes = {s.name: s.size for s in structures}
    objects = [s.name for s in structures]
    struct_by_name = {s.name: s for s in structures}
    arrows: list[tuple[str, str, str]] = []
    values: dict[str, tuple[int, ...]] = {}
    encode: dict[tuple[str, str, tuple[int, ...]], str] = {}
    for a in structures:
        for b in structures:
            for vals in hom_values(a, b):
                vals = tuple(vals)
                if a.name == b.name and vals == tuple(range(a.size)):
                    mor_name = identity_name(a.name)
                else:
                    suffix = "".join(f"_{v}" for v in vals)
                    mor_name = f"{a.name}__to__{b.name}{suffix}"
                    arrows.append((mor_name, a.name, b.name))
                values[mor_name] = vals
                encode[(a.name, b.name, vals)] = mor_name
    compose: dict[tuple[str, str], str] = {}
    endpoint: dict[str, tuple[str, str]] = {}
    for (d, c, v), n in encode.items():
        endpoint[n] = (d, c)
    for f_name, f_vals in values.items():
        fd, fc_ = endpoint[f_name]
        for g_name, g_vals in values.items():
            gd, gc = endpoint[g_name]
            if gd != fc_:
                continue
            comp = tuple(g_vals[v] for v in f_vals)
            compose[(g_name, f_name)] = encode[(fd, gc, comp)]
    cat = make_category(name, objects, arrows,
                        {k: v for k, v in compose.items()})
    return AlgebraCategory(cat=cat, structures=struct_by_name, values=values,
                           encode=encode)


def _monotone_maps(a: OrderStructure, b: OrderStructure):
    for vals in itertools.product(range(b.size), repeat=a.size):
        if all((vals[i], vals[j]) in b.relation for (i, j) in a.relation):
            yield vals


def order_category(structures: Sequence[OrderStructure], name: str) -> AlgebraCategory:
    return _algebra_category(name, structures, _monotone_maps)


@dataclass
class ForgetfulHets:
    """Both het directions between a set skeleton and a family of orders."""

    kind: str
    skeleton: FinSetSkeleton
    orders: AlgebraCategory
    set_to_order: HetBifunctor
    order_to_set: HetBifunctor


def preorder_forgetful_hets(kind: str = "preorder", n: int = 2,
                            family: Sequence[OrderStructure] | None = None
                            ) -> ForgetfulHets:
    """Het data for the forgetful functor story on finite (pre)orders.

    set_to_order: cells are plain functions from a set into an order's
    carrier.  order_to_set: cells are plain functions from a carrier to a set.
    Element ids pair the order object with the underlying function morphism,
    since carriers of different orders share sizes.
    """
    fs = finset(n)
    structures = list(family) if family is not None else order_family(kind, n)
    for s in structures:
        if s.size > n:
            raise PreconditionError(f"order {s.name} exceeds the set bound {n}")
    orders = order_category(structures, name=f"{kind.capitalize()}Cat")
    ocat = orders.cat

    def decode(c: str) -> tuple[str, str]:
        return tuple(split_tuple(c))  # (order object, function morphism)

    sto_cells = {}
    for m in range(n + 1):
        w = f"s{m}"
        for s in structures:
            sto_cells[(w, s.name)] = tuple(
                pair_id(s.name, _fun_name(m, s.size, vals))
                for vals in itertools.product(range(s.size), repeat=m))

    def sto_left(h: str, c: str) -> str:
        o, u = decode(c)
        return pair_id(o, fs.cat.compose(u, h))

    def sto_right(k: str, c: str) -> str:
        o, u = decode(c)
        k_vals = orders.values[k]
        cod = ocat.cod(k)
        new_vals = tuple(k_vals[v] for v in fs.values[u])
        return pair_id(cod, _fun_name(len(fs.values[u]),
                                      orders.structures[cod].size, new_vals))

    set_to_order = HetBifunctor(fs.cat, ocat, sto_cells, sto_left, sto_right,
                                name=f"SetTo{kind.capitalize()}")

    ots_cells = {}
    for s in structures:
        for m in range(n + 1):
            ots_cells[(s.name, f"s{m}")] = tuple(
                pair_id(s.name, _fun_name(s.size, m, vals))
                for vals in itertools.product(range(m), repeat=s.size))

    def ots_left(h: str, c: str) -> str:
        o, u = decode(c)
        h_vals = orders.values[h]
        dom = ocat.dom(h)
        u_vals = fs.values[u]
        new_vals = tuple(u_vals[v] for v in h_vals)
        return pair_id(dom, _fun_name(orders.structures[dom].size,
                                      fs.size(fs.cat.cod(u)), new_vals))

    def ots_right(k: str, c: str) -> str:
        o, u = decode(c)
        return pair_id(o, fs.cat.compose(k, u))

    order_to_set = HetBifunctor(ocat, fs.cat, ots_cells, ots_left, ots_right,
                                name=f"{kind.capitalize()}ToSet")
    return ForgetfulHets(kind=kind, skeleton=fs, orders=orders,
                         set_to_order=set_to_order, order_to_set=order_to_set)


# ---------------------------------------------------------------------------
# Commutative monoids and the Pacioli group reflection

@dataclass(frozen=True)
class MonoidStructure:
    name: str
    table: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.table)

    def add(self, i: int, j: int) -> int:
        return self.table[i][j]

    @property
    def unit(self) -> int:
        for e in range(self.size):
            if all(self.add(e, x) == x and self.add(x, e) == x
                   for x in range(self.size)):
                return e
        raise ValueError(f"{self.name} has no unit element")

    def is_group(self) -> bool:
        e = self.unit
        return all(any(self.add(x, y) == e for y in range(self.size))
                   for x in range(self.size))

    def neg(self, x: int) -> int:
        e = self.unit
        for y in range(self.size):
            if self.add(x, y) == e:
                return y
        raise ValueError(f"{self.name}: element {x} has no inverse")


def validate_monoid(m: MonoidStructure) -> None:
    """Reject non-commutative, non-associative, or unit-less tables."""
    n = m.size
    if any(len(row) != n for row in m.table):
        raise PreconditionError(f"{m.name}: table is not square")
    if any(v < 0 or v >= n for row in m.table for v in row):
        raise PreconditionError(f"{m.name}: table entry out of range")
    for i in range(n):
        for j in range(n):
            if m.add(i, j) != m.add(j, i):
                raise PreconditionError(f"{m.name}: not commutative at ({i},{j})")
            for k in range(n):
                if m.add(m.add(i, j), k) != m.add(i, m.add(j, k)):
                    raise PreconditionError(f"{m.name}: not associative at ({i},{j},{k})")
    m.unit  # raises if absent


@dataclass
class PacioliGroup:
    """Group of differences of a commutative monoid: pairs (debit, credit)
    modulo the relation holding when some z equalizes the cross sums."""

    source: MonoidStructure
    size: int
    table: tuple[tuple[int, ...], ...]
    class_of_pair: dict[tuple[int, int], int]
    name: str

    def pair_class(self, debit: int, credit: int) -> int:
        return self.class_of_pair[(debit, credit)]


def pacioli_group(m: MonoidStructure) -> PacioliGroup:
    """Quotient the pairs by generating the cross-sum relation over every
    (pair, pair, z) triple and closing transitively with union-find."""
    n = m.size
    pairs = [(x, y) for x in range(n) for y in range(n)]
    index = {p: i for i, p in enumerate(pairs)}
    dsu = _DSU(len(pairs))
    for (x, y) in pairs:
        for (x2, y2) in pairs:
            if any(m.add(m.add(x, y2), z) == m.add(m.add(x2, y), z)
                   for z in range(n)):
                dsu.union(index[(x, y)], index[(x2, y2)])
    roots: dict[int, int] = {}
    class_of_pair: dict[tuple[int, int], int] = {}
    for p in pairs:  # pairs are in lex order, so class ids follow min members
        r = dsu.find(index[p])
        if r not in roots:
            roots[r] = len(roots)
        class_of_pair[p] = roots[r]
    size = len(roots)
    reps: list[tuple[int, int]] = [None] * size
    for p in pairs:
        k = class_of_pair[p]
        if reps[k] is None:
            reps[k] = p
    table = tuple(
        tuple(class_of_pair[(m.add(reps[i][0], reps[j][0]),
                             m.add(reps[i][1], reps[j][1]))]
              for j in range(size))
        for i in range(size))
    return PacioliGroup(source=m, size=size, table=table,
                        class_of_pair=class_of_pair, name=f"P_{m.name}")


def _monoid_homs(a: MonoidStructure, b: MonoidStructure):
    pairs = [(i, j) for i in range(a.size) for j in range(a.size)]
    for vals in itertools.product(range(b.size), repeat=a.size):
        if a.size and vals[a.unit] != b.unit:
            continue
        if all(vals[a.add(i, j)] == b.add(vals[i], vals[j]) for (i, j) in pairs):
            yield vals


def monoid_category(structures: Sequence[MonoidStructure], name: str = "CMon"
                    ) -> AlgebraCategory:
    return _algebra_category(name, structures, _monoid_homs)


@dataclass
class PacioliReflection:
    monoids: AlgebraCategory
    group_objects: list[str]
    het: HetBifunctor
    adjunction: Adjunction
    groups: dict[str, PacioliGroup]       # original monoid -> its quotient data
    group_object: dict[str, str]          # original monoid -> object id of P(m)


def pacioli_reflection(family: Sequence[MonoidStructure]) -> PacioliReflection:
    """Monoid homomorphisms into abelian groups as het data, with the group
    completion synthesized as the left representation.

    The Pacioli group of every family member is computed and added as an
    object unless an existing object already carries the identical table (a
    group's own quotient reproduces its table, so groups represent themselves).
    """
    for m in family:
        validate_monoid(m)
    extended: list[MonoidStructure] = list(family)
    by_table = {m.table: m.name for m in extended}
    groups: dict[str, PacioliGroup] = {}
    group_object: dict[str, str] = {}
    for m in family:
        pg = pacioli_group(m)
        groups[m.name] = pg
        if pg.table in by_table:
            group_object[m.name] = by_table[pg.table]
        else:
            new = MonoidStructure(pg.name, pg.table)
            extended.append(new)
            by_table[pg.table] = new.name
            group_object[m.name] = new.name
    cat = monoid_category(extended, name="CMonFam")
    group_objects = [m.name for m in extended if m.is_group()]
    het = reflective_het(cat.cat, group_objects, name="PacioliHet")
    outcome = synthesize_adjunction(het)
    if isinstance(outcome, SynthesisFailure):
        raise ConsistencyError(
            "group completion failed to synthesize: " + outcome.describe())
    return PacioliReflection(monoids=cat, group_objects=group_objects, het=het,
                             adjunction=outcome, groups=groups,
                             group_object=group_object)


def demo_monoids() -> list[MonoidStructure]:
    """Three commutative monoids: max on {0,1}, the cyclic group of order 3,
    and addition truncated at 2."""
    return [
        MonoidStructure("m01max", ((0, 1), (1, 1))),
        MonoidStructure("z3", ((0, 1, 2), (1, 2, 0), (2, 0, 1))),
        MonoidStructure("trunc2", ((0, 1, 2), (1, 2, 2), (2, 2, 2))),
    ]


# ---------------------------------------------------------------------------
# Freyd parsing of endo-adjunctions

@dataclass
class FreydParse:
    reflection: Adjunction       # composite as left adjoint to the inclusion of Im(G)
    coreflection: Adjunction     # inclusion of Im(F) as left adjoint to the composite
    im_g: FinCat
    im_f: FinCat
    report: Report


def freyd_parse(adj: Adjunction) -> FreydParse:
    """Split an endo-adjunction with object-injective functors into a
    reflection onto the image of the right functor and a coreflection onto
    the image of the left one, verifying both and the hom-isomorphism chains.
    """
    from .core import image_subcategory
    F, G = adj.left, adj.right
    C = F.source
    if F.target != C or G.source != C or G.target != C:
        raise PreconditionError("freyd_parse needs an endo-adjunction on one category")
    if not F.is_injective_on_objects():
        raise PreconditionError("left functor is not injective on objects")
    if not G.is_injective_on_objects():
        raise PreconditionError("right functor is not injective on objects")

    im_g, incl_g = image_subcategory(G)
    im_f, incl_f = image_subcategory(F)
    f_inv = {F.obj_map[x]: x for x in C.objects}

    refl_left = FunctorData(source=C, target=im_g,
                            obj_map={x: G.obj_map[F.obj_map[x]] for x in C.objects},
                            mor_map={m.name: G.mor_map[F.mor_map[m.name]]
                                     for m in C.morphisms},
                            name="GF")
    refl_phi: dict[tuple[str, str], dict[str, str]] = {}
    for x in C.objects:
        for xh in im_g.objects:
            refl_phi[(x, xh)] = {u: C.compose(u, adj.hom_unit[x])
                                 for u in im_g.hom(refl_left.obj_map[x], xh)}
    reflection = make_adjunction(refl_left, incl_g, refl_phi, name="reflection")

    corefl_right = FunctorData(source=C, target=im_f,
                               obj_map={a: F.obj_map[G.obj_map[a]] for a in C.objects},
                               mor_map={m.name: F.mor_map[G.mor_map[m.name]]
                                        for m in C.morphisms},
                               name="FG")
    corefl_phi: dict[tuple[str, str], dict[str, str]] = {}
    for ah in im_f.objects:
        x = f_inv[ah]
        for a in C.objects:
            corefl_phi[(ah, a)] = {v: F.mor_map[adj.phi[(x, a)][v]]
                                   for v in C.hom(ah, a)}
    coreflection = make_adjunction(incl_f, corefl_right, corefl_phi,
                                   name="coreflection")

    report = Report(subject=f"freyd parse of {adj.name}")
    report.merge(check_adjunction(reflection), prefix="reflection:")
    report.merge(check_adjunction(coreflection), prefix="coreflection:")

    report.ran("chain-reflection")
    for x in C.objects:
        for a in C.objects:
            source_homs = C.hom(F.obj_map[x], a)
            images = [G.mor_map[g] for g in source_homs]
            expected = im_g.hom(G.obj_map[F.obj_map[x]], G.obj_map[a])
            if len(set(images)) != len(images) or set(images) != set(expected):
                report.add("chain-reflection", (x, a),
                           "taking G-images is not a bijection onto the image homs")
    report.ran("chain-coreflection")
    for x in C.objects:
        for a in C.objects:
            source_homs = C.hom(x, G.obj_map[a])
            images = [F.mor_map[f] for f in source_homs]
            expected = im_f.hom(F.obj_map[x], F.obj_map[G.obj_map[a]])
            if len(set(images)) != len(images) or set(images) != set(expected):
                report.add("chain-coreflection", (x, a),
                           "taking F-images is not a bijection onto the image homs")
    return FreydParse(reflection=reflection, coreflection=coreflection,
                      im_g=im_g, im_f=im_f, report=report)


@dataclass
class EndoSearchResult:
    bound: int
    searched: list[str]
    found: list[tuple[str, Adjunction]]
    nontrivial: list[tuple[str, Adjunction]]


def small_category_library(max_objects: int = 3) -> list[FinCat]:
    """Curated small categories used for the endo-adjunction search."""
    z2 = make_category("z2", ["g"], [("sw", "g", "g")], {("sw", "sw"): "id_g"})
    z3 = make_category("z3", ["g"], [("r1", "g", "g"), ("r2", "g", "g")],
                       {("r1", "r1"): "r2", ("r1", "r2"): "id_g",
                        ("r2", "r1"): "id_g", ("r2", "r2"): "r1"})
    indiscrete2 = make_category(
        "indiscrete2", ["p", "q"],
        [("u", "p", "q"), ("v", "q", "p")],
        {("v", "u"): "id_p", ("u", "v"): "id_q"})
    chain2 = make_category("chain2", ["o0", "o1"], [("le", "o0", "o1")])
    chain3 = make_category("chain3", ["o0", "o1", "o2"],
                           [("a", "o0", "o1"), ("b", "o1", "o2"), ("c", "o0", "o2")],
                           {("b", "a"): "c"})
    cats = [make_category("terminal", ["t"]),
            make_category("discrete2", ["p", "q"]),
            make_category("discrete3", ["p", "q", "r"]),
            chain2, chain3, z2, z3, indiscrete2,
            shape("parallel-pair")]
    return [c for c in cats if len(c.objects) <= max_objects]


def search_endo_adjunctions(cats: Sequence[FinCat] | None = None,
                            max_objects: int = 3) -> EndoSearchResult:
    """Brute-force search for endo-adjunctions with object-injective functors.

    For each endofunctor F, the hom data out of F is right-representable
    exactly when F has a right adjoint, so synthesis either yields the
    adjunction or certifies there is none.
    """
    if cats is None:
        cats = small_category_library(max_objects)
    searched, found, nontrivial = [], [], []
    for cat in cats:
        searched.append(cat.name)
        fc = functor_category(cat, cat)
        for fid, F in fc.functors.items():
            if not F.is_injective_on_objects():
                continue
            outcome = synthesize_adjunction(het_from_functor(F, "left"))
            if isinstance(outcome, SynthesisFailure):
                continue
            if not outcome.right.is_injective_on_objects():
                continue
            found.append((cat.name, outcome))
            ident = {x: x for x in cat.objects}
            if dict(outcome.left.obj_map) != ident or dict(outcome.right.obj_map) != ident:
                nontrivial.append((cat.name, outcome))
    return EndoSearchResult(bound=max_objects, searched=searched,
                            found=found, nontrivial=nontrivial)


# ---------------------------------------------------------------------------
# Named instance registry (used by the CLI)

@dataclass
class InstanceValue:
    kind: str            # "category" | "het"
    value: object
    context: dict = field(default_factory=dict)


def _category_instance(parts: list[str]) -> InstanceValue:
    head = parts[0]
    if head == "finset":
        fs = finset(int(parts[1]))
        return InstanceValue("category", fs.cat, {"skeleton": fs})
    if head == "terminal":
        return InstanceValue("category", make_category("terminal", ["t"]))
    if head == "2chain":
        return InstanceValue("category",
                             make_category("chain2", ["o0", "o1"], [("le", "o0", "o1")]))
    if head == "discrete":
        k = int(parts[1])
        return InstanceValue("category", make_category(f"discrete{k}",
                                                       [f"d{i}" for i in range(k)]))
    if head == "shape":
        return InstanceValue("category", shape(parts[1]))
    raise PreconditionError(f"unknown category instance {':'.join(parts)!r}")


def build_instance(spec: str) -> InstanceValue:
    """Build a named instance; names use the form name:param:param."""
    parts = spec.split(":")
    head = parts[0]
    if head in ("finset", "terminal", "2chain", "discrete", "shape"):
        return _category_instance(parts)
    if head in ("hom", "identity"):
        from .het import hom_bifunctor
        inner = _category_instance(parts[1:])
        return InstanceValue("het", hom_bifunctor(inner.value), inner.context)
    if head == "product-het":
        ph = product_het(int(parts[1]))
        return InstanceValue("het", ph.het, {"product": ph})
    if head == "limit-het":
        dh = limit_het(parts[1], int(parts[2]) if len(parts) > 2 else 2)
        return InstanceValue("het", dh.het, {"diagram": dh})
    if head == "colimit-het":
        dh = colimit_het(parts[1], int(parts[2]) if len(parts) > 2 else 2)
        return InstanceValue("het", dh.het, {"diagram": dh})
    if head == "poset-forgetful":
        fh = preorder_forgetful_hets("poset", 2)
        return InstanceValue("het", fh.order_to_set, {"forgetful": fh})
    if head == "preorder-forgetful":
        fh = preorder_forgetful_hets("preorder", 2)
        return InstanceValue("het", fh.order_to_set, {"forgetful": fh})
    if head == "set-to-poset":
        fh = preorder_forgetful_hets("poset", 2)
        return InstanceValue("het", fh.set_to_order, {"forgetful": fh})
    if head == "set-to-preorder":
        fh = preorder_forgetful_hets("preorder", 2)
        return InstanceValue("het", fh.set_to_order, {"forgetful": fh})
    if head == "pacioli":
        pr = pacioli_reflection(demo_monoids())
        return InstanceValue("het", pr.het, {"pacioli": pr})
    raise PreconditionError(f"unknown instance {spec!r}")
