"""Recovering het data from a bare adjunction: graph embeddings, the twist
functor, and the abstract bifunctor of transpose pairs.

Any adjunction embeds its two categories into their product as the graphs of
the two functors.  The transpose pairs (f, g) with g the transpose of f then
form het data between the embedded copies, closed under the ambient
composition, and its birepresentation returns an isomorphic copy of the
original adjunction.  verify_representation_theorem mechanizes that round
trip, building the comparison isomorphisms from unique universal-element
fill-ins rather than searching for them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (FinCat, FunctorData, NatTransform, Report, check_functor,
                   check_nat_transform, product_category,
                   product_morphism_name)
from .het import HetBifunctor, check_het_bifunctor
from .adjunction import Adjunction, SynthesisFailure, synthesize_adjunction
from .represent import _left_ump_failure, _right_ump_failure


@dataclass
class GraphEmbedding:
    """A category embedded into a product category as the graph of a functor."""

    base: FunctorData            # F: X -> A (side left) or G: A -> X (side right)
    side: str
    product: FinCat              # X x A
    embedding: FunctorData       # domain category -> product
    image: FinCat                # the graph, as a subcategory of the product
    inclusion: FunctorData       # image -> product
    inverse: FunctorData         # image -> domain category (witnesses the iso)


def graph_embed(fun: FunctorData, side: str) -> GraphEmbedding:
    """Embed a functor's source as its graph inside the product category.

    side="left" embeds x at (x, Fx); side="right" embeds a at (Ga, a).  The
    image is isomorphic to the embedded category, witnessed by the inverse
    functor on the image.
    """
    from .core import image_subcategory
    if side == "left":
        x_cat, a_cat = fun.source, fun.target
        pair_obj = lambda z: (z, fun.obj_map[z])
        pair_mor = lambda m: (m, fun.mor_map[m])
        domain = fun.source
    elif side == "right":
        x_cat, a_cat = fun.target, fun.source
        pair_obj = lambda z: (fun.obj_map[z], z)
        pair_mor = lambda m: (fun.mor_map[m], m)
        domain = fun.source
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    product, _, _ = product_category(x_cat, a_cat)
    from .core import pair_id
    obj_map = {z: pair_id(*pair_obj(z)) for z in domain.objects}
    mor_map = {m.name: product_morphism_name(x_cat, a_cat, *pair_mor(m.name))
               for m in domain.morphisms}
    embedding = FunctorData(source=domain, target=product,
                            obj_map=obj_map, mor_map=mor_map,
                            name=f"graph_{fun.name}")
    image, inclusion = image_subcategory(embedding)
    inverse = FunctorData(source=image, target=domain,
                          obj_map={v: k for k, v in obj_map.items()},
                          mor_map={v: k for k, v in mor_map.items()},
                          name=f"ungraph_{fun.name}")
    return GraphEmbedding(base=fun, side=side, product=product,
                          embedding=embedding, image=image,
                          inclusion=inclusion, inverse=inverse)


def twist_functor(adj: Adjunction) -> FunctorData:
    """The endofunctor of the product category sending (x, a) to (Ga, Fx).

    Restricted to the graph of F it acts as F; restricted to the graph of G it
    acts as G.
    """
    F, G = adj.left, adj.right
    X, A = F.source, F.target
    product, _, _ = product_category(X, A)
    from .core import pair_id
    obj_map = {pair_id(x, a): pair_id(G.obj_map[a], F.obj_map[x])
               for x in X.objects for a in A.objects}
    mor_map = {}
    for h in X.morphisms:
        for k in A.morphisms:
            src = product_morphism_name(X, A, h.name, k.name)
            mor_map[src] = product_morphism_name(
                X, A, G.mor_map[k.name], F.mor_map[h.name])
    return FunctorData(source=product, target=product,
                       obj_map=obj_map, mor_map=mor_map, name="twist")


@dataclass
class AbstractHet:
    """Transpose pairs of an adjunction as het data between the two graphs."""

    het: HetBifunctor
    left_embed: GraphEmbedding
    right_embed: GraphEmbedding
    product: FinCat


def abstract_het(adj: Adjunction) -> AbstractHet:
    """The het-bifunctor whose cell at (x-hat, a-hat) is the set of transpose
    pairs (f, g), encoded as the diagonal product-category morphisms.

    Both actions are ambient composition in the product category; closure of
    the diagonals under those actions is re-checked by the bifunctor laws.
    """
    F, G = adj.left, adj.right
    X, A = F.source, F.target
    le = graph_embed(F, "left")
    re_ = graph_embed(G, "right")
    product = le.product

    cells: dict[tuple[str, str], list[str]] = {}
    for xh in le.image.objects:
        x = le.inverse.obj_map[xh]
        for ah in re_.image.objects:
            a = re_.inverse.obj_map[ah]
            elems = []
            for f in X.hom(x, G.obj_map[a]):
                g = adj.transpose_left(x, a, f)
                elems.append(product_morphism_name(X, A, f, g))
            cells[(xh, ah)] = elems

    het = HetBifunctor(
        le.image, re_.image, cells,
        left_action=lambda h, c: product.compose(c, h),
        right_action=lambda k, c: product.compose(k, c),
        name=f"AbstractHet_{adj.name}")
    return AbstractHet(het=het, left_embed=le, right_embed=re_, product=product)


def _restrict_twist(adj: Adjunction, twist: FunctorData, emb: GraphEmbedding,
                    other: GraphEmbedding, name: str) -> FunctorData:
    """Restrict the twist functor to one graph, landing in the other graph."""
    obj_map = {z: twist.obj_map[z] for z in emb.image.objects}
    mor_map = {m.name: twist.mor_map[m.name] for m in emb.image.morphisms}
    return FunctorData(source=emb.image, target=other.image,
                       obj_map=obj_map, mor_map=mor_map, name=name)


def verify_representation_theorem(adj: Adjunction) -> Report:
    """Round-trip an adjunction through its abstract het data and check the
    recovered adjunction is an isomorphic copy of the embedded original.

    Stages, each a named check: bifunctor laws of the abstract het, the
    three-way cell count identity, synthesis, agreement of the twist
    restrictions with the graphs, the two comparison natural isomorphisms
    built from unique universal fill-ins, and the unit/counit correspondence.
    """
    report = Report(subject=f"representation theorem for {adj.name}")
    F, G = adj.left, adj.right
    X, A = F.source, F.target

    ab = abstract_het(adj)
    het = ab.het
    le, re_ = ab.left_embed, ab.right_embed

    report.ran("embedding")
    for emb, cat in ((le, X), (re_, A)):
        if len(emb.image.objects) != len(cat.objects) or \
           len(emb.image.morphisms) != len(cat.morphisms):
            report.add("embedding", (emb.embedding.name,),
                       "graph does not have the same size as its source")
        for rep_, prefix in ((check_functor(emb.embedding), "emb:"),
                             (check_functor(emb.inverse), "inv:")):
            if not rep_.ok:
                report.add("embedding", (emb.embedding.name,),
                           prefix + "; ".join(str(v) for v in rep_.violations))

    report.merge(check_het_bifunctor(het), prefix="abstract-het:")
    if not report.ok:
        return report

    report.ran("cell-counts")
    for xh in le.image.objects:
        x = le.inverse.obj_map[xh]
        for ah in re_.image.objects:
            a = re_.inverse.obj_map[ah]
            n_cell = len(het.cell(xh, ah))
            n_hom_a = len(A.hom(F.obj_map[x], a))
            n_hom_x = len(X.hom(x, G.obj_map[a]))
            if not (n_cell == n_hom_a == n_hom_x):
                report.add("cell-counts", (xh, ah, str(n_cell), str(n_hom_a), str(n_hom_x)),
                           "abstract cell size differs from the hom cells")

    report.ran("synthesis")
    outcome = synthesize_adjunction(het)
    if isinstance(outcome, SynthesisFailure):
        report.add("synthesis", (), outcome.describe())
        return report
    adj2 = outcome

    twist = twist_functor(adj)
    report.merge(check_functor(twist), prefix="twist:")
    f_hat = _restrict_twist(adj, twist, le, re_, "F_hat")
    g_hat = _restrict_twist(adj, twist, re_, le, "G_hat")
    report.merge(check_functor(f_hat), prefix="twist-left:")
    report.merge(check_functor(g_hat), prefix="twist-right:")

    report.ran("twist-agrees-with-graphs")
    for x in X.objects:
        xh = le.embedding.obj_map[x]
        expected = re_.embedding.obj_map[F.obj_map[x]]
        if f_hat.obj_map[xh] != expected:
            report.add("twist-agrees-with-graphs", (xh, f_hat.obj_map[xh], expected),
                       "twist restricted to the F-graph does not act as F")
    for a in A.objects:
        ah = re_.embedding.obj_map[a]
        expected = le.embedding.obj_map[G.obj_map[a]]
        if g_hat.obj_map[ah] != expected:
            report.add("twist-agrees-with-graphs", (ah, g_hat.obj_map[ah], expected),
                       "twist restricted to the G-graph does not act as G")
    if not report.ok:
        return report

    core2 = adj2.het_core

    # Canonical universal elements: the unit pair on the left, counit pair on
    # the right.  Verify each satisfies the universal property, then compare
    # with the synthesized choices via the unique fill-in maps.
    report.ran("canonical-unit-universal")
    report.ran("left-comparison")
    theta_components: dict[str, str] = {}
    for x in X.objects:
        xh = le.embedding.obj_map[x]
        fx = F.obj_map[x]
        u1 = product_morphism_name(X, A, adj.hom_unit[x], A.identity_of(fx))
        apex1 = f_hat.obj_map[xh]
        if u1 not in het.cell(xh, apex1):
            report.add("canonical-unit-universal", (xh, u1), "unit pair not in its cell")
            continue
        bad = _left_ump_failure(het, xh, apex1, u1)
        if bad is not None:
            report.add("canonical-unit-universal", (xh, u1, bad[0], str(bad[1])),
                       "unit pair is not a universal element")
            continue
        apex2 = adj2.left.obj_map[xh]
        u2 = core2.het_unit[xh]
        fwd = [m for m in re_.image.hom(apex1, apex2) if het.right(m, u1) == u2]
        back = [m for m in re_.image.hom(apex2, apex1) if het.right(m, u2) == u1]
        if len(fwd) != 1 or len(back) != 1:
            report.add("left-comparison", (xh, str(len(fwd)), str(len(back))),
                       "comparison fill-ins not unique")
            continue
        if re_.image.compose(back[0], fwd[0]) != re_.image.identity_of(apex1) or \
           re_.image.compose(fwd[0], back[0]) != re_.image.identity_of(apex2):
            report.add("left-comparison", (xh, fwd[0], back[0]),
                       "comparison maps are not mutually inverse")
            continue
        theta_components[xh] = fwd[0]
    if len(theta_components) == len(le.image.objects):
        theta = NatTransform(source=f_hat, target=adj2.left,
                             components=theta_components, name="theta")
        report.merge(check_nat_transform(theta), prefix="left-comparison:")

    report.ran("canonical-counit-universal")
    report.ran("right-comparison")
    rho_components: dict[str, str] = {}
    for a in A.objects:
        ah = re_.embedding.obj_map[a]
        ga = G.obj_map[a]
        v1 = product_morphism_name(X, A, X.identity_of(ga), adj.hom_counit[a])
        apex1 = g_hat.obj_map[ah]
        if v1 not in het.cell(apex1, ah):
            report.add("canonical-counit-universal", (ah, v1), "counit pair not in its cell")
            continue
        bad = _right_ump_failure(het, ah, apex1, v1)
        if bad is not None:
            report.add("canonical-counit-universal", (ah, v1, bad[0], str(bad[1])),
                       "counit pair is not a universal element")
            continue
        apex2 = adj2.right.obj_map[ah]
        v2 = core2.het_counit[ah]
        fwd = [m for m in le.image.hom(apex1, apex2) if het.left(m, v2) == v1]
        back = [m for m in le.image.hom(apex2, apex1) if het.left(m, v1) == v2]
        if len(fwd) != 1 or len(back) != 1:
            report.add("right-comparison", (ah, str(len(fwd)), str(len(back))),
                       "comparison fill-ins not unique")
            continue
        if le.image.compose(back[0], fwd[0]) != le.image.identity_of(apex1) or \
           le.image.compose(fwd[0], back[0]) != le.image.identity_of(apex2):
            report.add("right-comparison", (ah, fwd[0], back[0]),
                       "comparison maps are not mutually inverse")
            continue
        rho_components[ah] = fwd[0]
    if len(rho_components) == len(re_.image.objects):
        rho = NatTransform(source=g_hat, target=adj2.right,
                           components=rho_components, name="rho")
        report.merge(check_nat_transform(rho), prefix="right-comparison:")

    report.ran("unit-correspondence")
    for x in X.objects:
        xh = le.embedding.obj_map[x]
        if xh not in theta_components:
            continue
        u1 = product_morphism_name(X, A, adj.hom_unit[x],
                                   A.identity_of(F.obj_map[x]))
        if het.right(theta_components[xh], u1) != core2.het_unit[xh]:
            report.add("unit-correspondence", (xh,),
                       "synthesized het unit does not correspond to the unit pair")

    report.ran("counit-correspondence")
    for a in A.objects:
        ah = re_.embedding.obj_map[a]
        if ah not in rho_components:
            continue
        v1 = product_morphism_name(X, A, X.identity_of(G.obj_map[a]),
                                   adj.hom_counit[a])
        if het.left(rho_components[ah], core2.het_counit[ah]) != v1:
            report.add("counit-correspondence", (ah,),
                       "synthesized het counit does not correspond to the counit pair")

    report.ran("bijection-chain")
    for xh in le.image.objects:
        for ah in re_.image.objects:
            n_cell = len(het.cell(xh, ah))
            n_left = len(re_.image.hom(f_hat.obj_map[xh], ah))
            n_right = len(le.image.hom(xh, g_hat.obj_map[ah]))
            if not (n_cell == n_left == n_right):
                report.add("bijection-chain", (xh, ah, str(n_left), str(n_cell), str(n_right)),
                           "hom/het/hom sizes disagree for the twist restrictions")
    return report
