"""hetcat: a finite category theory engine for heteromorphism data.

Represents cross-category morphism structure as finite bifunctor tables,
searches for left and right representations, synthesizes adjunctions from
birepresentable het data, and mechanically verifies the round trip from any
adjunction back through its abstract het-bifunctor of transpose pairs.
"""

from .core import (CapacityError, ConsistencyError, FinCat, FunctorCategory,
                   FunctorData, Morphism, NatTransform, PreconditionError,
                   Report, Violation, check_category, check_functor,
                   check_nat_transform, compose_functors, full_subcategory,
                   functor_category, identity_functor, image_subcategory,
                   make_category, opposite, pair_id, product_category,
                   split_pair, split_tuple, tuple_id)
from .het import (HetBifunctor, HetNatTransform, act_nat_transforms_on_het,
                  check_het_bifunctor, check_het_nat_transform,
                  het_from_functor, hom_bifunctor, reflective_het)
from .represent import (Representation, RepresentationResult, SearchFailure,
                        UniversalElement, find_representation,
                        find_universal_element, induce_functor,
                        verify_naturality)
from .adjunction import (Adjunction, HetAdjunctiveSquare, HetCore,
                         HomPairAdjunctiveSquare, SynthesisFailure,
                         build_het_adjunctive_square,
                         build_hom_pair_adjunctive_square, check_adjunction,
                         make_adjunction, synthesize_adjunction, transpose,
                         unit_counit_nat_transforms)
from .theorem import (AbstractHet, GraphEmbedding, abstract_het, graph_embed,
                      twist_functor, verify_representation_theorem)

__all__ = [name for name in dir() if not name.startswith("_")]
