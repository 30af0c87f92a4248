"""Concrete category instances for the quantization equivalence.

The classical category has symplectic spaces as objects and bracket
preserving (character, linear map) arrows; the quantum category has the
same underlying data acting fiberwise.  Quantization and the classical
limit act as identity-on-data functors between them, and the comparison
transformations have identity components, so the equivalence checks reduce
to exact data equalities that the category kernel verifies square by
square.
"""

from .category import ArrowRecord, CategorySpec, FunctorSpec, NatTransSpec
from .sampling import make_rng, random_character, random_space_pool, random_symplectic_map
from .weyl_functors import (
    ClassicalWeylObject,
    QuantWeylObject,
    WeylMorphismSpec,
    classical_limit_morphism,
    classical_limit_object,
    compose_morphisms,
    identity_morphism,
    poisson_morphism_check,
    quantize_morphism,
    quantize_object,
    scaling_check,
    smooth_check,
)


def _record_consistent(record):
    return record.payload.dom == record.dom and record.payload.cod == record.cod


def classical_category():
    def validate(record):
        return _record_consistent(record) and poisson_morphism_check(record.payload)

    return CategorySpec(
        "classical-weyl", identity_morphism, compose_morphisms, validate
    )


def quantum_category():
    def validate(record):
        return (
            _record_consistent(record)
            and smooth_check(record.payload)
            and scaling_check(record.payload, 1, "1/2")
        )

    return CategorySpec("quantum-weyl", identity_morphism, compose_morphisms, validate)


def quantization_functor(source=None, target=None):
    return FunctorSpec(
        "quantize",
        source or classical_category(),
        target or quantum_category(),
        quantize_object,
        quantize_morphism,
    )


def limit_functor(source=None, target=None):
    return FunctorSpec(
        "limit",
        source or quantum_category(),
        target or classical_category(),
        classical_limit_object,
        classical_limit_morphism,
    )


def unit_transformation():
    """Compares the classical identity functor with limit-after-quantize."""
    return NatTransSpec(
        "unit",
        component=identity_morphism,
        inverse=identity_morphism,
        source_of=lambda obj: obj,
        target_of=lambda obj: classical_limit_object(quantize_object(obj)),
    )


def counit_transformation():
    """Compares the quantum identity functor with quantize-after-limit."""
    return NatTransSpec(
        "counit",
        component=identity_morphism,
        inverse=identity_morphism,
        source_of=lambda obj: obj,
        target_of=lambda obj: quantize_object(classical_limit_object(obj)),
    )


def sample_classical_arrows(seed, count, space_count=10, dims=(2, 4, 6)):
    """A deterministic pool of valid classical arrows, identities included.

    Arrows connect spaces of equal dimension, so the pool contains genuine
    cross-space isomorphisms whenever the space pool has dimension twins.
    """
    rng = make_rng(seed, "classical-arrows")
    spaces = random_space_pool(rng, space_count, dims)
    objects = [ClassicalWeylObject(s) for s in spaces]
    arrows = []
    for k in range(count):
        dom = rng.choice(objects)
        cods = [o for o in objects if o.space.dim == dom.space.dim]
        cod = rng.choice(cods)
        payload = WeylMorphismSpec(
            chi=random_character(rng, dom.space.dim),
            linear=random_symplectic_map(rng, dom.space, cod.space),
            dom=dom,
            cod=cod,
        )
        arrows.append(ArrowRecord("m%d" % k, dom, cod, payload))
    for j, obj in enumerate(objects[:3]):
        arrows.append(ArrowRecord("id%d" % j, obj, obj, identity_morphism(obj)))
    return arrows


def quantize_arrow_pool(arrows):
    return [
        ArrowRecord(
            "q-" + a.arrow_id,
            quantize_object(a.dom),
            quantize_object(a.cod),
            quantize_morphism(a.payload),
        )
        for a in arrows
    ]
