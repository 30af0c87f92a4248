"""Quantization and classical-limit functors on Weyl data.

Objects are symplectic spaces wearing either a classical or a quantum hat;
arrows are (character, linear map) pairs acting on generators by

    W(f)  ->  chi(f) W(Tf)

at every value of the deformation parameter.  Because arrows are finite
data and elements have exact phase coefficients, every functor law, round
trip and naturality square is decided by exact equality, and the strict
deformation defects come out as closed-form trig expressions.

The quantization map itself is a relabeling: a classical combination and
its quantized counterpart share labels and coefficient tables and differ
only in the fiber tag.  Rescaling maps between fibers are therefore retags
as well, which is what makes them exactly invertible here.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import rational_linalg as rl
from .symplectic import (
    CharacterSpec,
    LinearMapSpec,
    SpaceError,
    compose_characters,
    symplectic_form,
)
from .weyl_algebra import (
    AlgebraError,
    CoeffExpr,
    WeylElement,
    evaluate_at,
    multiply,
    involution,
    norm_bounds,
    poisson_bracket,
    weyl_generator,
)


class FunctorError(ValueError):
    """Functor preconditions that fail: non-Poisson arrows, bad fibers."""


@dataclass(frozen=True)
class ClassicalWeylObject:
    space: object


@dataclass(frozen=True)
class QuantWeylObject:
    space: object


@dataclass(frozen=True)
class WeylMorphismSpec:
    """Arrow data: W(f) -> chi(f) W(Tf), domain and codomain objects.

    Only shapes are validated here; whether the linear part preserves the
    forms is a property the checks below decide, so that violating specs
    can exist as negative controls.
    """

    chi: CharacterSpec
    linear: LinearMapSpec
    dom: object
    cod: object

    def __post_init__(self):
        if len(self.chi.theta) != self.dom.space.dim:
            raise SpaceError("character length must match the domain dimension")
        if self.linear.dim_in != self.dom.space.dim:
            raise SpaceError("linear part must accept domain vectors")
        if self.linear.dim_out != self.cod.space.dim:
            raise SpaceError("linear part must produce codomain vectors")


def identity_morphism(obj):
    n = obj.space.dim
    return WeylMorphismSpec(
        chi=CharacterSpec(tuple(Fraction(0) for _ in range(n))),
        linear=LinearMapSpec(rl.identity(n)),
        dom=obj,
        cod=obj,
    )


def compose_morphisms(m2, m1):
    """The composite arrow m2 after m1 (exact data composition)."""
    if m1.cod != m2.dom:
        raise FunctorError("arrows are not composable")
    return WeylMorphismSpec(
        chi=compose_characters(m2.chi, m1.linear, m1.chi),
        linear=m2.linear.compose(m1.linear),
        dom=m1.dom,
        cod=m2.cod,
    )


def _fiber(value):
    v = Fraction(value)
    if not (0 <= v <= 1):
        raise FunctorError("fiber parameter must lie in [0, 1]")
    return v


def apply_morphism(m, a, hbar=None):
    """Extend W(f) -> chi(f) W(Tf) linearly over the coefficients.

    With no fiber argument the element is mapped as it stands (symbolic or
    pinned); a fiber argument pins a symbolic element first and must agree
    with the tag of an already pinned one.
    """
    if a.space != m.dom.space:
        raise AlgebraError("element does not live on the arrow's domain")
    if hbar is not None:
        h = _fiber(hbar)
        if a.hbar is None:
            a = evaluate_at(a, h)
        elif a.hbar != h:
            raise AlgebraError("element is pinned to a different fiber")
    out = {}
    for f, coeff in a.terms.items():
        label = m.cod.space.vector(m.linear.apply(f))
        shifted = coeff.shift(rl.dot(m.chi.theta, f), 0)
        acc = out.get(label)
        out[label] = shifted if acc is None else acc + shifted
    return WeylElement(m.cod.space, out, hbar=a.hbar)


# --- functor actions on objects --------------------------------------------


def quantize_object(c):
    return QuantWeylObject(c.space)


def classical_limit_object(q):
    return ClassicalWeylObject(q.space)


# --- rescaling between fibers ------------------------------------------------


def rescale(a, src, dst):
    """Transport a pinned element from fiber src to fiber dst.

    Quantization keeps labels and coefficient values, so the transport is a
    retag; src and dst may be 0, which makes quantization itself the
    transport from the classical fiber.
    """
    src = _fiber(src)
    dst = _fiber(dst)
    if a.hbar is None or a.hbar != src:
        raise FunctorError("element is not in the quantized image at the source fiber")
    if src == dst:
        return a
    return WeylElement(a.space, a.terms, hbar=dst)


def quantize_element(a, hbar):
    """The quantization map on a classical (fiber 0) combination."""
    return rescale(a, 0, hbar)


# --- morphism checks ---------------------------------------------------------


def _basis_labels(space):
    return [rl.identity(space.dim)[i] for i in range(space.dim)]


def smooth_check(m, generators=None):
    """True iff each generator lands on a finite combination of generators.

    True by construction for well-formed data; shape corruption (labels of
    the wrong length, a linear part that cannot act) comes back False.
    """
    if generators is None:
        generators = _basis_labels(m.dom.space)
    try:
        for f in generators:
            image = apply_morphism(m, weyl_generator(m.dom.space, f))
            if image.space != m.cod.space:
                return False
            for label, coeff in image.terms.items():
                if len(label) != m.cod.space.dim or not isinstance(coeff, CoeffExpr):
                    return False
    except (AlgebraError, SpaceError, ValueError, TypeError):
        return False
    return True


def scaling_check(m, hbar, hbar2, generators=None, pairs=None):
    """Conjugating by rescaling maps must reproduce the arrow at the new fiber.

    Checks, exactly: the conjugated generator images against the direct
    formula at hbar2, product preservation on generator pairs, and
    involution preservation.  Product preservation fails when the linear
    part does not carry the domain form to the codomain form.
    """
    h1 = _fiber(hbar)
    h2 = _fiber(hbar2)
    if h1 == 0 or h2 == 0:
        raise FunctorError("scaling compares fibers away from the classical one")
    if generators is None:
        generators = _basis_labels(m.dom.space)
    if pairs is None:
        pairs = [(f, g) for i, f in enumerate(generators) for g in generators[i:]]
    try:
        quant = {}
        for f in generators:
            base = evaluate_at(weyl_generator(m.dom.space, f), 0)
            quant[m.dom.space.vector(f)] = rescale(base, 0, h2)
        for f in generators:
            at_h2 = quant[m.dom.space.vector(f)]
            conjugated = rescale(apply_morphism(m, rescale(at_h2, h2, h1)), h1, h2)
            if conjugated != apply_morphism(m, at_h2):
                return False
            if involution(apply_morphism(m, at_h2)) != apply_morphism(m, involution(at_h2)):
                return False
        for f, g in pairs:
            a = quant[m.dom.space.vector(f)]
            b = quant[m.dom.space.vector(g)]
            if apply_morphism(m, multiply(a, b)) != multiply(
                apply_morphism(m, a), apply_morphism(m, b)
            ):
                return False
    except (AlgebraError, SpaceError, ValueError):
        return False
    return True


def poisson_morphism_check(m, pairs=None):
    """Exact bracket preservation on generator pairs.

    The default pairs run over the domain basis, which decides the property
    for the whole space by bilinearity.
    """
    space = m.dom.space
    if pairs is None:
        basis = _basis_labels(space)
        pairs = [(f, g) for i, f in enumerate(basis) for g in basis[i + 1 :]]
    try:
        for f, g in pairs:
            a = evaluate_at(weyl_generator(space, f), 0)
            b = evaluate_at(weyl_generator(space, g), 0)
            lhs = apply_morphism(m, poisson_bracket(a, b))
            rhs = poisson_bracket(apply_morphism(m, a), apply_morphism(m, b))
            if lhs != rhs:
                return False
    except (AlgebraError, SpaceError, ValueError):
        return False
    return True


# --- functor actions on arrows ----------------------------------------------


def quantize_morphism(m, pairs=None):
    """Reinterpret a bracket-preserving classical arrow on quantum objects."""
    if not poisson_morphism_check(m, pairs):
        raise FunctorError("arrow does not preserve the bracket")
    return WeylMorphismSpec(
        chi=m.chi,
        linear=m.linear,
        dom=quantize_object(m.dom),
        cod=quantize_object(m.cod),
    )


def classical_limit_morphism(m, generators=None, sections=None):
    """The limit arrow of a smooth scaling arrow, verified on sections.

    Demands smooth_check and scaling_check up front, then confirms that
    mapping a section and evaluating at 0 equals evaluating first and
    mapping with the limit arrow, and that the limit arrow preserves the
    bracket.
    """
    if not smooth_check(m, generators):
        raise FunctorError("arrow fails the smoothness condition")
    if not scaling_check(m, Fraction(1), Fraction(1, 2), generators):
        raise FunctorError("arrow fails the scaling condition")
    limit = WeylMorphismSpec(
        chi=m.chi,
        linear=m.linear,
        dom=classical_limit_object(m.dom),
        cod=classical_limit_object(m.cod),
    )
    if sections is None:
        gens = generators if generators is not None else _basis_labels(m.dom.space)
        sections = [weyl_generator(m.dom.space, f) for f in gens]
        if len(gens) >= 2:
            sections.append(
                multiply(
                    weyl_generator(m.dom.space, gens[0]),
                    weyl_generator(m.dom.space, gens[1]),
                )
            )
    for s in sections:
        via_quantum = evaluate_at(apply_morphism(m, s), 0)
        via_limit = apply_morphism(limit, evaluate_at(s, 0))
        if via_quantum != via_limit:
            raise FunctorError("limit arrow fails the intertwining identity")
    if not poisson_morphism_check(limit):
        raise FunctorError("limit arrow fails bracket preservation")
    return limit


# --- sections and the vanishing ideal ---------------------------------------

# A section is a symbolic element: its coefficient tables are functions of
# the deformation parameter, and evaluation at each fiber is a *-map.
Section = WeylElement


def _require_section(s):
    if s.hbar is not None:
        raise AlgebraError("sections must stay symbolic in the parameter")


def section_from_generator(space, f):
    return weyl_generator(space, f)


def section_mul(s1, s2):
    _require_section(s1)
    _require_section(s2)
    return multiply(s1, s2)


def section_scale(s, coeff):
    _require_section(s)
    if not isinstance(coeff, CoeffExpr):
        coeff = CoeffExpr.rational(coeff)
    return s.scale_coeff(coeff)


def evaluate_section(s, hbar):
    _require_section(s)
    return evaluate_at(s, hbar)


def k0_membership(s):
    """True iff every coefficient is an exact zero at parameter 0.

    Membership in the vanishing ideal is a coefficient statement because
    max_f |c_f(0)| and sum_f |c_f(0)| pinch the limiting norm.
    """
    _require_section(s)
    return all(c.vanishes_at_zero() for c in s.terms.values())


# --- strict deformation defect scalars ---------------------------------------


def von_neumann_defect(space, f, g, hbar):
    """Norm distance between quantize-then-multiply and multiply-then-quantize.

    For generator pairs the defect element has one label, so the bound pair
    collapses and the value equals 2|sin(hbar sigma(f,g)/4)|.
    """
    h = _fiber(hbar)
    a0 = evaluate_at(weyl_generator(space, f), 0)
    b0 = evaluate_at(weyl_generator(space, g), 0)
    defect = multiply(rescale(a0, 0, h), rescale(b0, 0, h)) - rescale(
        multiply(a0, b0), 0, h
    )
    return norm_bounds(defect)[1]


def dirac_defect(space, f, g, hbar):
    """Norm distance of the scaled commutator from the quantized bracket.

    For generator pairs this equals |(2/hbar) sin(hbar sigma(f,g)/2) - sigma(f,g)|.
    Finite sums with several labels return the coefficient-sum upper bound.
    """
    h = _fiber(hbar)
    if h == 0:
        raise FunctorError("the commutator scale 1/hbar needs a positive fiber")
    a0 = evaluate_at(weyl_generator(space, f), 0)
    b0 = evaluate_at(weyl_generator(space, g), 0)
    qa = rescale(a0, 0, h)
    qb = rescale(b0, 0, h)
    commutator = multiply(qa, qb) - multiply(qb, qa)
    scaled = commutator.scale_coeff(CoeffExpr.gaussian(0, Fraction(1, 1) / h))
    defect = scaled - rescale(poisson_bracket(a0, b0), 0, h)
    return norm_bounds(defect)[1]


def rieffel_condition_check(a, schedule, tol=1e-12):
    """True iff the quantized norm of a classical element is schedule-constant.

    Exact norms are available for at most one label (the generators are
    unitary), which covers the continuity condition for the generating set.
    """
    if a.hbar != 0:
        raise AlgebraError("expects a classical (fiber 0) element")
    if len(a.terms) > 1:
        raise AlgebraError("exact norms need single-generator elements")
    norms = [norm_bounds(rescale(a, 0, _fiber(h)))[1] for h in schedule]
    if not norms:
        return True
    return max(norms) - min(norms) <= tol
