import math
from fractions import Fraction

import pytest

from quantaequiv import rational_linalg as rl
from quantaequiv.symplectic import CharacterSpec, LinearMapSpec, standard_space
from quantaequiv.weyl_algebra import (
    AlgebraError,
    CoeffExpr,
    evaluate_at,
    involution,
    multiply,
    weyl_generator,
    weyl_unit,
)
from quantaequiv.weyl_functors import (
    ClassicalWeylObject,
    FunctorError,
    QuantWeylObject,
    WeylMorphismSpec,
    apply_morphism,
    classical_limit_morphism,
    classical_limit_object,
    compose_morphisms,
    dirac_defect,
    identity_morphism,
    k0_membership,
    poisson_morphism_check,
    quantize_element,
    quantize_morphism,
    quantize_object,
    rescale,
    rieffel_condition_check,
    scaling_check,
    section_from_generator,
    section_mul,
    section_scale,
    smooth_check,
    von_neumann_defect,
)

SP1 = standard_space(1)
C1 = ClassicalWeylObject(SP1)
Q1 = QuantWeylObject(SP1)


def rotation_morphism(dom, cod, theta=(0, 0)):
    # quarter turn is symplectic for the standard form
    t = LinearMapSpec(rl.matrix([[0, -1], [1, 0]]))
    return WeylMorphismSpec(
        chi=CharacterSpec(tuple(Fraction(x) for x in theta)), linear=t, dom=dom, cod=cod
    )


def doubling_morphism(dom, cod):
    # scales the form by 4: the canonical bracket violator
    t = LinearMapSpec(rl.matrix([[2, 0], [0, 2]]))
    return WeylMorphismSpec(
        chi=CharacterSpec((Fraction(0), Fraction(0))), linear=t, dom=dom, cod=cod
    )


# --- objects and element-level action ----------------------------------------


def test_object_round_trips():
    assert quantize_object(C1) == Q1
    assert classical_limit_object(Q1) == C1
    assert classical_limit_object(quantize_object(C1)) == C1


def test_quantize_element_is_a_retag():
    a = evaluate_at(weyl_generator(SP1, [1, 0]), 0)
    q = quantize_element(a, Fraction(1, 2))
    assert q.hbar == Fraction(1, 2)
    assert q.terms == a.terms
    assert quantize_element(a, 0) == a


def test_apply_character_sign_flip():
    m = WeylMorphismSpec(
        chi=CharacterSpec((Fraction(1), Fraction(0))),
        linear=LinearMapSpec(rl.identity(2)),
        dom=C1,
        cod=C1,
    )
    a = evaluate_at(weyl_generator(SP1, [1, 0]), 0)
    image = apply_morphism(m, a)
    assert image.coefficient([1, 0]) == CoeffExpr.rational(-1)


def test_apply_identity_fixes_everything():
    m = identity_morphism(C1)
    s = section_from_generator(SP1, [1, 2]) + section_from_generator(SP1, ["1/2", -1])
    assert apply_morphism(m, s) == s


def test_apply_morphism_is_multiplicative_at_one():
    m = rotation_morphism(Q1, Q1, theta=("1/3", "-1/2"))
    f = quantize_element(evaluate_at(weyl_generator(SP1, [1, 0]), 0), 1)
    g = quantize_element(evaluate_at(weyl_generator(SP1, [0, 1]), 0), 1)
    assert apply_morphism(m, multiply(f, g)) == multiply(
        apply_morphism(m, f), apply_morphism(m, g)
    )


def test_apply_morphism_space_mismatch():
    m = identity_morphism(C1)
    sp2 = standard_space(2)
    with pytest.raises(AlgebraError):
        apply_morphism(m, evaluate_at(weyl_generator(sp2, [1, 0, 0, 0]), 0))


# --- rescaling ----------------------------------------------------------------


def test_rescale_identity_and_inverse():
    a = quantize_element(evaluate_at(weyl_generator(SP1, [1, 0]), 0), 1)
    assert rescale(a, 1, 1) == a
    assert rescale(rescale(a, 1, Fraction(1, 2)), Fraction(1, 2), 1) == a


def test_rescale_moves_scaled_generator():
    c = CoeffExpr.gaussian(2, -1)
    a = weyl_generator(SP1, [1, 0], hbar=1).scale_coeff(c)
    b = rescale(a, 1, Fraction(1, 2))
    assert b.hbar == Fraction(1, 2)
    assert b.coefficient([1, 0]) == c


def test_rescale_rejects_untagged_and_mismatched():
    sym = section_from_generator(SP1, [1, 0])
    with pytest.raises(FunctorError):
        rescale(sym, 1, Fraction(1, 2))
    pinned = evaluate_at(sym, Fraction(1, 4))
    with pytest.raises(FunctorError):
        rescale(pinned, Fraction(1, 2), 1)


def test_rescale_does_not_commute_with_multiplication():
    # quantization is not multiplicative: the twist lives at its own fiber
    f0 = evaluate_at(section_from_generator(SP1, [1, 0]), 0)
    g0 = evaluate_at(section_from_generator(SP1, [0, 1]), 0)
    lhs = multiply(quantize_element(f0, 1), quantize_element(g0, 1))
    rhs = quantize_element(multiply(f0, g0), 1)
    assert lhs != rhs


# --- checks -------------------------------------------------------------------


def test_smooth_check_accepts_morphisms_and_flags_corruption():
    assert smooth_check(rotation_morphism(Q1, Q1))
    assert smooth_check(identity_morphism(Q1))
    assert not smooth_check(identity_morphism(Q1), generators=[(1, 0, 0)])


def test_scaling_check_symplectic_passes():
    assert scaling_check(rotation_morphism(Q1, Q1, theta=("1/5", 1)), 1, Fraction(1, 2))
    assert scaling_check(identity_morphism(Q1), Fraction(1, 4), Fraction(3, 4))


def test_scaling_check_form_violator_fails():
    assert not scaling_check(doubling_morphism(Q1, Q1), 1, Fraction(1, 2))


def test_poisson_check():
    assert poisson_morphism_check(rotation_morphism(C1, C1, theta=(1, "1/2")))
    assert poisson_morphism_check(identity_morphism(C1))
    assert not poisson_morphism_check(doubling_morphism(C1, C1))


# --- functors on arrows ---------------------------------------------------


def test_quantize_morphism_keeps_data_and_retargets_objects():
    m = rotation_morphism(C1, C1, theta=("2/7", 0))
    qm = quantize_morphism(m)
    assert qm.chi == m.chi and qm.linear == m.linear
    assert qm.dom == Q1 and qm.cod == Q1


def test_quantize_morphism_rejects_bracket_violator():
    with pytest.raises(FunctorError):
        quantize_morphism(doubling_morphism(C1, C1))


def test_quantize_preserves_identity_and_composition():
    m1 = rotation_morphism(C1, C1, theta=("1/3", 0))
    m2 = rotation_morphism(C1, C1, theta=(0, "1/2"))
    assert quantize_morphism(identity_morphism(C1)) == identity_morphism(Q1)
    assert quantize_morphism(compose_morphisms(m2, m1)) == compose_morphisms(
        quantize_morphism(m2), quantize_morphism(m1)
    )


def test_classical_limit_round_trip_on_arrows():
    m = rotation_morphism(C1, C1, theta=("1/3", "-2/5"))
    assert classical_limit_morphism(quantize_morphism(m)) == m
    qm = rotation_morphism(Q1, Q1, theta=("1/3", "-2/5"))
    assert quantize_morphism(classical_limit_morphism(qm)) == qm


def test_classical_limit_rejects_scaling_violator():
    with pytest.raises(FunctorError):
        classical_limit_morphism(doubling_morphism(Q1, Q1))


def test_limit_of_identity_is_identity():
    assert classical_limit_morphism(identity_morphism(Q1)) == identity_morphism(C1)


def test_intertwining_on_sections_explicitly():
    m = rotation_morphism(Q1, Q1, theta=("1/4", "1/6"))
    limit = classical_limit_morphism(m)
    s = section_mul(
        section_from_generator(SP1, [1, 0]), section_from_generator(SP1, [0, 1])
    )
    assert evaluate_at(apply_morphism(m, s), 0) == apply_morphism(
        limit, evaluate_at(s, 0)
    )


# --- sections and the vanishing ideal -----------------------------------------


def test_section_product_carries_symbolic_twist():
    s = section_mul(
        section_from_generator(SP1, [1, 0]), section_from_generator(SP1, [0, 1])
    )
    assert s.coefficient([1, 1]) == CoeffExpr.phase(0, Fraction(-1, 2))
    # inverse pair collapses to the unit section
    t = section_mul(
        section_from_generator(SP1, [2, 1]), section_from_generator(SP1, [-2, -1])
    )
    assert t == weyl_unit(SP1)


def test_k0_membership_cases():
    s = section_from_generator(SP1, [1, 0])
    assert not k0_membership(s)
    vanishing = section_scale(s, CoeffExpr.phase(0, Fraction(1)) - CoeffExpr.one())
    assert k0_membership(vanishing)
    assert k0_membership(s - s)
    # cyclotomic cancellation that is invisible to formal equality
    c = CoeffExpr.phase(Fraction(0)) + CoeffExpr.phase(Fraction(2, 3)) + CoeffExpr.phase(
        Fraction(4, 3)
    )
    assert k0_membership(section_scale(s, c))


def test_k0_membership_needs_sections():
    with pytest.raises(AlgebraError):
        k0_membership(evaluate_at(section_from_generator(SP1, [1, 0]), 0))


def test_quotient_of_section_product_loses_the_twist():
    s = section_mul(
        section_from_generator(SP1, [1, 0]), section_from_generator(SP1, [0, 1])
    )
    assert evaluate_at(s, 0) == evaluate_at(section_from_generator(SP1, [1, 1]), 0)


# --- defect scalars -----------------------------------------------------------


def test_von_neumann_defect_frozen_value():
    # sigma((1,0),(0,1)) = 1: defect at hbar=1 is 2 sin(1/4)
    d = von_neumann_defect(SP1, [1, 0], [0, 1], 1)
    assert d == pytest.approx(2.0 * math.sin(0.25), abs=1e-15)
    assert d == pytest.approx(0.4948079185090459, abs=1e-12)


def test_von_neumann_defect_commuting_pair():
    assert von_neumann_defect(SP1, [1, 0], [2, 0], 1) == 0.0
    assert von_neumann_defect(SP1, [1, 0], [2, 0], Fraction(1, 8)) == 0.0


def test_von_neumann_defect_first_order():
    sigma = 1.0
    for h in (Fraction(1, 8), Fraction(1, 16), Fraction(1, 32)):
        d = von_neumann_defect(SP1, [1, 0], [0, 1], h)
        assert d / float(h) == pytest.approx(sigma / 2, abs=float(h) ** 2)


def test_dirac_defect_frozen_value():
    d = dirac_defect(SP1, [1, 0], [0, 1], 1)
    assert d == pytest.approx(abs(2.0 * math.sin(0.5) - 1.0), abs=1e-15)
    assert d == pytest.approx(0.041148922791594, abs=1e-12)


def test_dirac_defect_second_order():
    sigma = 1.0
    for h in (Fraction(1, 8), Fraction(1, 16), Fraction(1, 32)):
        d = dirac_defect(SP1, [1, 0], [0, 1], h)
        assert d / float(h) ** 2 == pytest.approx(sigma**3 / 24, rel=0.01)


def test_dirac_defect_rejects_zero_fiber():
    with pytest.raises(FunctorError):
        dirac_defect(SP1, [1, 0], [0, 1], 0)


def test_rieffel_condition():
    schedule = [Fraction(1, 2**k) for k in range(6)]
    gen = evaluate_at(section_from_generator(SP1, [1, 0]), 0)
    assert rieffel_condition_check(gen, schedule)
    zero = gen - gen
    assert rieffel_condition_check(zero, schedule)
    scaled = gen.scale_coeff(CoeffExpr.gaussian(3, -4))
    assert rieffel_condition_check(scaled, schedule)
