"""Exterior algebra: wedge laws, pullbacks, derivatives, operators."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_surgery.coefficients import (
    GaussianRational,
    Polynomial,
    RationalFunction,
    I,
)
from torus_surgery.forms import (
    GENERATORS,
    CoframeMap,
    Form,
    LinearOperator,
    Region,
    compatibility_check,
    compose,
    mat_equal,
    mat_identity,
    mat_mul,
    mat_neg,
    operator_pullback,
)
from torus_surgery.verification import (
    almost_complex_structure,
    gluing_map,
    standard_symplectic_form,
)


# -- independent oracle: expand products of constant 1-forms by listing
# -- generator words and counting inversions for the sign ------------------


def _inversion_sign(word):
    sign = 1
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i] > word[j]:
                sign = -sign
    return sign


def naive_product(*factor_term_lists):
    """Multiply forms given as lists of (GaussianRational, generator names),
    reducing by antisymmetry at the very end."""
    words = [(GaussianRational(1), ())]
    for factors in factor_term_lists:
        words = [
            (c0 * c1, w0 + tuple(names))
            for c0, w0 in words
            for c1, *names in factors
        ]
    reduced = {}
    for coeff, word in words:
        indices = tuple(GENERATORS.index(n) for n in word)
        if len(set(indices)) != len(indices):
            continue
        key = tuple(sorted(indices))
        signed = coeff * _inversion_sign(indices)
        reduced[key] = reduced.get(key, GaussianRational(0)) + signed
    return {k: v for k, v in reduced.items() if v}


def small_forms():
    coeffs = st.integers(min_value=-3, max_value=3)
    keys = st.sets(st.integers(min_value=0, max_value=5), max_size=3).map(
        lambda s: tuple(sorted(s))
    )
    term = st.tuples(keys, coeffs)
    return st.lists(term, max_size=3).map(
        lambda terms: sum(
            (
                Form({key: RationalFunction.constant(c)})
                for key, c in terms
                if c
            ),
            Form.zero(),
        )
    )


def homogeneous_forms(degree):
    coeffs = st.integers(min_value=-3, max_value=3)
    keys = st.sets(
        st.integers(min_value=0, max_value=5),
        min_size=degree,
        max_size=degree,
    ).map(lambda s: tuple(sorted(s)))
    term = st.tuples(keys, coeffs)
    return st.lists(term, max_size=3).map(
        lambda terms: sum(
            (
                Form({key: RationalFunction.constant(c)})
                for key, c in terms
                if c
            ),
            Form.zero(),
        )
    )


class TestWedge:
    def test_square_of_generator_vanishes(self):
        dx = Form.generator("dx")
        assert dx.wedge(dx).is_zero()

    def test_antisymmetry_of_generators(self):
        dx, dy = Form.generator("dx"), Form.generator("dy")
        assert dx.wedge(dy) == -(dy.wedge(dx))

    def test_reordering_absorbed_in_constructor(self):
        assert Form.from_terms((1, "dy", "dx")) == -Form.from_terms((1, "dx", "dy"))
        assert Form.from_terms((1, "dx", "dx")).is_zero()

    @settings(max_examples=40)
    @given(small_forms(), small_forms(), small_forms())
    def test_associativity_and_distributivity(self, a, b, c):
        assert a.wedge(b.wedge(c)) == a.wedge(b).wedge(c)
        assert a.wedge(b + c) == a.wedge(b) + a.wedge(c)

    @settings(max_examples=40)
    @given(
        st.integers(min_value=1, max_value=3),
        st.integers(min_value=1, max_value=3),
        st.data(),
    )
    def test_graded_commutativity(self, p, q, data):
        a = data.draw(homogeneous_forms(p))
        b = data.draw(homogeneous_forms(q))
        sign = (-1) ** (p * q)
        assert a.wedge(b) == b.wedge(a) * sign

    @settings(max_examples=40)
    @given(st.integers(min_value=1, max_value=2).filter(lambda p: p % 2 == 1))
    def test_odd_degree_squares_to_zero_example(self, p):
        form = Form.from_terms((2, "dx"), (3, "dw"), (-1, "ds2"))
        assert form.wedge(form).is_zero()

    def test_top_power_against_naive_expansion(self):
        omega = standard_symplectic_form()
        omega_terms = [
            (GaussianRational(1), "dx", "dz"),
            (GaussianRational(1), "dw", "dy"),
            (GaussianRational(1), "ds1", "ds2"),
        ]
        expected = naive_product(omega_terms, omega_terms, omega_terms)
        cubed = omega.wedge_power(3)
        assert set(cubed.terms) == set(expected)
        for key, value in expected.items():
            assert cubed.terms[key] == RationalFunction.constant(value)
        assert cubed == Form.from_terms(
            (6, "dx", "dz", "dw", "dy", "ds1", "ds2")
        )

    def test_random_triple_products_against_naive_expansion(self):
        import random

        rng = random.Random(7)
        for _ in range(25):
            factor_lists = []
            for _ in range(3):
                terms = [
                    (
                        GaussianRational(rng.randint(-4, 4)),
                        *rng.sample(GENERATORS, rng.randint(1, 2)),
                    )
                    for _ in range(2)
                ]
                factor_lists.append(terms)
            forms = [Form.from_terms(*t) for t in factor_lists]
            product = forms[0].wedge(forms[1]).wedge(forms[2])
            expected = naive_product(*factor_lists)
            assert product == Form(
                {k: RationalFunction.constant(v) for k, v in expected.items()}
            )


class TestRegions:
    def test_inner_kills_profile(self):
        f = RationalFunction.variable("f")
        form = Form.from_terms((f, "dx", "dy"))
        assert form.in_region(Region.INNER).is_zero()

    def test_outer_substitutes_radial_inverse(self):
        f = RationalFunction.variable("f")
        x = Polynomial.variable("x")
        y = Polynomial.variable("y")
        form = Form.from_terms((f, "dx"))
        expected = Form.from_terms(
            (RationalFunction(Polynomial.constant(1), x * x + y * y), "dx")
        )
        assert form.in_region(Region.OUTER) == expected

    def test_middle_is_identity(self):
        f = RationalFunction.variable("f")
        form = Form.from_terms((f, "dx"))
        assert form.in_region(Region.MIDDLE) == form


class TestExteriorDerivative:
    def test_basic(self):
        x = RationalFunction.variable("x")
        y = RationalFunction.variable("y")
        form = Form.from_terms((x * y, "dz"))
        expected = Form.from_terms((y, "dx", "dz"), (x, "dy", "dz"))
        assert form.exterior_derivative(Region.MIDDLE) == expected

    def test_square_is_zero(self):
        x = RationalFunction.variable("x")
        y = RationalFunction.variable("y")
        form = Form.from_terms(
            (x * x * y, "dz"), (y / (x * x + RationalFunction.constant(1)), "dw")
        )
        once = form.exterior_derivative(Region.MIDDLE)
        assert once.exterior_derivative(Region.MIDDLE).is_zero()

    def test_closed_generators(self):
        for name in GENERATORS:
            assert Form.generator(name).exterior_derivative(Region.MIDDLE).is_zero()

    def test_leibniz_rule(self):
        x = RationalFunction.variable("x")
        y = RationalFunction.variable("y")
        a = Form.from_terms((x * y, "dz"))  # degree 1
        b = Form.from_terms((x + y, "dw", "ds1"))  # degree 2
        lhs = a.wedge(b).exterior_derivative(Region.MIDDLE)
        rhs = a.exterior_derivative(Region.MIDDLE).wedge(b) - a.wedge(
            b.exterior_derivative(Region.MIDDLE)
        )
        assert lhs == rhs

    def test_abstract_profile_rejected_in_middle(self):
        f = RationalFunction.variable("f")
        form = Form.from_terms((f, "dz"))
        with pytest.raises(ValueError):
            form.exterior_derivative(Region.MIDDLE)
        # but concrete regions resolve f first
        assert form.exterior_derivative(Region.INNER).is_zero()


class TestCoframeMap:
    def test_identity(self):
        omega = standard_symplectic_form()
        assert CoframeMap.identity().pullback(omega) == omega

    def test_pullback_is_algebra_morphism(self):
        phi = gluing_map(3)
        a = Form.from_terms((1, "dw"), (2, "dx"))
        b = Form.from_terms((1, "dy", "dz"))
        assert phi.pullback(a.wedge(b)) == phi.pullback(a).wedge(phi.pullback(b))
        assert phi.pullback(a + b) == phi.pullback(a) + phi.pullback(b)

    def test_non_invertible_rejected(self):
        with pytest.raises(ValueError):
            CoframeMap({"dw": Form.generator("dz")})

    def test_inverse(self):
        phi = gluing_map(2)
        inv = phi.inverse()
        dw = Form.generator("dw")
        assert inv.pullback(phi.pullback(dw)) == dw
        assert phi.pullback(inv.pullback(dw)) == dw

    def test_compose_contract(self):
        phi = gluing_map(2)
        shear = CoframeMap(
            {"dz": Form.from_terms((1, "dz"), (1, "dw"))}
        )
        omega = standard_symplectic_form()
        composed = compose(phi, shear)
        assert composed.pullback(omega) == shear.pullback(phi.pullback(omega))

    def test_compose_symbol_substitution(self):
        f = RationalFunction.variable("f")
        fix_f = CoframeMap({}, Region.OUTER.substitution())
        phi = gluing_map(1)
        composed = compose(fix_f, phi)
        form = Form.from_terms((f, "dw"))
        assert composed.pullback(form) == phi.pullback(fix_f.pullback(form))


class TestLinearOperator:
    def test_flat_structure_squares_to_minus_identity(self):
        j0 = almost_complex_structure(0)
        assert j0.is_almost_complex()
        assert mat_equal(j0.square(), mat_neg(mat_identity(6)))

    def test_twisted_structure_squares_to_minus_identity(self):
        jk = almost_complex_structure("symbolic")
        assert jk.is_almost_complex()

    def test_swap_is_not_almost_complex(self):
        swap = LinearOperator(
            {"dx": Form.generator("dy"), "dy": Form.generator("dx")}
        )
        assert not swap.is_almost_complex()

    def test_call_matches_matrix_action(self):
        jk = almost_complex_structure(2)
        dw = Form.generator("dw")
        image = jk(dw)
        for i, gen in enumerate(GENERATORS):
            assert image.coefficient(gen) == jk.matrix[i][GENERATORS.index("dw")]

    def test_operator_rejects_higher_degree(self):
        j0 = almost_complex_structure(0)
        with pytest.raises(ValueError):
            j0(Form.from_terms((1, "dx", "dy")))

    def test_conjugation_by_identity(self):
        jk = almost_complex_structure(1)
        assert jk.conjugate_by(CoframeMap.identity()) == jk

    def test_pullback_functoriality(self):
        j0 = almost_complex_structure(0)
        phi = gluing_map(2)
        shear = CoframeMap({"dz": Form.from_terms((1, "dz"), (2, "dw"))})
        lhs = operator_pullback(compose(phi, shear), j0)
        rhs = operator_pullback(shear, operator_pullback(phi, j0))
        assert lhs == rhs


class TestCompatibility:
    SAMPLES = [
        {"x": Fraction(3, 4), "y": 0, "f": 0},
        {"x": 0, "y": Fraction(1, 2), "f": 1},
    ]

    def test_flat_structure_compatible(self):
        rep = compatibility_check(
            almost_complex_structure(0),
            standard_symplectic_form(),
            Region.INNER,
            self.SAMPLES,
        )
        assert rep.passed
        assert rep.sample_count == 2

    def test_orientation_reversal_fails_positivity(self):
        j0 = almost_complex_structure(0)
        minus = LinearOperator.from_matrix(mat_neg(j0.matrix))
        rep = compatibility_check(
            minus, standard_symplectic_form(), Region.INNER, self.SAMPLES
        )
        # -J preserves omega but induces the negative-definite metric.
        assert rep.invariant and rep.symmetric
        assert rep.positivity_failures

    def test_incompatible_operator_detected(self):
        swap = LinearOperator(
            {
                "dx": Form.generator("dy"),
                "dy": -Form.generator("dx"),
                "dz": Form.generator("dw"),
                "dw": -Form.generator("dz"),
                "ds1": Form.generator("ds2"),
                "ds2": -Form.generator("ds1"),
            }
        )
        rep = compatibility_check(
            swap, standard_symplectic_form(), Region.INNER, self.SAMPLES
        )
        assert not rep.passed
