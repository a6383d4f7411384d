"""End-to-end symbolic identity checks and their negative controls."""

import json

from torus_surgery.coefficients import Polynomial, RationalFunction, I
from torus_surgery.forms import Form, Region
from torus_surgery.surgery import SL2Z
from torus_surgery.verification import (
    canonical_section,
    canonical_section_flat,
    check_lemma2,
    check_theorem5,
    correction_form,
    eigenform_product,
    gluing_map,
    interpolated_form,
    negative_control_reports,
    positivity_samples,
    standard_symplectic_form,
    unit_scale,
    almost_complex_structure,
)


class TestGluingFormInterpolation:
    def test_passes_for_concrete_k(self):
        rep = check_lemma2(0)
        assert rep.passed
        rep = check_lemma2(3)
        assert rep.passed

    def test_passes_symbolically(self):
        rep = check_lemma2("symbolic")
        assert rep.passed
        # every labelled family is present
        labels = [c.label for c in rep.claims]
        assert sum(l.startswith("(a)") for l in labels) == 4
        assert sum(l.startswith("(d)") for l in labels) == 2
        assert sum(l.startswith("(e)") for l in labels) == 6

    def test_k_zero_interpolation_is_trivial(self):
        assert interpolated_form(0) == standard_symplectic_form()

    def test_pullback_of_symplectic_form(self):
        x = Polynomial.variable("x")
        y = Polynomial.variable("y")
        ky = 5 * y
        expected = standard_symplectic_form() + Form.from_terms(
            (-RationalFunction(ky, x * x + y * y), "dx", "dy")
        )
        assert gluing_map(5).pullback(standard_symplectic_form()) == expected

    def test_sign_flip_control_fails_on_outer_agreement(self):
        rep = check_lemma2("symbolic", corrupt_alpha_sign=True)
        assert not rep.passed
        failing = [c for c in rep.claims if not c.passed]
        assert any("(c)" in c.label for c in failing)
        # the residual is twice the correction term on the outer annulus
        outer = [c for c in failing if "outer" in c.label]
        assert outer and outer[0].residual is not None
        corrupted = interpolated_form("symbolic", corrupt_sign=True)
        pulled = gluing_map("symbolic").pullback(standard_symplectic_form())
        residual = corrupted.in_region(Region.OUTER) - pulled
        expected = -2 * correction_form("symbolic").in_region(Region.OUTER)
        assert residual == expected


class TestCanonicalSection:
    def test_flat_section_recovered_at_k_zero(self):
        assert canonical_section(0) == canonical_section_flat()

    def test_unit_normalization(self):
        section = canonical_section("symbolic")
        assert section.coefficient("dx", "dw", "ds1") == RationalFunction.constant(1)

    def test_closed_in_every_region(self):
        section = canonical_section("symbolic")
        for region in (Region.INNER, Region.OUTER):
            assert section.exterior_derivative(region).is_zero()

    def test_eigenform_product_carries_the_unit(self):
        j = almost_complex_structure("symbolic")
        raw = eigenform_product(j)
        assert raw == canonical_section("symbolic") * unit_scale("symbolic")

    def test_unit_scale_never_vanishes(self):
        # real part is the constant 1, so the factor has no zeros
        u = unit_scale("symbolic")
        conj = RationalFunction.constant(2) - u  # 1 - i k x f
        norm_sq = u * conj
        kxf = (
            RationalFunction.variable("k")
            * RationalFunction.variable("x")
            * RationalFunction.variable("f")
        )
        assert norm_sq == RationalFunction.constant(1) + kxf * kxf


class TestCanonicalClassVanishing:
    def test_passes_for_identity_twist(self):
        assert check_theorem5(0).passed
        assert check_theorem5(4).passed

    def test_passes_symbolically(self):
        rep = check_theorem5("symbolic")
        assert rep.passed

    def test_passes_for_generators_of_the_twist_group(self):
        for tau in (SL2Z(1, 1, 0, 1), SL2Z(0, -1, 1, 0)):
            assert check_theorem5("symbolic", tau).passed

    def test_passes_for_asymmetric_twist_and_its_inverse(self):
        tau = SL2Z(2, 3, 1, 2)
        assert check_theorem5(2, tau).passed
        assert check_theorem5(2, tau.inverse()).passed

    def test_positivity_sample_counts(self):
        assert len(positivity_samples(3)) == 8
        assert len(positivity_samples("symbolic")) == 7 * 8

    def test_dropped_quadratic_term_control_fails(self):
        rep = check_theorem5("symbolic", drop_quadratic_term=True)
        assert not rep.passed
        failing = [c.label for c in rep.claims if not c.passed]
        assert any("J^2" in label for label in failing)


class TestNegativeControls:
    def test_both_controls_fail_as_designed(self):
        controls = negative_control_reports("symbolic")
        assert set(controls) == {"alpha-sign-flip", "dropped-quadratic-term"}
        for rep in controls.values():
            assert not rep.passed


class TestReports:
    def test_json_shape_and_determinism(self):
        rep = check_lemma2(1)
        doc = rep.to_json()
        assert doc["check"] == "gluing-form-interpolation"
        assert doc["passed"] is True
        assert all(c["passed"] for c in doc["claims"])
        again = check_lemma2(1).to_json()
        assert json.dumps(doc) == json.dumps(again)

    def test_failing_claim_records_residual(self):
        rep = check_lemma2(1, corrupt_alpha_sign=True)
        failing = [c for c in rep.to_json()["claims"] if not c["passed"]]
        assert failing and all("residual" in c for c in failing)
