import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwalk.arithmetic import (
    Angle,
    SqrtTwo,
    SqrtTwoComplex,
    guard_bits,
    neumaier_sum,
    precision_for,
)

fractions = st.fractions(
    min_value=-100, max_value=100, max_denominator=64
)
ring_elements = st.builds(SqrtTwo, fractions, fractions)


class TestAngle:
    @pytest.mark.parametrize(
        "text,num,den",
        [
            ("1/4 pi", 1, 4),
            ("pi", 1, 1),
            ("-1/2 pi", -1, 2),
            ("3 pi", 3, 1),
            ("  7/4pi ", 7, 4),
            ("1/4 * pi", 1, 4),
        ],
    )
    def test_parse_pi_strings(self, text, num, den):
        a = Angle.parse(text)
        assert a.is_pi_rational
        assert math.isclose(a.radians, math.pi * num / den % (2 * math.pi))

    def test_parse_float_is_radians(self):
        a = Angle.parse(1.25)
        assert not a.is_pi_rational
        assert a.radians == 1.25

    @pytest.mark.parametrize("bad", ["pie", "1/4", "pi/4x", "1//2 pi", [], None])
    def test_parse_rejects_garbage(self, bad):
        with pytest.raises((ValueError, TypeError)):
            Angle.parse(bad)

    def test_canonical_mod_two_pi(self):
        assert Angle.parse("9/4 pi") == Angle.parse("1/4 pi")
        assert Angle.parse("-1/4 pi") == Angle.parse("7/4 pi")

    def test_addition_and_negation(self):
        a = Angle.parse("1/4 pi") + Angle.parse("1/2 pi")
        assert a == Angle.parse("3/4 pi")
        assert -Angle.parse("1/4 pi") == Angle.parse("7/4 pi")

    @pytest.mark.parametrize("num", range(8))
    def test_exact_trig_on_eighth_turns(self, num):
        a = Angle.from_pi_fraction(num, 4)
        c, s = a.cos_exact(), a.sin_exact()
        assert c is not None and s is not None
        assert math.isclose(float(c), math.cos(a.radians), abs_tol=1e-15)
        assert math.isclose(float(s), math.sin(a.radians), abs_tol=1e-15)
        e = a.exp_i_exact()
        assert math.isclose(float(e.re), math.cos(a.radians), abs_tol=1e-15)
        assert math.isclose(float(e.im), math.sin(a.radians), abs_tol=1e-15)

    def test_off_grid_has_no_exact_trig(self):
        assert Angle.from_pi_fraction(1, 3).cos_exact() is None
        assert Angle.parse(0.7).sin_exact() is None

    def test_mp_radians_matches_float(self):
        a = Angle.parse("1/3 pi")
        assert math.isclose(float(a.mp_radians()), a.radians, rel_tol=1e-15)


class TestSqrtTwo:
    @given(ring_elements, ring_elements)
    def test_mul_matches_floats(self, x, y):
        assert math.isclose(
            float(x * y), float(x) * float(y), rel_tol=1e-12, abs_tol=1e-9
        )

    @given(ring_elements, ring_elements, ring_elements)
    @settings(max_examples=60)
    def test_ring_axioms(self, x, y, z):
        assert x * (y + z) == x * y + x * z
        assert (x + y) + z == x + (y + z)
        assert x * y == y * x

    def test_sqrt2_squares_to_two(self):
        r = SqrtTwo(0, 1)
        assert r * r == SqrtTwo(2, 0)

    def test_mixed_scalar_ops(self):
        assert SqrtTwo(1, 1) + 1 == SqrtTwo(2, 1)
        assert 2 * SqrtTwo(1, 0) == SqrtTwo(2, 0)
        assert 1 - SqrtTwo(0, 1) == SqrtTwo(1, -1)

    def test_float_value(self):
        assert math.isclose(float(SqrtTwo(Fraction(1, 2), Fraction(1, 2))),
                            0.5 + 0.5 * math.sqrt(2))


class TestSqrtTwoComplex:
    def test_abs_sq_of_unit(self):
        half_rt2 = SqrtTwo(0, Fraction(1, 2))
        z = SqrtTwoComplex(half_rt2, half_rt2)
        assert z.abs_sq() == SqrtTwo(1, 0)

    def test_conjugate_product_is_abs_sq(self):
        z = SqrtTwoComplex(SqrtTwo(1, 2), SqrtTwo(Fraction(1, 3), -1))
        w = z * z.conjugate()
        assert w.im.is_zero
        assert w.re == z.abs_sq()

    @given(st.integers(min_value=0, max_value=24))
    @settings(max_examples=25)
    def test_pow_matches_complex(self, n):
        z = SqrtTwoComplex(SqrtTwo(Fraction(1, 2), 0), SqrtTwo(0, Fraction(1, 2)))
        exact = z**n
        via_floats = z.to_complex() ** n
        assert abs(exact.to_complex() - via_floats) < 1e-9

    def test_i_unit(self):
        i = SqrtTwoComplex.i_unit()
        assert i * i == -SqrtTwoComplex.one()


class TestPrecision:
    def test_guard_bits_default(self, monkeypatch):
        monkeypatch.delenv("QWALK_PRECISION_GUARD_BITS", raising=False)
        assert guard_bits() == 64

    def test_guard_bits_env_override(self, monkeypatch):
        monkeypatch.setenv("QWALK_PRECISION_GUARD_BITS", "128")
        assert guard_bits() == 128

    @pytest.mark.parametrize("bad", ["-3", "zero", ""])
    def test_guard_bits_rejects_invalid(self, monkeypatch, bad):
        monkeypatch.setenv("QWALK_PRECISION_GUARD_BITS", bad)
        with pytest.raises(ValueError):
            guard_bits()

    def test_precision_floor(self, monkeypatch):
        monkeypatch.delenv("QWALK_PRECISION_GUARD_BITS", raising=False)
        assert precision_for(10) >= 53
        assert precision_for(1000) == 1000 + 64


class TestNeumaier:
    def test_cancellation_prone_sum(self):
        # 1 + 2^60 - 2^60 collapses to 0 in naive left-to-right float
        # addition; the compensated sum keeps the 1.
        values = [1.0, 2.0**60, -(2.0**60)]
        assert neumaier_sum(values) == 1.0

    def test_matches_fsum(self):
        rng = random.Random(5)
        values = [rng.gauss(0, 1) * 10 ** rng.randint(-8, 8) for _ in range(500)]
        assert math.isclose(neumaier_sum(values), math.fsum(values), rel_tol=1e-12)
