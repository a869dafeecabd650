from fractions import Fraction

import pytest

from conftest import Q
from conftest import Z
from conftest import poly
from qshuffle.enums import ProductMode
from qshuffle.enums import SeriesName
from qshuffle.exceptions import CompositionError
from qshuffle.exceptions import LetterError
from qshuffle.exceptions import NotInvertibleError
from qshuffle.exceptions import TruncationError
from qshuffle.exceptions import UnknownNameError
from qshuffle.lambda_series import IdentityParams
from qshuffle.lambda_series import LambdaLinComb
from qshuffle.lambda_series import LambdaSeries
from qshuffle.lambda_series import apply_series
from qshuffle.lambda_series import bullet_power
from qshuffle.lambda_series import bullet_product
from qshuffle.lambda_series import check_identity
from qshuffle.lambda_series import exp_bullet
from qshuffle.lambda_series import f_bullet
from qshuffle.lambda_series import geometric
from qshuffle.lambda_series import identity_names
from qshuffle.lambda_series import lift_map
from qshuffle.lambda_series import log_bullet
from qshuffle.lambda_series import series_inverse
from qshuffle.series_maps import SIGMA
from qshuffle.series_maps import NamedSeries
from qshuffle.word_algebra import NcPoly


def letters(*texts, alphabet=Z):
    return LambdaLinComb.of(*(poly(text, alphabet) for text in texts))


class TestLambdaSeries:
    def test_geometric(self):
        g = geometric(letters("z1"), 3)
        assert g.coeffs == (poly("1"), poly("z1"), poly("z1 z1"), poly("z1 z1 z1"))

    def test_geometric_with_higher_parts(self):
        g = geometric(letters("z1", "z2"), 2)
        assert g.coefficient(2) == poly("z1 z1 + z2")

    def test_inverse(self):
        x = LambdaSeries.one(Z, 3) - letters("z1").lam_times(3)
        assert bullet_product(ProductMode.CONCAT, x, series_inverse(ProductMode.CONCAT, x)) == LambdaSeries.one(Z, 3)

    def test_inverse_needs_unit_constant(self):
        with pytest.raises(NotInvertibleError):
            series_inverse(ProductMode.QSH, LambdaSeries.constant(Z, 2, 2))

    def test_qsh_square(self):
        lam_z = letters("z1").lam_times(2)
        assert bullet_product(ProductMode.QSH, lam_z, lam_z).coefficient(2) == poly("2*z1 z1 + z2")

    def test_first_difference(self):
        a = geometric(letters("z1"), 3)
        b = geometric(letters("z2"), 3)
        assert a.first_difference(a) is None
        assert a.first_difference(b) == (1, poly("z1 - z2"))

    def test_order_mismatch(self):
        with pytest.raises(TruncationError):
            LambdaSeries.one(Z, 2) + LambdaSeries.one(Z, 3)

    def test_letter_parts_only(self):
        with pytest.raises(LetterError):
            letters("z1 z2")
        with pytest.raises(LetterError):
            letters("1")

    def test_apply_series_needs_zero_constant(self):
        with pytest.raises(CompositionError):
            apply_series(ProductMode.QSH, NamedSeries(SeriesName.EXP), LambdaSeries.one(Z, 2))

    def test_exp_shuffle_is_geometric(self):
        z = letters("z2")
        assert exp_bullet(ProductMode.SHUFFLE, z.lam_times(4)) == geometric(z, 4)

    def test_exp_log_roundtrip(self):
        x = geometric(letters("z1", "z3"), 4)
        for mode in ProductMode:
            assert exp_bullet(mode, log_bullet(mode, x)) == x

    def test_fractional_power(self):
        x = geometric(letters("z1"), 4)
        root = bullet_power(ProductMode.QSH, x, Fraction(1, 2))
        assert bullet_product(ProductMode.QSH, root, root) == x
        assert bullet_power(ProductMode.QSH, x, Fraction(2)) == bullet_product(ProductMode.QSH, x, x)
        assert bullet_product(ProductMode.QSH, x, bullet_power(ProductMode.QSH, x, -1)) == LambdaSeries.one(Z, 4)

    def test_f_bullet_diamond(self):
        f = NamedSeries(SeriesName.GEOMETRIC)
        image = f_bullet(ProductMode.DIAMOND, f, letters("z1"), 3)
        assert image.coeffs == (NcPoly.zero(Z), poly("z1"), poly("z2"), poly("z3"))

    def test_lift_map(self):
        lifted = lift_map(SIGMA, geometric(letters("z1"), 2))
        assert lifted.coefficient(2) == poly("z1 z1 + z2")


def params(alphabet=Z, order=4, **kwargs):
    return IdentityParams(alphabet=alphabet, order=order, **kwargs)


class TestIdentities:
    def test_names(self):
        assert identity_names() == [
            "dblfrac",
            "expid",
            "expsum",
            "expthm",
            "frprod",
            "hpow",
            "ihafid",
            "ikz_remark",
            "logexp",
            "psifinv",
            "repr",
            "siinv",
        ]

    def test_expthm(self):
        report = check_identity("expthm", params(order=5, z=letters("z2")))
        assert report.ok
        assert len(report.parts) == 3

    def test_expthm_over_q(self):
        assert check_identity("expthm", params(Q, order=4, z=letters("z1", "eps*z2", alphabet=Q))).ok

    @pytest.mark.parametrize("s", [Fraction(0), Fraction(1, 2), Fraction(3)])
    def test_siinv(self, s):
        assert check_identity("siinv", params(order=4, z=letters("z2"), s=s)).ok

    def test_frprod(self):
        assert check_identity("frprod", params(order=4, y=letters("z1"), z=letters("z2"))).ok

    def test_ihafid_defaults(self):
        report = check_identity("ihafid", params(z=letters("z1")))
        assert report.ok
        assert len(report.parts) == 3

    def test_ihafid_custom_series(self):
        series = NamedSeries(SeriesName.BINOMIAL, Fraction(1, 3))
        assert check_identity("ihafid", params(z=letters("z1", "z2"), series=series)).ok

    def test_ikz_remark(self):
        assert check_identity("ikz_remark", params(z=letters("z1"))).ok

    @pytest.mark.parametrize("p", [Fraction(2), Fraction(1, 2), Fraction(-1)])
    def test_hpow(self, p):
        assert check_identity("hpow", params(order=3, z=letters("z1"), p=p)).ok

    def test_psifinv(self):
        assert check_identity("psifinv", params(order=4, z=letters("z1"))).ok
        assert check_identity("psifinv", params(order=3, z=letters("z2"), s=Fraction(1, 2), p=Fraction(2))).ok

    def test_repr(self):
        assert check_identity("repr", params(order=4, z=letters("z1"), r=Fraction(1, 2))).ok

    def test_dblfrac(self):
        assert check_identity("dblfrac", params(order=4, a=(1,), b=(2,))).ok

    def test_expsum(self):
        for mode in (ProductMode.QSH, ProductMode.QSH_STAR, ProductMode.SHUFFLE):
            assert check_identity("expsum", params(order=3, y=letters("z1"), z=letters("z2"), mode=mode)).ok

    def test_expsum_fails_for_concatenation(self):
        report = check_identity("expsum", params(order=3, y=letters("z1"), z=letters("z2"), mode=ProductMode.CONCAT))
        assert not report.ok
        assert report.degree == 2
        assert report.difference == str(poly("1/2*z2 z1 - 1/2*z1 z2"))

    def test_expid(self):
        assert check_identity("expid", params(z=letters("z3"))).ok

    def test_logexp(self):
        report = check_identity("logexp", params(order=3, z=letters("z1")))
        assert report.ok
        assert len(report.parts) == 2 * len(ProductMode)

    def test_errors(self):
        with pytest.raises(UnknownNameError):
            check_identity("nope", params(z=letters("z1")))
        with pytest.raises(UnknownNameError):
            check_identity("expthm", params())
        with pytest.raises(TruncationError):
            check_identity("expthm", params(order=0, z=letters("z1")))
