import os
import sys
import unittest

# Add src directory to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from nilmult.abelian import FinAbelian, multiplier_abelian, normalize
from nilmult.descriptor import parse
from nilmult.exceptions import (
    BoundArgumentError,
    ClassNotCoveredError,
    DerivedSubgroupError,
    MalformedDescriptorError,
    NotPositiveError,
    NotPrimeError,
    TooSmallError,
)
from nilmult.pgroups import (
    Abelian,
    CenterType,
    ExtraSpecial,
    ExtraSpecialType,
    GeneralizedExtraSpecial,
    Product,
    attains_order_bound,
    capability,
    central_product_schur_exponent,
    direct_product,
    format_order,
    format_power,
    gamma_star_dihedral,
    multiplier,
    order_bound_exponent,
)
from nilmult.witt import witt

EXP_P = ExtraSpecialType.EXP_P
EXP_P2 = ExtraSpecialType.EXP_P2
D8 = ExtraSpecialType.D8
Q8 = ExtraSpecialType.Q8
SPLIT = CenterType.SPLIT
CENTRAL = CenterType.CENTRAL


def _variants(p: int) -> tuple[ExtraSpecialType, ...]:
    return (D8, Q8) if p == 2 else (EXP_P, EXP_P2)


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def _derived_order_p_groups(p: int, max_log_order: int) -> list:
    """Every recognized group with |G'| = p and order at most p^max_log_order."""
    found: list = []
    for m in range(1, (max_log_order - 1) // 2 + 1):
        for variant in _variants(p):
            for r in range(max_log_order - 2 * m):
                found.append(GeneralizedExtraSpecial(p, m, SPLIT, r, variant))
            for r in range(max_log_order - 2 * m - 1):
                found.append(GeneralizedExtraSpecial(p, m, CENTRAL, r, variant))
    return found


class TestDescriptors(unittest.TestCase):
    """Test cases for group descriptors."""

    def test_orders(self) -> None:
        """Test orders and abelianizations."""
        self.assertEqual(ExtraSpecial(3, 2, EXP_P).order, 3 ** 5)
        self.assertEqual(ExtraSpecial(3, 2, EXP_P).abelianization, FinAbelian.elementary(3, 4))
        self.assertEqual(GeneralizedExtraSpecial(5, 1, SPLIT, 2).order, 5 ** 5)
        self.assertEqual(GeneralizedExtraSpecial(5, 1, CENTRAL, 2).order, 5 ** 6)
        self.assertEqual(GeneralizedExtraSpecial(5, 1, CENTRAL, 2).abelianization,
                         FinAbelian.elementary(5, 5))

    def test_variant_checks(self) -> None:
        """Test impossible variants and non-primes."""
        with self.assertRaises(MalformedDescriptorError) as ctx:
            ExtraSpecial(3, 1, D8)
        self.assertIn("D8 requires p=2", str(ctx.exception))
        with self.assertRaises(MalformedDescriptorError):
            ExtraSpecial(2, 1, EXP_P)
        with self.assertRaises(NotPrimeError):
            ExtraSpecial(4, 1, EXP_P)
        with self.assertRaises(MalformedDescriptorError):
            ExtraSpecial(3, 0, EXP_P)
        with self.assertRaises(MalformedDescriptorError):
            GeneralizedExtraSpecial(3, 1, SPLIT, -1)

    def test_default_variant(self) -> None:
        """Test the default extra-special factor of a generalized group."""
        self.assertEqual(GeneralizedExtraSpecial(3, 1, SPLIT).variant, EXP_P)
        self.assertEqual(GeneralizedExtraSpecial(2, 1, SPLIT).variant, D8)
        self.assertEqual(str(GeneralizedExtraSpecial(3, 1, SPLIT, 2, EXP_P)), 'GES(3;1;split;2)')
        self.assertEqual(str(GeneralizedExtraSpecial(2, 1, CENTRAL, 0, Q8)),
                         'GES(2;1;central;0;Q8)')

    def test_direct_product(self) -> None:
        """Test flattening, merging of abelian factors and dropping trivial ones."""
        e1 = ExtraSpecial(3, 1, EXP_P)
        z3 = Abelian(FinAbelian.elementary(3, 1))
        inner = direct_product(e1, z3)
        self.assertEqual(inner, Product((e1, z3)))
        self.assertEqual(direct_product(z3, inner),
                         Product((e1, Abelian(FinAbelian.elementary(3, 2)))))
        self.assertEqual(direct_product(Abelian(FinAbelian.trivial()), e1), e1)
        self.assertEqual(direct_product(), Abelian(FinAbelian.trivial()))
        self.assertEqual(str(inner), 'ES(3;1;expP) x Ab(3;1)')

    def test_format_order(self) -> None:
        """Test prime-power rendering of orders."""
        self.assertEqual(format_order(3 ** 12), '3^12')
        self.assertEqual(format_order(40), '2^3*5')
        self.assertEqual(format_order(1), '1')

    def test_format_power(self) -> None:
        """Test rendering of orders given as prime exponents."""
        self.assertEqual(format_power([(3, 12)]), '3^12')
        self.assertEqual(format_power([(5, 1), (2, 3)]), '2^3*5')
        self.assertEqual(format_power([]), '1')
        self.assertEqual(format_power([(3, 10 ** 9)]), '3^1000000000')


class TestExtraSpecialMultipliers(unittest.TestCase):
    """Test cases for multipliers of extra-special groups."""

    def test_schur_multipliers(self) -> None:
        """Test the c = 1 table."""
        for p in (3, 5):
            self.assertEqual(multiplier(ExtraSpecial(p, 1, EXP_P), 1).structure,
                             FinAbelian.elementary(p, 2))
            self.assertTrue(multiplier(ExtraSpecial(p, 1, EXP_P2), 1).structure.is_trivial)
            for m in (2, 3):
                self.assertEqual(multiplier(ExtraSpecial(p, m, EXP_P), 1).structure,
                                 FinAbelian.elementary(p, 2 * m * m - m - 1))
        self.assertEqual(multiplier(ExtraSpecial(2, 1, D8), 1).structure, normalize([2]))
        self.assertTrue(multiplier(ExtraSpecial(2, 1, Q8), 1).structure.is_trivial)
        self.assertEqual(multiplier(ExtraSpecial(2, 1, D8), 1).provenance, 'schur-extraspecial')

    def test_large_extraspecial(self) -> None:
        """Test M(ES(p;m)) = Z_p^{χ_{c+1}(2m)} for m > 1, any variant."""
        for p in (2, 3, 5):
            for variant in _variants(p):
                for m in (2, 3):
                    for c in (2, 3, 4):
                        result = multiplier(ExtraSpecial(p, m, variant), c)
                        self.assertEqual(result.structure,
                                         FinAbelian.elementary(p, witt(c + 1, 2 * m)))
                        self.assertEqual(result.provenance, 'extraspecial-large')
        self.assertEqual(str(multiplier(ExtraSpecial(5, 2, EXP_P), 2)), 'Z(5)^20')

    def test_rank_beyond_memory(self) -> None:
        """Test that elementary multipliers of astronomical rank stay counted, not listed."""
        g = ExtraSpecial(3, 10, EXP_P)
        result = multiplier(g, 5)
        self.assertEqual(witt(6, 20), 10665270)
        self.assertEqual(result.structure, FinAbelian.elementary(3, 10665270))
        self.assertEqual(str(result), 'Z(3)^10665270')
        self.assertEqual(result.log_order(3), 10665270)
        self.assertEqual(result.to_json(), {
            "structure": [{"p": 3, "exponents": [1], "multiplicities": [10665270]}],
            "log_order": [{"p": 3, "exponent": 10665270}]})
        self.assertEqual(multiplier(g, 7).log_order(3), 3199980000)
        product = multiplier(direct_product(g, Abelian(FinAbelian.elementary(3, 1))), 5)
        self.assertEqual(product.structure, FinAbelian.elementary(3, witt(6, 21)))

    def test_order_p_cubed(self) -> None:
        """Test the four groups of order p^3 for c >= 2."""
        for c in (2, 3, 4):
            two, three = witt(c + 1, 2), witt(c + 2, 2)
            for p in (3, 5, 7):
                self.assertEqual(multiplier(ExtraSpecial(p, 1, EXP_P), c).structure,
                                 FinAbelian.elementary(p, two + three))
                self.assertEqual(multiplier(ExtraSpecial(p, 1, EXP_P2), c).structure,
                                 FinAbelian.elementary(p, two))
            self.assertEqual(multiplier(ExtraSpecial(2, 1, Q8), c).structure,
                             FinAbelian.elementary(2, two))
            self.assertEqual(multiplier(ExtraSpecial(2, 1, D8), c).structure,
                             normalize([4]) + FinAbelian.elementary(2, two - 1))
        self.assertEqual(str(multiplier(ExtraSpecial(2, 1, D8), 2)), 'Z(2^2) + Z(2)')
        self.assertEqual(multiplier(ExtraSpecial(3, 1, EXP_P), 2).structure,
                         FinAbelian.elementary(3, 5))

    def test_non_capable_match_abelianization(self) -> None:
        """Test that non-capable extra-special groups share M with G/G' for c >= 2."""
        groups = [ExtraSpecial(3, 1, EXP_P2), ExtraSpecial(2, 1, Q8),
                  ExtraSpecial(3, 2, EXP_P), ExtraSpecial(2, 2, D8)]
        for g in groups:
            for c in (2, 3):
                self.assertEqual(multiplier(g, c).structure,
                                 multiplier_abelian(g.abelianization, c))

    def test_dihedral_against_gamma_star(self) -> None:
        """Test M(D8) against γ*_{c+1} of the dihedral group of order 8."""
        for c in (2, 3, 4):
            self.assertEqual(multiplier(ExtraSpecial(2, 1, D8), c).structure,
                             gamma_star_dihedral(4, c))

    def test_bad_class(self) -> None:
        """Test that c must be positive."""
        with self.assertRaises(NotPositiveError):
            multiplier(ExtraSpecial(3, 1, EXP_P), 0)


class TestGeneralizedMultipliers(unittest.TestCase):
    """Test cases for generalized extra-special groups and products."""

    def test_split_is_product(self) -> None:
        """Test that E x Z_p^r goes through the direct-product formula."""
        for n in range(3, 9):
            for c in (2, 3):
                g = GeneralizedExtraSpecial(3, 1, SPLIT, n - 3)
                expected = witt(c + 1, n - 1) + witt(c + 2, 2)
                self.assertEqual(multiplier(g, c).structure, FinAbelian.elementary(3, expected))
        self.assertEqual(multiplier(GeneralizedExtraSpecial(3, 1, SPLIT, 0), 2).provenance,
                         'extraspecial-exponent-p')

    def test_central_class_two(self) -> None:
        """Test central products at c >= 2."""
        result = multiplier(GeneralizedExtraSpecial(5, 1, CENTRAL, 0), 2)
        self.assertEqual(result.structure, FinAbelian.elementary(5, 2))
        self.assertEqual(result.provenance, 'central-product')
        result = multiplier(GeneralizedExtraSpecial(3, 1, CENTRAL, 2), 2)
        self.assertEqual(result.structure, FinAbelian.elementary(3, 34))
        result = multiplier(GeneralizedExtraSpecial(3, 2, CENTRAL, 1), 2)
        self.assertEqual(result.structure, FinAbelian.elementary(3, 50))

    def test_central_schur_is_order_only(self) -> None:
        """Test that c = 1 central products report the order alone."""
        result = multiplier(GeneralizedExtraSpecial(3, 1, CENTRAL, 0), 1)
        self.assertTrue(result.is_order_only)
        self.assertEqual(result.order, 3 ** 2)
        self.assertEqual(str(result), 'order 3^2')
        self.assertEqual(result.to_json(),
                         {"structure": None, "log_order": [{"p": 3, "exponent": 2}]})
        result = multiplier(GeneralizedExtraSpecial(3, 2, CENTRAL, 1), 1)
        self.assertEqual(result.order, 3 ** 14)
        self.assertEqual(central_product_schur_exponent(1, 1), 5)

    def test_order_only_factor_in_product(self) -> None:
        """Test that an order-only factor keeps the product order consistent."""
        g = direct_product(GeneralizedExtraSpecial(3, 1, CENTRAL, 0),
                           Abelian(FinAbelian.elementary(3, 1)))
        result = multiplier(g, 1)
        self.assertTrue(result.is_order_only)
        expected = multiplier(GeneralizedExtraSpecial(3, 1, CENTRAL, 1), 1)
        self.assertEqual(result.order_exponents, expected.order_exponents)
        self.assertEqual(result.order, expected.order)

    def test_product_of_two_extraspecial(self) -> None:
        """Test the fold over two non-abelian factors."""
        e1 = ExtraSpecial(3, 1, EXP_P)
        result = multiplier(direct_product(e1, e1), 2)
        self.assertEqual(result.structure, FinAbelian.elementary(3, 5 + 5 + 16))
        self.assertEqual(result.provenance, 'direct-product')

    def test_abelian_descriptor(self) -> None:
        """Test that abelian descriptors use the abelian formula."""
        g = Abelian(normalize([6, 6]))
        result = multiplier(g, 2)
        self.assertEqual(result.structure, multiplier_abelian(g.group, 2))
        self.assertEqual(result.provenance, 'abelian')


class TestBounds(unittest.TestCase):
    """Test cases for the order bound and its attainment."""

    def test_exponents(self) -> None:
        """Test closed values of the bound."""
        self.assertEqual(order_bound_exponent(4, 1, 2), 11)
        self.assertEqual(order_bound_exponent(5, 2, 2), 20)
        self.assertEqual(order_bound_exponent(3, 1, 2), 5)
        self.assertEqual(order_bound_exponent(6, 1, 3), 156)
        self.assertEqual(order_bound_exponent(5, 2, 3), 51)

    def test_bad_arguments(self) -> None:
        """Test n <= m, m < 1 and c < 2."""
        with self.assertRaises(BoundArgumentError):
            order_bound_exponent(2, 2, 2)
        with self.assertRaises(BoundArgumentError):
            order_bound_exponent(3, 0, 2)
        with self.assertRaises(TooSmallError):
            order_bound_exponent(4, 1, 1)

    def test_attains(self) -> None:
        """Test attainment on named groups."""
        self.assertTrue(attains_order_bound(GeneralizedExtraSpecial(3, 1, SPLIT, 2), 2))
        self.assertTrue(attains_order_bound(ExtraSpecial(5, 1, EXP_P), 3))
        self.assertFalse(attains_order_bound(ExtraSpecial(2, 1, D8), 2))
        self.assertFalse(attains_order_bound(ExtraSpecial(5, 2, EXP_P), 2))
        self.assertFalse(attains_order_bound(GeneralizedExtraSpecial(3, 1, CENTRAL, 0), 2))

    def test_derived_subgroup_checks(self) -> None:
        """Test groups whose derived subgroup is not of order p."""
        e1 = ExtraSpecial(3, 1, EXP_P)
        with self.assertRaises(DerivedSubgroupError):
            attains_order_bound(Abelian(FinAbelian.elementary(3, 3)), 2)
        with self.assertRaises(DerivedSubgroupError):
            attains_order_bound(direct_product(e1, e1), 2)
        with self.assertRaises(TooSmallError):
            attains_order_bound(e1, 1)

    def test_compliance(self) -> None:
        """Test |M| <= bound on every recognized group of order at most p^8 with |G'| = p."""
        for p in (2, 3, 5):
            for g in _derived_order_p_groups(p, 8):
                n = _log(g.order, p)
                for c in (2, 3):
                    with self.subTest(group=str(g), c=c):
                        actual = _log(multiplier(g, c).order, p)
                        bound = order_bound_exponent(n, 1, c)
                        self.assertLessEqual(actual, bound)
                        self.assertEqual(actual == bound, attains_order_bound(g, c))

    def test_dihedral_split_order(self) -> None:
        """Test |M(D8 x Z_2^r)| = 2^{χ_{c+1}(n-1) + 1}."""
        for r in range(5):
            g = GeneralizedExtraSpecial(2, 1, SPLIT, r)
            n = 3 + r
            for c in (2, 3):
                self.assertEqual(multiplier(g, c).order, 2 ** (witt(c + 1, n - 1) + 1))

    def test_gamma_star_dihedral(self) -> None:
        """Test γ*_{c+1} for odd and even n."""
        for n in (3, 5, 7):
            self.assertEqual(gamma_star_dihedral(n, 2), FinAbelian.cyclic(n))
        self.assertEqual(gamma_star_dihedral(4, 2), normalize([4, 2]))
        self.assertEqual(gamma_star_dihedral(2, 1), normalize([2]))
        self.assertEqual(gamma_star_dihedral(6, 3), normalize([6, 2, 2]))
        with self.assertRaises(TooSmallError):
            gamma_star_dihedral(1, 2)


class TestCapability(unittest.TestCase):
    """Test cases for capability verdicts."""

    def test_capable_groups(self) -> None:
        """Test E1 x Z_p^r and D8 x Z_2^r."""
        for c in (1, 2, 3, 4):
            for p in (3, 5):
                verdict = capability(ExtraSpecial(p, 1, EXP_P), c)
                self.assertEqual((verdict.capable, verdict.c_capable), (True, True))
                self.assertEqual(verdict.reason, 'extraspecial-capability')
                for r in (1, 2):
                    verdict = capability(GeneralizedExtraSpecial(p, 1, SPLIT, r), c)
                    self.assertTrue(verdict.capable)
                    self.assertEqual(verdict.reason, 'generalized-extraspecial-capability')
            self.assertTrue(capability(ExtraSpecial(2, 1, D8), c).c_capable)
            self.assertTrue(capability(GeneralizedExtraSpecial(2, 1, SPLIT, 3), c).capable)
            product = direct_product(ExtraSpecial(2, 1, D8), Abelian(FinAbelian.elementary(2, 2)))
            self.assertTrue(capability(product, c).capable)

    def test_non_capable_groups(self) -> None:
        """Test every other covered shape."""
        groups = [ExtraSpecial(2, 1, Q8), ExtraSpecial(3, 1, EXP_P2), ExtraSpecial(3, 2, EXP_P),
                  ExtraSpecial(2, 2, D8), GeneralizedExtraSpecial(3, 1, CENTRAL, 0),
                  GeneralizedExtraSpecial(2, 1, CENTRAL, 1),
                  GeneralizedExtraSpecial(3, 1, SPLIT, 1, EXP_P2),
                  direct_product(ExtraSpecial(3, 1, EXP_P2), Abelian(FinAbelian.elementary(3, 1)))]
        for g in groups:
            for c in (1, 2, 3, 4):
                verdict = capability(g, c)
                self.assertFalse(verdict.capable, str(g))
                self.assertEqual(verdict.capable, verdict.c_capable)

    def test_not_covered(self) -> None:
        """Test groups outside the classified families."""
        e1 = ExtraSpecial(3, 1, EXP_P)
        uncovered = [Abelian(FinAbelian.elementary(3, 2)), direct_product(e1, e1),
                     direct_product(e1, Abelian(normalize([9]))),
                     direct_product(e1, Abelian(normalize([2])))]
        for g in uncovered:
            with self.assertRaises(ClassNotCoveredError):
                capability(g, 2)

    def test_central_with_elementary_factor(self) -> None:
        """Test that GES(p;m;central;r) x Z_p^s is read as GES(p;m;central;r+s)."""
        for c in (1, 2, 3, 4):
            verdict = capability(parse('GES(3;1;central;0) x Ab(3;1)'), c)
            self.assertEqual(verdict, capability(GeneralizedExtraSpecial(3, 1, CENTRAL, 1), c))
            self.assertFalse(verdict.capable)
            self.assertEqual(verdict.reason, 'generalized-extraspecial-capability')
            verdict = capability(parse('GES(2;1;central;1) x Ab(2;1,1)'), c)
            self.assertEqual(verdict, capability(GeneralizedExtraSpecial(2, 1, CENTRAL, 3), c))
        for text in ('GES(3;1;central;0) x Ab(3;2)', 'GES(3;1;central;0) x Ab(5;1)',
                     'GES(3;1;central;0) x ES(3;1;expP)'):
            with self.assertRaises(ClassNotCoveredError):
                capability(parse(text), 2)


if __name__ == '__main__':
    unittest.main(verbosity=2)
