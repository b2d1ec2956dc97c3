import os
import sys
import unittest

# Add src directory to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from nilmult.abelian import FinAbelian, normalize
from nilmult.descriptor import parse
from nilmult.exceptions import DescriptorSyntaxError, MalformedDescriptorError, NotPrimeError
from nilmult.pgroups import (
    Abelian,
    CenterType,
    ExtraSpecial,
    ExtraSpecialType,
    GeneralizedExtraSpecial,
    Product,
)


class TestParse(unittest.TestCase):
    """Test cases for parsing descriptors."""

    def test_extraspecial(self) -> None:
        """Test a single extra-special term."""
        self.assertEqual(parse("ES(3;1;expP)"), ExtraSpecial(3, 1, ExtraSpecialType.EXP_P))
        self.assertEqual(parse("ES(2;2;Q8)"), ExtraSpecial(2, 2, ExtraSpecialType.Q8))

    def test_product(self) -> None:
        """Test a product with an abelian factor."""
        g = parse("ES(3;1;expP) x Ab(3;1,1)")
        self.assertIsInstance(g, Product)
        self.assertEqual(g, Product((ExtraSpecial(3, 1, ExtraSpecialType.EXP_P),
                                     Abelian(FinAbelian.elementary(3, 2)))))

    def test_abelian_forms(self) -> None:
        """Test Ab, Zp and the trivial group."""
        self.assertEqual(parse("Zp(5,2)"), Abelian(normalize([25])))
        self.assertEqual(str(parse("Zp(5,2)")), 'Ab(5;2)')
        self.assertEqual(parse("Ab(2;1,3) x Zp(3,1)"), Abelian(normalize([2, 8, 3])))
        self.assertEqual(str(parse("Ab(2;1,3) x Zp(3,1)")), 'Ab(2;3,1) x Ab(3;1)')
        self.assertEqual(parse("1"), Abelian(FinAbelian.trivial()))
        self.assertEqual(str(parse(" 1 ")), '1')

    def test_generalized(self) -> None:
        """Test split and central generalized extra-special terms."""
        g = parse("GES(3;2;central;1)")
        self.assertEqual(g, GeneralizedExtraSpecial(3, 2, CenterType.CENTRAL, 1))
        self.assertEqual(g.variant, ExtraSpecialType.EXP_P)
        self.assertEqual(str(parse("GES(3;1;split;2;expP)")), 'GES(3;1;split;2)')
        self.assertEqual(str(parse("GES(2;1;split;0;Q8)")), 'GES(2;1;split;0;Q8)')

    def test_whitespace(self) -> None:
        """Test that whitespace is ignored."""
        self.assertEqual(parse(" ES( 3 ; 1 ; expP ) "), parse("ES(3;1;expP)"))
        self.assertEqual(parse("ES(3;1;expP)x Ab(3;1)"), parse("ES(3;1;expP) x Ab(3;1)"))

    def test_round_trip(self) -> None:
        """Test that the canonical text parses back to an equal descriptor."""
        texts = ["ES(5;2;expP2)", "ES(3;1;expP) x Ab(3;1,1)", "Ab(2;2,1,1)",
                 "GES(2;2;central;3;Q8)", "GES(7;1;split;0)", "ES(3;1;expP) x ES(3;1;expP2)",
                 "Ab(3;1) x ES(3;1;expP)", "1"]
        for text in texts:
            g = parse(text)
            self.assertEqual(parse(str(g)), g, text)

    def test_abelian_factor_moves_last(self) -> None:
        """Test that the canonical text lists abelian factors last."""
        self.assertEqual(str(parse("Ab(3;1) x ES(3;1;expP) x Ab(3;2)")),
                         'ES(3;1;expP) x Ab(3;2,1)')


class TestParseErrors(unittest.TestCase):
    """Test cases for rejected descriptors."""

    def _offset(self, text: str) -> int:
        with self.assertRaises(DescriptorSyntaxError) as ctx:
            parse(text)
        return ctx.exception.offset

    def test_syntax_offsets(self) -> None:
        """Test that the offset points at the first bad character."""
        self.assertEqual(self._offset(""), 0)
        self.assertEqual(self._offset("Foo(3)"), 0)
        self.assertEqual(self._offset("ES(3;1expP)"), 6)
        self.assertEqual(self._offset("ES(3; 1 expP)"), 8)
        self.assertEqual(self._offset("ES(3;1;expQ)"), 7)
        self.assertEqual(self._offset("ES(3;1;expP) x"), 14)
        self.assertEqual(self._offset("ES(3;1;expP) ES(3;1;expP)"), 13)
        self.assertEqual(self._offset("GES(3;1;middle;0)"), 8)

    def test_message(self) -> None:
        """Test that the message carries the offset."""
        with self.assertRaises(DescriptorSyntaxError) as ctx:
            parse("ES(3;1expP)")
        self.assertIn("offset 6", str(ctx.exception))

    def test_impossible_variant(self) -> None:
        """Test a well-formed text naming an impossible group."""
        with self.assertRaises(MalformedDescriptorError) as ctx:
            parse("ES(3;1;D8)")
        self.assertIn("D8 requires p=2", str(ctx.exception))
        self.assertEqual(ctx.exception.token, 'D8')

    def test_not_prime(self) -> None:
        """Test a composite prime slot."""
        with self.assertRaises(NotPrimeError) as ctx:
            parse("Ab(4;1)")
        self.assertEqual(ctx.exception.token, '4')
        with self.assertRaises(NotPrimeError):
            parse("GES(9;1;split;0)")

    def test_zero_exponent(self) -> None:
        """Test that exponents must be positive."""
        with self.assertRaises(MalformedDescriptorError):
            parse("Ab(3;0)")
        with self.assertRaises(MalformedDescriptorError):
            parse("ES(3;0;expP)")


if __name__ == '__main__':
    unittest.main(verbosity=2)
