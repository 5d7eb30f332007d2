"""
Test Suite for the sl(2|1) invariant engine
===========================================
Covers:
  - laurent.py / scalar.py / qnumbers.py
  - graded_matrix.py / typical_module.py / relations.py
  - tensor.py / r_matrix.py / pivotal.py / ribbon_data.py
  - braid_parser.py / closure.py / evaluator.py
  - operators.py / tables.py / builtins.py
  - guesser.py / certificate.py / coefficients.py
  - schema_builder.py
  - jobs.py / verify.py / main.py (CLI)
  - api.py (Flask routes)

Run with:
    pytest tests/test_suite.py -v
    pytest tests/test_suite.py -v -m slow            (long exact computations)
    pytest tests/test_suite.py -k "guess"            (filter by keyword)
"""

import json
from fractions import Fraction
from unittest.mock import patch

import pytest


# ===========================================================================
# SECTION 1 — laurent.py
# ===========================================================================

class TestGenerators:
    """Tests for generator codes and names"""

    def test_q_is_code_zero(self):
        from app.scalars import Q, gen_name, parse_gen_name

        assert Q == 0
        assert gen_name(0) == "q"
        assert parse_gen_name("q") == 0

    def test_z_generator_is_symmetric(self):
        from app.scalars import z_gen

        assert z_gen(2, 1) == z_gen(1, 2)

    def test_names_round_trip(self):
        from app.scalars import gen_name, parse_gen_name, x_gen, z_gen

        for code in (x_gen(1), x_gen(7), z_gen(1, 1), z_gen(1, 2), z_gen(3, 12)):
            assert parse_gen_name(gen_name(code)) == code

    def test_unknown_name_raises(self):
        from app.scalars import parse_gen_name

        with pytest.raises(ValueError):
            parse_gen_name("y3")

    def test_x_index_must_be_positive(self):
        from app.scalars import x_gen

        with pytest.raises(ValueError):
            x_gen(0)


class TestLaurentPoly:
    """Tests for LaurentPoly arithmetic and exact division"""

    def test_exact_division(self):
        from app.scalars import LaurentPoly

        q = LaurentPoly.gen(0)
        product = (q + 1) * (q - 1)
        assert product.exact_div(q - 1) == q + 1

    def test_inexact_division_raises(self):
        from app.scalars import LaurentPoly

        q = LaurentPoly.gen(0)
        with pytest.raises(ArithmeticError):
            (q + 1).exact_div(q - 1)

    def test_division_by_zero_raises(self):
        from app.scalars import LaurentPoly

        with pytest.raises(ZeroDivisionError):
            LaurentPoly.gen(0).exact_div(LaurentPoly())

    def test_negative_exponents_cancel(self):
        from app.scalars import LaurentPoly

        q = LaurentPoly.gen(0)
        assert q * LaurentPoly.gen(0, -1) == LaurentPoly.constant(1)


# ===========================================================================
# SECTION 2 — scalar.py
# ===========================================================================

class TestScalarArithmetic:
    """Tests for Scalar field operations"""

    def test_normalized_quotient_is_one(self):
        from app.scalars import Scalar

        bracket = Scalar.q() - Scalar.q(-1)
        assert (bracket / bracket).is_one()

    def test_sum_of_fractions(self):
        from app.scalars import Scalar

        q = Scalar.q()
        assert 1 / (q - 1) + 1 / (q + 1) == (2 * q) / (q * q - 1)

    def test_zero_detection(self):
        from app.scalars import Scalar

        x = Scalar.x(1)
        assert (x / (x + 1) - x / (x + 1)).is_zero()

    def test_divide_by_zero_raises(self):
        from app.scalars import Scalar

        with pytest.raises(ZeroDivisionError):
            Scalar.q() / Scalar(0)

    def test_text_round_trip(self):
        from app.scalars import Scalar, parse_scalar

        value = (Scalar.q(3) - Scalar.x(2)) / (Scalar.z(1, 2) + Fraction(1, 3))
        assert parse_scalar(value.to_text()) == value

    def test_gens(self):
        from app.scalars import Scalar, x_gen, z_gen

        value = Scalar.q() * Scalar.x(2) / Scalar.z(1, 2)
        assert value.gens() == {0, x_gen(2), z_gen(1, 2)}


class TestSubstitutions:
    """Tests for shift, specialize, eval_at_point and rename_variables"""

    def test_shift_on_x(self):
        from app.scalars import Scalar, shift

        assert shift(1, Scalar.x(1)) == Scalar.q() * Scalar.x(1)

    def test_shift_on_z_square(self):
        from app.scalars import Scalar, shift

        assert shift(1, Scalar.z(1, 1)) == Scalar.q() * Scalar.x(1, 2) * Scalar.z(1, 1)

    def test_shift_leaves_other_variables(self):
        from app.scalars import Scalar, shift

        assert shift(1, Scalar.x(2)) == Scalar.x(2)

    def test_specialize_by_name(self):
        from app.scalars import Scalar, specialize

        assert specialize(Scalar.x(1) + Scalar.q(), {"x1": 2}) == Scalar.q() + 2

    def test_eval_at_point(self):
        from app.scalars import Scalar, eval_at_point

        assert eval_at_point(Scalar.q() / Scalar.x(1), {"q": 2, "x1": 3}) == Fraction(2, 3)

    def test_eval_at_pole_raises_resample(self):
        from app.scalars import Scalar, eval_at_point
        from app.utils.errors import ResampleError

        with pytest.raises(ResampleError):
            eval_at_point(1 / (Scalar.q() - 2), {"q": 2})

    def test_eval_missing_generator_raises(self):
        from app.scalars import Scalar, eval_at_point

        with pytest.raises(KeyError):
            eval_at_point(Scalar.x(1), {"q": 2})

    def test_rename_variables(self):
        from app.scalars import Scalar, rename_variables

        value = Scalar.x(1) * Scalar.z(1, 2)
        assert rename_variables(value, {1: 3}) == Scalar.x(3) * Scalar.z(2, 3)

    def test_random_point_is_seeded(self):
        import random
        from app.scalars import random_point

        first = random_point([0, 1], random.Random(7))
        second = random_point([0, 1], random.Random(7))
        assert first == second
        assert all(abs(v) != 1 and v != 0 for v in first.values())


# ===========================================================================
# SECTION 3 — qnumbers.py
# ===========================================================================

class TestQNumbers:
    """Tests for brackets, quantum integers and q-Pochhammer symbols"""

    def test_bracket(self):
        from app.scalars import Scalar, qbracket

        assert qbracket(1) == Scalar.q() - Scalar.q(-1)

    def test_qint_two(self):
        from app.scalars import Scalar, qint

        assert qint(2) == Scalar.q() + Scalar.q(-1)

    def test_bracket_of_a2(self):
        from app.scalars import Scalar, a2, qbracket

        assert qbracket(a2(1, 1)) == Scalar.q() * Scalar.x(1) - 1 / (Scalar.q() * Scalar.x(1))

    def test_pochhammer(self):
        from app.scalars import Scalar, qpochhammer

        q = Scalar.q()
        assert qpochhammer(q, 2) == (1 - q) * (1 - q * q)

    def test_pochhammer_empty_product(self):
        from app.scalars import Scalar, qpochhammer

        assert qpochhammer(Scalar.q(), 0).is_one()

    def test_negative_length_raises(self):
        from app.scalars import qpochhammer

        with pytest.raises(ValueError):
            qpochhammer(2, -1)

    def test_factorial_base_q_minus_two(self):
        from app.scalars import Scalar, qfactorial_paren

        base = Scalar.q(-2)
        assert qfactorial_paren(2, base) == 1 + base


# ===========================================================================
# SECTION 4 — graded_matrix.py / typical_module.py
# ===========================================================================

class TestGradedMatrix:
    """Tests for GradedMatrix construction and products"""

    def test_identity_is_neutral(self):
        from app.superalg import GradedMatrix

        m = GradedMatrix.from_entries((0, 1), (0, 1), [(0, 1, 3), (1, 0, 2)])
        identity = GradedMatrix.identity((0, 1))
        assert identity @ m == m
        assert m @ identity == m

    def test_degree_of_odd_matrix(self):
        from app.superalg import GradedMatrix

        m = GradedMatrix.from_entries((0, 1), (0, 1), [(0, 1, 1)])
        assert m.degree() == 1

    def test_out_of_range_entry_raises(self):
        from app.superalg import GradedMatrix

        with pytest.raises(IndexError):
            GradedMatrix.from_entries((0,), (0,), [(1, 0, 1)])

    def test_first_difference(self):
        from app.superalg import GradedMatrix

        a = GradedMatrix.diagonal((0, 0), [1, 2])
        b = GradedMatrix.diagonal((0, 0), [1, 3])
        assert a.first_difference(b) == (1, 1)

    def test_dump_lists_nonzero_entries(self):
        from app.superalg import GradedMatrix

        dump = GradedMatrix.diagonal((0, 1), [1, 0]).dump()
        assert dump.splitlines() == ["(0,0) = 1 ; 1"]


class TestTypicalModule:
    """Tests for V(a1, a2)"""

    def test_dimension(self):
        from app.superalg import TypicalColor, basis

        color = TypicalColor(2)
        assert color.dim == 12
        assert len(basis(color)) == 12

    def test_negative_a1_raises(self):
        from app.superalg import TypicalColor

        with pytest.raises(ValueError):
            TypicalColor(-1)

    def test_even_and_odd_halves(self):
        from app.superalg import TypicalColor, parity_vector

        parities = parity_vector(TypicalColor(3))
        assert parities.count(0) == parities.count(1) == 8

    def test_odd_generators_square_to_zero(self, color1):
        from app.superalg import generator

        for name in ("E2", "F2"):
            g = generator(color1, name)
            assert (g @ g).is_zero()

    def test_generator_parity(self, color1):
        from app.superalg import generator

        assert generator(color1, "E1").degree() == 0
        assert generator(color1, "E2").degree() == 1

    def test_chebyshev_coefficients(self):
        from app.scalars import Scalar, qint
        from app.superalg import chebyshev_P

        assert chebyshev_P(0).is_one()
        assert chebyshev_P(2) == Scalar.q(2) + 1 + Scalar.q(-2)
        assert chebyshev_P(4) == qint(5)

    def test_numeric_a2_rejects_nontypical_values(self):
        from app.superalg import TypicalColor

        for value in (0, 1, -1):
            with pytest.raises(ValueError):
                TypicalColor(0, 1, value)

    def test_numeric_a2_is_shown(self):
        from app.superalg import TypicalColor

        assert "q^a2=3/2" in str(TypicalColor(1, 1, Fraction(3, 2)))

    def test_numeric_a2_matches_substitution(self, color1):
        from app.scalars import specialize
        from app.superalg import TypicalColor, generator

        numeric = TypicalColor(1, 1, Fraction(3))
        for name in ("E2", "F2", "h2"):
            sym, num = generator(color1, name), generator(numeric, name)
            for i in range(color1.dim):
                for j in range(color1.dim):
                    assert num.entry(i, j) == specialize(sym.entry(i, j), {"x1": 3})

    def test_numeric_a2_cartan_power(self):
        from app.scalars import Scalar
        from app.superalg import TypicalColor, q_power_h

        color = TypicalColor(1, 1, Fraction(3))
        assert q_power_h(color, 2, 1).entry(0, 0) == Scalar(3)

    def test_numeric_a2_relations_hold(self):
        from app.superalg import TypicalColor, verify_relations

        assert verify_relations(TypicalColor(1, 1, Fraction(-5, 2))).passed


class TestRelations:
    """Tests for verify_relations()"""

    @pytest.mark.parametrize("a1", [0, 1, 2])
    def test_all_relations_hold(self, a1):
        from app.superalg import TypicalColor, verify_relations

        report = verify_relations(TypicalColor(a1))
        assert report.passed, [c.name for c in report.failures()]

    def test_comparator_reports_failures(self, color0):
        from app.superalg import verify_relations

        report = verify_relations(color0, compare=lambda lhs, rhs: (0, 0))
        assert not report.passed
        assert report.failures()


class TestDualModule:
    """Tests for the antipode and the dual module V*"""

    def test_antipode_of_cartan(self, color1):
        from app.superalg import antipode, generator

        assert antipode(color1, "h2") == -generator(color1, "h2")

    def test_unknown_generator_raises(self, color0):
        from app.superalg import antipode

        with pytest.raises(ValueError):
            antipode(color0, "X1")

    def test_dual_action_keeps_cartan_relation(self, color1):
        from app.superalg import dual_generator, supercommutator

        h1, e1 = dual_generator(color1, "h1"), dual_generator(color1, "E1")
        assert supercommutator(h1, e1) == e1.scale(2)

    def test_dual_odd_generator_squares_to_zero(self, color1):
        from app.superalg import dual_generator

        f2 = dual_generator(color1, "F2")
        assert f2.degree() == 1
        assert (f2 @ f2).is_zero()

    def test_q_power_needs_power(self, color0):
        from app.superalg import dual_generator

        with pytest.raises(ValueError):
            dual_generator(color0, "qh1")

    def test_dump_generators_has_one_block_per_generator(self, color0):
        from app.superalg.typical_module import dump_generators

        headers = [line for line in dump_generators(color0).splitlines() if line.startswith("#")]
        assert [h.split()[1] for h in headers] == ["h1", "h2", "E1", "E2", "F1", "F2"]


# ===========================================================================
# SECTION 5 — tensor.py / r_matrix.py / pivotal.py
# ===========================================================================

class TestTensor:
    """Tests for super_kron and the super flip"""

    def test_flip_is_an_involution(self):
        from app.ribbon import flip
        from app.ribbon.tensor import tensor_parity
        from app.superalg import GradedMatrix

        pa, pb = (0, 1, 1), (1, 0)
        assert flip(pb, pa) @ flip(pa, pb) == GradedMatrix.identity(tensor_parity(pa, pb))

    def test_flip_sign_on_odd_pair(self):
        from app.ribbon import flip

        assert flip((1,), (1,)).entry(0, 0) == -1

    def test_kron_of_identities(self):
        from app.ribbon import super_kron
        from app.superalg import GradedMatrix

        a, b = GradedMatrix.identity((0, 1)), GradedMatrix.identity((1, 0, 0))
        assert super_kron(a, b) == GradedMatrix.identity(super_kron(a, b).row_parity)

    def test_tensor_space_index_round_trip(self, color0, color1):
        from app.ribbon import TensorFactor, TensorSpace

        space = TensorSpace((TensorFactor(color0), TensorFactor(color1).dual()))
        assert space.dim == 4 * 8
        for flat in range(space.dim):
            assert space.flat_index(space.multi_index(flat)) == flat
        assert len(space.parity()) == space.dim

    def test_tensor_space_rejects_bad_index(self, color0):
        from app.ribbon import TensorFactor, TensorSpace

        space = TensorSpace((TensorFactor(color0),))
        with pytest.raises(IndexError):
            space.flat_index((4,))
        with pytest.raises(ValueError):
            space.flat_index((0, 0))


class TestRMatrix:
    """Tests for R, its inverse and coproduct naturality"""

    @pytest.mark.parametrize("a1,b1", [(0, 0), (0, 1)])
    def test_r_times_inverse(self, a1, b1):
        from app.ribbon import r_inverse, r_matrix
        from app.superalg import GradedMatrix, TypicalColor

        a, b = TypicalColor(a1, 1), TypicalColor(b1, 2)
        product = r_matrix(a, b) @ r_inverse(a, b)
        assert product == GradedMatrix.identity(product.row_parity)

    def test_naturality_for_e1(self):
        from app.ribbon import coproduct, coproduct_op, r_matrix
        from app.superalg import TypicalColor

        a, b = TypicalColor(0, 1), TypicalColor(0, 2)
        r = r_matrix(a, b)
        assert r @ coproduct("E1", a, b) == coproduct_op("E1", a, b) @ r

    def test_braiding_inverse(self):
        from app.ribbon import braiding, braiding_inverse
        from app.superalg import GradedMatrix, TypicalColor

        a, b = TypicalColor(0, 1), TypicalColor(1, 2)
        product = braiding_inverse(a, b) @ braiding(a, b)
        assert product == GradedMatrix.identity(product.row_parity)

    def test_composite_root_vector_squares_to_zero(self, color1):
        from app.ribbon import eprime_fprime

        e_prime, f_prime = eprime_fprime(color1)
        assert (e_prime @ e_prime).is_zero()
        assert (f_prime @ f_prime).is_zero()

    def test_exponential_of_odd_pair_truncates(self, color0):
        from app.ribbon import qexp_factor, super_kron
        from app.scalars import Scalar
        from app.superalg import GradedMatrix, generator

        e2, f2 = generator(color0, "E2"), generator(color0, "F2")
        t = super_kron(e2, f2)
        expected = GradedMatrix.identity(t.col_parity) + t.scale(Scalar.q())
        assert qexp_factor(e2, f2, Scalar.q(-2), Scalar.q()) == expected

    def test_exponential_cap(self, color0):
        from app.ribbon import qexp_factor
        from app.scalars import Scalar
        from app.superalg import generator
        from app.utils.errors import VerificationError

        e2, f2 = generator(color0, "E2"), generator(color0, "F2")
        with pytest.raises(VerificationError):
            qexp_factor(e2, f2, Scalar.q(-2), Scalar.q(), cap=0)

    def test_dump_r_matrix(self):
        from app.ribbon.r_matrix import dump_r_matrix
        from app.superalg import TypicalColor

        lines = dump_r_matrix(TypicalColor(0, 1), TypicalColor(0, 2)).splitlines()
        assert lines
        assert all(line.startswith("(") and " = " in line for line in lines)


class TestPivotal:
    """Tests for duality maps, twists and modified dimensions"""

    def test_qdim_vanishes(self, color1):
        from app.ribbon import qdim

        assert qdim(color1).is_zero()

    def test_kink_is_twist(self, color0):
        from app.ribbon import twist_matrix, twist_scalar
        from app.superalg import GradedMatrix, parity_vector

        identity = GradedMatrix.identity(parity_vector(color0))
        assert twist_matrix(color0) == identity.scale(twist_scalar(color0))

    def test_twist_scalar(self, color1):
        from app.ribbon import twist_scalar
        from app.scalars import Scalar

        assert twist_scalar(color1) == Scalar.z(1, 1, -2) * Scalar.x(1, -4)

    def test_modified_dim_a1_zero(self, color0):
        from app.ribbon import modified_dim
        from app.scalars import ONE, a2, qbracket

        assert modified_dim(color0) == ONE / (qbracket(a2(1)) * qbracket(a2(1, 1)))

    def test_ribbon_data_matches_free_functions(self, color0):
        from app.ribbon import RibbonData, modified_dim, twist_scalar

        ribbon = RibbonData()
        assert ribbon.modified_dim(color0) == modified_dim(color0)
        assert ribbon.twist(color0) == twist_scalar(color0)

    def test_dual_twist_matches(self, color1):
        from app.ribbon import dual_twist_scalar, twist_scalar

        assert dual_twist_scalar(color1) == twist_scalar(color1)

    def test_numeric_a2_dimension_and_twist(self, color1):
        from app.ribbon import modified_dim, qdim, twist_scalar
        from app.scalars import specialize
        from app.superalg import TypicalColor

        numeric = TypicalColor(1, 1, Fraction(3))
        assert modified_dim(numeric) == specialize(modified_dim(color1), {"x1": 3})
        assert twist_scalar(numeric) == specialize(twist_scalar(color1), {"x1": 3})
        assert qdim(numeric).is_zero()

    def test_numeric_a2_k_entry(self):
        from app.ribbon.r_matrix import k_entry
        from app.scalars import specialize
        from app.superalg import TypicalColor

        a, b = TypicalColor(1, 1), TypicalColor(0, 2)
        a_num, b_num = TypicalColor(1, 1, Fraction(3)), TypicalColor(0, 2, Fraction(-2))
        for i in range(a.dim):
            for j in range(b.dim):
                expected = specialize(k_entry(a, b, i, j), {"x1": 3, "x2": -2})
                assert k_entry(a_num, b_num, i, j) == expected


# ===========================================================================
# SECTION 6 — braid_parser.py / closure.py
# ===========================================================================

class TestParseBraid:
    """Tests for parse_braid()"""

    def test_parses_letters(self):
        from app.diagram import parse_braid

        braid = parse_braid("3: s1 S2 s1")
        assert braid.strands == 3
        assert braid.letters == (1, -2, 1)
        assert braid.writhe == 1

    def test_text_round_trip(self):
        from app.diagram import parse_braid

        assert parse_braid(" 3 :  s2   S1 ").to_text() == "3: s2 S1"

    def test_trivial_braid(self):
        from app.diagram import parse_braid

        assert parse_braid("1:").letters == ()

    def test_missing_header(self):
        from app.diagram import parse_braid
        from app.utils.errors import BraidParseError

        with pytest.raises(BraidParseError) as exc:
            parse_braid("s1 s1")
        assert exc.value.position == 0

    def test_index_out_of_range_reports_position(self):
        from app.diagram import parse_braid
        from app.utils.errors import BraidParseError

        with pytest.raises(BraidParseError) as exc:
            parse_braid("2: s1 s2")
        assert exc.value.position == 6

    def test_unknown_token(self):
        from app.diagram import parse_braid
        from app.utils.errors import BraidParseError

        with pytest.raises(BraidParseError):
            parse_braid("2: t1")


class TestComponents:
    """Tests for components()"""

    def test_trefoil_is_a_knot(self):
        from app.diagram import components, parse_braid

        assert components(parse_braid("2: s1 s1 s1")) == [[1, 2]]

    def test_hopf_link_has_two(self):
        from app.diagram import components, parse_braid

        assert components(parse_braid("2: s1 s1")) == [[1], [2]]

    def test_trivial_three_strand(self):
        from app.diagram import components, parse_braid

        assert components(parse_braid("3:")) == [[1], [2], [3]]


class TestColoredLink:
    """Tests for ColoredLink validation and close_and_cut()"""

    def test_color_count_mismatch(self, color0):
        from app.diagram import ColoredLink, parse_braid
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            ColoredLink(parse_braid("2: s1 s1"), (color0,))

    def test_shared_variable_rejected(self):
        from app.diagram import ColoredLink, parse_braid
        from app.superalg import TypicalColor
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            ColoredLink(parse_braid("2: s1 s1"), (TypicalColor(0, 1), TypicalColor(1, 1)))

    def test_a1_budget(self):
        from app.config import settings
        from app.diagram import ColoredLink, parse_braid
        from app.superalg import TypicalColor
        from app.utils.errors import BudgetExceeded

        with patch.object(settings, "MAX_A1", 1):
            with pytest.raises(BudgetExceeded):
                ColoredLink(parse_braid("1:"), (TypicalColor(2),))

    def test_register_width_budget(self, color0):
        from app.config import settings
        from app.diagram import ColoredLink, close_and_cut, parse_braid
        from app.utils.errors import BudgetExceeded

        link = ColoredLink(parse_braid("2: s1"), (color0,))
        with patch.object(settings, "MAX_REGISTER_WIDTH", 2):
            with pytest.raises(BudgetExceeded):
                close_and_cut(link)

    def test_cut_strand_must_belong_to_component(self):
        from app.diagram import ColoredLink, close_and_cut, parse_braid
        from app.superalg import TypicalColor
        from app.utils.errors import ColoringError

        link = ColoredLink(parse_braid("2: s1 s1"), (TypicalColor(0, 1), TypicalColor(0, 2)))
        with pytest.raises(ColoringError):
            close_and_cut(link, cut=1, strand=2)

    def test_cut_component_out_of_range(self, color0):
        from app.diagram import ColoredLink, close_and_cut, parse_braid
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            close_and_cut(ColoredLink(parse_braid("1:"), (color0,)), cut=2)

    def test_register_width(self, color0):
        from app.diagram import ColoredLink, close_and_cut, parse_braid

        tangle = close_and_cut(ColoredLink(parse_braid("2: s1 s1 s1"), (color0,)))
        assert tangle.max_width == 3
        assert tangle.top == tangle.bottom
        assert [f.up for f in tangle.registers()[1]] == [True, True, False]
        assert close_and_cut(ColoredLink(parse_braid("3: s1 s2"), (color0,))).max_width == 5

    def test_self_writhe(self):
        from app.diagram import ColoredLink, parse_braid
        from app.superalg import TypicalColor

        hopf = ColoredLink(parse_braid("2: s1 s1"), (TypicalColor(0, 1), TypicalColor(0, 2)))
        trefoil = ColoredLink(parse_braid("2: s1 s1 s1"), (TypicalColor(0, 1),))
        assert hopf.self_writhe() == (0, 0)
        assert trefoil.self_writhe() == (3,)


# ===========================================================================
# SECTION 7 — evaluator.py
# ===========================================================================

class TestInvariant:
    """Tests for invariant()"""

    @pytest.mark.parametrize("a1", [0, 1, 2])
    def test_unknot_is_modified_dimension(self, a1):
        from app.diagram import ColoredLink, invariant, parse_braid
        from app.ribbon import modified_dim
        from app.superalg import TypicalColor

        color = TypicalColor(a1)
        result = invariant(ColoredLink(parse_braid("1:"), (color,)))
        assert result.bracket.is_one()
        assert result.value == modified_dim(color)

    def test_unknot_a1_zero_closed_form(self, color0):
        from app.diagram import ColoredLink, invariant, parse_braid
        from app.scalars import ONE, a2, qbracket

        result = invariant(ColoredLink(parse_braid("1:"), (color0,)))
        assert result.value == ONE / (qbracket(a2(1)) * qbracket(a2(1, 1)))

    def test_trefoil_independent_of_cut_strand(self, color0):
        from app.diagram import ColoredLink, invariant, parse_braid

        link = ColoredLink(parse_braid("2: s1 s1 s1"), (color0,))
        assert invariant(link, strand=1).value == invariant(link, strand=2).value

    def test_normalized_removes_self_writhe(self, color0):
        from app.diagram import ColoredLink, invariant, parse_braid
        from app.ribbon import twist_scalar

        result = invariant(ColoredLink(parse_braid("2: s1 s1 s1"), (color0,)))
        assert result.normalized == result.value * twist_scalar(color0) ** (-3)

    def test_scalar_of_endo_rejects_non_scalar(self):
        from app.diagram import scalar_of_endo
        from app.superalg import GradedMatrix
        from app.utils.errors import VerificationError

        with pytest.raises(VerificationError):
            scalar_of_endo(GradedMatrix.diagonal((0, 0), [1, 2]))

    def test_identify_variables(self):
        from app.diagram import ColoredLink, invariant, parse_braid
        from app.superalg import TypicalColor

        hopf = ColoredLink(parse_braid("2: s1 s1"), (TypicalColor(0, 1), TypicalColor(0, 2)))
        merged = invariant(hopf).identify_variables({2: 1})
        assert all(code in (0, 1, 1_001_001) for code in merged.value.gens())

    @pytest.mark.slow
    @pytest.mark.parametrize("stabilizer,power", [("s2", 1), ("S2", -1)])
    def test_markov_stabilization(self, color0, stabilizer, power):
        from app.diagram import ColoredLink, invariant, parse_braid
        from app.ribbon import twist_scalar

        two = invariant(ColoredLink(parse_braid("2: s1 s1 s1"), (color0,)))
        three = invariant(ColoredLink(parse_braid(f"3: s1 s1 s1 {stabilizer}"), (color0,)))
        assert two.normalized == three.normalized
        assert three.self_writhe == (3 + power,)
        # the framed value picks up one kink
        assert three.value == two.value * twist_scalar(color0) ** power

    @pytest.mark.slow
    @pytest.mark.parametrize("a1,b1", [(1, 0), (1, 1), (2, 1)])
    def test_hopf_cut_component(self, a1, b1):
        from app.diagram import ColoredLink, invariant, parse_braid
        from app.superalg import TypicalColor

        hopf = ColoredLink(parse_braid("2: s1 s1"), (TypicalColor(a1, 1), TypicalColor(b1, 2)))
        assert invariant(hopf, cut=1).value == invariant(hopf, cut=2).value


# ===========================================================================
# SECTION 8 — operators.py
# ===========================================================================

class TestQWeylOp:
    """Tests for normal ordering in the q-Weyl algebra"""

    def test_commutation(self):
        from app.qweyl import QWeylOp
        from app.scalars import Scalar

        L, M = QWeylOp.L(0, 1), QWeylOp.M(0, 1)
        assert L * M == (M * L).scale(Scalar.q())

    def test_distributes(self):
        from app.qweyl import QWeylOp
        from app.scalars import Scalar

        L, M = QWeylOp.L(0, 1), QWeylOp.M(0, 1)
        assert (L + 1) * M == (M * L).scale(Scalar.q()) + M

    def test_directions_commute(self):
        from app.qweyl import QWeylOp

        L1, M2 = QWeylOp.L(0, 2), QWeylOp.M(1, 2)
        assert L1 * M2 == M2 * L1

    def test_continuous_l_shifts_coefficients(self):
        from app.qweyl import QWeylOp
        from app.scalars import Scalar

        L = QWeylOp.L(0, 1, continuous=(1,))
        x = QWeylOp.const(Scalar.x(1), 1, (1,))
        assert L * x == (L).scale(Scalar.q() * Scalar.x(1))

    def test_rank_mismatch_raises(self):
        from app.qweyl import QWeylOp

        with pytest.raises(ValueError):
            QWeylOp.L(0, 1) * QWeylOp.L(0, 2)

    def test_text(self):
        from app.qweyl import QWeylOp, op_to_text

        assert op_to_text(QWeylOp.L(0, 2) - 1) == "(1 ; 1) * L1^1 + (-1 ; 1)"

    def test_poly_in_m(self):
        from app.qweyl import QWeylOp, poly_in_m

        M = QWeylOp.M(0, 1)
        assert poly_in_m([(0, 1), (2, 3)], 0, 1) == (M * M).scale(3) + 1

    def test_functional_forms(self):
        from app.qweyl import QWeylOp, op_add, op_mul, op_scale
        from app.scalars import Scalar

        L, M = QWeylOp.L(0, 1), QWeylOp.M(0, 1)
        assert op_mul(L, M) == L * M
        assert op_add(L, M) == L + M
        assert op_scale(L, Scalar.q(3)) == L.scale(Scalar.q(3))


# ===========================================================================
# SECTION 9 — tables.py
# ===========================================================================

class TestFunctionTable:
    """Tests for FunctionTable and the q-Weyl action"""

    def test_holes_rejected(self):
        from app.qweyl import FunctionTable
        from app.scalars import ONE

        with pytest.raises(ValueError):
            FunctionTable((0,), (2,), {(0,): ONE, (2,): ONE})

    def test_apply_l_shifts(self):
        from app.qweyl import FunctionTable, QWeylOp, apply
        from app.scalars import Scalar

        f = FunctionTable.tabulate(lambda n: Scalar.q(n), (0,), (4,))
        g = apply(QWeylOp.L(0, 1), f)
        assert g.hi == (3,)
        assert all(g[(n,)] == Scalar.q(n + 1) for n in range(4))

    def test_apply_m_multiplies(self):
        from app.qweyl import FunctionTable, QWeylOp, apply
        from app.scalars import Scalar

        f = FunctionTable.tabulate(lambda n: n + 1, (0,), (3,))
        g = apply(QWeylOp.M(0, 1), f)
        assert g[(2,)] == Scalar.q(2) * 3

    def test_window_too_small(self):
        from app.qweyl import FunctionTable, QWeylOp, apply

        f = FunctionTable.tabulate(lambda n: 1, (0,), (1,))
        with pytest.raises(ValueError):
            apply(QWeylOp.L(0, 1, exp=2), f)

    def test_module_action_law(self):
        from app.qweyl import FunctionTable, QWeylOp, apply
        from app.scalars import Scalar

        L, M = QWeylOp.L(0, 1), QWeylOp.M(0, 1)
        a, b = L + M.scale(2), L * M - 3
        f = FunctionTable.tabulate(lambda n: Scalar.q(n * n) + n, (0,), (6,))
        left, right = apply(a * b, f), apply(a, apply(b, f))
        assert all(left[p] == right[p] for p in right.points())

    def test_restrict_and_contains(self):
        from app.qweyl import FunctionTable

        f = FunctionTable.tabulate(lambda m, n: m + n, (0, 0), (3, 3))
        small = f.restrict((1, 1), (2, 3))
        assert f.contains(small)
        assert not small.contains(f)
        assert small[(2, 3)] == 5

    def test_csv_round_trip(self):
        from app.qweyl import FunctionTable, read_table_csv, table_to_csv
        from app.scalars import Scalar

        f = FunctionTable.tabulate(lambda m, n: Scalar.q(m) / (1 - Scalar.q(n + 1)), (0, 1), (2, 3))
        text = table_to_csv(f)
        assert text.splitlines()[0] == "n1,n2,value"
        g = read_table_csv(text)
        assert (g.lo, g.hi) == (f.lo, f.hi)
        assert all(g[p] == f[p] for p in f.points())

    def test_csv_skips_partial_marker(self):
        from app.qweyl import read_table_csv

        g = read_table_csv("n1,value\n0,1 ; 1\n1,2 ; 1\n# partial: budget\n")
        assert g.hi == (1,)

    def test_csv_rejects_continuous(self):
        from app.qweyl import builtin, table_to_csv

        with pytest.raises(ValueError):
            table_to_csv(builtin("zsquare").tabulate())


# ===========================================================================
# SECTION 10 — builtins.py
# ===========================================================================

class TestBuiltins:
    """Tests for the library of q-hypergeometric functions"""

    @pytest.mark.parametrize(
        "name", ["pochhammer", "inv_pochhammer", "indicator", "inv_qnum", "qsquare", "zsquare"]
    )
    def test_operators_annihilate(self, name):
        from app.qweyl import annihilates, builtin

        spec = builtin(name)
        table = spec.tabulate()
        for op in spec.operators():
            assert annihilates(op, table), op.to_text()

    def test_indicator_values(self):
        from app.qweyl.builtins import indicator

        assert indicator(0, 3, 2).is_one()
        assert indicator(0, 3, 5).is_zero()

    def test_inv_qnum_is_reciprocal_bracket(self):
        from app.qweyl.builtins import inv_qnum
        from app.scalars import qbracket

        assert inv_qnum(3) * qbracket(3) == 1

    def test_zsquare_has_continuous_direction(self):
        from app.qweyl import builtin

        table = builtin("zsquare").tabulate()
        assert table.rank == 1
        assert table.total_rank == 2

    def test_unknown_builtin(self):
        from app.qweyl import builtin

        with pytest.raises(ValueError):
            builtin("nope")


# ===========================================================================
# SECTION 11 — guesser.py
# ===========================================================================

class TestGuessRecurrence:
    """Tests for guess_recurrence() and the elimination helpers"""

    def test_required_length(self):
        from app.qweyl import required_length

        assert required_length(1, 2) == 11
        assert required_length(4, 6) == 69

    def test_required_length_counts_shape_unknowns(self):
        from app.qweyl import required_length

        assert required_length(1, 2, shape_only=True) == required_length(1, 2)
        assert required_length(2, 0, shape_only=True) == 4
        assert required_length(2, 6, shape_only=True) == 28

    def test_shape_only_order_two_on_short_window(self):
        from app.qweyl import FunctionTable, QWeylOp, guess_recurrence

        # f(n+2) = -f(n), no first-order relation
        f = FunctionTable.tabulate(lambda n: (-1) ** (n * (n - 1) // 2), (0,), (3,))
        with pytest.raises(ValueError):
            guess_recurrence(f, 0, 2, 0)
        ops = guess_recurrence(f, 0, 2, 0, shape_only=True)
        assert ops == [QWeylOp.L(0, 1) ** 2 + 1]

    def test_nullspace_of_one_row(self):
        from app.qweyl.guesser import bareiss_echelon, nullspace
        from app.scalars import LaurentPoly, Scalar

        one = LaurentPoly.constant(1)
        pivots = bareiss_echelon([[one, one]], 2)
        assert nullspace(pivots, 2) == [[Scalar(-1), Scalar(1)]]

    def test_finds_qsquare_recurrence(self, qsquare_table):
        from app.qweyl import QWeylOp, annihilates, witness_shape
        from app.qweyl.guesser import guess_recurrence
        from app.scalars import Scalar

        fit = qsquare_table.restrict((0,), (10,))
        ops = guess_recurrence(fit, 0, 1, 2)
        L, M = QWeylOp.L(0, 1), QWeylOp.M(0, 1)
        expected = L - (M * M).scale(Scalar.q())

        assert len(ops) == 3
        assert any(op == expected for op in ops)
        assert all(witness_shape(op) == (0, 1) for op in ops)
        assert all(annihilates(op, qsquare_table) for op in ops)

    def test_window_too_short(self, qsquare_table):
        from app.qweyl import guess_recurrence

        with pytest.raises(ValueError):
            guess_recurrence(qsquare_table.restrict((0,), (5,)), 0, 1, 2)

    def test_zero_table_is_degenerate(self):
        from app.qweyl import FunctionTable, guess_recurrence
        from app.utils.errors import DegenerateSystem

        f = FunctionTable.tabulate(lambda n: 0, (0,), (10,))
        with pytest.raises(DegenerateSystem):
            guess_recurrence(f, 0, 1, 1)

    def test_bad_direction(self, qsquare_table):
        from app.qweyl import guess_recurrence

        with pytest.raises(ValueError):
            guess_recurrence(qsquare_table, 1, 1, 1)


# ===========================================================================
# SECTION 12 — certificate.py
# ===========================================================================

class TestCertify:
    """Tests for certify() and witness_shape()"""

    def _qsquare_op(self):
        from app.qweyl import QWeylOp
        from app.scalars import Scalar

        L, M = QWeylOp.L(0, 1), QWeylOp.M(0, 1)
        return L - (M * M).scale(Scalar.q())

    def test_certifies_qsquare(self, qsquare_table):
        from app.qweyl import certify

        fit = qsquare_table.restrict((0,), (10,))
        certificate = certify(fit, [self._qsquare_op()], qsquare_table)
        assert certificate.rank == 1
        assert certificate.witnesses[0].direction == 1
        assert certificate.witnesses[0].order == 1
        assert certificate.held_out_hi == [12]

    def test_held_out_must_extend(self, qsquare_table):
        from app.qweyl import certify
        from app.utils.errors import CertificationRefused

        with pytest.raises(CertificationRefused) as exc:
            certify(qsquare_table, [self._qsquare_op()], qsquare_table)
        assert "no points" in exc.value.reason

    def test_wrong_operator_refused(self, qsquare_table):
        from app.qweyl import QWeylOp, certify
        from app.utils.errors import CertificationRefused

        fit = qsquare_table.restrict((0,), (10,))
        with pytest.raises(CertificationRefused):
            certify(fit, [QWeylOp.L(0, 1) - 1], qsquare_table)

    def test_shape_refused(self, qsquare_table):
        from app.qweyl import QWeylOp, certify
        from app.utils.errors import CertificationRefused

        L = QWeylOp.L(0, 1)
        fit = qsquare_table.restrict((0,), (10,))
        with pytest.raises(CertificationRefused):
            certify(fit, [L * L - L], qsquare_table)

    def test_missing_direction(self):
        from app.qweyl import builtin, certify
        from app.utils.errors import CertificationRefused

        spec = builtin("pochhammer")
        fit, held_out = spec.tabulate(), spec.tabulate((0, 0), (8, 8))
        with pytest.raises(CertificationRefused) as exc:
            certify(fit, spec.operators()[:1], held_out)
        assert "[2]" in exc.value.reason

    def test_full_library_set_certifies(self):
        from app.qweyl import builtin, certify

        spec = builtin("pochhammer")
        certificate = certify(spec.tabulate(), spec.operators(), spec.tabulate((0, 0), (8, 8)))
        assert [w.direction for w in certificate.witnesses] == [1, 2]

    def test_witness_shape(self):
        from app.qweyl import QWeylOp, witness_shape

        L = QWeylOp.L(1, 2, exp=2)
        assert witness_shape(L - QWeylOp.M(0, 2)) == (1, 2)
        assert witness_shape(L) is None
        assert witness_shape(L + QWeylOp.L(0, 2)) is None


# ===========================================================================
# SECTION 13 — coefficients.py
# ===========================================================================

class TestCoefficientTables:
    """Tests for the building-block tables and their annihilators"""

    def test_chebyshev(self):
        from app.qweyl import annihilates
        from app.qweyl.coefficients import chebyshev_annihilator, chebyshev_table

        assert annihilates(chebyshev_annihilator(), chebyshev_table())

    @pytest.mark.parametrize("k", [1, 2])
    def test_e1_coefficient(self, k):
        from app.qweyl import annihilates
        from app.qweyl.coefficients import e1_coefficient_annihilator, e1_coefficient_table

        assert annihilates(e1_coefficient_annihilator(k), e1_coefficient_table(k))

    def test_e1_coefficient_needs_k(self):
        from app.qweyl.coefficients import e1_coefficient_table

        with pytest.raises(ValueError):
            e1_coefficient_table(0)

    def test_k_entries(self):
        from app.qweyl import annihilates
        from app.qweyl.coefficients import k_entry_annihilators, k_entry_table

        table = k_entry_table((0, 0), (3, 3))
        assert all(annihilates(op, table) for op in k_entry_annihilators())

    @pytest.mark.parametrize("continuous", [False, True])
    def test_modified_dim(self, continuous):
        from app.qweyl import annihilates
        from app.qweyl.coefficients import modified_dim_annihilators, modified_dim_table

        table = modified_dim_table(0, 6, continuous)
        assert all(annihilates(op, table) for op in modified_dim_annihilators(continuous))

    @pytest.mark.parametrize("sign", [1, -1])
    def test_k_block_entries(self, sign):
        from app.qweyl import annihilates
        from app.qweyl.coefficients import k_block_annihilators, k_block_table

        table = k_block_table(sign)
        assert all(annihilates(op, table) for op in k_block_annihilators(sign))

    def test_k_block_closed_form(self):
        from app.qweyl.coefficients import k_block_value
        from app.scalars import Scalar

        expected = Scalar.q(-4) * Scalar.x(1, -2) * Scalar.x(2, -3) * Scalar.z(1, 2, -2)
        assert k_block_value(3, 1, 2, 2) == expected
        assert k_block_value(3, 1, 2, 2, sign=-1) == expected.inverse()

    def test_k_block_window_must_stay_in_block(self):
        from app.qweyl.coefficients import k_block_table

        with pytest.raises(ValueError):
            k_block_table(1, lo=(1, 0, 2, 0), hi=(3, 2, 3, 2))

    @pytest.mark.parametrize("inverse", [False, True])
    @pytest.mark.parametrize("n", [1, 2])
    def test_e1f1_entries(self, n, inverse):
        from app.qweyl import annihilates
        from app.qweyl.coefficients import e1f1_annihilators, e1f1_table

        table = e1f1_table(n, inverse)
        assert all(annihilates(op, table) for op in e1f1_annihilators(n))

    def test_e1f1_inverse_differs_by_constant(self):
        from app.qweyl.coefficients import e1f1_entry

        points = [(3, 1), (4, 2), (5, 3)]
        ratios = [e1f1_entry(a1, k, 1) / e1f1_entry(a1, k, 1, inverse=True) for a1, k in points]
        assert ratios[0] == ratios[1] == ratios[2]

    def test_e1f1_index_out_of_block(self):
        from app.qweyl.coefficients import e1f1_entry

        with pytest.raises(ValueError):
            e1f1_entry(2, 3, 1)

    @pytest.mark.parametrize("which", ["coev_right", "ev_right", "coev_left", "ev_left"])
    def test_duality_entries(self, which):
        from app.qweyl import annihilates
        from app.qweyl.coefficients import duality_annihilators, duality_diagonal_step, duality_table

        for block in [(0, 0), (1, 0)]:
            table = duality_table(which, block)
            assert all(annihilates(op, table) for op in duality_annihilators())
            assert annihilates(duality_diagonal_step(which), table)

    def test_duality_closed_forms(self):
        from app.qweyl.coefficients import duality_entry
        from app.scalars import Scalar

        assert duality_entry("ev_left", (1, 0), 2, 1, 1) == -(Scalar.q(-2) * Scalar.x(1, -2))
        assert duality_entry("coev_left", (0, 1), 2, 0, 0) == Scalar.q(2) * Scalar.x(1, 2)
        assert duality_entry("ev_right", (0, 0), 2, 1, 1).is_one()
        assert duality_entry("coev_right", (0, 0), 2, 1, 2).is_zero()

    def test_duality_bad_inputs(self):
        from app.qweyl.coefficients import duality_entry, duality_table

        with pytest.raises(ValueError):
            duality_entry("twist", (0, 0), 1, 0, 0)
        with pytest.raises(ValueError):
            duality_table("ev_left", (-1, 1))

    def test_building_block_certificates(self):
        from app.qweyl.coefficients import DUALITY_MAPS, certify_building_blocks

        certificates = certify_building_blocks()
        assert set(certificates) == {"K^1", "K^-1", "exp(E1 F1) of R", "exp(E1 F1) of R^-1", *DUALITY_MAPS}
        assert [w.direction for w in certificates["K^-1"].witnesses] == [1, 2, 3, 4]
        assert certificates["ev_left"].held_out_hi == [5, 2, 2]

    def test_building_block_refusal_names_the_block(self):
        from app.qweyl import QWeylOp
        from app.qweyl.coefficients import certify_building_blocks, k_block_table
        from app.utils.errors import CertificationRefused

        wrong = [QWeylOp.L(i, 4) - 1 for i in range(4)]
        windows = [("K^1", k_block_table(1, hi=(3, 2, 3, 2)), k_block_table(1), wrong)]
        with patch("app.qweyl.coefficients.building_block_windows", return_value=windows):
            with pytest.raises(CertificationRefused, match="K\\^1"):
                certify_building_blocks()


# ===========================================================================
# SECTION 14 — schema_builder.py
# ===========================================================================

class TestSchemaBuilder:
    """Tests for the versioned JSON documents"""

    def test_verify_document_passed_flag(self):
        from app.schema.schema_builder import SCHEMA_VERSION, build_verify_document

        doc = build_verify_document(
            level="quick",
            seed=1,
            checks=[{"name": "a", "passed": True, "detail": ""}, {"name": "b", "passed": False, "detail": "x"}],
        )
        assert doc["schema_version"] == SCHEMA_VERSION
        assert doc["passed"] is False

    def test_certificate_document(self):
        from app.schema.schema_builder import build_certificate_document

        doc = build_certificate_document(
            source="table", max_order=2, max_mdegree=3, operators=[], certificate=None,
            status="no_witness", reason="none", seed=5,
        )
        assert doc["kind"] == "certificate"
        assert doc["bounds"] == {"max_order": 2, "max_mdegree": 3}

    def test_keyword_only(self):
        from app.schema.schema_builder import build_verify_document

        with pytest.raises(TypeError):
            build_verify_document("quick", 1, [])

    def test_invariant_document_is_json(self, color0):
        from app.diagram import ColoredLink, invariant, parse_braid
        from app.scalars import parse_scalar
        from app.schema.schema_builder import build_invariant_document

        result = invariant(ColoredLink(parse_braid("1:"), (color0,)))
        doc = json.loads(json.dumps(build_invariant_document(result=result, seed=3)))
        assert doc["colors"] == [{"component": 1, "a1": 0, "var": 1}]
        assert parse_scalar(doc["value"]) == result.value


# ===========================================================================
# SECTION 15 — jobs.py
# ===========================================================================

class TestColorSpec:
    """Tests for ColorSpec.parse()"""

    def test_single_value(self):
        from app.cli.jobs import ColorSpec

        spec = ColorSpec.parse("a1=2")
        assert (spec.lo, spec.hi, spec.var) == (2, 2, None)
        assert not spec.is_range

    def test_range_with_variable(self):
        from app.cli.jobs import ColorSpec

        spec = ColorSpec.parse("a1=0..8,var=3")
        assert (spec.lo, spec.hi, spec.var) == (0, 8, 3)
        assert spec.is_range

    @pytest.mark.parametrize("text", ["a2=1", "a1=", "a1=5..2", "a1=-1"])
    def test_bad_colors(self, text):
        from app.cli.jobs import ColorSpec
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            ColorSpec.parse(text)


class TestCmdInvariant:
    """Tests for cmd_invariant()"""

    def test_unknot_document(self):
        from app.cli.jobs import JobSpec, cmd_invariant
        from app.ribbon import modified_dim
        from app.scalars import parse_scalar
        from app.superalg import TypicalColor

        doc = cmd_invariant(JobSpec(braid="1:", colors=["a1=1"]))
        assert doc["kind"] == "invariant"
        assert parse_scalar(doc["value"]) == modified_dim(TypicalColor(1))

    def test_specialized_value_is_q_only(self):
        from app.cli.jobs import JobSpec, cmd_invariant
        from app.scalars import parse_scalar

        doc = cmd_invariant(JobSpec(braid="1:", colors=["a1=0"], specialize={"x1": "3"}))
        assert parse_scalar(doc["value"]).gens() <= {0}
        assert doc["specialized"] == {"x1": "3"}

    def test_color_count_mismatch(self):
        from app.cli.jobs import JobSpec, cmd_invariant
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            cmd_invariant(JobSpec(braid="2: s1 s1", colors=["a1=0"]))

    def test_range_needs_sweep(self):
        from app.cli.jobs import JobSpec, cmd_invariant
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            cmd_invariant(JobSpec(braid="1:", colors=["a1=0..2"]))

    def test_bad_specialization(self):
        from app.cli.jobs import JobSpec, cmd_invariant
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            cmd_invariant(JobSpec(braid="1:", colors=["a1=0"], specialize={"x1": "abc"}))

    def test_nontypical_specialization(self):
        from app.cli.jobs import JobSpec, cmd_invariant
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            cmd_invariant(JobSpec(braid="1:", colors=["a1=0"], specialize={"x1": "-1"}))

    def test_specialized_trefoil_matches_substitution(self):
        from app.cli.jobs import JobSpec, run_invariant
        from app.diagram import ColoredLink, invariant, parse_braid
        from app.scalars import specialize
        from app.superalg import TypicalColor

        symbolic = invariant(ColoredLink(parse_braid("2: s1 s1 s1"), (TypicalColor(1),)))
        baked = run_invariant(JobSpec(braid="2: s1 s1 s1", colors=["a1=1"], specialize={"x1": "3"}))
        assert baked.colors[0].x_value == 3
        assert baked.value == specialize(symbolic.value, {"x1": 3})
        assert baked.normalized == specialize(symbolic.normalized, {"x1": 3})


class TestCmdSweep:
    """Tests for cmd_sweep()"""

    def test_unknot_sweep(self):
        from app.cli.jobs import JobSpec, cmd_sweep

        outcome = cmd_sweep(JobSpec(braid="1:", colors=["a1=0..3"]))
        assert outcome.complete
        assert (outcome.table.lo, outcome.table.hi) == ((0,), (3,))
        assert [row["a1"] for row in outcome.document["rows"]] == [0, 1, 2, 3]

    def test_budget_marks_partial(self):
        from app.cli.jobs import JobSpec, cmd_sweep
        from app.config import settings

        with patch.object(settings, "MAX_A1", 1):
            outcome = cmd_sweep(JobSpec(braid="1:", colors=["a1=0..3"]))
        assert not outcome.complete
        assert outcome.table.hi == (1,)
        assert "MAX_A1" in outcome.document["reason"]

    def test_no_rows_raises(self):
        from app.cli.jobs import JobSpec, cmd_sweep
        from app.config import settings
        from app.utils.errors import BudgetExceeded

        with patch.object(settings, "MAX_A1", 1):
            with pytest.raises(BudgetExceeded):
                cmd_sweep(JobSpec(braid="1:", colors=["a1=2..3"]))

    def test_needs_one_range(self):
        from app.cli.jobs import JobSpec, cmd_sweep
        from app.utils.errors import ColoringError

        with pytest.raises(ColoringError):
            cmd_sweep(JobSpec(braid="1:", colors=["a1=0"]))

    def test_rows_use_one_column(self):
        from app.cli.jobs import JobSpec, cmd_sweep

        job = JobSpec(braid="2: s1 s1 s1", colors=["a1=0..1"], specialize={"x1": "3"})
        with patch("app.diagram.evaluator.scalar_of_endo", side_effect=AssertionError("full endomorphism")):
            outcome = cmd_sweep(job)
        assert outcome.complete
        assert outcome.document["colors"] == [{"component": 1, "a1": 0, "var": 1, "x": "3"}]


class TestCmdGuess:
    """Tests for cmd_guess()"""

    def test_order_two_witness_from_short_table(self):
        from app.cli.jobs import cmd_guess
        from app.qweyl import FunctionTable

        table = FunctionTable.tabulate(lambda n: (-1) ** (n * (n - 1) // 2), (0,), (5,))
        doc = cmd_guess(max_order=2, max_mdegree=0, table=table)
        assert doc["status"] == "certified"
        assert doc["certificate"]["window_hi"] == [3]
        assert doc["certificate"]["witnesses"][0]["order"] == 2

    def test_builtin_qsquare_certified(self):
        from app.cli.jobs import cmd_guess

        doc = cmd_guess(max_order=1, max_mdegree=2, builtin_name="qsquare")
        assert doc["status"] == "certified"
        assert doc["certificate"]["witnesses"][0]["direction"] == 1

    def test_builtin_zsquare_certified(self):
        from app.cli.jobs import cmd_guess

        doc = cmd_guess(max_order=1, max_mdegree=2, builtin_name="zsquare")
        assert doc["status"] == "certified"
        assert [w["direction"] for w in doc["certificate"]["witnesses"]] == [1, 2]

    def test_table_source(self, qsquare_table):
        from app.cli.jobs import cmd_guess

        doc = cmd_guess(max_order=1, max_mdegree=2, table=qsquare_table)
        assert doc["source"] == "table"
        assert doc["status"] == "certified"
        assert doc["certificate"]["window_hi"] == [10]

    def test_exactly_one_source(self, qsquare_table):
        from app.cli.jobs import cmd_guess

        with pytest.raises(ValueError):
            cmd_guess(max_order=1, max_mdegree=2, table=qsquare_table, builtin_name="qsquare")

    def test_order_at_least_one(self):
        from app.cli.jobs import cmd_guess

        with pytest.raises(ValueError):
            cmd_guess(max_order=0, max_mdegree=2, builtin_name="qsquare")

    def test_zero_table_has_no_witness(self):
        from app.cli.jobs import cmd_guess
        from app.qweyl import FunctionTable

        table = FunctionTable.tabulate(lambda n: 0, (0,), (12,))
        doc = cmd_guess(max_order=1, max_mdegree=2, table=table)
        assert doc["status"] == "no_witness"
        assert doc["certificate"] is None


# ===========================================================================
# SECTION 16 — verify.py
# ===========================================================================

class TestCmdVerify:
    """Tests for cmd_verify() and its property suites"""

    @pytest.mark.parametrize(
        "suite",
        [
            "superalg.relations",
            "ribbon.r_inverse",
            "ribbon.pivotal",
            "diagram.unknot",
            "qweyl.builtins",
            "qweyl.module_action",
            "qweyl.normal_order",
            "qweyl.coefficients",
        ],
    )
    def test_quick_suites_pass(self, suite):
        from app.cli.verify import cmd_verify

        doc = cmd_verify("quick", seed=11, suites=[suite])
        assert doc["passed"], doc["checks"]

    def test_unknown_suite(self):
        from app.cli.verify import cmd_verify

        with pytest.raises(ValueError):
            cmd_verify("quick", suites=["nope"])

    def test_unknown_level(self):
        from app.cli.verify import cmd_verify

        with pytest.raises(ValueError):
            cmd_verify("thorough", suites=["qweyl.builtins"])

    def test_crashing_suite_is_reported(self):
        from app.cli import verify

        def boom(checker):
            raise RuntimeError("broken")

        with patch.dict(verify.SUITES, {"qweyl.builtins": boom}):
            doc = verify.cmd_verify("quick", suites=["qweyl.builtins"])
        assert doc["passed"] is False
        assert "RuntimeError" in doc["checks"][0]["detail"]

    def test_seed_defaults_from_settings(self):
        from app.cli.verify import cmd_verify
        from app.config import settings

        doc = cmd_verify("quick", suites=["qweyl.normal_order"])
        assert doc["seed"] == settings.DEFAULT_SEED

    @pytest.mark.slow
    @pytest.mark.parametrize("suite", ["ribbon.qybe", "ribbon.naturality", "diagram.invariance"])
    def test_slow_suites_pass(self, suite):
        from app.cli.verify import cmd_verify

        doc = cmd_verify("quick", suites=[suite])
        assert doc["passed"], doc["checks"]

    @pytest.mark.slow
    def test_full_level_relations(self):
        from app.cli.verify import cmd_verify

        doc = cmd_verify("full", suites=["superalg.relations", "qweyl.module_action"])
        assert doc["passed"], doc["checks"]


# ===========================================================================
# SECTION 17 — main.py (CLI)
# ===========================================================================

class TestCli:
    """Tests for the rtq command group"""

    def test_invariant_command(self):
        from click.testing import CliRunner
        from app.cli.main import cli

        result = CliRunner().invoke(cli, ["invariant", "--braid", "1:", "--colors", "a1=0"])
        assert result.exit_code == 0
        assert json.loads(result.output)["kind"] == "invariant"

    def test_invariant_writes_out_file(self, tmp_path):
        from click.testing import CliRunner
        from app.cli.main import cli

        out = tmp_path / "unknot.json"
        result = CliRunner().invoke(cli, ["invariant", "--braid", "1:", "--colors", "a1=0", "--out", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["braid"] == "1:"

    def test_sweep_csv(self):
        from click.testing import CliRunner
        from app.cli.main import cli

        result = CliRunner().invoke(cli, ["sweep", "--braid", "1:", "--colors", "a1=0..2", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0] == "n1,value"
        assert len(lines) == 4

    def test_guess_from_csv_file(self, tmp_path, qsquare_table):
        from click.testing import CliRunner
        from app.cli.main import cli
        from app.qweyl import table_to_csv

        path = tmp_path / "qsquare.csv"
        path.write_text(table_to_csv(qsquare_table))
        result = CliRunner().invoke(cli, ["guess", "--table", str(path), "-d", "1", "-e", "2"])
        assert result.exit_code == 0
        assert json.loads(result.output)["status"] == "certified"

    def test_verify_command(self):
        from click.testing import CliRunner
        from app.cli.main import cli

        result = CliRunner().invoke(cli, ["verify", "--suite", "qweyl.builtins"])
        assert result.exit_code == 0
        assert json.loads(result.output)["passed"] is True

    def test_exit_code_usage(self):
        from app.cli.main import EXIT_USAGE, main

        assert main(["invariant", "--colors", "a1=0"]) == EXIT_USAGE
        assert main(["invariant", "--braid", "2: s3", "--colors", "a1=0"]) == EXIT_USAGE
        assert main(["guess", "--builtin", "nope"]) == EXIT_USAGE

    def test_exit_code_budget(self):
        from app.cli.main import EXIT_BUDGET, main
        from app.config import settings

        with patch.object(settings, "MAX_A1", 1):
            assert main(["sweep", "--braid", "1:", "--colors", "a1=0..3"]) == EXIT_BUDGET

    def test_exit_code_verification(self):
        from app.cli import verify
        from app.cli.main import EXIT_VERIFICATION, main

        with patch.dict(verify.SUITES, {"qweyl.builtins": lambda checker: (False, "forced")}):
            assert main(["verify", "--suite", "qweyl.builtins"]) == EXIT_VERIFICATION

    def test_exit_code_ok(self):
        from app.cli.main import EXIT_OK, main

        assert main(["invariant", "--braid", "1:", "--colors", "a1=0"]) == EXIT_OK

    def test_specialize_needs_equals(self):
        from app.cli.main import EXIT_USAGE, main

        assert main(["invariant", "--braid", "1:", "--colors", "a1=0", "--specialize", "x1"]) == EXIT_USAGE


# ===========================================================================
# SECTION 18 — api.py (Flask routes)
# ===========================================================================

class TestHealthEndpoint:
    def test_health_returns_ok(self, client):
        resp = client.get("/api/health")
        assert resp.status_code == 200
        assert resp.get_json()["status"] == "ok"


class TestInvariantEndpoint:
    def test_unknot(self, client):
        resp = client.post("/api/invariant", json={"braid": "1:", "colors": ["a1=0"]})
        assert resp.status_code == 200
        data = resp.get_json()
        assert data["success"] is True
        assert data["result"]["kind"] == "invariant"

    def test_missing_braid(self, client):
        resp = client.post("/api/invariant", json={"colors": ["a1=0"]})
        assert resp.status_code == 400
        assert resp.get_json()["success"] is False

    def test_bad_braid(self, client):
        resp = client.post("/api/invariant", json={"braid": "two: s1", "colors": ["a1=0"]})
        assert resp.status_code == 400

    def test_unexpected_error_is_500(self, client):
        with patch("app.routes.api.cmd_invariant", side_effect=RuntimeError("boom")):
            resp = client.post("/api/invariant", json={"braid": "1:", "colors": ["a1=0"]})
        assert resp.status_code == 500
        assert resp.get_json()["error"] == "boom"


class TestSweepEndpoint:
    def test_complete_sweep(self, client):
        resp = client.post("/api/sweep", json={"braid": "1:", "colors": ["a1=0..2"]})
        assert resp.status_code == 200
        assert len(resp.get_json()["result"]["rows"]) == 3

    def test_budget_is_422(self, client):
        from app.config import settings

        with patch.object(settings, "MAX_A1", 1):
            resp = client.post("/api/sweep", json={"braid": "1:", "colors": ["a1=2..3"]})
        assert resp.status_code == 422


class TestGuessEndpoint:
    def test_builtin(self, client):
        resp = client.post("/api/guess", json={"builtin": "qsquare", "max_order": 1, "max_mdegree": 2})
        assert resp.status_code == 200
        assert resp.get_json()["result"]["status"] == "certified"

    def test_table_csv(self, client, qsquare_table):
        from app.qweyl import table_to_csv

        body = {"table_csv": table_to_csv(qsquare_table), "max_order": 1, "max_mdegree": 2}
        resp = client.post("/api/guess", json=body)
        assert resp.status_code == 200
        assert resp.get_json()["result"]["source"] == "table"

    def test_no_source(self, client):
        resp = client.post("/api/guess", json={"max_order": 1})
        assert resp.status_code == 400


class TestVerifyEndpoint:
    def test_single_suite(self, client):
        resp = client.post("/api/verify", json={"suites": ["qweyl.builtins"]})
        assert resp.status_code == 200
        assert resp.get_json()["success"] is True

    def test_unknown_suite(self, client):
        resp = client.post("/api/verify", json={"suites": ["nope"]})
        assert resp.status_code == 400


# ===========================================================================
# SECTION 19 — acceptance
# ===========================================================================

class TestAcceptance:
    """End-to-end runs over swept braid closures"""

    def test_unknot_sweep_recurrence(self):
        from app.cli.jobs import JobSpec, cmd_guess

        job = JobSpec(braid="1:", colors=["a1=0..12"], specialize={"x1": "3"})
        doc = cmd_guess(max_order=1, max_mdegree=2, job=job)
        assert doc["source"] == "sweep:1:"
        assert doc["status"] == "certified"

    def test_unknot_symbolic_a2_recurrence(self):
        from app.cli.jobs import JobSpec, cmd_guess, cmd_sweep, guess_and_certify
        from app.qweyl import FunctionTable
        from app.qweyl.coefficients import modified_dim_annihilators

        job = JobSpec(braid="1:", colors=["a1=0..12"])
        table = cmd_sweep(job).table
        assert all(1 in table[(a1,)].gens() for a1 in range(13))

        doc = cmd_guess(max_order=1, max_mdegree=2, job=job)
        assert doc["status"] == "certified"
        assert doc["certificate"]["witnesses"][0]["order"] == 1
        assert doc["certificate"]["held_out_hi"] == [12]

        # a2 declared continuous: the a2 witness acts by shifting x and z inside the values
        lifted = FunctionTable(table.lo, table.hi, dict(table.values), (1,))
        a2_witness = modified_dim_annihilators(continuous=True)[1]
        result = guess_and_certify(lifted.restrict((0,), (10,)), lifted, 1, 2, extra_ops=[a2_witness])
        assert result["status"] == "certified"
        assert [w["direction"] for w in result["certificate"]["witnesses"]] == [1, 2]

    @pytest.mark.slow
    def test_trefoil_sweep_and_guess(self):
        from app.cli.jobs import JobSpec, cmd_guess

        summaries = []
        for x in ("3", "5/2", "-7/3"):
            job = JobSpec(braid="2: s1 s1 s1", colors=["a1=0..10"], specialize={"x1": x})
            doc = cmd_guess(max_order=1, max_mdegree=1, job=job)
            assert doc["source"] == "sweep:2: s1 s1 s1"
            if doc["certificate"] is not None:
                assert doc["certificate"]["window_hi"] == [8]
                assert doc["certificate"]["held_out_hi"] == [10]
            supports = sorted((op["direction"], op["order"]) for op in doc["operators"])
            summaries.append((doc["status"], supports))
        # three generic values of q^a2 see the same operator supports
        assert summaries[0] == summaries[1] == summaries[2]
