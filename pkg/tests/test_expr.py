import random

import numpy as np
import pytest

from conftest import random_symbol
from slanth import (
    SLANT_H_TOEPLITZ,
    IndexWindow,
    WindowError,
    build_compositional,
    build_extension_natural,
    build_family,
    eval_expr,
    parse_expr,
    parse_symbol,
    print_expr,
)
from slanth.expr import Atom, Compose, Diff, ExprParseError, Scaled, UnknownSymbolError

GENERIC = parse_symbol("-1:2, 0:3, 1:5, 2:7")
TABLE = {"phi": GENERIC}


class TestParse:
    def test_single_atom(self):
        assert parse_expr("W") == Atom("W")

    def test_chain_of_four(self):
        node = parse_expr("W . P . M(phi) . K")
        assert node == Compose(Compose(Compose(Atom("W"), Atom("P")), Atom("M", ("phi",))), Atom("K"))

    def test_difference_of_chains(self):
        node = parse_expr("U* . V(phi) . Cz(2) . Mz(2) - V(phi) . Cz(2)")
        assert isinstance(node, Diff)
        assert isinstance(node.left, Compose) and isinstance(node.right, Compose)

    def test_parentheses_and_scalar(self):
        node = parse_expr("2.5 W . (K* . K)")
        assert node == Compose(Scaled(2.5, Atom("W")), Compose(Atom("K*"), Atom("K")))

    def test_negative_integer_argument(self):
        assert parse_expr("S(-2)") == Atom("S", (-2,))

    def test_extension_atom(self):
        assert parse_expr("A(2, phi)") == Atom("A", (2, "phi"))

    @pytest.mark.parametrize(
        "text",
        ["Q", "W(2)", "Cz", "Cz(x)", "(W . K", "W . ", "V()", "A(phi)", "2", "W K"],
    )
    def test_rejects(self, text):
        with pytest.raises(ExprParseError):
            parse_expr(text)

    def test_error_carries_column(self):
        with pytest.raises(ExprParseError) as info:
            parse_expr("W . Bogus")
        assert "col 5" in str(info.value)


class TestPrintRoundtrip:
    def test_hand_cases(self):
        for text in [
            "W",
            "W . P . M(phi) . K",
            "U* . V(phi) . Cz(2) . Mz(2) - V(phi) . Cz(2)",
            "2.5 W . (K* . K)",
            "A(1,phi) - A(2,phi) - V(phi)",
        ]:
            node = parse_expr(text)
            assert parse_expr(print_expr(node)) == node

    def test_random_asts(self):
        rng = random.Random(7)
        atoms = [Atom("W"), Atom("K*"), Atom("Cz", (2,)), Atom("V", ("phi",)), Atom("A", (1, "phi"))]

        def grow(depth):
            if depth == 0:
                atom = rng.choice(atoms)
                return Scaled(round(rng.uniform(0.5, 3.0), 3), atom) if rng.random() < 0.3 else atom
            kind = rng.choice([Compose, Diff])
            return kind(grow(depth - 1), grow(rng.randint(0, depth - 1)))

        for _ in range(50):
            node = grow(rng.randint(1, 3))
            assert parse_expr(print_expr(node)) == node


class TestEval:
    def test_split_inverse_identity(self):
        got = eval_expr(parse_expr("K* . K"), IndexWindow(0, 7), {})
        assert got.rows == IndexWindow(0, 7)
        assert np.array_equal(got.data, np.eye(8))

    def test_chain_matches_compositional_builder(self):
        window = IndexWindow(0, 9)
        got = eval_expr(parse_expr("W . P . M(phi) . K"), window, TABLE)
        want = build_compositional(SLANT_H_TOEPLITZ, GENERIC, window)
        assert got.rows == want.rows and got.cols == want.cols
        assert np.array_equal(got.data, want.data)

    def test_family_atom_matches_family_builder(self):
        window = IndexWindow(0, 9)
        got = eval_expr(parse_expr("V(phi)"), window, TABLE)
        want = build_family(SLANT_H_TOEPLITZ, GENERIC, got.rows, window)
        assert np.array_equal(got.data, want.data)

    def test_self_difference_vanishes(self):
        got = eval_expr(parse_expr("V(phi) - V(phi)"), IndexWindow(0, 9), TABLE)
        assert not np.any(got.data)

    def test_shift_identity_difference_vanishes(self):
        text = "U* . V(phi) . Cz(2) . Mz(2) - V(phi) . Cz(2)"
        got = eval_expr(parse_expr(text), IndexWindow(0, 5), TABLE)
        assert got.data.size > 0
        assert np.max(np.abs(got.data)) == 0.0

    def test_extension_atom(self):
        got = eval_expr(parse_expr("A(2, phi)"), IndexWindow(0, 6), TABLE)
        want = build_extension_natural(2, GENERIC, IndexWindow(0, 6))
        assert got.rows == want.rows
        assert np.array_equal(got.data, want.data)

    def test_scalar(self):
        window = IndexWindow(0, 9)
        scaled = eval_expr(parse_expr("2 V(phi)"), window, TABLE)
        plain = eval_expr(parse_expr("V(phi)"), window, TABLE)
        assert np.array_equal(scaled.data, 2 * plain.data)

    def test_unresolved_symbol(self):
        with pytest.raises(UnknownSymbolError):
            eval_expr(parse_expr("V(psi)"), IndexWindow(0, 4), TABLE)

    def test_subtraction_window_mismatch(self):
        with pytest.raises(WindowError):
            eval_expr(parse_expr("W - P"), IndexWindow(0, 4), {})

    def test_analytic_guard_propagates(self):
        with pytest.raises(WindowError):
            eval_expr(parse_expr("J"), IndexWindow(-2, 3), {})

    def test_random_chains_stay_exact(self, rng):
        phi = random_symbol(rng, span=3)
        table = {"phi": phi}
        for text in ["T(phi)", "H(phi)", "B(phi)", "L(phi)", "Sh(phi)", "V*(phi)"]:
            section = eval_expr(parse_expr(text), IndexWindow(0, 11), table)
            assert section.exact
