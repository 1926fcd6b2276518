import random

import pytest
import sympy
from hypothesis import given, strategies as st

from ffkronecker.errors import NonPolynomial, ParseError, SyntaxError as SlpSyntaxError, UnknownVariable
from ffkronecker.field import PrimeField
from ffkronecker.rings import PolyRing, QuotientRing, SeriesRing
from ffkronecker.slp import (
    LinearForms,
    apply_linear_change,
    combine,
    eval_generic,
    format_system,
    jacobian_at,
    parse_polynomial,
    parse_system,
    parse_system_full,
    random_matrix,
)
from ffkronecker.upoly import p_eval

F7, F101 = PrimeField(7), PrimeField(101)


def poly(text, F=F7, names=("X1", "X2")):
    return parse_polynomial(text, F, list(names))


def test_parse_examples():
    assert poly("X1*X2 + 1").evaluate([2, 3]) == [0]
    assert poly("X1^2 + X2^2 - 1").evaluate([3, 4]) == [3]


def test_division_is_rejected():
    with pytest.raises(NonPolynomial):
        poly("X1/(X2)")


def test_parse_errors():
    with pytest.raises(UnknownVariable):
        poly("X3 + 1")
    with pytest.raises(SlpSyntaxError):
        poly("X1 + * X2")
    with pytest.raises(ParseError):
        parse_system("vars X1\npoly X1\n")


def test_system_file_format():
    text = "# comment\nfield p=7 ext=1\nvars x y\npoly x^2 + y^2 - 1  # circle\npoly x - y\n"
    ps = parse_system_full(text)
    assert ps.field == F7 and ps.var_names == ["x", "y"] and len(ps.polys) == 2
    assert ps.texts == ["x^2 + y^2 - 1", "x - y"]
    again = parse_system_full(format_system(ps.field, ps.var_names, ps.texts))
    assert [p.evaluate([2, 2]) for p in again.polys] == [p.evaluate([2, 2]) for p in ps.polys]


def test_common_subexpressions_are_shared():
    a = poly("(X1 + X2)^2 + (X1 + X2)^2")
    b = poly("2*X1*X1 + 2*X2*X2 + 4*X1*X2")
    assert a.time <= 4  # one sum, one square, one doubling
    assert a.evaluate([3, 5]) == b.evaluate([3, 5])


def test_metrics_and_degree():
    s = poly("X1^2*X2 + X2 + 3")
    assert s.degree == 3
    assert s.division_free
    assert s.time >= 3 and s.space >= 1


def test_eval_over_polynomial_ring():
    s = poly("X1^2 + X2^2 - 1")
    R = PolyRing(F7)
    assert eval_generic(s, [R.gen(), []], R) == [[6, 0, 1]]


def test_eval_modulo_fiber():
    s = poly("X1^2 + X2^2 - 1")
    R = QuotientRing(F7, [6, 0, 1])
    assert eval_generic(s, [[], R.gen()], R) == [[]]


def test_eval_over_series_specializes():
    rng = random.Random(8)
    N = 6
    R = SeriesRing(F101, N)
    s = parse_polynomial("X1^2*X2 - 3*X2 + X1 + 7", F101, ["X1", "X2"])
    for _ in range(100):
        a = [[F101.random(rng) for _ in range(2)] for _ in range(2)]  # affine in e
        t = F101.random(rng)
        out = eval_generic(s, [list(a[0]), list(a[1])], R)[0]
        direct = s.evaluate([p_eval(a[0], t, F101), p_eval(a[1], t, F101)])[0]
        assert p_eval(out, t, F101) == direct  # degree 3 < N, nothing truncated


def test_jacobian_examples():
    assert jacobian_at(poly("X1^2 + X2^2"), [1, 2]) == [[2, 4]]
    assert jacobian_at(poly("5*X1"), [3, 6]) == [[5, 0]]


def test_jacobian_matches_symbolic_derivative():
    rng = random.Random(12)
    X1, X2, X3 = sympy.symbols("X1 X2 X3")
    names = ["X1", "X2", "X3"]
    for _ in range(50):
        texts = []
        for _ in range(2):
            terms = []
            for _ in range(3):
                c = rng.randrange(1, 101)
                e = [rng.randrange(3) for _ in range(3)]
                terms.append(f"{c}*X1^{e[0]}*X2^{e[1]}*X3^{e[2]}")
            texts.append(" + ".join(terms))
        slps = [parse_polynomial(t, F101, names) for t in texts]
        pt = [rng.randrange(101) for _ in range(3)]
        jac = jacobian_at(slps, pt)
        for i, t in enumerate(texts):
            expr = sympy.sympify(t.replace("^", "**"))
            for j, v in enumerate((X1, X2, X3)):
                d = sympy.diff(expr, v).subs({X1: pt[0], X2: pt[1], X3: pt[2]})
                assert jac[i][j] == int(d) % 101


def test_identity_change():
    s = poly("X1^3 + 2*X1*X2 + 5")
    t = apply_linear_change(s, LinearForms.identity(F7, 2))
    for x in range(7):
        for y in range(7):
            assert t.evaluate([x, y]) == s.evaluate([x, y])


def test_permutation_change():
    s = poly("X1^3 + 2*X2 + 5")
    t = apply_linear_change(s, LinearForms.make(F7, [[0, 1], [1, 0]]))
    for x in range(7):
        for y in range(7):
            assert t.evaluate([y, x]) == s.evaluate([x, y])


def test_random_change_two_sided():
    rng = random.Random(3)
    s = parse_polynomial("X1^2*X3 - X2 + 4*X3^3", F101, ["X1", "X2", "X3"])
    forms = LinearForms.make(F101, random_matrix(F101, 3, rng), [F101.random(rng) for _ in range(3)])
    t = apply_linear_change(s, forms)
    for _ in range(100):
        y = [F101.random(rng) for _ in range(3)]
        assert t.evaluate(y) == s.evaluate(forms.apply_inverse(y))


def test_forms_round_trip():
    rng = random.Random(1)
    forms = LinearForms.make(F101, random_matrix(F101, 3, rng), [1, 2, 3])
    assert LinearForms.from_json(F101, forms.to_json()) == forms
    x = [5, 6, 7]
    assert forms.apply_inverse(forms.apply(x)) == x


@given(st.lists(st.integers(0, 100), min_size=2, max_size=2), st.lists(st.integers(0, 100), min_size=2, max_size=2))
def test_combine_preserves_outputs(x, y):
    a = parse_polynomial("X1^2 + X2", F101, ["X1", "X2"])
    b = parse_polynomial("X1^2 - X2*X1", F101, ["X1", "X2"])
    c = combine([a, b])
    assert c.evaluate(x) == a.evaluate(x) + b.evaluate(x)
    assert c.time <= a.time + b.time


@given(st.integers(0, 100), st.integers(0, 100), st.integers(0, 5))
def test_parser_matches_python_arithmetic(x, y, e):
    s = parse_polynomial(f"(X1 - 3*X2)^{e} * (X2 + 1) - -X1", F101, ["X1", "X2"])
    assert s.evaluate([x, y]) == [((x - 3 * y) ** e * (y + 1) + x) % 101]
