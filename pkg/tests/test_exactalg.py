import pytest
from hypothesis import given, settings, strategies as st

from sepcat.exactalg import Field, Matrix, QQ

F2 = Field(2)
F5 = Field(5)


class TestScalars:
    def test_rational_add(self):
        assert QQ.add(QQ.of("1/2"), QQ.of("1/3")) == QQ.of("5/6")

    def test_prime_field_div(self):
        assert F5.div(F5.of(1), F5.of(2)) == 3

    def test_division_by_characteristic(self):
        with pytest.raises(ZeroDivisionError):
            F2.div(F2.of(1), F2.of(2))

    def test_arith_dispatch(self):
        assert QQ.arith(QQ.of(2), QQ.of(3), "mul") == QQ.of(6)
        assert F5.arith(F5.of(2), F5.of(4), "sub") == 3

    def test_prime_validation(self):
        with pytest.raises(ValueError):
            Field(6)

    def test_text_round_trip(self):
        for text in ["0", "-3", "5/6", "-7/2"]:
            assert QQ.format(QQ.parse(text)) == text
        assert F5.format(F5.parse("12")) == "2"

    def test_field_json(self):
        assert Field.from_json("Q") == QQ
        assert Field.from_json({"Fp": 7}) == Field(7)
        with pytest.raises(ValueError):
            Field.from_json({"GF": 4})


class TestRref:
    def test_identity(self):
        res = Matrix.identity(QQ, 2).rref()
        assert res.rank == 2 and res.pivot_cols == (0, 1)

    def test_proportional_rows(self):
        assert Matrix.from_rows(QQ, [[1, 2], [2, 4]]).rank() == 1

    def test_mod2_elimination(self):
        assert Matrix.from_rows(F2, [[1, 1], [1, 0]]).rank() == 2

    def test_zero_sized(self):
        assert Matrix.zeros(QQ, 0, 3).rank() == 0
        assert Matrix.zeros(QQ, 3, 0).rank() == 0


class TestSolve:
    def test_identity_system(self):
        sol = Matrix.identity(QQ, 2).solve(Matrix.column(QQ, [1, 2]))
        assert sol.entries == [QQ.of(1), QQ.of(2)]

    def test_inconsistent(self):
        a = Matrix.from_rows(QQ, [[1, 1], [1, 1]])
        assert a.solve(Matrix.column(QQ, [1, 2])) is None

    def test_free_variable_zeroed(self):
        sol = Matrix.from_rows(QQ, [[1, 2]]).solve(Matrix.column(QQ, [1]))
        assert sol.entries == [QQ.of(1), QQ.of(0)]

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            Matrix.identity(QQ, 2).solve(Matrix.column(QQ, [1, 2, 3]))


class TestKernel:
    def test_identity_has_no_kernel(self):
        assert Matrix.identity(QQ, 3).kernel_basis().cols == 0

    def test_zero_matrix(self):
        k = Matrix.zeros(QQ, 2, 2).kernel_basis()
        assert k == Matrix.identity(QQ, 2)

    def test_single_relation(self):
        k = Matrix.from_rows(QQ, [[1, 2]]).kernel_basis()
        assert k.cols == 1 and k.col(0) == [QQ.of(-2), QQ.of(1)]


fields = st.sampled_from([QQ, F2, F5, Field(97)])


@st.composite
def matrices(draw, field=None):
    f = field if field is not None else draw(fields)
    rows = draw(st.integers(0, 4))
    cols = draw(st.integers(0, 4))
    ents = draw(st.lists(st.integers(-9, 9), min_size=rows * cols, max_size=rows * cols))
    return Matrix(f, rows, cols, [f.of(e) for e in ents])


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_kernel_columns_annihilate(a):
    k = a.kernel_basis()
    assert (a @ k).is_zero()
    assert a.rank() + k.cols == a.cols


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_rref_idempotent(a):
    red = a.rref().reduced
    assert red.rref().reduced == red


@given(matrices(), st.data())
@settings(max_examples=100, deadline=None)
def test_solve_soundness(a, data):
    b_ents = data.draw(st.lists(st.integers(-9, 9), min_size=a.rows, max_size=a.rows))
    b = Matrix.column(a.field, b_ents)
    x = a.solve(b)
    if x is not None:
        assert a @ x == b


@given(matrices(), st.data())
@settings(max_examples=100, deadline=None)
def test_solve_complete_on_consistent_systems(a, data):
    x_ents = data.draw(st.lists(st.integers(-9, 9), min_size=a.cols, max_size=a.cols))
    b = a @ Matrix.column(a.field, x_ents)
    x = a.solve(b)
    assert x is not None and a @ x == b


@given(st.integers(-40, 40), st.integers(-40, 40), st.sampled_from(["add", "sub", "mul", "div"]))
@settings(max_examples=200, deadline=None)
def test_scalar_canonical_form(m, n, op):
    for f in (QQ, F5):
        a, b = f.of(m), f.of(n)
        if op == "div" and not b:
            continue
        r = f.arith(a, b, op)
        if f.is_rationals:
            import math

            assert r.denominator > 0
            assert math.gcd(int(r.numerator), int(r.denominator)) == 1
        else:
            assert 0 <= r < f.p
