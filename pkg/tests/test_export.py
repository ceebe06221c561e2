from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from lieosc import CheckReport, Surd, SurdMatrix, SurdTensor
from lieosc.export import (
    REPORT_HEADER,
    csv_text,
    dumps_json,
    matrix_from_json,
    matrix_to_json,
    report_rows,
    tensor_from_json,
    tensor_rows,
    tensor_to_json,
    write_text,
)

from builders import rep, tensors

values = st.builds(
    lambda d, a, b: Surd.normalize([(d, a, b)]),
    st.sampled_from((1, 2, 3, 6)),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


@st.composite
def matrices(draw):
    r, c = draw(st.integers(1, 4)), draw(st.integers(1, 4))
    cells = draw(st.dictionaries(st.tuples(st.integers(0, r - 1), st.integers(0, c - 1)), values, max_size=6))
    return SurdMatrix.from_entries((r, c), cells)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_matrix_round_trip(m):
    assert matrix_from_json(matrix_to_json(m)) == m


def test_matrix_json_is_one_based_and_sparse():
    m = SurdMatrix.from_entries((2, 3), {(1, 2): Surd.sqrt(2) / 2})
    assert matrix_to_json(m) == {"shape": [2, 3], "entries": [[2, 3, "1/2*sqrt(2)"]]}


def test_tensor_round_trip():
    t = tensors("C", 2).d_xy
    assert tensor_from_json(tensor_to_json(t)) == t


def test_tensor_rows_sorted():
    rows = tensor_rows(tensors("C", 2).c)
    keys = [tuple(r[:3]) for r in rows]
    assert keys == sorted(keys) and min(min(k) for k in keys) == 1


def test_empty_tensor_is_header_only():
    empty = SurdTensor.from_entries((3, 3, 3), {})
    assert csv_text(("i", "j", "k", "value"), tensor_rows(empty)) == "i,j,k,value\n"


def test_report_rows():
    rpt = CheckReport("demo", "9.9")
    rpt.add("zero", Fraction(0))
    rpt.add("nonzero", Surd.sqrt(3))
    rows = report_rows([rpt])
    assert rows == [["9.9", "demo", "zero", "true", "0"], ["9.9", "demo", "nonzero", "false", "1*sqrt(3)"]]
    assert csv_text(REPORT_HEADER, rows).splitlines()[0] == "identity,name,relation,pass,max_residual"


def test_json_is_canonical():
    text = dumps_json({"b": 1, "a": [1, 2]})
    assert text.endswith("\n") and text.index('"a"') < text.index('"b"')


def test_write_creates_parents(tmp_path):
    target = write_text("x\n", tmp_path / "deep" / "dir" / "out.csv")
    assert target.read_bytes() == b"x\n"


def test_generator_export_stable():
    a = dumps_json([matrix_to_json(x) for x in rep("B", 2).basisX])
    b = dumps_json([matrix_to_json(x) for x in rep("B", 2).basisX])
    assert a == b
