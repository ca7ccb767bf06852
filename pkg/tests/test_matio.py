"""Matrix generators, Hessenberg reduction, Matrix Market parsing, CSV rows."""

import io

import numpy as np
import numpy.testing as npt
import pytest

from conftest import matched_max_distance, random_complex
from poleswap import (
    CSV_HEADER,
    EPS,
    BenchRow,
    MatrixMarketError,
    MatrixSource,
    gen_iplusj,
    gen_random_hessenberg,
    read_matrix_market,
    reduce_to_hessenberg,
    trial_seed,
    write_csv,
)


# -- Hessenberg reduction ----------------------------------------------------


def test_reduce_to_hessenberg_pattern_and_spectrum():
    rng = np.random.default_rng(100)
    for n in (2, 5, 9):
        a = random_complex(rng, n, n)
        h = reduce_to_hessenberg(a)
        assert h.shape == (n, n)
        if n > 2:
            assert np.abs(np.tril(h, -2)).max() == 0.0  # exact zeros
        want = np.linalg.eigvals(a)
        assert matched_max_distance(np.linalg.eigvals(h), want) <= 1e-10 * max(
            1.0, np.linalg.norm(a)
        )


def test_reduce_to_hessenberg_real_input_stays_close_to_real():
    rng = np.random.default_rng(101)
    a = rng.standard_normal((6, 6))
    h = reduce_to_hessenberg(a)
    assert matched_max_distance(
        np.linalg.eigvals(h), np.linalg.eigvals(a)
    ) <= 1e-10 * np.linalg.norm(a)


def test_reduce_to_hessenberg_small_sizes():
    npt.assert_array_equal(reduce_to_hessenberg(np.array([[3.0]])), [[3.0]])
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    npt.assert_array_equal(reduce_to_hessenberg(a), a)


# -- generators ---------------------------------------------------------------


def test_gen_random_hessenberg_is_deterministic():
    a = gen_random_hessenberg(8, 42)
    b = gen_random_hessenberg(8, 42)
    npt.assert_array_equal(a, b)
    c = gen_random_hessenberg(8, 43)
    assert np.abs(a - c).max() > 0.1


def test_gen_random_hessenberg_pattern():
    a = gen_random_hessenberg(7, 0)
    assert a.dtype == np.complex128
    assert np.abs(np.tril(a, -2)).max() == 0.0
    assert np.abs(np.diagonal(a, -1)).min() > 0.0


def test_gen_iplusj_frozen_small_cases():
    npt.assert_array_equal(gen_iplusj(2), np.array([[2.0, 3.0], [3.0, 4.0]]))
    a = gen_iplusj(5)
    assert a[0, 4] == 6.0  # 1-based (1, 5)
    assert a[4, 3] == 9.0  # subdiagonal (5, 4)
    assert a[4, 0] == 0.0  # below the subdiagonal
    assert np.abs(np.tril(a, -2)).max() == 0.0


def test_trial_seed_is_pure_and_spread():
    assert trial_seed(0, 10, 3) == trial_seed(0, 10, 3)
    seen = {trial_seed(s, n, t) for s in (0, 1) for n in (4, 8) for t in range(5)}
    assert len(seen) == 20


# -- Matrix Market: happy paths ----------------------------------------------


def read_text(text: str) -> np.ndarray:
    return read_matrix_market(io.StringIO(text))


def test_mm_coordinate_real_general():
    text = """%%MatrixMarket matrix coordinate real general
% a comment line

3 3 4
1 1 1.0
2 1 -2.5
3 3 4e-1
1 3 1.0D+01
"""
    a = read_text(text)
    want = np.zeros((3, 3), dtype=complex)
    want[0, 0] = 1.0
    want[1, 0] = -2.5
    want[2, 2] = 0.4
    want[0, 2] = 10.0  # Fortran D exponent accepted
    npt.assert_array_equal(a, want)


def test_mm_coordinate_duplicates_are_summed():
    text = """%%MatrixMarket matrix coordinate integer general
2 2 3
1 1 1
1 1 2
2 2 5
"""
    a = read_text(text)
    npt.assert_array_equal(a, [[3.0, 0.0], [0.0, 5.0]])


def test_mm_coordinate_complex_hermitian():
    text = """%%MatrixMarket matrix coordinate complex hermitian
2 2 2
1 1 2.0 0.0
2 1 1.0 -3.0
"""
    a = read_text(text)
    want = np.array([[2.0, 1.0 + 3.0j], [1.0 - 3.0j, 0.0]])
    npt.assert_array_equal(a, want)


def test_mm_coordinate_pattern_symmetric():
    text = """%%MatrixMarket matrix coordinate pattern symmetric
3 3 2
2 1
3 3
"""
    a = read_text(text)
    want = np.zeros((3, 3), dtype=complex)
    want[1, 0] = want[0, 1] = 1.0
    want[2, 2] = 1.0
    npt.assert_array_equal(a, want)


def test_mm_coordinate_skew_symmetric():
    text = """%%MatrixMarket matrix coordinate real skew-symmetric
2 2 1
2 1 3.0
"""
    a = read_text(text)
    npt.assert_array_equal(a, [[0.0, -3.0], [3.0, 0.0]])


def test_mm_array_real_general_is_column_major():
    text = """%%MatrixMarket matrix array real general
2 3
1
2
3
4
5
6
"""
    a = read_text(text)
    npt.assert_array_equal(a, [[1.0, 3.0, 5.0], [2.0, 4.0, 6.0]])


def test_mm_array_complex_general():
    text = """%%MatrixMarket matrix array complex general
1 2
1.0 2.0
-3.0 0.5
"""
    a = read_text(text)
    npt.assert_array_equal(a, [[1.0 + 2.0j, -3.0 + 0.5j]])


def test_mm_array_symmetric_fills_lower_slots():
    text = """%%MatrixMarket matrix array real symmetric
2 2
1
2
3
"""
    a = read_text(text)
    npt.assert_array_equal(a, [[1.0, 2.0], [2.0, 3.0]])


def test_mm_reads_from_path(tmp_path):
    path = tmp_path / "tiny.mtx"
    path.write_text("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 7.5\n")
    npt.assert_array_equal(read_matrix_market(path), [[7.5]])
    npt.assert_array_equal(read_matrix_market(str(path)), [[7.5]])


# -- Matrix Market: error contract ---------------------------------------------


@pytest.mark.parametrize(
    "text,match",
    [
        ("", "line 1: empty file"),
        ("%%MatrixMarket matrix coordinate real\n", "expected 5 tokens"),
        ("%%Banner matrix coordinate real general\n", "missing %%MatrixMarket"),
        ("%%MatrixMarket tensor coordinate real general\n", "unsupported object"),
        ("%%MatrixMarket matrix list real general\n", "unknown format"),
        ("%%MatrixMarket matrix coordinate quad general\n", "unknown field"),
        ("%%MatrixMarket matrix coordinate real diagonal\n", "unknown symmetry"),
        (
            "%%MatrixMarket matrix array pattern general\n",
            "pattern field requires coordinate",
        ),
        (
            "%%MatrixMarket matrix coordinate real hermitian\n",
            "hermitian symmetry requires complex",
        ),
        (
            "%%MatrixMarket matrix coordinate pattern skew-symmetric\n",
            "cannot be skew-symmetric",
        ),
        (
            "%%MatrixMarket matrix coordinate real general\n",
            "end of file before the size line",
        ),
        (
            "%%MatrixMarket matrix coordinate real general\n2 2\n",
            "line 2: coordinate size line needs 3 fields",
        ),
        (
            "%%MatrixMarket matrix array real general\n2 2 4\n",
            "line 2: array size line needs 2 fields",
        ),
        (
            "%%MatrixMarket matrix coordinate real general\n2 x 1\n",
            "line 2: invalid index 'x'",
        ),
        (
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n",
            "line 3: invalid numeric value 'abc'",
        ),
        (
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n",
            r"line 3: index \(3, 1\) out of range",
        ),
        (
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1.0 9\n",
            "line 3: expected 3 fields, got 4",
        ),
        (
            "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1.0\n2 2 1.0\n",
            "line 4: more than 1 declared entries",
        ),
        (
            "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n",
            "expected 2 entries, found 1",
        ),
        (
            "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1.0\n",
            "line 3: entry above the diagonal in a symmetric matrix",
        ),
        (
            "%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n1 1 1.0\n",
            "line 3: diagonal entry in a skew-symmetric matrix",
        ),
        (
            "%%MatrixMarket matrix array real symmetric\n2 3\n1\n2\n3\n",
            "symmetric array matrices must be square",
        ),
        (
            "%%MatrixMarket matrix array real general\n1 1\n1\n2\n",
            "line 4: trailing data after all entries",
        ),
        (
            "%%MatrixMarket matrix array real general\n2 1\n1\n",
            "expected 2 values, found 1",
        ),
    ],
)
def test_mm_structural_errors(text, match):
    with pytest.raises(MatrixMarketError, match=match):
        read_text(text)


def test_mm_error_is_a_value_error():
    assert issubclass(MatrixMarketError, ValueError)


# -- matrix sources ------------------------------------------------------------


def test_matrix_source_names():
    assert MatrixSource(kind="random", n=8, seed=3).name == "random-n8-s3"
    assert MatrixSource(kind="iplusj", n=6).name == "iplusj-n6"
    assert MatrixSource(kind="file", path="/data/olm100.mtx").name == "olm100"


def test_matrix_source_load_dispatch(tmp_path):
    npt.assert_array_equal(
        MatrixSource(kind="random", n=5, seed=1).load(),
        gen_random_hessenberg(5, 1),
    )
    npt.assert_array_equal(MatrixSource(kind="iplusj", n=3).load(), gen_iplusj(3))
    path = tmp_path / "m.mtx"
    path.write_text("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2.0\n")
    npt.assert_array_equal(MatrixSource(kind="file", path=str(path)).load(), [[2.0]])
    with pytest.raises(ValueError, match="unknown matrix source"):
        MatrixSource(kind="nope").load()
    with pytest.raises(ValueError, match="needs a path"):
        MatrixSource(kind="file").load()


# -- benchmark rows -------------------------------------------------------------


def test_bench_row_line_golden():
    row = BenchRow(
        name="random-n10-t000",
        n=10,
        algo="rqr",
        time_s=0.5,
        bwe=1.25e-15,
        iters=26,
        iters_per_n=2.6,
        status="converged",
    )
    assert row.as_line() == "random-n10-t000,10,rqr,0.5,1.25e-15,26,2.6,converged"


def test_write_csv_golden():
    rows = [
        BenchRow("a-n2-t000", 2, "rqr", 1.0, 1e-15, 5, 2.5, "converged"),
        BenchRow("a-n2", 2, "rqr", 1.0, 1e-15, 5.0, 2.5, "mean"),
    ]
    buf = io.StringIO()
    write_csv(rows, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1] == "a-n2-t000,2,rqr,1.0,1e-15,5,2.5,converged"
    assert lines[2] == "a-n2,2,rqr,1.0,1e-15,5.0,2.5,mean"
    assert len(lines) == 3


def test_write_csv_to_path(tmp_path):
    dest = tmp_path / "out.csv"
    write_csv([BenchRow("x", 1, "qr", 0.0, 0.0, 0, 0.0, "converged")], dest)
    content = dest.read_text().splitlines()
    assert content[0] == CSV_HEADER
    assert content[1].startswith("x,1,qr,")
