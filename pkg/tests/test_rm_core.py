#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""rm_core testleri: kod parametreleri, matrisler ve MWPC kümesi"""

import numpy as np
import pytest

import gf2_linalg
from exception_handler import GuardExceededException, ParameterException
from rm_core import (
    PcMatrix, build_code, code_params, count_mwpc, encode, enumerate_mwpc,
    is_codeword, monomials, rm_generator, syndrome,
)


@pytest.mark.parametrize("r, m, expected", [
    (3, 7, (128, 64, 16, 16)),
    (2, 7, (128, 29, 32, 8)),
    (0, 0, (1, 1, 1, 2)),
    (2, 5, (32, 16, 8, 8)),
])
def test_code_params(r, m, expected):
    assert code_params(r, m) == expected


@pytest.mark.parametrize("r, m", [(3, 2), (-1, 3), (0, 21), (1.5, 3)])
def test_code_params_rejects_invalid(r, m):
    with pytest.raises(ParameterException):
        code_params(r, m)


@pytest.mark.parametrize("r, m, expected", [
    (2, 5, 620), (2, 7, 188976), (3, 7, 94488), (4, 7, 10668), (0, 1, 1), (0, 2, 3),
])
def test_count_mwpc(r, m, expected):
    assert count_mwpc(r, m) == expected


def test_count_mwpc_undefined_for_full_space():
    with pytest.raises(ParameterException):
        count_mwpc(3, 3)


def test_monomial_order():
    assert monomials(2, 3) == [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]


@pytest.mark.parametrize("r, m", [(1, 4), (2, 5), (3, 7), (0, 3), (4, 4)])
def test_generator_and_reference_matrix(r, m):
    code = build_code(r, m)
    assert code.gen.shape == (code.k, code.n)
    assert code.h_ref.shape == (code.n - code.k, code.n)
    assert gf2_linalg.matrix_rank(code.gen) == code.k
    assert gf2_linalg.matrix_rank(code.h_ref) == code.n - code.k
    products = code.gen.astype(np.int64) @ code.h_ref.T.astype(np.int64)
    assert not (products & 1).any()


def test_reference_rows_belong_to_dual_code():
    code = build_code(1, 4)
    dual = rm_generator(2, 4)
    base_rank = gf2_linalg.matrix_rank(dual)
    for row in code.h_ref:
        assert gf2_linalg.matrix_rank(np.vstack([dual, row])) == base_rank


def test_code_matrices_are_read_only(rm25):
    with pytest.raises(ValueError):
        rm25.gen[0, 0] = 1


def test_build_code_is_cached_and_hashable():
    assert build_code(2, 5) is build_code(2, 5)
    assert len({build_code(1, 3), build_code(1, 3), build_code(2, 5)}) == 2
    assert build_code(1, 3).name == "RM(1,3)"


def test_rm12_weight_distribution():
    code = build_code(1, 2)
    weights = set()
    for value in range(2 ** code.k):
        u = gf2_linalg.unpack_bits(value, code.k)
        weights.add(int(encode(code, u).sum()))
    assert weights == {0, 2, 4}


def test_encode_first_variable_monomial():
    code = build_code(1, 2)
    # monomial x_0: points with bit 0 set
    assert encode(code, [0, 1, 0]).tolist() == [0, 1, 0, 1]


def test_encode_is_linear(rm25, rng):
    for _ in range(20):
        u1 = rng.integers(0, 2, rm25.k)
        u2 = rng.integers(0, 2, rm25.k)
        assert np.array_equal(encode(rm25, u1 ^ u2), encode(rm25, u1) ^ encode(rm25, u2))


def test_codeword_membership(rm25):
    assert is_codeword(rm25, np.zeros(32, dtype=np.uint8))
    for row in rm25.gen:
        assert is_codeword(rm25, row)
    unit = np.zeros(32, dtype=np.uint8)
    unit[5] = 1
    assert not is_codeword(rm25, unit)
    assert syndrome(rm25, unit).any()


def test_encode_rejects_wrong_length(rm25):
    with pytest.raises(ParameterException):
        encode(rm25, [1, 0, 1])
    with pytest.raises(ParameterException):
        syndrome(rm25, [0] * 31)


def test_rm25_is_self_dual(rm25):
    base_rank = gf2_linalg.matrix_rank(rm25.gen)
    for row in rm25.h_ref:
        assert gf2_linalg.matrix_rank(np.vstack([rm25.gen, row])) == base_rank


# ----------------------------------------------------------------------
# MWPC kümesi
# ----------------------------------------------------------------------
def test_enumerate_rm25_matches_brute_force(rm25, h_full_25):
    assert h_full_25.num_rows == 620
    assert h_full_25.uniform_weight == 8
    assert h_full_25.is_orthogonal_to(rm25)

    info = gf2_linalg.unpack_rows(list(range(2 ** 16)), 16).astype(np.int64)
    dual_words = (info @ rm25.h_ref.astype(np.int64)) & 1
    minimum = dual_words[dual_words.sum(axis=1) == 8]
    expected = {tuple(np.flatnonzero(word)) for word in minimum}
    assert set(h_full_25.rows) == expected


def test_enumerate_rm01_single_row():
    h_full = enumerate_mwpc(build_code(0, 1))
    assert h_full.rows == ((0, 1),)


@pytest.mark.parametrize("r, m", [
    (r, m) for m in range(1, 10) for r in range(m) if count_mwpc(r, m) <= 200_000
])
def test_enumerate_count_and_structure(r, m):
    code = build_code(r, m)
    h_full = enumerate_mwpc(code)
    assert h_full.num_rows == count_mwpc(r, m)
    assert h_full.uniform_weight == 2 ** (r + 1)
    assert len(set(h_full.rows)) == h_full.num_rows
    if code.n <= 64:
        assert h_full.is_orthogonal_to(code)


def test_enumerate_guard():
    with pytest.raises(GuardExceededException):
        enumerate_mwpc(build_code(3, 9))


# ----------------------------------------------------------------------
# PcMatrix
# ----------------------------------------------------------------------
def test_pc_matrix_rejects_duplicate_and_invalid_rows():
    with pytest.raises(ParameterException):
        PcMatrix.from_supports([(0, 1), (1, 0)], 4)
    with pytest.raises(ParameterException):
        PcMatrix.from_supports([(0, 4)], 4)
    with pytest.raises(ParameterException):
        PcMatrix.from_supports([()], 4)
    with pytest.raises(ParameterException):
        PcMatrix.from_uniform_array(np.array([[0, 1], [1, 0]]), 4)


def test_pc_matrix_adjacency_consistency(h_full_25):
    rows = h_full_25.rows
    for v, checks in enumerate(h_full_25.var_adjacency):
        assert len(checks) == h_full_25.var_degrees[v]
        for c in checks:
            assert v in rows[c]
    # every position lies in F * w / n checks
    assert set(h_full_25.var_degrees.tolist()) == {620 * 8 // 32}


def test_pc_matrix_dense_and_select_rows(h_full_25):
    dense = h_full_25.to_dense()
    assert dense.shape == (620, 32)
    assert PcMatrix.from_dense(dense) == h_full_25

    subset = h_full_25.select_rows([3, 10, 42])
    assert subset.rows == (h_full_25.rows[3], h_full_25.rows[10], h_full_25.rows[42])
    with pytest.raises(ParameterException):
        h_full_25.select_rows([1, 1])


def test_pc_matrix_syndrome(rm25, h_full_25, rng):
    c = encode(rm25, rng.integers(0, 2, rm25.k))
    assert not h_full_25.syndrome(c).any()
    c[0] ^= 1
    assert h_full_25.syndrome(c).sum() == h_full_25.var_degrees[0]


def test_alist_round_trip(tmp_path):
    matrix = PcMatrix.from_supports([(0, 1, 2), (1, 3), (2, 3, 4, 5)], 6)
    text = matrix.to_alist()
    assert text.splitlines()[0] == "6 3"
    assert PcMatrix.from_alist(text) == matrix

    path = tmp_path / "h.alist"
    matrix.write_alist(path)
    assert PcMatrix.from_alist(path) == matrix
    assert PcMatrix.from_alist(str(path)) == matrix


def test_alist_rejects_truncated_text():
    with pytest.raises(ParameterException):
        PcMatrix.from_alist("4 2\n2 3\n1 1 2 2\n")
