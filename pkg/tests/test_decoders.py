#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Kod çözücü testleri"""

from itertools import combinations

import numpy as np
import pytest

from channels import CAP, ERASED, ChannelKind, ChannelObservation, ChannelSpec, llr, transmit
from decoders import (
    DecodeVerdict, DecoderKind, admm_lp_decode, bit_flip_decode, bp_decode, codebook,
    ml_bec_decode, ml_bruteforce, most_reliable_basis, mrb_decode, peel,
    project_parity_polytope, project_parity_polytope_batch,
)
from exception_handler import GuardExceededException, ParameterException
from rm_core import PcMatrix, build_code, encode, enumerate_mwpc, is_codeword


def _random_codeword(code, rng):
    return encode(code, rng.integers(0, 2, code.k))


def _bec_observation(codeword, erased):
    symbols = np.asarray(codeword).astype(np.int8)
    symbols[np.asarray(erased, dtype=bool)] = ERASED
    return ChannelObservation(ChannelKind.BEC, symbols, 0.5)


def test_decoder_kind_flags():
    assert DecoderKind("ml-bec").bec_only
    assert DecoderKind.PD.uses_matrix and not DecoderKind.MRB.uses_matrix


# ----------------------------------------------------------------------
# Peeling
# ----------------------------------------------------------------------
def test_peel_without_erasures(rm25, h_full_25, rng):
    c = _random_codeword(rm25, rng)
    result = peel(h_full_25, _bec_observation(c, np.zeros(32)), rm25)
    assert result.verdict is DecodeVerdict.SUCCESS
    assert result.iterations_used == 0
    assert np.array_equal(result.word, c)


def test_peel_all_erased_is_ambiguous(rm25, h_full_25):
    result = peel(h_full_25, _bec_observation(np.zeros(32), np.ones(32)), rm25)
    assert result.verdict is DecodeVerdict.AMBIGUOUS
    assert result.details['remaining_erasures'] == 32


def test_peel_recovers_few_erasures(rm25, h_full_25, rng):
    c = _random_codeword(rm25, rng)
    erased = np.zeros(32, dtype=bool)
    erased[[0, 5, 17, 30]] = True
    result = peel(h_full_25, _bec_observation(c, erased), rm25)
    assert result.success and result.valid
    assert np.array_equal(result.word, c)


def test_peel_rejects_other_channels(h_full_25):
    observation = ChannelObservation(ChannelKind.BSC, np.zeros(32, dtype=np.uint8), 0.1)
    with pytest.raises(ParameterException):
        peel(h_full_25, observation)


def test_peel_success_implies_ml_success(rm25, h_full_25):
    rng = np.random.default_rng(99)
    spec = ChannelSpec(ChannelKind.BEC, 0.4)
    for _ in range(10_000):
        c = _random_codeword(rm25, rng)
        observation = transmit(c, spec, rng)
        peeled = peel(h_full_25, observation, rm25)
        if peeled.success:
            ml = ml_bec_decode(rm25, observation)
            assert ml.success
            assert np.array_equal(peeled.word, c)
            assert np.array_equal(ml.word, c)


# ----------------------------------------------------------------------
# ML referansları
# ----------------------------------------------------------------------
def test_ml_bec_matches_bruteforce_ties(rm14):
    zero = np.zeros(16, dtype=np.uint8)
    for weight in range(4):
        for positions in combinations(range(16), weight):
            erased = np.zeros(16, dtype=bool)
            erased[list(positions)] = True
            observation = _bec_observation(zero, erased)
            ml = ml_bec_decode(rm14, observation)
            brute = ml_bruteforce(rm14, llr(observation))
            assert ml.success == (brute.details['ties'] == 1)
            if ml.success:
                assert np.array_equal(ml.word, brute.word)


def test_ml_bec_ambiguous_reports_free_variables(rm13):
    erased = np.zeros(8, dtype=bool)
    erased[[0, 1, 2, 3]] = True
    result = ml_bec_decode(rm13, _bec_observation(np.zeros(8), erased))
    assert result.verdict is DecodeVerdict.AMBIGUOUS
    assert result.details['free_variables'] >= 1


def test_ml_bruteforce_noiseless(rm25, rng):
    c = _random_codeword(rm25, rng)
    result = ml_bruteforce(rm25, 5.0 * (1.0 - 2.0 * c))
    assert result.success
    assert np.array_equal(result.word, c)


def test_codebook_size_and_guard(rm13):
    words = codebook(rm13)
    assert words.shape == (16, 8)
    assert len({tuple(w) for w in words}) == 16
    with pytest.raises(GuardExceededException):
        codebook(build_code(2, 7))


# ----------------------------------------------------------------------
# BP
# ----------------------------------------------------------------------
def test_bp_without_iterations_returns_hard_decision(rm25, h_full_25):
    gamma = np.linspace(-2, 2, 32)
    result = bp_decode(h_full_25, gamma, 0.2, 0, rm25)
    assert result.iterations_used == 0
    assert np.array_equal(result.word, (gamma < 0).astype(np.uint8))


def test_bp_with_empty_matrix(rm25):
    empty = PcMatrix.from_supports([], 32)
    gamma = -np.ones(32)
    result = bp_decode(empty, gamma, 0.5, 10, rm25)
    assert np.array_equal(result.word, np.ones(32, dtype=np.uint8))
    assert result.valid


def test_bp_corrects_single_weak_error(rm25, h_full_25):
    gamma = np.full(32, 4.0)
    gamma[3] = -1.0
    result = bp_decode(h_full_25, gamma, 0.2, 5, rm25)
    assert result.success
    assert not result.word.any()
    assert result.iterations_used >= 1


def test_bp_parameter_validation(h_full_25):
    with pytest.raises(ParameterException):
        bp_decode(h_full_25, np.zeros(32), 0.0, 5)
    with pytest.raises(ParameterException):
        bp_decode(h_full_25, np.zeros(32), 0.5, -1)
    with pytest.raises(ParameterException):
        bp_decode(h_full_25, np.zeros(31), 0.5, 5)


# ----------------------------------------------------------------------
# Parite politopu izdüşümü
# ----------------------------------------------------------------------
def _even_vertices(d):
    return [np.array(bits, dtype=np.float64)
            for bits in np.ndindex(*(2,) * d) if sum(bits) % 2 == 0]


def _odd_subsets(d):
    return [set(s) for size in range(1, d + 1, 2) for s in combinations(range(d), size)]


def test_projection_known_points():
    assert np.allclose(project_parity_polytope([1.0, 0.0]), [0.5, 0.5])
    assert np.allclose(project_parity_polytope([0.45, 0.0, 0.0]), [0.3, 0.15, 0.15])
    assert np.allclose(project_parity_polytope(np.full(6, 0.5)), 0.5)
    assert np.allclose(project_parity_polytope([1.0, 1.0, 0.0, 0.0]), [1.0, 1.0, 0.0, 0.0])
    with pytest.raises(ParameterException):
        project_parity_polytope([0.3])


@pytest.mark.parametrize("d", [4, 6, 8])
def test_projection_oracle(d):
    rng = np.random.default_rng(d)
    vertices = np.array(_even_vertices(d))
    subsets = _odd_subsets(d)
    points = rng.uniform(-0.5, 1.5, (300, d))
    projected = project_parity_polytope_batch(points)

    for v, p in zip(points, projected):
        assert np.all(p >= -1e-9) and np.all(p <= 1 + 1e-9)
        for subset in subsets:
            lhs = sum(p[i] if i in subset else -p[i] for i in range(d))
            assert lhs <= len(subset) - 1 + 1e-9
        # variational inequality over the polytope's vertices
        assert np.all((vertices - p) @ (v - p) <= 1e-9)


def test_projection_idempotent_and_nonexpansive():
    rng = np.random.default_rng(8)
    a = rng.uniform(-1, 2, (200, 7))
    b = rng.uniform(-1, 2, (200, 7))
    pa = project_parity_polytope_batch(a)
    pb = project_parity_polytope_batch(b)
    assert np.allclose(project_parity_polytope_batch(pa), pa, atol=1e-9)
    assert np.all(np.linalg.norm(pa - pb, axis=1) <= np.linalg.norm(a - b, axis=1) + 1e-9)


# ----------------------------------------------------------------------
# ADMM-LP
# ----------------------------------------------------------------------
def test_admm_all_zero_strong_llr(rm25, h_full_25):
    result = admm_lp_decode(h_full_25, np.full(32, 10.0), mu=3.0, tmax=100, code=rm25)
    assert result.success
    assert not result.word.any()
    assert result.iterations_used <= 100


def test_admm_recovers_codeword_under_strong_llr(rm25, h_full_25, rng):
    c = _random_codeword(rm25, rng)
    result = admm_lp_decode(h_full_25, 6.0 * (1.0 - 2.0 * c), mu=3.0, tmax=200, code=rm25)
    assert result.success
    assert np.array_equal(result.word, c)
    state = result.details['state']
    assert state.replica(0).size == 8 and state.dual(0).size == 8


def test_admm_reports_convergence_without_codeword_stop(rm13):
    h_full = enumerate_mwpc(rm13)
    # Güçlü pozitif LLR: ilk x güncellemesi sıfıra kırpılır, z = Π(0) = 0
    result = admm_lp_decode(h_full, np.full(8, 3.0), mu=2.0, tmax=500, tol=1e-5, code=rm13,
                            stop_on_codeword=False)
    assert result.details["converged"]
    assert result.details["residual"] < 1e-5
    assert result.iterations_used == 1
    assert result.valid
    assert not result.word.any()


def test_admm_parameter_validation(h_full_25):
    with pytest.raises(ParameterException):
        admm_lp_decode(h_full_25, np.zeros(32), mu=0.0, tmax=10)
    with pytest.raises(ParameterException):
        admm_lp_decode(h_full_25, np.zeros(32), mu=1.0, tmax=0)


# ----------------------------------------------------------------------
# Bit çevirme
# ----------------------------------------------------------------------
def test_bit_flip_codeword_needs_no_flips(rm25, h_full_25, rng):
    c = _random_codeword(rm25, rng)
    result = bit_flip_decode(h_full_25, c, code=rm25)
    assert result.success
    assert result.iterations_used == 0
    assert result.details['unsatisfied_trace'] == [0]


def test_bit_flip_corrects_single_error(rm25, h_full_25, rng):
    c = _random_codeword(rm25, rng)
    y = c.copy()
    y[11] ^= 1
    result = bit_flip_decode(h_full_25, y, code=rm25)
    assert result.success
    assert np.array_equal(result.word, c)
    assert result.iterations_used == 1


def test_bit_flip_trace_strictly_decreases(rm25, h_full_25):
    rng = np.random.default_rng(5)
    bound = 32 * int(h_full_25.row_weights.max())
    for _ in range(200):
        y = (rng.random(32) < 0.1).astype(np.uint8)
        result = bit_flip_decode(h_full_25, y, max_flips=bound, code=rm25)
        trace = result.details['unsatisfied_trace']
        assert all(a > b for a, b in zip(trace, trace[1:]))
        assert result.iterations_used <= bound


# ----------------------------------------------------------------------
# MRB
# ----------------------------------------------------------------------
def test_most_reliable_basis_is_systematic(rm25, rng):
    gamma = rng.normal(1.0, 1.0, 32)
    basis, gen_sys = most_reliable_basis(rm25, gamma)
    assert basis.size == rm25.k
    assert np.array_equal(gen_sys[:, basis], np.eye(rm25.k, dtype=np.uint8))
    for row in gen_sys:
        assert is_codeword(rm25, row)


def test_mrb_order_zero_noiseless(rm25, rng):
    c = _random_codeword(rm25, rng)
    result = mrb_decode(rm25, 3.0 * (1.0 - 2.0 * c), 0)
    assert result.success
    assert np.array_equal(result.word, c)
    assert result.details['candidates'] == 1


def _discrepancy(word, gamma):
    hard = (gamma < 0).astype(np.uint8)
    return float(np.abs(gamma)[word != hard].sum())


def test_mrb_never_worse_than_reachable_transmitted_word(rm25):
    rng = np.random.default_rng(17)
    spec = ChannelSpec(ChannelKind.BIAWGN, 2.0, rate=rm25.rate)
    nu = 2
    for _ in range(300):
        c = _random_codeword(rm25, rng)
        gamma = llr(transmit(c, spec, rng))
        result = mrb_decode(rm25, gamma, nu)
        assert is_codeword(rm25, result.word)
        basis, _ = most_reliable_basis(rm25, gamma)
        hard = (gamma < 0).astype(np.uint8)
        if np.count_nonzero(hard[basis] != c[basis]) <= nu:
            assert result.details['score'] <= _discrepancy(c, gamma) + 1e-9


def test_mrb_full_order_matches_bruteforce(rm13):
    rng = np.random.default_rng(23)
    for _ in range(1000):
        gamma = rng.normal(0.5, 1.5, 8)
        mrb = mrb_decode(rm13, gamma, rm13.k)
        ml = ml_bruteforce(rm13, gamma)
        assert mrb.details['score'] == pytest.approx(_discrepancy(ml.word, gamma), abs=1e-9)


def test_llr_cap_is_respected(rm13):
    result = ml_bruteforce(rm13, np.full(8, 10 * CAP))
    assert result.details['score'] == 0.0
