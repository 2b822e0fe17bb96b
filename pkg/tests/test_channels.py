#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Kanal modeli testleri"""

import numpy as np
import pytest

from channels import (
    CAP, ERASED, ChannelKind, ChannelSpec, awgn_sigma2, bsc_llr_magnitude, frame_rng,
    hard_decision, llr, transmit,
)
from exception_handler import ParameterException

N = 100_000


def test_channel_kind_parse():
    assert ChannelKind.parse("AWGN") is ChannelKind.BIAWGN
    assert ChannelKind.parse(ChannelKind.BEC) is ChannelKind.BEC
    with pytest.raises(ParameterException):
        ChannelKind.parse("rayleigh")


def test_sigma2_at_three_db_half_rate():
    assert awgn_sigma2(3.01, 0.5) == pytest.approx(0.5, rel=1e-3)
    assert ChannelSpec("awgn", 3.01, rate=0.5).sigma2 == pytest.approx(0.5, rel=1e-3)
    assert ChannelSpec("bec", 0.3).sigma2 is None


@pytest.mark.parametrize("kind, param", [("bec", 1.2), ("bsc", -0.1), ("awgn", float("nan"))])
def test_spec_rejects_invalid_params(kind, param):
    with pytest.raises(ParameterException):
        ChannelSpec(kind, param)


def test_noiseless_channels_are_identity(rng):
    c = rng.integers(0, 2, 64).astype(np.uint8)
    bec = transmit(c, ChannelSpec("bec", 0.0), rng)
    assert not bec.erased.any()
    assert np.array_equal(bec.symbols, c)
    bsc = transmit(c, ChannelSpec("bsc", 0.0), rng)
    assert np.array_equal(bsc.symbols, c)


def test_bec_llr_values():
    c = np.array([0, 1, 0, 1], dtype=np.uint8)
    observation = transmit(c, ChannelSpec("bec", 0.0), np.random.default_rng(0))
    observation.symbols[2] = ERASED
    assert llr(observation).tolist() == [CAP, -CAP, 0.0, -CAP]
    assert observation.hard_decision().tolist() == [0, 1, 0, 1]


def test_bsc_llr_magnitude():
    assert bsc_llr_magnitude(0.04) == pytest.approx(3.178, abs=1e-3)
    assert bsc_llr_magnitude(0.0) == CAP
    assert bsc_llr_magnitude(1.0) == -CAP
    observation = transmit(np.zeros(8, dtype=np.uint8), ChannelSpec("bsc", 0.04), np.random.default_rng(1))
    gamma = llr(observation)
    assert np.allclose(np.abs(gamma), np.log(24.0))
    assert np.array_equal(hard_decision(gamma), observation.symbols)


def test_hard_decision_ties_go_to_zero():
    assert hard_decision([0.0, -0.0, -1e-9, 2.0]).tolist() == [0, 0, 1, 0]


@pytest.mark.parametrize("kind, param", [("bec", 0.3), ("bsc", 0.07)])
def test_empirical_flip_and_erasure_rates(kind, param, rng):
    observation = transmit(np.zeros(N, dtype=np.uint8), ChannelSpec(kind, param), rng)
    if kind == "bec":
        rate = observation.erased.mean()
    else:
        rate = observation.symbols.mean()
    assert abs(rate - param) <= 3 * np.sqrt(param * (1 - param) / N)


def test_awgn_llr_mean_on_all_zero(rng):
    ebn0_db, rate = 2.0, 0.5
    spec = ChannelSpec("awgn", ebn0_db, rate=rate)
    gamma = llr(transmit(np.zeros(N, dtype=np.uint8), spec, rng))
    expected = 4 * rate * 10 ** (ebn0_db / 10)
    assert abs(gamma.mean() - expected) <= 4 * np.sqrt(4 / spec.sigma2 / N)


def test_awgn_llr_is_clipped():
    observation = transmit(np.zeros(4, dtype=np.uint8), ChannelSpec("awgn", 80.0), np.random.default_rng(2))
    assert np.all(llr(observation) == CAP)


def test_frame_rng_is_reproducible():
    a = frame_rng(7, 3).random(5)
    b = frame_rng(7, 3).random(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, frame_rng(7, 4).random(5))
    assert not np.array_equal(a, frame_rng(8, 3).random(5))
