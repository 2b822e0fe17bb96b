#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Kanal Modelleri
BEC, BSC ve BPSK modülasyonlu AWGN (BIAWGN) iletimi ve kanal LLR'leri.

LLR işareti: γ_i = log P(y_i | c_i = 0) - log P(y_i | c_i = 1); pozitif
değer 0 bitini destekler.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from exception_handler import ParameterException

logger = logging.getLogger(__name__)

# Kesin bilinen bitler ve mesaj kırpma için sonlu LLR büyüklüğü
CAP = 1000.0
# BEC gözleminde silinmiş sembol
ERASED = -1


class ChannelKind(Enum):
    """Kanal türleri"""
    BEC = "bec"
    BSC = "bsc"
    BIAWGN = "awgn"

    @classmethod
    def parse(cls, value: Union[str, "ChannelKind"]) -> "ChannelKind":
        if isinstance(value, ChannelKind):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ParameterException(f"Bilinmeyen kanal: {value}", "channel", value) from None


def awgn_sigma2(ebn0_db: float, rate: float) -> float:
    """σ² = 1 / (2 R 10^(Eb/N0 / 10))"""
    if not (0.0 < rate <= 1.0):
        raise ParameterException("Kod oranı (0, 1] aralığında olmalı", "rate", rate)
    return 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))


@dataclass(frozen=True)
class ChannelSpec:
    """Kanal türü ve parametresi (ε, p ya da dB cinsinden Eb/N0)"""
    kind: ChannelKind
    param: float
    rate: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'kind', ChannelKind.parse(self.kind))
        if not np.isfinite(self.param):
            raise ParameterException("Kanal parametresi sonlu olmalı", "param", self.param)
        if self.kind in (ChannelKind.BEC, ChannelKind.BSC) and not (0.0 <= self.param <= 1.0):
            raise ParameterException("ε / p [0, 1] aralığında olmalı", "param", self.param)
        if self.kind is ChannelKind.BIAWGN and not (0.0 < self.rate <= 1.0):
            raise ParameterException("Kod oranı (0, 1] aralığında olmalı", "rate", self.rate)

    @property
    def sigma2(self) -> Optional[float]:
        if self.kind is ChannelKind.BIAWGN:
            return awgn_sigma2(self.param, self.rate)
        return None


@dataclass(frozen=True, eq=False)
class ChannelObservation:
    """
    Alınan vektör

    symbols: BEC için {0, 1, ERASED} (int8), BSC için {0, 1} (uint8),
    BIAWGN için gerçel değerler (float64).
    """
    kind: ChannelKind
    symbols: np.ndarray
    param: float
    sigma2: Optional[float] = None

    @property
    def n(self) -> int:
        return int(self.symbols.size)

    @property
    def erased(self) -> np.ndarray:
        """Silinmiş pozisyon maskesi (BEC dışındaki kanallarda tümü False)"""
        if self.kind is ChannelKind.BEC:
            return self.symbols == ERASED
        return np.zeros(self.symbols.size, dtype=bool)

    def hard_decision(self) -> np.ndarray:
        """Gözlemin ima ettiği sert karar (silinmiş bitler 0)"""
        return hard_decision(llr(self))


def transmit(codeword: Sequence[int], spec: ChannelSpec,
             rng: np.random.Generator) -> ChannelObservation:
    """Kod kelimesini kanaldan geçir"""
    c = np.asarray(codeword, dtype=np.uint8)
    n = c.size

    if spec.kind is ChannelKind.BEC:
        symbols = c.astype(np.int8)
        symbols[rng.random(n) < spec.param] = ERASED
        return ChannelObservation(ChannelKind.BEC, symbols, spec.param)

    if spec.kind is ChannelKind.BSC:
        flips = (rng.random(n) < spec.param).astype(np.uint8)
        return ChannelObservation(ChannelKind.BSC, c ^ flips, spec.param)

    sigma2 = spec.sigma2
    y = (1.0 - 2.0 * c) + rng.normal(0.0, np.sqrt(sigma2), n)
    return ChannelObservation(ChannelKind.BIAWGN, y, spec.param, sigma2)


def bsc_llr_magnitude(p: float) -> float:
    """log((1-p)/p); p ∈ {0, 1} için ±CAP"""
    if p <= 0.0:
        return CAP
    if p >= 1.0:
        return -CAP
    return float(np.clip(np.log((1.0 - p) / p), -CAP, CAP))


def llr(observation: ChannelObservation) -> np.ndarray:
    """Kanal LLR vektörü γ"""
    kind = observation.kind
    if kind is ChannelKind.BEC:
        symbols = observation.symbols
        gamma = np.where(symbols == 0, CAP, -CAP)
        gamma[symbols == ERASED] = 0.0
        return gamma.astype(np.float64)

    if kind is ChannelKind.BSC:
        magnitude = bsc_llr_magnitude(observation.param)
        return np.where(observation.symbols == 0, magnitude, -magnitude).astype(np.float64)

    return np.clip(2.0 * observation.symbols / observation.sigma2, -CAP, CAP)


def hard_decision(gamma: Sequence[float]) -> np.ndarray:
    """γ < 0 ise 1, aksi halde 0 (eşitlikte 0)"""
    return (np.asarray(gamma) < 0).astype(np.uint8)


def frame_rng(master_seed: int, frame_index: int) -> np.random.Generator:
    """
    Çerçeveye özel sayaç tabanlı rastgele sayı üreteci

    Aynı (master_seed, frame_index) her zaman aynı akışı verir; işçi sayısı
    ve zamanlamadan bağımsızdır.
    """
    seed_seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(frame_index),))
    return np.random.Generator(np.random.Philox(seed_seq))
