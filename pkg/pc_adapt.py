#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Gözleme Uyarlanmış Parite Kontrol Matrisi
Verilen bit pozisyonlarından geçen MWPC üretimi, güvenilirlik bölümlemesi
(iyi / kötü bitler) ve s satırlı uyarlanmış H_sub kurulumu.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

import gf2_linalg
from exception_handler import ParameterException, SaturationException, TailoringFallbackException
from rm_core import BinaryWord, PcMatrix, RmCode, count_mwpc

logger = logging.getLogger(__name__)

# Kabul edilen satır başına deneme sınırı (toplam sınır = çarpan * s)
DEFAULT_SATURATION_FACTOR = 50


def mwpc_support(r: int, m: int, positions: Sequence[int]) -> Tuple[int, ...]:
    """
    Verilen r+2 noktayı içeren (r+1) boyutlu afin alt uzayın sıralı desteği

    Pozisyon i, F_2^m'de i'nin LSB-önce ikili açılımı olan noktadır; bu
    yüzden noktalar doğrudan tam sayı bitset olarak işlenir.
    """
    n = 2 ** m
    if not (0 <= r < m):
        raise ParameterException("0 <= r <= m-1 olmalı", "r", r)
    points = [int(p) for p in positions]
    if len(points) != r + 2:
        raise ParameterException(f"Tam olarak {r + 2} pozisyon gerekli", "positions", positions)
    if len(set(points)) != len(points):
        raise ParameterException("Pozisyonlar birbirinden farklı olmalı", "positions", positions)
    if any(p < 0 or p >= n for p in points):
        raise ParameterException(f"Pozisyonlar 0..{n - 1} aralığında olmalı", "positions", positions)

    anchor = points[-1]
    basis, pivots = gf2_linalg.rref([p ^ anchor for p in points[:-1]], m)

    # Rank tamamlama: pivot olmayan ilk koordinatın birim vektörünü ekle
    pivot_set = set(pivots)
    while len(basis) < r + 1:
        free_col = next(c for c in range(m) if c not in pivot_set)
        basis.append(1 << free_col)
        pivot_set.add(free_col)

    return tuple(sorted(z ^ anchor for z in gf2_linalg.span(basis)))


def mwpc_from_positions(r: int, m: int, positions: Sequence[int]) -> BinaryWord:
    """Verilen pozisyonlarda 1 olan minimum ağırlıklı parite kontrolü (0/1 vektör)"""
    word = np.zeros(2 ** m, dtype=np.uint8)
    word[list(mwpc_support(r, m, positions))] = 1
    return word


@dataclass(frozen=True, eq=False)
class ReliabilityPartition:
    """İyi (güvenilir) ve kötü bit pozisyonları; her iki dizi de artan sıralı"""
    good: np.ndarray
    bad: np.ndarray
    f: float

    @property
    def n(self) -> int:
        return int(self.good.size + self.bad.size)


def classify_bits(llr: Sequence[float], f: float) -> ReliabilityPartition:
    """
    |γ| değerine göre azalan sıralama; ilk round(f·n) pozisyon iyi kümeye girer.
    Eşit büyüklükte küçük indeks önce gelir (stabil sıralama).
    """
    gamma = np.asarray(llr, dtype=np.float64)
    if not (0.0 <= f <= 1.0):
        raise ParameterException("f 0 ile 1 arasında olmalı", "f", f)
    n = gamma.size
    good_count = int(np.floor(f * n + 0.5))
    order = np.argsort(-np.abs(gamma), kind='stable')
    return ReliabilityPartition(good=np.sort(order[:good_count]),
                                bad=np.sort(order[good_count:]),
                                f=float(f))


def partition_from_erasures(erased: Sequence[bool]) -> ReliabilityPartition:
    """BEC: silinmemiş bitler iyi, silinmiş bitler kötü kümeye girer"""
    erased = np.asarray(erased, dtype=bool)
    good = np.flatnonzero(~erased)
    f = good.size / erased.size if erased.size else 0.0
    return ReliabilityPartition(good=good, bad=np.flatnonzero(erased), f=f)


def _stack_supports(supports: List[Tuple[int, ...]], weight: int, n: int) -> PcMatrix:
    array = np.array(supports, dtype=np.int64).reshape(len(supports), weight)
    return PcMatrix.from_uniform_array(array, n, assume_distinct=True)


def build_tailored_matrix(code: RmCode, partition: ReliabilityPartition, s: int,
                          rng: np.random.Generator,
                          max_attempts: int = DEFAULT_SATURATION_FACTOR) -> PcMatrix:
    """
    Gözleme uyarlanmış H_sub

    Kötü kümedeki her b için iyi kümeden r+1 farklı pozisyon çekilir ve
    {b, g_1..g_{r+1}} üzerinden geçen MWPC, daha önce eklenmemişse matrise
    eklenir. Satır sayısı s'ye ulaştığında (tarama ortasında da olsa) durur.

    Raises:
        TailoringFallbackException: |G| < r+1 veya B boş
        SaturationException: max_attempts * s denemede s satıra ulaşılamadı
    """
    r, m, n = code.r, code.m, code.n
    good, bad = partition.good, partition.bad
    if bad.size == 0 or good.size < r + 1:
        raise TailoringFallbackException(
            f"Uyarlanmış matris kurulamaz: |G|={good.size}, |B|={bad.size}, r+1={r + 1}",
            good_count=int(good.size), bad_count=int(bad.size))
    if r >= m:
        raise ParameterException("r = m için parite kontrolü yok", "r", r)
    if not (1 <= s <= count_mwpc(r, m)):
        raise ParameterException("1 <= s <= F(r,m) olmalı", "s", s)

    weight = 2 ** (r + 1)
    seen = set()
    supports: List[Tuple[int, ...]] = []
    attempts = 0
    attempt_cap = max_attempts * s

    while True:
        # Her kötü bit için r+1 farklı düzgün dağılımlı iyi pozisyon
        draws = rng.random((bad.size, good.size)).argpartition(r, axis=1)[:, :r + 1]
        for b, picks in zip(bad, draws):
            if attempts >= attempt_cap:
                logger.warning(f"Tailored matrix saturated at {len(supports)}/{s} rows "
                               f"after {attempts} attempts")
                raise SaturationException(
                    f"{attempts} denemede yalnızca {len(supports)}/{s} satır üretildi",
                    partial_matrix=_stack_supports(supports, weight, n), attempts=attempts)
            attempts += 1

            support = mwpc_support(r, m, [int(b), *good[picks].tolist()])
            if support in seen:
                continue
            seen.add(support)
            supports.append(support)
            if len(supports) == s:
                logger.debug(f"Tailored matrix: {s} rows in {attempts} attempts")
                return _stack_supports(supports, weight, n)


def random_subset_matrix(h_full: PcMatrix, s: int, rng: np.random.Generator) -> PcMatrix:
    """H_full'dan düzgün dağılımlı s farklı satır (artan indeks sırasıyla)"""
    if not (1 <= s <= h_full.num_rows):
        raise ParameterException(f"1 <= s <= {h_full.num_rows} olmalı", "s", s)
    indices = np.sort(rng.choice(h_full.num_rows, size=s, replace=False))
    return h_full.select_rows(indices)


@dataclass(frozen=True)
class TailoredMatrixConfig:
    """Uyarlanmış matris parametreleri"""
    s: int
    max_attempts: int = DEFAULT_SATURATION_FACTOR

    def __post_init__(self):
        if self.s < 1:
            raise ParameterException("s pozitif olmalı", "s", self.s)
        if self.max_attempts < 1:
            raise ParameterException("max_attempts pozitif olmalı", "max_attempts", self.max_attempts)

    def check_against(self, code: RmCode):
        """s <= F(r,m) kontrolü"""
        total = count_mwpc(code.r, code.m)
        if self.s > total:
            raise ParameterException(f"s = {self.s} > F({code.r},{code.m}) = {total}", "s", self.s)

    def build(self, code: RmCode, partition: ReliabilityPartition,
              rng: np.random.Generator) -> PcMatrix:
        return build_tailored_matrix(code, partition, self.s, rng, self.max_attempts)


def rows_from_percent(code: RmCode, rows_percent: float) -> int:
    """F(r,m)'nin yüzdesi olarak satır sayısı (en az 1)"""
    if not (0 < rows_percent <= 100):
        raise ParameterException("rows_percent 0 ile 100 arasında olmalı", "rows_percent", rows_percent)
    total = count_mwpc(code.r, code.m)
    return max(1, min(total, int(np.floor(rows_percent / 100 * total + 0.5))))
