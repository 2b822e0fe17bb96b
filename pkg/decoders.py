#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Kod Çözücüler
Herhangi bir PcMatrix üzerinde çalışan kod çözücü ailesi:
peeling (BEC), ağırlıklı BP, ADMM-LP, bit çevirme, MRB (sıralı istatistik)
ve küçük kodlar için kesin ML referansları.

Tüm kod çözücüler kenar dizileri (PcMatrix.edge_vars / edge_checks) üzerinde
numpy ile vektörleştirilmiştir; çağrı başına geçici tamponlar kullanılır.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Optional, Sequence

import numpy as np
from cachetools import LRUCache, cached

import gf2_linalg
from channels import CAP, ChannelKind, ChannelObservation, hard_decision
from exception_handler import GuardExceededException, ParameterException
from rm_core import BinaryWord, PcMatrix, RmCode, is_codeword

logger = logging.getLogger(__name__)

# |tanh(x/2)| üst sınırı
TANH_CLAMP = 1.0 - 1e-12
# ml_bruteforce için en büyük boyut
MAX_BRUTEFORCE_K = 20
# Kod kitabı için en fazla eleman (2^k * n)
MAX_CODEBOOK_ENTRIES = 1 << 27
# MRB desen tablosu parça boyutu
MRB_CHUNK = 8192


class DecodeVerdict(Enum):
    """Kod çözme sonucu"""
    SUCCESS = "success"
    FAILURE = "failure"
    AMBIGUOUS = "ambiguous"


class DecoderKind(Enum):
    """Desteklenen kod çözücüler (CLI adlarıyla)"""
    PD = "pd"
    BP = "bp"
    LP = "lp"
    BF = "bf"
    MRB = "mrb"
    ML_BEC = "ml-bec"
    ML_BF = "ml-bf"

    @property
    def uses_matrix(self) -> bool:
        """Kod çözücü bir parite kontrol matrisi kullanıyor mu"""
        return self in (DecoderKind.PD, DecoderKind.BP, DecoderKind.LP, DecoderKind.BF)

    @property
    def bec_only(self) -> bool:
        return self in (DecoderKind.PD, DecoderKind.ML_BEC)


@dataclass
class DecodeResult:
    """Kod çözücü çıktısı; SUCCESS her zaman valid=True demektir"""
    verdict: DecodeVerdict
    word: BinaryWord
    iterations_used: int
    valid: bool
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.verdict is DecodeVerdict.SUCCESS


def _check_validity(word: np.ndarray, code: Optional[RmCode], H: Optional[PcMatrix] = None) -> bool:
    """h_ref ile geçerlilik; kod verilmemişse H sendromu"""
    if code is not None:
        return is_codeword(code, word)
    if H is not None:
        return not H.syndrome(word).any()
    return False


def _finish(word: np.ndarray, iterations: int, code: Optional[RmCode],
            H: Optional[PcMatrix] = None, **details) -> DecodeResult:
    valid = _check_validity(word, code, H)
    verdict = DecodeVerdict.SUCCESS if valid else DecodeVerdict.FAILURE
    return DecodeResult(verdict, word.astype(np.uint8), iterations, valid, details)


def _expand_ranges(starts: np.ndarray, stops: np.ndarray) -> np.ndarray:
    """[starts[i], stops[i]) aralıklarının art arda eklenmiş indeksleri"""
    lengths = stops - starts
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    offsets = np.repeat(starts - np.concatenate(([0], np.cumsum(lengths)[:-1])), lengths)
    return offsets + np.arange(total, dtype=np.int64)


def _check_llr(gamma: Sequence[float], n: int) -> np.ndarray:
    gamma = np.asarray(gamma, dtype=np.float64)
    if gamma.shape != (n,):
        raise ParameterException(f"LLR uzunluğu {n} olmalı", "llr", gamma.shape)
    return np.clip(gamma, -CAP, CAP)


# ----------------------------------------------------------------------
# Peeling (BEC)
# ----------------------------------------------------------------------
def peel(H: PcMatrix, observation: ChannelObservation,
         code: Optional[RmCode] = None) -> DecodeResult:
    """
    Peeling kod çözücü

    Her turda tek bilinmeyenli tüm kontroller çözülür (taşma çizelgesi).
    Her kontrol için bilinmeyen sayısı, bilinmeyen indeks toplamı ve bilinen
    bitlerin paritesi tutulur; bilinmeyen sayısı 1 iken indeks toplamı doğrudan
    çözülecek biti verir.
    """
    if observation.kind is not ChannelKind.BEC:
        raise ParameterException("Peeling yalnızca BEC gözlemlerinde çalışır", "channel", observation.kind)
    n = observation.n
    erased = observation.erased.copy()
    word = np.where(erased, 0, observation.symbols).astype(np.uint8)

    rounds = 0
    if erased.any() and H.num_rows:
        ev, ec, m = H.edge_vars, H.edge_checks, H.num_rows
        edge_unknown = erased[ev]
        unknown_count = np.bincount(ec, weights=edge_unknown, minlength=m).astype(np.int64)
        unknown_sum = np.bincount(ec, weights=ev * edge_unknown, minlength=m).astype(np.int64)
        parity = np.bincount(ec, weights=word[ev], minlength=m).astype(np.int64) & 1

        while True:
            ready = np.flatnonzero(unknown_count == 1)
            if ready.size == 0:
                break
            rounds += 1
            targets, first = np.unique(unknown_sum[ready], return_index=True)
            values = parity[ready][first].astype(np.uint8)
            word[targets] = values
            erased[targets] = False

            starts, stops = H.var_ptr[targets], H.var_ptr[targets + 1]
            touched = H.var_edge_checks[_expand_ranges(starts, stops)]
            lengths = stops - starts
            unknown_count -= np.bincount(touched, minlength=m)
            unknown_sum -= np.bincount(touched, weights=np.repeat(targets, lengths),
                                       minlength=m).astype(np.int64)
            parity = (parity + np.bincount(touched, weights=np.repeat(values, lengths),
                                           minlength=m).astype(np.int64)) & 1

    remaining = int(erased.sum())
    if remaining:
        return DecodeResult(DecodeVerdict.AMBIGUOUS, word, rounds,
                            _check_validity(word, code),
                            {'remaining_erasures': remaining})
    return DecodeResult(DecodeVerdict.SUCCESS, word, rounds,
                        True if code is None else is_codeword(code, word),
                        {'remaining_erasures': 0})


# ----------------------------------------------------------------------
# Ağırlıklı BP
# ----------------------------------------------------------------------
def _check_node_update(v2c: np.ndarray, edge_checks: np.ndarray, num_checks: int) -> np.ndarray:
    """
    2 atanh(prod tanh(./2)) (hedef kenar hariç)

    Çarpım büyüklükler için log toplamı, işaretler için negatif sayısı
    ve sıfırlar için sıfır sayısı üzerinden hesaplanır.
    """
    t = np.clip(np.tanh(v2c / 2.0), -TANH_CLAMP, TANH_CLAMP)
    magnitude = np.abs(t)
    zero = magnitude == 0.0
    log_mag = np.log(np.where(zero, 1.0, magnitude))
    negative = t < 0

    sum_log = np.bincount(edge_checks, weights=log_mag, minlength=num_checks)
    zero_count = np.bincount(edge_checks, weights=zero, minlength=num_checks)
    neg_count = np.bincount(edge_checks, weights=negative, minlength=num_checks).astype(np.int64)

    others_zero = (zero_count[edge_checks] - zero) > 0
    others_negative = (neg_count[edge_checks] - negative) & 1
    product = np.where(others_zero, 0.0, np.exp(sum_log[edge_checks] - log_mag))
    product = np.where(others_negative == 1, -product, product)
    product = np.clip(product, -TANH_CLAMP, TANH_CLAMP)
    return np.clip(2.0 * np.arctanh(product), -CAP, CAP)


def bp_decode(H: PcMatrix, gamma: Sequence[float], w: float, ell: int,
              code: Optional[RmCode] = None) -> DecodeResult:
    """
    Ağırlıklı toplam-çarpım (sum-product) BP, taşma çizelgesi

    Değişken düğüm mesajı: γ_i + w * (hedef dışındaki kontrol mesajları)
    Marjinal: γ_i + w * (tüm kontrol mesajları); sert karar işaretle, eşitlikte 0.
    Geçerlilik h_ref ile denetlenir (H_sub rank eksik olabilir); kod verilmezse
    H sendromu kullanılır.
    """
    n = H.n
    gamma = _check_llr(gamma, n)
    if not (0.0 < w <= 1.0):
        raise ParameterException("w (0, 1] aralığında olmalı", "w", w)
    if ell < 0:
        raise ParameterException("ell negatif olamaz", "ell", ell)

    hard = hard_decision(gamma)
    if H.num_edges == 0 or ell == 0 or _check_validity(hard, code, H):
        return _finish(hard, 0, code, H)

    ev, ec, m = H.edge_vars, H.edge_checks, H.num_rows
    c2v = np.zeros(H.num_edges, dtype=np.float64)
    for iteration in range(1, ell + 1):
        total = gamma + w * np.bincount(ev, weights=c2v, minlength=n)
        v2c = np.clip(total[ev] - w * c2v, -CAP, CAP)
        c2v = _check_node_update(v2c, ec, m)

        marginal = gamma + w * np.bincount(ev, weights=c2v, minlength=n)
        hard = hard_decision(marginal)
        if _check_validity(hard, code, H):
            return _finish(hard, iteration, code, H)

    logger.debug(f"BP did not converge in {ell} iterations")
    return _finish(hard, ell, code, H)


# ----------------------------------------------------------------------
# ADMM-LP
# ----------------------------------------------------------------------
def project_parity_polytope_batch(v: np.ndarray) -> np.ndarray:
    """
    (B, d) satırlarının her birini PP_d = conv{b ∈ {0,1}^d : Σb çift} üzerine izdüşür

    Tek kümeli S = {i : v_i >= 1/2} (|S| çiftse 1/2'ye en yakın koordinat
    değiştirilir) ile belirlenen yüzey, kırpılmış noktada ihlal ediliyorsa
    nokta yansıtılır ve Σ clip(t + β) = 1 denklemi sıralı kırılma noktaları
    üzerinden çözülür.
    """
    v = np.atleast_2d(np.asarray(v, dtype=np.float64))
    batch, d = v.shape
    u = np.clip(v, 0.0, 1.0)
    if batch == 0 or d == 0:
        return u

    theta = u >= 0.5
    even = (theta.sum(axis=1) & 1) == 0
    closest = np.argmin(np.abs(u - 0.5), axis=1)
    rows = np.flatnonzero(even)
    theta[rows, closest[rows]] = ~theta[rows, closest[rows]]

    facet_lhs = np.where(theta, u, -u).sum(axis=1)
    violated = np.flatnonzero(facet_lhs > theta.sum(axis=1) - 1)
    if violated.size == 0:
        return u

    th = theta[violated]
    t = np.where(th, 1.0 - v[violated], v[violated])

    # g(β) = Σ clip(t_i + β, 0, 1): parçalı doğrusal, kırılma noktaları -t_i (+1) ve 1-t_i (-1)
    breakpoints = np.concatenate((-t, 1.0 - t), axis=1)
    slopes = np.concatenate((np.ones_like(t), -np.ones_like(t)), axis=1)
    order = np.argsort(breakpoints, axis=1, kind='stable')
    breakpoints = np.take_along_axis(breakpoints, order, axis=1)
    slope_after = np.cumsum(np.take_along_axis(slopes, order, axis=1), axis=1)
    g_values = np.concatenate(
        (np.zeros((violated.size, 1)),
         np.cumsum(slope_after[:, :-1] * np.diff(breakpoints, axis=1), axis=1)), axis=1)

    k = np.argmax(g_values >= 1.0, axis=1)
    idx = np.arange(violated.size)
    base = np.maximum(k - 1, 0)
    beta = breakpoints[idx, base] + (1.0 - g_values[idx, base]) / np.maximum(slope_after[idx, base], 1)

    t_star = np.clip(t + beta[:, None], 0.0, 1.0)
    u[violated] = np.where(th, 1.0 - t_star, t_star)
    return u


def project_parity_polytope(v: Sequence[float]) -> np.ndarray:
    """Tek vektör için parite politopu izdüşümü (d >= 2)"""
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.size < 2:
        raise ParameterException("d >= 2 uzunlukta vektör gerekli", "v", v.shape)
    return project_parity_polytope_batch(v[None, :])[0]


@dataclass
class AdmmState:
    """
    ADMM durumu; z ve lam kenar sırasında (kontrol j'nin kopyası
    check_ptr[j]:check_ptr[j+1] diliminde)
    """
    x: np.ndarray
    z: np.ndarray
    lam: np.ndarray
    mu: float
    check_ptr: np.ndarray

    def replica(self, j: int) -> np.ndarray:
        return self.z[self.check_ptr[j]:self.check_ptr[j + 1]]

    def dual(self, j: int) -> np.ndarray:
        return self.lam[self.check_ptr[j]:self.check_ptr[j + 1]]


def _degree_groups(H: PcMatrix):
    """Aynı dereceli kontrollerin kenar indeks matrisleri"""
    groups = []
    for degree in np.unique(H.row_weights):
        checks = np.flatnonzero(H.row_weights == degree)
        edges = H.check_ptr[checks][:, None] + np.arange(degree)[None, :]
        groups.append(edges)
    return groups


def admm_lp_decode(H: PcMatrix, gamma: Sequence[float], mu: float, tmax: int,
                   tol: float = 1e-5, code: Optional[RmCode] = None,
                   stop_on_codeword: bool = True) -> DecodeResult:
    """
    LP gevşetmesi min γ^T x, x ∈ ∩_j PP_j, ADMM ile

    Durma: maksimum kontrol kalıntısı < tol, yuvarlanmış x geçerli bir kod
    kelimesi (stop_on_codeword) ya da tmax iterasyon. x 0.5'te yuvarlanır
    (eşitlikte 0).
    """
    n = H.n
    gamma = _check_llr(gamma, n)
    if mu <= 0:
        raise ParameterException("mu pozitif olmalı", "mu", mu)
    if tmax < 1:
        raise ParameterException("tmax >= 1 olmalı", "tmax", tmax)

    ev = H.edge_vars
    degrees = H.var_degrees
    safe_degrees = np.maximum(degrees, 1)
    no_checks = degrees == 0
    groups = _degree_groups(H)

    x0 = 0.5 * (1.0 - np.tanh(gamma / 2.0))
    state = AdmmState(x=x0, z=x0[ev].copy(), lam=np.zeros(H.num_edges),
                      mu=float(mu), check_ptr=H.check_ptr)

    residual = 0.0
    converged = False
    iteration = 0
    word = hard_decision(gamma)
    for iteration in range(1, tmax + 1):
        pull = np.bincount(ev, weights=state.z - state.lam / mu, minlength=n)
        x = np.clip((pull - gamma / mu) / safe_degrees, 0.0, 1.0)
        state.x = np.where(no_checks, (gamma < 0).astype(np.float64), x)

        px = state.x[ev]
        target = px + state.lam / mu
        for edges in groups:
            state.z[edges] = project_parity_polytope_batch(target[edges])
        diff = px - state.z
        state.lam = state.lam + mu * diff

        residual = float(np.abs(diff).max()) if diff.size else 0.0
        word = (state.x > 0.5).astype(np.uint8)
        if residual < tol:
            converged = True
            break
        if stop_on_codeword and _check_validity(word, code, H):
            break

    return _finish(word, iteration, code, H, residual=residual, converged=converged, state=state)


# ----------------------------------------------------------------------
# Bit çevirme
# ----------------------------------------------------------------------
def bit_flip_decode(H: PcMatrix, y: Sequence[int], max_flips: Optional[int] = None,
                    code: Optional[RmCode] = None) -> DecodeResult:
    """
    Ardışık bit çevirme

    Her adımda ihlal edilen kontrol sayısını en çok azaltan bit (Δ = ihlal - sağlanan,
    eşitlikte küçük indeks) çevrilir; Δ > 0 olan bit kalmadığında durulur.
    İhlal sayıları yalnızca çevrilen bitin kontrollerinde güncellenir.
    """
    word = np.array(y, dtype=np.uint8)
    n = H.n
    if word.shape != (n,):
        raise ParameterException(f"Kelime uzunluğu {n} olmalı", "y", word.shape)
    if max_flips is None:
        max_flips = 2 * n

    ev, ec = H.edge_vars, H.edge_checks
    syndrome = H.syndrome(word).astype(np.uint8)
    violated = np.bincount(ev, weights=syndrome[ec], minlength=n).astype(np.int64)
    degrees = H.var_degrees
    unsatisfied = int(syndrome.sum())
    trace = [unsatisfied]

    flips = 0
    while unsatisfied > 0 and flips < max_flips:
        delta = 2 * violated - degrees
        i = int(np.argmax(delta))
        if delta[i] <= 0:
            break
        word[i] ^= 1

        checks = H.var_edge_checks[H.var_ptr[i]:H.var_ptr[i + 1]]
        syndrome[checks] ^= 1
        change = np.where(syndrome[checks] == 1, 1, -1)
        starts, stops = H.check_ptr[checks], H.check_ptr[checks + 1]
        np.add.at(violated, ev[_expand_ranges(starts, stops)], np.repeat(change, stops - starts))

        unsatisfied += int(change.sum())
        trace.append(unsatisfied)
        flips += 1

    return _finish(word, flips, code, H, unsatisfied_trace=trace)


# ----------------------------------------------------------------------
# MRB (sıralı istatistik)
# ----------------------------------------------------------------------
@cached(cache=LRUCache(maxsize=64))
def _pattern_table(k: int, weight: int) -> np.ndarray:
    """k pozisyondan weight tanesinin tüm kombinasyonları (sözlük sırası)"""
    table = np.array(list(combinations(range(k), weight)), dtype=np.int64)
    table.setflags(write=False)
    return table.reshape(-1, weight)


def most_reliable_basis(code: RmCode, gamma: np.ndarray):
    """
    Güvenilirlik sırasında Gauss eliminasyonu

    Returns:
        (basis, gen_sys): basis en güvenilir bağımsız k sütun, gen_sys
        bu sütunlarda birim matris olan (k, n) üreteç (orijinal sütun sırası)
    """
    n = code.n
    order = np.argsort(-np.abs(gamma), kind='stable')
    permuted = gf2_linalg.pack_rows(code.gen[:, order])
    reduced, pivots = gf2_linalg.rref(permuted, n)
    gen_sys = np.zeros((len(reduced), n), dtype=np.uint8)
    gen_sys[:, order] = gf2_linalg.unpack_rows(reduced, n)
    return order[pivots], gen_sys


def mrb_decode(code: RmCode, gamma: Sequence[float], nu: int) -> DecodeResult:
    """
    En güvenilir temel (MRB) kod çözme, derece 0..nu hata desenleri

    Skor = Σ_{aday_i ≠ sert_i} |γ_i|; en küçük skor kazanır (eşitlikte ilk bulunan).
    """
    gamma = _check_llr(gamma, code.n)
    if nu < 0:
        raise ParameterException("nu negatif olamaz", "nu", nu)

    basis, gen_sys = most_reliable_basis(code, gamma)
    k = basis.size
    hard = hard_decision(gamma)
    reliability = np.abs(gamma)

    base = (hard[basis].astype(np.int64) @ gen_sys.astype(np.int64) & 1).astype(np.uint8)
    base_diff = base ^ hard

    best_score = float(base_diff @ reliability)
    best_delta = np.zeros(code.n, dtype=np.uint8)
    candidates = 1
    for weight in range(1, min(nu, k) + 1):
        table = _pattern_table(k, weight)
        for start in range(0, table.shape[0], MRB_CHUNK):
            chunk = table[start:start + MRB_CHUNK]
            deltas = np.bitwise_xor.reduce(gen_sys[chunk], axis=1)
            scores = (deltas ^ base_diff) @ reliability
            candidates += chunk.shape[0]
            j = int(np.argmin(scores))
            if scores[j] < best_score:
                best_score = float(scores[j])
                best_delta = deltas[j]

    word = base ^ best_delta
    return _finish(word, 0, code, score=best_score, candidates=candidates)


# ----------------------------------------------------------------------
# Kesin ML referansları
# ----------------------------------------------------------------------
def ml_bec_decode(code: RmCode, observation: ChannelObservation) -> DecodeResult:
    """
    BEC üzerinde ML: silinmiş koordinatlarda h_ref x^T = 0 sistemini çöz

    Tek çözüm -> SUCCESS; serbest değişken -> AMBIGUOUS (blok hatası).
    """
    if observation.kind is not ChannelKind.BEC:
        raise ParameterException("ML-BEC yalnızca BEC gözlemlerinde çalışır", "channel", observation.kind)
    erased = observation.erased
    word = np.where(erased, 0, observation.symbols).astype(np.uint8)
    unknown = np.flatnonzero(erased)
    if unknown.size == 0:
        return DecodeResult(DecodeVerdict.SUCCESS, word, 0, is_codeword(code, word), {'rank': 0})

    h_ref = code.h_ref
    known = np.flatnonzero(~erased)
    rhs = (h_ref[:, known].astype(np.int64) @ word[known].astype(np.int64)) & 1
    solution, rank = gf2_linalg.solve(gf2_linalg.pack_rows(h_ref[:, unknown]), rhs.tolist(), unknown.size)
    if solution is None:
        return DecodeResult(DecodeVerdict.AMBIGUOUS, word, 0, False,
                            {'rank': rank, 'free_variables': int(unknown.size - rank)})

    word[unknown] = gf2_linalg.unpack_bits(solution, unknown.size)
    return DecodeResult(DecodeVerdict.SUCCESS, word, 0, is_codeword(code, word), {'rank': rank})


@cached(cache=LRUCache(maxsize=4), key=lambda code: (code.r, code.m))
def codebook(code: RmCode) -> np.ndarray:
    """Tüm kod kelimeleri; satır u, bilgi kelimesi tam sayısı u olan kelimedir (bit j = u_j)"""
    if code.k > MAX_BRUTEFORCE_K:
        raise GuardExceededException(f"k = {code.k} > {MAX_BRUTEFORCE_K}: kaba kuvvet ML çok büyük",
                                     "k", code.k)
    if (2 ** code.k) * code.n > MAX_CODEBOOK_ENTRIES:
        raise GuardExceededException(f"{code.name} kod kitabı bellek sınırını aşıyor", "n", code.n)
    info = (np.arange(2 ** code.k, dtype=np.int64)[:, None] >> np.arange(code.k)[None, :]) & 1
    words = (info @ code.gen.astype(np.int64) & 1).astype(np.uint8)
    words.setflags(write=False)
    return words


def ml_bruteforce(code: RmCode, gamma: Sequence[float]) -> DecodeResult:
    """Σ_{c_i=1} γ_i'yi en küçükleyen kod kelimesi (eşitlikte en küçük bilgi kelimesi)"""
    gamma = _check_llr(gamma, code.n)
    words = codebook(code)
    scores = words @ gamma
    best = int(np.argmin(scores))
    ties = int(np.count_nonzero(np.abs(scores - scores[best]) <= 1e-9))
    return _finish(words[best].copy(), 0, code, score=float(scores[best]), ties=ties)
