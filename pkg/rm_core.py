#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Reed-Muller Çekirdeği
RM(r,m) kodları, üreteç / parite-kontrol matrisleri ve minimum ağırlıklı
parite kontrollerinin (MWPC) tam kümesi.

Değerlendirme noktası sırası: sütun i (0 tabanlı), i'nin LSB-önce ikili
açılımına karşılık gelir (x_j = (i >> j) & 1).
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt
from cachetools import LRUCache, cached

import gf2_linalg
from exception_handler import GuardExceededException, ParameterException, RMException
from performance_monitor import monitor_performance

logger = logging.getLogger(__name__)

# Pratik üst sınır: n = 2^20
MAX_M = 20
# enumerate_mwpc koruma sınırı
MWPC_GUARD = 10 ** 7

# Uzunluğu n olan 0/1 vektör (uint8). Bitset gerektiğinde gf2_linalg.pack_bits ile paketlenir.
BinaryWord = npt.NDArray[np.uint8]


def _check_rm_params(r: int, m: int):
    """(r, m) parametre kontrolü"""
    if isinstance(r, bool) or isinstance(m, bool) or not isinstance(r, (int, np.integer)) \
            or not isinstance(m, (int, np.integer)):
        raise ParameterException("r ve m tam sayı olmalı", "r,m", (r, m))
    if not (0 <= m <= MAX_M):
        raise ParameterException(f"m 0 ile {MAX_M} arasında olmalı", "m", m)
    if not (0 <= r <= m):
        raise ParameterException("0 <= r <= m olmalı", "r", r)


def code_params(r: int, m: int) -> Tuple[int, int, int, int]:
    """(n, k, d_min, dual_d_min) döndür"""
    _check_rm_params(r, m)
    n = 2 ** m
    k = sum(comb(m, i) for i in range(r + 1))
    return n, k, 2 ** (m - r), 2 ** (r + 1)


def count_mwpc(r: int, m: int) -> int:
    """
    Minimum ağırlıklı parite kontrolü sayısı
    F(r,m) = 2^(m-r-1) * prod_{i=0..r} (2^(m-i) - 1) / (2^(r+1-i) - 1)

    Pay ve payda ayrı ayrı tam sayı olarak çarpılır; bölüm her zaman tamdır.
    """
    _check_rm_params(r, m)
    if r == m:
        raise ParameterException("r = m için dual kod boş; MWPC yok", "r", r)

    numerator = 1
    denominator = 1
    for i in range(r + 1):
        numerator *= 2 ** (m - i) - 1
        denominator *= 2 ** (r + 1 - i) - 1
    return 2 ** (m - r - 1) * (numerator // denominator)


def _evaluation_points(m: int) -> np.ndarray:
    """(m, 2^m) matris: satır j = tüm noktalarda x_j"""
    points = np.arange(2 ** m, dtype=np.int64)
    return ((points[None, :] >> np.arange(m, dtype=np.int64)[:, None]) & 1).astype(np.uint8)


def monomials(r: int, m: int) -> List[Tuple[int, ...]]:
    """Derecesi <= r olan monomlar: önce dereceye, sonra değişken kümesine göre sıralı"""
    return [subset for degree in range(r + 1) for subset in combinations(range(m), degree)]


def rm_generator(r: int, m: int) -> np.ndarray:
    """RM(r,m) üreteç matrisi (k x n); r < 0 için boş matris"""
    n = 2 ** m
    if r < 0:
        return np.zeros((0, n), dtype=np.uint8)
    x = _evaluation_points(m)
    rows = []
    for subset in monomials(r, m):
        row = np.ones(n, dtype=np.uint8)
        for j in subset:
            row &= x[j]
        rows.append(row)
    return np.stack(rows)


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RmCode:
    """RM(r,m) kodu ve türetilmiş parametreleri"""
    r: int
    m: int
    n: int
    k: int
    d_min: int
    dual_d_min: int
    gen: np.ndarray = field(repr=False)
    h_ref: np.ndarray = field(repr=False)

    @property
    def name(self) -> str:
        return f"RM({self.r},{self.m})"

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def gen_packed(self) -> Tuple[int, ...]:
        return tuple(gf2_linalg.pack_rows(self.gen))

    @cached_property
    def h_ref_packed(self) -> Tuple[int, ...]:
        return tuple(gf2_linalg.pack_rows(self.h_ref))

    @cached_property
    def _h_ref_int(self) -> np.ndarray:
        return _readonly(self.h_ref.astype(np.int64))

    def __eq__(self, other) -> bool:
        return isinstance(other, RmCode) and (self.r, self.m) == (other.r, other.m)

    def __hash__(self) -> int:
        return hash((self.r, self.m))


@cached(cache=LRUCache(maxsize=16), key=lambda r, m: (int(r), int(m)))
def build_code(r: int, m: int) -> RmCode:
    """
    RM(r,m) kodunu kur

    Üreteç satırları derecesi <= r olan monomların değerlendirmeleridir;
    h_ref, RM(m-r-1, m) üretecinin Gauss eliminasyonu ile elde edilen n-k
    bağımsız satırıdır (r = m için boş).
    """
    n, k, d_min, dual_d_min = code_params(r, m)
    gen = rm_generator(r, m)

    dual_gen = rm_generator(m - r - 1, m)
    if dual_gen.shape[0]:
        reduced, _ = gf2_linalg.rref(gf2_linalg.pack_rows(dual_gen), n)
        h_ref = gf2_linalg.unpack_rows(reduced, n)
    else:
        h_ref = np.zeros((0, n), dtype=np.uint8)

    if h_ref.shape[0] != n - k:
        raise RMException(f"h_ref rankı beklenenden farklı: {h_ref.shape[0]} != {n - k}")

    logger.debug(f"Built RM({r},{m}): n={n}, k={k}, d_min={d_min}")
    return RmCode(r=int(r), m=int(m), n=n, k=k, d_min=d_min, dual_d_min=dual_d_min,
                  gen=_readonly(gen), h_ref=_readonly(h_ref))


def encode(code: RmCode, u: Sequence[int]) -> BinaryWord:
    """u^T * gen (GF(2))"""
    u = np.asarray(u)
    if u.shape != (code.k,):
        raise ParameterException(f"Bilgi kelimesi uzunluğu {code.k} olmalı", "u", u.shape)
    return ((u.astype(np.int64) & 1) @ code.gen.astype(np.int64) & 1).astype(np.uint8)


def syndrome(code: RmCode, x: Sequence[int]) -> np.ndarray:
    """h_ref * x^T (GF(2))"""
    x = np.asarray(x)
    if x.shape != (code.n,):
        raise ParameterException(f"Kelime uzunluğu {code.n} olmalı", "x", x.shape)
    return (code._h_ref_int @ (x.astype(np.int64) & 1)) & 1


def is_codeword(code: RmCode, x: Sequence[int]) -> bool:
    """h_ref * x^T = 0 ise True"""
    return not syndrome(code, x).any()


class PcMatrix:
    """
    Seyrek parite-kontrol matrisi

    Satırlar sıralı destek listeleri olarak tutulur (hepsi farklı). Kod
    çözücüler için kenar dizileri hazırlanır: kontrol-öncelikli sırada
    edge_vars / edge_checks ve değişken-öncelikli CSR (var_ptr, var_edge_checks).
    """

    def __init__(self, n: int, edge_vars: np.ndarray, row_weights: np.ndarray):
        self._n = int(n)
        self._edge_vars = _readonly(np.asarray(edge_vars, dtype=np.int64))
        self._row_weights = _readonly(np.asarray(row_weights, dtype=np.int64))

        num_rows = self._row_weights.size
        self._check_ptr = _readonly(np.concatenate(([0], np.cumsum(self._row_weights))).astype(np.int64))
        self._edge_checks = _readonly(np.repeat(np.arange(num_rows, dtype=np.int64), self._row_weights))

        order = np.argsort(self._edge_vars, kind='stable')
        self._var_edge_checks = _readonly(self._edge_checks[order])
        self._var_degrees = _readonly(np.bincount(self._edge_vars, minlength=self._n).astype(np.int64))
        self._var_ptr = _readonly(np.concatenate(([0], np.cumsum(self._var_degrees))).astype(np.int64))

    # ------------------------------------------------------------------
    # Kurucular
    # ------------------------------------------------------------------
    @classmethod
    def from_supports(cls, supports: Iterable[Sequence[int]], n: int) -> "PcMatrix":
        """Destek listelerinden matris kur; tekrar eden satır hata verir"""
        rows = [tuple(sorted(int(i) for i in row)) for row in supports]
        seen = set()
        for row in rows:
            if not row:
                raise ParameterException("Boş parite kontrol satırı", "rows", row)
            if row[0] < 0 or row[-1] >= n or len(set(row)) != len(row):
                raise ParameterException("Geçersiz satır desteği", "rows", row)
            if row in seen:
                raise ParameterException("Tekrar eden parite kontrol satırı", "rows", row)
            seen.add(row)

        weights = np.array([len(row) for row in rows], dtype=np.int64)
        edge_vars = np.fromiter((i for row in rows for i in row), dtype=np.int64, count=int(weights.sum()))
        matrix = cls(n, edge_vars, weights)
        matrix.__dict__['rows'] = tuple(rows)
        return matrix

    @classmethod
    def from_uniform_array(cls, supports: np.ndarray, n: int, assume_distinct: bool = False) -> "PcMatrix":
        """Eşit ağırlıklı satırlar için hızlı kurucu ((satır, ağırlık) dizisi)"""
        supports = np.sort(np.asarray(supports, dtype=np.int64), axis=1)
        if supports.size and (supports.min() < 0 or supports.max() >= n):
            raise ParameterException("Satır indeksi aralık dışında", "rows")
        if not assume_distinct and np.unique(supports, axis=0).shape[0] != supports.shape[0]:
            raise ParameterException("Tekrar eden parite kontrol satırı", "rows")
        weights = np.full(supports.shape[0], supports.shape[1] if supports.ndim == 2 else 0, dtype=np.int64)
        return cls(n, supports.reshape(-1), weights)

    @classmethod
    def from_dense(cls, matrix: np.ndarray) -> "PcMatrix":
        """Yoğun 0/1 matristen kur"""
        matrix = np.asarray(matrix, dtype=np.uint8)
        return cls.from_supports((np.flatnonzero(row) for row in matrix), matrix.shape[1])

    @classmethod
    def from_alist(cls, source: Union[str, Path]) -> "PcMatrix":
        """alist dosyasından (veya metninden) oku"""
        if isinstance(source, Path) or "\n" not in str(source):
            text = Path(source).read_text(encoding='utf-8')
        else:
            text = str(source)
        try:
            tokens = [int(tok) for tok in text.split()]
            n, num_rows = tokens[0], tokens[1]
            max_col_degree, max_row_degree = tokens[2], tokens[3]
            expected = 4 + n + num_rows + n * max_col_degree + num_rows * max_row_degree
            if len(tokens) < expected:
                raise ValueError(f"{expected} sayı bekleniyordu, {len(tokens)} bulundu")
            pos = 4 + n
            row_degrees = tokens[pos:pos + num_rows]
            pos += num_rows
            # Sütun listeleri atlanır (0 dolgulu); satır listeleri yeterli
            pos += n * max_col_degree
            rows = []
            for degree in row_degrees:
                entries = tokens[pos:pos + max_row_degree]
                pos += max_row_degree
                rows.append([e - 1 for e in entries[:degree] if e > 0])
        except (IndexError, ValueError) as e:
            raise ParameterException(f"alist formatı okunamadı: {e}", "alist") from e
        return cls.from_supports(rows, n)

    # ------------------------------------------------------------------
    # Özellikler
    # ------------------------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def num_rows(self) -> int:
        return int(self._row_weights.size)

    @property
    def num_edges(self) -> int:
        return int(self._edge_vars.size)

    @property
    def row_weights(self) -> np.ndarray:
        return self._row_weights

    @property
    def edge_vars(self) -> np.ndarray:
        return self._edge_vars

    @property
    def edge_checks(self) -> np.ndarray:
        return self._edge_checks

    @property
    def check_ptr(self) -> np.ndarray:
        return self._check_ptr

    @property
    def var_degrees(self) -> np.ndarray:
        return self._var_degrees

    @property
    def var_ptr(self) -> np.ndarray:
        return self._var_ptr

    @property
    def var_edge_checks(self) -> np.ndarray:
        return self._var_edge_checks

    @cached_property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        """Sıralı destek listeleri"""
        return tuple(tuple(int(i) for i in self._edge_vars[a:b])
                     for a, b in zip(self._check_ptr[:-1], self._check_ptr[1:]))

    @cached_property
    def var_adjacency(self) -> Tuple[np.ndarray, ...]:
        """Her sütun için bağlı satır indeksleri"""
        return tuple(np.split(self._var_edge_checks, self._var_ptr[1:-1])) if self._n else ()

    @cached_property
    def uniform_weight(self) -> Optional[int]:
        """Tüm satırlar aynı ağırlıktaysa o ağırlık"""
        if self.num_rows and np.all(self._row_weights == self._row_weights[0]):
            return int(self._row_weights[0])
        return None

    def __len__(self) -> int:
        return self.num_rows

    def __repr__(self) -> str:
        return f"PcMatrix(n={self._n}, rows={self.num_rows}, edges={self.num_edges})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PcMatrix):
            return NotImplemented
        return (self._n == other._n
                and np.array_equal(self._row_weights, other._row_weights)
                and np.array_equal(self._edge_vars, other._edge_vars))

    __hash__ = None

    # ------------------------------------------------------------------
    # İşlemler
    # ------------------------------------------------------------------
    def to_dense(self) -> np.ndarray:
        """(satır, n) yoğun 0/1 matris"""
        dense = np.zeros((self.num_rows, self._n), dtype=np.uint8)
        dense[self._edge_checks, self._edge_vars] = 1
        return dense

    def select_rows(self, indices: Sequence[int]) -> "PcMatrix":
        """Verilen satırlardan (sırayla) yeni matris"""
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size and np.unique(indices).size != indices.size:
            raise ParameterException("Satır indeksleri tekrar ediyor", "indices")
        if self.uniform_weight is not None:
            block = self._edge_vars.reshape(self.num_rows, self.uniform_weight)[indices]
            return PcMatrix(self._n, block.reshape(-1), np.full(indices.size, self.uniform_weight))
        rows = self.rows
        return PcMatrix.from_supports([rows[i] for i in indices], self._n)

    def syndrome(self, x: Sequence[int]) -> np.ndarray:
        """Her satır için parite"""
        x = np.asarray(x, dtype=np.int64)
        return (np.bincount(self._edge_checks, weights=x[self._edge_vars],
                            minlength=self.num_rows).astype(np.int64)) & 1

    def is_orthogonal_to(self, code: RmCode) -> bool:
        """Her satır kodun her üreteç satırına dik mi"""
        if code.n != self._n:
            return False
        if not self.num_rows:
            return True
        products = self.to_dense().astype(np.int64) @ code.gen.T.astype(np.int64)
        return not (products & 1).any()

    def to_alist(self) -> str:
        """alist metni (1 tabanlı, 0 dolgulu)"""
        max_col = int(self._var_degrees.max()) if self._n else 0
        max_row = int(self._row_weights.max()) if self.num_rows else 0
        lines = [f"{self._n} {self.num_rows}", f"{max_col} {max_row}",
                 " ".join(str(int(d)) for d in self._var_degrees),
                 " ".join(str(int(d)) for d in self._row_weights)]
        for v in range(self._n):
            entries = [int(c) + 1 for c in self._var_edge_checks[self._var_ptr[v]:self._var_ptr[v + 1]]]
            lines.append(" ".join(str(e) for e in entries + [0] * (max_col - len(entries))))
        for c in range(self.num_rows):
            entries = [int(v) + 1 for v in self._edge_vars[self._check_ptr[c]:self._check_ptr[c + 1]]]
            lines.append(" ".join(str(e) for e in entries + [0] * (max_row - len(entries))))
        return "\n".join(lines) + "\n"

    def write_alist(self, path: Union[str, Path]):
        """alist dosyasına yaz"""
        Path(path).write_text(self.to_alist(), encoding='utf-8')
        logger.info(f"Wrote alist matrix ({self.num_rows}x{self._n}) to {path}")


@cached(cache=LRUCache(maxsize=8), key=lambda code: (code.r, code.m))
@monitor_performance("matrix")
def enumerate_mwpc(code: RmCode) -> PcMatrix:
    """
    Tüm minimum ağırlıklı parite kontrolleri (H_full)

    Her (r+1) boyutlu lineer alt uzay, pivot sütunları seçilmiş RREF
    tabanıyla bir kez üretilir; pivot koordinatları sıfır olan 2^(m-r-1)
    vektör öteleme temsilcilerini verir.
    """
    r, m, n = code.r, code.m, code.n
    total = count_mwpc(r, m)
    if total > MWPC_GUARD:
        raise GuardExceededException(f"F({r},{m}) = {total} koruma sınırını aşıyor", "F", total)

    d = r + 1
    blocks = []
    for pivots in combinations(range(m), d):
        pivot_set = set(pivots)
        complement = [p for p in range(m) if p not in pivot_set]
        representatives = np.array(gf2_linalg.span([1 << p for p in complement]), dtype=np.int64)
        free_slots = [(t, p) for t in range(d) for p in range(pivots[t] + 1, m) if p not in pivot_set]
        for assignment in range(2 ** len(free_slots)):
            basis = [1 << p for p in pivots]
            for bit, (t, p) in enumerate(free_slots):
                if (assignment >> bit) & 1:
                    basis[t] |= 1 << p
            subspace = np.array(gf2_linalg.span(basis), dtype=np.int64)
            blocks.append(representatives[:, None] ^ subspace[None, :])

    supports = np.sort(np.concatenate(blocks), axis=1)
    if supports.shape[0] != total:
        raise RMException(f"MWPC sayısı tutarsız: {supports.shape[0]} != {total}")
    logger.info(f"Enumerated {total} minimum-weight parity checks of {code.name}")
    return PcMatrix.from_uniform_array(supports, n, assume_distinct=True)
