#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - GF(2) Lineer Cebir
Satırlar Python int bitset olarak tutulur: bit j = sütun j.
"""

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np


def pack_bits(bits: np.ndarray) -> int:
    """0/1 vektörünü int bitset'e çevir (bit j = bits[j])"""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size == 0:
        return 0
    return int.from_bytes(np.packbits(bits, bitorder='little').tobytes(), 'little')


def unpack_bits(value: int, n: int) -> np.ndarray:
    """int bitset'i uzunluğu n olan 0/1 vektörüne çevir"""
    if n == 0:
        return np.zeros(0, dtype=np.uint8)
    n_bytes = (n + 7) // 8
    raw = np.frombuffer(value.to_bytes(n_bytes, 'little'), dtype=np.uint8)
    return np.unpackbits(raw, bitorder='little')[:n].copy()


def pack_rows(matrix: np.ndarray) -> List[int]:
    """Matrisin her satırını bitset'e çevir"""
    return [pack_bits(row) for row in np.asarray(matrix, dtype=np.uint8)]


def unpack_rows(rows: Sequence[int], n: int) -> np.ndarray:
    """Bitset satırlarını (len(rows), n) uint8 matrise çevir"""
    if not rows:
        return np.zeros((0, n), dtype=np.uint8)
    return np.stack([unpack_bits(row, n) for row in rows])


def parity(value: int) -> int:
    """Bitset ağırlığının paritesi"""
    return bin(value).count('1') & 1


def rref(rows: Iterable[int], n_cols: int) -> Tuple[List[int], List[int]]:
    """
    İndirgenmiş satır eşelon formu (Gauss-Jordan)

    Pivot araması sütun 0'dan başlar; dönüş değeri sıfır olmayan satırlar
    ve pivot sütunlarıdır (satır i'nin pivotu pivots[i]).
    """
    work = [int(r) for r in rows]
    pivots: List[int] = []
    row_idx = 0
    for col in range(n_cols):
        if row_idx == len(work):
            break
        mask = 1 << col
        pivot = None
        for r in range(row_idx, len(work)):
            if work[r] & mask:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        pivot_row = work[row_idx]
        for r in range(len(work)):
            if r != row_idx and work[r] & mask:
                work[r] ^= pivot_row
        pivots.append(col)
        row_idx += 1
    return work[:row_idx], pivots


def rank(rows: Iterable[int], n_cols: int) -> int:
    """GF(2) üzerinde rank"""
    return len(rref(rows, n_cols)[1])


def span(basis: Sequence[int]) -> List[int]:
    """
    Tabanın gerdiği tüm vektörler; u = l'nin ikili açılımı için
    eleman l, u_j = 1 olan taban satırlarının XOR'udur.
    """
    elements = [0]
    for vec in basis:
        elements.extend([e ^ vec for e in elements])
    return elements


def solve(coeff_rows: Sequence[int], rhs: Sequence[int],
          n_cols: int) -> Tuple[Optional[int], int]:
    """
    A x = b sistemini çöz (A satırları bitset, b bitleri)

    Returns:
        (çözüm bitseti veya None, rank). Çözüm yalnızca tekse döner;
        serbest değişken varsa ya da sistem tutarsızsa None.
    """
    aug_bit = 1 << n_cols
    augmented = [int(a) | (aug_bit if b else 0) for a, b in zip(coeff_rows, rhs)]
    reduced, pivots = rref(augmented, n_cols + 1)

    # Artırılmış sütunda pivot: tutarsız sistem
    if pivots and pivots[-1] == n_cols:
        return None, len(pivots) - 1
    system_rank = len(pivots)

    solution = 0
    for row, col in zip(reduced, pivots):
        if row & aug_bit:
            solution |= 1 << col
    if system_rank < n_cols:
        return None, system_rank
    return solution, system_rank


def matrix_rank(matrix: np.ndarray) -> int:
    """Yoğun 0/1 matrisin rankı"""
    matrix = np.asarray(matrix, dtype=np.uint8)
    if matrix.size == 0:
        return 0
    return rank(pack_rows(matrix), matrix.shape[1])
