#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Monte Carlo Simülasyonu
Kanal parametresi taraması, çerçeve başına matris kurulumu (tam / uyarlanmış /
rastgele alt küme), kod çözme ve blok hata istatistikleri.

Her çerçeve (master_seed, frame_index) ile tohumlanan kendi rastgele akışını
kullanır; sonuçlar çerçeve sırasıyla taranır, bu yüzden kayıtlar işçi
sayısından bağımsızdır.
"""

import logging
import time
from collections import Counter, deque
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from advanced_logger import log_sweep_point
from channels import ChannelKind, ChannelSpec, frame_rng, hard_decision, llr, transmit
from decoders import (DecodeResult, DecodeVerdict, DecoderKind, admm_lp_decode, bit_flip_decode,
                      bp_decode, MAX_BRUTEFORCE_K, ml_bec_decode, ml_bruteforce, mrb_decode, peel)
from exception_handler import (ConfigException, ParameterException, RMException,
                               SaturationException, TailoringFallbackException)
from pc_adapt import (DEFAULT_SATURATION_FACTOR, build_tailored_matrix, classify_bits,
                      partition_from_erasures, random_subset_matrix, rows_from_percent)
from performance_monitor import monitor_performance, performance_monitor
from rm_core import MWPC_GUARD, PcMatrix, RmCode, build_code, count_mwpc, encode, enumerate_mwpc

logger = logging.getLogger(__name__)


class MatrixKind(Enum):
    """Çerçeve başına parite kontrol matrisi politikası"""
    FULL = "full"
    TAILORED = "tailored"
    RANDOM = "random"


@dataclass(frozen=True)
class MatrixPolicy:
    """Matris politikası; satır sayısı s ya da F(r,m) yüzdesi olarak verilir"""
    kind: MatrixKind = MatrixKind.FULL
    f: Optional[float] = None
    s: Optional[int] = None
    rows_percent: Optional[float] = None
    max_attempts: int = DEFAULT_SATURATION_FACTOR

    def resolve_rows(self, code: RmCode) -> Optional[int]:
        """Alt küme politikaları için s"""
        if self.kind is MatrixKind.FULL:
            return None
        if self.s is not None:
            return int(self.s)
        if self.rows_percent is not None:
            return rows_from_percent(code, self.rows_percent)
        return None


@dataclass(frozen=True)
class DecoderParams:
    """Kod çözücü türü ve ilgili parametreleri (ilgisiz olanlar None)"""
    kind: DecoderKind
    w: Optional[float] = None
    ell: Optional[int] = None
    mu: Optional[float] = None
    tmax: Optional[int] = None
    tol: Optional[float] = None
    nu: Optional[int] = None
    max_flips: Optional[int] = None

    @classmethod
    def for_kind(cls, kind, defaults: Optional[Dict[str, Any]] = None, **overrides) -> "DecoderParams":
        """
        Türün kullandığı parametreleri varsayılanlardan doldur

        Args:
            kind: DecoderKind ya da CLI adı ("bp", "ml-bec", ...)
            defaults: config.json 'simulation' bölümü
            overrides: None olmayan değerler varsayılanları ezer
        """
        try:
            kind = kind if isinstance(kind, DecoderKind) else DecoderKind(str(kind).lower())
        except ValueError:
            raise ParameterException(f"Bilinmeyen kod çözücü: {kind}", "decoder", kind) from None
        defaults = defaults or {}
        used = {
            DecoderKind.BP: ("w", "ell"),
            DecoderKind.LP: ("mu", "tmax", "tol"),
            DecoderKind.MRB: ("nu",),
            DecoderKind.BF: ("max_flips",),
        }.get(kind, ())
        values = {}
        for name in used:
            value = overrides.get(name)
            values[name] = value if value is not None else defaults.get(name)
        return cls(kind=kind, **values)


@dataclass(frozen=True)
class ExperimentConfig:
    """Tek bir tarama deneyinin tam tanımı"""
    r: int
    m: int
    channel: ChannelKind
    params: Tuple[float, ...]
    decoder: DecoderParams
    matrix: MatrixPolicy = field(default_factory=MatrixPolicy)
    min_block_errors: int = 100
    max_frames: int = 100000
    seed: int = 0
    workers: int = 1
    frames_per_task: int = 32
    all_zero: bool = False
    include_timing: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'channel', ChannelKind.parse(self.channel))
        object.__setattr__(self, 'params', tuple(float(p) for p in self.params))

    @property
    def code(self) -> RmCode:
        return build_code(self.r, self.m)

    @property
    def matrix_policy_name(self) -> str:
        return self.matrix.kind.value if self.decoder.kind.uses_matrix else "none"

    def validate(self) -> "ExperimentConfig":
        """Tutarsızlık varsa tüm hatalarla birlikte ConfigException fırlat"""
        errors: List[str] = []
        try:
            code = self.code
        except RMException as e:
            raise ConfigException(f"Geçersiz kod parametreleri: {e.message}", [e.message]) from e

        if not self.params:
            errors.append("params: en az bir kanal parametresi gerekli")
        for p in self.params:
            if not np.isfinite(p):
                errors.append(f"params: sonlu olmayan değer {p}")
            elif self.channel is not ChannelKind.BIAWGN and not (0.0 <= p <= 1.0):
                errors.append(f"params: {self.channel.value} için {p} [0, 1] dışında")
        if self.min_block_errors < 1:
            errors.append("min_block_errors >= 1 olmalı")
        if self.max_frames < 1:
            errors.append("max_frames >= 1 olmalı")
        if self.seed < 0:
            errors.append("seed: negatif olamaz")
        if self.workers < 1 or self.frames_per_task < 1:
            errors.append("workers ve frames_per_task pozitif olmalı")

        errors.extend(self._decoder_errors(code))
        if self.decoder.kind.uses_matrix:
            errors.extend(self._matrix_errors(code))

        if errors:
            raise ConfigException("Deney konfigürasyonu tutarsız", errors)
        return self

    def _decoder_errors(self, code: RmCode) -> List[str]:
        d = self.decoder
        errors = []
        if d.kind.bec_only and self.channel is not ChannelKind.BEC:
            errors.append(f"decoder: {d.kind.value} yalnızca BEC kanalında kullanılabilir")
        if d.kind is DecoderKind.MRB and self.channel is ChannelKind.BSC:
            errors.append("decoder: MRB BSC'de yumuşak güvenilirlik bulamaz; bsc için bf, bp ya da ml-bf kullanın")
        if d.kind is DecoderKind.ML_BF and code.k > MAX_BRUTEFORCE_K:
            errors.append(f"decoder: ml-bf için k = {code.k} > {MAX_BRUTEFORCE_K}")
        if d.kind.uses_matrix and code.r >= code.m:
            errors.append("code: r = m için parite kontrolü yok")

        checks = {
            "w": lambda v: 0.0 < v <= 1.0,
            "ell": lambda v: v >= 0,
            "mu": lambda v: v > 0,
            "tmax": lambda v: v >= 1,
            "tol": lambda v: v > 0,
            "nu": lambda v: v >= 0,
            "max_flips": lambda v: v >= 0,
        }
        required = {DecoderKind.BP: ("w", "ell"), DecoderKind.LP: ("mu", "tmax", "tol"),
                    DecoderKind.MRB: ("nu",)}.get(d.kind, ())
        for name, ok in checks.items():
            value = getattr(d, name)
            if value is None:
                if name in required:
                    errors.append(f"{name}: {d.kind.value} için gerekli")
            elif not ok(value):
                errors.append(f"{name}: geçersiz değer {value}")
        return errors

    def _matrix_errors(self, code: RmCode) -> List[str]:
        policy = self.matrix
        errors = []
        if code.r >= code.m:
            return errors
        total = count_mwpc(code.r, code.m)
        if total > MWPC_GUARD:
            errors.append(f"matrix: F({code.r},{code.m}) = {total} koruma sınırını ({MWPC_GUARD}) aşıyor")
        if policy.kind is MatrixKind.FULL:
            return errors

        if policy.kind is MatrixKind.TAILORED:
            if self.channel is ChannelKind.BSC:
                errors.append("matrix: BSC'de tüm |γ| eşit olduğundan uyarlanmış matris anlamsız; "
                              "--matrix full kullanın (bsc)")
            if self.channel is not ChannelKind.BEC and (policy.f is None or not 0.0 <= policy.f <= 1.0):
                errors.append("f: uyarlanmış matris için [0, 1] aralığında f gerekli")
        if policy.s is None and policy.rows_percent is None:
            errors.append("s: alt küme politikası için s ya da rows_percent gerekli")
        else:
            try:
                s = policy.resolve_rows(code)
                if not 1 <= s <= total:
                    errors.append(f"s: 1 <= s <= F({code.r},{code.m}) = {total} olmalı")
            except ParameterException as e:
                errors.append(f"{e.field_name}: {e.message}")
        if policy.max_attempts < 1:
            errors.append("max_attempts pozitif olmalı")
        return errors


@dataclass
class TrialOutcome:
    """Tek çerçevenin sonucu"""
    frame_index: int
    block_error: bool
    verdict: DecodeVerdict
    iterations: int
    matrix_event: Optional[str] = None


@dataclass
class SweepRecord:
    """Bir kanal parametresi noktasının özet istatistiği"""
    code: str
    r: int
    m: int
    channel: str
    param: float
    decoder: str
    matrix_policy: str
    f: Optional[float]
    s: Optional[int]
    w: Optional[float]
    ell: Optional[int]
    mu: Optional[float]
    tmax: Optional[int]
    nu: Optional[int]
    seed: int
    frames: int
    block_errors: int
    bler: float
    wall_time_s: Optional[float] = None
    decoder_iters_mean: float = 0.0

    @property
    def channel_param(self) -> float:
        return self.param


class FrameSimulator:
    """
    Tek bir deney için çerçeve simülatörü

    Kod ve H_full örnek başına bir kez kurulur (H_full ilk ihtiyaçta);
    uyarlanmış ve rastgele matrisler her çerçevede yeniden üretilir.
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.code = config.code
        self.logger = logging.getLogger(__name__)
        self._h_full: Optional[PcMatrix] = None
        self._rows = config.matrix.resolve_rows(self.code) if config.decoder.kind.uses_matrix else None

    @property
    def rows(self) -> Optional[int]:
        """Alt küme politikalarında çerçeve başına satır sayısı s"""
        return self._rows

    @property
    def h_full(self) -> PcMatrix:
        if self._h_full is None:
            self._h_full = enumerate_mwpc(self.code)
        return self._h_full

    def _matrix_for_frame(self, observation, gamma: np.ndarray,
                          rng: np.random.Generator) -> Tuple[Optional[PcMatrix], Optional[str]]:
        """(H, olay) döndür; olay None, 'fallback', 'saturated' ya da 'trivial'"""
        policy = self.config.matrix
        if policy.kind is MatrixKind.FULL:
            return self.h_full, None
        if policy.kind is MatrixKind.RANDOM:
            return random_subset_matrix(self.h_full, self._rows, rng), None

        if observation.kind is ChannelKind.BEC:
            partition = partition_from_erasures(observation.erased)
        else:
            partition = classify_bits(gamma, policy.f)
        try:
            return build_tailored_matrix(self.code, partition, self._rows, rng, policy.max_attempts), None
        except TailoringFallbackException:
            if partition.bad.size == 0:
                return None, "trivial"
            return random_subset_matrix(self.h_full, self._rows, rng), "fallback"
        except SaturationException as e:
            return e.partial_matrix, "saturated"

    def _decode(self, H: Optional[PcMatrix], observation, gamma: np.ndarray) -> DecodeResult:
        d = self.config.decoder
        code = self.code
        if d.kind is DecoderKind.PD:
            return peel(H, observation, code)
        if d.kind is DecoderKind.BP:
            return bp_decode(H, gamma, d.w, d.ell, code)
        if d.kind is DecoderKind.LP:
            return admm_lp_decode(H, gamma, d.mu, d.tmax, d.tol, code)
        if d.kind is DecoderKind.BF:
            return bit_flip_decode(H, hard_decision(gamma), d.max_flips, code)
        if d.kind is DecoderKind.MRB:
            return mrb_decode(code, gamma, d.nu)
        if d.kind is DecoderKind.ML_BEC:
            return ml_bec_decode(code, observation)
        return ml_bruteforce(code, gamma)

    def simulate_frame(self, frame_index: int, param: float) -> TrialOutcome:
        """Bir çerçeveyi uçtan uca simüle et"""
        config = self.config
        code = self.code
        rng = frame_rng(config.seed, frame_index)

        if config.all_zero:
            info = np.zeros(code.k, dtype=np.uint8)
        else:
            info = rng.integers(0, 2, code.k, dtype=np.uint8)
        codeword = encode(code, info)
        spec = ChannelSpec(config.channel, param, rate=code.rate)
        observation = transmit(codeword, spec, rng)
        gamma = llr(observation)

        event = None
        H = None
        if config.decoder.kind.uses_matrix:
            H, event = self._matrix_for_frame(observation, gamma, rng)

        if event == "trivial":
            word = np.where(observation.erased, 0, hard_decision(gamma)).astype(np.uint8)
            verdict = DecodeVerdict.SUCCESS
            iterations = 0
        else:
            result = self._decode(H, observation, gamma)
            word, verdict, iterations = result.word, result.verdict, result.iterations_used

        block_error = bool(np.any(word != codeword))
        if observation.kind is ChannelKind.BEC and verdict is not DecodeVerdict.SUCCESS:
            block_error = True
        return TrialOutcome(frame_index, block_error, verdict, iterations, event)

    def simulate_batch(self, param: float, start: int, stop: int) -> List[TrialOutcome]:
        return [self.simulate_frame(i, param) for i in range(start, stop)]


# İşçi süreç durumu (ProcessPoolExecutor initializer ile kurulur)
_worker_simulator: Optional[FrameSimulator] = None


def _init_worker(config: ExperimentConfig):
    global _worker_simulator
    _worker_simulator = FrameSimulator(config)


def _run_batch(param: float, start: int, stop: int) -> List[TrialOutcome]:
    return _worker_simulator.simulate_batch(param, start, stop)


class SweepRunner:
    """Tarama yürütücüsü: nokta başına durdurma kuralı ve paralel çerçeve grupları"""

    def __init__(self, config: ExperimentConfig):
        self.config = config.validate()
        self.simulator = FrameSimulator(self.config)
        self.logger = logging.getLogger(__name__)

    def _batches(self, param: float, executor: Optional[Executor]) -> Iterator[List[TrialOutcome]]:
        """Çerçeve grupları, çerçeve sırasıyla"""
        config = self.config
        ranges = ((start, min(start + config.frames_per_task, config.max_frames))
                  for start in range(0, config.max_frames, config.frames_per_task))
        if executor is None:
            for start, stop in ranges:
                yield self.simulator.simulate_batch(param, start, stop)
            return

        pending = deque()
        window = 2 * config.workers
        try:
            for start, stop in ranges:
                pending.append(executor.submit(_run_batch, param, start, stop))
                if len(pending) >= window:
                    yield pending.popleft().result()
            while pending:
                yield pending.popleft().result()
        finally:
            for future in pending:
                future.cancel()

    def _record(self, param: float, frames: int, errors: int, iterations: int,
                elapsed: float) -> SweepRecord:
        config = self.config
        code = self.simulator.code
        d = config.decoder
        uses_matrix = d.kind.uses_matrix
        policy = config.matrix
        tailored_f = (policy.f if uses_matrix and policy.kind is MatrixKind.TAILORED
                      and config.channel is not ChannelKind.BEC else None)
        return SweepRecord(
            code=code.name, r=code.r, m=code.m,
            channel=config.channel.value, param=float(param),
            decoder=d.kind.value, matrix_policy=config.matrix_policy_name,
            f=tailored_f, s=self.simulator.rows,
            w=d.w, ell=d.ell, mu=d.mu, tmax=d.tmax, nu=d.nu,
            seed=config.seed, frames=frames, block_errors=errors,
            bler=errors / frames,
            wall_time_s=round(elapsed, 6) if config.include_timing else None,
            decoder_iters_mean=iterations / frames,
        )

    @monitor_performance("simulation")
    def run_point(self, param: float, executor: Optional[Executor] = None) -> SweepRecord:
        """
        Bir kanal parametresinde min_block_errors hataya ya da max_frames
        çerçeveye ulaşılana kadar simüle et
        """
        config = self.config
        started = time.perf_counter()
        frames = errors = iterations = 0
        events = Counter()

        batches = self._batches(param, executor)
        try:
            for batch in batches:
                for outcome in batch:
                    frames += 1
                    iterations += outcome.iterations
                    if outcome.matrix_event:
                        events[outcome.matrix_event] += 1
                    if outcome.block_error:
                        errors += 1
                        if errors >= config.min_block_errors:
                            break
                if errors >= config.min_block_errors:
                    break
        finally:
            batches.close()

        if events.get("fallback") or events.get("saturated"):
            self.logger.warning(f"Matrix construction at {param:g}: {events['fallback']} fallbacks, "
                                f"{events['saturated']} saturations in {frames} frames")
        if events.get("trivial"):
            self.logger.debug(f"{events['trivial']} frames decoded trivially at {param:g}")

        record = self._record(param, frames, errors, iterations, time.perf_counter() - started)
        log_sweep_point(record)
        return record

    def run(self) -> List[SweepRecord]:
        """Tüm parametreler için run_point"""
        config = self.config
        self.logger.info(f"Sweep {self.simulator.code.name} {config.channel.value} "
                         f"{config.decoder.kind.value}/{config.matrix_policy_name}: "
                         f"{len(config.params)} points, workers={config.workers}, seed={config.seed}")
        if config.workers == 1:
            records = [self.run_point(p) for p in config.params]
        else:
            with ProcessPoolExecutor(max_workers=config.workers, initializer=_init_worker,
                                     initargs=(config,)) as executor:
                records = [self.run_point(p, executor) for p in config.params]
        performance_monitor.sample_memory()
        return records


def run_point(config: ExperimentConfig, channel_param: float) -> SweepRecord:
    """Tek nokta simülasyonu (işçi sayısı config.workers)"""
    runner = SweepRunner(replace(config, params=(channel_param,)))
    return runner.run()[0]


def run_sweep(config: ExperimentConfig) -> List[SweepRecord]:
    """Parametre listesinin tamamı"""
    return SweepRunner(config).run()


def emit(records: Sequence[SweepRecord], fmt: str, path) -> None:
    """Kayıtları CSV ya da JSON olarak yaz"""
    from export_manager import emit as export_emit
    export_emit(records, fmt, path)
