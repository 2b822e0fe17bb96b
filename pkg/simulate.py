#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC Simülasyon Başlatıcı
Komut satırından blok hata oranı taraması

Örnek:
    python simulate.py --code 2,5 --channel bec --params 0.3,0.4,0.5 \\
        --decoder pd --matrix full --seed 1 --out rm25_pd.csv
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from advanced_logger import get_logger, log_performance_metric, setup_logging
from config_manager import get_config
from exception_handler import EXIT_OK, ConfigException, SimulationErrorHandler
from performance_monitor import performance_monitor
from sim import DecoderParams, ExperimentConfig, MatrixKind, MatrixPolicy, emit, run_sweep


def _parse_code(text: str) -> Tuple[int, int]:
    try:
        r, m = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--code 'r,m' biçiminde olmalı: {text}") from None
    return r, m


def _parse_params(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--params virgülle ayrılmış sayılar olmalı: {text}") from None


def build_parser() -> argparse.ArgumentParser:
    """Komut satırı ayrıştırıcısı"""
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Reed-Muller kodları için MWPC tabanlı kod çözme simülasyonu",
    )
    parser.add_argument("--code", type=_parse_code, required=True, metavar="r,m",
                        help="RM(r,m) kodu, ör. 3,7")
    parser.add_argument("--channel", choices=["bec", "bsc", "awgn"], required=True)
    parser.add_argument("--params", type=_parse_params, required=True,
                        help="Taranacak kanal parametreleri (ε, p ya da dB cinsinden Eb/N0)")
    parser.add_argument("--decoder", choices=["pd", "bp", "lp", "bf", "mrb", "ml-bec", "ml-bf"],
                        required=True)
    parser.add_argument("--matrix", choices=["full", "tailored", "random"], default="full")

    group = parser.add_argument_group("matris parametreleri")
    group.add_argument("--f", type=float, help="İyi bit oranı (uyarlanmış matris)")
    group.add_argument("--s", type=int, help="Çerçeve başına satır sayısı")
    group.add_argument("--rows-percent", type=float, help="Satır sayısı, F(r,m)'nin yüzdesi olarak")

    group = parser.add_argument_group("kod çözücü parametreleri")
    group.add_argument("--w", type=float, help="BP mesaj ağırlığı")
    group.add_argument("--ell", type=int, help="BP iterasyon sayısı")
    group.add_argument("--mu", type=float, help="ADMM ceza parametresi")
    group.add_argument("--tmax", type=int, help="ADMM en fazla iterasyon")
    group.add_argument("--tol", type=float, help="ADMM kalıntı toleransı")
    group.add_argument("--nu", type=int, help="MRB derecesi")
    group.add_argument("--max-flips", type=int, help="BF en fazla bit çevirme (varsayılan 2n)")

    group = parser.add_argument_group("simülasyon")
    group.add_argument("--min-errors", type=int, help="Nokta başına hedef blok hatası")
    group.add_argument("--max-frames", type=int, help="Nokta başına en fazla çerçeve")
    group.add_argument("--seed", type=int, help="Ana tohum")
    group.add_argument("--workers", type=int, help="İşçi süreç sayısı")
    group.add_argument("--all-zero", action="store_true", help="Sıfır kod kelimesi gönder")

    group = parser.add_argument_group("çıktı")
    group.add_argument("--out", required=True, help="Sonuç dosyası")
    group.add_argument("--format", choices=["csv", "json"], help="Çıktı formatı")
    group.add_argument("--no-timing", action="store_true", help="wall_time_s sütununu boş bırak")
    group.add_argument("--config", help="Konfigürasyon dosyası (varsayılan config.json)")
    group.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return parser


def _pick(value, default):
    return default if value is None else value


def build_experiment(args: argparse.Namespace, sim_defaults: dict,
                     include_timing: bool) -> ExperimentConfig:
    """Argümanlar ve konfigürasyon varsayılanlarından ExperimentConfig"""
    r, m = args.code
    decoder = DecoderParams.for_kind(
        args.decoder, sim_defaults,
        w=args.w, ell=args.ell, mu=args.mu, tmax=args.tmax, tol=args.tol,
        nu=args.nu, max_flips=args.max_flips,
    )
    kind = MatrixKind(args.matrix)
    matrix = MatrixPolicy(
        kind=kind,
        f=_pick(args.f, sim_defaults.get("f")) if kind is MatrixKind.TAILORED else None,
        s=args.s,
        rows_percent=args.rows_percent,
        max_attempts=int(sim_defaults.get("saturation_factor", 50)),
    )
    return ExperimentConfig(
        r=r, m=m,
        channel=args.channel,
        params=tuple(args.params),
        decoder=decoder,
        matrix=matrix,
        min_block_errors=_pick(args.min_errors, sim_defaults["min_block_errors"]),
        max_frames=_pick(args.max_frames, sim_defaults["max_frames"]),
        seed=_pick(args.seed, sim_defaults["seed"]),
        workers=_pick(args.workers, sim_defaults["workers"]),
        frames_per_task=sim_defaults["frames_per_task"],
        all_zero=args.all_zero,
        include_timing=include_timing,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Ana giriş noktası"""
    args = build_parser().parse_args(argv)
    handler = SimulationErrorHandler(get_logger("system"))

    try:
        config = get_config(args.config)
        config.require_valid()

        logging_config = config.get_logging_config()
        if args.log_level:
            logging_config["level"] = args.log_level
        setup_logging(logging_config)
        logger = get_logger("system")

        export_config = config.get_export_config()
        fmt = args.format or (Path(args.out).suffix.lstrip(".").lower()
                              if Path(args.out).suffix.lower() in (".csv", ".json")
                              else export_config["default_format"])
        include_timing = export_config["include_timing"] and not args.no_timing

        experiment = build_experiment(args, config.get_simulation_config(), include_timing)

        records = run_sweep(experiment)
        emit(records, fmt, args.out)

        for record in records:
            print(f"{record.code} {record.channel}={record.param:g} "
                  f"{record.decoder}/{record.matrix_policy}: "
                  f"{record.block_errors}/{record.frames} -> BLER {record.bler:.4g}")
        print(f"✅ {len(records)} nokta yazıldı: {args.out}")

        summary = performance_monitor.get_performance_summary()
        if summary.get("peak_memory_mb") is not None:
            log_performance_metric("peak_memory", summary["peak_memory_mb"], "MB")
        logger.debug(f"Performance summary: {summary}")
        return EXIT_OK

    except (KeyboardInterrupt, Exception) as e:
        analysis = handler.analyze(e)
        if isinstance(e, ConfigException) and e.errors:
            for error in e.errors:
                print(f"❌ {error}", file=sys.stderr)
        else:
            print(f"❌ {analysis.error_type}: {e}", file=sys.stderr)
        return analysis.exit_code


if __name__ == "__main__":
    sys.exit(main())
