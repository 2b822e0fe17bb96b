#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Dışa Aktarma Yöneticisi
Tarama kayıtlarının CSV / JSON olarak yazılması ve geri okunması
"""

import json
import logging
from dataclasses import asdict, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd

from exception_handler import ExportException, ParameterException
from sim import SweepRecord

# CSV sütunları (sıra sabittir)
CSV_COLUMNS = [
    "code", "r", "m", "channel", "param", "decoder", "matrix_policy",
    "f", "s", "w", "ell", "mu", "tmax", "nu", "seed",
    "frames", "block_errors", "bler", "wall_time_s",
]

_INT_FIELDS = {"r", "m", "s", "ell", "tmax", "nu", "seed", "frames", "block_errors"}
_FLOAT_FIELDS = {"param", "f", "w", "mu", "bler", "wall_time_s", "decoder_iters_mean"}


def _format_value(name: str, value: Any) -> str:
    """Tek bir alanın CSV metni; eksik değer boş"""
    if value is None:
        return ""
    if name == "bler":
        return format(float(value), ".12g")
    if name in _FLOAT_FIELDS:
        return repr(float(value))
    return str(value)


def _parse_value(name: str, text: str) -> Any:
    if text == "":
        return None
    if name in _INT_FIELDS:
        return int(text)
    if name in _FLOAT_FIELDS:
        return float(text)
    return text


class ExportManager:
    """Dışa aktarma işlemlerini yöneten sınıf"""

    SUPPORTED_FORMATS = ("csv", "json")

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def _ensure_output_directory(self, path: Path):
        """Çıktı klasörünü oluştur"""
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ExportException(f"Çıktı klasörü oluşturulamadı: {path.parent}", str(path), e) from e

    def to_dataframe(self, records: Sequence[SweepRecord]) -> pd.DataFrame:
        """Kayıtları metne çevrilmiş CSV sütunlarıyla DataFrame'e dönüştür"""
        rows = [{name: _format_value(name, getattr(record, name)) for name in CSV_COLUMNS}
                for record in records]
        return pd.DataFrame(rows, columns=CSV_COLUMNS, dtype=str)

    def write_csv(self, records: Sequence[SweepRecord], path: Path):
        self.to_dataframe(records).to_csv(path, index=False, lineterminator="\n")

    def write_json(self, records: Sequence[SweepRecord], path: Path):
        with open(path, "w", encoding="utf-8") as f:
            json.dump([asdict(record) for record in records], f, indent=2, ensure_ascii=False)
            f.write("\n")

    def emit(self, records: Sequence[SweepRecord], fmt: str, path: Union[str, Path]):
        """
        Kayıtları yaz

        Args:
            records: Boş olmayan kayıt listesi
            fmt: "csv" veya "json"
            path: Hedef dosya
        """
        if not records:
            raise ParameterException("Yazılacak kayıt yok", "records", 0)
        fmt = fmt.lower()
        if fmt not in self.SUPPORTED_FORMATS:
            raise ParameterException(f"Desteklenmeyen format: {fmt}", "format", fmt)

        path = Path(path)
        self._ensure_output_directory(path)
        try:
            if fmt == "csv":
                self.write_csv(records, path)
            else:
                self.write_json(records, path)
        except OSError as e:
            self.logger.error(f"Failed to write results to {path}: {e}")
            raise ExportException(f"Sonuç dosyası yazılamadı: {path}", str(path), e) from e

        self.logger.info(f"Wrote {len(records)} records to {path} ({fmt})")

    def load_records(self, path: Union[str, Path], fmt: Optional[str] = None) -> List[SweepRecord]:
        """CSV ya da JSON sonuç dosyasını geri oku (format uzantıdan çıkarılır)"""
        path = Path(path)
        fmt = (fmt or path.suffix.lstrip(".") or "csv").lower()
        try:
            if fmt == "json":
                with open(path, "r", encoding="utf-8") as f:
                    raw: List[Dict[str, Any]] = json.load(f)
                known = {fld.name for fld in fields(SweepRecord)}
                return [SweepRecord(**{k: v for k, v in item.items() if k in known}) for item in raw]

            frame = pd.read_csv(path, dtype=str, keep_default_na=False)
        except (OSError, ValueError) as e:
            raise ExportException(f"Sonuç dosyası okunamadı: {path}", str(path), e) from e

        missing = [c for c in CSV_COLUMNS if c not in frame.columns]
        if missing:
            raise ExportException(f"Eksik CSV sütunları: {', '.join(missing)}", str(path))
        return [SweepRecord(**{name: _parse_value(name, row[name]) for name in CSV_COLUMNS})
                for _, row in frame.iterrows()]


# Global export manager instance
export_manager = ExportManager()


def emit(records: Sequence[SweepRecord], fmt: str, path: Union[str, Path]):
    """Kayıtları yaz"""
    export_manager.emit(records, fmt, path)


def load_records(path: Union[str, Path], fmt: Optional[str] = None) -> List[SweepRecord]:
    """Kayıtları oku"""
    return export_manager.load_records(path, fmt)
