#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Hata Yönetimi
Özel hata sınıfları ve simülasyon hatası analiz sistemi
"""

import logging
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional


# Custom Exception Classes
class RMException(Exception):
    """Kütüphane genelindeki tüm hataların temel sınıfı"""

    def __init__(self, message: str, error_code: Optional[str] = None,
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}


class ParameterException(RMException):
    """Geçersiz parametre (r, m, uzunluk, pozisyon, kanal parametresi)"""

    def __init__(self, message: str, field_name: Optional[str] = None,
                 invalid_value: Any = None, error_code: str = "E_PARAM"):
        super().__init__(message, error_code=error_code,
                         details={"field": field_name, "value": repr(invalid_value)})
        self.field_name = field_name
        self.invalid_value = invalid_value


class GuardExceededException(ParameterException):
    """Sayısal koruma sınırı aşıldı (ör. F(r,m) > 10^7 ya da k > 20)"""

    def __init__(self, message: str, field_name: Optional[str] = None,
                 invalid_value: Any = None):
        super().__init__(message, field_name, invalid_value, error_code="E_GUARD")


class TailoringFallbackException(RMException):
    """Uyarlanmış matris kurulamıyor: |G| < r+1 veya B boş"""

    def __init__(self, message: str, good_count: int = 0, bad_count: int = 0):
        super().__init__(message, error_code="E_FALLBACK",
                         details={"good": good_count, "bad": bad_count})
        self.good_count = good_count
        self.bad_count = bad_count


class SaturationException(RMException):
    """Deneme sınırı aşıldı; kısmi matris ile birlikte fırlatılır"""

    def __init__(self, message: str, partial_matrix: Any = None, attempts: int = 0):
        super().__init__(message, error_code="E_SATURATION",
                         details={"attempts": attempts})
        self.partial_matrix = partial_matrix
        self.attempts = attempts


class ConfigException(RMException):
    """Tutarsız deney konfigürasyonu veya şema ihlali"""

    def __init__(self, message: str, errors: Optional[List[str]] = None):
        super().__init__(message, error_code="E_CONFIG", details={"errors": errors or []})
        self.errors = errors or []


class ExportException(RMException):
    """Sonuç dosyası yazılamadı / okunamadı"""

    def __init__(self, message: str, path: Optional[str] = None,
                 original_error: Optional[Exception] = None):
        super().__init__(message, error_code="E_EXPORT", details={"path": path})
        self.path = path
        self.original_error = original_error


class ErrorSeverity(Enum):
    """Hata önem seviyeleri"""
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


@dataclass
class ErrorAnalysis:
    """Hata analizi sonucu"""
    error_type: str
    error_code: Optional[str]
    probable_cause: str
    severity: ErrorSeverity
    exit_code: int
    suggested_actions: List[str]
    technical_details: Dict[str, Any]
    timestamp: datetime = field(default_factory=datetime.now)


# CLI çıkış kodları
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_INTERRUPTED = 130


class SimulationErrorHandler:
    """
    Simülasyon hatalarını analiz eder, loglar ve çıkış kodunu belirler
    """

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    def analyze(self, error: BaseException) -> ErrorAnalysis:
        """
        Hatayı analiz et

        Args:
            error: Analiz edilecek hata

        Returns:
            ErrorAnalysis: Hata analizi sonucu
        """
        if isinstance(error, KeyboardInterrupt):
            analysis = ErrorAnalysis(
                error_type="interrupted",
                error_code=None,
                probable_cause="Kullanıcı tarafından iptal edildi",
                severity=ErrorSeverity.LOW,
                exit_code=EXIT_INTERRUPTED,
                suggested_actions=["Aynı seed ile yeniden başlatın; sonuçlar deterministiktir"],
                technical_details={},
            )
        elif isinstance(error, (ConfigException, ParameterException)):
            analysis = ErrorAnalysis(
                error_type=type(error).__name__,
                error_code=error.error_code,
                probable_cause="Geçersiz deney parametreleri",
                severity=ErrorSeverity.MEDIUM,
                exit_code=EXIT_CONFIG_ERROR,
                suggested_actions=self._suggest_for_config(error),
                technical_details=dict(error.details),
            )
        elif isinstance(error, ExportException):
            analysis = ErrorAnalysis(
                error_type=type(error).__name__,
                error_code=error.error_code,
                probable_cause="Çıktı dosyasına yazılamadı",
                severity=ErrorSeverity.HIGH,
                exit_code=EXIT_FAILURE,
                suggested_actions=["Çıktı dizininin var olduğunu ve yazılabilir olduğunu kontrol edin"],
                technical_details=dict(error.details),
            )
        elif isinstance(error, RMException):
            analysis = ErrorAnalysis(
                error_type=type(error).__name__,
                error_code=error.error_code,
                probable_cause="Simülasyon sırasında beklenmeyen durum",
                severity=ErrorSeverity.HIGH,
                exit_code=EXIT_FAILURE,
                suggested_actions=["Log dosyasını inceleyin"],
                technical_details=dict(error.details),
            )
        else:
            analysis = ErrorAnalysis(
                error_type=type(error).__name__,
                error_code=None,
                probable_cause="Bilinmeyen sistem hatası",
                severity=ErrorSeverity.CRITICAL,
                exit_code=EXIT_FAILURE,
                suggested_actions=["Log dosyasını inceleyin", "Hatayı küçük bir örnekle tekrar üretin"],
                technical_details={"repr": repr(error)},
            )

        self.log_error_with_context(error, analysis)
        return analysis

    def _suggest_for_config(self, error: RMException) -> List[str]:
        """Konfigürasyon hataları için öneriler"""
        suggestions = ["simulate --help çıktısındaki parametre aralıklarını kontrol edin"]
        errors = error.details.get("errors") or []
        if any("bsc" in str(e).lower() for e in errors):
            suggestions.append("BSC kanalında --matrix full kullanın")
        if isinstance(error, ParameterException) and error.field_name:
            suggestions.append(f"'{error.field_name}' değerini düzeltin")
        return suggestions

    def log_error_with_context(self, error: BaseException, analysis: ErrorAnalysis) -> None:
        """Hatayı bağlamıyla birlikte logla"""
        extra = {
            "error_type": analysis.error_type,
            "error_code": analysis.error_code,
            "severity": analysis.severity.value,
            "exit_code": analysis.exit_code,
        }
        if analysis.severity in (ErrorSeverity.HIGH, ErrorSeverity.CRITICAL):
            self.logger.error(f"{analysis.error_type}: {error}", extra=extra)
        else:
            self.logger.warning(f"{analysis.error_type}: {error}", extra=extra)
        for action in analysis.suggested_actions:
            self.logger.info(f"Suggested action: {action}")
