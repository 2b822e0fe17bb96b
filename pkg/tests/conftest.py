#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Ortak test fixture'ları"""

import json

import numpy as np
import pytest

from rm_core import build_code, enumerate_mwpc


@pytest.fixture(scope="session")
def rm13():
    return build_code(1, 3)


@pytest.fixture(scope="session")
def rm14():
    return build_code(1, 4)


@pytest.fixture(scope="session")
def rm25():
    return build_code(2, 5)


@pytest.fixture(scope="session")
def rm37():
    return build_code(3, 7)


@pytest.fixture(scope="session")
def h_full_25(rm25):
    return enumerate_mwpc(rm25)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def quiet_config(tmp_path):
    """Konsol loglarını kısan geçici config.json"""
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "logging": {"level": "WARNING", "colored_console": False},
        "simulation": {"frames_per_task": 8},
    }), encoding="utf-8")
    return path
