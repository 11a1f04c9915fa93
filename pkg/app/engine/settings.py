from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Dict

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

# Valores padrão (sobrescritos por app/data/settings.json e variáveis de ambiente)
DEFAULT_SETTINGS: Dict[str, int] = {
    "collar_width": 2,
    "min_weight_max_n": 30,
    "min_weight_max_rank": 20,
    "dense_oracle_max_n": 10,
}

REPORT_DIR_ENV = "UNFOLD_REPORT_DIR"


def get_env_int(name: str, default: int) -> int:
    try:
        return int(os.getenv(name, str(default)))
    except Exception:
        return default


def load_settings(data_dir: str | Path | None = None) -> Dict[str, Any]:
    """JSON opcional sobre os padrões; chaves inválidas são ignoradas."""
    settings: Dict[str, Any] = DEFAULT_SETTINGS.copy()
    fp = Path(data_dir or DATA_DIR) / "settings.json"
    if fp.exists():
        try:
            with fp.open("r", encoding="utf-8") as f:
                data = json.load(f) or {}
            for k, v in (data.items() if isinstance(data, dict) else []):
                if k not in DEFAULT_SETTINGS:
                    continue
                try:
                    settings[str(k)] = int(v)
                except Exception:
                    pass
        except Exception:
            pass
    settings["collar_width"] = get_env_int("UNFOLD_COLLAR_WIDTH", settings["collar_width"])
    return settings


def report_dir(default: str | Path = "reports") -> Path:
    return Path(os.getenv(REPORT_DIR_ENV, str(default)))
