"""
Resumo tabular dos relatórios JSON gerados pela CLI (unfold, verify, gates).
"""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd

log = logging.getLogger(__name__)

COLUMNS = ["report", "check", "ok", "detail"]


def _rows_unfold(name: str, data: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = [
        {"report": name, "check": "decoupled", "ok": bool(data.get("decoupled")), "detail": ""},
        {"report": name, "check": "equal_span", "ok": bool(data.get("equal_span")), "detail": ""},
    ]
    for p in data.get("parts", []):
        rows.append({
            "report": name,
            "check": f"part_{p.get('color')}",
            "ok": True,
            "detail": f"n={p.get('n')} k={p.get('k')}",
        })
    for b in data.get("boundaries", []):
        rows.append({
            "report": name,
            "check": f"boundary_{b.get('cell')}",
            "ok": bool(b.get("matches", True)),
            "detail": "{" + ", ".join(b.get("labels", [])) + "}",
        })
    return rows


def _rows_verify(name: str, data: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = []
    for check, res in sorted((data.get("checks") or {}).items()):
        rows.append({"report": name, "check": check, "ok": bool(res.get("ok")), "detail": res.get("detail", "")})
    return rows


def _rows_gates(name: str, data: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = [
        {"report": name, "check": "preserves_codespace", "ok": bool(data.get("preserves_codespace")), "detail": f"level={data.get('level')}"},
        {"report": name, "check": "controlled_z", "ok": bool(data.get("matches_controlled_z")), "detail": ""},
    ]
    for c in data.get("chain", []):
        order = "".join(str(i) for i in c.get("order", []))
        rows.append({"report": name, "check": f"chain_{order}", "ok": bool(c.get("ok")), "detail": str(c.get("final_z"))})
    return rows


def collect_reports(report_dir: str | Path) -> pd.DataFrame:
    """Lê *_report.json do diretório; arquivos ilegíveis são ignorados com aviso."""
    rows: List[Dict[str, Any]] = []
    for fp in sorted(Path(report_dir).glob("*_report.json")):
        try:
            data = json.loads(fp.read_text(encoding="utf-8"))
        except Exception as e:
            log.warning("Ignorando %s: %s", fp.name, e)
            continue
        kind = fp.stem.replace("_report", "")
        if kind == "unfold":
            rows += _rows_unfold(fp.name, data)
        elif kind == "verify":
            rows += _rows_verify(fp.name, data)
        elif kind == "gates":
            rows += _rows_gates(fp.name, data)
    return pd.DataFrame(rows, columns=COLUMNS)


def write_summary_csv(df: pd.DataFrame, out: str | Path) -> Path:
    p = Path(out)
    p.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(p, index=False)
    return p
