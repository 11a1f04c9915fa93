import json
import sys
from pathlib import Path

import pandas as pd

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.report.pdf import build_pdf, safe_text  # type: ignore
from app.report.tables import COLUMNS, collect_reports, write_summary_csv  # type: ignore


def make_reports(tmp_path: Path) -> Path:
    (tmp_path / "unfold_report.json").write_text(json.dumps({
        "decoupled": True,
        "equal_span": True,
        "parts": [{"color": 1, "n": 9, "k": 2}, {"color": 2, "n": 9, "k": 2}],
        "boundaries": [{"cell": 40, "labels": ["1", "e1", "m2", "e1m2"], "matches": True}],
    }), encoding="utf-8")
    (tmp_path / "verify_report.json").write_text(json.dumps({
        "checks": {"validation": {"ok": True, "detail": ""}, "counts": {"ok": False, "detail": "C_1 perturbado"}},
        "ok": False,
        "failed": "counts",
    }), encoding="utf-8")
    (tmp_path / "gates_report.json").write_text(json.dumps({
        "level": 2,
        "preserves_codespace": True,
        "matches_controlled_z": True,
        "chain": [{"order": [1, 2], "ok": True, "final_z": [0, 1]}],
    }), encoding="utf-8")
    return tmp_path


def test_collect_reports_rows(tmp_path):
    df = collect_reports(make_reports(tmp_path))
    assert list(df.columns) == COLUMNS
    checks = set(df["check"])
    assert {"decoupled", "part_1", "part_2", "boundary_40", "counts", "controlled_z", "chain_12"} <= checks
    failed = df[~df["ok"].astype(bool)]
    assert list(failed["check"]) == ["counts"]


def test_collect_reports_skips_unreadable(tmp_path, caplog):
    (tmp_path / "unfold_report.json").write_text("{oops", encoding="utf-8")
    df = collect_reports(tmp_path)
    assert df.empty
    assert any(r.levelname == "WARNING" and "unfold_report.json" in r.getMessage() for r in caplog.records)


def test_summary_csv(tmp_path):
    df = collect_reports(make_reports(tmp_path))
    out = write_summary_csv(df, tmp_path / "sub" / "summary.csv")
    again = pd.read_csv(out)
    assert len(again) == len(df)
    assert list(again.columns) == COLUMNS


def test_safe_text():
    assert safe_text(None) == ""
    assert safe_text("ε1ε2 → 1") == "eps1eps2 -> 1"
    assert safe_text("χ") == "?"


def test_build_pdf(tmp_path):
    df = collect_reports(make_reports(tmp_path))
    out = build_pdf(df, tmp_path / "report.pdf")
    assert out.exists() and out.stat().st_size > 0
    empty = build_pdf(pd.DataFrame(columns=COLUMNS), tmp_path / "empty.pdf")
    assert empty.exists()
